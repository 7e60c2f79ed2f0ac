import json
import math

import numpy as np
import pytest

from netsym.cli import main
from netsym import read_container, lossless_decompress

FIG2 = "1 3\n2 4\n3 5\n4 5\n"


@pytest.fixture
def fig2_file(tmp_path):
    path = tmp_path / "fig2.txt"
    path.write_text(FIG2)
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_stats_fig2_json(capsys, fig2_file):
    code, out, err = run(capsys, ["stats", fig2_file])
    assert code == 0
    report = json.loads(out)
    assert report["n"] == 5 and report["m"] == 4
    assert report["motifs"] == 1
    assert report["bsm_pct"] == 100.0
    assert report["mv_pct"] == 80.0
    assert report["n_ratio"] == 0.6
    assert report["c_full"] == pytest.approx(0.36)
    assert report["sp"] == pytest.approx(0.216)
    assert report["group_order"] == "2"
    assert report["group_order_pow10"] == "10^0"
    assert "timings" not in report
    assert "timings:" in err


def test_stats_asymmetric_graph(capsys, tmp_path):
    # connected 6-vertex graph with trivial automorphism group
    path = tmp_path / "asym.txt"
    edges = [(0, 1), (0, 2), (0, 3), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)]
    path.write_text("".join(f"{u + 1} {v + 1}\n" for u, v in edges))
    code, out, _ = run(capsys, ["stats", str(path)])
    assert code == 0
    report = json.loads(out)
    assert report["mv_pct"] == 0.0
    assert report["n_ratio"] == 1.0
    assert report["c_full"] == 1.0


def test_stats_invariants_and_determinism(capsys, fig2_file):
    code, out1, _ = run(capsys, ["stats", fig2_file])
    assert code == 0
    code, out2, _ = run(capsys, ["stats", fig2_file])
    assert out1 == out2  # byte-identical JSON
    report = json.loads(out1)
    assert report["c_full"] == pytest.approx(report["n_ratio"] ** 2, abs=1e-4)
    assert report["sp"] == pytest.approx(report["n_ratio"] ** 3, abs=1e-4)


def test_stats_text_format(capsys, fig2_file):
    code, out, _ = run(capsys, ["stats", fig2_file, "--format", "text"])
    assert code == 0
    assert "group order" in out and "2 (10^0)" in out


def test_decompose_fig2(capsys, fig2_file):
    code, out, _ = run(capsys, ["decompose", fig2_file])
    assert code == 0
    d = json.loads(out)
    assert d["fixed_points"] == ["5"]
    assert len(d["motifs"]) == 1
    assert d["motifs"][0]["type"] == 2
    assert d["motifs"][0]["orbits"] == [["1", "2"], ["3", "4"]]


def test_quotient_outputs(capsys, fig2_file, tmp_path):
    out_prefix = str(tmp_path / "q")
    code, _, _ = run(capsys, ["quotient", fig2_file, "-o", out_prefix])
    assert code == 0
    edges = (tmp_path / "q.edges").read_text().strip().splitlines()
    assert "0 1 1.0" in edges and "2 1 2.0" in edges
    sidecar = json.loads((tmp_path / "q.json").read_text())
    assert sidecar["orbit_sizes"] == [2, 2, 1]
    assert sidecar["orbit_members"] == [["1", "2"], ["3", "4"], ["5"]]


def test_compress_decompress_round_trip_exp(capsys, fig2_file, tmp_path):
    container = str(tmp_path / "fig2.nsz")
    code, _, _ = run(capsys, ["compress", fig2_file, "--measure", "exp", "-o", container])
    assert code == 0
    c, labels = read_container(open(container).read())
    assert labels == ["1", "3", "2", "4", "5"]  # first-appearance order
    code, out, _ = run(capsys, ["decompress", container])
    assert code == 0
    rows = [list(map(float, line.split(","))) for line in out.strip().splitlines()]
    got = np.array(rows)
    import scipy.linalg

    g_adj = np.zeros((5, 5))
    # internal order after loading "1 3\n2 4\n3 5\n4 5": 1,3,2,4,5
    for u, v in [(0, 1), (2, 3), (1, 4), (3, 4)]:
        g_adj[u, v] = g_adj[v, u] = 1
    assert np.max(np.abs(got - scipy.linalg.expm(g_adj))) <= 1e-8
    assert np.max(np.abs(got - lossless_decompress(c))) == 0.0


def test_eig_tags_csv(capsys, fig2_file):
    code, out, _ = run(capsys, ["eig", fig2_file, "--tags"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,value,tag,motif"
    assert len(lines) == 6
    tags = [line.split(",")[2] for line in lines[1:]]
    assert tags.count("REDUNDANT") == 2
    values = sorted(float(line.split(",")[1]) for line in lines[1:])
    s3 = math.sqrt(3)
    assert values == pytest.approx([-s3, -1.0, 0.0, 1.0, s3], abs=1e-9)


def test_eig_vectors_binary(capsys, fig2_file, tmp_path):
    vec_file = str(tmp_path / "U.bin")
    code, _, _ = run(capsys, ["eig", fig2_file, "--vectors", vec_file])
    assert code == 0
    header = json.loads((tmp_path / "U.bin.json").read_text())
    assert header["n"] == 5
    u = np.fromfile(vec_file, dtype="<f8").reshape(5, 5)
    gram = u.T @ u
    assert np.max(np.abs(gram - np.eye(5))) <= 1e-8


def test_measure_degree_csv(capsys, fig2_file):
    code, out, _ = run(capsys, ["measure", "degree", fig2_file])
    assert code == 0
    rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
    assert float(rows["1"]) == 1.0 and float(rows["3"]) == 2.0 and float(rows["5"]) == 2.0


def test_measure_closeness_and_eccentricity(capsys, fig2_file):
    code, out, _ = run(capsys, ["measure", "closeness", fig2_file])
    assert code == 0
    rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
    assert float(rows["5"]) == pytest.approx(1.2)
    code, out, err = run(capsys, ["measure", "eccentricity", fig2_file])
    assert code == 0
    assert "radius=2 diameter=4" in err


def test_measure_eigencentrality(capsys, fig2_file):
    code, out, _ = run(capsys, ["measure", "eigencentrality", fig2_file])
    assert code == 0
    rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
    assert float(rows["1"]) == pytest.approx(float(rows["2"]), abs=1e-10)


def test_measure_distance_container(capsys, fig2_file, tmp_path):
    out_file = str(tmp_path / "dist.nsz")
    code, _, _ = run(capsys, ["measure", "distance", fig2_file, "-o", out_file])
    assert code == 0
    c, _ = read_container(open(out_file).read())
    m = lossless_decompress(c)
    assert m[0, 0] == 0.0
    assert m.max() == 4.0


def test_use_generators_bypass(capsys, fig2_file, tmp_path):
    gen_file = tmp_path / "gens.txt"
    gen_file.write_text("(1 2)(3 4)\n")
    code, out, _ = run(capsys, ["stats", fig2_file, "--use-generators", str(gen_file)])
    assert code == 0
    assert json.loads(out)["group_order"] == "2"


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 zebra\n")
    code, _, err = run(capsys, ["stats", str(bad)])
    assert code == 2
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"] == "ParseError"

    missing = str(tmp_path / "nope.txt")
    code, _, _ = run(capsys, ["stats", missing])
    assert code == 2

    disconnected = tmp_path / "disc.txt"
    disconnected.write_text("1 2\n3 4\n")
    code, _, err = run(capsys, ["measure", "closeness", str(disconnected), "--no-lcc"])
    assert code == 3
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"] == "ContractError"


def test_lcc_flag(capsys, tmp_path):
    path = tmp_path / "two.txt"
    path.write_text("1 2\n2 3\n4 5\n")
    code, out, _ = run(capsys, ["stats", str(path)])  # stats defaults to lcc
    assert code == 0 and json.loads(out)["n"] == 3
    code, out, _ = run(capsys, ["decompose", str(path), "--lcc"])
    assert code == 0
    assert json.loads(out)["fixed_points"] == ["2"]


def test_directed_flag(capsys, tmp_path):
    path = tmp_path / "dir.txt"
    path.write_text("1 2\n2 3\n3 1\n")
    code, out, _ = run(capsys, ["stats", str(path), "--directed"])
    assert code == 0
    assert json.loads(out)["group_order"] == "3"  # rotations of a directed triangle
