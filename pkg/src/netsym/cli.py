"""Command-line surface: stats, decompose, quotient, compress, decompress,
eig and measure subcommands over edge-list inputs.

Exit codes: 0 ok, 2 parse error, 3 contract violation, 4 internal
consistency error. Errors print one machine-parseable JSON line to stderr.
JSON outputs are byte-deterministic for fixed inputs and flags; stage
timings go to stderr (or into JSON only with --timings).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .automorphism import find_generators, group_order, import_generators
from .compression import (
    compression_ratios,
    lossless_compress,
    lossless_decompress,
    read_container,
    write_container,
)
from .decomposition import decomposition_to_dict, geometric_decomposition
from .errors import ContractError, NetsymError, ParseError
from .graph import Graph, largest_connected_component, load_edge_list
from .measures import (
    closeness_quotient,
    communicability,
    degree_quotient,
    eccentricity_quotient,
    eigenvector_centrality,
    laplacian,
    resistance_distance,
    shortest_paths_quotient,
)
from .quotient import basic_characteristic_map, orbit_characteristic_map, quotient
from .spectral import symmetry_eig


@dataclass
class StatsReport:
    """Table-1-style symmetry report for one network."""

    n: int
    m: int
    gen_count: int
    group_order: int
    sm: int
    bsm_pct: float
    mv_pct: float
    n_ratio: float  # n_Q / n_G, in (0, 1]
    m_ratio: float  # m_Q / m_G
    ext_s_pct: float
    c_full: float  # n_ratio squared
    sp: float  # n_ratio cubed
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def group_order_pow10(self) -> str:
        return f"10^{len(str(self.group_order)) - 1}"

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "generators": self.gen_count,
            "group_order": str(self.group_order),
            "group_order_pow10": self.group_order_pow10,
            "motifs": self.sm,
            "bsm_pct": round(self.bsm_pct, 4),
            "mv_pct": round(self.mv_pct, 4),
            "n_ratio": round(self.n_ratio, 6),
            "m_ratio": round(self.m_ratio, 6),
            "ext_s_pct": round(self.ext_s_pct, 4),
            "c_full": round(self.c_full, 6),
            "sp": round(self.sp, 6),
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_text(self) -> str:
        d = self.to_dict()
        rows = [
            ("vertices (n)", d["n"]),
            ("edges (m)", d["m"]),
            ("generators", d["generators"]),
            ("group order", f"{d['group_order']} ({d['group_order_pow10']})"),
            ("symmetric motifs", d["motifs"]),
            ("basic motifs %", d["bsm_pct"]),
            ("moved vertices %", d["mv_pct"]),
            ("quotient vertices %", round(100 * self.n_ratio, 4)),
            ("quotient edges %", round(100 * self.m_ratio, 4)),
            ("external sparse edges %", d["ext_s_pct"]),
            ("c_full %", round(100 * self.c_full, 4)),
            ("sp %", round(100 * self.sp, 4)),
            ("t1 generators (s)", round(self.timings.get("generators", 0.0), 3)),
            ("t2 decomposition (s)", round(self.timings.get("decomposition", 0.0), 3)),
        ]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name:<{width}}  {value}" for name, value in rows)


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _load_graph(args, default_lcc: bool) -> Graph:
    g = load_edge_list(
        _read_source(args.input),
        directed=args.directed,
        weighted=True if args.weighted else None,
    )
    use_lcc = default_lcc if args.lcc is None else args.lcc
    return largest_connected_component(g) if use_lcc else g


def _symmetry(g: Graph, args) -> tuple:
    t0 = time.perf_counter()
    if getattr(args, "use_generators", None):
        gens = import_generators(_read_source(args.use_generators), g.n, graph=g)
    else:
        gens = find_generators(g)
    t1 = time.perf_counter()
    decomp = geometric_decomposition(gens)
    t2 = time.perf_counter()
    return gens, decomp, t1 - t0, t2 - t1


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json_dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def cmd_stats(args) -> int:
    g = _load_graph(args, default_lcc=True)
    gens, decomp, t_gen, t_dec = _symmetry(g, args)
    order = group_order(gens)
    ratios = compression_ratios(decomp, g)
    motif_of = decomp.motif_of(g.n)
    external = sum(
        1
        for i, j, _ in g.entries()
        if (g.directed or i <= j) and (motif_of[i] < 0 or motif_of[i] != motif_of[j])
    )
    m = g.num_edges
    basic = sum(1 for mt in decomp.motifs if mt.is_basic)
    report = StatsReport(
        n=g.n,
        m=m,
        gen_count=len(gens),
        group_order=order,
        sm=len(decomp.motifs),
        bsm_pct=100.0 * basic / len(decomp.motifs) if decomp.motifs else 0.0,
        mv_pct=100.0 * decomp.moved_count / g.n if g.n else 0.0,
        n_ratio=ratios["n_ratio"],
        m_ratio=ratios["m_ratio"],
        ext_s_pct=100.0 * external / m if m else 100.0,
        c_full=ratios["c_full"],
        sp=ratios["n_ratio"] ** 3,
        timings={"generators": t_gen, "decomposition": t_dec},
    )
    if args.format == "text":
        _emit(report.to_text(), args.output)
    else:
        _emit(_json_dumps(report.to_dict(include_timings=args.timings)), args.output)
    _log_timings(report.timings)
    return 0


def _log_timings(timings: dict[str, float]) -> None:
    stages = " ".join(f"{k}={v:.3f}s" for k, v in timings.items())
    print(f"timings: {stages}", file=sys.stderr)


def cmd_decompose(args) -> int:
    g = _load_graph(args, default_lcc=False)
    _, decomp, t_gen, t_dec = _symmetry(g, args)
    _emit(_json_dumps(decomposition_to_dict(decomp, g.labels)), args.output)
    _log_timings({"generators": t_gen, "decomposition": t_dec})
    return 0


def cmd_quotient(args) -> int:
    g = _load_graph(args, default_lcc=False)
    _, decomp, t_gen, t_dec = _symmetry(g, args)
    cmap = orbit_characteristic_map(decomp, g.n)
    q = quotient(g, cmap)
    lines = [f"{k} {l} {float(w)!r}" for k, l, w in sorted(q.entries())]
    _emit("\n".join(lines), args.output + ".edges" if args.output else None)
    sidecar = {
        "orbit_sizes": list(cmap.orbit_sizes),
        "orbit_members": [[g.labels[v] for v in cell] for cell in cmap.orbit_members],
    }
    _emit(_json_dumps(sidecar), args.output + ".json" if args.output else None)
    _log_timings({"generators": t_gen, "decomposition": t_dec})
    return 0


_PAIRWISE_MEASURES = ("adjacency", "exp", "laplacian", "distance", "resistance")


def _pairwise_matrix(name: str, g: Graph, decomp) -> np.ndarray:
    if name == "adjacency":
        return g.to_dense()
    if name == "exp":
        return communicability(g, "exp", decomp).dense()
    if name.startswith("resolvent:"):
        t = float(name.split(":", 1)[1])
        return communicability(g, ("resolvent", t), decomp).dense()
    if name == "laplacian":
        return laplacian(g).dense()
    if name == "distance":
        return shortest_paths_quotient(g, decomp).dense().astype(float)
    if name == "resistance":
        return resistance_distance(g, decomp).dense()
    raise ContractError(f"unknown pairwise measure {name!r}")


def cmd_compress(args) -> int:
    g = _load_graph(args, default_lcc=False)
    _, decomp, t_gen, t_dec = _symmetry(g, args)
    t0 = time.perf_counter()
    matrix = _pairwise_matrix(args.measure, g, decomp)
    cmap = basic_characteristic_map(decomp, g.n)
    c = lossless_compress(matrix, cmap, decomp.motifs)
    _emit(write_container(c, g.labels), args.output)
    _log_timings(
        {"generators": t_gen, "decomposition": t_dec, "compress": time.perf_counter() - t0}
    )
    return 0


def cmd_decompress(args) -> int:
    c, labels = read_container(_read_source(args.input))
    matrix = lossless_decompress(c)
    lines = [",".join(repr(float(x)) for x in row) for row in matrix]
    _emit("\n".join(lines), args.output)
    return 0


def cmd_eig(args) -> int:
    g = _load_graph(args, default_lcc=False)
    _, decomp, t_gen, t_dec = _symmetry(g, args)
    matrix = _pairwise_matrix(args.measure, g, decomp)
    cmap = orbit_characteristic_map(decomp, g.n)
    t0 = time.perf_counter()
    sym = symmetry_eig(matrix, cmap, decomp.motifs, threads=args.threads)
    t_eig = time.perf_counter() - t0
    lines = ["index,value,tag,motif"]
    for k in range(sym.n):
        tag = sym.tags[k] if args.tags else ""
        motif = sym.motif_ids[k] if args.tags else ""
        lines.append(f"{k},{float(sym.values[k])!r},{tag},{motif}")
    _emit("\n".join(lines), args.output)
    if args.vectors:
        sym.vectors.astype("<f8").tofile(args.vectors)
        header = {"n": sym.n, "column_order": "eigenvalue ascending within tag groups",
                  "dtype": "<f8", "layout": "row-major"}
        with open(args.vectors + ".json", "w", encoding="utf-8") as fh:
            fh.write(_json_dumps(header) + "\n")
    _log_timings({"generators": t_gen, "decomposition": t_dec, "eig": t_eig})
    return 0


def cmd_measure(args) -> int:
    name = args.name
    g = _load_graph(args, default_lcc=False)
    _, decomp, t_gen, t_dec = _symmetry(g, args)
    t0 = time.perf_counter()
    vertex_values: np.ndarray | None = None
    if name == "degree":
        q = quotient(g, orbit_characteristic_map(decomp, g.n))
        vertex_values = q.cmap.lift(degree_quotient(q))
    elif name == "eigencentrality":
        vertex_values = eigenvector_centrality(g, orbit_characteristic_map(decomp, g.n))
    elif name.startswith("closeness"):
        mode = "approximate" if name.endswith(":approx") else "exact"
        vertex_values = closeness_quotient(g, decomp, mode=mode)
    elif name == "eccentricity":
        vertex_values, radius, diameter = eccentricity_quotient(g, decomp)
        print(f"radius={radius} diameter={diameter}", file=sys.stderr)
    if vertex_values is not None:
        lines = ["vertex,value"]
        lines += [f"{g.labels[i]},{float(v)!r}" for i, v in enumerate(vertex_values)]
        _emit("\n".join(lines), args.output)
    else:
        matrix = _pairwise_matrix(name, g, decomp)
        cmap = basic_characteristic_map(decomp, g.n)
        c = lossless_compress(matrix, cmap, decomp.motifs)
        _emit(write_container(c, g.labels), args.output)
    _log_timings(
        {"generators": t_gen, "decomposition": t_dec, "measure": time.perf_counter() - t0}
    )
    return 0


def _add_common(p: argparse.ArgumentParser, with_generators: bool = True) -> None:
    p.add_argument("input", help="edge-list file, or - for stdin")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--weighted", action="store_true")
    lcc = p.add_mutually_exclusive_group()
    lcc.add_argument("--lcc", dest="lcc", action="store_true", default=None)
    lcc.add_argument("--no-lcc", dest="lcc", action="store_false")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("-o", "--output", default=None)
    p.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("NETSYM_THREADS", "1")),
    )
    if with_generators:
        p.add_argument("--use-generators", metavar="FILE", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netsym",
        description="Network symmetry: decomposition, quotients, compression, spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="Table-1-style symmetry report")
    _add_common(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timings", action="store_true", help="include timings in JSON")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("decompose", help="geometric decomposition as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("quotient", help="orbit quotient edge list + sidecar JSON")
    _add_common(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("compress", help="lossless-compress a pairwise measure")
    _add_common(p)
    p.add_argument("--measure", default="adjacency")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="expand a compressed container to CSV")
    p.add_argument("input", help="container file, or - for stdin")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("eig", help="symmetry eigendecomposition as CSV")
    _add_common(p)
    p.add_argument("--measure", default="adjacency")
    p.add_argument("--tags", action="store_true")
    p.add_argument("--vectors", metavar="FILE", default=None)
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("measure", help="quotient-accelerated measures")
    p.add_argument("name", help="laplacian|exp|resolvent:t|distance|closeness[:approx]|"
                                "degree|eigencentrality|resistance|eccentricity")
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NetsymError as exc:
        line = _json_dumps({"error": type(exc).__name__, "message": str(exc)})
        print(line, file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
