"""Command-line front end: ``mdpfaffian <command> graph.json``.

Exit status is 0 on success, 1 for invalid input and 2 when an internal
identity fails. Errors are also written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional, Sequence

import numpy as np

from . import _kernels
from .generators import cylinder_lattice
from .kasteleyn import (
    OrientationError,
    flip_epsilon,
    has_boundary_pattern,
    is_kasteleyn,
    n_count,
    orientation_class,
    orientation_table,
)
from .md_pfaffian import (
    InvariantViolation,
    admissible_betas,
    boundary_md_partition,
    dimer_partition,
    modified_matrix,
    partial_Z,
)
from .oracle import OracleSizeError, count_md, fast_Z_md, integer_arrays, oracle_Z_by_parity, oracle_Z_md
from .pfaffian import determinant, pfaffian
from .preprocess import normalize
from .rings import get_ring
from .shuriken import ShurikenError, verify_bijection_lemma, verify_matrix_proposition
from .surface import InvalidGraphError, load
from .topology import TopologyError, homology


class UsageError(ValueError):
    pass


def _parse_beta(bits: Optional[str], b: int):
    if bits is None:
        return None
    bits = bits.strip()
    if len(bits) != b or set(bits) - {"0", "1"}:
        raise UsageError(f"--beta needs {b} binary digits, got {bits!r}")
    beta = tuple(int(c) for c in bits)
    if sum(beta) % 2:
        raise UsageError("--beta must contain an even number of ones")
    return beta


def _bits(beta) -> str:
    return "".join(str(x) for x in beta) or "-"


def _load(args):
    return load(args.graph, ring=get_ring(args.ring))


def _emit(args, text_lines: List[str], record: dict) -> None:
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _curves(g, hom) -> dict:
    def names(edges):
        return sorted((g.edge_names[e] for e in edges), key=str)

    return {
        "alphas": [names(a.crossed_edges) for a in hom.alphas],
        "gammas": [[g.dart_names[d] for d in gamma] for gamma in hom.gammas],
        "intersection": hom.intersection.astype(int).tolist(),
    }


# ------------------------------------------------------------------ commands
def cmd_compute(args) -> int:
    g = normalize(_load(args))
    hom = homology(g)
    beta = _parse_beta(args.beta, g.b)
    if beta is not None:
        term = partial_Z(g, beta, hom, jobs=args.jobs)
        terms, total = [term], term.value
    else:
        result = boundary_md_partition(g, jobs=args.jobs, preprocess=False)
        terms, total = result.terms, result.total
    lines = [f"genus {hom.genus}, {g.b} boundary component(s), {g.n_vertices} vertices after normalization"]
    for t in terms:
        lines.append(f"beta={_bits(t.beta)}  inner sum: {t.inner_sum}  ->  {t.value}")
        for eps, sign, pf in t.pfaffians:
            lines.append(f"    eps={_bits(eps)} sign={sign:+d} Pf={pf}")
    lines.append(f"Z_MD = {total}")
    record = {
        "total": str(total),
        "genus": hom.genus,
        "boundary_components": g.b,
        "pfaffian_count": sum(len(t.pfaffians) for t in terms),
        "terms": [
            {
                "beta": list(t.beta),
                "inner_sum": str(t.inner_sum),
                "value": str(t.value),
                "pfaffians": [
                    {"epsilon": list(eps), "sign": sign, "pfaffian": str(pf)} for eps, sign, pf in t.pfaffians
                ],
            }
            for t in terms
        ],
    }
    if args.dump_curves:
        curves = _curves(g, hom)
        record["curves"] = curves
        for i, (a, c) in enumerate(zip(curves["alphas"], curves["gammas"])):
            lines.append(f"alpha_{i + 1} crosses {a}; gamma_{i + 1} = {c}")
    _emit(args, lines, record)
    return 0


def cmd_dimer(args) -> int:
    g = _load(args)
    result = dimer_partition(g, jobs=args.jobs)
    lines = [f"genus {result.genus}"]
    for t in result.terms:
        for eps, sign, pf in t.pfaffians:
            lines.append(f"    eps={_bits(eps)} sign={sign:+d} Pf={pf}")
    lines.append(f"Z_D = {result.total}")
    record = result.to_dict()
    if args.dump_curves and result.terms:
        record["curves"] = _curves(result.graph, homology(result.graph))
    _emit(args, lines, record)
    return 0


def cmd_orient(args) -> int:
    g = normalize(_load(args))
    beta = _parse_beta(args.beta, g.b)
    if beta is None:
        beta = (0,) * g.b
    k = orientation_class(g, beta, homology(g))
    table = orientation_table(g, k)
    lines = [f"beta={_bits(beta)}"] + [f"{r['edge']}\t{r['tail']} -> {r['head']}" for r in table]
    _emit(args, lines, {"beta": list(beta), "orientation": table})
    return 0


def cmd_enumerate(args) -> int:
    g = _load(args)
    total = oracle_Z_md(g, args.max_oracle)
    count = count_md(g, args.max_oracle)
    parts = oracle_Z_by_parity(g, args.max_oracle)
    lines = [f"coverings: {count}"]
    lines += [f"beta={_bits(beta)}: {val}" for beta, val in parts.items()]
    lines.append(f"Z_MD = {total}")
    record = {
        "coverings": count,
        "total": str(total),
        "by_beta": {_bits(beta): str(val) for beta, val in parts.items()},
    }
    _emit(args, lines, record)
    return 0


def _random_skew(rng, n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = int(rng.integers(-3, 4))
            a[i][j], a[j][i] = x, -x
    return a


def cmd_verify(args) -> int:
    g0 = _load(args)
    g = normalize(g0)
    hom = homology(g)
    rng = np.random.default_rng(args.seed)
    checks = []

    def check(name, ok):
        checks.append((name, bool(ok)))

    small = g.n_vertices <= args.max_oracle
    interior = [f for f in range(len(g.faces)) if f not in g.hole_faces]
    for beta in admissible_betas(g.b):
        tag = _bits(beta)
        k = orientation_class(g, beta, hom)
        check(f"kasteleyn[{tag}]", is_kasteleyn(g, k, interior))
        check(f"boundary-pattern[{tag}]", has_boundary_pattern(g, k, beta))
        check(f"gamma-odd[{tag}]", all(n_count(k, c) % 2 for c in hom.gammas))
        for eps in np.ndindex(*(2,) * len(hom.alphas)):
            k2 = flip_epsilon(k, eps, hom.alphas)
            back = flip_epsilon(k2, eps, hom.alphas)
            if not (
                np.array_equal(back, k) and has_boundary_pattern(g, k2, beta) and is_kasteleyn(g, k2, interior)
            ):
                check(f"flip-involution[{tag}]", False)
                break
        else:
            check(f"flip-involution[{tag}]", True)
        m = modified_matrix(g, k, beta).matrix
        if len(m) <= 12:
            check(f"pf-squared-det[{tag}]", pfaffian(m) ** 2 == determinant(m))
        if small:
            check(f"matrix-proposition[{tag}]", verify_matrix_proposition(g, beta, k))
            check(f"bijection-lemma[{tag}]", verify_bijection_lemma(g, beta))
    if g0.n_vertices <= args.max_oracle:
        check("oracle-equality", boundary_md_partition(g0).total == oracle_Z_md(g0, args.max_oracle))
    for _ in range(20):
        a = _random_skew(rng, 2 * int(rng.integers(1, 4)))
        if pfaffian(a) ** 2 != determinant(a):
            check("random-pf-squared-det", False)
            break
    else:
        check("random-pf-squared-det", True)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in checks]
    _emit(args, lines, {"checks": {name: ok for name, ok in checks}})
    return 0 if all(ok for _, ok in checks) else 2


def _time(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def cmd_bench(args) -> int:
    if args.graph:
        graphs = [("input", _load(args))]
    else:
        graphs = [(f"cylinder {c}x{h}", cylinder_lattice(c, h, get_ring(args.ring))) for c, h in args.sizes]
    rows = []
    for name, g in graphs:
        res, t_pf = _time(lambda: boundary_md_partition(g, jobs=args.jobs))
        row = {"graph": name, "vertices": g.n_vertices, "Z_MD": str(res.total), "pfaffian_s": round(t_pf, 4)}
        if g.n_vertices <= args.max_oracle:
            ref, t_or = _time(lambda: oracle_Z_md(g, args.max_oracle))
            row.update(oracle_s=round(t_or, 4), agree=ref == res.total)
        try:
            integer_arrays(g)
            if g.n_vertices <= 22:
                _kernels.warmup()
                ref, t_dp = _time(lambda: fast_Z_md(g))
                row.update(subset_dp_s=round(t_dp, 4), dp_agree=ref == res.total)
        except (ValueError, TypeError):
            pass
        rows.append(row)
    lines = ["graph                 |V|  pfaffian_s  oracle_s  subset_dp_s  agree"]
    for r in rows:
        lines.append(
            f"{r['graph']:<20} {r['vertices']:>4}  {r['pfaffian_s']:>10}  {str(r.get('oracle_s', '-')):>8}"
            f"  {str(r.get('subset_dp_s', '-')):>11}  {r.get('agree', r.get('dp_agree', '-'))}"
        )
    _emit(args, lines, {"rows": rows, "numba": _kernels.USE_NUMBA})
    return 0


# ------------------------------------------------------------------ parsing
def _size(text: str):
    try:
        c, h = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected CxH, got {text!r}") from None
    return c, h


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mdpfaffian", description="Boundary monomer-dimer partition functions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph_required=True):
        if graph_required:
            sp.add_argument("graph", help="graph JSON file")
        else:
            sp.add_argument("graph", nargs="?", help="graph JSON file (optional)")
        sp.add_argument("--ring", choices=["rational", "polynomial"], default="rational")
        sp.add_argument("--beta", help="monomer parity class, one bit per boundary")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--dump-curves", action="store_true")
        sp.add_argument("--max-oracle", type=int, default=20)
        sp.add_argument("--json", action="store_true", help="structured output")
        return sp

    common(sub.add_parser("compute", help="Z_MD from Pfaffians")).set_defaults(func=cmd_compute)
    common(sub.add_parser("dimer", help="dimer partition function of the closed surface")).set_defaults(
        func=cmd_dimer
    )
    common(sub.add_parser("orient", help="orientation used for one beta")).set_defaults(func=cmd_orient)
    common(sub.add_parser("enumerate", help="brute-force enumeration")).set_defaults(func=cmd_enumerate)
    common(sub.add_parser("verify", help="run the identity checks on one graph")).set_defaults(func=cmd_verify)
    bench = common(sub.add_parser("bench", help="timing table"), graph_required=False)
    bench.add_argument("--sizes", type=_size, nargs="+", default=[(4, 3), (6, 3), (6, 5)])
    bench.set_defaults(func=cmd_bench)
    return p


INPUT_ERRORS = (InvalidGraphError, UsageError, OracleSizeError, OSError, json.JSONDecodeError, ValueError)
INTERNAL_ERRORS = (InvariantViolation, TopologyError, OrientationError, ShurikenError, ArithmeticError)


def _fail(code: int, exc: BaseException) -> int:
    record = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    print(json.dumps(record), file=sys.stderr)
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INTERNAL_ERRORS as exc:
        return _fail(2, exc)
    except INPUT_ERRORS as exc:
        return _fail(1, exc)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
