"""Command-line front end with machine-readable (JSON) reports.

Commands: enumerate, classify, table, invariants, spin, prop1, rigidity.
Streams are JSON-lines; everything else is a single JSON document of the
form {"command", "inputs", "results", "version"}.  Exit codes: 0 ok,
2 usage or parse error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__, bieberbach, cohomology, rigidity, spin
from .bottmatrix import (
    BottMatrix,
    MatrixParseError,
    NotBottMatrix,
    count_ghw_rbm_classes,
    diffeo_classes,
    enumerate_strict_upper,
    is_ghw_rbm,
    is_orientable,
    parse_matrix,
    to_json_dict,
)
from .gf2 import BoundExceeded, rank_masks

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3


def _report(command: str, inputs: dict, results) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "version": __version__,
    }


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _load_matrix(path: str) -> BottMatrix:
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return parse_matrix(text)


def cmd_enumerate(dim: int, orientable: bool, ghw: bool) -> int:
    count = 0
    for m in enumerate_strict_upper(dim):
        if orientable and not is_orientable(m):
            continue
        if ghw and not is_ghw_rbm(m):
            continue
        _emit(to_json_dict(m))
        count += 1
    _emit(_report("enumerate", {"dim": dim, "orientable": orientable, "ghw": ghw},
                  {"count": count}))
    return EXIT_OK


def cmd_classify(dim: int) -> int:
    classes = diffeo_classes(dim)
    for cls in classes:
        fp = cls.fingerprint
        _emit(
            {
                "canonical": to_json_dict(cls.canonical),
                "size": cls.size,
                "orientable": fp.orientable,
                "holonomy_rank": fp.holonomy_rank,
                "ghw": fp.ghw,
                "w2_zero": fp.w2_zero,
            }
        )
    summary = {
        "classes": len(classes),
        "oriented_classes": sum(1 for c in classes if c.fingerprint.orientable),
        "ghw_classes": sum(1 for c in classes if c.fingerprint.ghw),
    }
    _emit(_report("classify", {"dim": dim}, summary))
    return EXIT_OK


def _table_rows(max_dim: int) -> list[dict]:
    rows = []
    for n in range(1, max_dim + 1):
        classes = diffeo_classes(n)
        rows.append(
            {
                "dim": n,
                "rbm_classes": len(classes),
                "oriented_classes": sum(1 for c in classes if c.fingerprint.orientable),
                "ghw_rbm_classes": count_ghw_rbm_classes(n),
                "ghw_rbm_formula": 1 << ((n - 2) * (n - 3) // 2) if n >= 2 else None,
            }
        )
    return rows


def cmd_table(max_dim: int, csv: bool) -> int:
    rows = _table_rows(max_dim)
    if csv:
        sys.stdout.write("dim,rbm_classes,oriented_classes,ghw_rbm_classes,ghw_rbm_formula\n")
        for r in rows:
            formula = "" if r["ghw_rbm_formula"] is None else r["ghw_rbm_formula"]
            sys.stdout.write(
                f"{r['dim']},{r['rbm_classes']},{r['oriented_classes']},"
                f"{r['ghw_rbm_classes']},{formula}\n"
            )
    else:
        _emit(_report("table", {"max_dim": max_dim}, {"rows": rows}))
    return EXIT_OK


def _matrix_context(m: BottMatrix) -> tuple[dict, cohomology.CohomRing]:
    ring = cohomology.ring_of(m)
    info: dict = {"matrix": to_json_dict(m)}
    if ring.permutation != tuple(range(m.n)):
        info["normalization"] = {
            "permutation": [p + 1 for p in ring.permutation],
            "matrix": to_json_dict(ring.matrix),
        }
    return info, ring


def cmd_invariants(path: str) -> int:
    m = _load_matrix(path)
    info, ring = _matrix_context(m)
    results = dict(info)
    results.update(
        {
            "orientable": is_orientable(m),
            "rank": rank_masks(m.rows),
            "ghw": is_ghw_rbm(m),
            "w1": cohomology.format_poly(ring.stiefel_whitney(1)),
            "w2": cohomology.format_poly(ring.stiefel_whitney(2)),
            "h2_real_zero": cohomology.h2_real_is_zero(m),
            "betti": [ring.betti_z2(k) for k in range(m.n + 1)],
        }
    )
    _emit(_report("invariants", {"matrix_file": path}, results))
    return EXIT_OK


def _witness_dict(w: Optional[spin.ObstructionWitness]) -> Optional[dict]:
    if w is None:
        return None
    return {"kind": w.kind, "i": w.i + 1, "j": w.j + 1, "data": list(w.data)}


def cmd_spin(path: str) -> int:
    m = _load_matrix(path)
    info, ring = _matrix_context(m)
    results = dict(info)
    oriented = is_orientable(m)
    results["orientable"] = oriented
    results["w1"] = cohomology.format_poly(ring.stiefel_whitney(1))
    results["w2"] = cohomology.format_poly(ring.stiefel_whitney(2))
    if oriented:
        witnesses = [
            w for w in (_witness_dict(spin.odd_overlap_witness(m)), _witness_dict(spin.disjoint_rows_witness(m)))
            if w is not None
        ]
        results["spin"] = spin.has_spin(m)
        results["spinc_obstructed"] = spin.spinc_obstructed(m)
        results["witnesses"] = witnesses
        results["lift_found"] = spin.spin_lift_search(m) is not None
    else:
        results["spin"] = None
        results["spinc_obstructed"] = None
        results["witnesses"] = []
    _emit(_report("spin", {"matrix_file": path}, results))
    return EXIT_OK


def cmd_prop1(dim: int) -> int:
    checks = bieberbach.tower_conjugation_report(dim)
    results = {"dim": dim, "ok": all(c["ok"] for c in checks), "checks": checks}
    _emit(_report("prop1", {"dim": dim}, results))
    return EXIT_OK


def cmd_rigidity(dim: int, sample: int, seed: int, prune: bool) -> int:
    results = rigidity.rigidity_experiment(dim, inter_samples=sample, seed=seed, prune=prune)
    _emit(_report("rigidity", {"dim": dim, "sample": sample, "seed": seed, "prune": prune},
                  results))
    return EXIT_OK if not results["violations"] else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottclass",
        description="Classify real Bott manifolds and decide their Spin/Spin^C structures.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="stream strictly upper Bott matrices")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--orientable", action="store_true", help="only even-weight rows")
    p.add_argument("--ghw", action="store_true", help="only rank n-1 matrices")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")

    p = sub.add_parser("classify", help="diffeomorphism classes for one dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("table", help="class counts per dimension")
    p.add_argument("--max-dim", type=int, default=6)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    p = sub.add_parser("invariants", help="orientability, rank, GHW flag, w1, w2")
    p.add_argument("--matrix", required=True, help="matrix file (text or JSON), '-' for stdin")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("spin", help="Spin/Spin^C report with obstruction witnesses")
    p.add_argument("--matrix", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("prop1", help="verify the Gamma_n / Gamma(A) conjugation")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("rigidity", help="ring-isomorphism vs diffeomorphism partition")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--sample", type=int, default=10, help="inter-class pairs at n = 5")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args.dim, args.orientable, args.ghw)
        if args.command == "classify":
            return cmd_classify(args.dim)
        if args.command == "table":
            return cmd_table(args.max_dim, args.csv)
        if args.command == "invariants":
            return cmd_invariants(args.matrix)
        if args.command == "spin":
            return cmd_spin(args.matrix)
        if args.command == "prop1":
            return cmd_prop1(args.dim)
        if args.command == "rigidity":
            return cmd_rigidity(args.dim, args.sample, args.seed, not args.no_prune)
        parser.error(f"unknown command {args.command!r}")
    except (MatrixParseError, NotBottMatrix, BoundExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
