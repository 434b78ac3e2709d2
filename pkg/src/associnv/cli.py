"""Command-line interface.

Exit status: 0 success, 1 verification or property failure, 2 input error,
3 precondition violation (non-associative input without override).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, properties, solvers
from .algebra import NonAssociativeInput, associativity_violation, center
from .catalog import CatalogError, format_rational

INVARIANTS = ("der", "centroid", "qc", "zder", "qder")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path):
    try:
        return catalog.load_catalog(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except (CatalogError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _matrix_strings(m):
    return [[format_rational(x) for x in row] for row in m]


def _format_matrix(m, indent="    "):
    cells = _matrix_strings(m)
    width = max(len(c) for row in cells for c in row)
    return [indent + "[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells]


def _parse_invariants(values):
    chosen = []
    for v in values or []:
        for k in v.split(","):
            k = k.strip()
            if not k:
                continue
            if k not in INVARIANTS:
                raise InputError(f"unknown invariant {k!r}; choose from {', '.join(INVARIANTS)}")
            if k not in chosen:
                chosen.append(k)
    if not chosen:
        raise InputError("compute needs at least one --invariant")
    return chosen


_SOLVER = {
    "der": solvers.derivations,
    "centroid": solvers.centroid,
    "qc": solvers.quasi_centroid,
    "zder": solvers.central_derivations,
}


def compute_report(a, invariants, allow_nonassociative=False) -> dict:
    out = {"name": a.name, "dim": a.n, "invariants": {}}
    for k in invariants:
        if k == "qder":
            q = solvers.quasi_derivations(a, allow_nonassociative)
            out["invariants"][k] = {
                "pair_dim": q.dim,
                "d_dim": q.d_projection.dim,
                "dprime_dim": q.dprime_projection.dim,
                "pairs": [
                    {"D": _matrix_strings(d), "Dprime": _matrix_strings(dp)} for d, dp in q.pairs()
                ],
                "d_basis": [_matrix_strings(m) for m in q.d_projection.maps()],
                "dprime_basis": [_matrix_strings(m) for m in q.dprime_projection.maps()],
            }
        else:
            space = _SOLVER[k](a, allow_nonassociative)
            out["invariants"][k] = {
                "dim": space.dim,
                "basis": [_matrix_strings(m) for m in space.maps()],
            }
    return out


def _compute_text(rep) -> str:
    lines = [f"{rep['name'] or 'algebra'} (dim {rep['dim']})"]
    for k, v in rep["invariants"].items():
        if k == "qder":
            lines.append(
                f"qder pair dim {v['pair_dim']}, D-projection dim {v['d_dim']}, "
                f"D'-projection dim {v['dprime_dim']}"
            )
            for t, pair in enumerate(v["pairs"], 1):
                lines.append(f"  pair {t}: D | D'")
                for left, right in zip(_format_matrix(pair["D"]), _format_matrix(pair["Dprime"], "")):
                    lines.append(f"{left} | {right}")
        else:
            lines.append(f"{k} dim {v['dim']}")
            for t, m in enumerate(v["basis"], 1):
                lines.append(f"  basis {t}:")
                lines.extend(_format_matrix(m))
    return "\n".join(lines) + "\n"


def run_compute(args) -> int:
    invariants = _parse_invariants(args.invariant)
    entries = _load(args.input)
    if len(entries) != 1:
        raise InputError(f"{args.input}: expected exactly one algebra, found {len(entries)}")
    a = entries[0].algebra()
    try:
        rep = compute_report(a, invariants, args.allow_nonassociative)
    except NonAssociativeInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.format == "machine":
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_compute_text(rep))
    return EXIT_OK


def run_verify(args) -> int:
    entries = _load(args.catalog)
    report = catalog.batch_verify(entries)
    if args.format == "machine":
        sys.stdout.write(catalog.report_json(report))
    else:
        sys.stdout.write(catalog.report_text(report))
    return EXIT_OK if report.passed else EXIT_FAIL


def _witness_json(w):
    def conv(x):
        if isinstance(x, tuple) and x and isinstance(x[0], tuple):
            return _matrix_strings(x)
        if isinstance(x, (list, tuple)):
            return [conv(y) for y in x]
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        if hasattr(x, "numerator"):
            return format_rational(x)
        return x

    return conv(w)


def run_props(args) -> int:
    entries = _load(args.input)
    ok = True
    doc = []
    lines = []
    for e in entries:
        a = e.algebra()
        bad = associativity_violation(a)
        if bad is not None:
            i, j, k = (t + 1 for t in bad)
            lines.append(f"{e.name}: SKIPPED (non-associative at ({i},{j},{k}))")
            doc.append({"name": e.name, "status": "skipped", "reports": []})
            continue
        reports = properties.run_all(a)
        entry_ok = all(r.holds for r in reports)
        ok = ok and entry_ok
        lines.append(f"{e.name}: {'all checks hold' if entry_ok else 'FAILED'}")
        for r in reports:
            for c in r.checks:
                lines.append(f"  {r.name}.{c.name}: {'holds' if c.holds else 'FAILS'}")
                if not c.holds:
                    lines.append(f"    witness: {_witness_json(c.witness)}")
            for n in r.notes:
                lines.append(f"  {r.name} note: {n}")
        doc.append(
            {
                "name": e.name,
                "status": "pass" if entry_ok else "fail",
                "center_dim": center(a).dim,
                "reports": [
                    {
                        "name": r.name,
                        "holds": r.holds,
                        "checks": [
                            {"name": c.name, "holds": c.holds, "witness": _witness_json(c.witness)}
                            for c in r.checks
                        ],
                        "notes": r.notes,
                    }
                    for r in reports
                ],
            }
        )
    if args.format == "machine":
        sys.stdout.write(json.dumps({"entries": doc, "pass": ok}, indent=2, sort_keys=True) + "\n")
    else:
        lines.append(f"{len(entries)} entries: {'all properties hold' if ok else 'failures present'}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="associnv",
        description="Derivation-type invariants of algebras given by structure constants.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="invariants of a single algebra")
    c.add_argument("--input", required=True)
    c.add_argument("--invariant", action="append", help=f"comma list from {','.join(INVARIANTS)}")
    c.add_argument("--format", choices=("text", "machine"), default="text")
    c.add_argument("--allow-nonassociative", action="store_true")
    c.set_defaults(func=run_compute)

    v = sub.add_parser("verify", help="verify a catalog against its expectations")
    v.add_argument("--catalog", required=True)
    v.add_argument("--format", choices=("text", "machine"), default="text")
    v.set_defaults(func=run_verify)

    r = sub.add_parser("props", help="run the structural property checks")
    r.add_argument("--input", required=True)
    r.add_argument("--format", choices=("text", "machine"), default="text")
    r.set_defaults(func=run_props)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
