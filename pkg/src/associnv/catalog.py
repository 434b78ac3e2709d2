"""Catalog files: named algebras with expected invariants, and their verification.

Grammar (line oriented, ``#`` starts a comment)::

    algebra NAME dim N
    product I J = C*eK + C*eK ...
    expect KIND dim D [constraints LHS=RHS, LHS=RHS ...]
    expect small yes|no
    end

Coefficients are integers or ``p/q``. Constraint left-hand sides are linear
combinations of ``a(r,c)`` (entry ``r, c`` of the map, 1-based), ``b(r,c)``
(entry of ``D'``, only for ``qder_pair``) and ``x(i)`` (only for ``center``).
"""

from __future__ import annotations

import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import solvers
from .algebra import Algebra, associativity_violation, center, from_products
from .linalg import rank

KINDS = ("der", "centroid", "qc", "zder", "qder_pair", "qder_D", "qder_Dprime", "center", "small")

_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_PRODUCT_RE = re.compile(r"^product\s+(\d+)\s+(\d+)\s*=\s*(.+)$")
_TERM_RE = re.compile(rf"^({_RAT})\s*\*\s*e(\d+)$")
_SYMBOL_RE = re.compile(r"([abx])\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)")


class CatalogError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_rational(text: str, line: int | None = None) -> Fraction:
    text = text.strip()
    if not _RAT_RE.match(text):
        raise CatalogError(f"not a rational literal: {text!r}", line)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise CatalogError(f"zero denominator: {text!r}", line)
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Constraint:
    """``sum coeffs[symbol] * symbol = rhs``; symbols are ``("a", r, c)``, ``("x", i)``, ..."""

    coeffs: tuple[tuple[tuple, Fraction], ...]
    rhs: Fraction = Fraction(0)

    def __str__(self) -> str:
        parts = []
        for sym, c in self.coeffs:
            name = f"{sym[0]}({','.join(str(i) for i in sym[1:])})"
            if c == 1:
                term = name
            elif c == -1:
                term = f"-{name}"
            else:
                term = f"{format_rational(c)}*{name}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts) + "=" + format_rational(self.rhs)


@dataclass(frozen=True)
class Expectation:
    kind: str
    expected: int | bool
    constraints: tuple[Constraint, ...] = ()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    products: tuple[tuple[int, int, tuple[tuple[Fraction, int], ...]], ...]
    expectations: tuple[Expectation, ...] = ()
    line: int | None = None

    def algebra(self) -> Algebra:
        table = {}
        for i, j, terms in self.products:
            out: dict[int, Fraction] = {}
            for c, k in terms:
                out[k] = out.get(k, Fraction(0)) + c
            table[(i, j)] = out
        return from_products(self.dim, table, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, CatalogEntry):
            return NotImplemented
        return (self.name, self.dim, self.products, self.expectations) == (
            other.name,
            other.dim,
            other.products,
            other.expectations,
        )

    def __hash__(self):
        return hash((self.name, self.dim, self.products, self.expectations))


def _ambient(kind: str, n: int) -> int:
    if kind == "center":
        return n
    if kind == "qder_pair":
        return 2 * n * n
    return n * n


def _symbol_index(sym: tuple, kind: str, n: int) -> int:
    if sym[0] == "x":
        return sym[1] - 1
    offset = n * n if sym[0] == "b" else 0
    return offset + (sym[1] - 1) * n + (sym[2] - 1)


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_constraint(text: str, kind: str, n: int, line: int) -> Constraint:
    if text.count("=") != 1:
        raise CatalogError(f"constraint needs exactly one '=': {text!r}", line)
    lhs, rhs = text.split("=")
    rhs_value = parse_rational(rhs, line)
    allowed = {"center": "x", "qder_pair": "ab"}.get(kind, "a")
    coeffs: dict[tuple, Fraction] = {}
    pos = 0
    s = lhs.replace(" ", "")
    if not s:
        raise CatalogError(f"empty constraint: {text!r}", line)
    while pos < len(s):
        m = _SYMBOL_RE.search(s, pos)
        if m is None:
            raise CatalogError(f"cannot parse constraint {text!r}", line)
        prefix = s[pos:m.start()]
        if prefix.endswith("*"):
            prefix = prefix[:-1]
        if prefix in ("", "+"):
            c = Fraction(1)
        elif prefix == "-":
            c = Fraction(-1)
        else:
            if pos > 0 and prefix[0] not in "+-":
                raise CatalogError(f"missing operator in {text!r}", line)
            c = parse_rational(prefix.lstrip("+") if prefix.startswith("+") else prefix, line)
        letter, r, col = m.group(1), m.group(2), m.group(3)
        if letter not in allowed:
            raise CatalogError(f"symbol {letter}(...) not allowed for kind {kind}", line)
        if letter == "x":
            if col is not None:
                raise CatalogError("x(i) takes one index", line)
            sym: tuple = ("x", int(r))
            bad = not 1 <= int(r) <= n
        else:
            if col is None:
                raise CatalogError(f"{letter}(r,c) takes two indices", line)
            sym = (letter, int(r), int(col))
            bad = not (1 <= int(r) <= n and 1 <= int(col) <= n)
        if bad:
            raise CatalogError(f"symbol index out of range in {text!r}", line)
        coeffs[sym] = coeffs.get(sym, Fraction(0)) + c
        pos = m.end()
    items = tuple((k, v) for k, v in coeffs.items() if v != 0)
    return Constraint(items, rhs_value)


def _constraint_matrix(constraints: Iterable[Constraint], kind: str, n: int):
    size = _ambient(kind, n)
    rows, aug = [], []
    for con in constraints:
        row = [Fraction(0)] * size
        for sym, c in con.coeffs:
            row[_symbol_index(sym, kind, n)] += c
        rows.append(row)
        aug.append(row + [con.rhs])
    return rows, aug, size


def _parse_expect(rest: str, n: int, line: int) -> Expectation:
    toks = rest.split(None, 1)
    if not toks:
        raise CatalogError("empty expect line", line)
    kind = toks[0]
    if kind not in KINDS:
        raise CatalogError(f"unknown kind {kind!r}", line)
    tail = toks[1].strip() if len(toks) > 1 else ""
    if kind == "small":
        if tail not in ("yes", "no"):
            raise CatalogError("expect small takes yes or no", line)
        return Expectation("small", tail == "yes")
    m = re.match(r"^dim\s+(\d+)\s*(?:constraints\s+(.+))?$", tail)
    if not m:
        raise CatalogError(f"malformed expect line for {kind}", line)
    constraints = ()
    if m.group(2):
        constraints = tuple(
            _parse_constraint(p, kind, n, line) for p in _split_top_level(m.group(2))
        )
        rows, aug, size = _constraint_matrix(constraints, kind, n)
        if rank(rows, size) != rank(aug, size + 1):
            raise CatalogError("inconsistent constraints", line)
    return Expectation(kind, int(m.group(1)), constraints)


def _parse_terms(text: str, n: int, line: int):
    text = re.sub(r"\s*-\s*(?=\d)", " + -", text.strip())
    terms = []
    for t in text.split("+"):
        t = t.strip()
        if not t:
            continue
        m = _TERM_RE.match(t.replace(" ", ""))
        if not m:
            raise CatalogError(f"bad term {t!r}; expected p/q*eK", line)
        k = int(m.group(2))
        if not 1 <= k <= n:
            raise CatalogError(f"basis index e{k} out of range 1..{n}", line)
        terms.append((parse_rational(m.group(1), line), k))
    if not terms:
        raise CatalogError("product line without terms", line)
    return tuple(terms)


def parse_catalog(text: str) -> list[CatalogEntry]:
    entries = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        if cur is None:
            m = re.match(r"^algebra\s+(\S+)\s+dim\s+(\d+)$", line)
            if not m:
                raise CatalogError(f"expected 'algebra NAME dim N', got {line!r}", lineno)
            n = int(m.group(2))
            if not 1 <= n <= 16:
                raise CatalogError(f"dimension {n} outside 1..16", lineno)
            cur = {"name": m.group(1), "dim": n, "products": [], "expect": [], "line": lineno, "seen": set()}
            continue
        n = cur["dim"]
        if head == "product":
            if cur["expect"]:
                raise CatalogError("product line after expect lines", lineno)
            m = _PRODUCT_RE.match(line)
            if not m:
                raise CatalogError(f"malformed product line {line!r}", lineno)
            i, j = int(m.group(1)), int(m.group(2))
            if not (1 <= i <= n and 1 <= j <= n):
                raise CatalogError(f"product indices ({i},{j}) out of range 1..{n}", lineno)
            if (i, j) in cur["seen"]:
                raise CatalogError(f"duplicate product line for e{i}*e{j}", lineno)
            cur["seen"].add((i, j))
            cur["products"].append((i, j, _parse_terms(m.group(3), n, lineno)))
        elif head == "expect":
            cur["expect"].append(_parse_expect(line[len("expect"):].strip(), n, lineno))
        elif line == "end":
            entries.append(
                CatalogEntry(
                    cur["name"],
                    n,
                    tuple(cur["products"]),
                    tuple(cur["expect"]),
                    cur["line"],
                )
            )
            cur = None
        else:
            raise CatalogError(f"unexpected line {line!r}", lineno)
    if cur is not None:
        raise CatalogError(f"entry {cur['name']} not closed with 'end'", cur["line"])
    return entries


def load_catalog(path) -> list[CatalogEntry]:
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())


def serialize_catalog(entries: Iterable[CatalogEntry]) -> str:
    out = []
    for e in entries:
        out.append(f"algebra {e.name} dim {e.dim}")
        for i, j, terms in e.products:
            rhs = " + ".join(f"{format_rational(c)}*e{k}" for c, k in terms)
            out.append(f"product {i} {j} = {rhs}")
        for x in e.expectations:
            if x.kind == "small":
                out.append(f"expect small {'yes' if x.expected else 'no'}")
                continue
            line = f"expect {x.kind} dim {x.expected}"
            if x.constraints:
                line += " constraints " + ", ".join(str(c) for c in x.constraints)
            out.append(line)
        out.append("end")
        out.append("")
    return "\n".join(out)


# -- verification -----------------------------------------------------------------

@dataclass
class ExpectationResult:
    kind: str
    computed: int | bool
    expected: int | bool
    dims_match: bool
    constraints_satisfied: bool
    free_count_match: bool
    constraint_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.dims_match and self.constraints_satisfied and self.free_count_match


@dataclass
class VerificationResult:
    name: str
    dim: int
    results: list[ExpectationResult] = field(default_factory=list)
    skipped: str | None = None
    qc_dim: int | None = None
    qc_small: bool | None = None

    @property
    def passed(self) -> bool:
        return self.skipped is None and all(r.passed for r in self.results)


def computed_space(a: Algebra, kind: str):
    """Basis vectors (flattened) of the space named by an expectation kind."""
    if kind == "der":
        return solvers.derivations(a).space
    if kind == "centroid":
        return solvers.centroid(a).space
    if kind == "qc":
        return solvers.quasi_centroid(a).space
    if kind == "zder":
        return solvers.central_derivations(a).space
    if kind == "qder_pair":
        return solvers.quasi_derivations(a).space
    if kind == "qder_D":
        return solvers.quasi_derivations(a).d_projection.space
    if kind == "qder_Dprime":
        return solvers.quasi_derivations(a).dprime_projection.space
    if kind == "center":
        return center(a)
    raise ValueError(kind)


def _check_expectation(a: Algebra, x: Expectation) -> ExpectationResult:
    if x.kind == "small":
        small = solvers.is_small_quasi_centroid(a).small
        ok = small == x.expected
        return ExpectationResult("small", small, x.expected, ok, True, True)
    space = computed_space(a, x.kind)
    failures = []
    for con in x.constraints:
        for t, v in enumerate(space.basis):
            value = sum(
                (c * v[_symbol_index(sym, x.kind, a.n)] for sym, c in con.coeffs), Fraction(0)
            )
            if value != con.rhs:
                failures.append(f"{con} (basis {t + 1})")
                break
    free_ok = True
    if x.constraints:
        rows, _, size = _constraint_matrix(x.constraints, x.kind, a.n)
        free_ok = size - rank(rows, size) == x.expected
    return ExpectationResult(
        x.kind,
        space.dim,
        x.expected,
        space.dim == x.expected,
        not failures,
        free_ok,
        failures,
    )


def verify_entry(e: CatalogEntry) -> VerificationResult:
    a = e.algebra()
    bad = associativity_violation(a)
    if bad is not None:
        i, j, k = (t + 1 for t in bad)
        return VerificationResult(e.name, e.dim, skipped=f"non-associative at ({i},{j},{k})")
    res = VerificationResult(e.name, e.dim)
    res.results = [_check_expectation(a, x) for x in e.expectations]
    sm = solvers.is_small_quasi_centroid(a)
    res.qc_dim = sm.qc_dim
    res.qc_small = sm.small
    return res


def parallelism() -> int:
    raw = os.environ.get("ASSOCINV_JOBS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    return max(0, int(raw))


@dataclass
class BatchReport:
    results: list[VerificationResult]

    @property
    def failures(self) -> list[str]:
        return [r.name for r in self.results if r.skipped is None and not r.passed]

    @property
    def skipped(self) -> list[str]:
        return [r.name for r in self.results if r.skipped is not None]

    @property
    def passed(self) -> bool:
        return not self.failures

    def qc_range(self, dim: int = 4):
        dims = [r.qc_dim for r in self.results if r.dim == dim and r.qc_dim is not None]
        return (min(dims), max(dims)) if dims else None

    @property
    def small_qc(self) -> list[str]:
        return [r.name for r in self.results if r.qc_small]


def batch_verify(entries: Iterable[CatalogEntry], jobs: int | None = None) -> BatchReport:
    entries = list(entries)
    jobs = parallelism() if jobs is None else jobs
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(verify_entry, entries))
    else:
        results = [verify_entry(e) for e in entries]
    return BatchReport(results)


def report_dict(report: BatchReport) -> dict:
    """Machine-readable report; key names are part of the public format."""
    entries = []
    for r in report.results:
        entries.append(
            {
                "name": r.name,
                "dim": r.dim,
                "status": "skipped" if r.skipped else ("pass" if r.passed else "fail"),
                "skip_reason": r.skipped,
                "qc_dim": r.qc_dim,
                "qc_small": r.qc_small,
                "expectations": [
                    {
                        "name": r.name,
                        "kind": x.kind,
                        "computed_dim": x.computed,
                        "expected_dim": x.expected,
                        "pass": x.passed,
                        "dims_match": x.dims_match,
                        "constraints_satisfied": x.constraints_satisfied,
                        "free_count_match": x.free_count_match,
                        "constraint_failures": list(x.constraint_failures),
                    }
                    for x in r.results
                ],
            }
        )
    rng = report.qc_range(4)
    return {
        "entries": entries,
        "summary": {
            "total": len(report.results),
            "passed": sum(1 for r in report.results if r.passed),
            "failed": report.failures,
            "skipped_nonassociative": report.skipped,
            "qc_dim_range_dim4": list(rng) if rng else None,
            "small_qc": report.small_qc,
        },
    }


def report_json(report: BatchReport) -> str:
    return json.dumps(report_dict(report), indent=2, sort_keys=True) + "\n"


def report_text(report: BatchReport) -> str:
    lines = []
    for r in report.results:
        if r.skipped:
            lines.append(f"{r.name}: SKIPPED ({r.skipped})")
            continue
        lines.append(f"{r.name}: {'PASS' if r.passed else 'FAIL'}")
        for x in r.results:
            comp = ("yes" if x.computed else "no") if x.kind == "small" else x.computed
            exp = ("yes" if x.expected else "no") if x.kind == "small" else x.expected
            flag = "ok" if x.passed else "MISMATCH"
            line = f"  {x.kind}: computed {comp}, expected {exp} [{flag}]"
            if not x.free_count_match:
                line += " (constraint count disagrees with expected dim)"
            lines.append(line)
            for f in x.constraint_failures:
                lines.append(f"    violated: {f}")
    n = len(report.results)
    lines.append(
        f"{n} entries, {sum(1 for r in report.results if r.passed)} passed, "
        f"{len(report.failures)} failed, {len(report.skipped)} skipped"
    )
    if report.skipped:
        lines.append("skipped: non-associative: " + ", ".join(report.skipped))
    rng = report.qc_range(4)
    if rng:
        lines.append(f"QC dimension over 4-dimensional entries: {rng[0]}..{rng[1]}")
    if report.small_qc:
        lines.append("small quasi-centroid: " + ", ".join(report.small_qc))
    return "\n".join(lines) + "\n"
