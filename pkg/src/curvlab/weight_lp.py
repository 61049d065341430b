"""Exact checks and optimisation of the discharge shares.

Two kinds of input live here.

*Row bounds* state that ``excess(v) * share`` exceeds a decimal for every
admissible vertex matching a pattern; :func:`certify_rows` enumerates the
instances and compares exactly.

*Scenarios* are worst-case inequalities for a discharge target, linear in
a handful of named shares (``alpha``, ``beta``, ...). :func:`verify_paper_weights`
evaluates them at a fixed assignment. :func:`solve` maximises the
smallest margin over the unit box with a dense two-phase simplex on
:class:`~fractions.Fraction` entries, pivoting by Bland's rule, and checks
the optimum against the dual solution it reads off the final tableau.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Collection, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from curvlab.admissibility import is_admissible
from curvlab.classification import ALPHA_SHARE, BETA_SHARE
from curvlab.curvature import excess_of_vector
from curvlab.errors import (
    CurvlabError,
    Infeasible,
    ParseError,
    Unbounded,
    UnknownFaceVector,
    UnknownWeight,
)
from curvlab.report import AuditReport, Check

#: Shares used by the pairing, keyed by the names the scenario files use.
DEFAULT_WEIGHTS: dict[str, Fraction] = {
    "alpha": ALPHA_SHARE,  # alpha-vertex (3,11,13) to its 11-gon
    "beta": BETA_SHARE,  # beta-vertex (3,11,13) to its 11-gon
    "s4519": Fraction(3, 4),  # (4,5,19) to its 5-gon
    "s3347": Fraction(1, 4),  # (3,3,4,7) to its 7-gon
    "ts": Fraction(1, 3),  # TS vertex to each face it feeds
}

#: Face sizes covered by each target label; ``N`` in a row ranges over these.
TARGET_SIZES: dict[str, tuple[int, ...]] = {
    "face5": (5,),
    "face7": (7,),
    "face11": (11,),
    "face13": (13,),
    "faceN": tuple(n for n in range(14, 40) if n != 19),
    "face19": (19,),
    "face4041": (40, 41),
    "sink": (),
}


def _data_path(name: str) -> Path:
    return Path(str(resources.files("curvlab") / "data" / name))


DEFAULT_SCENARIOS = _data_path("scenarios.txt")
DEFAULT_ROWS = _data_path("row_bounds.txt")


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _fraction(token: str, line: int, column: int) -> Fraction:
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {token.strip()!r}", line, column) from None


# ------------------------------------------------------------ linear forms
@dataclass(frozen=True)
class Linear:
    """``const + sum(coeffs[w] * w)`` over named shares."""

    const: Fraction = Fraction(0)
    coeffs: tuple[tuple[str, Fraction], ...] = ()

    @staticmethod
    def of(const: Fraction = Fraction(0), coeffs: Mapping[str, Fraction] | None = None) -> Linear:
        items = tuple(sorted((k, v) for k, v in (coeffs or {}).items() if v != 0))
        return Linear(Fraction(const), items)

    @property
    def terms(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, other: Linear) -> Linear:
        merged = self.terms
        for k, v in other.coeffs:
            merged[k] = merged.get(k, Fraction(0)) + v
        return Linear.of(self.const + other.const, merged)

    def scale(self, k: Fraction) -> Linear:
        return Linear.of(self.const * k, {w: v * k for w, v in self.coeffs})

    def times(self, other: Linear) -> Linear | None:
        """Product, or ``None`` when both sides depend on the shares."""
        if self.is_constant:
            return other.scale(self.const)
        if other.is_constant:
            return self.scale(other.const)
        return None

    def value(self, weights: Mapping[str, Fraction]) -> Fraction:
        total = self.const
        for w, k in self.coeffs:
            if w not in weights:
                raise UnknownWeight(f"no value for share {w!r}")
            total += k * weights[w]
        return total

    def substitute(self, fixed: Mapping[str, Fraction]) -> Linear:
        const = self.const
        rest: dict[str, Fraction] = {}
        for w, k in self.coeffs:
            if w in fixed:
                const += k * fixed[w]
            else:
                rest[w] = k
        return Linear.of(const, rest)


# ---------------------------------------------------------------- scenarios
@dataclass(frozen=True)
class Constraint:
    target: str
    case: str
    expr: Linear
    bound: Fraction
    quoted: Fraction | None = None
    line: int = 0

    @property
    def name(self) -> str:
        return f"{self.target} {self.case}"

    @property
    def check_id(self) -> str:
        return "lp." + self.target + "." + re.sub(r"\s+", "-", self.case)

    def lhs(self, weights: Mapping[str, Fraction]) -> Fraction:
        return self.expr.value(weights)

    def margin(self, weights: Mapping[str, Fraction]) -> Fraction:
        return self.lhs(weights) - self.bound


@dataclass
class ScenarioSet:
    constraints: list[Constraint] = field(default_factory=list)
    definitions: dict[str, dict[str, Linear]] = field(default_factory=dict)

    @property
    def weight_names(self) -> list[str]:
        return sorted({w for c in self.constraints for w, _ in c.expr.coeffs})

    @property
    def targets(self) -> list[str]:
        seen: dict[str, None] = {}
        for c in self.constraints:
            seen.setdefault(c.target, None)
        return list(seen)

    def by_target(self, target: str) -> list[Constraint]:
        return [c for c in self.constraints if c.target == target]

    def find(self, name: str) -> Constraint:
        for c in self.constraints:
            if c.name == name or c.check_id == name:
                return c
        raise KeyError(name)

    def __len__(self) -> int:
        return len(self.constraints)


_LET = re.compile(r"(\S+)\s+let\s+([A-Za-z_]\w*)\s*=\s*(.+)")
_CONSTRAINT = re.compile(r"(\S+)\s+([^:]*?)\s*:\s*([^>]+?)\s*>\s*(\S+)\s*(?:@\s*(\S+))?")
_CALL = re.compile(r"(excess|weight)\((.*)\)")


def _split_terms(expr: str) -> list[tuple[int, int, str]]:
    """Split at top-level binary ``+``/``-``; yields ``(sign, offset, text)``.

    A sign directly after ``*``, ``/`` or at the start of a term is unary.
    """
    out: list[tuple[int, int, str]] = []
    depth, sign, start = 0, 1, 0
    prev = ""
    for i, ch in enumerate(expr):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-":
            if prev in ("", "*", "/"):
                if prev == "":
                    sign = -sign if ch == "-" else sign
                    start = i + 1
                continue
            out.append((sign, start, expr[start:i]))
            sign, start, prev = (1 if ch == "+" else -1), i + 1, ""
            continue
        if not ch.isspace():
            prev = ch
    out.append((sign, start, expr[start:]))
    return out


def _split_factors(term: str) -> list[tuple[int, str]]:
    out: list[tuple[int, str]] = []
    depth, start = 0, 0
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            out.append((start, term[start:i]))
            start = i + 1
    out.append((start, term[start:]))
    return out


def _excess_factor(args: str, line: int, col: int) -> Linear:
    try:
        fv = tuple(int(a) for a in args.split(","))
    except ValueError:
        raise ParseError(f"bad face vector ({args})", line, col) from None
    if any(x < 3 for x in fv) or not is_admissible(fv):
        raise UnknownFaceVector(f"line {line}: {fv} is not an admissible face vector")
    return Linear.of(excess_of_vector(fv))


def _parse_expr(
    text: str,
    line: int,
    col0: int,
    lets: Mapping[str, Linear],
    known: Collection[str] | None,
) -> Linear:
    total = Linear()
    for sign, t_off, term in _split_terms(text):
        if not term.strip():
            raise ParseError("empty term", line, col0 + t_off)
        value = Linear.of(Fraction(sign))
        for f_off, raw in _split_factors(term):
            col = col0 + t_off + f_off + (len(raw) - len(raw.lstrip())) + 1
            tok = raw.strip()
            call = _CALL.fullmatch(tok)
            if call and call.group(1) == "excess":
                factor = _excess_factor(call.group(2), line, col)
            elif call:
                wname = call.group(2).strip()
                if known is not None and wname not in known:
                    raise UnknownWeight(f"line {line}, column {col}: unknown share {wname!r}")
                factor = Linear.of(Fraction(0), {wname: Fraction(1)})
            elif re.fullmatch(r"[A-Za-z_]\w*", tok):
                if tok not in lets:
                    raise ParseError(f"undefined name {tok!r}", line, col)
                factor = lets[tok]
            else:
                factor = Linear.of(_fraction(tok, line, col))
            product = value.times(factor)
            if product is None:
                raise ParseError("term is not linear in the shares", line, col)
            value = product
        total = total + value
    return total


def parse_scenarios(text: str, weights: Collection[str] | None = None) -> ScenarioSet:
    """Parse scenario text. ``weights`` restricts the share names (default: the pairing's)."""
    known = set(DEFAULT_WEIGHTS) if weights is None else set(weights)
    result = ScenarioSet()
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        body = body.strip()
        lets = result.definitions.setdefault(body.split()[0], {})
        if m := _LET.fullmatch(body):
            target, name, expr = m.groups()
            lets[name] = _parse_expr(expr, lineno, indent + m.start(3), lets, known)
            continue
        m = _CONSTRAINT.fullmatch(body)
        if m is None:
            raise ParseError("expected '<target> <case>: <expr> > <bound> [@ <decimal>]'", lineno, indent + 1)
        target, case, expr, bound, quoted = m.groups()
        if not case:
            raise ParseError("missing case label", lineno, indent + m.start(2) + 1)
        c = Constraint(
            target=target,
            case=case,
            expr=_parse_expr(expr, lineno, indent + m.start(3), lets, known),
            bound=_fraction(bound, lineno, indent + m.start(4) + 1),
            quoted=None if quoted is None else _fraction(quoted, lineno, indent + m.start(5) + 1),
            line=lineno,
        )
        if c.name in seen:
            raise ParseError(f"case {c.name!r} repeats line {seen[c.name]}", lineno, indent + 1)
        seen[c.name] = lineno
        result.constraints.append(c)
    result.definitions = {k: v for k, v in result.definitions.items() if v}
    return result


def load_scenarios(path: str | Path | None = None, weights: Collection[str] | None = None) -> ScenarioSet:
    return parse_scenarios(_read(path or DEFAULT_SCENARIOS), weights)


def parse_weights(text: str) -> dict[str, Fraction]:
    """``name = value`` lines; values are rationals or decimals in ``[0, 1]``."""
    out: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'name = value'", lineno, 1)
        name, value = (s.strip() for s in body.split("=", 1))
        if not re.fullmatch(r"[A-Za-z_]\w*", name):
            raise ParseError(f"bad share name {name!r}", lineno, 1)
        q = _fraction(value, lineno, body.index("=") + 2)
        if not 0 <= q <= 1:
            raise ParseError(f"share {name} = {value} lies outside [0, 1]", lineno, body.index("=") + 2)
        out[name] = q
    return out


def load_weights(path: str | Path) -> dict[str, Fraction]:
    return parse_weights(_read(path))


# --------------------------------------------------------------- row bounds
@dataclass(frozen=True)
class RowBound:
    target: str
    pattern: tuple[int | str, ...] | None  # None means every TS vector
    domains: tuple[tuple[str, tuple[int, ...]], ...]
    shares: tuple[Fraction, ...]
    bound: Fraction
    label: str
    line: int = 0

    @property
    def check_id(self) -> str:
        return f"rows.{self.target}.{self.label}"

    def instances(self) -> list[tuple[int, ...]]:
        if self.pattern is None:
            return [
                fv
                for d in (3, 4, 5)
                for fv in itertools.combinations_with_replacement((3, 4), d)
                if is_admissible(fv)
            ]
        doms = dict(self.domains)
        names = sorted({x for x in self.pattern if isinstance(x, str)})
        found: set[tuple[int, ...]] = set()
        for combo in itertools.product(*(doms[n] for n in names)):
            env = dict(zip(names, combo))
            fv = tuple(sorted(env[x] if isinstance(x, str) else x for x in self.pattern))
            if is_admissible(fv):
                found.add(fv)
        return sorted(found)

    def minimum(self) -> tuple[Fraction, tuple[int, ...], Fraction] | None:
        """Smallest ``excess * share`` with its vector and share, or ``None``."""
        best = None
        for fv in self.instances():
            e = excess_of_vector(fv)
            for s in self.shares:
                if best is None or e * s < best[0]:
                    best = (e * s, fv, s)
        return best


_ROW = re.compile(r"(\S+)\s+(TS|\([^)]*\))\s*(.*?)\s*\*\s*(\S+)\s*>\s*(\S+)")


def _int_list(text: str, line: int, col: int) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", part.strip())
        if m is None:
            raise ParseError(f"bad value list {text!r}", line, col)
        lo, hi = int(m.group(1)), int(m.group(2) or m.group(1))
        out.extend(range(lo, hi + 1))
    return out


def parse_rows(text: str) -> list[RowBound]:
    rows: list[RowBound] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        m = _ROW.fullmatch(body)
        if m is None:
            raise ParseError("expected '<target> <vector> [conditions] * <shares> > <decimal>'", lineno, 1)
        target, vec, conds, shares, bound = m.groups()
        if target not in TARGET_SIZES:
            raise ParseError(f"unknown target {target!r}", lineno, 1)
        pattern: tuple[int | str, ...] | None = None
        domains: dict[str, list[int]] = {}
        if vec != "TS":
            entries: list[int | str] = []
            for tok in vec[1:-1].split(","):
                tok = tok.strip()
                if tok.isdigit():
                    if int(tok) < 3:
                        raise UnknownFaceVector(f"line {lineno}: entry {tok} is below 3")
                    entries.append(int(tok))
                elif re.fullmatch(r"[A-Za-z]", tok):
                    entries.append(tok)
                else:
                    raise ParseError(f"bad vector entry {tok!r}", lineno, body.index(vec) + 1)
            pattern = tuple(entries)
            if TARGET_SIZES[target]:
                domains["N"] = list(TARGET_SIZES[target])
            excluded: dict[str, set[int]] = {}
            for cond in conds.split():
                cm = re.fullmatch(r"([A-Za-z](?:,[A-Za-z])*)(!?=)(.+)", cond)
                if cm is None:
                    raise ParseError(f"bad condition {cond!r}", lineno, body.index(cond) + 1)
                values = _int_list(cm.group(3), lineno, body.index(cond) + 1)
                for var in cm.group(1).split(","):
                    if cm.group(2) == "=":
                        domains[var] = values
                    else:
                        excluded.setdefault(var, set()).update(values)
            for var, bad in excluded.items():
                domains[var] = [x for x in domains.get(var, []) if x not in bad]
            for x in entries:
                if isinstance(x, str) and x not in domains:
                    raise ParseError(f"free entry {x} has no range", lineno, body.index(vec) + 1)
            if any(v < 3 for vals in domains.values() for v in vals):
                raise UnknownFaceVector(f"line {lineno}: a range reaches below 3")
        share_col = body.index("*") + 2
        rows.append(
            RowBound(
                target=target,
                pattern=pattern,
                domains=tuple(sorted((k, tuple(v)) for k, v in domains.items())),
                shares=tuple(_fraction(s, lineno, share_col) for s in shares.split("|")),
                bound=_fraction(bound, lineno, body.rindex(">") + 2),
                label=re.sub(r"\s+", " ", f"{vec} {conds}".strip()) + f" *{shares}",
                line=lineno,
            )
        )
    return rows


def load_rows(path: str | Path | None = None) -> list[RowBound]:
    return parse_rows(_read(path or DEFAULT_ROWS))


def certify_rows(rows: Sequence[RowBound]) -> AuditReport:
    """One check per row: the exact minimum exceeds the quoted decimal."""
    report = AuditReport()
    for row in rows:
        low = row.minimum()
        if low is None:
            report.add("bounds", Check(row.check_id, False, "no admissible instance"))
            continue
        value, fv, share = low
        ok = value > row.bound
        report.add(
            "bounds",
            Check(
                row.check_id,
                ok,
                f"min {float(value):.6f} at {fv} share {share} {'>' if ok else '<='} {row.bound}",
                values={"minimum": value, "vector": list(fv), "share": share, "bound": row.bound},
                witnesses=[] if ok else [list(fv)],
            ),
        )
    report.info["rows"] = len(rows)
    return report


# --------------------------------------------------------- fixed-share check
def verify_paper_weights(
    scenarios: ScenarioSet,
    weights: Mapping[str, Fraction] | None = None,
) -> AuditReport:
    """Evaluate every scenario exactly at ``weights`` (default: the pairing's)."""
    w = dict(DEFAULT_WEIGHTS if weights is None else weights)
    missing = [name for name in scenarios.weight_names if name not in w]
    if missing:
        raise UnknownWeight(f"no value for share(s) {', '.join(missing)}")
    report = AuditReport()
    lowest: dict[str, Fraction] = {}
    for c in scenarios.constraints:
        lhs = c.lhs(w)
        ok = lhs > c.bound and (c.quoted is None or lhs > c.quoted)
        msg = f"{float(lhs):.6g} > {c.bound}"
        if c.quoted is not None:
            msg += f", quoted {c.quoted}"
        if not ok:
            msg = f"{float(lhs):.6g} fails ({c.bound}" + (f", quoted {c.quoted})" if c.quoted is not None else ")")
        report.add(
            "lp",
            Check(
                c.check_id,
                ok,
                msg,
                values={"lhs": lhs, "bound": c.bound, "quoted": c.quoted, "margin": lhs - c.bound},
            ),
        )
        if c.bound == 0:
            lowest[c.target] = min(lowest.get(c.target, lhs), lhs)
    report.info["weights"] = w
    report.info["min lhs by target"] = lowest
    return report


def flipped(
    scenarios: ScenarioSet,
    changes: Mapping[str, Fraction],
    base: Mapping[str, Fraction] | None = None,
) -> list[Constraint]:
    """Constraints that hold at ``base`` but fail once ``changes`` are applied."""
    before = dict(DEFAULT_WEIGHTS if base is None else base)
    after = {**before, **changes}
    return [c for c in scenarios.constraints if c.margin(before) > 0 >= c.margin(after)]


# ------------------------------------------------------------------ simplex
@dataclass
class LPResult:
    x: list[Fraction]
    y: list[Fraction]
    value: Fraction
    pivots: int


def _pivot(rows: list[list[Fraction]], rhs: list[Fraction], r: int, e: int) -> None:
    p = rows[r][e]
    rows[r] = [v / p for v in rows[r]]
    rhs[r] = rhs[r] / p
    pr = rows[r]
    for i, row in enumerate(rows):
        if i == r:
            continue
        k = row[e]
        if k:
            rows[i] = [a - k * b for a, b in zip(row, pr)]
            rhs[i] -= k * rhs[r]


def _run(
    rows: list[list[Fraction]],
    rhs: list[Fraction],
    basis: list[int],
    obj: Sequence[Fraction],
    columns: int,
) -> int:
    """Maximise ``obj`` over the current basic solution with Bland's rule."""
    pivots = 0
    while True:
        entering = None
        for j in range(columns):
            if j in basis:
                continue
            reduced = obj[j] - sum((obj[b] * row[j] for b, row in zip(basis, rows) if obj[b]), Fraction(0))
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return pivots
        leave = None
        for i, row in enumerate(rows):
            a = row[entering]
            if a > 0:
                ratio = rhs[i] / a
                if leave is None or ratio < leave[0] or (ratio == leave[0] and basis[i] < basis[leave[1]]):
                    leave = (ratio, i)
        if leave is None:
            raise Unbounded(f"objective grows without bound along column {entering}")
        _pivot(rows, rhs, leave[1], entering)
        basis[leave[1]] = entering
        pivots += 1


def simplex(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> LPResult:
    """Maximise ``c.x`` subject to ``A x <= b``, ``x >= 0``, exactly.

    Raises :class:`Infeasible` or :class:`Unbounded`. The returned dual
    vector ``y`` solves ``min b.y, A^T y >= c, y >= 0``.
    """
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    negated: list[int] = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [Fraction(0)] * m
        row[n + i] = Fraction(1)
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
            negated.append(i)
        rows.append(row)
        rhs.append(bi)
    k = len(negated)
    width = n + m + k
    for row in rows:
        row.extend([Fraction(0)] * k)
    basis = [n + i for i in range(m)]
    for j, i in enumerate(negated):
        rows[i][n + m + j] = Fraction(1)
        basis[i] = n + m + j

    pivots = 0
    if k:
        phase1 = [Fraction(0)] * (n + m) + [Fraction(-1)] * k
        pivots += _run(rows, rhs, basis, phase1, width)
        if any(rhs[i] > 0 for i, bv in enumerate(basis) if bv >= n + m):
            raise Infeasible("no point satisfies every row")
        # drive zero-level artificials out of the basis
        keep = []
        for i, bv in enumerate(basis):
            if bv < n + m:
                keep.append(i)
                continue
            col = next((j for j in range(n + m) if rows[i][j] != 0 and j not in basis), None)
            if col is None:
                continue  # redundant row
            _pivot(rows, rhs, i, col)
            basis[i] = col
            pivots += 1
            keep.append(i)
        rows = [rows[i][: n + m] for i in keep]
        rhs = [rhs[i] for i in keep]
        basis = [basis[i] for i in keep]

    obj = c + [Fraction(0)] * m
    pivots += _run(rows, rhs, basis, obj, n + m)

    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rhs[i]
    y = [
        sum((obj[bv] * row[n + i] for bv, row in zip(basis, rows) if obj[bv]), Fraction(0))
        for i in range(m)
    ]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(x=x, y=y, value=value, pivots=pivots)


def verify_certificate(
    c: Sequence[Fraction],
    A: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    x: Sequence[Fraction],
    y: Sequence[Fraction],
) -> list[str]:
    """Problems with the primal/dual pair; empty when ``x`` is provably optimal."""
    problems: list[str] = []
    if any(v < 0 for v in x):
        problems.append("primal has a negative entry")
    for i, row in enumerate(A):
        if sum((a * v for a, v in zip(row, x)), Fraction(0)) > b[i]:
            problems.append(f"primal violates row {i}")
    if any(v < 0 for v in y):
        problems.append("dual has a negative entry")
    for j in range(len(c)):
        if sum((A[i][j] * y[i] for i in range(len(A))), Fraction(0)) < c[j]:
            problems.append(f"dual violates column {j}")
    primal = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    dual = sum((bi * yi for bi, yi in zip(b, y)), Fraction(0))
    if primal != dual:
        problems.append(f"objectives differ: {primal} vs {dual}")
    return problems


# ------------------------------------------------------ share optimisation
@dataclass
class WeightSolution:
    """Optimal shares for the max-min-margin problem.

    ``margin`` is the smallest ``lhs - bound`` over all constraints at
    ``weights``; ``multipliers`` maps constraint names to their nonzero dual
    values, which certify that no other choice of shares does better.
    """

    weights: dict[str, Fraction]
    margin: Fraction | None
    binding: list[str] = field(default_factory=list)
    multipliers: dict[str, Fraction] = field(default_factory=dict)
    certified: bool = True
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.margin is None or self.margin > 0

    def to_json(self) -> dict[str, object]:
        from curvlab.report import _jsonable

        return {
            "feasible": self.feasible,
            "weights": _jsonable(self.weights),
            "margin": None if self.margin is None else _jsonable(self.margin),
            "binding": self.binding,
            "multipliers": _jsonable(self.multipliers),
            "certified": self.certified,
            "pivots": self.pivots,
        }


def _max_min_margin(
    constraints: Sequence[Constraint],
    fixed: Mapping[str, Fraction],
) -> WeightSolution:
    exprs = [c.expr.substitute(fixed) for c in constraints]
    names = sorted({w for e in exprs for w, _ in e.coeffs})
    n = len(names)
    # columns: shares, then t+ and t-; maximise t+ - t-
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for c, e in zip(constraints, exprs):
        terms = e.terms
        A.append([-terms.get(w, Fraction(0)) for w in names] + [Fraction(1), Fraction(-1)])
        b.append(e.const - c.bound)
    for j in range(n):
        row = [Fraction(0)] * (n + 2)
        row[j] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    cost = [Fraction(0)] * n + [Fraction(1), Fraction(-1)]
    res = simplex(cost, A, b)
    problems = verify_certificate(cost, A, b, res.x, res.y)
    if problems:
        raise CurvlabError("optimality certificate rejected: " + "; ".join(problems))
    weights = {**fixed, **dict(zip(names, res.x[:n]))}
    t = res.value
    binding = [c.name for c in constraints if c.margin(weights) == t]
    mult = {c.name: res.y[i] for i, c in enumerate(constraints) if res.y[i]}
    return WeightSolution(weights, t, binding, mult, certified=True, pivots=res.pivots)


def irreducible_violation(
    constraints: Sequence[Constraint],
    fixed: Mapping[str, Fraction] | None = None,
) -> list[Constraint]:
    """Deletion filter: a minimal subset that no choice of shares satisfies."""
    fixed = dict(fixed or {})
    core = list(constraints)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1 :]
        if trial and _max_min_margin(trial, fixed).margin <= 0:
            core = trial
        else:
            i += 1
    return core


def solve(
    scenarios: ScenarioSet,
    objective: str = "max-min-margin",
    fixed: Mapping[str, Fraction] | None = None,
) -> WeightSolution:
    """Shares in ``[0, 1]`` maximising the smallest margin.

    Shares named in ``fixed`` are held at their values. Raises
    :class:`Infeasible` when the best margin is not positive; its
    ``violated`` attribute names an irreducible conflicting subset.
    """
    if objective != "max-min-margin":
        raise ValueError(f"unsupported objective {objective!r}")
    fixed = {k: Fraction(v) for k, v in (fixed or {}).items()}
    if not scenarios.constraints:
        return WeightSolution(dict(fixed), None)
    sol = _max_min_margin(scenarios.constraints, fixed)
    if sol.margin <= 0:
        core = irreducible_violation(scenarios.constraints, fixed)
        names = [c.name for c in core]
        raise Infeasible(
            f"no shares satisfy every constraint (best margin {float(sol.margin):.6g}); "
            f"conflict: {'; '.join(names)}",
            names,
        )
    return sol
