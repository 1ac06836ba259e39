"""Finite q-cycle sets, set-theoretic solutions, verification, and conversion.

A q-cycle set is a carrier {0, ..., n-1} with two operation tables, written
x.y (dot) and x:y (colon), where every row of dot is a permutation and

    (x.y).(x.z) == (y:x).(y.z)        law 1
    (x:y):(x:z) == (y.x):(y:z)        law 2
    (x.y):(x.z) == (y:x).(y:z)        law 3

hold for all x, y, z.  Such structures encode exactly the left non-degenerate
set-theoretic solutions of the Yang-Baxter equation.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .perm import Perm, compose, cycle_type, identity, inverse, is_permutation

Table = tuple[tuple[int, ...], ...]
PairTable = tuple[tuple[tuple[int, int], ...], ...]


class QCycleError(Exception):
    """Base class for errors raised by this package."""


class DegreeMismatch(QCycleError):
    pass


class InvalidStructure(QCycleError):
    """Tables fail a structural law; carries the verification report if one exists."""

    def __init__(self, message: str, report: Optional["VerificationReport"] = None):
        super().__init__(message)
        self.report = report


class NotLeftNonDegenerate(QCycleError):
    """A solution row x |-> first components is not a bijection."""

    def __init__(self, x: int):
        super().__init__(f"left translation at point {x} is not a bijection")
        self.x = x


@dataclass(frozen=True)
class Violation:
    """One failed law instance: which law, at which tuple, and both evaluated sides."""

    law: str
    witness: tuple[int, ...]
    lhs: object = None
    rhs: object = None

    def describe(self) -> str:
        if self.lhs is None and self.rhs is None:
            return f"{self.law} at {self.witness}"
        if self.rhs is None:
            return f"{self.law} at {self.witness}: {self.lhs}"
        return f"{self.law} at {self.witness}: {self.lhs} != {self.rhs}"


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple[Violation, ...]

    @classmethod
    def from_violations(cls, violations) -> "VerificationReport":
        vs = tuple(violations)
        return cls(ok=not vs, violations=vs)


def as_table(rows: Sequence[Sequence[int]]) -> Table:
    """Normalize a square table of in-range integers; raise InvalidStructure otherwise."""
    n = len(rows)
    out = []
    for i, row in enumerate(rows):
        row = tuple(row)
        if len(row) != n:
            raise InvalidStructure(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise InvalidStructure(f"entry [{i}][{j}] = {v!r} not an integer in [0, {n})")
        out.append(row)
    return tuple(out)


def verify_qcycle(dot: Sequence[Sequence[int]], colon: Sequence[Sequence[int]]) -> VerificationReport:
    """Check dot-row bijectivity and laws 1-3 over all triples, reporting every failure."""
    dot = as_table(dot)
    colon = as_table(colon)
    if len(dot) != len(colon):
        raise DegreeMismatch(f"dot degree {len(dot)} != colon degree {len(colon)}")
    n = len(dot)
    violations = []
    for x in range(n):
        if not is_permutation(dot[x]):
            violations.append(Violation("row-bijectivity", (x,), lhs=dot[x]))
    rng = range(n)
    for x in rng:
        dx, cx = dot[x], colon[x]
        for y in rng:
            dy, cy = dot[y], colon[y]
            a = dx[y]      # x.y
            b = cy[x]      # y:x
            c = cx[y]      # x:y
            d = dy[x]      # y.x
            da, db = dot[a], dot[b]
            ca, cc, cd = colon[a], colon[c], colon[d]
            for z in rng:
                l1, r1 = da[dx[z]], db[dy[z]]
                if l1 != r1:
                    violations.append(Violation("axiom-1", (x, y, z), l1, r1))
                l2, r2 = cc[cx[z]], cd[cy[z]]
                if l2 != r2:
                    violations.append(Violation("axiom-2", (x, y, z), l2, r2))
                l3, r3 = ca[dx[z]], db[cy[z]]
                if l3 != r3:
                    violations.append(Violation("axiom-3", (x, y, z), l3, r3))
    return VerificationReport.from_violations(violations)


def tables_ok(n: int, dot: Table, colon: Table) -> bool:
    """Fast boolean version of verify_qcycle for tables whose dot rows are permutations."""
    rng = range(n)
    for x in rng:
        if not is_permutation(dot[x]):
            return False
    for x in rng:
        dx, cx = dot[x], colon[x]
        for y in rng:
            dy, cy = dot[y], colon[y]
            da, db = dot[dx[y]], dot[cy[x]]
            ca, cc, cd = colon[dx[y]], colon[cx[y]], colon[dy[x]]
            for z in rng:
                dxz, dyz = dx[z], dy[z]
                if ca[dxz] != db[cy[z]]:
                    return False
                if cc[cx[z]] != cd[cy[z]]:
                    return False
                if da[dxz] != db[dyz]:
                    return False
    return True


@dataclass(frozen=True)
class QCycleSet:
    """Carrier {0..n-1} with tables dot[x][y] = x.y and colon[x][y] = x:y.

    Construction validates shapes, entry ranges, and dot-row bijectivity.
    Laws 1-3 are validated by from_tables / verify_qcycle; code constructing
    instances directly is responsible for them holding.
    """

    n: int
    dot: Table
    colon: Table

    def __post_init__(self):
        dot = as_table(self.dot)
        colon = as_table(self.colon)
        if not (self.n == len(dot) == len(colon)):
            raise DegreeMismatch(
                f"n={self.n} but dot has {len(dot)} rows and colon {len(colon)}"
            )
        object.__setattr__(self, "dot", dot)
        object.__setattr__(self, "colon", colon)
        for x, row in enumerate(dot):
            if not is_permutation(row):
                raise InvalidStructure(f"dot row {x} is not a permutation: {row}")

    @classmethod
    def from_tables(cls, dot: Sequence[Sequence[int]], colon: Sequence[Sequence[int]]) -> "QCycleSet":
        """Build after running the full verifier; raise InvalidStructure with the report."""
        report = verify_qcycle(dot, colon)
        if not report.ok:
            raise InvalidStructure(
                f"tables violate {len(report.violations)} law instance(s); "
                f"first: {report.violations[0].describe()}",
                report,
            )
        return cls(len(dot), as_table(dot), as_table(colon))


@dataclass(frozen=True)
class SolutionMap:
    """Map r on ordered pairs of {0..n-1}: r[x][y] = (x', y').

    Only shapes and ranges are validated on construction, so maps violating
    the braid law or lacking bijective rows are representable; from_table
    additionally requires the braid law.
    """

    n: int
    r: PairTable

    def __post_init__(self):
        n = self.n
        if len(self.r) != n:
            raise DegreeMismatch(f"n={n} but r has {len(self.r)} rows")
        rows = []
        for x, row in enumerate(self.r):
            row = tuple(tuple(cell) for cell in row)
            if len(row) != n:
                raise InvalidStructure(f"r row {x} has length {len(row)}, expected {n}")
            for y, cell in enumerate(row):
                if len(cell) != 2 or not all(
                    isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n for v in cell
                ):
                    raise InvalidStructure(f"r[{x}][{y}] = {cell!r} is not a pair over [0, {n})")
            rows.append(row)
        object.__setattr__(self, "r", tuple(rows))

    @classmethod
    def from_table(cls, r: Sequence[Sequence[Sequence[int]]]) -> "SolutionMap":
        s = cls(len(r), tuple(tuple(tuple(c) for c in row) for row in r))
        report = verify_solution(s)
        if not report.ok:
            raise InvalidStructure(
                f"map violates the braid law at {report.violations[0].witness}", report
            )
        return s


def verify_solution(s: SolutionMap) -> VerificationReport:
    """Check the braid law r1 r2 r1 == r2 r1 r2 on every triple."""
    n, r = s.n, s.r

    def r1(t):
        a, b = r[t[0]][t[1]]
        return (a, b, t[2])

    def r2(t):
        a, b = r[t[1]][t[2]]
        return (t[0], a, b)

    violations = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                t = (x, y, z)
                lhs = r1(r2(r1(t)))
                rhs = r2(r1(r2(t)))
                if lhs != rhs:
                    violations.append(Violation("braid", t, lhs, rhs))
    return VerificationReport.from_violations(violations)


def left_rows(s: SolutionMap) -> tuple[tuple[int, ...], ...]:
    """Row x of first components: y |-> first(r(x, y))."""
    return tuple(tuple(cell[0] for cell in row) for row in s.r)


def right_columns(s: SolutionMap) -> tuple[tuple[int, ...], ...]:
    """Column y of second components: x |-> second(r(x, y))."""
    n = s.n
    return tuple(tuple(s.r[x][y][1] for x in range(n)) for y in range(n))


def is_left_nondeg(s: SolutionMap) -> bool:
    return all(is_permutation(row) for row in left_rows(s))


def is_right_nondeg(s: SolutionMap) -> bool:
    return all(is_permutation(col) for col in right_columns(s))


def is_bijective_solution(s: SolutionMap) -> bool:
    """True iff r is injective (hence bijective) as a map on n*n points."""
    seen = set()
    for row in s.r:
        seen.update(row)
    return len(seen) == s.n * s.n


def qcs_to_solution(x: QCycleSet) -> SolutionMap:
    """Associated solution r(a, b) = (c, c:a) with c the dot-row preimage of b under a."""
    n = x.n
    dot_inv = [inverse(row) for row in x.dot]
    r = tuple(
        tuple((dot_inv[a][b], x.colon[dot_inv[a][b]][a]) for b in range(n))
        for a in range(n)
    )
    return SolutionMap(n, r)


def solution_to_qcs(s: SolutionMap) -> QCycleSet:
    """Inverse dictionary: dot from inverted left rows, colon from right components.

    Requires every left row to be a bijection; raises NotLeftNonDegenerate
    naming the first bad row.  The result satisfies laws 1-3 whenever s
    satisfies the braid law.
    """
    n = s.n
    lam = left_rows(s)
    for a, row in enumerate(lam):
        if not is_permutation(row):
            raise NotLeftNonDegenerate(a)
    lam_inv = [inverse(row) for row in lam]
    dot = tuple(tuple(lam_inv[a][b] for b in range(n)) for a in range(n))
    colon = tuple(tuple(s.r[b][lam_inv[b][a]][1] for b in range(n)) for a in range(n))
    return QCycleSet(n, dot, colon)


def squaring_maps(x: QCycleSet) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The diagonal maps (x.x for each x, x:x for each x)."""
    q = tuple(x.dot[i][i] for i in range(x.n))
    qp = tuple(x.colon[i][i] for i in range(x.n))
    return q, qp


def is_regular(x: QCycleSet) -> bool:
    """True iff every colon row is a permutation."""
    return all(is_permutation(row) for row in x.colon)


def is_nondegenerate(x: QCycleSet) -> bool:
    """Regular with both squaring maps bijective."""
    if not is_regular(x):
        return False
    q, qp = squaring_maps(x)
    return is_permutation(q) and is_permutation(qp)


def is_cycle_set(x: QCycleSet) -> bool:
    return x.dot == x.colon


def flat_map(s: SolutionMap) -> tuple[int, ...]:
    """r as a single map on n*n indices, pair (x, y) encoded as x*n + y."""
    n = s.n
    return tuple(a * n + b for row in s.r for (a, b) in row)


def solution_power_eq(s: SolutionMap, a: int, b: int) -> bool:
    """True iff the a-th and b-th iterates of r agree as maps on pairs (0th = identity)."""
    if a < 0 or b < 0:
        raise ValueError("powers must be non-negative")
    m = flat_map(s)

    def power(k):
        cur = tuple(range(len(m)))
        for _ in range(k):
            cur = tuple(m[v] for v in cur)
        return cur

    return power(a) == power(b)


def _point_profiles(x: QCycleSet) -> list[tuple]:
    """Per-point relabeling invariants used to prune isomorphism search."""
    n = x.n
    q, qp = squaring_maps(x)
    dot_occ = Counter(v for row in x.dot for v in row)
    colon_occ = Counter(v for row in x.colon for v in row)
    profiles = []
    for p in range(n):
        crow = x.colon[p]
        if is_permutation(crow):
            colon_sig: tuple = ("perm", cycle_type(crow))
        else:
            colon_sig = ("map", tuple(sorted(Counter(crow).values())))
        profiles.append(
            (
                cycle_type(x.dot[p]),
                colon_sig,
                q[p] == p,
                qp[p] == p,
                dot_occ[p],
                colon_occ[p],
            )
        )
    return profiles


def are_isomorphic(x: QCycleSet, y: QCycleSet) -> Optional[Perm]:
    """Relabeling carrying both tables of x onto those of y, or None.

    Backtracking over point images restricted to equal-invariant classes,
    with forced propagation through both operation tables.
    """
    if x.n != y.n:
        return None
    n = x.n
    px = _point_profiles(x)
    py = _point_profiles(y)
    if sorted(px) != sorted(py):
        return None
    candidates = [tuple(b for b in range(n) if py[b] == px[a]) for a in range(n)]
    order = sorted(range(n), key=lambda a: len(candidates[a]))

    def extend(mapping, used, a, b):
        """Set mapping[a] = b and propagate forced images; None on contradiction."""
        mapping = mapping.copy()
        used = used.copy()
        stack = [(a, b)]
        while stack:
            p, q = stack.pop()
            cur = mapping[p]
            if cur is not None:
                if cur != q:
                    return None
                continue
            if used[q] or py[q] != px[p]:
                return None
            mapping[p] = q
            used[q] = True
            assigned = [i for i in range(n) if mapping[i] is not None]
            for u in assigned:
                for (s, t) in ((u, p), (p, u)):
                    ms, mt = mapping[s], mapping[t]
                    stack.append((x.dot[s][t], y.dot[ms][mt]))
                    stack.append((x.colon[s][t], y.colon[ms][mt]))
        return mapping, used

    def search(mapping, used, depth):
        while depth < n and mapping[order[depth]] is not None:
            depth += 1
        if depth == n:
            return mapping
        a = order[depth]
        for b in candidates[a]:
            if used[b]:
                continue
            ext = extend(mapping, used, a, b)
            if ext is None:
                continue
            found = search(ext[0], ext[1], depth + 1)
            if found is not None:
                return found
        return None

    result = search([None] * n, [False] * n, 0)
    return tuple(result) if result is not None else None


def relabel(x: QCycleSet, p: Perm) -> QCycleSet:
    """Image of x under the relabeling p (an isomorphic copy)."""
    n = x.n
    pinv = inverse(p)
    dot = tuple(tuple(p[x.dot[pinv[i]][pinv[j]]] for j in range(n)) for i in range(n))
    colon = tuple(tuple(p[x.colon[pinv[i]][pinv[j]]] for j in range(n)) for i in range(n))
    return QCycleSet(n, dot, colon)


def _table_key(x: QCycleSet) -> tuple:
    return (x.dot, x.colon)


def canonical_form(x: QCycleSet) -> QCycleSet:
    """Lexicographically least relabeling of (dot, colon); equal iff isomorphic."""
    best = None
    for p in permutations(range(x.n)):
        key = _table_key(relabel(x, p))
        if best is None or key < best:
            best = key
    return QCycleSet(x.n, best[0], best[1])


# ---------------------------------------------------------------------------
# JSON wire formats.
#
# q-cycle set: {"n": int, "dot": [[int]], "colon": [[int]]}
# solution:    {"n": int, "r": [[[int, int]]]}
#
# Canonical serialization keeps the keys in that order with no whitespace.
# ---------------------------------------------------------------------------


def qcs_to_obj(x: QCycleSet) -> dict:
    return {"n": x.n, "dot": [list(r) for r in x.dot], "colon": [list(r) for r in x.colon]}


def solution_to_obj(s: SolutionMap) -> dict:
    return {"n": s.n, "r": [[list(cell) for cell in row] for row in s.r]}


def dumps_canonical(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def load_qcs_tables(obj) -> tuple[Table, Table]:
    """Shape-checked (dot, colon) tables from a JSON object; laws not yet checked."""
    if not isinstance(obj, dict) or "dot" not in obj or "colon" not in obj:
        raise InvalidStructure("expected an object with 'dot' and 'colon' keys")
    dot = as_table(obj["dot"])
    colon = as_table(obj["colon"])
    if len(dot) != len(colon):
        raise DegreeMismatch(f"dot degree {len(dot)} != colon degree {len(colon)}")
    if "n" in obj and obj["n"] != len(dot):
        raise InvalidStructure(f"declared n={obj['n']} but tables have degree {len(dot)}")
    return dot, colon


def qcs_from_obj(obj) -> QCycleSet:
    dot, colon = load_qcs_tables(obj)
    return QCycleSet.from_tables(dot, colon)


def load_solution_table(obj) -> SolutionMap:
    """Shape-checked SolutionMap from a JSON object; braid law not yet checked."""
    if not isinstance(obj, dict) or "r" not in obj:
        raise InvalidStructure("expected an object with an 'r' key")
    r = obj["r"]
    n = len(r)
    if "n" in obj and obj["n"] != n:
        raise InvalidStructure(f"declared n={obj['n']} but r has degree {n}")
    return SolutionMap(n, tuple(tuple(tuple(c) for c in row) for row in r))


def solution_from_obj(obj) -> SolutionMap:
    s = load_solution_table(obj)
    report = verify_solution(s)
    if not report.ok:
        raise InvalidStructure("map violates the braid law", report)
    return s
