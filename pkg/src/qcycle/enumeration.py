"""Exhaustive backtracking enumeration of q-cycle sets and solutions of small order.

The pruned engine fixes the dot rows first.  For a complete dot assignment,
law 1 pins each colon cell to the set of points whose dot row equals a
specific composite permutation, so the colon search runs over those candidate
classes while laws 2 and 3 are checked as soon as their operands exist.  The
naive oracle iterates every candidate table pair with no search pruning and
exists solely to certify the engine's counts.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Optional

from .core import (
    QCycleError,
    QCycleSet,
    SolutionMap,
    canonical_form,
    is_bijective_solution,
    is_permutation,
    qcs_to_solution,
    tables_ok,
    verify_qcycle,
    verify_solution,
)
from .perm import Perm, inverse

DEFAULT_CAP_GENERAL = 4
DEFAULT_CAP_CYCLE = 5


class CapExceeded(QCycleError):
    pass


@dataclass(frozen=True)
class EnumFilter:
    regular: bool = False
    nondegenerate: bool = False
    cycle_set_only: bool = False
    up_to_iso: bool = False

    @property
    def needs_regular_rows(self) -> bool:
        return self.regular or self.nondegenerate


@dataclass(frozen=True)
class WorkUnit:
    """Independent slice of the search tree: the first rows of dot are fixed."""

    n: int
    filt: EnumFilter
    prefix: tuple[Perm, ...]


@dataclass(frozen=True)
class EnumResult:
    order: int
    filter: EnumFilter
    structures: tuple
    count: int
    stats: dict


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[Perm, ...]:
    return tuple(permutations(range(n)))


def default_cap(filt: EnumFilter) -> int:
    return DEFAULT_CAP_CYCLE if filt.cycle_set_only else DEFAULT_CAP_GENERAL


def split_search(n: int, filt: EnumFilter, prefix_depth: int) -> list[WorkUnit]:
    """Disjoint work units fixing the first prefix_depth dot rows."""
    if not 0 <= prefix_depth <= n:
        raise ValueError(f"prefix_depth must be in [0, {n}]")
    return [
        WorkUnit(n, filt, prefix)
        for prefix in product(_perms(n), repeat=prefix_depth)
    ]


def _cycle_rows_ok(n: int, rows: list, upto: int) -> bool:
    """Law 1 with colon == dot on every instance whose rows are assigned."""
    rng = range(n)
    for x in range(upto + 1):
        rx = rows[x]
        for y in range(upto + 1):
            ry = rows[y]
            a, b = rx[y], ry[x]
            if a > upto or b > upto:
                continue
            ra, rb = rows[a], rows[b]
            for z in rng:
                if ra[rx[z]] != rb[ry[z]]:
                    return False
    return True


def _laws23_ok(n: int, dot: list, colon: list, upto: int) -> bool:
    """Laws 2 and 3 on every instance whose colon rows are assigned (rows <= upto)."""
    rng = range(n)
    for x in range(upto + 1):
        cx = colon[x]
        dx = dot[x]
        for y in range(upto + 1):
            cy = colon[y]
            c = cx[y]
            d = dot[y][x]
            if c <= upto and d <= upto:
                cc, cd = colon[c], colon[d]
                for z in rng:
                    if cc[cx[z]] != cd[cy[z]]:
                        return False
            a = dx[y]
            if a <= upto:
                ca = colon[a]
                db = dot[cy[x]]
                for z in rng:
                    if ca[dx[z]] != db[cy[z]]:
                        return False
    return True


def run_unit(unit: WorkUnit) -> tuple[list[tuple], dict]:
    """Enumerate all completions of a work unit; returns table pairs and stats."""
    n, filt = unit.n, unit.filt
    perms = _perms(n)
    stats = {"dot_nodes": 0, "colon_nodes": 0, "dot_pruned": 0, "colon_pruned": 0}
    found: list[tuple] = []
    rows: list = [None] * n

    def colon_phase(dot_rows: tuple) -> None:
        row_class: dict = {}
        for v, row in enumerate(dot_rows):
            row_class.setdefault(row, []).append(v)
        inv_rows = [inverse(row) for row in dot_rows]
        candidates: list[list] = [[None] * n for _ in range(n)]
        for y in range(n):
            ry_inv = inv_rows[y]
            for x in range(n):
                rx = dot_rows[x]
                outer = dot_rows[rx[y]]
                composite = tuple(outer[rx[ry_inv[i]]] for i in range(n))
                cls = row_class.get(composite)
                if cls is None:
                    stats["colon_pruned"] += 1
                    return
                candidates[y][x] = cls
        colon: list = [None] * n

        def fill_row(y: int, partial: list) -> None:
            if len(partial) == n:
                colon[y] = tuple(partial)
                if _laws23_ok(n, dot_rows, colon, y):
                    if y + 1 == n:
                        found.append((dot_rows, tuple(colon)))
                    else:
                        fill_row(y + 1, [])
                else:
                    stats["colon_pruned"] += 1
                colon[y] = None
                return
            used = set(partial) if filt.needs_regular_rows else ()
            for value in candidates[y][len(partial)]:
                if value in used:
                    continue
                stats["colon_nodes"] += 1
                partial.append(value)
                fill_row(y, partial)
                partial.pop()

        fill_row(0, [])

    def dot_phase(depth: int) -> None:
        if depth == n:
            dot_rows = tuple(rows)
            if filt.cycle_set_only:
                found.append((dot_rows, dot_rows))
            else:
                colon_phase(dot_rows)
            return
        for row in perms:
            stats["dot_nodes"] += 1
            rows[depth] = row
            if filt.cycle_set_only and not _cycle_rows_ok(n, rows, depth):
                stats["dot_pruned"] += 1
            else:
                dot_phase(depth + 1)
        rows[depth] = None

    # Replay the fixed prefix through the same checks so invalid prefixes
    # prune exactly like interior nodes.
    ok = True
    for depth, row in enumerate(unit.prefix):
        stats["dot_nodes"] += 1
        rows[depth] = row
        if filt.cycle_set_only and not _cycle_rows_ok(n, rows, depth):
            stats["dot_pruned"] += 1
            ok = False
            break
    if ok:
        if len(unit.prefix) == n:
            dot_rows = tuple(rows)
            if filt.cycle_set_only:
                found.append((dot_rows, dot_rows))
            else:
                colon_phase(dot_rows)
        else:
            dot_phase(len(unit.prefix))
    return found, stats


def _postfilter(n: int, tables: Iterable[tuple], filt: EnumFilter) -> list[tuple]:
    out = []
    for dot, colon in tables:
        if filt.needs_regular_rows and not all(is_permutation(r) for r in colon):
            continue
        if filt.nondegenerate:
            q = tuple(dot[i][i] for i in range(n))
            qp = tuple(colon[i][i] for i in range(n))
            if not (is_permutation(q) and is_permutation(qp)):
                continue
        out.append((dot, colon))
    return out


def enumerate_qcs(
    n: int,
    filt: EnumFilter = EnumFilter(),
    cap: Optional[int] = None,
    threads: int = 1,
) -> EnumResult:
    """All structures of order n matching the filter, deterministically ordered.

    The search always splits into one work unit per first dot row, so output
    and statistics are identical for any thread count.  Every emitted
    structure is re-checked by the full verifier.
    """
    if n < 1:
        raise ValueError("order must be positive")
    effective_cap = default_cap(filt) if cap is None else cap
    if n > effective_cap:
        raise CapExceeded(f"order {n} above cap {effective_cap}; raise the cap explicitly")
    units = split_search(n, filt, 1 if n > 1 else 0)
    stats = {"dot_nodes": 0, "colon_nodes": 0, "dot_pruned": 0, "colon_pruned": 0}
    tables: list[tuple] = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_unit, units))
    else:
        results = [run_unit(u) for u in units]
    for found, unit_stats in results:
        tables.extend(found)
        for key in stats:
            stats[key] += unit_stats[key]
    tables = _postfilter(n, tables, filt)
    tables.sort()
    stats["labeled"] = len(tables)
    for dot, colon in tables:
        report = verify_qcycle(dot, colon)
        if not report.ok:
            raise RuntimeError(
                f"enumeration emitted an invalid structure: {report.violations[0].describe()}"
            )
    structures = [QCycleSet(n, dot, colon) for dot, colon in tables]
    if filt.up_to_iso:
        seen = {}
        for x in structures:
            c = canonical_form(x)
            seen[(c.dot, c.colon)] = c
        structures = [seen[key] for key in sorted(seen)]
    return EnumResult(
        order=n,
        filter=filt,
        structures=tuple(structures),
        count=len(structures),
        stats=stats,
    )


def enumerate_solutions(
    n: int,
    require_bijective: bool = False,
    cap: Optional[int] = None,
    threads: int = 1,
) -> EnumResult:
    """All left non-degenerate solutions of order n, via the structure dictionary."""
    base = enumerate_qcs(n, EnumFilter(), cap=cap, threads=threads)
    solutions = [qcs_to_solution(x) for x in base.structures]
    if require_bijective:
        solutions = [s for s in solutions if is_bijective_solution(s)]
    solutions.sort(key=lambda s: s.r)
    stats = dict(base.stats)
    stats["require_bijective"] = require_bijective
    return EnumResult(
        order=n,
        filter=base.filter,
        structures=tuple(solutions),
        count=len(solutions),
        stats=stats,
    )


# ---------------------------------------------------------------------------
# Naive oracle
# ---------------------------------------------------------------------------


def naive_enumerate_qcs(n: int, filt: EnumFilter = EnumFilter()) -> EnumResult:
    """Reference enumeration with no search pruning.

    Iterates every dot table built from permutation rows crossed with every
    colon table (arbitrary rows, or permutation rows under the regular
    filter, or colon == dot for cycle sets) and keeps the pairs passing the
    structural laws.  Exponential; intended for n <= 3 in general and n <= 4
    for cycle sets.
    """
    if n < 1:
        raise ValueError("order must be positive")
    perms = _perms(n)
    if filt.cycle_set_only or filt.needs_regular_rows:
        colon_rows: tuple = perms
    else:
        colon_rows = tuple(product(range(n), repeat=n))
    tables = []
    checked = 0
    for dot in product(perms, repeat=n):
        if filt.cycle_set_only:
            checked += 1
            if tables_ok(n, dot, dot):
                tables.append((dot, dot))
            continue
        for colon in product(colon_rows, repeat=n):
            checked += 1
            if tables_ok(n, dot, colon):
                tables.append((dot, colon))
    tables = _postfilter(n, tables, filt)
    tables.sort()
    stats = {"checked": checked, "labeled": len(tables)}
    structures = [QCycleSet(n, dot, colon) for dot, colon in tables]
    if filt.up_to_iso:
        seen = {}
        for x in structures:
            c = canonical_form(x)
            seen[(c.dot, c.colon)] = c
        structures = [seen[key] for key in sorted(seen)]
    return EnumResult(
        order=n,
        filter=filt,
        structures=tuple(structures),
        count=len(structures),
        stats=stats,
    )


def naive_enumerate_bijective_solutions(n: int) -> list[SolutionMap]:
    """Direct oracle: braid-satisfying maps with bijective left rows and bijective r.

    Enumerates r cell by cell from all (left row, right value) choices with
    no use of the structure dictionary.
    """
    perms = _perms(n)
    out = []
    for lam in product(perms, repeat=n):
        for rho_values in product(product(range(n), repeat=n), repeat=n):
            r = tuple(
                tuple((lam[x][y], rho_values[x][y]) for y in range(n))
                for x in range(n)
            )
            s = SolutionMap(n, r)
            if not is_bijective_solution(s):
                continue
            if verify_solution(s).ok:
                out.append(s)
    out.sort(key=lambda s: s.r)
    return out
