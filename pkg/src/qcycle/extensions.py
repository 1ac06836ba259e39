"""Dynamical pairs and extensions, covering maps, congruences, simplicity,
and semidirect products of q-cycle sets."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from math import prod
from typing import Sequence

from .analysis import GenPermGroup, permutation_orbits
from .core import (
    InvalidStructure,
    QCycleError,
    QCycleSet,
    Table,
    VerificationReport,
    Violation,
    as_table,
    is_permutation,
    tables_ok,
)
from .perm import Perm, compose, identity, inverse


class InvalidPair(QCycleError):
    pass


class NotCycleSet(QCycleError):
    pass


class NotAGroup(QCycleError):
    pass


class NotEndomorphism(QCycleError):
    pass


class NotLeftQuasiNormal(QCycleError):
    """Table fails associativity or xyz == xzyz; carries the witness triple."""

    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


class InvalidCovering(QCycleError):
    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message)
        self.report = report


class NotAutomorphism(QCycleError):
    pass


class CompatibilityFailed(QCycleError):
    """Twisting maps fail their composition constraint; carries the pair (x, y)."""

    def __init__(self, witness):
        super().__init__(f"twist compatibility fails at pair {witness}")
        self.witness = witness


# ---------------------------------------------------------------------------
# Dynamical pairs and extensions
# ---------------------------------------------------------------------------

AlphaTable = tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]


@dataclass(frozen=True)
class DynamicalPair:
    """Fiber data over a base structure.

    alpha[x][y][s] is a permutation of the fiber {0..m-1} (the map t |-> value)
    and alpha_prime[x][y][s] an arbitrary self-map of the fiber.  The three
    compatibility equations are checked by verify_dynamical_pair, not here.
    """

    base: QCycleSet
    m: int
    alpha: AlphaTable
    alpha_prime: AlphaTable

    def __post_init__(self):
        n, m = self.base.n, self.m
        if m < 1:
            raise InvalidPair(f"fiber size must be positive, got {m}")
        for name, table, need_perm in (("alpha", self.alpha, True), ("alpha_prime", self.alpha_prime, False)):
            if len(table) != n:
                raise InvalidPair(f"{name} must have {n} rows")
            rows = []
            for x, row in enumerate(table):
                if len(row) != n:
                    raise InvalidPair(f"{name}[{x}] must have {n} entries")
                cells = []
                for y, fibers in enumerate(row):
                    if len(fibers) != m:
                        raise InvalidPair(f"{name}[{x}][{y}] must have {m} fiber maps")
                    maps = []
                    for s, images in enumerate(fibers):
                        images = tuple(images)
                        if len(images) != m or not all(
                            isinstance(v, int) and not isinstance(v, bool) and 0 <= v < m
                            for v in images
                        ):
                            raise InvalidPair(
                                f"{name}[{x}][{y}][{s}] = {images!r} is not a map on [0, {m})"
                            )
                        if need_perm and not is_permutation(images):
                            raise InvalidPair(
                                f"alpha[{x}][{y}][{s}] = {images!r} is not a permutation"
                            )
                        maps.append(images)
                    cells.append(tuple(maps))
                rows.append(tuple(cells))
            object.__setattr__(self, name, tuple(rows))


def _pair_equations(d: DynamicalPair, collect: bool):
    """Shared walker for the three compatibility equations.

    With collect=False returns a bool at the first failure; otherwise a list
    of violations, one per failing (x, y, z, s, t, u) and equation.
    """
    x_tbl = d.base
    n, m = x_tbl.n, d.m
    dot, colon = x_tbl.dot, x_tbl.colon
    a, b = d.alpha, d.alpha_prime
    violations: list[Violation] = []
    rng_n, rng_m = range(n), range(m)
    for x in rng_n:
        for y in rng_n:
            axy, bxy = a[x][y], b[x][y]
            for z in rng_n:
                axz, bxz = a[x][z], b[x][z]
                ayz, byz = a[y][z], b[y][z]
                ayx, byx = a[y][x], b[y][x]
                eq1_out = a[dot[x][y]][dot[x][z]]
                eq1_rhs_out = a[colon[y][x]][dot[y][z]]
                eq2_out = b[colon[x][y]][colon[x][z]]
                eq2_rhs_out = b[dot[y][x]][colon[y][z]]
                eq3_out = b[dot[x][y]][dot[x][z]]
                eq3_rhs_out = a[colon[y][x]][colon[y][z]]
                for s in rng_m:
                    axy_s, bxy_s = axy[s], bxy[s]
                    axz_s, bxz_s = axz[s], bxz[s]
                    for t in rng_m:
                        ast, bst = axy_s[t], bxy_s[t]
                        ayx_t, byx_t = ayx[t], byx[t]
                        ayz_t, byz_t = ayz[t], byz[t]
                        for u in rng_m:
                            l1 = eq1_out[ast][axz_s[u]]
                            r1 = eq1_rhs_out[byx_t[s]][ayz_t[u]]
                            if l1 != r1:
                                if not collect:
                                    return False
                                violations.append(Violation("dyn-1", (x, y, z, s, t, u), l1, r1))
                            l2 = eq2_out[bst][bxz_s[u]]
                            r2 = eq2_rhs_out[ayx_t[s]][byz_t[u]]
                            if l2 != r2:
                                if not collect:
                                    return False
                                violations.append(Violation("dyn-2", (x, y, z, s, t, u), l2, r2))
                            l3 = eq3_out[ast][axz_s[u]]
                            r3 = eq3_rhs_out[byx_t[s]][byz_t[u]]
                            if l3 != r3:
                                if not collect:
                                    return False
                                violations.append(Violation("dyn-3", (x, y, z, s, t, u), l3, r3))
    if not collect:
        return True
    return violations


def pair_ok(d: DynamicalPair) -> bool:
    """Fast check of the three compatibility equations with early exit."""
    return bool(_pair_equations(d, collect=False))


def verify_dynamical_pair(d: DynamicalPair) -> VerificationReport:
    """Check all three equations over every (x, y, z, s, t, u), reporting each failure."""
    return VerificationReport.from_violations(_pair_equations(d, collect=True))


def extension_tables(d: DynamicalPair) -> tuple[Table, Table]:
    """Product tables on pairs flattened as x*m + s, regardless of pair validity."""
    n, m = d.base.n, d.m
    dot_b, colon_b = d.base.dot, d.base.colon
    size = n * m
    dot = [[0] * size for _ in range(size)]
    colon = [[0] * size for _ in range(size)]
    for x in range(n):
        for s in range(m):
            p = x * m + s
            for y in range(n):
                a_fiber = d.alpha[x][y][s]
                b_fiber = d.alpha_prime[x][y][s]
                dot_base = dot_b[x][y] * m
                colon_base = colon_b[x][y] * m
                for t in range(m):
                    q = y * m + t
                    dot[p][q] = dot_base + a_fiber[t]
                    colon[p][q] = colon_base + b_fiber[t]
    return tuple(map(tuple, dot)), tuple(map(tuple, colon))


def build_extension(d: DynamicalPair) -> QCycleSet:
    """Extension of the base by the fiber; raises InvalidPair if the equations fail."""
    if not pair_ok(d):
        raise InvalidPair("compatibility equations do not hold")
    dot, colon = extension_tables(d)
    return QCycleSet(d.base.n * d.m, dot, colon)


def extension_equivalence(base: QCycleSet, alpha, alpha_prime) -> bool:
    """Whether the equations hold iff the product tables satisfy the structural laws.

    Both sides are computed independently; a False return falsifies the
    equivalence underpinning build_extension.
    """
    m = len(alpha[0][0])
    d = DynamicalPair(base, m, alpha, alpha_prime)
    equations_hold = pair_ok(d)
    dot, colon = extension_tables(d)
    laws_hold = tables_ok(base.n * d.m, dot, colon)
    return equations_hold == laws_hold


def trivial_pair(base: QCycleSet, m: int) -> DynamicalPair:
    """Pair whose fiber maps all project onto the second coordinate."""
    ident = identity(m)
    fibers = tuple(tuple(tuple(ident for _ in range(m)) for _ in range(base.n)) for _ in range(base.n))
    return DynamicalPair(base, m, fibers, fibers)


def random_pair_tables(base: QCycleSet, m: int, rng: random.Random):
    """Seeded random (alpha, alpha_prime) tables: permutation fibers and arbitrary fibers."""
    n = base.n

    def rand_perm():
        images = list(range(m))
        rng.shuffle(images)
        return tuple(images)

    alpha = tuple(
        tuple(tuple(rand_perm() for _ in range(m)) for _ in range(n)) for _ in range(n)
    )
    alpha_prime = tuple(
        tuple(
            tuple(tuple(rng.randrange(m) for _ in range(m)) for _ in range(m))
            for _ in range(n)
        )
        for _ in range(n)
    )
    return alpha, alpha_prime


# ---------------------------------------------------------------------------
# Concrete extension families
# ---------------------------------------------------------------------------


def _normalize_group_element(value, moduli: Sequence[int]) -> tuple[int, ...]:
    if isinstance(value, int):
        if len(moduli) != 1:
            raise ValueError("integer element only allowed for a single modulus")
        value = (value,)
    value = tuple(value)
    if len(value) != len(moduli):
        raise ValueError(f"element {value} does not match moduli {tuple(moduli)}")
    return tuple(v % m for v, m in zip(value, moduli))


def constant_cocycle_pair(
    x: QCycleSet,
    moduli: Sequence[int],
    a,
    b,
    a_prime,
    b_prime,
) -> DynamicalPair:
    """Pair over a cycle set: fibers translate by one of two constants of a
    finite abelian group, chosen by whether the base points coincide."""
    if x.dot != x.colon:
        raise NotCycleSet("base must have identical dot and colon tables")
    moduli = tuple(int(m) for m in moduli)
    if not moduli or any(m < 1 for m in moduli):
        raise ValueError(f"moduli must be positive, got {moduli}")
    m = prod(moduli)
    elems = list(product(*[range(k) for k in moduli]))
    index = {e: i for i, e in enumerate(elems)}
    a = _normalize_group_element(a, moduli)
    b = _normalize_group_element(b, moduli)
    a_prime = _normalize_group_element(a_prime, moduli)
    b_prime = _normalize_group_element(b_prime, moduli)

    def shift(const):
        return tuple(
            index[tuple((t + c) % k for t, c, k in zip(elems[ti], const, moduli))]
            for ti in range(m)
        )

    def table(diag, off):
        on_diag, off_diag = shift(diag), shift(off)
        return tuple(
            tuple(
                tuple(on_diag if px == py else off_diag for _ in range(m))
                for py in range(x.n)
            )
            for px in range(x.n)
        )

    return DynamicalPair(x, m, table(a, b), table(a_prime, b_prime))


def z_example_witness() -> dict:
    """Pointwise degeneracy and retraction witnesses for the integer cycle set
    x.y = y - min(0, x) extended by the Klein four-group.

    Evaluates the closed-form product operation at a handful of points; no
    finite table exists because the operation is not closed on intervals.
    """

    def op(p, q):
        i, a, c = p
        j, e, f = q
        base = j - min(0, i)
        if i == j:
            fiber = (e % 2, (f - (a - e)) % 2)
        else:
            fiber = ((e - c) % 2, f % 2)
        return (base, fiber[0], fiber[1])

    p_minus2 = (-2, 0, 0)
    p_minus1 = (-1, 0, 0)
    sample = (5, 0, 0)
    square_m2 = op(p_minus2, p_minus2)
    square_m1 = op(p_minus1, p_minus1)
    translate_m2 = op(p_minus2, sample)
    translate_m1 = op(p_minus1, sample)
    return {
        "square_at_minus_two": square_m2,
        "square_at_minus_one": square_m1,
        "squares_collide": square_m2 == square_m1,
        "sample_point": sample,
        "translate_minus_two": translate_m2,
        "translate_minus_one": translate_m1,
        "translations_differ": translate_m2 != translate_m1,
    }


def _group_data(table: Table) -> tuple[int, list[int]]:
    """Identity element and inverse list of a group table; NotAGroup otherwise."""
    table = as_table(table)
    n = len(table)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table[table[x][y]][z] != table[x][table[y][z]]:
                    raise NotAGroup(f"not associative at ({x}, {y}, {z})")
    ident = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NotAGroup("no identity element")
    inv = [None] * n
    for x in range(n):
        for y in range(n):
            if table[x][y] == ident and table[y][x] == ident:
                inv[x] = y
                break
        if inv[x] is None:
            raise NotAGroup(f"element {x} has no inverse")
    return ident, inv


def _check_endomorphism(table: Table, endo: Sequence[int]) -> tuple[int, ...]:
    n = len(table)
    endo = tuple(endo)
    if len(endo) != n or not all(0 <= v < n for v in endo):
        raise NotEndomorphism(f"map {endo} is not a self-map of [0, {n})")
    for x in range(n):
        for y in range(n):
            if endo[table[x][y]] != table[endo[x]][endo[y]]:
                raise NotEndomorphism(f"map fails multiplicativity at ({x}, {y})")
    return endo


def semibrace_base(group_table: Sequence[Sequence[int]], endo: Sequence[int]) -> QCycleSet:
    """q-cycle set on a group: x.y = inv(x)*y*f(x) and x:y = f(y) for an endomorphism f."""
    table = as_table(group_table)
    _, inv = _group_data(table)
    endo = _check_endomorphism(table, endo)
    n = len(table)
    dot = tuple(
        tuple(table[table[inv[x]][y]][endo[x]] for y in range(n)) for x in range(n)
    )
    colon = tuple(tuple(endo[y] for y in range(n)) for x in range(n))
    return QCycleSet(n, dot, colon)


def semibrace_pair(group_table: Sequence[Sequence[int]], endo: Sequence[int]) -> DynamicalPair:
    """Pair over the semibrace-style base with fiber the group itself:
    alpha translates by inv(x) on the left, alpha_prime applies f."""
    table = as_table(group_table)
    _, inv = _group_data(table)
    endo = _check_endomorphism(table, endo)
    base = semibrace_base(table, endo)
    n = len(table)
    alpha = tuple(
        tuple(tuple(tuple(table[inv[x]][t] for t in range(n)) for _ in range(n)) for _ in range(n))
        for x in range(n)
    )
    f_row = tuple(endo[t] for t in range(n))
    alpha_prime = tuple(
        tuple(tuple(f_row for _ in range(n)) for _ in range(n)) for _ in range(n)
    )
    return DynamicalPair(base, n, alpha, alpha_prime)


def _check_left_quasi_normal(table: Table) -> None:
    n = len(table)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table[table[x][y]][z] != table[x][table[y][z]]:
                    raise NotLeftQuasiNormal(
                        f"not associative at ({x}, {y}, {z})", (x, y, z)
                    )
    for x in range(n):
        for y in range(n):
            for z in range(n):
                xyz = table[table[x][y]][z]
                xzyz = table[table[table[x][z]][y]][z]
                if xyz != xzyz:
                    raise NotLeftQuasiNormal(
                        f"xyz != xzyz at ({x}, {y}, {z})", (x, y, z)
                    )


def quasinormal_base(sg_table: Sequence[Sequence[int]]) -> QCycleSet:
    """q-cycle set on a left quasi-normal semigroup: x.y = y and x:y = y*x."""
    table = as_table(sg_table)
    _check_left_quasi_normal(table)
    n = len(table)
    dot = tuple(tuple(range(n)) for _ in range(n))
    colon = tuple(tuple(table[y][x] for y in range(n)) for x in range(n))
    return QCycleSet(n, dot, colon)


def quasinormal_pair(sg_table: Sequence[Sequence[int]]) -> DynamicalPair:
    """Pair over the quasi-normal base with fiber the semigroup itself:
    alpha projects, alpha_prime multiplies by x on the right."""
    table = as_table(sg_table)
    base = quasinormal_base(table)
    n = len(table)
    ident = identity(n)
    alpha = tuple(tuple(tuple(ident for _ in range(n)) for _ in range(n)) for _ in range(n))
    alpha_prime = tuple(
        tuple(tuple(tuple(table[t][x] for t in range(n)) for _ in range(n)) for _ in range(n))
        for x in range(n)
    )
    return DynamicalPair(base, n, alpha, alpha_prime)


# ---------------------------------------------------------------------------
# Coverings, congruences, simplicity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoveringMap:
    """Point map between two structures, to be checked as a uniform-fiber quotient."""

    source: QCycleSet
    target: QCycleSet
    p: tuple[int, ...]

    def __post_init__(self):
        p = tuple(self.p)
        if len(p) != self.source.n:
            raise InvalidStructure(f"map must have {self.source.n} entries, got {len(p)}")
        if not all(isinstance(v, int) and 0 <= v < self.target.n for v in p):
            raise InvalidStructure("map entries out of target range")
        object.__setattr__(self, "p", p)


def verify_covering(c: CoveringMap) -> VerificationReport:
    """Check homomorphism for both operations, surjectivity, and uniform fibers."""
    src, tgt, p = c.source, c.target, c.p
    violations = []
    for a in range(src.n):
        for b in range(src.n):
            if p[src.dot[a][b]] != tgt.dot[p[a]][p[b]]:
                violations.append(
                    Violation("hom-dot", (a, b), p[src.dot[a][b]], tgt.dot[p[a]][p[b]])
                )
            if p[src.colon[a][b]] != tgt.colon[p[a]][p[b]]:
                violations.append(
                    Violation("hom-colon", (a, b), p[src.colon[a][b]], tgt.colon[p[a]][p[b]])
                )
    fibers = {t: [] for t in range(tgt.n)}
    for a, t in enumerate(p):
        fibers[t].append(a)
    for t, fiber in fibers.items():
        if not fiber:
            violations.append(Violation("surjective", (t,)))
    sizes = {t: len(f) for t, f in fibers.items() if f}
    if len(set(sizes.values())) > 1:
        small = min(sizes, key=lambda t: sizes[t])
        large = max(sizes, key=lambda t: sizes[t])
        violations.append(
            Violation("uniform-fibers", (small, large), sizes[small], sizes[large])
        )
    return VerificationReport.from_violations(violations)


@dataclass(frozen=True)
class CongruencePartition:
    """Partition compatible with both operations, with a q-cycle quotient."""

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]


def congruence_from_blocks(x: QCycleSet, blocks: Sequence[Sequence[int]]) -> CongruencePartition:
    """Validate compatibility plus quotient dot-row bijectivity and build the partition."""
    n = x.n
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    blocks = tuple(sorted(blocks))
    block_of = [None] * n
    for i, block in enumerate(blocks):
        for v in block:
            if not 0 <= v < n or block_of[v] is not None:
                raise InvalidStructure(f"blocks do not partition the carrier at point {v}")
            block_of[v] = i
    if any(b is None for b in block_of):
        raise InvalidStructure("blocks do not cover the carrier")
    for a in range(n):
        for a2 in range(n):
            if block_of[a] != block_of[a2]:
                continue
            for b in range(n):
                for b2 in range(n):
                    if block_of[b] != block_of[b2]:
                        continue
                    if block_of[x.dot[a][b]] != block_of[x.dot[a2][b2]]:
                        raise InvalidStructure(
                            f"partition not compatible with dot at ({a},{b}) vs ({a2},{b2})"
                        )
                    if block_of[x.colon[a][b]] != block_of[x.colon[a2][b2]]:
                        raise InvalidStructure(
                            f"partition not compatible with colon at ({a},{b}) vs ({a2},{b2})"
                        )
    part = CongruencePartition(blocks, tuple(block_of))
    quotient = congruence_quotient(x, part)
    for row in quotient.dot:
        if not is_permutation(row):
            raise InvalidStructure("quotient dot rows are not bijective")
    return part


def congruence_quotient(x: QCycleSet, part: CongruencePartition) -> QCycleSet:
    """Structure induced on blocks via representatives."""
    reps = [b[0] for b in part.blocks]
    cls = part.block_of
    k = len(reps)
    dot = tuple(tuple(cls[x.dot[a][b]] for b in reps) for a in reps)
    colon = tuple(tuple(cls[x.colon[a][b]] for b in reps) for a in reps)
    return QCycleSet(k, dot, colon)


def kernel_partition(c: CoveringMap) -> CongruencePartition:
    """Fibers of a verified covering as a congruence; InvalidCovering otherwise."""
    report = verify_covering(c)
    if not report.ok:
        raise InvalidCovering(
            f"not a covering: {report.violations[0].describe()}", report
        )
    fibers: dict[int, list[int]] = {}
    for a, t in enumerate(c.p):
        fibers.setdefault(t, []).append(a)
    return congruence_from_blocks(c.source, list(fibers.values()))


@dataclass(frozen=True)
class FactoredCovering:
    """Result of factoring a covering: fiber size, the pair, and the isomorphism."""

    fiber_size: int
    pair: DynamicalPair
    iso: tuple[int, ...]


def factor_covering(c: CoveringMap) -> FactoredCovering:
    """Rebuild the source of a covering as an extension of its target.

    Fiber points are matched to {0..m-1} in increasing order.  The returned
    iso maps each source point y to the flattened extension index
    p(y)*m + position of y in its fiber, and carries both tables.
    """
    report = verify_covering(c)
    if not report.ok:
        raise InvalidCovering(
            f"not a covering: {report.violations[0].describe()}", report
        )
    src, tgt, p = c.source, c.target, c.p
    fibers = {t: [] for t in range(tgt.n)}
    for a, t in enumerate(p):
        fibers[t].append(a)
    for fiber in fibers.values():
        fiber.sort()
    m = len(fibers[0])
    pos = {}
    for fiber in fibers.values():
        for i, a in enumerate(fiber):
            pos[a] = i
    n = tgt.n
    alpha = tuple(
        tuple(
            tuple(
                tuple(pos[src.dot[fibers[x][s]][fibers[z][t]]] for t in range(m))
                for s in range(m)
            )
            for z in range(n)
        )
        for x in range(n)
    )
    alpha_prime = tuple(
        tuple(
            tuple(
                tuple(pos[src.colon[fibers[x][s]][fibers[z][t]]] for t in range(m))
                for s in range(m)
            )
            for z in range(n)
        )
        for x in range(n)
    )
    pair = DynamicalPair(tgt, m, alpha, alpha_prime)
    iso = tuple(p[y] * m + pos[y] for y in range(src.n))
    return FactoredCovering(m, pair, iso)


def _principal_congruence(x: QCycleSet, a: int, b: int) -> tuple[int, ...]:
    """Smallest compatible partition merging a and b, as a normalized block index map."""
    n = x.n
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    queue = [(a, b)]
    while queue:
        u, v = queue.pop()
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        parent[ru] = rv
        for w in range(n):
            queue.append((x.dot[u][w], x.dot[v][w]))
            queue.append((x.dot[w][u], x.dot[w][v]))
            queue.append((x.colon[u][w], x.colon[v][w]))
            queue.append((x.colon[w][u], x.colon[w][v]))
    return _normalize_block_map([find(v) for v in range(n)])


def _normalize_block_map(raw: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for v in raw:
        if v not in seen:
            seen[v] = len(seen)
        out.append(seen[v])
    return tuple(out)


def _join_block_maps(n: int, p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Join of two congruences: transitive closure of their union."""
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    reps_p: dict[int, int] = {}
    reps_q: dict[int, int] = {}
    for v in range(n):
        if p[v] in reps_p:
            union(v, reps_p[p[v]])
        else:
            reps_p[p[v]] = v
        if q[v] in reps_q:
            union(v, reps_q[q[v]])
        else:
            reps_q[q[v]] = v
    return _normalize_block_map([find(v) for v in range(n)])


def enumerate_congruences(x: QCycleSet, limit: int = 100_000) -> list[CongruencePartition]:
    """Every partition compatible with both operations whose quotient dot rows
    are bijective, generated as joins of principal congruences."""
    n = x.n
    identity_map = tuple(range(n))
    principals = {identity_map}
    for a in range(n):
        for b in range(a + 1, n):
            principals.add(_principal_congruence(x, a, b))
    found = set(principals)
    frontier = list(principals)
    while frontier:
        current = frontier.pop()
        for principal in principals:
            joined = _join_block_maps(n, current, principal)
            if joined not in found:
                if len(found) >= limit:
                    raise QCycleError(f"congruence count exceeded limit of {limit}")
                found.add(joined)
                frontier.append(joined)
    partitions = []
    for block_map in sorted(found):
        blocks: dict[int, list[int]] = {}
        for v, c in enumerate(block_map):
            blocks.setdefault(c, []).append(v)
        part = congruence_from_blocks(x, list(blocks.values()))
        partitions.append(part)
    partitions.sort(key=lambda part: (len(part.blocks), part.blocks))
    return partitions


def is_simple(x: QCycleSet) -> bool:
    """No covering onto a structure with more than one point other than isomorphisms.

    Equivalent to: every congruence with uniform blocks is all-singletons or
    one-block.  The one-point structure is simple under this reading.
    """
    n = x.n
    for part in enumerate_congruences(x):
        sizes = {len(b) for b in part.blocks}
        if len(sizes) == 1 and 1 < len(part.blocks) < n:
            return False
    return True


# ---------------------------------------------------------------------------
# Automorphisms and semidirect products
# ---------------------------------------------------------------------------


def automorphism_group(x: QCycleSet) -> GenPermGroup:
    """All relabelings preserving both tables, by brute force over permutations."""
    n = x.n
    dot, colon = x.dot, x.colon
    auts = []
    for p in permutations(range(n)):
        ok = True
        for a in range(n):
            pa = p[a]
            dot_a, colon_a = dot[a], colon[a]
            for b in range(n):
                pb = p[b]
                if p[dot_a[b]] != dot[pa][pb] or p[colon_a[b]] != colon[pa][pb]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            auts.append(p)
    gens = tuple((f"aut_{i}", g) for i, g in enumerate(auts))
    return GenPermGroup(
        degree=n,
        generators=gens,
        elements=frozenset(auts),
        orbits=permutation_orbits(n, auts),
    )


def semidirect_product(
    x: QCycleSet, s: QCycleSet, theta: Sequence[Perm]
) -> QCycleSet:
    """Product structure on pairs twisted by a family of fiber automorphisms.

    theta assigns each base point an automorphism of s, subject to
    theta[x.y] o theta[x] == theta[y:x] o theta[y] for all x, y.  The product
    operations are

        (x, a).(y, b) = (x.y, theta[x.y](a) . theta[y:x](b))
        (x, a):(y, b) = (x:y, theta[x:y](a) : theta[y.x](b))

    Raises NotAutomorphism or CompatibilityFailed when the hypotheses fail.
    """
    theta = tuple(tuple(t) for t in theta)
    if len(theta) != x.n:
        raise NotAutomorphism(f"need {x.n} twisting maps, got {len(theta)}")
    auts = automorphism_group(s).elements
    for i, t in enumerate(theta):
        if t not in auts:
            raise NotAutomorphism(f"twist at base point {i} is not an automorphism of the fiber")
    for a in range(x.n):
        for b in range(x.n):
            lhs = compose(theta[x.dot[a][b]], theta[a])
            rhs = compose(theta[x.colon[b][a]], theta[b])
            if lhs != rhs:
                raise CompatibilityFailed((a, b))
    n, k = x.n, s.n
    size = n * k
    dot = [[0] * size for _ in range(size)]
    colon = [[0] * size for _ in range(size)]
    for a in range(n):
        for u in range(k):
            p = a * k + u
            for b in range(n):
                ab_dot = x.dot[a][b]
                ab_colon = x.colon[a][b]
                t_dot_left = theta[ab_dot][u]
                t_colon_left = theta[ab_colon][u]
                dot_twist = theta[x.colon[b][a]]
                colon_twist = theta[x.dot[b][a]]
                for v in range(k):
                    q = b * k + v
                    dot[p][q] = ab_dot * k + s.dot[t_dot_left][dot_twist[v]]
                    colon[p][q] = ab_colon * k + s.colon[t_colon_left][colon_twist[v]]
    return QCycleSet(size, tuple(map(tuple, dot)), tuple(map(tuple, colon)))
