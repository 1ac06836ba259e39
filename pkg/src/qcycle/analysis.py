"""Permutation-group structure, invariant restriction, and retraction quotients."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import (
    InvalidStructure,
    NotLeftNonDegenerate,
    QCycleError,
    QCycleSet,
    SolutionMap,
    is_bijective_solution,
    is_left_nondeg,
    is_permutation,
    is_regular,
    is_right_nondeg,
    left_rows,
    solution_to_qcs,
    verify_qcycle,
)
from .perm import Perm, compose, identity, inverse


class NotRegular(QCycleError):
    pass


class NotInvariant(QCycleError):
    """Subset not closed under a generator; carries (label, point, image)."""

    def __init__(self, label: str, point: int, image: int):
        super().__init__(f"generator {label} maps {point} to {image}, outside the subset")
        self.witness = (label, point, image)


class QuotientNotQCycleSet(QCycleError):
    """Retract quotient failed well-definedness or the structural laws."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(QCycleError):
    pass


class NotNonDegenerate(QCycleError):
    pass


class IllDefined(QCycleError):
    """Class-level map disagrees across representatives; carries the pair."""

    def __init__(self, witness):
        super().__init__(f"class map disagrees at representatives {witness}")
        self.witness = witness


@dataclass(frozen=True)
class GenPermGroup:
    """Permutation group given by labeled generators, with full element closure."""

    degree: int
    generators: tuple[tuple[str, Perm], ...]
    elements: frozenset[Perm]
    orbits: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def close_permutations(degree: int, perms: Sequence[Perm], budget: int = 1_000_000) -> frozenset[Perm]:
    """Breadth-first closure of the given permutations under composition.

    On a finite degree the closure automatically contains inverses and the
    identity.  Raises BudgetExceeded once more than `budget` elements appear.
    """
    start = identity(degree)
    elements = {start}
    frontier = deque([start])
    gens = list(dict.fromkeys(perms))
    while frontier:
        e = frontier.popleft()
        for g in gens:
            h = compose(g, e)
            if h not in elements:
                if len(elements) >= budget:
                    raise BudgetExceeded(f"group closure exceeded budget of {budget} elements")
                elements.add(h)
                frontier.append(h)
    return frozenset(elements)


def permutation_orbits(degree: int, perms: Sequence[Perm]) -> tuple[tuple[int, ...], ...]:
    """Connected components of the action of the given permutations."""
    seen = [False] * degree
    orbits = []
    for start in range(degree):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        component = []
        while queue:
            v = queue.popleft()
            component.append(v)
            for g in perms:
                w = g[v]
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        orbits.append(tuple(sorted(component)))
    return tuple(orbits)


def perm_group(x: QCycleSet, budget: int = 1_000_000) -> GenPermGroup:
    """Group generated by all dot rows and colon rows of a regular structure."""
    if not is_regular(x):
        raise NotRegular("colon rows must be permutations to generate a group")
    gens = [(f"sigma_{p}", x.dot[p]) for p in range(x.n)]
    gens += [(f"delta_{p}", x.colon[p]) for p in range(x.n)]
    perms = [g for _, g in gens]
    return GenPermGroup(
        degree=x.n,
        generators=tuple(gens),
        elements=close_permutations(x.n, perms, budget),
        orbits=permutation_orbits(x.n, perms),
    )


def eta_maps(s: SolutionMap) -> list[tuple[int, ...]]:
    """Derived right-translation family of a left non-degenerate solution.

    Entry x is the map y |-> second(r(y, w)) where w is the preimage of x
    under the left row of y.  For regular structures these, together with
    the left rows, generate the same permutation group as perm_group of the
    associated q-cycle set.
    """
    lam = left_rows(s)
    for a, row in enumerate(lam):
        if not is_permutation(row):
            raise NotLeftNonDegenerate(a)
    lam_inv = [inverse(row) for row in lam]
    n = s.n
    return [tuple(s.r[y][lam_inv[y][x]][1] for y in range(n)) for x in range(n)]


def restrict_to_invariant(x: QCycleSet, points: Sequence[int]) -> QCycleSet:
    """Induced substructure on a generator-invariant subset, relabeled to 0..k-1."""
    if not is_regular(x):
        raise NotRegular("restriction requires a regular structure")
    pts = sorted(set(points))
    if not pts:
        raise InvalidStructure("cannot restrict to the empty subset")
    if pts[0] < 0 or pts[-1] >= x.n:
        raise InvalidStructure(f"subset {pts} out of range for carrier of size {x.n}")
    pset = set(pts)
    for label, g in [(f"sigma_{p}", x.dot[p]) for p in range(x.n)] + [
        (f"delta_{p}", x.colon[p]) for p in range(x.n)
    ]:
        for y in pts:
            if g[y] not in pset:
                raise NotInvariant(label, y, g[y])
    pos = {v: i for i, v in enumerate(pts)}
    dot = tuple(tuple(pos[x.dot[a][b]] for b in pts) for a in pts)
    colon = tuple(tuple(pos[x.colon[a][b]] for b in pts) for a in pts)
    return QCycleSet(len(pts), dot, colon)


@dataclass(frozen=True)
class RetractQuotient:
    """Partition by equal translation rows plus the quotient structure on classes."""

    classes: tuple[tuple[int, ...], ...]
    quotient: QCycleSet
    class_of: tuple[int, ...]


def retract(x: QCycleSet) -> RetractQuotient:
    """Quotient by the relation identifying points with equal dot and colon rows.

    Class indices follow least representatives.  Well-definedness of the
    quotient tables and the quotient laws are re-verified rather than
    assumed; failures raise QuotientNotQCycleSet with a witness.
    """
    if not is_regular(x):
        raise NotRegular("retraction is defined for regular structures")
    n = x.n
    key_to_class: dict = {}
    classes: list[list[int]] = []
    class_of = []
    for p in range(n):
        key = (x.dot[p], x.colon[p])
        if key not in key_to_class:
            key_to_class[key] = len(classes)
            classes.append([])
        idx = key_to_class[key]
        classes[idx].append(p)
        class_of.append(idx)
    k = len(classes)
    reps = [c[0] for c in classes]
    qdot = [[class_of[x.dot[a][b]] for b in reps] for a in reps]
    qcolon = [[class_of[x.colon[a][b]] for b in reps] for a in reps]
    for ci, members_c in enumerate(classes):
        for di, members_d in enumerate(classes):
            for a in members_c:
                for b in members_d:
                    if class_of[x.dot[a][b]] != qdot[ci][di]:
                        raise QuotientNotQCycleSet(
                            f"dot not constant on classes at pair ({a}, {b})", (a, b)
                        )
                    if class_of[x.colon[a][b]] != qcolon[ci][di]:
                        raise QuotientNotQCycleSet(
                            f"colon not constant on classes at pair ({a}, {b})", (a, b)
                        )
    report = verify_qcycle(qdot, qcolon)
    if not report.ok:
        raise QuotientNotQCycleSet(
            f"quotient violates {report.violations[0].law} at {report.violations[0].witness}",
            report.violations[0],
        )
    return RetractQuotient(
        classes=tuple(tuple(c) for c in classes),
        quotient=QCycleSet(k, tuple(map(tuple, qdot)), tuple(map(tuple, qcolon))),
        class_of=tuple(class_of),
    )


def retract_tower(x: QCycleSet, max_steps: int | None = None) -> list[QCycleSet]:
    """Iterated retraction [x, Ret(x), Ret^2(x), ...] until the size stabilizes."""
    if max_steps is None:
        max_steps = x.n
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    tower = [x]
    for _ in range(max_steps):
        quotient = retract(tower[-1]).quotient
        if quotient.n == tower[-1].n:
            break
        tower.append(quotient)
    return tower


def is_irretractable(x: QCycleSet) -> bool:
    """True iff the retract relation is equality (the first retract is size-preserving)."""
    return retract(x).quotient.n == x.n


def _require_nondeg_bijective(s: SolutionMap) -> None:
    if not is_bijective_solution(s):
        raise NotNonDegenerate("map r is not bijective on pairs")
    if not is_left_nondeg(s):
        raise NotNonDegenerate("a left translation row is not bijective")
    if not is_right_nondeg(s):
        raise NotNonDegenerate("a right translation column is not bijective")


def retract_solution(s: SolutionMap) -> SolutionMap:
    """Solution induced on retract classes of a bijective non-degenerate solution.

    Both components of the class-level map are re-verified to be constant on
    classes; IllDefined carries the first disagreeing representative pair.
    """
    _require_nondeg_bijective(s)
    x = solution_to_qcs(s)
    rq = retract(x)
    cls = rq.class_of
    k = len(rq.classes)
    reps = [c[0] for c in rq.classes]
    rbar = [
        [(cls[s.r[a][b][0]], cls[s.r[a][b][1]]) for b in reps]
        for a in reps
    ]
    for ci, members_c in enumerate(rq.classes):
        for di, members_d in enumerate(rq.classes):
            for a in members_c:
                for b in members_d:
                    got = (cls[s.r[a][b][0]], cls[s.r[a][b][1]])
                    if got != rbar[ci][di]:
                        raise IllDefined((a, b))
    return SolutionMap(k, tuple(tuple(row) for row in rbar))


def retract_matches_lambda_rho(s: SolutionMap) -> bool:
    """Whether retract classes coincide with classes of equal (left row, right column).

    Expected to hold for every bijective non-degenerate solution; a False
    return is a falsification witness against that characterization.
    """
    _require_nondeg_bijective(s)
    x = solution_to_qcs(s)
    n = s.n
    by_rows: dict = {}
    for p in range(n):
        by_rows.setdefault((x.dot[p], x.colon[p]), []).append(p)
    by_maps: dict = {}
    for p in range(n):
        lam_p = tuple(s.r[p][y][0] for y in range(n))
        rho_p = tuple(s.r[y][p][1] for y in range(n))
        by_maps.setdefault((lam_p, rho_p), []).append(p)
    left = {frozenset(v) for v in by_rows.values()}
    right = {frozenset(v) for v in by_maps.values()}
    return left == right
