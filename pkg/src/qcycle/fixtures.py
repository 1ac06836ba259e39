"""Catalog of concrete structures with their expected properties attached.

Each fixture packages one construction (a q-cycle set, a solution, a
dynamical pair, or a pointwise witness record) together with claims that the
test suite and the CLI re-evaluate.  A claim with expected=None is
observe-only: its value is recorded but never fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Optional

from .analysis import retract
from .core import (
    QCycleSet,
    SolutionMap,
    is_bijective_solution,
    is_cycle_set,
    is_left_nondeg,
    is_nondegenerate,
    is_regular,
    is_right_nondeg,
    qcs_to_solution,
    solution_power_eq,
    squaring_maps,
    verify_qcycle,
)
from .extensions import (
    DynamicalPair,
    build_extension,
    constant_cocycle_pair,
    extension_tables,
    pair_ok,
    quasinormal_pair,
    semibrace_base,
    semibrace_pair,
    semidirect_product,
    is_simple,
    z_example_witness,
)
from .perm import compose, from_cycles


# ---------------------------------------------------------------------------
# Table builders
# ---------------------------------------------------------------------------


def cyclic_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Addition table of the integers mod n."""
    return tuple(tuple((i + j) % n for j in range(n)) for i in range(n))


def sym3_table() -> tuple[tuple[int, ...], ...]:
    """Composition table of all permutations of three points, listed lexicographically."""
    elems = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}
    return tuple(
        tuple(index[compose(elems[i], elems[j])] for j in range(6)) for i in range(6)
    )


def sym3_sign_projection() -> tuple[int, ...]:
    """Endomorphism of the six-element permutation group collapsing onto parity."""
    elems = sorted(permutations(range(3)))
    swap = elems.index((1, 0, 2))

    def parity(p):
        return sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j]) % 2

    return tuple(0 if parity(p) == 0 else swap for p in elems)


def min_semilattice_table(n: int = 2) -> tuple[tuple[int, ...], ...]:
    """Meet semilattice on a chain: the product is the minimum."""
    return tuple(tuple(min(i, j) for j in range(n)) for i in range(n))


def trivial_qcs(n: int) -> QCycleSet:
    """Both operations project onto the right argument."""
    row = tuple(range(n))
    return QCycleSet(n, tuple(row for _ in range(n)), tuple(row for _ in range(n)))


def shift_qcs(m: int = 4, k: int = 1) -> QCycleSet:
    """Carrier Z/m with x.y = y + k and x:y = y."""
    dot = tuple(tuple((y + k) % m for y in range(m)) for _ in range(m))
    colon = tuple(tuple(range(m)) for _ in range(m))
    return QCycleSet(m, dot, colon)


def three_point_swap_qcs() -> QCycleSet:
    """Three points: dot rows swap 0 and 1 except at point 2; colon rows dually."""
    swap = from_cycles(3, [(0, 1)])
    ident = (0, 1, 2)
    return QCycleSet(3, (swap, swap, ident), (ident, ident, swap))


def constant_target_qcs(n: int = 3, k: int = 0) -> QCycleSet:
    """x.y = y while every colon value is the constant k."""
    if not 0 <= k < n:
        raise ValueError(f"target {k} out of range for size {n}")
    row = tuple(range(n))
    const = tuple(k for _ in range(n))
    return QCycleSet(n, tuple(row for _ in range(n)), tuple(const for _ in range(n)))


def four_point_simple_qcs() -> QCycleSet:
    """Order-4 structure with no proper uniform quotient."""
    s0 = from_cycles(4, [(1, 3)])
    s1 = from_cycles(4, [(0, 3)])
    s2 = from_cycles(4, [(0, 1, 3)])
    s3 = from_cycles(4, [(0, 1)])
    ident = (0, 1, 2, 3)
    return QCycleSet(4, (s0, s1, s2, s3), (ident, ident, s2, ident))


def double_fiber_pair(group_order: int) -> DynamicalPair:
    """Pair over the two-point trivial cycle set with fiber G x G for G cyclic.

    Fiber maps mix the coordinates linearly, differently on and off the base
    diagonal; the dot and colon fiber actions differ by a sign that matters
    only when G has an element of order greater than two.
    """
    g = group_order
    base = trivial_qcs(2)
    elems = [(t1, t2) for t1 in range(g) for t2 in range(g)]
    index = {e: i for i, e in enumerate(elems)}
    m = g * g

    def fiber(x, y, s, sign):
        s1, s2 = elems[s]
        images = []
        for t1, t2 in elems:
            if x == y:
                images.append(index[((t1 + sign * (t2 - s2)) % g, t2)])
            else:
                images.append(index[(t1, (t2 + s1) % g)])
        return tuple(images)

    alpha = tuple(
        tuple(tuple(fiber(x, y, s, +1) for s in range(m)) for y in range(2))
        for x in range(2)
    )
    alpha_prime = tuple(
        tuple(tuple(fiber(x, y, s, -1) for s in range(m)) for y in range(2))
        for x in range(2)
    )
    return DynamicalPair(base, m, alpha, alpha_prime)


def nine_point_semidirect_qcs() -> QCycleSet:
    """Order-9 semidirect product: a non-regular three-point base twisted over
    the trivial three-point fiber by a two-element twist family."""
    row = (0, 1, 2)
    base = QCycleSet(3, (row, row, row), ((0, 0, 2), (0, 0, 2), (0, 0, 2)))
    fiber = trivial_qcs(3)
    swap = from_cycles(3, [(0, 1)])
    return semidirect_product(base, fiber, [swap, swap, row])


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    prop: str
    expected: object
    note: str


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # qcs | pair | witness
    structure: object
    claims: tuple[Claim, ...]


def _qcs_claims(*claims: Claim) -> tuple[Claim, ...]:
    return claims


def fixture_catalog() -> tuple[Fixture, ...]:
    """All catalogued structures with their attached claims."""
    sl = min_semilattice_table(2)
    fixtures = [
        Fixture(
            "shift_mod4",
            "qcs",
            shift_qcs(4, 1),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", True, "all colon rows are bijections"),
                Claim("r_bijective", True, "the associated map is a bijection on pairs"),
                Claim("solution_cell", ((0, 2), (1, 0)), "r(0, 2) = (1, 0)"),
            ),
        ),
        Fixture(
            "three_point_swap",
            "qcs",
            three_point_swap_qcs(),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", True, "all colon rows are bijections"),
                Claim("nondegenerate", True, "both squaring maps are bijections"),
                Claim("power_eq", (4, 0), "fourth power of the map is the identity"),
                Claim("retract_classes", 2, "two classes of equal translation rows"),
            ),
        ),
        Fixture(
            "constant_target_3",
            "qcs",
            constant_target_qcs(3, 0),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", False, "constant colon rows are not bijections"),
                Claim("power_eq", (3, 2), "third power of the map equals the second"),
                Claim("solution_cell", ((1, 2), (2, 0)), "r(1, 2) = (2, 0)"),
            ),
        ),
        Fixture(
            "semilattice_quasinormal",
            "qcs",
            quasinormal_pair(sl).base,
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", False, "right multiplication by the bottom collapses"),
                Claim("power_eq", (5, 3), "fifth power of the map equals the third"),
            ),
        ),
        Fixture(
            "semibrace_z4_zero",
            "qcs",
            semibrace_base(cyclic_table(4), (0, 0, 0, 0)),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", False, "the zero endomorphism is not bijective"),
                Claim("q_eq_qprime", True, "both squaring maps equal the endomorphism"),
            ),
        ),
        Fixture(
            "semibrace_z3_identity",
            "qcs",
            semibrace_base(cyclic_table(3), (0, 1, 2)),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", True, "the identity endomorphism is bijective"),
                Claim("q_eq_qprime", True, "both squaring maps equal the endomorphism"),
            ),
        ),
        Fixture(
            "semibrace_s3_sign",
            "qcs",
            semibrace_base(sym3_table(), sym3_sign_projection()),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", False, "the parity projection is not bijective"),
                Claim("q_eq_qprime", True, "both squaring maps equal the endomorphism"),
            ),
        ),
        Fixture(
            "semibrace_z4_negation",
            "qcs",
            semibrace_base(cyclic_table(4), (0, 3, 2, 1)),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", True, "negation is bijective"),
                Claim("q_eq_qprime", None, "observed only: negation is not idempotent"),
            ),
        ),
        Fixture(
            "four_point_simple",
            "qcs",
            four_point_simple_qcs(),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("nondegenerate", True, "both squaring maps are bijections"),
                Claim("simple", True, "no proper uniform quotient exists"),
                Claim("irretractable", True, "all translation-row pairs are distinct"),
            ),
        ),
        Fixture(
            "cocycle_trivial2_z3",
            "pair",
            constant_cocycle_pair(trivial_qcs(2), [3], 1, 2, 0, 1),
            _qcs_claims(
                Claim("pair_verifies", True, "the three compatibility equations hold"),
                Claim("extension_valid", True, "the product tables satisfy the q-cycle laws"),
                Claim("extension_regular", True, "fiber translations are bijections"),
                Claim("extension_cycle_set", False, "diagonal constants differ"),
            ),
        ),
        Fixture(
            "double_fiber_z2",
            "pair",
            double_fiber_pair(2),
            _qcs_claims(
                Claim("pair_verifies", True, "the three compatibility equations hold"),
                Claim("extension_valid", True, "the product tables satisfy the q-cycle laws"),
                Claim("extension_regular", True, "fiber maps are linear bijections"),
                Claim("extension_cycle_set", True, "the sign flip is invisible mod 2"),
            ),
        ),
        Fixture(
            "double_fiber_z3",
            "pair",
            double_fiber_pair(3),
            _qcs_claims(
                Claim("pair_verifies", True, "the three compatibility equations hold"),
                Claim("extension_valid", True, "the product tables satisfy the q-cycle laws"),
                Claim("extension_cycle_set", False, "the sign flip separates dot from colon mod 3"),
            ),
        ),
        Fixture(
            "semibrace_pair_z4_zero",
            "pair",
            semibrace_pair(cyclic_table(4), (0, 0, 0, 0)),
            _qcs_claims(
                Claim("pair_verifies", True, "the three compatibility equations hold"),
                Claim("extension_valid", True, "the product tables satisfy the q-cycle laws"),
                Claim("extension_regular", False, "the zero endomorphism is not bijective"),
            ),
        ),
        Fixture(
            "semibrace_pair_z3_identity",
            "pair",
            semibrace_pair(cyclic_table(3), (0, 1, 2)),
            _qcs_claims(
                Claim("pair_verifies", True, "the three compatibility equations hold"),
                Claim("extension_valid", True, "the product tables satisfy the q-cycle laws"),
                Claim("extension_regular", True, "the identity endomorphism is bijective"),
            ),
        ),
        Fixture(
            "semibrace_pair_s3_sign",
            "pair",
            semibrace_pair(sym3_table(), sym3_sign_projection()),
            _qcs_claims(
                Claim("pair_verifies", True, "the three compatibility equations hold"),
                Claim("extension_valid", True, "the product tables satisfy the q-cycle laws"),
                Claim("extension_regular", False, "the parity projection is not bijective"),
            ),
        ),
        Fixture(
            "quasinormal_pair_semilattice",
            "pair",
            quasinormal_pair(sl),
            _qcs_claims(
                Claim("pair_verifies", True, "the three compatibility equations hold"),
                Claim("extension_valid", True, "the product tables satisfy the q-cycle laws"),
                Claim("extension_regular", False, "right multiplications collapse"),
                Claim("extension_power_eq", (5, 3), "fifth power of the map equals the third"),
            ),
        ),
        Fixture(
            "nine_point_semidirect",
            "qcs",
            nine_point_semidirect_qcs(),
            _qcs_claims(
                Claim("valid", True, "tables satisfy the q-cycle laws"),
                Claim("regular", False, "base colon rows collapse two points"),
            ),
        ),
        Fixture(
            "integer_shift_klein_witness",
            "witness",
            z_example_witness(),
            _qcs_claims(
                Claim("squares_collide", True, "two distinct points share their square"),
                Claim(
                    "square_value",
                    (0, 0, 0),
                    "the shared square is the origin",
                ),
                Claim(
                    "translations_differ",
                    True,
                    "the two points act differently at the sample point",
                ),
            ),
        ),
    ]
    return tuple(fixtures)


@dataclass(frozen=True)
class ClaimResult:
    fixture: str
    claim: Claim
    passed: bool
    observed: object


def _fixture_qcs(fx: Fixture) -> QCycleSet:
    if fx.kind == "qcs":
        return fx.structure
    if fx.kind == "pair":
        return build_extension(fx.structure)
    raise ValueError(f"fixture {fx.name} has no table structure")


def _fixture_solution(fx: Fixture) -> SolutionMap:
    return qcs_to_solution(_fixture_qcs(fx))


_EVALUATORS: dict[str, Callable[[Fixture], object]] = {
    "valid": lambda fx: verify_qcycle(fx.structure.dot, fx.structure.colon).ok,
    "regular": lambda fx: is_regular(fx.structure),
    "nondegenerate": lambda fx: is_nondegenerate(fx.structure),
    "cycle_set": lambda fx: is_cycle_set(fx.structure),
    "q_eq_qprime": lambda fx: squaring_maps(fx.structure)[0] == squaring_maps(fx.structure)[1],
    "r_bijective": lambda fx: is_bijective_solution(_fixture_solution(fx)),
    "left_nondeg": lambda fx: is_left_nondeg(_fixture_solution(fx)),
    "right_nondeg": lambda fx: is_right_nondeg(_fixture_solution(fx)),
    "simple": lambda fx: is_simple(fx.structure),
    "irretractable": lambda fx: retract(fx.structure).quotient.n == fx.structure.n,
    "retract_classes": lambda fx: len(retract(fx.structure).classes),
    "pair_verifies": lambda fx: pair_ok(fx.structure),
    "extension_valid": lambda fx: verify_qcycle(*extension_tables(fx.structure)).ok,
    "extension_regular": lambda fx: is_regular(build_extension(fx.structure)),
    "extension_cycle_set": lambda fx: is_cycle_set(build_extension(fx.structure)),
    "squares_collide": lambda fx: fx.structure["squares_collide"],
    "square_value": lambda fx: fx.structure["square_at_minus_two"],
    "translations_differ": lambda fx: fx.structure["translations_differ"],
}


def evaluate_claim(fx: Fixture, claim: Claim) -> ClaimResult:
    if claim.prop == "power_eq":
        a, b = claim.expected
        observed = solution_power_eq(_fixture_solution(fx), a, b)
        return ClaimResult(fx.name, claim, observed is True, observed)
    if claim.prop == "extension_power_eq":
        a, b = claim.expected
        observed = solution_power_eq(qcs_to_solution(build_extension(fx.structure)), a, b)
        return ClaimResult(fx.name, claim, observed is True, observed)
    if claim.prop == "solution_cell":
        (x, y), expected = claim.expected
        observed = _fixture_solution(fx).r[x][y]
        return ClaimResult(fx.name, claim, observed == tuple(expected), observed)
    evaluator = _EVALUATORS.get(claim.prop)
    if evaluator is None:
        raise ValueError(f"fixture {fx.name} has unknown claim {claim.prop!r}")
    observed = evaluator(fx)
    if claim.expected is None:
        return ClaimResult(fx.name, claim, True, observed)
    return ClaimResult(fx.name, claim, observed == claim.expected, observed)


def check_fixture(fx: Fixture) -> list[ClaimResult]:
    return [evaluate_claim(fx, claim) for claim in fx.claims]


def fixture_by_name(name: str) -> Fixture:
    for fx in fixture_catalog():
        if fx.name == name:
            return fx
    raise KeyError(f"no fixture named {name!r}")
