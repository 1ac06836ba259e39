"""Shared enumeration pools, computed once per session."""

from __future__ import annotations

import pytest

from qcycle import EnumFilter, enumerate_qcs, enumerate_solutions


@pytest.fixture(scope="session")
def regular_pools():
    """Regular structures up to isomorphism, orders 1 through 4."""
    return {
        n: enumerate_qcs(n, EnumFilter(regular=True, up_to_iso=True)) for n in range(1, 5)
    }


@pytest.fixture(scope="session")
def general_pools():
    """All labeled structures, orders 1 through 3."""
    return {n: enumerate_qcs(n) for n in range(1, 4)}


@pytest.fixture(scope="session")
def bijective_solution_pools():
    """All bijective left non-degenerate solutions, orders 1 through 3."""
    return {n: enumerate_solutions(n, require_bijective=True) for n in range(1, 4)}
