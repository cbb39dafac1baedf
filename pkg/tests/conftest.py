import pytest

from ordersix.modeq import solve_modular_equation


@pytest.fixture(scope="session")
def solved():
    """Memoized access to solved modular equations across the suite."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = solve_modular_equation(n)
        return cache[n]

    return get
