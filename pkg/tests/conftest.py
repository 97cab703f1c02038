import pytest

from ssp_kit.reductions import example_formula, unsat_formula_m4


@pytest.fixture(scope="session")
def phi6():
    return example_formula()


@pytest.fixture(scope="session")
def phi4_unsat():
    return unsat_formula_m4()
