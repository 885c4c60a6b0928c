import pytest

from pdem import model, oracle


@pytest.fixture(scope="session")
def params_a1():
    return model.ModelParams(a=1.0)


@pytest.fixture(scope="session")
def params_a2():
    return model.ModelParams(a=2.0)


@pytest.fixture(scope="session")
def params_a3():
    return model.ModelParams(a=3.0)


@pytest.fixture(scope="session")
def wide_box_eigenvalues(params_a2):
    """Eigenvalues on an adequate box (-2+2e-3, 300], 150000 points."""
    grid = oracle.Grid(x_min=-2.0 + 2e-3, x_max=300.0, count=150000)
    matrix = oracle.build_hamiltonian(params_a2, grid)
    return oracle.lowest_eigenvalues(matrix, 4)


@pytest.fixture(scope="session")
def convergence_ladder(params_a2):
    """n = 0, 1 eigenvalue errors on (-2+2e-3, 300] for a doubling ladder."""
    counts = (12500, 25000, 50000, 100000)
    errors = {0: [], 1: []}
    for count in counts:
        grid = oracle.Grid(x_min=-2.0 + 2e-3, x_max=300.0, count=count)
        lams = oracle.lowest_eigenvalues(oracle.build_hamiltonian(params_a2, grid), 2)
        errors[0].append(abs(lams[0] - 0.5))
        errors[1].append(abs(lams[1] - 1.25))
    return counts, errors
