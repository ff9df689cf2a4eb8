import numpy as np
import pytest

from ilsplit import GenSpec, IlsProblem, gen_random_ils
from ilsplit._kernels import warmup


@pytest.fixture(scope="session", autouse=True)
def _compile_kernels():
    warmup()


@pytest.fixture
def example():
    """A1 = diag(2, 1), A2 = [1, 0], b1 = [2, 1], b2 = [1]; solution [1, 1]."""
    return IlsProblem(np.diag([2.0, 1.0]), [[1.0, 0.0]], [2.0, 1.0], [1.0])


def random_instance(seed, n_max=30, rho_max=0.5):
    """Random well-posed instance with n <= n_max, n <= p <= 3n, 0 <= q <= n."""
    rng = np.random.default_rng([seed, 7])
    n = int(rng.integers(2, n_max + 1))
    p = int(rng.integers(n, 3 * n + 1))
    q = int(rng.integers(0, n + 1))
    rho = float(rng.uniform(0.05, rho_max))
    return gen_random_ils(GenSpec(p, q, n, seed=seed, target_rho=rho))


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
