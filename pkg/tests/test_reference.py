import numpy as np
import pytest

from ilsplit import (
    IlsProblem,
    NotWellPosedError,
    RankDeficiencyError,
    relative_residual,
    solve_normal_direct,
    solve_qr_cholesky,
)

from .conftest import random_instance


def test_examples(example):
    np.testing.assert_allclose(solve_normal_direct(example), [1.0, 1.0], rtol=1e-14)
    np.testing.assert_allclose(solve_qr_cholesky(example), [1.0, 1.0], rtol=1e-14)


def test_identity_ols():
    b1 = np.array([3.0, -1.0, 2.5])
    prob = IlsProblem(np.eye(3), np.zeros((0, 3)), b1, [])
    np.testing.assert_allclose(solve_normal_direct(prob), b1, rtol=1e-15)
    np.testing.assert_allclose(solve_qr_cholesky(prob), b1, rtol=1e-15)


def test_not_well_posed():
    prob = IlsProblem(np.eye(2), np.eye(2), [1.0, 2.0], [0.5, 0.5])
    with pytest.raises(NotWellPosedError):
        solve_normal_direct(prob)
    with pytest.raises(NotWellPosedError):
        solve_qr_cholesky(prob)


def test_duplicated_columns_rank_error():
    rng = np.random.default_rng(0)
    col = rng.random((6, 1))
    prob = IlsProblem(np.hstack([col, col, rng.random((6, 1))]), np.zeros((0, 3)), rng.random(6), [])
    with pytest.raises(RankDeficiencyError):
        solve_qr_cholesky(prob)


@pytest.mark.parametrize("seed", range(40))
def test_oracles_agree(seed):
    prob = random_instance(seed, n_max=50)
    xn = solve_normal_direct(prob)
    xq = solve_qr_cholesky(prob)
    assert np.linalg.norm(xq - xn) <= 1e-8 * (1 + np.linalg.norm(xn))
    assert relative_residual(prob, xq) <= 1e-12


def test_matches_lstsq_when_q0():
    rng = np.random.default_rng(1)
    a1, b1 = rng.normal(size=(20, 6)), rng.normal(size=20)
    prob = IlsProblem(a1, np.zeros((0, 6)), b1, [])
    expected = np.linalg.lstsq(a1, b1, rcond=None)[0]
    np.testing.assert_allclose(solve_qr_cholesky(prob), expected, rtol=1e-10)
