import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ilsplit import (
    ExperimentSpec,
    GenSpec,
    MeasurementError,
    ParameterError,
    ResultRow,
    SolverConfig,
    export_csv,
    flop_estimate,
    import_csv,
    run_experiment,
    speedup,
)
from ilsplit.harness import CSV_COLUMNS, row_flops, run_solver

from .conftest import random_instance

# frozen from an independent hand expansion with m = p + q substituted
FLOPS = {
    (1, 1, 1, 1): {"sp": 12, "sp-rk-rgs": 16, "ussor": 47, "sp-scd": 15},
    (10, 5, 3, 2): {"sp": 381, "sp-rk-rgs": 656, "ussor": 812, "sp-scd": 306},
    (100, 100, 50, 4): {"sp": 1044900, "sp-rk-rgs": 459582, "ussor": 974131, "sp-scd": 541646},
}


def row(cpu, method="sp"):
    return ResultRow(method, 2, 1, 1, 1, 1.0, 0.0, cpu, 0.0, 0.0, 1.0)


@pytest.mark.parametrize("point", sorted(FLOPS))
@pytest.mark.parametrize("method", ["sp", "sp-rk-rgs", "ussor", "sp-scd"])
def test_flop_estimate_values(point, method):
    p, q, n, t = point
    value = flop_estimate(method, p, q, n, t, t)
    assert isinstance(value, int) and value == FLOPS[point][method]


def test_flop_estimate_setup_terms():
    p, q, n = 7, 3, 4
    m = p + q
    assert flop_estimate("sp", p, q, n, 0) == m * n**2 + 4 * n**3 + 2 * m * n + 2 * n**2 - 2 * n
    assert flop_estimate("ussor", p, q, n, 0) == m * n**2 + 2 * n**3 + 2 * m * n + 4 * p * n + 3 - 2 * n
    # with m = 1 the single-step count collapses to 1 + 4 + 2 + 2 - 2 + 2
    assert flop_estimate("sp", 1, 0, 1, 1) == 9
    with pytest.raises(ParameterError):
        flop_estimate("normal-direct", 1, 1, 1, 1)


def test_row_flops_uses_inner_per_outer():
    r = ResultRow("sp-scd", 15, 5, 10, 5, 2.0, 40.0, 1.0, 0.5, 1e-7, 1.0)
    assert row_flops(r, 1) == flop_estimate("sp-scd", 10, 5, 5, 2.0, 20.0, 1)
    assert row_flops(ResultRow("qr-cholesky", 15, 5, 10, 5, 0, 0, 1, 0, 0, 1)) is None


def test_speedup_values():
    assert abs(speedup(row(1974.0), row(559.3)) - 3.5294) <= 5e-4
    assert abs(speedup(row(2938.5), row(324.5609)) - 9.0538) <= 5e-4
    assert speedup(row(2.5), row(2.5)) == 1.0
    with pytest.raises(MeasurementError):
        speedup(row(1.0), row(0.0))


@given(st.floats(1e-6, 1e6), st.floats(1e-6, 1e6), st.floats(1e-6, 1e6))
def test_speedup_chain(a, b, c):
    ab = speedup(row(a), row(b))
    bc = speedup(row(b), row(c))
    assert ab * bc == pytest.approx(speedup(row(a), row(c)), rel=1e-12)


def test_spec_validation():
    gen = GenSpec(10, 2, 5, target_rho=0.2)
    with pytest.raises(ParameterError):
        ExperimentSpec("nope", gen=gen)
    with pytest.raises(ParameterError):
        ExperimentSpec("sp", gen=gen, trials=0)
    with pytest.raises(ParameterError):
        ExperimentSpec("ussor", gen=gen)
    with pytest.raises(ParameterError):
        ExperimentSpec("sp", gen=gen, ussor_params=(0.5, 1.0))
    with pytest.raises(ParameterError):
        ExperimentSpec("sp")


def test_single_trial_equals_run():
    prob = random_instance(1)
    res = run_experiment(ExperimentSpec("sp", problem=prob, trials=1))
    assert res.IT == res.reports[0].outer_iters
    assert res.converged_fraction == 1.0


def test_direct_methods_report():
    prob = random_instance(2)
    for method in ("normal-direct", "qr-cholesky"):
        rep = run_solver(method, prob, SolverConfig())
        assert rep.converged and rep.outer_iters == 0 and rep.rr_final < 1e-12


def test_scd_desk_instance():
    gen = GenSpec(1000, 100, 100, seed=0, target_rho=0.2)
    res = run_experiment(ExperimentSpec("sp-scd", gen=gen, trials=2))
    assert res.converged_fraction == 1.0 and res.IT <= 3


@pytest.mark.parametrize("method", ["sp-rk-rgs", "sp-scd"])
def test_reproducible_across_workers(method):
    gen = GenSpec(60, 10, 10, seed=3, target_rho=0.3)
    runs = [
        run_experiment(ExperimentSpec(method, gen=gen, trials=4, cfg=SolverConfig(seed=5), workers=w))
        for w in (1, 1, 3)
    ]
    for r in runs[1:]:
        assert (r.IT, r.IT_inner, r.RR_final) == (runs[0].IT, runs[0].IT_inner, runs[0].RR_final)
    # trials draw distinct streams
    assert not np.array_equal(runs[0].reports[0].x, runs[0].reports[1].x)


def test_regenerate_draws_distinct_problems():
    gen = GenSpec(30, 5, 5, seed=1, target_rho=0.3)
    res = run_experiment(ExperimentSpec("normal-direct", gen=gen, trials=3, regenerate=True))
    xs = [rep.x for rep in res.reports]
    assert not np.array_equal(xs[0], xs[1])


def test_csv_round_trip(tmp_path):
    rows = [
        ResultRow("sp", 43, 13, 30, 13, 1.0, 0.0, 0.1 + 0.2, 0.0, 1 / 3 * 1e-7, 1.0, None),
        ResultRow("ussor", 43, 13, 30, 13, 3.0, 0.0, 1974.0, 0.0, 2.5e-8, 0.9, 3.529411764705882),
    ]
    path = tmp_path / "out.csv"
    export_csv(rows, path)
    lines = path.read_text().splitlines()
    assert lines[0].split(",") == CSV_COLUMNS
    assert CSV_COLUMNS == ["method", "m", "n", "p", "q", "IT", "IT_inner", "CPU", "CPU_inner",
                           "RR_final", "converged_fraction", "speedup"]
    assert import_csv(path) == rows


def test_csv_empty_and_single(tmp_path):
    export_csv([], tmp_path / "e.csv")
    assert (tmp_path / "e.csv").read_text().splitlines() == [",".join(CSV_COLUMNS)]
    export_csv([row(1.5)], tmp_path / "one.csv")
    assert len((tmp_path / "one.csv").read_text().splitlines()) == 2
    assert import_csv(tmp_path / "one.csv") == [row(1.5)]
