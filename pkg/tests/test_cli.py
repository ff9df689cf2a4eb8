import csv
import subprocess
import sys

import numpy as np

from ilsplit import IlsProblem, import_csv, solve_normal_direct
from ilsplit.cli import main
from ilsplit.mmio import read_problem_dir, read_vector, write_problem


def test_bench_writes_csv(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code = main(["bench", "--p", "200", "--q", "20", "--n", "20", "--target-rho", "0.2",
                 "--method", "sp,sp-scd,ussor", "--omega", "0.5", "--omega-hat", "1.0",
                 "--trials", "2", "--out", str(out)])
    assert code == 0
    rows = import_csv(out)
    assert [r.method for r in rows] == ["sp", "sp-scd", "ussor"]
    assert rows[2].speedup == 1.0
    assert "flops" in capsys.readouterr().out


def test_nonconvergence_exit_code():
    code = main(["bench", "--p", "50", "--q", "10", "--n", "10", "--target-rho", "0.5",
                 "--max-outer", "1", "--tol", "1e-14", "--trials", "1"])
    assert code == 2


def test_error_exit_code(capsys):
    # literal nu = 7 is not well posed at this size
    assert main(["bench", "--p", "20", "--q", "10", "--n", "10", "--trials", "1"]) == 1
    assert "error" in capsys.readouterr().err
    assert main(["bench", "--p", "20", "--q", "5", "--n", "5", "--target-rho", "0.2",
                 "--method", "ussor"]) == 1


def test_generate_then_solve(tmp_path):
    d = tmp_path / "prob"
    assert main(["generate", "--p", "40", "--q", "6", "--n", "6", "--target-rho", "0.3",
                 "--seed", "9", "--dir", str(d)]) == 0
    prob = read_problem_dir(d)
    x_out = tmp_path / "x.mtx"
    code = main(["solve", "--a1", str(d / "A1.mtx"), "--b1", str(d / "b1.mtx"),
                 "--a2", str(d / "A2.mtx"), "--b2", str(d / "b2.mtx"),
                 "--method", "qr-cholesky", "--trials", "1", "--x-out", str(x_out)])
    assert code == 0
    np.testing.assert_allclose(read_vector(x_out), solve_normal_direct(prob), rtol=1e-10)


def test_solve_ols_files(tmp_path):
    write_problem(IlsProblem(np.diag([2.0, 1.0]), np.zeros((0, 2)), [2.0, 3.0], []), tmp_path)
    out = tmp_path / "r.csv"
    code = main(["solve", "--a1", str(tmp_path / "A1.mtx"), "--b1", str(tmp_path / "b1.mtx"),
                 "--method", "sp-rk-rgs", "--trials", "1", "--out", str(out)])
    assert code == 0
    with open(out) as fh:
        rec = next(csv.DictReader(fh))
    assert rec["q"] == "0"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ilsplit", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "bench" in res.stdout
