import math

import pytest

from sphersum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# sum

def test_sum_identity_example(capsys):
    code, out, err = run(capsys, "sum", "--k", "2", "--x", "2", "--f", "tau",
                         "--mode", "gcd", "--domain", "z",
                         "--method", "identity")
    assert code == 0
    assert out == "8\n"
    assert err.startswith("# sphersum sum k=2 x=2")
    assert "elapsed" in err


def test_sum_methods_agree(capsys):
    results = []
    for method in ("brute", "identity"):
        code, out, _ = run(capsys, "sum", "--k", "2", "--x", "500",
                           "--f", "phi", "--method", method)
        assert code == 0
        results.append(out)
    assert results[0] == results[1]


def test_sum_lcm_naturals(capsys):
    code, out, _ = run(capsys, "sum", "--k", "2", "--x", "8", "--f", "id",
                       "--mode", "lcm", "--domain", "n",
                       "--method", "convolution")
    assert code == 0
    assert out == "7\n"


def test_sum_log_function_prints_float(capsys):
    code, out, _ = run(capsys, "sum", "--k", "2", "--x", "100", "--f", "log",
                       "--domain", "z", "--method", "identity")
    assert code == 0
    assert "." in out
    float(out)


def test_sum_identity_rejects_naturals(capsys):
    code, _, err = run(capsys, "sum", "--k", "2", "--x", "100", "--f", "tau",
                       "--domain", "n", "--method", "identity")
    assert code == 1 and "usage error" in err


# ---------------------------------------------------------------------------
# tabulate and rk

def test_tabulate_csv(capsys):
    code, out, _ = run(capsys, "tabulate", "--f", "tau", "--n", "6")
    assert code == 0
    assert out.splitlines() == ["n,value", "1,1", "2,2", "3,2", "4,3",
                                "5,2", "6,4"]


def test_tabulate_convolution(capsys):
    code, out, _ = run(capsys, "tabulate", "--f", "mu*tau", "--n", "5")
    assert code == 0
    assert out.splitlines()[1:] == ["1,1", "2,1", "3,1", "4,1", "5,1"]


def test_rk_csv(capsys):
    code, out, _ = run(capsys, "rk", "--k", "2", "--n", "5")
    assert code == 0
    assert out.splitlines() == ["n,rk", "0,1", "1,4", "2,4", "3,0",
                                "4,4", "5,8"]


# ---------------------------------------------------------------------------
# constant

def test_constant_lcm_id(capsys):
    code, out, _ = run(capsys, "constant", "C", "--f", "id", "--k", "2",
                       "--tol", "1e-9")
    assert code == 0
    value, bound = out.split()
    assert float(value) == pytest.approx(0.7307630, abs=1e-6)
    assert 0 < float(bound) <= 1e-9


def test_constant_alternating_mean_exact(capsys):
    code, out, _ = run(capsys, "constant", "A", "--k", "7")
    assert code == 0
    assert out == "1/7 0.0\n"


def test_constant_zeta_and_volume(capsys):
    code, out, _ = run(capsys, "constant", "zeta", "--s", "2")
    assert code == 0
    assert float(out.split()[0]) == pytest.approx(math.pi ** 2 / 6)
    code, out, _ = run(capsys, "constant", "V", "--k", "3")
    assert float(out.split()[0]) == pytest.approx(4 * math.pi / 3)
    code, out, _ = run(capsys, "constant", "I", "--k", "2")
    assert float(out.split()[0]) == pytest.approx(math.pi / 4)


def test_constant_series_and_mean(capsys):
    code, out, _ = run(capsys, "constant", "D", "--f", "one", "--k", "2")
    assert code == 0
    assert float(out.split()[0]) == pytest.approx(math.pi ** 2 / 6, abs=1e-5)
    code, out, _ = run(capsys, "constant", "B", "--f", "tau", "--k", "2")
    assert code == 0
    assert float(out.split()[0]) == pytest.approx(math.pi ** 2 / 6, abs=1e-8)


def test_constant_prime_sums(capsys):
    code, out, _ = run(capsys, "constant", "K", "--f", "omega", "--k", "2")
    assert code == 0
    assert float(out.split()[0]) == pytest.approx(0.4522474, abs=1e-4)
    code, out2, _ = run(capsys, "constant", "HS", "--S", "{1}", "--eta", "0",
                        "--k", "2")
    assert code == 0
    assert float(out2.split()[0]) == pytest.approx(float(out.split()[0]),
                                                   abs=1e-4)


# ---------------------------------------------------------------------------
# verify

def test_verify_writes_reports(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    code, out, err = run(capsys, "verify", "--theorem", "lattice_count",
                         "--grid", "25:400:4", "--out", str(out_dir),
                         "--threads", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,exact,main_term,residual,normalized_residual"
    assert len(lines) == 4
    assert lines[1].startswith("25,81,")
    base = out_dir / "lattice_count_k2_count"
    assert base.with_suffix(".csv").exists()
    assert base.with_suffix(".json").exists()
    assert base.with_suffix(".png").exists()
    assert base.with_suffix(".csv").read_text() == out
    assert "# fitted residual exponent" in err


def test_verify_no_figures(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    code, out, _ = run(capsys, "verify", "--theorem", "cor_tau",
                       "--grid", "100:1000:10", "--domain", "n",
                       "--out", str(out_dir), "--no-figures",
                       "--threads", "1")
    assert code == 0
    base = out_dir / "cor_tau_k2_tau"
    assert base.with_suffix(".csv").exists()
    assert base.with_suffix(".json").exists()
    assert not base.with_suffix(".png").exists()


def test_verify_stdout_deterministic_across_threads(tmp_path, capsys):
    argv = ["verify", "--theorem", "th6_lcm_A0", "--grid", "100:1600:2"]
    outs = []
    for threads in ("1", "8"):
        code, out, _ = run(capsys, *argv, "--threads", threads,
                           "--out", str(tmp_path / threads), "--no-figures")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


# ---------------------------------------------------------------------------
# exit codes

def test_exit_usage_errors(capsys):
    code, _, _ = run(capsys, "sum", "--k", "2", "--x", "4", "--f", "tau",
                     "--method", "bogus")
    assert code == 1
    code, _, err = run(capsys, "sum", "--k", "2", "--x", "-1", "--f", "tau")
    assert code == 1 and "usage error" in err
    code, _, _ = run(capsys, "verify", "--theorem", "not_a_theorem",
                     "--grid", "10:100:2")
    assert code == 1
    code, _, err = run(capsys, "constant", "D", "--f", "tau")
    assert code == 1 and "usage error" in err
    code, _, err = run(capsys, "constant", "zeta")
    assert code == 1
    code, _, err = run(capsys, "verify", "--theorem", "cor_tau",
                       "--grid", "100:1000")
    assert code == 1


def test_exit_computational_errors(capsys):
    code, _, err = run(capsys, "sum", "--k", "3", "--x", "10000000",
                       "--f", "tau", "--method", "brute")
    assert code == 2 and "computation failed" in err
    code, _, err = run(capsys, "constant", "C", "--f", "id", "--k", "2",
                       "--tol", "1e-30")
    assert code == 2 and "computation failed" in err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


# ---------------------------------------------------------------------------
# selftest

def test_selftest_all_pass(capsys):
    code, out, _ = run(capsys, "selftest", "--threads", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert all(line.startswith("PASS ") for line in lines)


def test_selftest_deterministic_across_threads(capsys):
    code1, out1, _ = run(capsys, "selftest", "--threads", "1")
    code8, out8, _ = run(capsys, "selftest", "--threads", "8")
    assert (code1, code8) == (0, 0)
    assert out1 == out8
