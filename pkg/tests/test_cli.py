import pytest

from schubvan.cli import main
from schubvan.ff import MERSENNE_61
from schubvan.lift import phi_size, read_polysys
from schubvan.purbhoo import hnp_generic_satisfiable


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "1432")
    assert code == 0
    assert out == "1*x1^2*x2 + 1*x1^2*x3 + 1*x1*x2^2 + 1*x1*x2*x3 + 1*x2^2*x3\n"


def test_pipedreams(capsys):
    assert run(capsys, "pipedreams", "1432")[1] == "5\n"
    code, out, _ = run(capsys, "pipedreams", "21", "--show")
    assert out == "1\n# 1: 1*x1\n+\n"


def test_coeff_and_expand(capsys):
    assert run(capsys, "coeff", "213", "213", "312")[1] == "1\n"
    assert run(capsys, "expand", "213", "132")[1] == "231\t1\n312\t1\n"


def test_malformed(capsys):
    code, _, err = run(capsys, "poly", "1332")
    assert code == 2 and "error" in err


def test_vanish_methods(capsys):
    _, out, _ = run(capsys, "vanish", "213", "213", "231", "--method", "exact")
    assert out.startswith("decision=ZERO method=exact")
    _, out, _ = run(capsys, "vanish", "321", "321", "321")
    assert out.startswith("decision=ZERO method=filter dimension=fail")
    _, out, _ = run(capsys, "vanish", "213", "213", "312")
    assert out.startswith("decision=NONZERO method=exact coefficient=1")
    code, _, _ = run(capsys, "vanish", "7654321", "1", "7654321", "--method", "exact")
    assert code == 2


def test_vanish_purbhoo_replayable(capsys):
    args = ("vanish", "213", "213", "312", "--method", "purbhoo", "--seed", "7")
    code, first, _ = run(capsys, *args)
    assert code == 0
    assert first.startswith(f"decision=NONZERO_CERTIFIED samples=1 prime={MERSENNE_61} seed=7")
    assert "witness" in first
    assert run(capsys, *args)[1] == first


def test_vanish_auto_large_uses_randomized(capsys):
    _, out, _ = run(capsys, "vanish", "21354", "13254", "32154")
    assert out.startswith("decision=")
    assert "error_bound=" in out


def test_bad_prime_exit(capsys):
    code, _, _ = run(capsys, "vanish", "213", "213", "312", "--method", "purbhoo", "--prime", "97")
    assert code == 2


def test_lift_det(tmp_path, capsys):
    target = tmp_path / "d2.ps"
    code, out, _ = run(capsys, "lift-det", "2", "-o", str(target))
    assert code == 0
    system = read_polysys(target.read_text())
    assert out.startswith(f"phi={phi_size(system)} variables={len(system.variables)} parameters=0")
    assert any(name.startswith("y_") for name in system.variables)


def test_lift_det_one_stdout(capsys):
    code, out, err = run(capsys, "lift-det", "1")
    assert code == 0 and out.startswith("POLYSYS 1\n") and err.startswith("phi=")
    assert "EQ -1*y_0_1_1_0*x_1_1 + 1*y_tp" in out


def test_emit_hnp(tmp_path, capsys):
    target = tmp_path / "s.ps"
    code, out, _ = run(capsys, "emit-hnp", "213", "213", "231", "-o", str(target))
    assert code == 0 and out.startswith("phi=")
    assert hnp_generic_satisfiable(read_polysys(target.read_text()))
    assert run(capsys, "emit-hnp", "321", "321", "321")[0] == 2


def test_io_error(capsys):
    assert run(capsys, "lift-det", "2", "-o", "/nonexistent/dir/out.ps")[0] == 4


def test_selftest_quick_deterministic(capsys):
    code, first, _ = run(capsys, "selftest", "--level", "quick")
    assert code == 0 and first.rstrip().endswith("selftest quick: ok")
    assert run(capsys, "selftest", "--level", "quick")[1] == first


@pytest.mark.parametrize("level", ["quick", "full"])
def test_selftest_catches_sink_flip(capsys, level):
    code, out, _ = run(capsys, "selftest", "--level", level, "--inject-sink-flip")
    assert code == 1
    assert "FAIL leibniz-equality" in out
