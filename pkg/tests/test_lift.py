import random

import pytest
import sympy

from schubvan.errors import MalformedInput, NotForwardSolvable, TooLarge
from schubvan.ff import MERSENNE_61
from schubvan.lift import (
    SINK_MINUS,
    SINK_PLUS,
    SOURCE,
    PolySystem,
    det_lifted,
    det_lifted_phi,
    evaluate_lifted,
    forward_solve,
    leibniz_det,
    mv_counts,
    mv_graph,
    phi_size,
    power_chain,
    read_polysys,
    signed_path_sum,
    write_polysys,
)
from schubvan.poly import SparsePoly

x = SparsePoly.var


def assignment(matrix):
    n = len(matrix)
    return {f"x_{i + 1}_{j + 1}": matrix[i][j] for i in range(n) for j in range(n)}


def test_phi_examples():
    # bit length is ceil(log2(|c|+1)) + 1, so +-1 costs 2 bits
    assert phi_size([x(0) - 1]) == 1 + 2 + 2
    assert phi_size([]) == 0
    assert phi_size([x(0) ** 2 - x(1)]) == 2 + 2 + 2
    assert phi_size([3 * x(0) + 4]) == 1 + 3 + 4


def test_system_validation():
    with pytest.raises(MalformedInput):
        PolySystem(["a", "a"])
    with pytest.raises(MalformedInput):
        PolySystem(["A"])
    s = PolySystem(["a"], ["p"])
    with pytest.raises(MalformedInput):
        s.add(x(5))


def test_power_chain():
    one = power_chain(1)
    assert [one.system.format_equation(f) for f in one.system.equations] == [
        "-1*x^2 + 1*y1", "-1*z + 1*y1"
    ]
    lift = power_chain(3)
    assert len(lift.system.equations) == 4
    z, aux = evaluate_lifted(lift, {"x": 2})
    assert z == 256 and aux == {"y1": 4, "y2": 16, "y3": 256}


def test_power_chain_linear_size():
    sizes = [phi_size(power_chain(r).system) for r in range(1, 65)]
    steps = {b - a for a, b in zip(sizes, sizes[1:])}
    assert len(steps) == 1
    assert max(s / r for r, s in enumerate(sizes, start=1)) <= 20


def test_mv_graph_structure():
    for n in range(1, 7):
        g = mv_graph(n)
        assert g.nodes[0] == SOURCE and g.nodes[-2:] == [SINK_PLUS, SINK_MINUS]
        for a, b, _ in g.edges:
            assert g.layer(b) == g.layer(a) + 1
        assert (len(g.nodes), len(g.edges)) == mv_counts(n)
        assert all(wt is None for a, _, wt in g.edges if a == SOURCE)


@pytest.mark.parametrize("n", range(1, 21))
def test_size_law(n):
    g = mv_graph(n)
    assert (len(g.nodes), len(g.edges)) == mv_counts(n)


def test_leibniz():
    assert leibniz_det(1) == x(0)
    assert leibniz_det(2) == x(0) * x(3) - x(1) * x(2)
    d3 = leibniz_det(3)
    assert sorted(c for _, c in d3.items()) == [-1, -1, -1, 1, 1, 1]
    with pytest.raises(TooLarge):
        leibniz_det(7)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_signed_path_sum_is_det(n):
    assert signed_path_sum(mv_graph(n)) == leibniz_det(n)


def test_sink_flip_breaks_identity():
    assert signed_path_sum(mv_graph(3, flip_sinks=True)) == -leibniz_det(3)


def test_det_lifted_examples():
    z, _ = evaluate_lifted(det_lifted(2), assignment([[1, 2], [3, 4]]))
    assert z == -2
    z, _ = evaluate_lifted(det_lifted(2), assignment([[1, 0], [0, 1]]))
    assert z == 1
    lift = det_lifted(1)
    for v in (-3, 0, 7):
        assert evaluate_lifted(lift, {"x_1_1": v})[0] == v


@pytest.mark.parametrize("n", range(1, 6))
def test_det_lifted_exact_integers(n):
    rng = random.Random(n)
    lift = det_lifted(n)
    for _ in range(10):
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert evaluate_lifted(lift, assignment(m))[0] == sympy.Matrix(m).det(method="bareiss")


@pytest.mark.parametrize("n", range(1, 9))
def test_det_lifted_mod_p(n):
    rng = random.Random(100 + n)
    p = MERSENNE_61
    lift = det_lifted(n)
    for _ in range(25):
        m = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        assert evaluate_lifted(lift, assignment(m), p)[0] == sympy.Matrix(m).det(method="bareiss") % p


def test_projection_property():
    """Aux values found by forward evaluation satisfy every equation of the lift."""
    rng = random.Random(7)
    lift = det_lifted(3)
    sys_ = lift.system
    for _ in range(50):
        m = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        z, aux = evaluate_lifted(lift, assignment(m))
        values = {**assignment(m), **aux, "z": z}
        vec = [values[name] for name in sys_.names]
        assert all(f.evaluate(vec) == 0 for f in sys_.equations)


def test_phi_closed_form():
    for n in range(1, 9):
        assert phi_size(det_lifted(n).system) == det_lifted_phi(n)


def test_polysys_round_trip():
    lift = det_lifted(2)
    text = write_polysys(lift.system)
    assert text.startswith("POLYSYS 1\nVAR ")
    back = read_polysys(text)
    assert back.variables == lift.system.variables
    assert back.equations == lift.system.equations
    assert write_polysys(back) == text


def test_polysys_params_and_names():
    s = PolySystem(["a_1"], ["alpha"])
    s.add(s.term("a_1", "alpha") - 3)
    text = write_polysys(s)
    assert text == "POLYSYS 1\nVAR a_1\nPARAM alpha\nEQ 1*a_1*alpha - 3\n"
    assert read_polysys(text).parameters == ["alpha"]


def test_forward_solve_rejects():
    s = PolySystem(["a", "b"])
    s.add(s.term("a", "b") - 1)
    with pytest.raises(NotForwardSolvable):
        forward_solve(s, {})
    s = PolySystem(["a"])
    s.add(s.term(("a", 2)) - 4)
    with pytest.raises(NotForwardSolvable):
        forward_solve(s, {})
    with pytest.raises(NotForwardSolvable):
        evaluate_lifted(det_lifted(2), {"x_1_1": 1})


def test_forward_solve_reports_checks():
    s = PolySystem(["a"])
    s.add(s.term("a") - 2)
    s.add(s.term("a") - 3)
    res = forward_solve(s, {})
    assert res.values == {"a": 2} and res.violated == [1] and not res.satisfied
