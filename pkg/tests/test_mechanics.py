import random
from fractions import Fraction

import pytest
import sympy as sp

from nambu3d import frenet
from nambu3d.forms import KForm, VecField, d, div, grad, interior_product, rot, wedge
from nambu3d.mechanics import (
    HALF,
    UNIT,
    NambuPair,
    VectorLagrangian,
    bivector_field,
    el_residual,
    fit_scalar,
    is_conservative,
    lagrange_multipliers,
    multiplier_flow_report,
    nambu_bracket,
    nambu_flow_field,
    on_shell_derivative,
    rot_L_check,
    vector_bracket,
    vector_lagrangian_from_h,
    vh_flow_field,
)
from nambu3d.poly import EXTENDED, POSITION, Poly
from nambu3d.randomized import random_field, random_poly

from conftest import SV, SX, to_sympy

x0, x1, x2 = Poly.variables()
X0, X1, X2, V0, V1, V2 = Poly.variables(EXTENDED)
H1, H2 = frenet.H1, frenet.H2
FIELD = VecField(x1, x2 - x0, -x1)


def df(p):
    return d(KForm.function(p))


# -- Nambu bracket -------------------------------------------------------


def test_bracket_frenet_first_component():
    M = sp.Matrix([[1, 0, 1], [SX[2], -SX[1], SX[0]], [1, 0, 0]])
    assert sp.expand(M.det()) == SX[1]
    assert nambu_bracket(H1, H2, x0, UNIT) == x1


def test_bracket_against_determinant_oracle():
    r = random.Random(21)
    for _ in range(25):
        H, F, G = (random_poly(r) for _ in range(3))
        M = sp.Matrix([[sp.diff(to_sympy(P), s) for s in SX] for P in (H, F, G)])
        assert to_sympy(nambu_bracket(H, F, G)) == sp.expand(M.det())
        assert nambu_bracket(H, F, G, HALF) == nambu_bracket(H, F, G) / 2


def test_bracket_repeated_argument():
    F, G = x0 * x1 + x2**3, x1 - x2
    assert nambu_bracket(F, F, G).is_zero()


def test_hamiltonians_conserved():
    assert nambu_bracket(H1, H2, H1).is_zero()
    assert nambu_bracket(H1, H2, H2).is_zero()


def test_antisymmetry_and_leibniz(rng):
    for _ in range(100):
        H, F, G, K = (random_poly(rng, 2, 3) for _ in range(4))
        b = nambu_bracket(H, F, G)
        assert nambu_bracket(F, H, G) == -b
        assert nambu_bracket(H, G, F) == -b
        assert nambu_bracket(H, F, G * K) == G * nambu_bracket(H, F, K) + K * b


def test_convention_parsing():
    assert nambu_bracket(H1, H2, x0, "half") == x1 / 2


# -- flow fields --------------------------------------------------------


def test_nambu_flow_field_frenet():
    assert nambu_flow_field(frenet.PAIR, UNIT) == FIELD
    assert nambu_flow_field(frenet.PAIR, HALF) == VecField(x1 / 2, (x2 - x0) / 2, -x1 / 2)


def test_nambu_flow_field_equal_hamiltonians():
    assert nambu_flow_field(NambuPair(H2, H2)).is_zero()


def test_nambu_flow_divergence_free(rng):
    for _ in range(100):
        pair = NambuPair(random_poly(rng), random_poly(rng))
        assert div(nambu_flow_field(pair)).is_zero()


def test_vector_bracket():
    h = frenet.VECTOR_HAMILTONIAN
    assert vector_bracket(h, x0) == x1
    assert vector_bracket(h, Poly.const(5)).is_zero()
    assert vector_bracket(h, H2).is_zero()
    # oracle: X . grad H2 with sympy
    expr = sum(to_sympy(c) * sp.diff(to_sympy(H2), s) for c, s in zip(FIELD, SX))
    assert sp.expand(expr) == 0


def test_vh_flow_field():
    assert vh_flow_field(frenet.VECTOR_HAMILTONIAN) == FIELD
    assert vh_flow_field(grad(x0**2 * x1 - x2)).is_zero()
    r = random.Random(2)
    for _ in range(20):
        assert div(vh_flow_field(random_field(r))).is_zero()


def test_formulations_agree():
    assert nambu_flow_field(frenet.PAIR) == vh_flow_field(frenet.VECTOR_HAMILTONIAN) == frenet.FIELD


# -- bivector field ------------------------------------------------------


def test_bivector_consistency_frenet():
    for conv in (UNIT, HALF):
        P = bivector_field(H1, conv)
        got = interior_product(P, wedge(df(H2), df(x0)))
        assert got == KForm.function(nambu_bracket(H1, H2, x0, conv))


def test_bivector_consistency_random():
    r = random.Random(13)
    for _ in range(40):
        H, F, G = (random_poly(r) for _ in range(3))
        conv = r.choice((UNIT, HALF))
        got = interior_product(bivector_field(H, conv), wedge(df(F), df(G)))
        assert got[()] == nambu_bracket(H, F, G, conv)


def test_bivector_components():
    assert bivector_field(H1).dual == VecField(1, 0, 1)
    assert bivector_field(Poly.const(4)).is_zero()
    assert bivector_field(H1, HALF).dual == VecField(Fraction(1, 2), 0, Fraction(1, 2))


# -- conservativity --------------------------------------------------------


def test_is_conservative():
    assert is_conservative(FIELD) == (True, Poly.zero())
    ok, res = is_conservative(VecField(x0, 0, 0))
    assert not ok and res == 1
    assert is_conservative(rot(random_field(random.Random(1))))[0]


# -- vector Lagrangian and multipliers ------------------------------------------


def test_lagrangian_from_paper_h():
    h = frenet.VECTOR_HAMILTONIAN
    hs = [c.convert(EXTENDED) for c in h]
    L = vector_lagrangian_from_h(h)
    # (z y' - y z' - h1, x z' - z x' - h2, y x' - x y' - h3)
    assert L.L1 == X2 * V1 - X1 * V2 - hs[0]
    assert L.L2 == X0 * V2 - X2 * V0 - hs[1]
    assert L.L3 == X1 * V0 - X0 * V1 - hs[2]
    assert L == frenet.LAGRANGIAN


def test_lagrangian_kinematic_part():
    L = vector_lagrangian_from_h(VecField.zero())
    for Li in L:
        for v in ("v0", "v1", "v2"):
            assert Li.diff(v).degree() <= 1
            assert not any(Li.diff(v).depends_on(w) for w in ("v0", "v1", "v2"))


def test_multipliers_paper():
    lam = lagrange_multipliers(frenet.LAGRANGIAN)
    assert lam == VecField(-x0, -x1, -x2)


def test_multipliers_oracle():
    Ls = [to_sympy(c) for c in frenet.LAGRANGIAN]
    lam1 = (sp.diff(Ls[2], SV[1]) - sp.diff(Ls[1], SV[2])) / 2
    assert sp.expand(lam1) == -SX[0]


def test_multipliers_zero_and_linear():
    assert lagrange_multipliers(VectorLagrangian(0, 0, 0)) == VecField.zero()
    c = Fraction(-3, 7)
    assert lagrange_multipliers(frenet.LAGRANGIAN.scale(c)) == lagrange_multipliers(frenet.LAGRANGIAN).scale(c)


def test_multipliers_with_velocity_dependence():
    L = VectorLagrangian(V1 * V2, Poly.zero(EXTENDED), Poly.zero(EXTENDED))
    lam = lagrange_multipliers(L)
    assert isinstance(lam, tuple) and lam[1] == V1 / 2


def test_multiplier_flow_report():
    lam = lagrange_multipliers(frenet.LAGRANGIAN)
    rep = multiplier_flow_report(lam, frenet.VECTOR_HAMILTONIAN, FIELD)
    assert rep.constant == -1
    assert multiplier_flow_report(VecField.zero(), frenet.VECTOR_HAMILTONIAN, FIELD).constant == 0
    bad = multiplier_flow_report(VecField(x0**2, 0, 0), frenet.VECTOR_HAMILTONIAN, FIELD)
    assert bad.constant is None and not all(r.is_zero() for r in bad.residual)


def test_fit_scalar_degenerate_basis():
    z = Poly.zero()
    assert fit_scalar([z, z], [z, z]).constant == 0
    assert fit_scalar([x0, z], [z, z]).constant is None


# -- Euler-Lagrange ------------------------------------------------------


def test_on_shell_derivative_two_routes():
    """Chain rule before substitution equals Lie derivative after substitution."""
    r = random.Random(17)
    for _ in range(20):
        p = random_poly(r, 3, 4, EXTENDED)
        motion = random_field(r, 2, 2)
        sub = p.substitute({v: c.convert(EXTENDED) for v, c in zip(("v0", "v1", "v2"), motion)}).convert(POSITION)
        assert on_shell_derivative(p, motion) == grad(sub).dot(motion)


@pytest.mark.parametrize("i,k", [(1, 2), (2, 3), (3, 1), (2, 1), (3, 2), (1, 3)])
def test_el_residual_paper(i, k):
    assert el_residual(frenet.LAGRANGIAN, i, k, FIELD).is_zero()


def test_el_residual_hand_check_12():
    L = frenet.LAGRANGIAN
    # 1/2 d/dt(L1_v1 - L2_v0) = 1/2 d/dt(2 x2) -> -x1 on shell
    lhs = on_shell_derivative(L.L1.diff("v1") - L.L2.diff("v0"), FIELD) / 2
    assert lhs == -x1
    rhs = (L.L2.diff("x0") - L.L1.diff("x1")).substitute(
        {"v0": X1, "v1": X2 - X0, "v2": -X1}).convert(POSITION)
    assert rhs == -x1


def test_el_residual_diagonal_and_zero():
    r = random.Random(8)
    L = VectorLagrangian(*(random_poly(r, 3, 4, EXTENDED) for _ in range(3)))
    for i in (1, 2, 3):
        assert el_residual(L, i, i, FIELD).is_zero()
    assert el_residual(VectorLagrangian(0, 0, 0), 1, 2, FIELD).is_zero()


def test_el_residual_off_shell_is_nonzero():
    # not identically satisfied: a different motion breaks it
    assert not el_residual(frenet.LAGRANGIAN, 1, 2, VecField(x1, x0, 0)).is_zero()


def test_el_index_range():
    with pytest.raises(IndexError):
        el_residual(frenet.LAGRANGIAN, 0, 2, FIELD)


# -- rot L check -----------------------------------------------------------


def test_rot_L_check_frenet():
    lam = lagrange_multipliers(frenet.LAGRANGIAN)
    # sympy oracle: curl_x(L) on shell + lambda_dot
    Ls = [to_sympy(c) for c in frenet.LAGRANGIAN]
    shell = dict(zip(SV, [to_sympy(c) for c in FIELD]))
    curl = [sp.diff(Ls[2], SX[1]) - sp.diff(Ls[1], SX[2]),
            sp.diff(Ls[0], SX[2]) - sp.diff(Ls[2], SX[0]),
            sp.diff(Ls[1], SX[0]) - sp.diff(Ls[0], SX[1])]
    lam_dot = [-to_sympy(c) for c in FIELD]
    expected = [sp.expand(c.subs(shell) + ld) for c, ld in zip(curl, lam_dot)]
    got = rot_L_check(frenet.LAGRANGIAN, lam, FIELD)
    assert [to_sympy(c) for c in got] == expected
    assert got.is_zero()


def test_rot_L_check_velocity_only():
    L = VectorLagrangian(V0 * V1, V2, Poly.zero(EXTENDED))
    assert rot_L_check(L, VecField.zero(), FIELD).is_zero()


def test_rot_L_check_linear():
    r = random.Random(31)
    La = VectorLagrangian(*(random_poly(r, 2, 3, EXTENDED) for _ in range(3)))
    Lb = VectorLagrangian(*(random_poly(r, 2, 3, EXTENDED) for _ in range(3)))
    la, lb = random_field(r, 2, 2), random_field(r, 2, 2)
    total = rot_L_check(La + Lb, la + lb, FIELD)
    assert total == rot_L_check(La, la, FIELD) + rot_L_check(Lb, lb, FIELD)
