"""The operator layer: deformed derivatives, su(1,1) triples, invariants."""

from fractions import Fraction

import pytest

from racah_dunkl import (
    ImageEscapesSpan,
    ParameterSet,
    Polynomial,
    angular,
    casimir,
    dunkl,
    euler,
    gamma,
    laplace,
    materialize,
    monomial_basis,
    norm_square_mul,
    racah_f,
    racah_f_from_angular,
    reflection,
    su11_triple,
)

PARAMS = ParameterSet.make(["1/2", "1/3", "1/4"])


def P(n, text):
    return Polynomial.from_text(n, text)


def test_dunkl_examples():
    t1 = dunkl(PARAMS, 1)
    x1 = Polynomial.variable(3, 1)
    # derivative gives 1, reflection-difference gives 2 mu_1
    assert t1(x1) == Polynomial.constant(3, 2)
    assert t1(x1 * x1) == P(3, "2 * x1")
    assert t1(Polynomial.constant(3, 7)).is_zero


def test_dunkl_matches_composite_formula():
    # T_i p = d_i p + mu_i * (p - r_i p) / x_i on arbitrary inputs
    for i in (1, 2, 3):
        t = dunkl(PARAMS, i)
        mu = PARAMS.mu_of(i)
        for exps in monomial_basis(3, 4):
            p = Polynomial.monomial(3, exps, Fraction(3, 7))
            odd_part = p - p.reflect(i)
            expected = p.partial_derivative(i)
            if not odd_part.is_zero:
                expected = expected + odd_part.divide_by_coordinate(i).scale(mu)
            assert t(p) == expected


def test_dunkl_operators_commute():
    t1, t2 = dunkl(PARAMS, 1), dunkl(PARAMS, 2)
    for exps in monomial_basis(3, 5):
        p = Polynomial.monomial(3, exps)
        assert t1(t2(p)) == t2(t1(p))


def test_laplace_examples():
    lap1 = laplace(PARAMS, (1,))
    x1 = Polynomial.variable(3, 1)
    assert lap1(x1 * x1) == Polynomial.constant(3, 4)  # 2(1 + 2 mu_1)
    lap = laplace(PARAMS, (1, 2, 3))
    assert lap(x1).is_zero
    assert lap(Polynomial.one(3)).is_zero


def test_norm_square_and_euler():
    nrm = norm_square_mul((1, 2), 2)
    assert nrm(Polynomial.one(2)) == P(2, "1 * x1^2 + 1 * x2^2")
    assert norm_square_mul((1,), 2)(Polynomial.variable(2, 1)) == P(2, "1 * x1^3")
    twice = nrm(nrm(Polynomial.one(2)))
    assert twice == P(2, "1 * x1^2 + 1 * x2^2") * P(2, "1 * x1^2 + 1 * x2^2")

    e12 = euler((1, 2), 3)
    assert e12(P(3, "1 * x1 x2^2")) == P(3, "3 * x1 x2^2")
    assert euler((2,), 3)(P(3, "1 * x1^3")).is_zero
    assert e12(Polynomial.one(3)).is_zero


def test_gamma_examples():
    assert gamma(ParameterSet.make(["1/2", "1/2"]), (1, 2)) == 2
    assert gamma(ParameterSet.make(["1/3"]), (1,)) == Fraction(5, 6)
    with pytest.raises(ValueError):
        gamma(PARAMS, ())
    with pytest.raises(ValueError):
        gamma(PARAMS, (0, 1))


def test_su11_constant_action():
    a0, _, _ = su11_triple(PARAMS, (1, 2))
    gam = gamma(PARAMS, (1, 2))
    assert a0(Polynomial.one(3)) == Polynomial.constant(3, gam / 2)


def test_su11_brackets_small():
    a0, jp, jm = su11_triple(PARAMS, (1, 3))
    for k in range(4):
        for exps in monomial_basis(3, k):
            p = Polynomial.monomial(3, exps)
            assert a0(jp(p)) - jp(a0(p)) == jp(p)
            assert a0(jm(p)) - jm(a0(p)) == -jm(p)
            assert jm(jp(p)) - jp(jm(p)) == a0(p).scale(2)


def test_casimir_single_index_closed_form():
    for i in (1, 2, 3):
        ci = casimir(PARAMS, (i,))
        mu = PARAMS.mu_of(i)
        for exps in monomial_basis(3, 3):
            p = Polynomial.monomial(3, exps)
            expected = (
                p.scale(mu * mu - Fraction(3, 4)) - p.reflect(i).scale(mu)
            ).scale(Fraction(1, 4))
            assert ci(p) == expected


def test_casimir_constant():
    ca = casimir(PARAMS, (1, 2))
    gam = gamma(PARAMS, (1, 2))
    assert ca(Polynomial.one(3)) == Polynomial.constant(3, (gam * gam - 2 * gam) / 4)


def test_casimir_commutes_with_full_laplacian():
    ca = casimir(PARAMS, (1, 3))
    lap = laplace(PARAMS, (1, 2, 3))
    for exps in monomial_basis(3, 4):
        p = Polynomial.monomial(3, exps)
        assert ca(lap(p)) == lap(ca(p))


def test_casimir_central_for_its_own_set():
    # [C_A, Lap_A] = 0 and [C_A, |x_A|^2] = 0
    A = (1, 3)
    ca = casimir(PARAMS, A)
    lap_a = laplace(PARAMS, A)
    nrm_a = norm_square_mul(A, 3)
    for k in range(5):
        for exps in monomial_basis(3, k):
            p = Polynomial.monomial(3, exps)
            assert ca(lap_a(p)) == lap_a(ca(p))
            assert ca(nrm_a(p)) == nrm_a(ca(p))


def test_angular_examples():
    l12 = angular(PARAMS, 1, 2)
    x1 = Polynomial.variable(3, 1)
    assert l12(x1) == P(3, "-2 * x2")  # -x2 (1 + 2 mu_1)
    l21 = angular(PARAMS, 2, 1)
    for exps in monomial_basis(3, 3):
        p = Polynomial.monomial(3, exps)
        assert l12(p) == -l21(p)
    with pytest.raises(ValueError):
        angular(PARAMS, 2, 2)


def test_angular_commutator_identity():
    # [L_ij, L_jk] = L_ik (1 + 2 mu_j r_j)
    l12 = angular(PARAMS, 1, 2)
    l23 = angular(PARAMS, 2, 3)
    l13 = angular(PARAMS, 1, 3)
    mu2 = PARAMS.mu_of(2)
    r2 = reflection(2)
    for k in range(4):
        for exps in monomial_basis(3, k):
            p = Polynomial.monomial(3, exps)
            lhs = l12(l23(p)) - l23(l12(p))
            rhs = l13(p + r2(p).scale(2 * mu2))
            assert lhs == rhs


def test_pair_invariant_angular_expression():
    # 4 C_ij + L_ij^2 - (mu_i r_i + mu_j r_j)^2 + 1 = 0
    c12 = casimir(PARAMS, (1, 2))
    l12 = angular(PARAMS, 1, 2)
    mu1, mu2 = PARAMS.mu_of(1), PARAMS.mu_of(2)
    for exps in monomial_basis(3, 4):
        p = Polynomial.monomial(3, exps)
        square = (
            p.scale(mu1 * mu1 + mu2 * mu2)
            + p.reflect(1).reflect(2).scale(2 * mu1 * mu2)
        )
        assert c12(p).scale(4) + l12(l12(p)) - square + p == Polynomial.zero(3)


def test_f_from_commutator_matches_angular_expansion():
    f_comm = racah_f(PARAMS, 1, 2, 3)
    f_ang = racah_f_from_angular(PARAMS, 1, 2, 3)
    f_rev = racah_f(PARAMS, 3, 2, 1)
    for exps in monomial_basis(3, 3):
        p = Polynomial.monomial(3, exps)
        assert f_comm(p) == f_ang(p)
        assert f_rev(p) == -f_comm(p)


def test_generator_index_collisions_rejected():
    from racah_dunkl import racah_p

    with pytest.raises(ValueError):
        racah_p(PARAMS, 2, 2)
    with pytest.raises(ValueError):
        racah_f(PARAMS, 1, 1, 2)
    with pytest.raises(ValueError):
        racah_f_from_angular(PARAMS, 1, 2, 2)


def test_subset_additivity_on_triple():
    # C_{123} = C_12 + C_13 + C_23 - C_1 - C_2 - C_3 on degree 4
    c123 = casimir(PARAMS, (1, 2, 3))
    parts = [casimir(PARAMS, s) for s in ((1, 2), (1, 3), (2, 3))]
    singles = [casimir(PARAMS, (i,)) for i in (1, 2, 3)]
    for exps in monomial_basis(3, 4):
        p = Polynomial.monomial(3, exps)
        total = Polynomial.zero(3)
        for op in parts:
            total = total + op(p)
        for op in singles:
            total = total - op(p)
        assert c123(p) == total


def test_materialize_identity():
    from racah_dunkl import RationalMatrix, identity_op

    om = materialize(identity_op(), 2, 2)
    assert om.matrix == RationalMatrix.identity(3)
    assert om.degree == 2


def test_materialize_rejects_degree_changing_without_basis():
    lap = laplace(PARAMS, (1, 2, 3))
    with pytest.raises(ImageEscapesSpan):
        materialize(lap, 3, 2)


def test_materialize_on_basis_and_escape():
    c12 = casimir(PARAMS, (1, 2))
    from racah_dunkl import build_basis_tower

    basis = [el.poly for el in build_basis_tower(PARAMS, 3)]
    om = materialize(c12, 3, 3, basis)
    assert om.matrix.shape == (len(basis), len(basis))
    # multiplication by x1 leaves the harmonic span
    from racah_dunkl import coordinate

    with pytest.raises(ImageEscapesSpan):
        materialize(coordinate(1), 3, 3, basis)


def test_operator_algebra_sugar():
    t1 = dunkl(PARAMS, 1)
    x1 = Polynomial.variable(3, 1)
    doubled = 2 * t1
    assert doubled(x1) == Polynomial.constant(3, 4)
    squared = t1 * t1
    assert squared(x1 * x1) == Polynomial.constant(3, 4)
    assert (t1**2)(x1 * x1) == Polynomial.constant(3, 4)
    comm = t1.commutator(t1)
    assert comm(x1 * x1).is_zero
