import json

import pytest
from hypothesis import given, strategies as st

from opimage import (QQ, QQI, AllZeroOrder, ConstCoeffOp, FirstOrderOp, MismatchedContext,
                     NonCommuting, NonConstantLeading, NotIntegrable, Poly,
                     PositiveCharacteristic, apply_lambda, apply_op, commutator_first_order,
                     is_commuting_family, parse_poly, recover_potential, reduce_family,
                     substitute_linear)
from opimage import linalg
from opimage.weyl import transform_op

from conftest import F5, coeffs, polys


def P(src, n=2, field=QQ):
    return parse_poly(src, n, field)


def grad_ops(q):
    return [FirstOrderOp.gradient_op(q, i) for i in range(q.nvars)]


def op(lead, zero, n=2, field=QQ):
    return FirstOrderOp([P(a, n, field) for a in lead], P(zero, n, field))


# application ------------------------------------------------------------------


def test_apply_examples():
    phi = FirstOrderOp.gradient_op(P("z1^2", 1), 0)
    assert apply_op(phi, Poly.one(1)) == P("-2*z1", 1)
    t = P("z1", 1)
    assert apply_op(op(["z1"], "-1", 1), t) == 0
    theta = FirstOrderOp.theta(1, 0)
    assert apply_op(theta, t) == P("u1*z1 - 1", 1)
    assert theta(t) == apply_op(theta, t)


def test_apply_checks_context():
    with pytest.raises(MismatchedContext):
        apply_op(FirstOrderOp.theta(2, 0), Poly.one(1))


def test_lambda_examples():
    assert apply_lambda(ConstCoeffOp(P("u1^2", 1)), P("z1^2", 1)) == 2
    lap = ConstCoeffOp.laplacian(2, QQI)
    assert apply_lambda(lap, P("(z1+i*z2)^2", 2, QQI)) == 0
    assert apply_lambda(ConstCoeffOp(P("u1")), P("z2")) == 0


def test_symbol_must_be_pure_u():
    with pytest.raises(ValueError):
        ConstCoeffOp(P("u1*z1"))


def test_const_coeff_composition_is_symbol_product():
    a, b = ConstCoeffOp(P("u1 + 2*u2^2")), ConstCoeffOp(P("u1*u2 - 1"))
    f = P("z1^4*z2^3 + z1*z2^5")
    assert (a * b)(f) == a(b(f))


@given(lam=polys(2, QQ, 0, 2, 3).filter(bool), f=polys(2, QQ, 6, 0, 5),
       m=st.integers(1, 4))
def test_symbol_power_equals_iteration(lam, f, m):
    L = ConstCoeffOp(lam)
    assert apply_lambda(L, f, m, "iterate") == apply_lambda(L, f, m, "symbol")


# commutators ------------------------------------------------------------------


def test_commutator_examples():
    A, B = grad_ops(P("z1^2 + z2^2"))
    assert not commutator_first_order(A, B).zero_order
    A, B = op(["1", "0"], "-1*z2"), op(["0", "1"], "0")
    c = commutator_first_order(A, B)
    assert c.is_zero_order() and c.zero_order == 1
    assert not commutator_first_order(A, A).zero_order


def test_commutator_rejects_nonconstant_leading():
    with pytest.raises(NonConstantLeading):
        commutator_first_order(op(["z1", "0"], "0"), op(["1", "0"], "0"))


def test_commuting_family_examples():
    assert is_commuting_family(grad_ops(P("z1^3*z2"))) == (True, None)
    assert is_commuting_family([op(["1", "0"], "-1*z2"), op(["0", "1"], "0")]) == (False, (0, 1))
    assert is_commuting_family([op(["1", "0"], "z2")]) == (True, None)


def _random_const_op(data, n=2):
    vec = data.draw(st.lists(coeffs(QQ), min_size=n, max_size=n))
    return FirstOrderOp.constant(vec, data.draw(polys(n, QQ, 4, 0, 4)))


@given(data=st.data())
def test_commutator_antisymmetric_and_matches_composition(data):
    A, B = _random_const_op(data), _random_const_op(data)
    f = data.draw(polys(2, QQ, 4, 0, 4))
    AB, BA = commutator_first_order(A, B), commutator_first_order(B, A)
    assert AB.zero_order == -BA.zero_order
    assert AB(f) == A(B(f)) - B(A(f))


@given(q=polys(3, QQ, 5, 0, 5))
def test_gradient_families_commute(q):
    assert is_commuting_family(grad_ops(q))[0]


# potentials -------------------------------------------------------------------


def test_recover_potential_examples():
    assert recover_potential([P("2*z1"), P("2*z2")]) == P("z1^2 + z2^2")
    assert recover_potential([P("z2"), P("z1")]) == P("z1*z2")
    with pytest.raises(NotIntegrable) as exc:
        recover_potential([P("z2"), Poly.zero(2)])
    assert exc.value.pair == (0, 1)
    with pytest.raises(PositiveCharacteristic):
        recover_potential([Poly.z(1, 0, F5)])


def test_partial_potential_freezes_remaining_variables():
    q = recover_potential([P("2*z1*z3^2", 3)], k=1)
    assert q == P("z1^2*z3^2", 3)


@given(q=polys(3, QQ, 6, 0, 6))
def test_recovered_potential_has_the_right_gradient(q):
    h = q.gradient()
    r = recover_potential(h)
    assert r.gradient() == h
    # normalised: no constant term, so it equals q up to q's constant
    assert r == q - q.coefficient((0, 0, 0))


# reduction --------------------------------------------------------------------


def test_reduce_single_gradient_op():
    red = reduce_family([FirstOrderOp.gradient_op(P("z1^2", 1), 0)])
    assert red.k == 1
    assert red.coord_change == [[1]]
    assert red.q == P("z1^2", 1)
    assert red.zero_order_gens == []


def test_reduce_diagonal_direction():
    q = P("(z1+z2)^2")
    family = [op(["1", "1"], "-1*(" + str(q.diff(0) + q.diff(1)) + ")")]
    red = reduce_family(family)
    assert red.k == 1
    M = red.coord_change
    assert linalg.mat_vec(linalg.inverse(M, QQ), [1, 1], QQ) == [1, 0]
    # in the new coordinates the operator is d/dw1 - d(q~)/dw1
    new = transform_op(family[0], M)
    assert new.zero_order == -red.q.diff(0)


def test_reduce_with_multiplication_operator():
    red = reduce_family([op(["1", "0"], "0"), FirstOrderOp.multiplication(P("z2"))])
    assert red.k == 1
    assert red.q == 0
    assert red.zero_order_gens == [P("z2")]
    assert red.zero_order_gens[0].diff(0) == 0


def test_reduce_errors():
    with pytest.raises(NonCommuting) as exc:
        reduce_family([op(["1", "0"], "-1*z2"), op(["0", "1"], "0")])
    assert exc.value.pair == (0, 1)
    with pytest.raises(AllZeroOrder):
        reduce_family([FirstOrderOp.multiplication(P("z1"))])


def _random_invertible(data, n):
    M = st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
    return data.draw(M.filter(lambda m: linalg.det(m, QQ) != 0))


@given(data=st.data())
def test_reduce_round_trip(data):
    n = data.draw(st.integers(1, 3))
    q = data.draw(polys(n, QQ, 5, 0, 5))
    A = _random_invertible(data, n)
    # the family {d_i - d_i q} written in coordinates z = A w
    family = [transform_op(o, A) for o in grad_ops(q)]
    red = reduce_family(family)
    assert red.k == n
    M = red.coord_change
    f = data.draw(polys(n, QQ, 3, 0, 4))
    for idx, orig in enumerate(family):
        moved = transform_op(orig, M)
        # applying in w-coordinates matches coordinate-changing the action
        assert moved(substitute_linear(f, M)) == substitute_linear(orig(f), M)
        if idx in red.pivot_ops:
            j = red.pivot_ops.index(idx)
            assert moved.zero_order == -red.q.diff(j)
    assert is_commuting_family(red.reduced_ops())[0]


@given(data=st.data())
def test_reduced_gens_avoid_reduced_variables(data):
    q = data.draw(polys(2, QQ, 4, 0, 4))
    g = data.draw(polys(3, QQ, 3, 0, 3))
    # family in 3 variables: gradient ops in z1, z2 plus multiplication by a z3-polynomial
    q3 = Poly.from_terms(3, QQ, [(z + (0,), (0, 0, 0), c) for z, _, c in q.terms()])
    g3 = Poly.from_terms(3, QQ, [((0, 0, z[2]), (0, 0, 0), c) for z, _, c in g.terms()])
    family = [FirstOrderOp.gradient_op(q3, 0), FirstOrderOp.gradient_op(q3, 1),
              FirstOrderOp.multiplication(g3)]
    red = reduce_family(family)
    assert red.k == 2
    for gen in red.zero_order_gens:
        assert gen.diff(0) == 0 and gen.diff(1) == 0


def test_operator_json_round_trip():
    o = op(["1", "-1/2"], "z1*z2 - 3")
    obj = json.loads(json.dumps(o.to_json()))
    assert set(obj) == {"leading", "zero_order"}
    assert FirstOrderOp.from_json(obj) == o
    L = ConstCoeffOp(P("u1^2 + u2^2"))
    obj = json.loads(json.dumps(L.to_json()))
    assert set(obj) == {"symbol"}
    assert ConstCoeffOp.from_json(obj).symbol == L.symbol
