from fractions import Fraction

import pytest

from lieforms.forms import FormElement
from lieforms.operators import (
    EVEN,
    GradedOperator,
    ODD,
    contraction_operator,
    extend_derivation,
    first_order_reconstruction,
    reeb_power,
    star_matrix,
    supercommutator,
    super_jacobi_check,
    wedge_operator,
)
from lieforms.scalars import Scalar

from conftest import ops_for


def t(n, *ix):
    return FormElement.monomial(n, ix)


def h3_d():
    n = 3
    return extend_derivation(
        n, ODD,
        {1: FormElement.zero(n), 2: FormElement.zero(n), 3: t(n, 1, 2)},
        label="d",
    )


def test_extend_derivation_heisenberg_differential():
    d = h3_d()
    assert d.apply(t(3, 3)) == t(3, 1, 2)
    assert d.apply(t(3, 1)).is_zero()
    assert (d @ d).is_zero()
    # leibniz on a product: d(t1^t3) = -t1^d(t3) = -t1^t1^t2 = 0
    assert d.apply(t(3, 1, 3)).is_zero()
    assert d.apply(t(3, 2, 3)).is_zero()


def test_extend_derivation_contraction():
    n = 3
    unit = FormElement.unit(n)
    act = {k: unit if k == 2 else FormElement.zero(n) for k in (1, 2, 3)}
    op = extend_derivation(n, ODD, act, label="i_2")
    assert op == contraction_operator(n, 2)


def test_extend_derivation_zero_and_parity_error():
    n = 3
    zero = extend_derivation(n, ODD, {k: FormElement.zero(n) for k in (1, 2, 3)})
    assert zero.is_zero()
    with pytest.raises(ValueError):
        extend_derivation(n, EVEN, {1: t(n, 1, 2), 2: FormElement.zero(n),
                                    3: FormElement.zero(n)})


def test_extend_derivation_first_order_part():
    # D(1) = t1 forces D = e_{t1} + derivation with the derivation part
    # read off from the generator values
    n = 2
    op = extend_derivation(
        n, ODD,
        {1: t(n, 1, 2), 2: t(n, 1, 2)},
        unit_value=t(n, 1),
    )
    assert op.apply(FormElement.unit(n)) == t(n, 1)
    # D(t1) = t1^t1 + delta(t1) = t1^t2
    assert op.apply(t(n, 1)) == t(n, 1, 2)
    # D(t1^t2) = D(1)^t1^t2 + delta-part; top degree kills the unit term
    assert first_order_reconstruction(op) == op
    # it is not a derivation: a derivation kills 1
    assert not op.apply(FormElement.unit(n)).is_zero()


def test_compose_identity_and_d_squared():
    d = h3_d()
    ident = GradedOperator.identity(3)
    assert ident @ d == d
    assert (d @ d).is_zero()


def test_heisenberg_pair_identity():
    n = 3
    e3 = wedge_operator(t(n, 3), "e_r")
    i3 = contraction_operator(n, 3, "i_r")
    assert supercommutator(e3, i3) == GradedOperator.identity(n)


def test_supercommutator_graded_antisymmetry_mixed_parities():
    d = h3_d()
    e3 = wedge_operator(t(3, 3), "e_r")
    L = wedge_operator(t(3, 1, 2), "L")
    # odd-odd: {a,b} = {b,a}
    assert supercommutator(d, e3) == supercommutator(e3, d).relabel(
        supercommutator(d, e3).label)
    # even-odd: {a,b} = -{b,a}
    assert supercommutator(L, d) == (-supercommutator(d, L)).relabel(
        supercommutator(L, d).label)


def test_adjoint_properties():
    d = ops_for("su2").d
    assert d.adjoint().adjoint() == d
    assert wedge_operator(t(3, 3)).adjoint() == contraction_operator(3, 3)
    # <A a, b> = <a, A* b> spot check through matrices
    ds = d.adjoint()
    for k in range(3):
        assert d.blocks[k].conj_transpose() == ds.blocks[k + 1]


def test_adjoint_reverses_composition():
    ops = ops_for("su2")
    a, b = ops.d, ops.e_r
    assert (a @ b).adjoint() == b.adjoint() @ a.adjoint()
    assert (ops.L @ ops.d).adjoint() == ops.d.adjoint() @ ops.Lam


def test_adjoint_vs_star_signs_on_su2():
    d = ops_for("su2").d
    ds = d.adjoint()
    n = 3
    for k in range(1, n + 1):
        sds = star_matrix(n, n - k + 1) @ d.blocks[n - k] @ star_matrix(n, k)
        target = ds.blocks[k]
        assert target == sds or target == sds.scale(Scalar.of(-1))


def test_reeb_power():
    ops = ops_for("su2")
    assert reeb_power(ops.e_r, ops.lie_r, 0) == ops.e_r
    d0 = ops.e_r @ ops.lie_r
    assert reeb_power(ops.e_r, ops.lie_r, 1) == d0
    # on h3 the reeb direction is central, so every first power vanishes
    h3 = ops_for("h3")
    assert reeb_power(h3.L, h3.lie_r, 1).is_zero()


def test_reeb_power_commutation_guard():
    ops = ops_for("su2")
    e1 = wedge_operator(t(3, 1), "e_1")
    with pytest.raises(ValueError):
        reeb_power(e1, ops.lie_r, 1)


def test_super_jacobi_examples():
    ops = ops_for("su2")
    d, i_r = ops.d, ops.i_r
    assert super_jacobi_check(d, d, i_r).ok()
    zero = GradedOperator.zero(3, 0, EVEN)
    assert super_jacobi_check(zero, ops.L, d).ok()
    # odd self-bracket consequence: 2{d,{d,u}} = {{d,d},u}
    lhs = supercommutator(d, supercommutator(d, i_r)).scale(Scalar(Fraction(2)))
    rhs = supercommutator(supercommutator(d, d), i_r)
    assert lhs == rhs.relabel(lhs.label)


def test_random_derivations_are_determined_by_generator_values():
    from fractions import Fraction

    from hypothesis import given, settings, strategies as st

    n = 3
    rationals = st.builds(Fraction, st.integers(min_value=-5, max_value=5),
                          st.integers(min_value=1, max_value=4))

    @settings(deadline=None, max_examples=40)
    @given(st.lists(rationals, min_size=9, max_size=9), st.sampled_from([0, 1]))
    def check(coeffs, parity):
        # random degree-(1+parity) values on the generators
        shift = 1 if parity else 0
        tgt = 1 + shift
        from lieforms.forms import monomial_basis

        basis = monomial_basis(n, tgt)
        action = {}
        it = iter(coeffs)
        for k in (1, 2, 3):
            val = FormElement.zero(n)
            for m in basis[:3]:
                val = val + FormElement.monomial(n, m, Scalar(next(it)))
            action[k] = val
        op = extend_derivation(n, parity, action, shift=shift)
        assert first_order_reconstruction(op) == op
        # signed Leibniz rule on a product of generators
        a, b = t(n, 1), t(n, 2)
        from lieforms.forms import wedge

        lhs = op.apply(wedge(a, b))
        sign = Scalar.of(-1) if parity else Scalar.of(1)
        rhs = wedge(op.apply(a), b) + wedge(a, op.apply(b)).scale(sign)
        assert lhs == rhs

    check()


def test_first_order_reconstruction_detects_higher_order():
    # d* is a second-order operator on su2; reconstruction must not match
    d = ops_for("su2").d
    ds = d.adjoint().relabel("d*")
    rec = first_order_reconstruction(ds)
    assert rec != ds


def test_blocks_shape_validation():
    with pytest.raises(ValueError):
        GradedOperator(2, 0, EVEN, (GradedOperator.identity(2).blocks[0],))


def test_check_relation_fail_path_reports_first_mismatch():
    from lieforms.operators import check_relation

    ops = ops_for("su2")
    wrong = ops.L.scale(Scalar.of(3)).relabel("3L")
    entry = check_relation("planted", supercommutator(ops.H, ops.L), wrong,
                           [("5L", ops.L.scale(Scalar.of(5)))])
    assert entry.verdict == "fail"
    assert "first mismatch at degree" in entry.failure
    assert not entry.ok()


def test_check_relation_shift_mismatch_reported():
    from lieforms.operators import check_relation

    ops = ops_for("su2")
    entry = check_relation("planted", ops.e_r, ops.i_r)
    assert entry.verdict == "fail"
    assert "shifts" in entry.failure
