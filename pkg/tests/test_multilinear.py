"""Construction, evaluation and linear algebra of dense multilinear operations."""

import numpy as np
import pytest

from operadlax import (
    evaluate,
    frobenius_norm,
    identity_op,
    linear_comb,
    make_operation,
)


def test_make_operation_stores_matrix_exactly():
    op = make_operation(2, 1, [0, -1, 1, 0])
    np.testing.assert_array_equal(op.coeffs, [[0.0, -1.0], [1.0, 0.0]])
    assert op.dim == 2 and op.degree == 1 and op.reduced_degree == 0


def test_make_operation_zero_binary():
    op = make_operation(2, 2, np.zeros(8))
    assert op.coeffs.shape == (2, 2, 2)
    assert not op.coeffs.any()
    assert op.reduced_degree == 1


def test_make_operation_readback_bit_identical():
    rng = np.random.default_rng(11)
    coeffs = rng.standard_normal(3 ** 3)
    op = make_operation(3, 2, coeffs)
    np.testing.assert_array_equal(op.coeffs.ravel(), coeffs)


def test_make_operation_length_mismatch():
    with pytest.raises(ValueError, match="expected 8"):
        make_operation(2, 2, np.zeros(7))


def test_make_operation_rejects_non_finite():
    bad = np.zeros(8)
    bad[5] = np.nan
    with pytest.raises(ValueError, match="flat index 5"):
        make_operation(2, 2, bad)


def test_make_operation_rejects_degree_zero():
    with pytest.raises(ValueError, match="degree"):
        make_operation(2, 0, [1.0, 0.0])


def test_coeffs_are_read_only():
    op = make_operation(2, 1, np.eye(2))
    with pytest.raises(ValueError):
        op.coeffs[0, 0] = 5.0


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_identity_op(dim):
    np.testing.assert_array_equal(identity_op(dim).coeffs, np.eye(dim))


def test_identity_op_rejects_dim_zero():
    with pytest.raises(ValueError):
        identity_op(0)


def test_evaluate_identity():
    np.testing.assert_array_equal(
        evaluate(identity_op(2), [np.array([3.0, 4.0])]), [3.0, 4.0]
    )


def test_evaluate_structure_constant_on_basis():
    # mu111 = 1 means mu(e1, e1) = e1
    mu = make_operation(2, 2, [1, 0, 0, 0, 0, 0, 0, 0])
    np.testing.assert_array_equal(evaluate(mu, [[1, 0], [1, 0]]), [1.0, 0.0])


def test_evaluate_bilinear_scaling():
    # hand expansion: mu(2 e1, 3 e1) = 6 mu(e1, e1) = 6 e1
    mu = make_operation(2, 2, [1, 0, 0, 0, 0, 0, 0, 0])
    np.testing.assert_allclose(evaluate(mu, [[2, 0], [3, 0]]), [6.0, 0.0])


def test_evaluate_arity_and_dim_mismatch():
    mu = make_operation(2, 2, np.zeros(8))
    with pytest.raises(ValueError, match="arity"):
        evaluate(mu, [[1, 0]])
    with pytest.raises(ValueError, match="shape"):
        evaluate(mu, [[1, 0, 0], [1, 0]])


def test_evaluate_linear_in_each_slot():
    rng = np.random.default_rng(5)
    for _ in range(30):
        d = int(rng.integers(1, 4))
        n = int(rng.integers(1, 4))
        op = make_operation(d, n, rng.standard_normal(d ** (n + 1)))
        slot = int(rng.integers(0, n))
        x, y = rng.standard_normal((2, d))
        a, b = rng.standard_normal(2)
        args = [rng.standard_normal(d) for _ in range(n)]
        lhs_args = list(args)
        lhs_args[slot] = a * x + b * y
        xa, ya = list(args), list(args)
        xa[slot], ya[slot] = x, y
        lhs = evaluate(op, lhs_args)
        rhs = a * evaluate(op, xa) + b * evaluate(op, ya)
        scale = np.abs(op.coeffs).sum() * (1.0 + np.abs(rhs).max())
        np.testing.assert_allclose(lhs, rhs, atol=1e-14 * scale)


def test_linear_comb_cancellation_is_exact():
    rng = np.random.default_rng(3)
    f = make_operation(2, 2, rng.standard_normal(8))
    zero = linear_comb(1.0, f, -1.0, f)
    assert not zero.coeffs.any()


def test_linear_comb_scaling():
    two_id = linear_comb(2.0, identity_op(2), 0.0, identity_op(2))
    np.testing.assert_array_equal(two_id.coeffs, 2.0 * np.eye(2))


def test_linear_comb_disjoint_supports_union():
    a = make_operation(2, 2, [1, 0, 0, 0, 0, 0, 0, 0])
    b = make_operation(2, 2, [0, 0, 0, 5, 0, 0, 0, 0])
    both = linear_comb(1.0, a, 1.0, b)
    np.testing.assert_array_equal(both.coeffs.ravel(), [1, 0, 0, 5, 0, 0, 0, 0])


def test_linear_comb_shape_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        linear_comb(1.0, identity_op(2), 1.0, identity_op(3))


def test_frobenius_norm_values():
    assert frobenius_norm(make_operation(2, 2, np.zeros(8))) == 0.0
    assert frobenius_norm(identity_op(2)) == pytest.approx(np.sqrt(2), rel=1e-15)
    pm = make_operation(2, 2, [1, 0, 0, -1, 0, 0, 0, 0])
    assert frobenius_norm(pm) == pytest.approx(np.sqrt(2), rel=1e-15)


def test_frobenius_norm_homogeneous():
    rng = np.random.default_rng(9)
    for _ in range(20):
        f = make_operation(2, 2, rng.standard_normal(8))
        a = float(rng.standard_normal())
        scaled = linear_comb(a, f, 0.0, f)
        assert frobenius_norm(scaled) == pytest.approx(
            abs(a) * frobenius_norm(f), rel=1e-15
        )
