import itertools
import math

import numpy as np
import pytest

from cqpoly import (
    CQTensor,
    CQVector,
    CQuat,
    I,
    J,
    MultilinearForm,
    ONE,
    PolyProblem,
    lift_to_poly,
    outer_product,
    re_bilinear,
    sign_average_identity,
    symmetrize,
)

rng = np.random.default_rng(55801)


def rand_vector(n, scale=1.0):
    return CQVector(scale * rng.uniform(-1, 1, size=(n, 4)))


def rand_form(dims):
    return MultilinearForm(CQTensor(rng.uniform(-1, 1, size=tuple(dims) + (4,))))


def rand_poly(degree, dim, terms=4):
    poly = PolyProblem(degree, dim)
    for _ in range(terms):
        idx = tuple(int(i) for i in rng.integers(1, dim + 1, size=degree))
        poly.add_term(idx, CQuat(*rng.uniform(-1, 1, size=4)))
    return poly


def test_eval_all_ones_cube():
    form = MultilinearForm(CQTensor.from_real(np.ones((2, 2, 2))))
    x = CQVector.from_real(np.ones(2) / np.sqrt(2))
    value = form(x, x, x)
    assert value.re == pytest.approx(2 * np.sqrt(2))
    assert abs(value - CQuat(2 * np.sqrt(2))) == pytest.approx(0.0, abs=1e-12)


def test_eval_rank_one_factorizes():
    x, y, z = rand_vector(2), rand_vector(3), rand_vector(2)
    u, v, w = rand_vector(2), rand_vector(3), rand_vector(2)
    form = MultilinearForm(outer_product([x, y, z]))
    got = form(u, v, w)
    xu = sum((a * b for a, b in zip(x.quats(), u.quats())), CQuat())
    yv = sum((a * b for a, b in zip(y.quats(), v.quats())), CQuat())
    zw = sum((a * b for a, b in zip(z.quats(), w.quats())), CQuat())
    assert got.isclose(xu * yv * zw, tol=1e-10)


def test_eval_zero_slot():
    form = rand_form((2, 3, 2))
    zero = CQVector(np.zeros((3, 4)))
    assert abs(form(rand_vector(2), zero, rand_vector(2))) == 0.0


def test_eval_multilinearity_in_each_slot():
    for _ in range(100):
        d = int(rng.integers(2, 5))
        dims = tuple(int(n) for n in rng.integers(1, 5, size=d))
        form = rand_form(dims)
        slot = int(rng.integers(0, d))
        alpha, beta = rng.uniform(-2, 2, size=2)
        xs = [rand_vector(n) for n in dims]
        a, b = rand_vector(dims[slot]), rand_vector(dims[slot])
        mixed = list(xs)
        mixed[slot] = CQVector(alpha * a.data + beta * b.data)
        with_a, with_b = list(xs), list(xs)
        with_a[slot] = a
        with_b[slot] = b
        lhs = mixed and form(*mixed)
        rhs_arr = alpha * np.array(form(*with_a).components()) + beta * np.array(
            form(*with_b).components()
        )
        assert np.allclose(lhs.components(), rhs_arr, atol=1e-10)


def test_contract_all_ones():
    form = MultilinearForm(CQTensor.from_real(np.ones((2, 2, 2))))
    e1 = CQVector.from_real([1.0, 0.0])
    v = form.contract([e1, e1], free_slot=2)
    assert np.array_equal(v.data[:, 0], [1.0, 1.0])


def test_contract_defining_identity():
    form = rand_form((3, 2, 3))
    fixed = [rand_vector(3), rand_vector(3)]
    v = form.contract(fixed, free_slot=1)
    for _ in range(50):
        y = rand_vector(2)
        via_vector = sum((a * b for a, b in zip(v.quats(), y.quats())), CQuat())
        direct = form(fixed[0], y, fixed[1])
        assert via_vector.isclose(direct, tol=1e-10)


def test_contract_pair_matches_bilinear_evaluation():
    form = rand_form((2, 3, 2, 3))
    fixed = [rand_vector(2), rand_vector(2)]
    A = form.contract_pair(fixed, (1, 3))
    for _ in range(20):
        u, v = rand_vector(3), rand_vector(3)
        assert re_bilinear(u, A, v) == pytest.approx(
            form(fixed[0], u, fixed[1], v).re, abs=1e-10
        )


def test_symmetrize_off_diagonal_pair():
    poly = PolyProblem(2, 2)
    poly.add_term((1, 2), ONE)
    form = symmetrize(poly)
    assert form.tensor[0, 1].components() == (0.5, 0.0, 0.0, 0.0)
    assert form.tensor[1, 0].components() == (0.5, 0.0, 0.0, 0.0)


def test_symmetrize_diagonal():
    poly = PolyProblem(2, 2)
    poly.add_term((1, 1), ONE)
    form = symmetrize(poly)
    assert form.tensor[0, 0].components() == (1.0, 0.0, 0.0, 0.0)


def test_symmetrize_triple_product():
    poly = PolyProblem(3, 3)
    poly.add_term((1, 2, 3), ONE)
    form = symmetrize(poly)
    for perm in itertools.permutations((0, 1, 2)):
        assert form.tensor[perm].components() == pytest.approx((1 / 6, 0, 0, 0))


def test_symmetrize_permutation_invariance():
    poly = rand_poly(3, 3)
    data = symmetrize(poly).tensor.data
    for idx in itertools.product(range(3), repeat=3):
        for perm in itertools.permutations(idx):
            assert np.array_equal(data[idx], data[perm])


def test_eval_poly_examples():
    poly = PolyProblem(2, 1)
    poly.add_term((1, 1), ONE)
    assert poly(CQVector.from_quats([I])).re == pytest.approx(-1.0)

    sum_sq = PolyProblem(2, 2)
    sum_sq.add_term((1, 1), ONE)
    sum_sq.add_term((2, 2), ONE)
    x = CQVector.from_real(np.array([0.6, 0.8]))
    assert sum_sq(x).re == pytest.approx(1.0)


def test_eval_poly_matches_symmetrized_form():
    for _ in range(100):
        d = int(rng.integers(2, 5))
        n = int(rng.integers(1, 5))
        poly = rand_poly(d, n)
        form = symmetrize(poly)
        x = rand_vector(n)
        direct = np.array(poly(x).components())
        via_form = np.array(form(*([x] * d)).components())
        assert np.allclose(direct, via_form, atol=1e-10)


def test_duplicate_terms_sum():
    poly = PolyProblem(2, 2)
    poly.add_term((2, 1), ONE)
    poly.add_term((1, 2), CQuat(0, 0, 0, 2))
    assert poly.coeffs == {(1, 2): CQuat(1, 0, 0, 2)}


def test_sign_average_matches_hand_expansion():
    # d=2, scalar slots: the four patterns give ((x+y)^2 - (x-y)^2)/2 = 2xy
    form = MultilinearForm(CQTensor.from_real(np.ones((1, 1))))
    x, y = rand_vector(1), rand_vector(1)
    lhs, rhs = sign_average_identity(form, [x, y])
    xq, yq = x[0], y[0]
    plus = (xq + yq) * (xq + yq)
    minus = (xq - yq) * (xq - yq)
    hand = (plus + plus - minus - minus) / 4
    assert lhs.isclose(hand, tol=1e-12)
    assert rhs.isclose(2 * (xq * yq), tol=1e-12)


def test_sign_average_zero_vector():
    form = MultilinearForm(symmetrize(rand_poly(3, 2)).tensor)
    xs = [rand_vector(2), CQVector(np.zeros((2, 4))), rand_vector(2)]
    lhs, rhs = sign_average_identity(form, xs)
    assert abs(lhs) == pytest.approx(0.0, abs=1e-12)
    assert abs(rhs) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_sign_average_identity_super_symmetric(degree):
    for _ in range(10):
        n = int(rng.integers(1, 4))
        form = symmetrize(rand_poly(degree, n))
        xs = [rand_vector(n) for _ in range(degree)]
        lhs, rhs = sign_average_identity(form, xs)
        assert np.allclose(lhs.components(), rhs.components(), atol=1e-9)


def test_sign_average_guard():
    form = MultilinearForm(CQTensor.from_real(np.ones((1,) * 21)))
    xs = [CQVector.from_real([1.0])] * 21
    with pytest.raises(ValueError):
        sign_average_identity(form, xs)


def test_lift_scalar_product():
    form = MultilinearForm(CQTensor.from_real(np.ones((1, 1))))
    lifted = lift_to_poly(form)
    assert lifted.degree == 2 and lifted.dim == 2
    assert lifted.coeffs == {(1, 2): ONE}
    u, v = rand_vector(1), rand_vector(1)
    stacked = CQVector(np.vstack([u.data, v.data]))
    assert lifted(stacked).isclose(u[0] * v[0], tol=1e-12)


def test_lift_matches_form_on_blocks():
    dims = (2, 3, 2)
    form = rand_form(dims)
    lifted = lift_to_poly(form)
    assert lifted.dim == sum(dims)
    for _ in range(20):
        blocks = [rand_vector(n) for n in dims]
        stacked = CQVector(np.vstack([b.data for b in blocks]))
        lhs = np.array(lifted(stacked).components())
        rhs = np.array(form(*blocks).components())
        assert np.allclose(lhs, rhs, atol=1e-10)


def test_sphere_to_block_scaling():
    # splitting sqrt(d) x with |x| = 1 into blocks gives total squared norm d
    d = 3
    x = rand_vector(6).unit()
    scaled = math.sqrt(d) * x
    blocks = [CQVector(scaled.data[0:2]), CQVector(scaled.data[2:4]), CQVector(scaled.data[4:6])]
    assert sum(b.norm() ** 2 for b in blocks) == pytest.approx(d)


def test_poly_validation():
    with pytest.raises(ValueError):
        PolyProblem(0, 2)
    poly = PolyProblem(2, 2)
    with pytest.raises(ValueError):
        poly.add_term((1, 3), ONE)
    with pytest.raises(ValueError):
        poly.add_term((1,), ONE)
    with pytest.raises(ValueError):
        poly(rand_vector(3))
