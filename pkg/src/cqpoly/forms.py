"""Multilinear forms, homogeneous polynomials, and the bridges between them.

A multilinear form is the full contraction of an order-d tensor against d
quaternion vectors; a homogeneous polynomial of degree d keeps a sparse
coefficient map on sorted index tuples. Symmetrization spreads each
coefficient uniformly over the distinct permutations of its tuple, which
makes the polynomial equal to the form evaluated on a repeated argument.

The sign-average identity links the two: averaging sign-weighted diagonal
evaluations over all 2^d sign vectors recovers d! times the multilinear
form. The average here is exact (full enumeration), not sampled.
"""

from __future__ import annotations

import itertools
import math
from typing import Mapping, Sequence

import numpy as np

from .core import CQuat
from .linalg import CQMatrix, CQTensor, CQVector, qprod

MAX_SIGN_ENUM_DEGREE = 20


def _contract_leading(data: np.ndarray, vectors: Sequence[CQVector]) -> np.ndarray:
    """Contract the leading axes of a (..., 4) array with the given vectors."""
    for vec in vectors:
        v = vec.data.reshape((len(vec),) + (1,) * (data.ndim - 2) + (4,))
        data = qprod(data, v).sum(axis=0)
    return data


class MultilinearForm:
    """Multilinear form carried by a dense order-d quaternion tensor."""

    __slots__ = ("tensor",)

    def __init__(self, tensor: CQTensor):
        if tensor.order < 1:
            raise ValueError("form needs an order >= 1 tensor")
        self.tensor = tensor

    @property
    def order(self) -> int:
        return self.tensor.order

    @property
    def dims(self) -> tuple[int, ...]:
        return self.tensor.dims

    def _check_slot(self, slot: int, vec: CQVector) -> None:
        if len(vec) != self.dims[slot]:
            raise ValueError(
                f"slot {slot} expects length {self.dims[slot]}, got {len(vec)}"
            )

    def __call__(self, *xs: CQVector) -> CQuat:
        """Full contraction; the product order is irrelevant by commutativity."""
        if len(xs) != self.order:
            raise ValueError(f"expected {self.order} vectors, got {len(xs)}")
        for slot, vec in enumerate(xs):
            self._check_slot(slot, vec)
        return CQuat(*_contract_leading(self.tensor.data, xs))

    def contract(self, fixed: Sequence[CQVector], free_slot: int) -> CQVector:
        """Fix every slot except free_slot; returns v with v^T y = F(..., y, ...)."""
        d = self.order
        if not 0 <= free_slot < d:
            raise ValueError(f"free_slot out of range: {free_slot}")
        if len(fixed) != d - 1:
            raise ValueError(f"expected {d - 1} fixed vectors, got {len(fixed)}")
        slots = [s for s in range(d) if s != free_slot]
        for slot, vec in zip(slots, fixed):
            self._check_slot(slot, vec)
        data = np.moveaxis(self.tensor.data, free_slot, -2)
        return CQVector(_contract_leading(data, fixed))

    def contract_pair(self, fixed: Sequence[CQVector], free_slots: tuple[int, int]) -> CQMatrix:
        """Fix all but two slots; returns the matrix of the remaining bilinear form."""
        d = self.order
        s1, s2 = free_slots
        if not (0 <= s1 < s2 < d):
            raise ValueError(f"free slots must satisfy 0 <= s1 < s2 < {d}")
        if len(fixed) != d - 2:
            raise ValueError(f"expected {d - 2} fixed vectors, got {len(fixed)}")
        slots = [s for s in range(d) if s not in (s1, s2)]
        for slot, vec in zip(slots, fixed):
            self._check_slot(slot, vec)
        data = np.moveaxis(self.tensor.data, (s1, s2), (-3, -2))
        return CQMatrix(_contract_leading(data, fixed))


class PolyProblem:
    """Sparse homogeneous polynomial of one quaternion vector variable.

    Coefficients are keyed by nondecreasing index tuples (1-based); adding a
    term canonicalizes by sorting and sums duplicate tuples.
    """

    __slots__ = ("degree", "dim", "_coeffs")

    def __init__(self, degree: int, dim: int, coeffs: Mapping[tuple[int, ...], CQuat] | None = None):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        if dim < 1:
            raise ValueError("dim must be at least 1")
        self.degree = int(degree)
        self.dim = int(dim)
        self._coeffs: dict[tuple[int, ...], CQuat] = {}
        if coeffs:
            for idx, coeff in coeffs.items():
                self.add_term(idx, coeff)

    def add_term(self, indices: Sequence[int], coeff) -> None:
        idx = tuple(sorted(int(i) for i in indices))
        if len(idx) != self.degree:
            raise ValueError(f"expected {self.degree} indices, got {len(idx)}")
        if idx[0] < 1 or idx[-1] > self.dim:
            raise ValueError(f"indices out of range 1..{self.dim}: {idx}")
        if not isinstance(coeff, CQuat):
            coeff = CQuat(coeff)
        if idx in self._coeffs:
            coeff = self._coeffs[idx] + coeff
        self._coeffs[idx] = coeff

    def terms(self) -> list[tuple[tuple[int, ...], CQuat]]:
        return sorted(self._coeffs.items())

    @property
    def coeffs(self) -> dict[tuple[int, ...], CQuat]:
        return dict(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c.components() == (0.0, 0.0, 0.0, 0.0) for c in self._coeffs.values())

    def __call__(self, x: CQVector) -> CQuat:
        """Direct monomial evaluation."""
        if len(x) != self.dim:
            raise ValueError(f"expected a vector of length {self.dim}, got {len(x)}")
        entries = x.quats()
        total = CQuat()
        for idx, coeff in self._coeffs.items():
            term = coeff
            for i in idx:
                term = term * entries[i - 1]
            total = total + term
        return total

    def __neg__(self) -> "PolyProblem":
        return PolyProblem(self.degree, self.dim, {idx: -c for idx, c in self._coeffs.items()})

    def __repr__(self) -> str:
        return f"PolyProblem(degree={self.degree}, dim={self.dim}, terms={len(self._coeffs)})"


def symmetrize(poly: PolyProblem) -> MultilinearForm:
    """Dense super-symmetric form whose diagonal restriction equals the polynomial.

    The entry at every permutation of a sorted tuple is the coefficient
    divided by the number of distinct permutations of that tuple.
    """
    d, n = poly.degree, poly.dim
    data = np.zeros((n,) * d + (4,))
    for idx, coeff in poly.coeffs.items():
        perms = set(itertools.permutations(idx))
        value = np.array(coeff.components()) / len(perms)
        for perm in perms:
            data[tuple(i - 1 for i in perm)] = value
    return MultilinearForm(CQTensor(data))


def lift_to_poly(form: MultilinearForm) -> PolyProblem:
    """Polynomial in the stacked variable whose evaluation equals the form.

    Slot k of the form is mapped to the k-th block of the stacked vector, so
    evaluating the lift at (x^1; ...; x^d) reproduces F(x^1, ..., x^d).
    """
    dims = form.dims
    offsets = np.concatenate([[0], np.cumsum(dims[:-1])])
    poly = PolyProblem(degree=form.order, dim=int(sum(dims)))
    data = form.tensor.data
    for idx in np.ndindex(*dims):
        comps = data[idx]
        if not comps.any():
            continue
        stacked = tuple(int(offsets[k] + i + 1) for k, i in enumerate(idx))
        poly.add_term(stacked, CQuat(*comps))
    return poly


def sign_average_identity(form: MultilinearForm, xs: Sequence[CQVector]) -> tuple[CQuat, CQuat]:
    """Exact sign-average of diagonal evaluations next to d! times the form.

    The left value averages prod(s) * H(sum_k s_k x^k) over all 2^d sign
    vectors s, where H is the diagonal restriction of the form; the right
    value is d! * F(x^1, ..., x^d). For a super-symmetric form the two agree.
    """
    d = form.order
    if d > MAX_SIGN_ENUM_DEGREE:
        raise ValueError(f"degree {d} exceeds the enumeration guard {MAX_SIGN_ENUM_DEGREE}")
    if len(set(form.dims)) != 1:
        raise ValueError("sign average needs equal slot dimensions")
    if len(xs) != d:
        raise ValueError(f"expected {d} vectors, got {len(xs)}")
    total = np.zeros(4)
    for signs in itertools.product((1.0, -1.0), repeat=d):
        combo = CQVector(sum(s * x.data for s, x in zip(signs, xs)))
        value = form(*([combo] * d))
        total += math.prod(signs) * np.array(value.components())
    lhs = CQuat(*(total / 2**d))
    rhs_val = form(*xs)
    rhs = CQuat(*(math.factorial(d) * np.array(rhs_val.components())))
    return lhs, rhs
