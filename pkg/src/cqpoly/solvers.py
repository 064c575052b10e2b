"""Randomized maximization of multilinear forms and homogeneous polynomials.

The exact two-slot solver reduces Re(x^T A y) on unit spheres to the
dominant singular pair of the 4m x 4n real block embedding. Higher-order
forms are handled by sampling all but the two largest slots uniformly on
their spheres, solving the remaining bilinear problem exactly, and keeping
the best trial; polynomials go through the super-symmetric relaxation and
an exhaustive sign combination step.

Trial t of a run draws from RandomSource(seed, stream=t), so the best-of-k
value is nondecreasing in k for a fixed seed and independent trials can be
evaluated in any order or concurrently without changing the result.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .core import CQuat
from .forms import MultilinearForm, PolyProblem, symmetrize
from .linalg import (
    CQMatrix,
    CQTensor,
    CQVector,
    outer_product,
    real_block,
    unvec_real,
)
from .sampling import RandomSource

POWER_TOL = 1e-12
POWER_MAX_ITERS = 10_000
DEGENERATE_NORM = 1e-12


class BilinearSolution(NamedTuple):
    x: CQVector
    y: CQVector
    value: float
    degenerate: bool = False


def _dominant_singular_pair(M: np.ndarray) -> tuple[np.ndarray, float, np.ndarray]:
    """Dominant singular triple (u, sigma, v) of a dense real matrix.

    Power iteration on M^T M with two fixed deterministic starts: the
    normalized all-ones vector and a normalized ramp. The ramp column guards
    against inputs whose top singular space happens to be orthogonal to the
    all-ones start; both columns share the same matrix products, and the
    better converged column wins (ties prefer the all-ones start).

    Raises RuntimeError if neither column converges within the iteration cap
    or if both starts lie in the null space.
    """
    q = M.shape[1]
    B = M.T @ M
    V = np.stack([np.ones(q), np.arange(1.0, q + 1.0)], axis=1)
    V /= np.sqrt((V**2).sum(axis=0))
    est = [-1.0, -1.0]
    settled = [False, False]  # converged or dead
    dead = [False, False]
    for _ in range(POWER_MAX_ITERS):
        W = B @ V
        norms = np.sqrt((W * W).sum(axis=0))
        for c in (0, 1):
            if settled[c]:
                continue
            nc = float(norms[c])
            if nc < 1e-300:
                settled[c] = dead[c] = True
                continue
            if abs(nc - est[c]) <= POWER_TOL * nc:
                settled[c] = True
            est[c] = nc
            V[:, c] = W[:, c] / nc
        if settled[0] and settled[1]:
            break
    else:
        raise RuntimeError(
            f"power iteration did not converge within {POWER_MAX_ITERS} iterations "
            f"(estimates {est})"
        )
    if dead[0] and dead[1]:
        raise RuntimeError("both deterministic starts lie in the null space of the matrix")
    if dead[0]:
        pick = 1
    elif dead[1]:
        pick = 0
    else:
        pick = 0 if est[0] >= est[1] else 1
    v = V[:, pick]
    Mv = M @ v
    sigma = float(np.sqrt((Mv**2).sum()))
    if sigma < 1e-300:
        raise RuntimeError("converged start has zero image; no singular pair recovered")
    u = Mv / sigma
    nonzero = np.flatnonzero(np.abs(u) > 1e-12)
    if len(nonzero) and u[nonzero[0]] < 0:
        u = -u
        v = -v
    return u, sigma, v


def solve_bilinear(A: CQMatrix) -> BilinearSolution:
    """Exact maximization of Re(x^T A y) over unit quaternion vectors.

    The value is the largest singular value of the real block embedding and
    the pair is rebuilt from the top singular vectors. A zero matrix yields
    value 0 with an arbitrary unit pair, flagged degenerate.
    """
    m, n = A.shape
    if A.norm() == 0.0:
        return BilinearSolution(CQVector.basis(m, 0), CQVector.basis(n, 0), 0.0, True)
    M = real_block(A).data
    u, sigma, v = _dominant_singular_pair(M)
    return BilinearSolution(unvec_real(u), unvec_real(v), sigma, False)


@dataclass
class SolveReport:
    """Best solution of a randomized run plus the reporting quantities.

    ``solution`` holds one unit vector per slot for form problems, or a
    single stacked vector for polynomial problems. ``theoretical_ratio`` and
    ``upper_bound`` are attached for reporting only; they are never used as
    optimality certificates.
    """

    solution: list[CQVector]
    objective: float
    trials: int
    best_trial: int
    seed: int
    theoretical_ratio: float | None = None
    upper_bound: float | None = None
    degenerate: bool = False
    relaxation: "SolveReport | None" = field(default=None, repr=False)


def form_trial_values(
    form: MultilinearForm, trials: int, seed: int
) -> Iterator[tuple[int, float, list[CQVector], bool]]:
    """Yield (trial, value, slot vectors, degenerate) for each independent trial.

    Slots are processed in nondecreasing dimension order: the d-2 smallest
    are sampled on their spheres and the two largest are solved exactly; the
    yielded vectors are mapped back to the original slot order. For d = 2
    the problem is solved exactly once.
    """
    d = form.order
    if d < 2:
        raise ValueError("form must have order at least 2")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if d == 2:
        sol = solve_bilinear(CQMatrix(form.tensor.data))
        yield 0, sol.value, [sol.x, sol.y], sol.degenerate
        return
    perm = np.argsort(form.dims, kind="stable")
    sorted_dims = [form.dims[s] for s in perm]
    sorted_data = np.transpose(form.tensor.data, axes=list(perm) + [d])
    sorted_form = MultilinearForm(CQTensor(sorted_data))
    for t in range(trials):
        src = RandomSource(seed, stream=t)
        xis = [src.sphere_vector(sorted_dims[k]) for k in range(d - 2)]
        A = sorted_form.contract_pair(xis, (d - 2, d - 1))
        sol = solve_bilinear(A)
        ordered: list[CQVector | None] = [None] * d
        for k, slot in enumerate(perm):
            ordered[slot] = (xis + [sol.x, sol.y])[k]
        yield t, sol.value, ordered, sol.degenerate


def maximize_form(
    form: MultilinearForm,
    trials: int,
    seed: int,
    gamma: float | None = None,
    upper_bound: float | None = None,
) -> SolveReport:
    """Best-of-k randomized maximization of Re F on the product of spheres."""
    best: tuple[int, float, list[CQVector], bool] | None = None
    total = 0
    for t, value, vectors, degenerate in form_trial_values(form, trials, seed):
        total = t + 1
        if best is None or value > best[1]:
            best = (t, value, vectors, degenerate)
    assert best is not None
    ratio = form_ratio_bound(form.dims, gamma) if gamma is not None else None
    return SolveReport(
        solution=best[2],
        objective=best[1],
        trials=total,
        best_trial=best[0],
        seed=seed,
        theoretical_ratio=ratio,
        upper_bound=upper_bound,
        degenerate=best[3],
    )


def maximize_poly(
    poly: PolyProblem, trials: int, seed: int, gamma: float | None = None
) -> SolveReport:
    """Randomized maximization of Re H on the unit sphere.

    The polynomial is relaxed to its super-symmetric multilinear form, the
    relaxation is maximized, and a single vector is recovered through an
    exhaustive search over sign combinations of the relaxation factors: for
    odd degree all 2^d sign vectors of the scaled average are scored and the
    better of the two antipodal normalizations is kept; for even degree only
    sign vectors with positive product compete and the best combination is
    normalized directly.
    """
    d, n = poly.degree, poly.dim
    if d < 2:
        raise ValueError("degree must be at least 2")
    form = symmetrize(poly)
    ratio = poly_ratio_bound(d, n, gamma) if gamma is not None else None
    if form.tensor.norm() == 0.0:
        return SolveReport(
            solution=[CQVector.basis(n, 0)],
            objective=0.0,
            trials=1,
            best_trial=0,
            seed=seed,
            theoretical_ratio=ratio,
            degenerate=True,
        )
    relaxed = maximize_form(form, trials, seed)
    factors = relaxed.solution

    def re_h(vec: CQVector) -> float:
        return poly(vec).re

    degenerate = False
    if d % 2 == 1:
        best_combo: CQVector | None = None
        best_score = -math.inf
        for signs in itertools.product((1.0, -1.0), repeat=d):
            combo = CQVector(sum(s * f.data for s, f in zip(signs, factors)) / d)
            score = math.prod(signs) * re_h(combo)
            if score > best_score:
                best_score = score
                best_combo = combo
        assert best_combo is not None
        if best_combo.norm() < DEGENERATE_NORM:
            out = max(factors, key=re_h)
            degenerate = True
        else:
            unit = best_combo.unit()
            out = max((unit, -unit), key=re_h)
    else:
        best_combo = None
        best_score = -math.inf
        for signs in itertools.product((1.0, -1.0), repeat=d):
            if math.prod(signs) < 0:
                continue
            combo = CQVector(sum(s * f.data for s, f in zip(signs, factors)))
            score = re_h(combo)
            if score > best_score:
                best_score = score
                best_combo = combo
        assert best_combo is not None
        if best_combo.norm() < DEGENERATE_NORM:
            out = max(factors, key=re_h)
            degenerate = True
        else:
            out = best_combo.unit()
    return SolveReport(
        solution=[out],
        objective=re_h(out),
        trials=relaxed.trials,
        best_trial=relaxed.best_trial,
        seed=seed,
        theoretical_ratio=ratio,
        degenerate=degenerate or relaxed.degenerate,
        relaxation=relaxed,
    )


@dataclass
class RankOneResult:
    """Best rank-one approximation candidate found by the randomized solver.

    ``residual`` follows the formula sqrt(max(0, |T|^2 - lam^2)), which is
    exact when the factors stay in the real subalgebra. ``direct_residual``
    recomputes |lam * outer(factors) - T| explicitly; off the real
    subalgebra the two can disagree because the outer product of unit
    factors need not have unit norm, and ``identity_gap`` records the
    difference of the squared values.
    """

    lam: float
    factors: list[CQVector]
    residual: float
    direct_residual: float
    identity_gap: float
    trials: int
    best_trial: int
    seed: int

    @property
    def identity_ok(self) -> bool:
        return self.identity_gap <= 1e-8


def best_rank_one(tensor: CQTensor, trials: int, seed: int) -> RankOneResult:
    """Randomized best rank-one approximation of a nonzero tensor.

    Maximizes the associated multilinear form on unit spheres; the scale is
    the real part of the form at the returned unit factors, sign-normalized
    to be nonnegative by flipping one factor.
    """
    if tensor.norm() == 0.0:
        raise ValueError("zero tensor has no rank-one approximation direction")
    form = MultilinearForm(tensor)
    report = maximize_form(form, trials, seed)
    factors = list(report.solution)
    lam = report.objective
    if lam < 0:
        factors[0] = -factors[0]
        lam = -lam
    norm_sq = tensor.norm() ** 2
    residual = math.sqrt(max(0.0, norm_sq - lam * lam))
    approx = outer_product(factors)
    direct = float(np.sqrt(((lam * approx.data - tensor.data) ** 2).sum()))
    identity_gap = abs((norm_sq - lam * lam) - direct * direct)
    return RankOneResult(
        lam=lam,
        factors=factors,
        residual=residual,
        direct_residual=direct,
        identity_gap=identity_gap,
        trials=report.trials,
        best_trial=report.best_trial,
        seed=seed,
    )


def form_ratio_bound(dims: Sequence[int], gamma: float) -> float:
    """Reported approximation-ratio formula for form problems.

    Product of sqrt(gamma * ln n / n) over the d-2 smallest slot dimensions;
    equals 1 for d = 2. Requires every dimension >= 2 and
    0 < gamma < n_min / ln(n_min).
    """
    dims = sorted(int(n) for n in dims)
    if len(dims) < 2:
        raise ValueError("ratio formula needs at least two slots")
    if dims[0] < 2:
        raise ValueError("ratio formula needs all dimensions >= 2")
    n_min = dims[0]
    if not 0 < gamma < n_min / math.log(n_min):
        raise ValueError(f"gamma must lie in (0, {n_min / math.log(n_min):g})")
    ratio = 1.0
    for n in dims[:-2]:
        ratio *= math.sqrt(gamma * math.log(n) / n)
    return ratio


def poly_ratio_bound(degree: int, dim: int, gamma: float) -> float:
    """Reported approximation-ratio formula for polynomial problems.

    d^-d * d! * (gamma * ln n / n)^((d-2)/2); requires n >= 2 and
    0 < gamma < n / ln(n).
    """
    if dim < 2:
        raise ValueError("ratio formula needs dimension >= 2")
    if not 0 < gamma < dim / math.log(dim):
        raise ValueError(f"gamma must lie in (0, {dim / math.log(dim):g})")
    d = int(degree)
    return d ** (-d) * math.factorial(d) * (gamma * math.log(dim) / dim) ** ((d - 2) / 2)


def estimate_ball_min(poly: PolyProblem, trials: int, seed: int) -> float:
    """Upper estimate of the minimum of Re H over the unit ball.

    Runs the maximization pipeline on -H and negates the result; for even
    degree the origin is also a candidate, so the estimate is capped at 0.
    """
    report = maximize_poly(-poly, trials, seed)
    estimate = -report.objective
    if poly.degree % 2 == 0:
        estimate = min(0.0, estimate)
    return estimate
