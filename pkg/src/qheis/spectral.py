"""Floating-point realization of the algebra on a truncated basis.

B acts as the weighted shift with weights alpha_n = sqrt({n+1}_q), A as its
adjoint, and C^k as the diagonal operator with entries q^(kn).  Truncation
uses apply-then-project semantics: every matrix column is the exact action
on a basis vector computed in the infinite model, with rows >= N dropped
afterwards.  Multiplying truncated matrices instead would corrupt the last
columns of shift powers, so products of elements are normalized symbolically
before they are materialized.

Floating-point policy: radicands, q-powers, and weights are computed as
exact rationals and rounded once at the end, so the 1e-12 comparisons in
the test suite measure the mathematics rather than accumulation error.

The windowed geometric-mean estimators converge to the spectral radius from
below; the lower-index estimator attains its infimum at n = 0, where it
equals (1-q)^(-1/2) * prod_{i<k} (1-q^(i+1))^(1/2k), so its error decays
like O(1/k).  That slow rate is inherent to the formula, not a defect; the
matching tolerance at k = 500 is one percent.

The operator-norm default is the exact LAPACK singular value decomposition.
A deterministic power iteration on the Gram matrix is available as an
opt-in method, but the top of the truncated shift spectrum is exponentially
clustered ({n}_q -> 1/(1-q) geometrically), which stalls the Rayleigh
quotient around 5e-8 relative error no matter the iteration budget; the SVD
route is what the verification tolerances rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Element
from .lie import apply_symbolic
from .ratfun import RF_ONE, RF_ONE_MINUS_Q, RatFun, qbracket_value

#: magnitudes below this are purged from sparse vectors
PURGE_EPS = 1e-300


@dataclass(frozen=True)
class NumericQ:
    """An exact rational deformation parameter, constrained to (0, 1)."""

    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if not 0 < self.value < 1:
            raise ValueError(f"q must lie strictly between 0 and 1, got {self.value}")

    @classmethod
    def coerce(cls, value) -> "NumericQ":
        if isinstance(value, NumericQ):
            return value
        if isinstance(value, str):
            return cls(Fraction(value))
        return cls(Fraction(value))

    def __float__(self) -> float:
        return float(self.value)


def _alpha_sq(q0: Fraction, n: int) -> Fraction:
    """Exact squared weight {n+1}_q at q0."""
    return qbracket_value(n + 1, q0)


@dataclass(frozen=True)
class WeightSequence:
    """Shift weights alpha_n = sqrt({n+1}_q) for n < N; strictly increasing
    and bounded above by (1-q)^(-1/2)."""

    q0: NumericQ
    values: tuple


def weights(q0, N: int) -> WeightSequence:
    if N < 1:
        raise ValueError("need at least one weight")
    q0 = NumericQ.coerce(q0)
    vals = tuple(math.sqrt(float(_alpha_sq(q0.value, n))) for n in range(N))
    return WeightSequence(q0=q0, values=vals)


def apply_numeric(x: Element, n: int, q0) -> dict:
    """Numeric image of basis vector v_n under x: the exact symbolic action
    evaluated at q0, one rounding per merged scalar.  Entries below the
    purge threshold are dropped."""
    q0 = NumericQ.coerce(q0)
    out = apply_symbolic(x, n).numeric(q0.value)
    return {idx: v for idx, v in out.items() if abs(v) >= PURGE_EPS}


@dataclass(frozen=True, eq=False)
class TruncatedMatrix:
    """Dense N x N truncation; column j is the action on v_j projected to
    indices below N."""

    dim: int
    q0: NumericQ
    data: np.ndarray
    source: str

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.dim else 0.0


def matrix(x: Element, q0, N: int) -> TruncatedMatrix:
    if N < 1:
        raise ValueError("matrix dimension must be positive")
    q0 = NumericQ.coerce(q0)
    data = np.zeros((N, N))
    for j in range(N):
        for idx, v in apply_numeric(x, j, q0).items():
            if idx < N:
                data[idx, j] = v
    return TruncatedMatrix(dim=N, q0=q0, data=data, source=str(x))


class NonConvergenceError(RuntimeError):
    """Power iteration failed to settle within its iteration budget."""

    def __init__(self, iterations: int, estimate: float, last_increment: float):
        self.iterations = iterations
        self.estimate = estimate
        self.last_increment = last_increment
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(estimate {estimate!r}, last increment {last_increment:.3e})"
        )


def _power_iteration_norm(data: np.ndarray, tol: float, max_iter: int) -> float:
    gram = data.T @ data
    n = gram.shape[0]
    v = np.ones(n) / math.sqrt(n)
    prev = None
    increment = math.inf
    sigma = 0.0
    for _ in range(max_iter):
        w = gram @ v
        lam = float(v @ w)
        sigma = math.sqrt(max(lam, 0.0))
        if prev is not None:
            increment = abs(sigma - prev)
            if increment < tol:
                return sigma
        prev = sigma
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            return 0.0
        v = w / norm_w
    raise NonConvergenceError(max_iter, sigma, increment)


def op_norm(
    x: Element,
    q0,
    N: int,
    method: str = "svd",
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> float:
    """Largest singular value of the truncated matrix of x.

    ``method="svd"`` (default) is exact and deterministic.  ``"power"``
    runs all-ones-seeded power iteration on the Gram matrix and raises
    :class:`NonConvergenceError` when the estimate increments do not drop
    below ``tol`` within ``max_iter`` steps; see the module notes for why
    shift powers defeat it.
    """
    if N < 2:
        raise ValueError("norm estimation needs dimension at least 2")
    m = matrix(x, q0, N)
    if method == "svd":
        if not m.data.any():
            return 0.0
        return float(np.linalg.svd(m.data, compute_uv=False)[0])
    if method == "power":
        return _power_iteration_norm(m.data, tol, max_iter)
    raise ValueError(f"unknown method {method!r} (expected 'svd' or 'power')")


def _log_weights(q0: NumericQ, N: int) -> np.ndarray:
    return np.array([0.5 * math.log(float(_alpha_sq(q0.value, n))) for n in range(N)])


def spectral_radius_est(q0, kmax: int, N: int):
    """For each window length k <= kmax, the sup over n < N-k of the
    geometric mean of k consecutive weights; the final entry estimates the
    spectral radius of the shift."""
    if kmax < 1 or N <= kmax:
        raise ValueError("need kmax >= 1 and N > kmax")
    q0 = NumericQ.coerce(q0)
    logs = _log_weights(q0, N)
    csum = np.concatenate([[0.0], np.cumsum(logs)])
    out = []
    for k in range(1, kmax + 1):
        spans = csum[k : N] - csum[0 : N - k]
        out.append(float(math.exp(np.max(spans) / k)))
    return out


def lower_index_est(q0, kmax: int, N: int):
    """Windowed geometric-mean infima; monotonically increasing in k with
    O(1/k) convergence toward (1-q)^(-1/2) (the infimum sits at n = 0)."""
    if kmax < 1 or N <= kmax:
        raise ValueError("need kmax >= 1 and N > kmax")
    q0 = NumericQ.coerce(q0)
    logs = _log_weights(q0, N)
    csum = np.concatenate([[0.0], np.cumsum(logs)])
    out = []
    for k in range(1, kmax + 1):
        spans = csum[k : N] - csum[0 : N - k]
        out.append(float(math.exp(np.min(spans) / k)))
    return out


@dataclass(frozen=True)
class CoherentWitness:
    """A numeric eigenvector candidate for the lowering operator A with
    eigenvalue c, plus its truncation residual."""

    eigenvalue: complex
    entries: dict
    residual: float
    radius: float
    outside_disk: bool


def coherent_vector(c, q0, N: int) -> CoherentWitness:
    """Build v with v_0 = 1, v_(n+1) = c v_n / alpha_n, so that A v = c v in
    the infinite model, and report the truncation residual |Av - cv|/|v|.

    For |c| inside the open disk of radius (1-q)^(-1/2) the residual decays
    geometrically with N.  Larger |c| is allowed but flagged: there the
    residual witnesses boundary or exterior behavior instead of vanishing.
    """
    if N < 2:
        raise ValueError("need dimension at least 2")
    q0 = NumericQ.coerce(q0)
    c = complex(c)
    alphas = weights(q0, N).values
    radius = 1.0 / math.sqrt(1.0 - float(q0))
    v = [0j] * N
    v[0] = 1.0 + 0j
    for n in range(N - 1):
        v[n + 1] = c * v[n] / alphas[n]
    av = [alphas[n] * v[n + 1] for n in range(N - 1)] + [0j]
    num = math.sqrt(sum(abs(av[n] - c * v[n]) ** 2 for n in range(N)))
    den = math.sqrt(sum(abs(z) ** 2 for z in v))
    residual = num / den
    if not math.isfinite(residual):
        raise ValueError("coherent vector overflowed the truncation window")
    entries = {n: z for n, z in enumerate(v) if abs(z) >= PURGE_EPS}
    return CoherentWitness(
        eigenvalue=c,
        entries=entries,
        residual=residual,
        radius=radius,
        outside_disk=abs(c) >= radius,
    )


@dataclass(frozen=True)
class SpectrumFacts:
    """Exact spectral descriptors for a generator or a diagonal power."""

    operator: str
    k: int
    radius_sq: RatFun
    point_spectrum: str
    approx_point_spectrum: str
    compression_spectrum: str
    eigenvalue_formula: str | None = None
    eigenspace: str | None = None
    radius_numeric: float | None = None
    eigenvalues: tuple | None = None


def spectrum_facts(op: str, k: int = 1, q0=None) -> SpectrumFacts:
    """Spectral shape of B (shift), A (its adjoint), or C^k (diagonal):
    B has empty point spectrum, the circle as approximate point spectrum,
    and the open disk as compression spectrum; A has the open disk as point
    spectrum, the closed disk as approximate point spectrum, and empty
    compression spectrum; C^k has eigenvalues q^(kn) with one-dimensional
    eigenspaces and their closure as full spectrum."""
    radius_sq = RF_ONE / RF_ONE_MINUS_Q
    numeric = None
    if q0 is not None:
        q0 = NumericQ.coerce(q0)
        numeric = 1.0 / math.sqrt(1.0 - float(q0))
    if op == "B":
        return SpectrumFacts(
            operator="B",
            k=1,
            radius_sq=radius_sq,
            point_spectrum="empty",
            approx_point_spectrum="circle",
            compression_spectrum="open-disk",
            radius_numeric=numeric,
        )
    if op == "A":
        return SpectrumFacts(
            operator="A",
            k=1,
            radius_sq=radius_sq,
            point_spectrum="open-disk",
            approx_point_spectrum="closed-disk",
            compression_spectrum="empty",
            radius_numeric=numeric,
        )
    if op == "C":
        if k < 1:
            raise ValueError("diagonal powers need k >= 1")
        eigenvalues = None
        if q0 is not None:
            eigenvalues = tuple(float(q0.value**(k * n)) for n in range(20))
        return SpectrumFacts(
            operator="C",
            k=k,
            radius_sq=RF_ONE,
            point_spectrum="eigenvalue-list",
            approx_point_spectrum="closure-of-eigenvalues",
            compression_spectrum="eigenvalue-list",
            eigenvalue_formula=f"q^({k}*n)",
            eigenspace="one-dimensional, spanned by the basis vector of index n",
            radius_numeric=1.0 if q0 is not None else None,
            eigenvalues=eigenvalues,
        )
    raise ValueError(f"unknown operator tag {op!r} (expected 'A', 'B', or 'C')")


@dataclass(frozen=True)
class DecayReport:
    """Column-norm tail of an element: a decaying tail is consistent with
    compactness, a tail bounded away from zero witnesses the opposite.  The
    authoritative compactness answer is the symbolic one."""

    source: str
    q0: NumericQ
    tail: tuple
    verdict: str


def compact_decay_report(x: Element, q0, N: int) -> DecayReport:
    q0 = NumericQ.coerce(q0)
    tail = []
    for n in range(N):
        vec = apply_numeric(x, n, q0)
        tail.append(math.sqrt(sum(v * v for v in vec.values())))
    peak = max(tail) if tail else 0.0
    if peak == 0.0 or tail[-1] < 0.5 * peak:
        verdict = "consistent-with-compact"
    else:
        verdict = "non-compact-witness"
    return DecayReport(source=str(x), q0=q0, tail=tuple(tail), verdict=verdict)
