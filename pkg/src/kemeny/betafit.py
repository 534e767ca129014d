"""Beta parameter estimation for Kemeny distances.

The distance between two size-n vectors lives on the integer support
[0, n^2-n]; dividing by N = n^2-n norms it onto [0, 1], where its shape is
fit as a Beta.  Three estimators are provided: the closed-form joint
method-of-moments in (n, rho), the symmetric marginal method-of-moments in
the sample variance, and a Newton maximum-likelihood fit for normalized
rank vectors, plus the pipeline that reconstructs a correlation from
fitted marginal moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    RankRowVector,
    VectorLike,
    as_data_vector,
    kemeny_rho,
    row_sum_vector,
)
from .errors import ConvergenceError, DegenerateInputError, ValidationError
from .special import digamma, lgamma, trigamma

_NEWTON_MAX_ITER = 200
_NEWTON_GRAD_TOL = 1e-10


@dataclass(frozen=True)
class BetaParams:
    """Shape pair of a Beta distribution; both shapes strictly positive."""

    alpha1: float
    alpha2: float

    def __post_init__(self):
        if not (self.alpha1 > 0.0 and self.alpha2 > 0.0):
            raise ValidationError(
                f"Beta shapes must be positive, got ({self.alpha1}, {self.alpha2})"
            )

    @property
    def mean(self) -> float:
        return self.alpha1 / (self.alpha1 + self.alpha2)

    @property
    def variance(self) -> float:
        s = self.alpha1 + self.alpha2
        return self.alpha1 * self.alpha2 / (s * s * (s + 1.0))


@dataclass(frozen=True)
class MoMJointFit:
    """Joint method-of-moments result for a distance rho at sample size n."""

    params: BetaParams
    n: int
    rho: float

    @property
    def support(self) -> int:
        return self.n * self.n - self.n

    @property
    def fitted_distance(self) -> float:
        """params.mean * support; equals rho by construction."""
        return self.params.mean * self.support


def mom_joint_fit(n: int, rho: float) -> MoMJointFit:
    """Closed-form joint Beta shape fit from (n, rho).

    With N = n^2-n and
    G = 18 rho^2 + 2n^5 + n^4 - 19n^3 - 18n^2 rho + 31n^2 + 18n rho - 19n + 4:

        alpha1 = rho (N - rho is swapped in for alpha2) * G
                 / (n (n-1)^4 (2n^2 + 7n - 4))

    The fitted mean times N reproduces rho exactly.  rho at or outside the
    open support (0, N) is degenerate and rejected, as is the single
    interior point (n=2, rho=1) where both shapes collapse to zero.
    """
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    support = n * n - n
    if not 0.0 < rho < support:
        raise ValidationError(
            f"rho must lie strictly inside (0, {support}), got {rho}"
        )
    # Horner-ordered n-polynomial plus the grouped rho terms: the quadratic
    # and the -18(n^2-n)rho cross term combine into 18 rho (rho - N)
    n_ = float(n)
    poly = ((((2.0 * n_ + 1.0) * n_ - 19.0) * n_ + 31.0) * n_ - 19.0) * n_ + 4.0
    g = poly + 18.0 * rho * (rho - support)
    denom = n_ * (n_ - 1.0) ** 4 * (2.0 * n_ * n_ + 7.0 * n_ - 4.0)
    alpha1 = rho * g / denom
    alpha2 = (support - rho) * g / denom
    if alpha1 <= 0.0 or alpha2 <= 0.0:
        raise ValidationError(
            f"degenerate joint fit at n={n}, rho={rho}: non-positive shape"
        )
    fit = MoMJointFit(params=BetaParams(alpha1, alpha2), n=n, rho=float(rho))
    if abs(fit.fitted_distance - rho) > 1e-9 * max(1.0, abs(rho)):
        raise ConvergenceError(
            f"mean identity violated: {fit.fitted_distance} != {rho}"
        )
    return fit


def mom_marginal_alpha(n: int, variance: float) -> float:
    """Symmetric-Beta marginal shape from a distance variance:
    alpha = (n^2 - n - 4v) / (8v), valid for 0 < v < (n^2-n)/4."""
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    support = n * n - n
    if not 0.0 < variance < support / 4.0:
        raise ValidationError(
            f"variance must lie in (0, {support / 4.0}) for a positive shape, "
            f"got {variance}"
        )
    return (support - 4.0 * variance) / (8.0 * variance)


def _beta_loglik(alpha: float, beta: float, log_u: float, log_1mu: float, m: int) -> float:
    return (
        (alpha - 1.0) * log_u
        + (beta - 1.0) * log_1mu
        - m * (lgamma(alpha) + lgamma(beta) - lgamma(alpha + beta))
    )


def _mom_init(u: np.ndarray) -> tuple[float, float]:
    mean = float(u.mean())
    var = float(u.var())
    mean = min(max(mean, 1e-6), 1.0 - 1e-6)
    cap = mean * (1.0 - mean)
    if var <= 0.0 or var >= cap:
        var = cap * 0.5
    s = cap / var - 1.0
    s = max(s, 1e-3)
    return max(mean * s, 1e-6), max((1.0 - mean) * s, 1e-6)


def _symmetric_line_search(log_u: float, log_1mu: float, m: int) -> tuple[float, float]:
    """Fallback: golden-section maximum along the alpha1 == alpha2 line."""
    lo, hi = 1e-6, 1e6
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = math.log(lo), math.log(hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = _beta_loglik(math.exp(c), math.exp(c), log_u, log_1mu, m)
    fd = _beta_loglik(math.exp(d), math.exp(d), log_u, log_1mu, m)
    for _ in range(200):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = _beta_loglik(math.exp(c), math.exp(c), log_u, log_1mu, m)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = _beta_loglik(math.exp(d), math.exp(d), log_u, log_1mu, m)
        if b - a < 1e-12:
            break
    best = math.exp((a + b) / 2.0)
    return best, best


def beta_mle_fit(u: VectorLike) -> BetaParams:
    """Maximum-likelihood Beta shapes for values in [0, 1].

    Newton iteration on the digamma score equations, initialized at the
    method-of-moments point; exact-endpoint values are shrunk by
    u' = (u(m-1) + 0.5)/m before logs.  Backtracking keeps every step an
    improvement, so the returned point is never worse than the initializer.
    """
    arr = np.asarray(as_data_vector(u).values, dtype=float)
    if arr.size < 3:
        raise ValidationError(f"need at least 3 values, got {arr.size}")
    if np.min(arr) < 0.0 or np.max(arr) > 1.0:
        raise ValidationError("values must lie in [0, 1]")
    if arr.min() == arr.max():
        raise DegenerateInputError("all values equal: Beta fit undefined")
    m = arr.size
    at_edge = (arr == 0.0) | (arr == 1.0)
    work = np.where(at_edge, (arr * (m - 1) + 0.5) / m, arr)
    log_u = float(np.log(work).sum())
    log_1mu = float(np.log1p(-work).sum())

    alpha, beta = _mom_init(work)
    loglik = _beta_loglik(alpha, beta, log_u, log_1mu, m)
    for _ in range(_NEWTON_MAX_ITER):
        psi_ab = digamma(alpha + beta)
        g1 = m * (psi_ab - digamma(alpha)) + log_u
        g2 = m * (psi_ab - digamma(beta)) + log_1mu
        gnorm = math.hypot(g1, g2)
        if gnorm < _NEWTON_GRAD_TOL:
            break
        tri_ab = trigamma(alpha + beta)
        h11 = m * (tri_ab - trigamma(alpha))
        h22 = m * (tri_ab - trigamma(beta))
        h12 = m * tri_ab
        det = h11 * h22 - h12 * h12
        if abs(det) < 1e-12 * max(1.0, abs(h11 * h22)):
            alpha, beta = _symmetric_line_search(log_u, log_1mu, m)
            loglik = _beta_loglik(alpha, beta, log_u, log_1mu, m)
            break
        step1 = -(h22 * g1 - h12 * g2) / det
        step2 = -(h11 * g2 - h12 * g1) / det
        if max(abs(step1), abs(step2)) < 1e-14 * (alpha + beta):
            break
        scale = 1.0
        improved = False
        for _ in range(40):
            cand1 = alpha + scale * step1
            cand2 = beta + scale * step2
            if cand1 > 0.0 and cand2 > 0.0:
                cand_ll = _beta_loglik(cand1, cand2, log_u, log_1mu, m)
                # strict: an equal log-likelihood is the float plateau
                if cand_ll > loglik:
                    alpha, beta, loglik = cand1, cand2, cand_ll
                    improved = True
                    break
            scale *= 0.5
        if not improved:
            # no ascent direction survives rounding: converged in float terms
            break
    else:
        raise ConvergenceError(
            f"Beta MLE did not converge within {_NEWTON_MAX_ITER} iterations"
        )
    return BetaParams(alpha, beta)


def normalize_rank_vector(v: RankRowVector | VectorLike) -> np.ndarray:
    """Map row sums onto [0, 1]: subtract the minimum, divide by the maximum."""
    if isinstance(v, RankRowVector):
        entries = np.asarray(v.entries, dtype=float)
    else:
        entries = np.asarray(as_data_vector(v).values, dtype=float)
    shifted = entries - entries.min()
    top = shifted.max()
    if top == 0.0:
        raise DegenerateInputError("zero-range rank vector cannot be normalized")
    return shifted / top


@dataclass(frozen=True)
class MlePipelineResult:
    """Marginal Beta fits plus the moment-reconstructed correlation.

    reconstructed = (n/(n-1)) (mean(xy) - mu1_x mu1_y) / sqrt(mu2_x mu2_y)
    with mu1/mu2 the fitted marginal mean and variance; rho_direct is the
    row-sum product-moment correlation it is compared against.  The two are
    reported side by side, never asserted equal.
    """

    fit_x: BetaParams
    fit_y: BetaParams
    mu1_x: float
    mu1_y: float
    mu2_x: float
    mu2_y: float
    product_mean: float
    reconstructed: float
    rho_direct: float

    def as_dict(self) -> dict:
        return {
            "fit_x": {"alpha1": self.fit_x.alpha1, "alpha2": self.fit_x.alpha2},
            "fit_y": {"alpha1": self.fit_y.alpha1, "alpha2": self.fit_y.alpha2},
            "mu1_x": self.mu1_x,
            "mu1_y": self.mu1_y,
            "mu2_x": self.mu2_x,
            "mu2_y": self.mu2_y,
            "product_mean": self.product_mean,
            "reconstructed": self.reconstructed,
            "rho_direct": self.rho_direct,
        }


def mle_moment_pipeline(x: VectorLike, y: VectorLike) -> MlePipelineResult:
    """Fit marginal Betas to both normalized rank vectors and reconstruct
    the correlation from fitted moments, alongside the direct row-sum rho."""
    xv = as_data_vector(x)
    yv = as_data_vector(y)
    if xv.is_degenerate or yv.is_degenerate:
        raise DegenerateInputError("pipeline requires non-degenerate inputs")
    ux = normalize_rank_vector(row_sum_vector(xv, centered=False))
    uy = normalize_rank_vector(row_sum_vector(yv, centered=False))
    fit_x = beta_mle_fit(ux)
    fit_y = beta_mle_fit(uy)
    n = xv.n
    product_mean = float((ux * uy).mean())
    mu1_x, mu1_y = fit_x.mean, fit_y.mean
    mu2_x, mu2_y = fit_x.variance, fit_y.variance
    reconstructed = (
        (n / (n - 1.0))
        * (product_mean - mu1_x * mu1_y)
        / math.sqrt(mu2_x * mu2_y)
    )
    return MlePipelineResult(
        fit_x=fit_x,
        fit_y=fit_y,
        mu1_x=mu1_x,
        mu1_y=mu1_y,
        mu2_x=mu2_x,
        mu2_y=mu2_y,
        product_mean=product_mean,
        reconstructed=reconstructed,
        rho_direct=kemeny_rho(xv, yv),
    )
