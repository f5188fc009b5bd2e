"""Maximum-likelihood fitting of BGEV parameters.

The search runs in unconstrained coordinates (mu, log sigma, log(1+delta),
xi) so the scale and bimodality constraints hold by construction; results
are reported in natural coordinates.  Individual parameters can be pinned to
fixed values, which is how the scale is held at 1 in simulation studies and
how the plain GEV arises as the delta = 0 submodel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distribution import sample
from .likelihood import PARAM_ORDER, hessian, log_likelihood
from .neldermead import nelder_mead
from .params import BgevParams, ParameterError

__all__ = [
    "OptimizerOptions",
    "FitResult",
    "FisherInformation",
    "InfeasibleStartError",
    "fit_mle",
    "fisher_information",
    "default_start",
]

_XI_FLOOR = 1e-8  # |xi| below this is treated as infeasible (model needs xi != 0)


class InfeasibleStartError(ValueError):
    """The starting point assigns zero likelihood to the data."""


@dataclass(frozen=True)
class OptimizerOptions:
    ftol: float = 1e-8
    xtol: float = 1e-8
    max_iter: int = 5000
    fixed: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.fixed) - set(PARAM_ORDER)
        if unknown:
            raise ValueError(f"unknown fixed parameters: {sorted(unknown)}")


@dataclass(frozen=True)
class FitResult:
    """Outcome of one likelihood maximization.

    fim is the observed information matrix -hessian(theta_hat) in natural
    coordinates, ordered (mu, sigma, delta, xi); std_errors are the square
    roots of the diagonal of its inverse and are present only when the
    matrix is positive definite.
    """

    theta_hat: BgevParams
    neg2loglik: float
    converged: bool
    iterations: int
    fim: np.ndarray | None
    std_errors: np.ndarray | None
    start: BgevParams


def _to_internal(p: BgevParams) -> np.ndarray:
    return np.array([p.mu, math.log(p.sigma), math.log1p(p.delta), p.xi])


def _from_internal(z: np.ndarray, fixed: dict[str, float]) -> BgevParams | None:
    mu, lsg, ldl, xi = z
    if not np.all(np.isfinite(z)):
        return None
    try:
        kw = {
            "mu": float(mu),
            "sigma": float(math.exp(lsg)),
            "delta": float(math.expm1(ldl)),
            "xi": float(xi),
        }
        kw.update(fixed)  # pinned values bypass the log round trip exactly
        if abs(kw["xi"]) < _XI_FLOOR:
            return None
        return BgevParams(**kw)
    except (ParameterError, OverflowError):
        return None


def fit_mle(x, start: BgevParams, opts: OptimizerOptions | None = None) -> FitResult:
    """Maximize the BGEV log-likelihood by Nelder-Mead from the given start.

    The start must be feasible (finite log-likelihood) and the sample must
    hold at least 8 observations.  Non-convergence within the iteration cap
    is reported through the converged flag, never raised; the best point
    seen is still returned and its -2 log-likelihood never exceeds the
    start's.
    """
    opts = opts or OptimizerOptions()
    x = np.asarray(x, dtype=float)
    if x.size < 8:
        raise ValueError(f"need at least 8 observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")

    f0 = log_likelihood(start, x)
    if not np.isfinite(f0):
        raise InfeasibleStartError(
            "starting parameters give zero likelihood (data outside their support)"
        )

    z_full = _to_internal(start)
    fixed_internal = dict(opts.fixed)
    free_idx = [i for i, name in enumerate(PARAM_ORDER) if name not in fixed_internal]
    if not free_idx:
        raise ValueError("all parameters fixed, nothing to optimize")

    z_base = z_full.copy()
    for name, val in fixed_internal.items():
        i = PARAM_ORDER.index(name)
        if name == "sigma":
            if val <= 0:
                raise ValueError("fixed sigma must be > 0")
            z_base[i] = math.log(val)
        elif name == "delta":
            if val <= -1:
                raise ValueError("fixed delta must be > -1")
            z_base[i] = math.log1p(val)
        else:
            z_base[i] = val

    def objective(z_free: np.ndarray) -> float:
        z = z_base.copy()
        z[free_idx] = z_free
        theta = _from_internal(z, fixed_internal)
        if theta is None:
            return np.inf
        return -log_likelihood(theta, x)

    res = nelder_mead(
        objective, z_base[free_idx], ftol=opts.ftol, xtol=opts.xtol, max_iter=opts.max_iter
    )

    z_hat = z_base.copy()
    z_hat[free_idx] = res.x
    theta_hat = _from_internal(z_hat, fixed_internal)
    if theta_hat is None or not np.isfinite(res.fun):
        # optimizer never left the infeasible region; report the start itself
        theta_hat = _from_internal(z_base, fixed_internal) or start

    ll_hat = log_likelihood(theta_hat, x)
    fim = None
    std = None
    h = hessian(theta_hat, x)
    if np.all(np.isfinite(h)):
        fim = -0.5 * (h + h.T)  # observed information, symmetrized
        try:
            np.linalg.cholesky(fim)  # positive definiteness gate
            std = np.sqrt(np.diag(np.linalg.inv(fim)))
        except np.linalg.LinAlgError:
            std = None

    return FitResult(
        theta_hat=theta_hat,
        neg2loglik=-2.0 * ll_hat,
        converged=res.converged,
        iterations=res.iterations,
        fim=fim,
        std_errors=std,
        start=start,
    )


def default_start(x) -> BgevParams:
    """Data-driven starting point: shape sign from the sample skewness,
    location matched to the sample median, unit transform scale, delta 0.
    The shape is shrunk toward zero until the whole sample is feasible."""
    x = np.asarray(x, dtype=float)
    med = float(np.median(x))
    centered = x - np.mean(x)
    s = float(np.std(x))
    skew = float(np.mean(centered**3) / s**3) if s > 0 else 0.0
    xi0 = 0.1 if skew >= 0 else -0.1
    for _ in range(60):
        mu0 = med - ((math.log(2.0)) ** (-xi0) - 1.0) / xi0
        cand = BgevParams(xi=xi0, mu=mu0, sigma=1.0, delta=0.0)
        if np.isfinite(log_likelihood(cand, x)):
            return cand
        xi0 *= 0.5
        if abs(xi0) < 1e-4:
            xi0 = math.copysign(1e-4, xi0)
            mu0 = med - ((math.log(2.0)) ** (-xi0) - 1.0) / xi0
            return BgevParams(xi=xi0, mu=mu0, sigma=1.0, delta=0.0)
    raise InfeasibleStartError("could not construct a feasible default start")


@dataclass(frozen=True)
class FisherInformation:
    """Monte Carlo estimate of the per-observation Fisher information.

    matrix averages -hessian/n over replicates drawn at theta; mc_std_error
    holds the entrywise Monte Carlo standard error of that average.  Invalid
    replicates (non-finite Hessian) are skipped and counted.
    """

    matrix: np.ndarray
    mc_std_error: np.ndarray
    replicates_used: int
    replicates_failed: int


def fisher_information(theta: BgevParams, m: int, n: int, seed: int) -> FisherInformation:
    """Average -hessian(theta, sample_n)/n over m seeded replicates."""
    if m < 30:
        raise ValueError(f"need m >= 30 replicates, got {m}")
    mats = []
    failed = 0
    for r in range(m):
        rng = np.random.default_rng([int(seed), r])
        xr = sample(n, theta, rng)
        h = hessian(theta, xr)
        if np.all(np.isfinite(h)):
            mats.append(-h / n)
        else:
            failed += 1
    if not mats:
        raise ArithmeticError("every replicate produced an invalid Hessian")
    stack = np.stack(mats)
    mean = stack.mean(axis=0)
    se = stack.std(axis=0, ddof=1) / math.sqrt(len(mats))
    return FisherInformation(
        matrix=0.5 * (mean + mean.T),
        mc_std_error=se,
        replicates_used=len(mats),
        replicates_failed=failed,
    )
