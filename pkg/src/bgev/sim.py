"""Monte Carlo evaluation of the maximum-likelihood estimator.

One cell draws m replicate samples of size n at a known parameter vector,
refits each by Nelder-Mead from a "truth plus uniform(0,1)" start, and
aggregates empirical mean, bias and mean squared error per parameter.  The
scale parameter is held at its true value during the refits, mirroring the
three-parameter (xi, mu, delta) study design the tables follow; the free
parameters are exactly the columns of the report.

Seeding is splittable: replicate r of a cell with seed s uses the stream
seeded by (s, r), so serial and parallel executions produce identical
output, byte for byte.
"""

from __future__ import annotations

import configparser
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distribution import sample
from .likelihood import log_likelihood
from .mle import InfeasibleStartError, OptimizerOptions, fit_mle
from .params import BgevParams, ParameterError

__all__ = [
    "FREE_PARAMS",
    "SimConfig",
    "SimReport",
    "SimCellError",
    "run_cell",
    "run_suite",
    "load_suite_config",
    "reports_to_csv",
    "reports_to_table",
    "CSV_HEADER",
]

FREE_PARAMS = ("xi", "mu", "delta")

CSV_HEADER = (
    "xi,mu,sigma,delta,n,m,seed,"
    "mean_xi,mean_mu,mean_delta,"
    "bias_xi,bias_mu,bias_delta,"
    "mse_xi,mse_mu,mse_delta,failures"
)

_DELTA_MARGIN = 1e-6
_XI_MARGIN = 1e-6


class SimCellError(RuntimeError):
    """Raised when a cell loses more replicates than its failure budget."""


@dataclass(frozen=True)
class SimConfig:
    """One study cell: true parameters, sample size, replicate count, seed.

    start_rule is either the string "true_plus_uniform" (the default: each
    free coordinate of the start is the true value plus an independent
    uniform(0,1) draw, shrunk toward the truth if that lands outside the
    feasible set for the replicate's data) or an explicit BgevParams used
    verbatim for every replicate.
    """

    truth: BgevParams
    n: int
    m: int = 100
    seed: int = 0
    start_rule: str | BgevParams = "true_plus_uniform"
    max_failure_rate: float = 0.2

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.n < 8:
            raise ValueError("n must be >= 8")
        if isinstance(self.start_rule, str) and self.start_rule != "true_plus_uniform":
            raise ValueError(f"unknown start rule {self.start_rule!r}")


@dataclass(frozen=True)
class SimReport:
    config: SimConfig
    mean: dict[str, float]
    bias: dict[str, float]
    mse: dict[str, float]
    failures: int
    replicates_used: int
    wall_time: float = field(compare=False)

    def csv_row(self) -> str:
        t = self.config.truth
        cells = [
            _fmt(t.xi),
            _fmt(t.mu),
            _fmt(t.sigma),
            _fmt(t.delta),
            str(self.config.n),
            str(self.config.m),
            str(self.config.seed),
        ]
        cells += [_fmt(self.mean[k]) for k in FREE_PARAMS]
        cells += [_fmt(self.bias[k]) for k in FREE_PARAMS]
        cells += [_fmt(self.mse[k]) for k in FREE_PARAMS]
        cells.append(str(self.failures))
        return ",".join(cells)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _project_start(truth: BgevParams, shift: np.ndarray, lam: float) -> BgevParams:
    xi = truth.xi + lam * shift[0]
    mu = truth.mu + lam * shift[1]
    delta = max(truth.delta + lam * shift[2], -1.0 + _DELTA_MARGIN)
    if abs(xi) < _XI_MARGIN:
        xi = _XI_MARGIN if truth.xi > 0 else -_XI_MARGIN
    return BgevParams(xi=xi, mu=mu, sigma=truth.sigma, delta=delta)


def run_cell(cfg: SimConfig) -> SimReport:
    """Run every replicate of one cell and aggregate the estimates.

    Non-convergent or infeasible replicates are excluded from the moments
    and counted; exceeding max_failure_rate * m of them raises SimCellError.
    """
    t0 = time.perf_counter()
    truth = cfg.truth
    opts = OptimizerOptions(fixed={"sigma": truth.sigma})
    estimates: list[tuple[float, float, float]] = []
    failures = 0

    for r in range(cfg.m):
        rng = np.random.default_rng([cfg.seed, r])
        x = sample(cfg.n, truth, rng)
        shift = rng.random(len(FREE_PARAMS))

        if isinstance(cfg.start_rule, BgevParams):
            start = cfg.start_rule
        else:
            start = None
            lam = 1.0
            for _ in range(40):
                cand = _project_start(truth, shift, lam)
                if np.isfinite(log_likelihood(cand, x)):
                    start = cand
                    break
                lam *= 0.5
            if start is None:
                start = truth

        try:
            res = fit_mle(x, start, opts)
        except (InfeasibleStartError, ParameterError, ValueError):
            failures += 1
            continue
        if not res.converged:
            failures += 1
            continue
        th = res.theta_hat
        estimates.append((th.xi, th.mu, th.delta))

    if failures > cfg.max_failure_rate * cfg.m:
        raise SimCellError(
            f"{failures}/{cfg.m} replicates failed (budget {cfg.max_failure_rate:.0%}) "
            f"for cell truth={truth}, n={cfg.n}, seed={cfg.seed}"
        )
    est = np.asarray(estimates)
    true_vec = np.array([truth.xi, truth.mu, truth.delta])
    mean = est.mean(axis=0)
    bias = mean - true_vec
    mse = ((est - true_vec) ** 2).mean(axis=0)
    return SimReport(
        config=cfg,
        mean=dict(zip(FREE_PARAMS, map(float, mean))),
        bias=dict(zip(FREE_PARAMS, map(float, bias))),
        mse=dict(zip(FREE_PARAMS, map(float, mse))),
        failures=failures,
        replicates_used=len(estimates),
        wall_time=time.perf_counter() - t0,
    )


def run_suite(
    cells: list[SimConfig], parallelism: int = 1
) -> tuple[list[SimReport | None], list[tuple[int, str]]]:
    """Run all cells, optionally across processes.

    Returns (reports, errors): reports holds one entry per cell in input
    order, None where the cell errored; errors pairs each failed cell index
    with its message.  Partial results are always preserved.
    """
    if not cells:
        raise ValueError("no cells to run")
    reports: list[SimReport | None] = [None] * len(cells)
    errors: list[tuple[int, str]] = []
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = [pool.submit(run_cell, c) for c in cells]
            for i, fut in enumerate(futures):
                try:
                    reports[i] = fut.result()
                except Exception as exc:  # noqa: BLE001 - cell errors must not kill the suite
                    errors.append((i, str(exc)))
    else:
        for i, c in enumerate(cells):
            try:
                reports[i] = run_cell(c)
            except Exception as exc:  # noqa: BLE001
                errors.append((i, str(exc)))
    return reports, errors


def reports_to_csv(reports: list[SimReport | None]) -> str:
    lines = [CSV_HEADER]
    lines += [r.csv_row() for r in reports if r is not None]
    return "\n".join(lines) + "\n"


def reports_to_table(reports: list[SimReport | None]) -> str:
    """Human-readable table mirroring the study layout: empirical means,
    then bias, then MSE, one row per cell."""
    head = (
        f"{'n':>5} {'xi':>7} {'xi_hat':>9} {'mu':>7} {'mu_hat':>9} "
        f"{'delta':>7} {'delta_hat':>10} | {'bias_xi':>9} {'bias_mu':>9} {'bias_dl':>9} "
        f"| {'mse_xi':>9} {'mse_mu':>9} {'mse_dl':>9} | {'fail':>4}"
    )
    rows = [head, "-" * len(head)]
    for r in reports:
        if r is None:
            continue
        t = r.config.truth
        rows.append(
            f"{r.config.n:>5} {t.xi:>7.3g} {r.mean['xi']:>9.4f} {t.mu:>7.3g} {r.mean['mu']:>9.4f} "
            f"{t.delta:>7.3g} {r.mean['delta']:>10.4f} | "
            f"{r.bias['xi']:>9.4f} {r.bias['mu']:>9.4f} {r.bias['delta']:>9.4f} | "
            f"{r.mse['xi']:>9.5f} {r.mse['mu']:>9.5f} {r.mse['delta']:>9.5f} | {r.failures:>4}"
        )
    return "\n".join(rows) + "\n"


def _parse_floats(raw: str) -> list[float]:
    return [float(tok) for tok in raw.replace(",", " ").split()]


def _parse_ints(raw: str) -> list[int]:
    return [int(tok) for tok in raw.replace(",", " ").split()]


def load_suite_config(path: str) -> list[SimConfig]:
    """Parse a suite description file into a list of cells.

    The file is INI-style.  A ``[cell NAME]`` section declares one cell with
    scalar keys xi, mu, delta, n and optional sigma (default 1), m (default
    100), seed (default 0).  A ``[grid NAME]`` (or plain ``[grid]``) section
    declares cross-products: xi, mu, delta and n take comma-separated lists,
    and cells are expanded in xi-outer, mu, delta, n-inner order with seeds
    seed_base, seed_base+1, ...
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(path)
    cells: list[SimConfig] = []
    for section in parser.sections():
        sec = parser[section]
        kind = section.split()[0].lower()
        if kind == "cell":
            cells.append(
                SimConfig(
                    truth=BgevParams(
                        xi=sec.getfloat("xi"),
                        mu=sec.getfloat("mu"),
                        sigma=sec.getfloat("sigma", 1.0),
                        delta=sec.getfloat("delta"),
                    ),
                    n=sec.getint("n"),
                    m=sec.getint("m", 100),
                    seed=sec.getint("seed", 0),
                )
            )
        elif kind == "grid":
            xis = _parse_floats(sec["xi"])
            mus = _parse_floats(sec["mu"])
            deltas = _parse_floats(sec["delta"])
            ns = _parse_ints(sec["n"])
            sigma = sec.getfloat("sigma", 1.0)
            m = sec.getint("m", 100)
            seed_base = sec.getint("seed", 0)
            idx = 0
            for xi in xis:
                for mu in mus:
                    for dl in deltas:
                        for n in ns:
                            cells.append(
                                SimConfig(
                                    truth=BgevParams(xi=xi, mu=mu, sigma=sigma, delta=dl),
                                    n=n,
                                    m=m,
                                    seed=seed_base + idx,
                                )
                            )
                            idx += 1
        else:
            raise ValueError(f"unknown section kind {section!r} (expected 'cell ...' or 'grid ...')")
    if not cells:
        raise ValueError(f"no cells defined in {path}")
    return cells
