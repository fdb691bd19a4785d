"""Monte-Carlo checks of the least-squares vs. interpolation risk theory.

The data model throughout is the noisy flat-target design

    Y_i = x_i * (1, ..., 1) + eps_i,   eps_ih ~ N(0, sigma**2) iid,

with scalar regressors ``x_i`` drawn from a :class:`DesignSpec`. The
one-parameter least-squares coefficient then satisfies
``a_hat - 1 = M_n / V_n`` with ``M_n = sum x_i xi_i``, ``V_n = sum x_i**2``
and ``xi_i`` the coordinate mean of ``eps_i``. Its conditional variance is
``sigma**2 / H``; that is the variance bound used in every inequality below
(``sigma2_xi`` in reports), while ``sigma`` stays the per-coordinate scale.

Each replication draws from its own stream ``(seed, check_id, grid_pos,
rep, attempt)``, so results do not depend on evaluation order.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigError, DegenerateDesignError
from .predictors import FlatPredictor, NNIndex, fit_linear_one_param
from .risk import MCEstimate, wilson_lower
from .rng import stream
from .windows import Dataset

X_DISTS = ("uniform_interval", "abs_gaussian_shifted")

# Stream identifiers, one per check.
_COEFF, _VN, _RATIO_LHS, _RATIO_RHS, _PROP_TRAIN, _PROP_TEST, _ERM, _FLAT_TRAIN, _FLAT_TEST = range(1, 10)

MAX_REJECTION_FRACTION = 0.01


def _phi(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


@dataclass(frozen=True)
class DesignSpec:
    """Regressor law, small-ball constants ``(b, p)``, noise scale and horizon.

    ``x_dist`` is ``"uniform_interval"`` with ``params = (lo, hi)`` or
    ``"abs_gaussian_shifted"`` with ``params = (mu, s)``, i.e.
    ``x = |mu + s * Z|``. The claimed ``p`` must not exceed the exact
    ``P(|x| >= b)`` of the chosen law.
    """

    x_dist: str = "uniform_interval"
    params: tuple = (0.5, 1.5)
    b: float = 0.5
    p: float = 1.0
    sigma: float = 0.1
    H: int = 5

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(v) for v in self.params))
        if self.x_dist not in X_DISTS:
            raise ConfigError(f"unknown x_dist {self.x_dist!r}")
        if len(self.params) != 2:
            raise ConfigError("params must be a pair")
        if self.x_dist == "uniform_interval":
            lo, hi = self.params
            if not 0 < lo < hi:
                raise ConfigError("uniform_interval needs 0 < lo < hi")
        elif self.params[1] <= 0:
            raise ConfigError("abs_gaussian_shifted needs s > 0")
        if not self.b > 0 or not 0 < self.p <= 1:
            raise ConfigError("small-ball constants need b > 0 and 0 < p <= 1")
        if self.p > self.small_ball_probability(self.b) + 1e-12:
            raise ConfigError(
                f"p={self.p} exceeds P(|x| >= {self.b}) = {self.small_ball_probability(self.b):.6g}"
            )
        if not self.sigma >= 0:
            raise ConfigError("sigma must be >= 0")
        if int(self.H) != self.H or self.H < 1:
            raise ConfigError("H must be an integer >= 1")

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_dict(self):
        return asdict(self)

    @property
    def sigma2_xi(self):
        return self.sigma**2 / self.H

    def small_ball_probability(self, b):
        """Exact ``P(|x| >= b)`` under the regressor law."""
        if self.x_dist == "uniform_interval":
            lo, hi = self.params
            return float(np.clip((hi - max(b, lo)) / (hi - lo), 0.0, 1.0))
        mu, s = self.params
        return 1.0 - (_phi((b - mu) / s) - _phi((-b - mu) / s))

    def second_moment(self):
        """``E[x**2]``."""
        if self.x_dist == "uniform_interval":
            lo, hi = self.params
            return (hi**3 - lo**3) / (3.0 * (hi - lo))
        mu, s = self.params
        return mu * mu + s * s

    def sample_x(self, rng, size):
        a, c = self.params
        if self.x_dist == "uniform_interval":
            return rng.uniform(a, c, size)
        return np.abs(a + c * rng.standard_normal(size))


def draw_sample(design, n, rng, L=1):
    """Draw ``n`` pairs of the flat-target model.

    Returns ``(x, eps, inputs, targets)``. With ``L > 1`` each input is a
    Gaussian random walk of step ``sigma`` started from a design draw, and
    ``x`` is its last value.
    """
    start = design.sample_x(rng, n)
    if L == 1:
        inputs = start[:, None]
    else:
        steps = design.sigma * rng.standard_normal((n, L - 1))
        inputs = np.concatenate([start[:, None], start[:, None] + np.cumsum(steps, axis=1)], axis=1)
    x = inputs[:, -1]
    eps = design.sigma * rng.standard_normal((n, design.H))
    targets = x[:, None] + eps
    return x, eps, inputs, targets


def _draw_nondegenerate(design, n, seed, keys, L=1, max_attempts=100):
    """Draw until ``V_n > 0``; return the sample and the number of rejected draws."""
    for attempt in range(max_attempts):
        sample = draw_sample(design, n, stream(seed, *keys, attempt), L)
        if np.dot(sample[0], sample[0]) > 0:
            return sample, attempt
    raise DegenerateDesignError(f"{max_attempts} degenerate designs in a row")


def _check_rejections(rejected, total):
    if total and rejected / total > MAX_REJECTION_FRACTION:
        raise ConfigError(
            f"{rejected} of {total} design draws were degenerate (V_n = 0); "
            "the design does not satisfy the non-degeneracy condition"
        )


def loglog_slope(n_grid, values):
    """Least-squares slope of ``log(values)`` against ``log(n)``; NaN if any value <= 0."""
    v = np.asarray(values, dtype=np.float64)
    if np.any(v <= 0) or len(v) < 2:
        return math.nan
    return float(np.polyfit(np.log(np.asarray(n_grid, dtype=np.float64)), np.log(v), 1)[0])


def _dataset(inputs, targets):
    return Dataset(np.arange(len(inputs)), inputs, targets)


# -- coefficient mean-squared error ---------------------------------------


@dataclass
class CoeffMSE:
    n_grid: list
    mse_hat: list
    mse_se: list
    mse_bound: list
    mse_bound_se: list
    inv_vn: list
    loglog_slope: float
    rejections: int

    def dominated(self, k=3.0, atol=1e-24):
        """Per grid point: ``mse_hat <= mse_bound + k * combined SE + atol``.

        ``atol`` absorbs floating-point rounding in ``a_hat`` when the noise
        scale is zero and the bound is exactly zero.
        """
        return [
            m <= b + k * math.hypot(ms, bs) + atol
            for m, b, ms, bs in zip(self.mse_hat, self.mse_bound, self.mse_se, self.mse_bound_se)
        ]


def estimate_coeff_mse(design, n_grid, reps, seed):
    """Estimate ``E[(a_hat - 1)**2]`` and its bound ``4 sigma2_xi E[1/V_n]`` per ``n``."""
    if reps < 100:
        raise ConfigError("reps must be >= 100")
    if any(n < 2 for n in n_grid):
        raise ConfigError("every n must be >= 2")
    s2 = design.sigma2_xi
    out = CoeffMSE(list(n_grid), [], [], [], [], [], math.nan, 0)
    for j, n in enumerate(n_grid):
        sq_err = np.empty(reps)
        inv_v = np.empty(reps)
        for r in range(reps):
            (x, _, inputs, targets), rej = _draw_nondegenerate(design, n, seed, (_COEFF, j, r))
            out.rejections += rej
            a_hat = fit_linear_one_param(_dataset(inputs, targets)).a
            sq_err[r] = (a_hat - 1.0) ** 2
            inv_v[r] = 1.0 / np.dot(x, x)
        mse = MCEstimate.from_samples(sq_err)
        iv = MCEstimate.from_samples(inv_v)
        out.mse_hat.append(mse.mean)
        out.mse_se.append(mse.se)
        out.inv_vn.append(iv.mean)
        out.mse_bound.append(4.0 * s2 * iv.mean)
        out.mse_bound_se.append(4.0 * s2 * iv.se)
    _check_rejections(out.rejections, reps * len(n_grid))
    out.loglog_slope = loglog_slope(out.n_grid, out.mse_hat)
    return out


# -- lower tail of V_n -----------------------------------------------------


@dataclass(frozen=True)
class VnTailPoint:
    n: int
    eta: float
    threshold: float
    frequency: float
    se: float
    bound: float
    reps: int

    @property
    def vacuous(self):
        return self.bound >= 1.0

    def holds(self, k=3.0):
        return self.frequency <= self.bound + k * self.se


def _binomial_se(freq, reps):
    return math.sqrt(max(freq * (1 - freq), 0.0) / reps)


def check_vn_tail(design, n, eta, reps, seed, grid_pos=0):
    """Frequency of ``V_n <= b**2 (p - eta) n`` against ``exp(-2 eta**2 n)``.

    The standard error is the binomial one, floored at ``1 / reps`` so that
    an empirical frequency of exactly zero still carries a resolution.
    """
    if not 0 < eta < design.p:
        raise ConfigError(f"eta must lie in (0, p={design.p}), got {eta}")
    if reps < 1000:
        raise ConfigError("reps must be >= 1000")
    threshold = design.b**2 * (design.p - eta) * n
    hits = 0
    for r in range(reps):
        x = design.sample_x(stream(seed, _VN, grid_pos, r), n)
        hits += np.dot(x, x) <= threshold
    freq = hits / reps
    return VnTailPoint(
        n=int(n),
        eta=float(eta),
        threshold=float(threshold),
        frequency=float(freq),
        se=max(_binomial_se(freq, reps), 1.0 / reps),
        bound=math.exp(-2.0 * eta * eta * n),
        reps=reps,
    )


# -- self-normalized ratio tail --------------------------------------------


@dataclass(frozen=True)
class RatioTailPoint:
    t: float
    frequency: float
    frequency_se: float
    bound: float
    bound_se: float

    @property
    def vacuous(self):
        return self.bound >= 1.0

    def holds(self, k=3.0):
        return self.frequency <= self.bound + k * math.hypot(self.frequency_se, self.bound_se)


def check_ratio_tail(design, n, t_grid, reps, seed):
    """Empirical ``P(|M_n| / V_n >= t)`` against ``2 E[exp(-t**2 V_n / (2 sigma2_xi))]``.

    The right-hand side is averaged over an independent batch of ``V_n``.
    """
    t_grid = [float(t) for t in t_grid]
    if any(t < 0 for t in t_grid):
        raise ConfigError("t_grid must be non-negative")
    if reps < 1000:
        raise ConfigError("reps must be >= 1000")
    ratio = np.empty(reps)
    v_indep = np.empty(reps)
    rejected = 0
    for r in range(reps):
        (x, eps, _, _), rej = _draw_nondegenerate(design, n, seed, (_RATIO_LHS, r))
        rejected += rej
        ratio[r] = abs(np.dot(x, eps.mean(axis=1))) / np.dot(x, x)
        while True:
            x2 = design.sample_x(stream(seed, _RATIO_RHS, r, rej), n)
            v = np.dot(x2, x2)
            if v > 0:
                break
            rej += 1
            rejected += 1
        v_indep[r] = v
    _check_rejections(rejected, 2 * reps)
    s2 = design.sigma2_xi
    points = []
    for t in t_grid:
        hit = ratio >= t
        freq = float(hit.mean())
        if t == 0:
            terms = np.ones(reps)
        elif s2 == 0:
            terms = np.zeros(reps)
        else:
            terms = np.exp(-t * t * v_indep / (2.0 * s2))
        rhs = MCEstimate.from_samples(2.0 * terms)
        points.append(RatioTailPoint(t, freq, _binomial_se(freq, reps), rhs.mean, rhs.se))
    return points


# -- risks of the two predictors -------------------------------------------


@dataclass(frozen=True)
class PropRiskPoint:
    n: int
    nn_risk: MCEstimate
    linear_risk: MCEstimate
    linear_excess: MCEstimate
    nn_design_term: MCEstimate
    nn_noise_term: MCEstimate
    noise_floor: float

    def to_dict(self):
        d = {"n": self.n, "noise_floor": self.noise_floor}
        for name in ("nn_risk", "linear_risk", "linear_excess", "nn_design_term", "nn_noise_term"):
            d[name] = getattr(self, name).to_dict()
        return d


@dataclass
class PropRisks:
    points: list
    linear_excess_slope: float
    reps: int
    test_windows: int
    rejections: int

    def to_dict(self):
        return {
            "points": [p.to_dict() for p in self.points],
            "linear_excess_slope": self.linear_excess_slope,
            "reps": self.reps,
            "test_windows": self.test_windows,
            "rejections": self.rejections,
        }


def check_prop_risks(design, n_grid, test_windows, reps, seed, L=1):
    """Out-of-sample risks of 1-NN and fitted linear predictors per training size.

    For every replication a training set of size ``n`` and an independent
    test set of ``test_windows`` pairs are drawn. Standard errors are taken
    across replication means, since windows within a replication share the
    fitted predictor.

    The linear excess risk is estimated as the mean of
    ``loss_linear - ||eps_test||**2``, i.e. the linear loss minus the loss of
    the flat Bayes forecast on the same window; its expectation is exactly
    ``risk - H sigma**2`` but it has far less variance than subtracting the
    constant.
    """
    if len(n_grid) < 2:
        raise ConfigError("n_grid needs at least two sizes")
    if test_windows < 1000:
        raise ConfigError("test_windows must be >= 1000")
    if reps < 2:
        raise ConfigError("reps must be >= 2")
    H = design.H
    floor = H * design.sigma**2
    points, rejections = [], 0
    for j, n in enumerate(n_grid):
        acc = {k: np.empty(reps) for k in ("nn", "lin", "excess", "design", "noise")}
        for r in range(reps):
            (xtr, eps_tr, u_tr, y_tr), rej = _draw_nondegenerate(
                design, n, seed, (_PROP_TRAIN, j, r), L
            )
            rejections += rej
            x, eps, u, y = draw_sample(design, test_windows, stream(seed, _PROP_TEST, j, r), L)
            train = _dataset(u_tr, y_tr)
            lin = fit_linear_one_param(train)
            nn = NNIndex.from_dataset(train)
            idx = nn.neighbors(u)[:, 0]

            d_nn = y - nn.predict(u)
            d_lin = y - lin.predict(u)
            loss_nn = np.einsum("ij,ij->i", d_nn, d_nn)
            loss_lin = np.einsum("ij,ij->i", d_lin, d_lin)
            loss_bayes = np.einsum("ij,ij->i", eps, eps)
            noise = eps - eps_tr[idx]

            acc["nn"][r] = loss_nn.mean()
            acc["lin"][r] = loss_lin.mean()
            acc["excess"][r] = (loss_lin - loss_bayes).mean()
            acc["design"][r] = H * ((x - xtr[idx]) ** 2).mean()
            acc["noise"][r] = np.einsum("ij,ij->i", noise, noise).mean()
        points.append(
            PropRiskPoint(
                n=int(n),
                nn_risk=MCEstimate.from_samples(acc["nn"]),
                linear_risk=MCEstimate.from_samples(acc["lin"]),
                linear_excess=MCEstimate.from_samples(acc["excess"]),
                nn_design_term=MCEstimate.from_samples(acc["design"]),
                nn_noise_term=MCEstimate.from_samples(acc["noise"]),
                noise_floor=floor,
            )
        )
    _check_rejections(rejections, reps * len(n_grid))
    slope = loglog_slope(n_grid, [p.linear_excess.mean for p in points])
    return PropRisks(points, slope, reps, test_windows, rejections)


# -- ERM consistency over a finite class -----------------------------------


@dataclass(frozen=True)
class ERMPoint:
    n: int
    delta: MCEstimate
    regret: MCEstimate
    select_true_frequency: float
    samplewise_ok_fraction: float
    max_violation: float

    def to_dict(self):
        return {
            "n": self.n,
            "delta": self.delta.to_dict(),
            "regret": self.regret.to_dict(),
            "select_true_frequency": self.select_true_frequency,
            "samplewise_ok_fraction": self.samplewise_ok_fraction,
            "max_violation": self.max_violation,
        }


@dataclass
class ERMConsistency:
    coefficients: list
    population_risk: list
    points: list

    def to_dict(self):
        return {
            "coefficients": self.coefficients,
            "population_risk": self.population_risk,
            "points": [p.to_dict() for p in self.points],
        }


def population_risk(design, a, true_a=1.0):
    """``H sigma**2 + H (a - true_a)**2 E[x**2]`` for the flat-target model."""
    return design.H * design.sigma**2 + design.H * (a - true_a) ** 2 * design.second_moment()


def check_erm_consistency(finite_class_size, n_grid, reps, seed, design=None, coefficients=None):
    """ERM over ``{a_1, ..., a_K}`` against exact population risks.

    Per replication this computes ``Delta = max_a |R_hat(a) - R(a)|`` and
    the regret ``R(a_erm) - min_a R(a)``; the inequality
    ``regret <= 2 * Delta`` holds for every sample. ``max_violation`` is the
    largest ``regret - 2 * Delta`` seen, which can only be positive through
    floating-point rounding.

    The default class is ``np.linspace(0, 2, finite_class_size)``, which for
    five elements is ``{0, 0.5, 1, 1.5, 2}``. Ties in the empirical risk
    go to the first coefficient.
    """
    design = design or DesignSpec()
    if coefficients is None:
        if finite_class_size < 1:
            raise ConfigError("class size must be >= 1")
        coefficients = np.linspace(0.0, 2.0, finite_class_size)
    coefs = np.asarray(coefficients, dtype=np.float64)
    if len(coefs) != finite_class_size:
        raise ConfigError("coefficients do not match the class size")
    if list(n_grid) != sorted(n_grid):
        raise ConfigError("n_grid must be increasing")
    risk = np.array([population_risk(design, a) for a in coefs])
    best = int(np.argmin(risk))
    points = []
    for j, n in enumerate(n_grid):
        delta = np.empty(reps)
        regret = np.empty(reps)
        chose_best = np.zeros(reps, dtype=bool)
        for r in range(reps):
            x, _, _, y = draw_sample(design, n, stream(seed, _ERM, j, r))
            emp = np.empty(len(coefs))
            for k, a in enumerate(coefs):
                resid = y - (a * x)[:, None]
                emp[k] = np.einsum("ij,ij->i", resid, resid).mean()
            pick = int(np.argmin(emp))
            delta[r] = np.max(np.abs(emp - risk))
            regret[r] = risk[pick] - risk[best]
            chose_best[r] = pick == best
        points.append(
            ERMPoint(
                n=int(n),
                delta=MCEstimate.from_samples(delta),
                regret=MCEstimate.from_samples(regret),
                select_true_frequency=float(chose_best.mean()),
                samplewise_ok_fraction=float(np.mean(regret <= 2.0 * delta)),
                max_violation=float(np.max(regret - 2.0 * delta)),
            )
        )
    return ERMConsistency(coefs.tolist(), risk.tolist(), points)


# -- flat Bayes forecast on martingale windows -----------------------------


@dataclass(frozen=True)
class FlatnessCheck:
    risks: dict
    noise_floor: float
    nn_over_flat_win_rate: float
    nn_over_flat_win_lower99: float
    linear_coefficient: float
    n_train: int
    test_windows: int

    def to_dict(self):
        return {
            "risks": {k: v.to_dict() for k, v in self.risks.items()},
            "noise_floor": self.noise_floor,
            "nn_over_flat_win_rate": self.nn_over_flat_win_rate,
            "nn_over_flat_win_lower99": self.nn_over_flat_win_lower99,
            "linear_coefficient": self.linear_coefficient,
            "n_train": self.n_train,
            "test_windows": self.test_windows,
        }


def check_bayes_flatness(design, n_train, test_windows, seed, L=20):
    """Risks of flat, fitted linear and 1-NN forecasts on random-walk windows.

    Inputs are length-``L`` Gaussian random walks; targets are the last
    input value repeated plus iid ``N(0, sigma**2)`` noise per coordinate, so
    the flat forecast is the conditional mean and its risk is ``H sigma**2``.
    """
    (_, _, u_tr, y_tr), _ = _draw_nondegenerate(design, n_train, seed, (_FLAT_TRAIN,), L)
    _, _, u, y = draw_sample(design, test_windows, stream(seed, _FLAT_TEST), L)
    train = _dataset(u_tr, y_tr)
    preds = {
        "flat": FlatPredictor(design.H),
        "linear": fit_linear_one_param(train),
        "nn": NNIndex.from_dataset(train),
    }
    losses = {}
    for name, p in preds.items():
        d = y - p.predict(u)
        losses[name] = np.einsum("ij,ij->i", d, d)
    wins = int(np.count_nonzero(losses["nn"] > losses["flat"]))
    return FlatnessCheck(
        risks={k: MCEstimate.from_samples(v) for k, v in losses.items()},
        noise_floor=design.H * design.sigma**2,
        nn_over_flat_win_rate=wins / test_windows,
        nn_over_flat_win_lower99=wilson_lower(wins, test_windows),
        linear_coefficient=preds["linear"].a,
        n_train=n_train,
        test_windows=test_windows,
    )


# -- full suite ------------------------------------------------------------


@dataclass
class BoundReport:
    """All bound checks of one suite run, ready for JSON/CSV output."""

    design: DesignSpec
    seed: int
    reps: int
    coeff: CoeffMSE
    vn_tail: list = field(default_factory=list)
    ratio_n: int = 0
    ratio_tail: list = field(default_factory=list)
    prop_risks: PropRisks | None = None
    erm: ERMConsistency | None = None

    def curve_rows(self):
        """Rows ``(n, estimate, se, bound, bound_se)`` of the coefficient-MSE curve."""
        c = self.coeff
        return list(zip(c.n_grid, c.mse_hat, c.mse_se, c.mse_bound, c.mse_bound_se))

    def to_dict(self):
        c = self.coeff
        return {
            "design": self.design.to_dict(),
            "sigma2_coordinate": self.design.sigma**2,
            "sigma2_xi": self.design.sigma2_xi,
            "seed": self.seed,
            "reps": self.reps,
            "n_grid": c.n_grid,
            "mse_hat": c.mse_hat,
            "mse_se": c.mse_se,
            "mse_bound": c.mse_bound,
            "mse_bound_se": c.mse_bound_se,
            "loglog_slope": c.loglog_slope,
            "mse_dominated": c.dominated(),
            "rejections": c.rejections,
            "vn_tail": [
                {**asdict(p), "vacuous": p.vacuous, "holds": p.holds()} for p in self.vn_tail
            ],
            "ratio_tail_n": self.ratio_n,
            "ratio_tail": [
                {**asdict(p), "vacuous": p.vacuous, "holds": p.holds()} for p in self.ratio_tail
            ],
            "prop_risks": self.prop_risks.to_dict() if self.prop_risks else None,
            "erm": self.erm.to_dict() if self.erm else None,
        }


def run_bound_suite(
    design=None,
    n_grid=(50, 100, 200, 400, 800),
    reps=5000,
    seed=0,
    vn_grid=None,
    ratio_n=200,
    ratio_t=(0.0, 0.001, 0.002, 0.003, 0.004, 0.005, 0.007, 0.01, 0.05),
    tail_reps=10_000,
    prop_n_grid=(50, 100, 200, 400),
    prop_reps=200,
    prop_test_windows=1000,
    erm_n_grid=(10, 100, 1000, 10_000),
    erm_reps=200,
):
    """Run every check with one master seed.

    ``vn_grid`` is a list of ``(design, n, eta)`` triples; by default it
    uses both the main design and a half-normal design where the small-ball
    event is not certain.
    """
    design = design or DesignSpec()
    if vn_grid is None:
        hn = half_normal_design(design.sigma, design.H)
        vn_grid = [(design, 50, 0.5), (design, 10, 0.3)] + [
            (hn, n, eta) for n in (20, 50, 100) for eta in (0.1, 0.2)
        ]
    vn = [check_vn_tail(d, n, eta, tail_reps, seed, grid_pos=i) for i, (d, n, eta) in enumerate(vn_grid)]
    return BoundReport(
        design=design,
        seed=seed,
        reps=reps,
        coeff=estimate_coeff_mse(design, list(n_grid), reps, seed),
        vn_tail=vn,
        ratio_n=ratio_n,
        ratio_tail=check_ratio_tail(design, ratio_n, ratio_t, tail_reps, seed),
        prop_risks=(
            check_prop_risks(design, list(prop_n_grid), prop_test_windows, prop_reps, seed)
            if prop_n_grid
            else None
        ),
        erm=check_erm_consistency(5, list(erm_n_grid), erm_reps, seed, design) if erm_n_grid else None,
    )


def half_normal_design(sigma=0.1, H=5):
    """``x = |Z|`` with ``b = 1`` and the exact ``p = P(|Z| >= 1)``."""
    p = 2.0 * (1.0 - _phi(1.0))
    return DesignSpec("abs_gaussian_shifted", (0.0, 1.0), b=1.0, p=p, sigma=sigma, H=H)
