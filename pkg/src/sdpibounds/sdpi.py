"""Strong data processing constants of a finite joint distribution.

The contraction constant in direction X -> Y is the supremum of

    D(q_Y || P_Y) / D(q_X || P_X)

over input laws q_X != P_X, where q_Y is q_X pushed through the conditional
P(Y|X).  It lives in [0, 1] and is lower bounded by the squared maximal
correlation of the pair.  The supremum has no closed form in general, so
this module estimates it three ways and takes the best:

 - the squared maximal correlation (a certified lower bound via SVD);
 - an exhaustive simplex grid, feasible for input alphabets up to ~4;
 - vectorized multi-start projected gradient ascent on the log ratio.

Every reported value is a lower bound on the true constant.  Grid and
multi-start agree to ~1e-5 on small alphabets in practice, but nothing here
certifies the supremum from above; results carry a note when the exhaustive
grid could not run.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.special import rel_entr

from .errors import DegenerateRatioError, DimensionMismatchError, ProbabilityError
from .probability import (
    LN2,
    Channel,
    Distribution,
    JointDistribution,
    _mi_from_matrix,
    conditional,
)

# Floor for log arguments inside the ascent; keeps gradients finite on the
# simplex boundary without affecting any reported ratio value.
_LOG_FLOOR = 1e-300
# Numerator/denominator below this are treated as zero when forming ascent
# directions (the ratio itself is still computed exactly).
_TINY = 1e-15


@dataclass(frozen=True)
class SdpiConfig:
    """Knobs for the contraction-constant search.

    grid_resolution None picks 1/200 for binary inputs and 1/100 otherwise.
    Setting multistart_count or grid_max_alphabet to 0 disables that search
    entirely (useful for isolating one method; the reported value is then a
    weaker lower bound).
    """

    exclusion_radius: float = 1e-4
    grid_resolution: float | None = None
    grid_max_alphabet: int = 4
    multistart_count: int = 64
    max_iterations: int = 2000
    step_tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if not self.exclusion_radius > 0.0:
            raise ValueError("exclusion_radius must be positive")
        if self.grid_resolution is not None and not 0.0 < self.grid_resolution <= 0.5:
            raise ValueError("grid_resolution must lie in (0, 0.5]")
        if self.grid_max_alphabet < 0:
            raise ValueError("grid_max_alphabet must be >= 0")
        if self.multistart_count < 0:
            raise ValueError("multistart_count must be >= 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.step_tolerance > 0.0:
            raise ValueError("step_tolerance must be positive")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")

    def resolution_for(self, alphabet_size: int) -> float:
        if self.grid_resolution is not None:
            return self.grid_resolution
        return 1.0 / 200.0 if alphabet_size <= 2 else 1.0 / 100.0


@dataclass(frozen=True, eq=False)
class SdpiResult:
    """Outcome of a contraction-constant search.

    value is the best lower bound found (max over all searches and the
    squared maximal correlation).  argmax_q is the best search point, or
    None when the SVD bound beat every search point, i.e. the witness is a
    local perturbation rather than a simplex point.  gap_note is non-empty
    when the exhaustive grid did not run and the value rests on local
    search alone.
    """

    value: float
    argmax_q: Distribution | None
    rho_m_squared: float
    method: str
    evaluations: int
    gap_note: str = ""

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "argmax_q": None if self.argmax_q is None else [float(v) for v in self.argmax_q.probs],
            "rho_m_squared": self.rho_m_squared,
            "method": self.method,
            "evaluations": self.evaluations,
            "gap_note": self.gap_note,
        }


def _oriented(j: JointDistribution, direction: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(input marginal, output marginal, conditional matrix) for a direction."""
    px = j.probs.sum(axis=1)
    py = j.probs.sum(axis=0)
    if direction == "x_to_y":
        return px, py, conditional(j, "y_given_x").rows
    if direction == "y_to_x":
        return py, px, conditional(j, "x_given_y").rows
    raise ProbabilityError(f"unknown direction {direction!r}, expected 'x_to_y' or 'y_to_x'")


def divergence_ratio(
    q: Distribution,
    j: JointDistribution,
    direction: str = "x_to_y",
    exclusion_radius: float = 1e-4,
) -> float:
    """D(q_out || P_out) / D(q || P_in) for one candidate input law.

    q must stay at total-variation distance > exclusion_radius from the
    true input marginal; at the marginal itself the ratio is 0/0.
    """
    p_in, p_out, T = _oriented(j, direction)
    if q.alphabet_size != p_in.shape[0]:
        raise DimensionMismatchError(
            f"divergence_ratio: q has {q.alphabet_size} symbols, joint input has {p_in.shape[0]}"
        )
    tv = 0.5 * float(np.abs(q.probs - p_in).sum())
    if tv <= exclusion_radius:
        raise DegenerateRatioError(
            f"q is within total variation {tv:.2e} of the input marginal "
            f"(exclusion radius {exclusion_radius:g}); the ratio is 0/0 there"
        )
    num = float(rel_entr(q.probs @ T, p_out).sum() / LN2)
    den = float(rel_entr(q.probs, p_in).sum() / LN2)
    return num / den


def maximal_correlation(j: JointDistribution) -> float:
    """Second singular value of p(x,y)/sqrt(p(x)p(y)), clipped to [0, 1].

    Zero iff X and Y are independent, one iff they share a common nontrivial
    deterministic function.  Its square lower bounds both contraction
    constants.
    """
    px = j.probs.sum(axis=1)
    py = j.probs.sum(axis=0)
    m = j.probs / np.sqrt(np.outer(px, py))
    svals = np.linalg.svd(m, compute_uv=False)
    if svals.shape[0] < 2:
        return 0.0
    return float(np.clip(svals[1], 0.0, 1.0))


def _ratios(Q: np.ndarray, p_in, p_out, T, exclusion_radius: float) -> np.ndarray:
    """Divergence ratio per row of Q; -inf inside the exclusion ball.

    Computed in nats; the ratio is base-independent.
    """
    num = rel_entr(Q @ T, p_out).sum(axis=1)
    den = rel_entr(Q, p_in).sum(axis=1)
    tv = 0.5 * np.abs(Q - p_in).sum(axis=1)
    out = np.full(Q.shape[0], -np.inf)
    ok = tv > exclusion_radius
    out[ok] = num[ok] / np.maximum(den[ok], _LOG_FLOOR)
    return out


def _simplex_grid(k: int, resolution: float) -> np.ndarray:
    """All pmfs on k symbols with entries that are multiples of resolution.

    Compositions of n = round(1/resolution) into k parts, enumerated via the
    stars-and-bars bijection with (k-1)-subsets of {0, ..., n+k-2}.
    """
    n = int(round(1.0 / resolution))
    if k == 1:
        return np.ones((1, 1))
    bars = np.array(list(combinations(range(n + k - 1), k - 1)), dtype=np.int64)
    lo = np.full((bars.shape[0], 1), -1, dtype=np.int64)
    hi = np.full((bars.shape[0], 1), n + k - 1, dtype=np.int64)
    counts = np.diff(np.hstack([lo, bars, hi]), axis=1) - 1
    return counts.astype(np.float64) / n


def _lex_smallest(rows: np.ndarray) -> int:
    """Index of the lexicographically smallest row."""
    order = np.lexsort(rows[:, ::-1].T)
    return int(order[0])


def _best_of(values: np.ndarray, rows: np.ndarray) -> tuple[float, np.ndarray | None]:
    """Best (value, row) with deterministic lexicographic tie-breaking."""
    finite = np.isfinite(values)
    if not finite.any():
        return -np.inf, None
    top = values[finite].max()
    tied = np.flatnonzero(finite & (values == top))
    pick = tied[_lex_smallest(rows[tied])]
    return float(values[pick]), rows[pick].copy()


def _grid_search(p_in, p_out, T, resolution, exclusion_radius):
    grid = _simplex_grid(p_in.shape[0], resolution)
    vals = _ratios(grid, p_in, p_out, T, exclusion_radius)
    best, q = _best_of(vals, grid)
    return best, q, grid.shape[0]


def _project_rows(V: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex."""
    k = V.shape[1]
    U = np.sort(V, axis=1)[:, ::-1]
    css = np.cumsum(U, axis=1) - 1.0
    ind = np.arange(1, k + 1)
    rho = np.count_nonzero(U - css / ind > 0.0, axis=1)
    theta = css[np.arange(V.shape[0]), rho - 1] / rho
    W = np.maximum(V - theta[:, None], 0.0)
    # Rescale away the float residue so every row is an exact pmf.
    return W / W.sum(axis=1, keepdims=True)


def _log_ratio_grad(Q: np.ndarray, p_in, p_out, T) -> np.ndarray:
    """Gradient of log(num/den) per row, zeroed where either part vanishes."""
    Qy = Q @ T
    num = rel_entr(Qy, p_out).sum(axis=1)
    den = rel_entr(Q, p_in).sum(axis=1)
    gn = (np.log(np.maximum(Qy, _LOG_FLOOR) / p_out) + 1.0) @ T.T
    gd = np.log(np.maximum(Q, _LOG_FLOOR) / p_in) + 1.0
    g = gn / np.maximum(num, _TINY)[:, None] - gd / np.maximum(den, _TINY)[:, None]
    g[num < _TINY] = 0.0
    g[den < _TINY] = 0.0
    # Cap the row magnitude: near-flat ratios divided by the floors above
    # give astronomically long directions, and projecting those loses mass
    # to float cancellation.  Direction is what matters, not length.
    scale = np.maximum(np.abs(g).max(axis=1) / 100.0, 1.0)
    return g / scale[:, None]


def _multistart_search(p_in, p_out, T, cfg: SdpiConfig):
    """Projected gradient ascent on the log ratio from random and corner starts.

    All starts advance in lockstep as one array; each keeps its own step
    size with backtracking on failure and modest growth on success.
    """
    k = p_in.shape[0]
    rng = np.random.default_rng(cfg.seed)
    corners = 0.999 * np.eye(k) + 0.001 / k
    if cfg.multistart_count > 0:
        starts = rng.dirichlet(np.ones(k), size=cfg.multistart_count)
        Q = np.vstack([starts, corners])
    else:
        Q = corners
    step = np.full(Q.shape[0], 0.1)
    f = _ratios(Q, p_in, p_out, T, cfg.exclusion_radius)
    evals = Q.shape[0]
    alive = np.ones(Q.shape[0], dtype=bool)

    for _ in range(cfg.max_iterations):
        if not alive.any():
            break
        G = _log_ratio_grad(Q, p_in, p_out, T)
        pending = alive.copy()
        for _ in range(40):
            idx = np.flatnonzero(pending)
            if idx.size == 0:
                break
            trial = _project_rows(Q[idx] + step[idx, None] * G[idx])
            ft = _ratios(trial, p_in, p_out, T, cfg.exclusion_radius)
            evals += idx.size
            better = ft > f[idx] + 1e-15
            good = idx[better]
            bad = idx[~better]
            Q[good] = trial[better]
            f[good] = ft[better]
            step[good] = np.minimum(step[good] * 1.5, 1.0)
            pending[good] = False
            step[bad] *= 0.5
            stuck = bad[step[bad] < cfg.step_tolerance]
            alive[stuck] = False
            pending[stuck] = False
        # Rows that burned all backtracks this round have a useless
        # direction at the current scale; retire them.
        alive[pending] = False

    best, q = _best_of(f, Q)
    return best, q, evals


def sstar(
    j: JointDistribution,
    direction: str = "x_to_y",
    cfg: SdpiConfig | None = None,
) -> SdpiResult:
    """Best available lower bound on the contraction constant of one direction.

    Takes the max over the squared maximal correlation, the exhaustive grid
    (input alphabets up to cfg.grid_max_alphabet), and multi-start ascent.
    Deterministic for a fixed config, including its seed.
    """
    if cfg is None:
        cfg = SdpiConfig()
    p_in, p_out, T = _oriented(j, direction)
    k = p_in.shape[0]
    rho2 = maximal_correlation(j) ** 2

    corners = np.eye(k)
    cand_vals = [_ratios(corners, p_in, p_out, T, cfg.exclusion_radius)]
    cand_rows = [corners]
    evals = k

    ran = []
    if 2 <= k <= cfg.grid_max_alphabet:
        gv, gq, n = _grid_search(p_in, p_out, T, cfg.resolution_for(k), cfg.exclusion_radius)
        evals += n
        ran.append("grid")
        if gq is not None:
            cand_vals.append(np.array([gv]))
            cand_rows.append(gq[None, :])
    if cfg.multistart_count > 0:
        mv, mq, n = _multistart_search(p_in, p_out, T, cfg)
        evals += n
        ran.append("multistart")
        if mq is not None:
            cand_vals.append(np.array([mv]))
            cand_rows.append(mq[None, :])
    best, best_q = _best_of(np.concatenate(cand_vals), np.vstack(cand_rows))

    if len(ran) == 2:
        method = "combined"
    elif ran:
        method = ran[0]
    else:
        method = "vertex"
    gap_note = ""
    if "grid" not in ran:
        gap_note = (
            "exhaustive grid skipped for this input alphabet; "
            "the value rests on local search and is only a lower bound"
        )

    if best >= rho2 and best_q is not None:
        value = best
        argmax = Distribution(best_q)
    else:
        value = rho2
        argmax = None
    value = float(np.clip(value, 0.0, 1.0))
    return SdpiResult(
        value=value,
        argmax_q=argmax,
        rho_m_squared=rho2,
        method=method,
        evaluations=evals,
        gap_note=gap_note,
    )


def rho_star(j: JointDistribution, cfg: SdpiConfig | None = None) -> float:
    """max of the two directional contraction constants."""
    return max(sstar(j, "x_to_y", cfg).value, sstar(j, "y_to_x", cfg).value)


def verify_sdpi_inequality(
    j: JointDistribution,
    u_channel: Channel,
    sstar_value: float,
) -> tuple[float, float, bool]:
    """Check I(Y;U) <= sstar_value * I(X;U) for U drawn from X via u_channel.

    u_channel rows are P(U=.|X=x), making U -- X -- Y a chain.  Returns
    (lhs, rhs, holds) with holds allowing 1e-9 slack.  Only meaningful when
    sstar_value is (an upper estimate of) the X -> Y contraction constant;
    with an underestimate a failed check is inconclusive.
    """
    if u_channel.input_size != j.x_size:
        raise DimensionMismatchError(
            f"u_channel input {u_channel.input_size} does not match x alphabet {j.x_size}"
        )
    px = j.probs.sum(axis=1)
    pxu = px[:, None] * u_channel.rows
    pyu = j.probs.T @ u_channel.rows
    lhs = _mi_from_matrix(pyu)
    rhs = sstar_value * _mi_from_matrix(pxu)
    return lhs, rhs, lhs <= rhs + 1e-9


def tensorization_check(
    j: JointDistribution,
    cfg: SdpiConfig | None = None,
) -> tuple[float, float, float]:
    """Compare the constant of j with that of the two-letter product j (x) j.

    The constant is invariant under taking i.i.d. copies, so the gap should
    vanish up to solver tolerance.  Returns (single, product, product - single).
    """
    if j.x_size ** 2 > 16 or j.y_size ** 2 > 16:
        raise ProbabilityError(
            f"tensorization_check: product alphabet {j.x_size ** 2}x{j.y_size ** 2} "
            "exceeds the 16-state limit"
        )
    from .probability import tensor_product

    single = sstar(j, "x_to_y", cfg).value
    product = sstar(tensor_product(j, j), "x_to_y", cfg).value
    return single, product, product - single
