"""Finite probability objects and the information measures built on them.

Conventions used throughout the package:

 - every logarithm is base 2, so entropies, divergences and rates are in bits;
 - pmf arrays are float64, validated on construction, then frozen read-only;
 - a pmf whose total mass is within 1e-9 of 1 is renormalized silently,
   anything further off is rejected as a real modeling error;
 - joint distributions are (x, y) matrices in row-major order, x indexes rows.

Joint distributions must have strictly positive marginals.  Zero rows or
columns would make conditionals and divergence ratios undefined, so they are
rejected up front rather than patched downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import entr, rel_entr

from .errors import DimensionMismatchError, ProbabilityError

LN2 = float(np.log(2.0))

# Mass within this of 1.0 renormalizes; beyond it the input is rejected.
SUM_TOLERANCE = 1e-9
# Entries slightly negative from upstream float arithmetic clip to zero.
NEGATIVE_TOLERANCE = 1e-12


def _clean_pmf(values, ndim: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != ndim:
        raise ProbabilityError(f"{what}: expected a {ndim}-d array, got shape {arr.shape}")
    if arr.size == 0:
        raise ProbabilityError(f"{what}: empty")
    if not np.all(np.isfinite(arr)):
        raise ProbabilityError(f"{what}: non-finite entries")
    low = float(arr.min())
    if low < -NEGATIVE_TOLERANCE:
        raise ProbabilityError(f"{what}: negative mass {low:.3e}")
    np.clip(arr, 0.0, None, out=arr)
    total = float(arr.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise ProbabilityError(f"{what}: total mass {total!r} is not 1")
    arr /= total
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Distribution:
    """A pmf on a finite alphabet {0, ..., n-1}."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _clean_pmf(self.probs, 1, "Distribution"))

    @property
    def alphabet_size(self) -> int:
        return self.probs.shape[0]

    @property
    def full_support(self) -> bool:
        return bool(np.all(self.probs > 0.0))

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def from_dict(cls, payload: dict) -> "Distribution":
        return cls(np.asarray(payload["probs"], dtype=np.float64))

    def to_dict(self) -> dict:
        return {"probs": [float(v) for v in self.probs]}


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """A joint pmf on {0..x_size-1} x {0..y_size-1} with full-support marginals."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _clean_pmf(self.probs, 2, "JointDistribution")
        if np.any(arr.sum(axis=1) <= 0.0) or np.any(arr.sum(axis=0) <= 0.0):
            raise ProbabilityError("JointDistribution: a marginal has a zero entry")
        object.__setattr__(self, "probs", arr)

    @property
    def x_size(self) -> int:
        return self.probs.shape[0]

    @property
    def y_size(self) -> int:
        return self.probs.shape[1]

    def swapped(self) -> "JointDistribution":
        """The same pair with the roles of X and Y exchanged."""
        return JointDistribution(self.probs.T.copy())

    @classmethod
    def from_dict(cls, payload: dict) -> "JointDistribution":
        x_size = int(payload["x_size"])
        y_size = int(payload["y_size"])
        flat = np.asarray(payload["probs"], dtype=np.float64)
        if flat.ndim != 1 or flat.size != x_size * y_size:
            raise ProbabilityError(
                f"JointDistribution: probs has {flat.size} entries, "
                f"expected x_size*y_size = {x_size * y_size}"
            )
        return cls(flat.reshape(x_size, y_size))

    def to_dict(self) -> dict:
        return {
            "x_size": self.x_size,
            "y_size": self.y_size,
            "probs": [float(v) for v in self.probs.ravel()],
        }


@dataclass(frozen=True, eq=False)
class Channel:
    """A row-stochastic matrix, one conditional pmf per input symbol.

    The direction flag records which conditional this is when the channel
    came from a joint: rows are P(Y=.|X=x) for "y_given_x" and P(X=.|Y=y)
    for "x_given_y".  Standalone channels (test kernels, degrading maps)
    default to "y_given_x".
    """

    rows: np.ndarray
    direction: str = "y_given_x"

    def __post_init__(self):
        arr = np.array(self.rows, dtype=np.float64)
        if arr.ndim != 2:
            raise ProbabilityError(f"Channel: expected a matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ProbabilityError("Channel: non-finite entries")
        if float(arr.min()) < -NEGATIVE_TOLERANCE:
            raise ProbabilityError(f"Channel: negative entry {arr.min():.3e}")
        np.clip(arr, 0.0, None, out=arr)
        sums = arr.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > SUM_TOLERANCE):
            worst = int(np.argmax(np.abs(sums - 1.0)))
            raise ProbabilityError(f"Channel: row {worst} sums to {sums[worst]!r}")
        arr /= sums[:, None]
        arr.setflags(write=False)
        if self.direction not in ("y_given_x", "x_given_y"):
            raise ProbabilityError(f"Channel: unknown direction {self.direction!r}")
        object.__setattr__(self, "rows", arr)

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    @classmethod
    def identity(cls, n: int, direction: str = "y_given_x") -> "Channel":
        return cls(np.eye(n), direction)


def entropy(p: Distribution) -> float:
    """Shannon entropy of p in bits."""
    return float(entr(p.probs).sum() / LN2)


def kl_divergence(q: Distribution, p: Distribution) -> float:
    """D(q || p) in bits.  p must dominate q (no mass where p has none)."""
    if q.alphabet_size != p.alphabet_size:
        raise DimensionMismatchError(
            f"kl_divergence: alphabets {q.alphabet_size} vs {p.alphabet_size}"
        )
    terms = rel_entr(q.probs, p.probs)
    if np.any(np.isinf(terms)):
        raise ProbabilityError("kl_divergence: q puts mass where p has none")
    return float(terms.sum() / LN2)


def marginals(j: JointDistribution) -> tuple[Distribution, Distribution]:
    """(P_X, P_Y) of the joint.  Both have full support by construction."""
    return Distribution(j.probs.sum(axis=1)), Distribution(j.probs.sum(axis=0))


def conditional(j: JointDistribution, direction: str = "y_given_x") -> Channel:
    """The conditional pmf matrix of one coordinate given the other."""
    if direction == "y_given_x":
        rows = j.probs / j.probs.sum(axis=1, keepdims=True)
    elif direction == "x_given_y":
        rows = j.probs.T / j.probs.sum(axis=0)[:, None]
    else:
        raise ProbabilityError(f"conditional: unknown direction {direction!r}")
    return Channel(rows, direction)


def push_forward(q: Distribution, ch: Channel) -> Distribution:
    """Output law of the channel when the input law is q."""
    if q.alphabet_size != ch.input_size:
        raise DimensionMismatchError(
            f"push_forward: input alphabet {q.alphabet_size} vs channel {ch.input_size}"
        )
    return Distribution(q.probs @ ch.rows)


def mutual_information(j: JointDistribution) -> float:
    """I(X;Y) in bits."""
    px = j.probs.sum(axis=1)
    py = j.probs.sum(axis=0)
    return float(rel_entr(j.probs, np.outer(px, py)).sum() / LN2)


def tensor_product(a: JointDistribution, b: JointDistribution) -> JointDistribution:
    """Joint law of the independent pair ((X1,X2), (Y1,Y2)).

    Index convention: pair (u, v) maps to u * (second alphabet size) + v on
    both axes, which is exactly the Kronecker product layout.
    """
    return JointDistribution(np.kron(a.probs, b.probs))


def _mi_from_matrix(pxy: np.ndarray) -> float:
    """Mutual information of a raw joint matrix, tolerating zero marginals.

    Internal helper for derived joints (e.g. X paired with an auxiliary U)
    that may legitimately have unused output symbols.
    """
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    return float(rel_entr(pxy, np.outer(px, py)).sum() / LN2)
