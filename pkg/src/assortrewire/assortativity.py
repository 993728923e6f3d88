"""Directed, strength-weighted assortativity coefficients.

``r(a, b)`` correlates the a-strength of edge sources with the b-strength of
edge targets, each edge counted with its weight (type 1 = out, type 2 = in):

    r(a, b) = sum_ij w_ij (s_i^(a) - mean_src^(a)) (s_j^(b) - mean_trg^(b))
              / (tau * sd_src^(a) * sd_trg^(b))

Self-loops are included like any other edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import StrengthProfile, WeightedDigraph, strength_profile

PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))

# A weighted SD at or below this fraction of the largest strength is treated as zero.
SD_RTOL = 1e-10


class UndefinedCoefficientError(ArithmeticError):
    """A required weighted standard deviation vanishes."""

    def __init__(self, a, b, which):
        self.a, self.b, self.which = a, b, tuple(which)
        names = " and ".join(self.which)
        super().__init__(f"r({a},{b}) is undefined: weighted SD of {names} vanishes")


@dataclass(frozen=True)
class AssortativityQuad:
    """The four coefficients; ``None`` marks an undefined entry."""

    r11: float | None
    r12: float | None
    r21: float | None
    r22: float | None

    def get(self, a: int, b: int) -> float | None:
        return getattr(self, f"r{a}{b}")

    def __iter__(self) -> Iterator[float | None]:
        return iter((self.r11, self.r12, self.r21, self.r22))

    @property
    def defined(self) -> bool:
        return all(v is not None for v in self)

    def to_array(self) -> np.ndarray:
        """Values as a float array; raises if any entry is undefined."""
        if not self.defined:
            missing = [f"r{a}{b}" for (a, b), v in zip(PAIRS, self) if v is None]
            raise ValueError(f"undefined coefficients: {', '.join(missing)}")
        return np.array(list(self), dtype=float)

    def to_dict(self) -> dict:
        """JSON-ready mapping, undefined entries as the string ``"undefined"``."""
        return {f"r{a}{b}": ("undefined" if v is None else v) for (a, b), v in zip(PAIRS, self)}

    @classmethod
    def from_values(cls, values) -> "AssortativityQuad":
        vals = [None if v is None or (isinstance(v, str) and v == "undefined") else float(v) for v in values]
        return cls(*vals)


def _check_pair(a, b):
    if (a, b) not in PAIRS:
        raise ValueError(f"(a, b) must be in {PAIRS}, got ({a!r}, {b!r})")


def _zero_sd(profile: StrengthProfile, a: int, b: int) -> list[str]:
    scale = max(float(np.max(profile.s_out)), float(np.max(profile.s_in)), 1e-300)
    which = []
    if profile.src_sd[a - 1] <= SD_RTOL * scale:
        which.append(f"source {'out' if a == 1 else 'in'}-strength")
    if profile.trg_sd[b - 1] <= SD_RTOL * scale:
        which.append(f"target {'out' if b == 1 else 'in'}-strength")
    return which


def denominator(profile: StrengthProfile, a: int, b: int) -> float:
    """``tau * sd_src^(a) * sd_trg^(b)``, raising when it vanishes."""
    _check_pair(a, b)
    which = _zero_sd(profile, a, b)
    if which:
        raise UndefinedCoefficientError(a, b, which)
    return profile.tau * profile.src_sd[a - 1] * profile.trg_sd[b - 1]


def covariance_weights(profile: StrengthProfile, a: int, b: int) -> np.ndarray:
    """Matrix of deviation products ``(s_i^(a) - mean)(s_j^(b) - mean)``."""
    return np.outer(profile.src_deviation(a), profile.trg_deviation(b))


def assortativity(g: WeightedDigraph, a: int, b: int, profile: StrengthProfile | None = None) -> float:
    """Directed weighted assortativity ``r(a, b)`` of ``g``.

    Raises ``UndefinedCoefficientError`` when either weighted SD is zero.
    """
    _check_pair(a, b)
    if profile is None:
        profile = strength_profile(g)
    denom = denominator(profile, a, b)
    num = profile.src_deviation(a) @ g.W @ profile.trg_deviation(b)
    return float(num / denom)


def assortativity_all(g: WeightedDigraph, profile: StrengthProfile | None = None) -> AssortativityQuad:
    """All four coefficients from one strength profile."""
    if profile is None:
        profile = strength_profile(g)
    vals = []
    for a, b in PAIRS:
        try:
            vals.append(assortativity(g, a, b, profile))
        except UndefinedCoefficientError:
            vals.append(None)
    return AssortativityQuad(*vals)


def assortativity_delta(profile: StrengthProfile, step, a: int, b: int, index=None) -> float:
    """Change in ``r(a, b)`` caused by one rewiring step.

    The step moves ``dw`` from i->j and k->l onto i->l and k->j, which leaves
    every strength (and so the whole profile) unchanged; only the numerator
    moves, by ``-dw (x_i - x_k)(y_j - y_l)`` with ``x``/``y`` the source and
    target deviation vectors.

    ``step`` is a ``RewiringStep`` or an ``(i, j, k, l, dw)`` tuple. Its node
    ids are matrix positions unless ``index`` (label -> position) is given.
    """
    i, j, k, l, dw = step.as_tuple() if hasattr(step, "as_tuple") else step
    if index is not None:
        i, j, k, l = index[i], index[j], index[k], index[l]
    denom = denominator(profile, a, b)
    x = profile.src_deviation(a)
    y = profile.trg_deviation(b)
    return float(-dw * (x[i] - x[k]) * (y[j] - y[l]) / denom)


def quad_deltas(profile: StrengthProfile, i, j, k, l, dw) -> np.ndarray:
    """Vectorised ``assortativity_delta`` for index arrays; shape ``(steps, 4)``.

    Undefined coefficients produce NaN columns, which callers must mask.
    """
    i, j, k, l = (np.asarray(v, dtype=np.intp) for v in (i, j, k, l))
    dw = np.asarray(dw, dtype=float)
    out = np.full((dw.size, 4), np.nan)
    for col, (a, b) in enumerate(PAIRS):
        if _zero_sd(profile, a, b):
            continue
        x = profile.src_deviation(a)
        y = profile.trg_deviation(b)
        out[:, col] = -dw * (x[i] - x[k]) * (y[j] - y[l]) / denominator(profile, a, b)
    return out
