"""Pointwise envelopes of all copulas sharing a fixed Gini gamma.

The upper envelope is piecewise over nine regions of the square (O1..O9,
with O1 and O9 sharing one expression) that deform and vanish as the
parameter grows, and equals min(u, v) outside them; it is a copula for
parameters in [0, 1/2) and a proper quasi-copula on (-1, 0). The lower
envelope is its reflection G_lower(gamma)(a, b) = a - G_upper(-gamma)(a, 1-b).
"""

from __future__ import annotations

import numpy as np

from .core import BivariateFunction, OutOfRangeError, _as_unit
from .concordance import QuadratureConfig, gini_gamma

GINI_PARAM_RANGE = (-1.0, 1.0)

REGION_NONE = 0
OMEGA_LABELS = ("none", "O1", "O2", "O3", "O4", "O5", "O6", "O7", "O8", "O9")


def _check_gamma(gamma) -> float:
    gamma = float(gamma)
    if not (-1.0 - 1e-12 <= gamma <= 1.0 + 1e-12):
        raise OutOfRangeError(f"gamma value {gamma} outside [-1, 1]")
    return min(max(gamma, -1.0), 1.0)


def _omega_pieces(gamma, a, b):
    """Region masks O1..O9 and piece values, all evaluated everywhere.

    Divisions by the centre lines and the square edges are left to IEEE
    semantics: a diverging side makes its inequality false, which is the
    limiting form of each region condition. Square roots that can go
    negative outside the owning region are clamped at zero.
    """
    t = 1.0 + gamma
    sa = np.sqrt((2.0 * a - 1.0) ** 2 + 3.0 * t)
    sb = np.sqrt((2.0 * b - 1.0) ** 2 + 3.0 * t)
    qa = np.sqrt(9.0 * (2.0 * a - 1.0) ** 2 + 11.0 * t)
    qb = np.sqrt(9.0 * (2.0 * b - 1.0) ** 2 + 11.0 * t)
    with np.errstate(divide="ignore", invalid="ignore"):
        ha = t / (1.0 - 2.0 * a)
        hb = t / (1.0 - 2.0 * b)
        ia = t / (4.0 * a)
        ib = t / (4.0 * b)
        ja = t / (1.0 - a)
        jb = t / (1.0 - b)
        ka = t / a
        kb = t / b

    masks = [
        (a <= 0.5) & (2.0 * b >= 1.0 + ha) & (b <= 1.0 - ia),
        ((2.0 * b <= 1.0 + ha)
         & ((1.0 + 2.0 * a - 2.0 * b) ** 2 + 4.0 * a * (1.0 - b) >= t)
         & (6.0 * b >= 2.0 * a + 2.0 + sa)
         & (4.0 * b >= 6.0 * a - 1.0 + ha)),
        ((6.0 * b <= 2.0 * a + 2.0 + sa)
         & (8.0 * b <= 3.0 * a + 6.0 - ka)
         & (11.0 * a <= 3.0 + 5.0 * b - qb)),
        ((6.0 * a >= 2.0 * b + 2.0 - sb)
         & (8.0 * a >= 3.0 * b - 1.0 + jb)
         & (11.0 * b >= 3.0 + 5.0 * a + qa)),
        ((11.0 * a >= 3.0 + 5.0 * b - qb) & (11.0 * a <= 3.0 + 5.0 * b + qb)
         & (11.0 * b >= 3.0 + 5.0 * a - qa) & (11.0 * b <= 3.0 + 5.0 * a + qa)
         & ((b + 2.0 * a) ** 2 <= 3.0 * a * (a + 2.0) - t)
         & ((a + 2.0 * b) ** 2 <= 3.0 * b * (b + 2.0) - t)),
        ((6.0 * b >= 2.0 * a + 2.0 - sa)
         & (8.0 * b >= 3.0 * a - 1.0 + ja)
         & (11.0 * a >= 3.0 + 5.0 * b + qb)),
        ((6.0 * a <= 2.0 * b + 2.0 + sb)
         & (8.0 * a <= 3.0 * b + 6.0 - kb)
         & (11.0 * b <= 3.0 + 5.0 * a - qa)),
        ((2.0 * a <= 1.0 + hb)
         & ((1.0 - 2.0 * a + 2.0 * b) ** 2 + 4.0 * b * (1.0 - a) >= t)
         & (6.0 * a >= 2.0 * b + 2.0 + sb)
         & (4.0 * a >= 6.0 * b - 1.0 + hb)),
        (b <= 0.5) & (2.0 * a >= 1.0 + hb) & (a <= 1.0 - ib),
    ]

    w28_arg = (a + b - 1.0) ** 2 + (1.0 - 2.0 * a) * (1.0 - 2.0 * b) + 2.0 * t
    w28 = np.sqrt(np.maximum(w28_arg, 0.0))
    w37 = np.sqrt((2.0 * a + 4.0 * b - 3.0) ** 2 + 7.0 * t)
    w46 = np.sqrt((4.0 * a + 2.0 * b - 3.0) ** 2 + 7.0 * t)
    # cancellation-free form of 5(a+b-1)^2 - 2(1-2a)(1-2b) + 2t
    w5_arg = (3.0 * (a + b - 1.0) ** 2 + 2.0 * (a - b) ** 2 + 2.0 * t) / 3.0
    w1 = 0.5 * (a + b - 1.0 + np.sqrt((a + b - 1.0) ** 2 + t))
    values = [
        w1,
        0.25 * (a + 3.0 * b - 2.0 + w28),
        (2.0 * a + 4.0 * b - 3.0 + w37) / 7.0,
        (3.0 * a + 5.0 * b - 4.0 + w46) / 7.0,
        0.5 * (a + b - 1.0 + np.sqrt(w5_arg)),
        (5.0 * a + 3.0 * b - 4.0 + w37) / 7.0,
        (4.0 * a + 2.0 * b - 3.0 + w46) / 7.0,
        0.25 * (3.0 * a + b - 2.0 + w28),
        w1,
    ]
    return masks, values


def _first_match(masks, values, default):
    out = default
    for mask, value in zip(reversed(masks), reversed(values)):
        out = np.where(mask, value, out)
    return out


def omega_region(gamma, u, v):
    """Code 1..9 of the piece governing the upper envelope at (u, v), else 0.

    Pieces are tested in index order with verified boundary agreement.
    All codes are 0 for parameters above 1/2; degenerate pieces (such as
    the diagonal at parameter -1) still report their code.
    """
    gamma = _check_gamma(gamma)
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    a = _as_unit(u, "u")
    b = _as_unit(v, "v")
    masks, _ = _omega_pieces(gamma, a, b)
    codes = list(range(1, 10))
    out = _first_match(masks, codes, np.zeros(np.broadcast(a, b).shape, dtype=int))
    return int(out) if scalar else out


def _upper_raw(gamma, u, v):
    w = np.maximum(u + v - 1.0, 0.0)
    m = np.minimum(u, v)
    # endpoints short-circuit before region dispatch: the degenerate regions
    # are numerically fragile and the envelope is exactly W or M there
    if gamma <= -1.0:
        return w
    if gamma >= 0.5:
        return m
    masks, values = _omega_pieces(gamma, u, v)
    return np.clip(_first_match(masks, values, m), w, m)


def gini_upper_bound(gamma, u, v):
    """Greatest value at (u, v) among all copulas with the given gamma."""
    gamma = _check_gamma(gamma)
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    out = _upper_raw(gamma, _as_unit(u, "u"), _as_unit(v, "v"))
    return float(out) if scalar else out


def _lower_raw(gamma, u, v):
    w = np.maximum(u + v - 1.0, 0.0)
    m = np.minimum(u, v)
    if gamma >= 1.0:
        return m
    if gamma <= -0.5:
        return w
    return np.clip(u - _upper_raw(-gamma, u, 1.0 - v), w, m)


def gini_lower_bound(gamma, u, v):
    """Least value at (u, v) among all copulas with the given gamma.

    Computed by reflecting the upper envelope at the negated parameter:
    a - G_upper(-gamma)(a, 1-b), which equals b - G_upper(-gamma)(1-a, b).
    """
    gamma = _check_gamma(gamma)
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    out = _lower_raw(gamma, _as_unit(u, "u"), _as_unit(v, "v"))
    return float(out) if scalar else out


class GiniUpperBound(BivariateFunction):
    """Evaluator form of gini_upper_bound; a copula exactly for parameters
    in [0, 1/2) and at the endpoints."""

    def __init__(self, gamma):
        self.gamma = _check_gamma(gamma)
        self.label = f"g-upper:{self.gamma:g}"

    def _value(self, u, v):
        return _upper_raw(self.gamma, u, v)


class GiniLowerBound(BivariateFunction):
    """Evaluator form of gini_lower_bound; a copula exactly for parameters
    in (-1/2, 0] and at the endpoints."""

    def __init__(self, gamma):
        self.gamma = _check_gamma(gamma)
        self.label = f"g-lower:{self.gamma:g}"

    def _value(self, u, v):
        return _lower_raw(self.gamma, u, v)


def gini_of_bound(gamma, which: str = "upper",
                  quad: QuadratureConfig | None = None) -> float:
    """Extended gamma of the chosen envelope, by line quadrature.

    The upper envelope scores strictly above the parameter on the open
    range and the lower strictly below; neither envelope belongs to the
    family it bounds.
    """
    if which == "upper":
        return gini_gamma(GiniUpperBound(gamma), quad)
    if which == "lower":
        return gini_gamma(GiniLowerBound(gamma), quad)
    raise ValueError(f"which must be 'upper' or 'lower', got {which!r}")
