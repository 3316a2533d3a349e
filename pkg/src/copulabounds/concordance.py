"""Concordance machinery.

The three association measures (Spearman footrule, Gini gamma, Blomqvist
beta) by line quadrature or exact evaluation, a discrete Stieltjes
concordance integral against gridded copulas, closed forms of the
concordance integral on the extremal-copula families, and the piecewise
value of footrule/gamma on those families as a function of the anchored
value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ExtremalSpec, GridFunction, OutOfRangeError

FOOTRULE_RANGE = (-0.5, 1.0)
GINI_RANGE = (-1.0, 1.0)
BLOMQVIST_RANGE = (-1.0, 1.0)


class NotACopulaGridError(ValueError):
    """A gridded function has a meaningfully negative cell volume."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Composite-Simpson panel count for the line integrals; must be even."""

    n: int = 2048

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError("panel count must be even and >= 2")


DEFAULT_QUADRATURE = QuadratureConfig()


def simpson_weights(n: int) -> np.ndarray:
    """Composite Simpson weights over n even panels of [0, 1], n+1 nodes."""
    if n < 2 or n % 2:
        raise ValueError("panel count must be even and >= 2")
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / (3.0 * n)


def spearman_footrule(func, quad: QuadratureConfig | None = None) -> float:
    """Spearman footrule 6 * int C(t,t) dt - 2, clamped to [-1/2, 1].

    The same diagonal integral extends the measure verbatim to proper
    quasi-copulas, which is how the supremum envelopes are scored.
    """
    quad = quad or DEFAULT_QUADRATURE
    t = np.arange(quad.n + 1) / quad.n
    val = 6.0 * float(simpson_weights(quad.n) @ func(t, t)) - 2.0
    return min(max(val, FOOTRULE_RANGE[0]), FOOTRULE_RANGE[1])


def gini_gamma(func, quad: QuadratureConfig | None = None) -> float:
    """Gini gamma 4 * int (C(t,t) + C(t,1-t)) dt - 2, clamped to [-1, 1]."""
    quad = quad or DEFAULT_QUADRATURE
    t = np.arange(quad.n + 1) / quad.n
    w = simpson_weights(quad.n)
    val = 4.0 * float(w @ (func(t, t) + func(t, 1.0 - t))) - 2.0
    return min(max(val, GINI_RANGE[0]), GINI_RANGE[1])


def blomqvist_beta(func) -> float:
    """Blomqvist beta 4 * C(1/2, 1/2) - 1."""
    val = 4.0 * float(func(0.5, 0.5)) - 1.0
    return min(max(val, BLOMQVIST_RANGE[0]), BLOMQVIST_RANGE[1])


def q_concordance(grid: GridFunction, func) -> float:
    """Discrete Stieltjes concordance 4 * sum C2(midpoints) * mass - 1.

    ``grid`` carries the integrating copula; cell masses are its grid-cell
    volumes and ``func`` is evaluated at cell midpoints. Rejects grids with
    a cell volume below -1e-9.
    """
    vols = grid.cell_volumes()
    worst = float(vols.min())
    if worst < -1e-9:
        raise NotACopulaGridError(f"cell volume {worst} is negative; not a copula grid")
    mid = grid.midpoints()
    vals = func(mid[:, None], mid[None, :])
    return float(4.0 * np.sum(vals * vols) - 1.0)


# ---------------------------------------------------------------------------
# Closed forms of the concordance integral on extremal copulas
# ---------------------------------------------------------------------------

def _require_kind(spec: ExtremalSpec, kind: str):
    if spec.kind != kind:
        raise OutOfRangeError(f"expected a {kind!r} extremal spec, got {spec.kind!r}")


def q_m_extremal_upper(spec: ExtremalSpec) -> float:
    """Concordance of the upper extremal copula against min(u, v)."""
    _require_kind(spec, "upper")
    d2 = spec.anchor_value
    return 1.0 - 4.0 * (spec.a - d2) * (spec.b - d2)


def q_w_extremal_lower(spec: ExtremalSpec) -> float:
    """Concordance of the lower extremal copula against max(0, u+v-1)."""
    _require_kind(spec, "lower")
    d1 = spec.anchor_value
    return 4.0 * d1 * (1.0 - spec.a - spec.b + d1) - 1.0


def q_m_extremal_lower(spec: ExtremalSpec) -> float:
    """Concordance of the lower extremal copula against min(u, v).

    Nine-piece closed form; pieces are tried in a fixed order and the first
    matching condition wins. Adjacent pieces agree on shared boundaries, so
    the order only selects among equal expressions.
    """
    _require_kind(spec, "lower")
    a, b = spec.a, spec.b
    d = spec.anchor_value
    if b >= d + 0.5:
        return 0.0
    if 2.0 * b >= 1.0 + d:
        if a <= b - d:
            return (2.0 * d + 1.0 - 2.0 * b) ** 2
        return (1.0 + d - a - b) * (1.0 + 3.0 * d + a - 3.0 * b)
    if a <= b - d:
        return d * (2.0 + 3.0 * d - 4.0 * b)
    if d >= 2.0 * a - 1.0 and d >= 2.0 * b - 1.0 and d >= abs(a - b):
        return 2.0 * d * (1.0 + d - a - b) - (a - b) ** 2
    if 2.0 * a <= 1.0 + d and b <= a - d:
        return d * (2.0 + 3.0 * d - 4.0 * a)
    if 1.0 + d <= 2.0 * a <= 2.0 * d + 1.0:
        if b >= a - d:
            return (1.0 + d - a - b) * (1.0 + 3.0 * d - 3.0 * a + b)
        return (2.0 * d + 1.0 - 2.0 * a) ** 2
    if a >= d + 0.5:
        return 0.0
    raise RuntimeError("piecewise dispatch gap; spec outside the covered square")


# ---------------------------------------------------------------------------
# Measures of the extremal families as functions of the anchored value
# ---------------------------------------------------------------------------

def _check_anchor_value(a, b, d, tol=1e-9):
    w = np.maximum(a + b - 1.0, 0.0)
    m = np.minimum(a, b)
    if np.any(d < w - tol) or np.any(d > m + tol):
        raise OutOfRangeError("anchored value d outside [W(a,b), M(a,b)]")
    return np.clip(d, w, m)


def _triangle_frame(a, b, d):
    """Map (a, b, d) into the reference triangle a <= b, a + b <= 1.

    Reflecting the anchor through the centre (survival) shifts the anchored
    value by 1 - a - b; transposing leaves it unchanged. Footrule and gamma
    are invariant under both moves.
    """
    refl = a + b > 1.0
    a1 = np.where(refl, 1.0 - a, a)
    b1 = np.where(refl, 1.0 - b, b)
    d1 = np.where(refl, d - (a + b - 1.0), d)
    lo = np.minimum(a1, b1)
    hi = np.maximum(a1, b1)
    return lo, hi, np.clip(d1, 0.0, lo)


def f_lower(a, b, d):
    """Footrule of the least copula with value d at (a, b).

    Piecewise in d, nondecreasing, with range [-1/2, f_lower(a, b, M(a,b))].
    """
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0 and np.ndim(d) == 0
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = _check_anchor_value(a, b, np.asarray(d, dtype=float))
    aa, bb, dd = _triangle_frame(a, b, d)
    out = np.where(
        bb >= dd + 0.5,
        -0.5,
        np.where(
            2.0 * bb >= 1.0 + dd,
            1.5 * (2.0 * dd + 1.0 - 2.0 * bb) ** 2 - 0.5,
            np.where(
                bb >= aa + dd,
                1.5 * dd * (2.0 + 3.0 * dd - 4.0 * bb) - 0.5,
                3.0 * dd * (1.0 + dd - aa - bb) - 1.5 * (bb - aa) ** 2 - 0.5,
            ),
        ),
    )
    return float(out) if scalar else out


def f_upper(a, b, d):
    """Footrule of the greatest copula with value d at (a, b): 1 - 6(a-d)(b-d)."""
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0 and np.ndim(d) == 0
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = _check_anchor_value(a, b, np.asarray(d, dtype=float))
    out = 1.0 - 6.0 * (a - d) * (b - d)
    return float(out) if scalar else out


def g_lower(a, b, d):
    """Gini gamma of the least copula with value d at (a, b); nondecreasing in d."""
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0 and np.ndim(d) == 0
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = _check_anchor_value(a, b, np.asarray(d, dtype=float))
    aa, bb, dd = _triangle_frame(a, b, d)
    base = 4.0 * dd * (1.0 - aa - bb + dd) - 1.0
    out = np.where(
        bb >= dd + 0.5,
        base,
        np.where(
            2.0 * bb >= 1.0 + dd,
            (1.0 - 2.0 * bb + 2.0 * dd) ** 2 + base,
            np.where(
                bb >= aa + dd,
                dd * (6.0 - 4.0 * aa - 8.0 * bb + 7.0 * dd) - 1.0,
                6.0 * dd * (1.0 - aa - bb + dd) - (aa - bb) ** 2 - 1.0,
            ),
        ),
    )
    return float(out) if scalar else out


def g_upper(a, b, d):
    """Gini gamma of the greatest copula with value d at (a, b).

    The sigma-1 reflection turns the greatest copula with value d at (a, b)
    into the least copula with value b - d at (1 - a, b) and flips the sign
    of gamma.
    """
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0 and np.ndim(d) == 0
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = _check_anchor_value(a, b, np.asarray(d, dtype=float))
    out = -g_lower(1.0 - a, b, b - d)
    return float(out) if scalar else out
