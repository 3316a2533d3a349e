"""Copula primitives on the unit square.

Frechet-Hoeffding envelope, reflections, the extremal copulas through a
prescribed point, shuffles of min, checkerboard copulas, grid audits of the
(quasi-)copula axioms, and samplers.

Evaluators are immutable after construction and safe to call concurrently.
Samplers take an explicit seed and own their generator, so equal seeds
reproduce byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_SLACK = 1e-12


class InvalidSpecError(ValueError):
    """Parameters of an extremal-copula or shuffle spec are inconsistent."""


class BadRectangleError(ValueError):
    """Rectangle corners are not ordered lo <= hi componentwise."""


class NotMonotoneError(ValueError):
    """A numeric conditional CDF was observed decreasing beyond tolerance."""


class OutOfRangeError(ValueError):
    """A parameter lies outside its admissible range."""


def _as_unit(x, what="coordinate"):
    """Coerce to float array, clamp drift within UNIT_SLACK, reject farther."""
    x = np.asarray(x, dtype=float)
    if x.size and (np.any(x < -UNIT_SLACK) or np.any(x > 1.0 + UNIT_SLACK)):
        raise ValueError(
            f"{what} outside the unit interval: range "
            f"[{float(np.min(x))}, {float(np.max(x))}]"
        )
    return np.clip(x, 0.0, 1.0)


@dataclass(frozen=True)
class UnitPoint:
    """A point of the closed unit square."""

    u: float
    v: float

    def __post_init__(self):
        object.__setattr__(self, "u", float(_as_unit(self.u, "u")))
        object.__setattr__(self, "v", float(_as_unit(self.v, "v")))


class BivariateFunction:
    """Deterministic real-valued function on the closed unit square.

    Subclasses implement ``_value`` on pre-clamped float arrays. Instances
    are called with scalars or broadcastable arrays and mirror the input
    shape; coordinates within ``UNIT_SLACK`` outside [0, 1] are clamped,
    anything farther out is rejected.
    """

    label = "?"

    def _value(self, u, v):
        raise NotImplementedError

    def __call__(self, u, v):
        scalar = np.ndim(u) == 0 and np.ndim(v) == 0
        out = np.asarray(self._value(_as_unit(u, "u"), _as_unit(v, "v")))
        return float(out) if scalar else out

    def at(self, p: UnitPoint) -> float:
        return self(p.u, p.v)

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class FrechetLower(BivariateFunction):
    """Countermonotone copula max(0, u + v - 1), the pointwise least copula."""

    label = "W"

    def _value(self, u, v):
        return np.maximum(u + v - 1.0, 0.0)


class FrechetUpper(BivariateFunction):
    """Comonotone copula min(u, v), the pointwise greatest copula."""

    label = "M"

    def _value(self, u, v):
        return np.minimum(u, v)


class Independence(BivariateFunction):
    """Product copula u * v."""

    label = "Pi"

    def _value(self, u, v):
        return u * v


W = FrechetLower()
M = FrechetUpper()
PI = Independence()

TRANSFORM_KINDS = ("transpose", "sigma1", "sigma2", "survival")


class TransformedFunction(BivariateFunction):
    """Reflection of a unit-square function.

    transpose: C(v, u); sigma1: v - C(1-u, v); sigma2: u - C(u, 1-v);
    survival: u + v - 1 + C(1-u, 1-v).
    """

    def __init__(self, base, kind):
        if kind not in TRANSFORM_KINDS:
            raise ValueError(f"unknown transform {kind!r}, expected one of {TRANSFORM_KINDS}")
        self.base = base
        self.kind = kind
        self.label = f"{kind}({base.label})"

    def _value(self, u, v):
        base = self.base._value
        if self.kind == "transpose":
            return base(v, u)
        if self.kind == "sigma1":
            return v - base(1.0 - u, v)
        if self.kind == "sigma2":
            return u - base(u, 1.0 - v)
        return u + v - 1.0 + base(1.0 - u, 1.0 - v)


def transform(func, kind) -> BivariateFunction:
    """Reflected evaluator of ``func``; see TransformedFunction."""
    return TransformedFunction(func, kind)


def max_asymmetry(u, v):
    """Pointwise supremum of |C(u,v) - C(v,u)| over all copulas.

    Equals min(u, v, 1-u, 1-v, |v-u|).
    """
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    u = _as_unit(u, "u")
    v = _as_unit(v, "v")
    out = np.minimum(np.minimum(u, v), np.minimum(1.0 - u, 1.0 - v))
    out = np.minimum(out, np.abs(v - u))
    return float(out) if scalar else out


# ---------------------------------------------------------------------------
# Extremal copulas through a prescribed point
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalSpec:
    """Anchor (a, b) in the open unit square, offset c, and side.

    ``lower`` is the pointwise least copula taking value W(a,b) + c at the
    anchor, ``upper`` the pointwise greatest taking value M(a,b) - c there.
    Admissible offsets are 0 <= c <= min(a, b, 1-a, 1-b); both anchored
    values then sweep the whole interval [W(a,b), M(a,b)].
    """

    a: float
    b: float
    c: float
    kind: str

    def __post_init__(self):
        if self.kind not in ("lower", "upper"):
            raise InvalidSpecError(f"kind must be 'lower' or 'upper', got {self.kind!r}")
        a, b, c = float(self.a), float(self.b), float(self.c)
        if not (0.0 < a < 1.0 and 0.0 < b < 1.0):
            raise InvalidSpecError(f"anchor ({a}, {b}) must lie in the open unit square")
        cmax = min(a, b, 1.0 - a, 1.0 - b)
        if c < -UNIT_SLACK or c > cmax + UNIT_SLACK:
            raise InvalidSpecError(f"offset c={c} outside [0, {cmax}] for anchor ({a}, {b})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", min(max(c, 0.0), cmax))

    @property
    def anchor_value(self) -> float:
        """Value taken at the anchor: W(a,b)+c for lower, M(a,b)-c for upper."""
        if self.kind == "lower":
            return max(self.a + self.b - 1.0, 0.0) + self.c
        return min(self.a, self.b) - self.c


class ExtremalCopula(BivariateFunction):
    """Pointwise least/greatest copula with a prescribed anchor value.

    Both are shuffles of min, so they are genuine copulas; mass sits on
    finitely many slope +-1 segments. Evaluation uses the branch-cheap
    max/min closed form; ``as_shuffle`` exposes the support for sampling.
    """

    def __init__(self, spec: ExtremalSpec):
        self.spec = spec
        self.label = f"extremal:{spec.kind},{spec.a:g},{spec.b:g},{spec.c:g}"

    def _value(self, u, v):
        a, b = self.spec.a, self.spec.b
        d = self.spec.anchor_value
        if self.spec.kind == "lower":
            core = np.minimum(np.minimum(d, u - a + d),
                              np.minimum(v - b + d, u + v - a - b + d))
            return np.maximum(np.maximum(u + v - 1.0, 0.0), core)
        # plane pattern arranged so the prescribed value sits at (a, b) itself
        core = np.maximum(np.maximum(d, u - a + d),
                          np.maximum(v - b + d, u + v - a - b + d))
        return np.minimum(np.minimum(u, v), core)

    def as_shuffle(self) -> "ShuffleSpec":
        a, b = self.spec.a, self.spec.b
        d = self.spec.anchor_value
        if self.spec.kind == "lower":
            bounds = [0.0, a - d, a, 1.0 - b + d, 1.0]
            targets = [4, 2, 3, 1]
            omega = -1
        else:
            bounds = [0.0, d, a, a + b - d, 1.0]
            targets = [1, 3, 2, 4]
            omega = 1
        lengths = np.maximum(np.diff(np.asarray(bounds)), 0.0)
        keep = lengths > UNIT_SLACK
        kept_targets = [t for t, k in zip(targets, keep) if k]
        rank = {t: r + 1 for r, t in enumerate(sorted(kept_targets))}
        cuts = [0.0]
        for length in lengths[keep]:
            cuts.append(cuts[-1] + float(length))
        cuts[-1] = 1.0
        return ShuffleSpec(tuple(cuts),
                           tuple(rank[t] for t in kept_targets),
                           (omega,) * len(kept_targets))


def extremal_value(spec: ExtremalSpec, u, v):
    """Closed-form value of the extremal copula given by ``spec``."""
    return ExtremalCopula(spec)(u, v)


# ---------------------------------------------------------------------------
# Shuffles of min
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShuffleSpec:
    """Piecewise rearrangement of the comonotone copula.

    ``cuts`` partitions [0, 1] on the first axis. Piece i (between cuts[i-1]
    and cuts[i], 1-based) is carried onto slot ``permutation[i-1]`` of the
    second axis with slope ``orientations[i-1]`` (+1 keeps direction, -1
    reverses). Slot k inherits the width of the piece sent to it, so the
    margins stay uniform.
    """

    cuts: tuple
    permutation: tuple
    orientations: tuple

    def __post_init__(self):
        cuts = tuple(float(t) for t in self.cuts)
        n = len(cuts) - 1
        if n < 1:
            raise InvalidSpecError("need at least one piece")
        if abs(cuts[0]) > UNIT_SLACK or abs(cuts[-1] - 1.0) > UNIT_SLACK:
            raise InvalidSpecError("cuts must run from 0 to 1")
        cuts = (0.0,) + cuts[1:-1] + (1.0,)
        if any(cuts[i + 1] <= cuts[i] for i in range(n)):
            raise InvalidSpecError("cuts must be strictly increasing")
        perm = tuple(int(p) for p in self.permutation)
        if sorted(perm) != list(range(1, n + 1)):
            raise InvalidSpecError(f"permutation {perm} is not a bijection on 1..{n}")
        orient = tuple(int(o) for o in self.orientations)
        if len(orient) != n or any(o not in (-1, 1) for o in orient):
            raise InvalidSpecError("orientations must be one sign (+1 or -1) per piece")
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "permutation", perm)
        object.__setattr__(self, "orientations", orient)

    @property
    def n_pieces(self) -> int:
        return len(self.cuts) - 1

    def piece_geometry(self):
        """Arrays (p_lo, p_hi, s_lo, s_hi, omega), one entry per piece."""
        cuts = np.asarray(self.cuts)
        widths = np.diff(cuts)
        perm = np.asarray(self.permutation)
        slot_widths = np.empty_like(widths)
        slot_widths[perm - 1] = widths
        edges = np.concatenate(([0.0], np.cumsum(slot_widths)))
        return (cuts[:-1], cuts[1:], edges[perm - 1], edges[perm],
                np.asarray(self.orientations))


class ShuffleOfMin(BivariateFunction):
    """CDF of a shuffle of min: mass is uniform on slope +-1 segments."""

    def __init__(self, spec: ShuffleSpec):
        self.spec = spec
        self.label = f"shuffle[{spec.n_pieces}]"
        self._geom = spec.piece_geometry()

    def _value(self, u, v):
        p_lo, p_hi, s_lo, s_hi, omega = self._geom
        total = np.zeros(np.broadcast(u, v).shape)
        for i in range(len(omega)):
            if omega[i] > 0:
                hi_x = np.minimum(np.minimum(u, p_hi[i]), p_lo[i] + (v - s_lo[i]))
                total += np.maximum(hi_x - p_lo[i], 0.0)
            else:
                lo_x = p_lo[i] + np.maximum(s_hi[i] - v, 0.0)
                total += np.maximum(np.minimum(u, p_hi[i]) - lo_x, 0.0)
        return total


IDENTITY_SHUFFLE = ShuffleSpec((0.0, 1.0), (1,), (1,))
REVERSAL_SHUFFLE = ShuffleSpec((0.0, 1.0), (1,), (-1,))
HALF_SHIFT_SHUFFLE = ShuffleSpec((0.0, 0.5, 1.0), (2, 1), (1, 1))


def sample_shuffle(spec: ShuffleSpec, count: int, seed: int) -> np.ndarray:
    """Draw ``count`` points on the shuffle's support, shape (count, 2).

    The first coordinate is uniform; the second is its image under the
    piecewise translation/reflection, so points sit exactly on the support
    segments. Reproducible for a fixed seed.
    """
    if count < 1:
        raise InvalidSpecError("count must be >= 1")
    p_lo, p_hi, s_lo, s_hi, omega = spec.piece_geometry()
    rng = np.random.default_rng(seed)
    x = rng.random(count)
    idx = np.clip(np.searchsorted(spec.cuts, x, side="right") - 1, 0, spec.n_pieces - 1)
    off = x - p_lo[idx]
    y = np.where(omega[idx] > 0, s_lo[idx] + off, s_hi[idx] - off)
    return np.column_stack([x, y])


# ---------------------------------------------------------------------------
# Rectangle mass and axiom audits
# ---------------------------------------------------------------------------

def h_volume(func, lo: UnitPoint, hi: UnitPoint) -> float:
    """Mass C(hi) - C(hi.u, lo.v) - C(lo.u, hi.v) + C(lo) of a rectangle."""
    if lo.u > hi.u or lo.v > hi.v:
        raise BadRectangleError(f"corners not ordered: {lo} !<= {hi}")
    return float(func(hi.u, hi.v) - func(hi.u, lo.v) - func(lo.u, hi.v)
                 + func(lo.u, lo.v))


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of a grid audit of the quasi-copula axioms.

    ``lipschitz_violation`` is the worst violation of 0 <= increment <= 1/n
    over axis-adjacent node pairs (covers monotonicity and 1-Lipschitz),
    ``margin_violation`` the worst boundary mismatch, ``worst_volume`` the
    most negative grid-cell mass with its rectangle.
    """

    is_quasicopula: bool
    is_two_increasing: bool
    worst_volume: float
    worst_rectangle: tuple
    lipschitz_violation: float
    margin_violation: float


def check_quasicopula(func, n: int = 200, tol: float = 1e-9) -> AxiomReport:
    """Audit groundedness, margins, monotonicity, 1-Lipschitz and cell mass.

    All checks run on the (n+1) x (n+1) node grid i/n. The mesh bounds
    off-grid Lipschitz violations, so a clean grid report certifies the
    axioms up to O(1/n).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    t = np.arange(n + 1) / n
    vals = func(t[:, None], t[None, :])
    mesh = 1.0 / n

    margin = max(
        float(np.abs(vals[0, :]).max()),
        float(np.abs(vals[:, 0]).max()),
        float(np.abs(vals[-1, :] - t).max()),
        float(np.abs(vals[:, -1] - t).max()),
    )
    du = np.diff(vals, axis=0)
    dv = np.diff(vals, axis=1)
    lip = max(0.0,
              float((du - mesh).max()), float((dv - mesh).max()),
              float((-du).max()), float((-dv).max()))

    vol = du[:, 1:] - du[:, :-1]
    flat = int(np.argmin(vol))
    i, j = divmod(flat, n)
    worst = float(vol[i, j])
    rect = (UnitPoint(i / n, j / n), UnitPoint((i + 1) / n, (j + 1) / n))

    return AxiomReport(
        is_quasicopula=(margin <= tol and lip <= tol),
        is_two_increasing=(worst >= -tol),
        worst_volume=worst,
        worst_rectangle=rect,
        lipschitz_violation=lip,
        margin_violation=margin,
    )


# ---------------------------------------------------------------------------
# Grid samples and checkerboard copulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridFunction:
    """Node samples values[i, j] = F(i/n, j/n) of a unit-square function."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if self.n < 2 or values.shape != (self.n + 1, self.n + 1):
            raise ValueError(f"values must have shape ({self.n + 1}, {self.n + 1})")
        if values.min() < -1e-9 or values.max() > 1.0 + 1e-9:
            raise ValueError("grid values must lie in [0, 1]")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, func, n: int) -> "GridFunction":
        t = np.arange(n + 1) / n
        return cls(n, func(t[:, None], t[None, :]))

    def cell_volumes(self) -> np.ndarray:
        du = np.diff(self.values, axis=0)
        return du[:, 1:] - du[:, :-1]

    def midpoints(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5) / self.n


class CheckerboardCopula(BivariateFunction):
    """Piecewise-uniform copula spreading masses[i, j] over cell ij.

    Every row and column of ``masses`` must sum to 1/n (uniform margins);
    the CDF is then bilinear inside each cell, interpolating the cumulative
    corner values exactly.
    """

    def __init__(self, masses):
        masses = np.asarray(masses, dtype=float)
        if masses.ndim != 2 or masses.shape[0] != masses.shape[1]:
            raise InvalidSpecError("masses must be a square matrix")
        n = masses.shape[0]
        if masses.min() < -UNIT_SLACK:
            raise InvalidSpecError("cell masses must be nonnegative")
        target = 1.0 / n
        if (np.abs(masses.sum(axis=0) - target).max() > 1e-9
                or np.abs(masses.sum(axis=1) - target).max() > 1e-9):
            raise InvalidSpecError("rows and columns must each sum to 1/n")
        self.n = n
        self.masses = masses
        cum = np.zeros((n + 1, n + 1))
        np.cumsum(np.cumsum(masses, axis=0), axis=1, out=cum[1:, 1:])
        self._cum = cum
        self.label = f"checkerboard[{n}]"

    @classmethod
    def random(cls, n: int, seed: int, iters: int = 1000) -> "CheckerboardCopula":
        """Random checkerboard via Sinkhorn balancing of a positive matrix."""
        rng = np.random.default_rng(seed)
        m = rng.random((n, n)) + 0.1
        for _ in range(iters):
            m /= m.sum(axis=1, keepdims=True) * n
            m /= m.sum(axis=0, keepdims=True) * n
            if np.abs(m.sum(axis=1) * n - 1.0).max() < 1e-15:
                break
        return cls(m)

    def _value(self, u, v):
        n = self.n
        x = u * n
        y = v * n
        i = np.minimum(np.floor(x).astype(np.intp), n - 1)
        j = np.minimum(np.floor(y).astype(np.intp), n - 1)
        fu = x - i
        fv = y - j
        c = self._cum
        return ((1 - fu) * (1 - fv) * c[i, j] + fu * (1 - fv) * c[i + 1, j]
                + (1 - fu) * fv * c[i, j + 1] + fu * fv * c[i + 1, j + 1])


# ---------------------------------------------------------------------------
# Conditional-inverse sampling
# ---------------------------------------------------------------------------

def sample_conditional(func, count: int, seed: int, inv_tol: float = 1e-6,
                       deriv_step: float = 1e-6, mono_tol: float = 1e-7) -> np.ndarray:
    """Sample a copula by inverting its numeric conditional CDF.

    The conditional CDF at u is the forward difference
    (C(u + h, v) - C(u, v)) / h with h = ``deriv_step`` (the stencil shifts
    left at the right edge), inverted by bisection until the bracket is
    below ``inv_tol``. No density is required, so singular copulas work.
    The conditional CDF is probed on a coarse grid first; a decrease beyond
    ``mono_tol`` raises NotMonotoneError (the function is then not
    2-increasing and has no conditional distribution to invert).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if inv_tol <= 0:
        raise ValueError("inv_tol must be positive")
    rng = np.random.default_rng(seed)
    u = rng.random(count)
    p = rng.random(count)
    h = deriv_step
    base = np.minimum(u, 1.0 - h)

    def cond(v):
        return (func(base + h, v) - func(base, v)) / h

    prev = np.zeros(count)
    worst = 0.0
    for t in np.linspace(0.0, 1.0, 33)[1:]:
        cur = cond(np.full(count, t))
        worst = min(worst, float((cur - prev).min()))
        prev = cur
    if worst < -mono_tol:
        raise NotMonotoneError(
            f"conditional CDF decreases by {-worst:.3g} (> {mono_tol:g}); "
            "the evaluator is not 2-increasing"
        )

    lo = np.zeros(count)
    hi = np.ones(count)
    while float((hi - lo).max()) > inv_tol:
        mid = 0.5 * (lo + hi)
        take = cond(mid) < p
        lo = np.where(take, mid, lo)
        hi = np.where(take, hi, mid)
    return np.column_stack([u, 0.5 * (lo + hi)])
