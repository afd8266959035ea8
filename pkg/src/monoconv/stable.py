"""Strictly stable semigroups: closed-form transforms and the support table.

The family is generated by A(z) = (b/alpha) (z-c)^(1-alpha) and flows in
closed form,

    H_t(z) = c + ((z - c)^alpha + b t)^(1/alpha),

with every power taken on the (0, 2*pi) branch (see ``_branch``).  For the
normalized parameters (b = 1 for alpha < 1, b = -1 for 1 <= alpha <= 2, c
real) the absolutely continuous support and the single atom are tabulated;
alpha = 2 and alpha = 1/2 additionally have explicit densities.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._branch import on_positive_cut, upper_power
from .errors import BranchCutHit, UnnormalizedB
from .measures import AtomicMeasure, GridMeasure, StableLaw, _stable_params_valid

StableParams = StableLaw  # one carrier type for family measures and parameters

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class SupportCase:
    """One row of the support table: case id 1..8, a.c. support, optional atom."""

    case_id: int
    ac_lo: float
    ac_hi: float
    atom: tuple | None  # (position, weight)


def stable_valid(alpha, b, c):
    """Parameter validity: 0 < alpha <= 2, Im c <= 0 (dropped at alpha = 1),
    and arg b in [0, alpha*pi] for alpha <= 1, [(alpha-1)*pi, pi] above."""
    return _stable_params_valid(alpha, b, c)


class StableField:
    """A(z) = (b/alpha)(z-c)^(1-alpha) with field-protocol accessors."""

    def __init__(self, alpha, b, c):
        if not stable_valid(alpha, b, c):
            raise ValueError("invalid stable parameters")
        self.alpha = float(alpha)
        self.b = complex(b)
        self.c = complex(c)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        out = (self.b / self.alpha) * upper_power(z - self.c, 1.0 - self.alpha)
        return out if np.ndim(z) else complex(out)

    def eval_real(self, u):
        v = complex(self.eval(complex(u)))
        if abs(v.imag) > 1e-9 * (1.0 + abs(v)):
            from .errors import PoleAt

            raise PoleAt(u, "stable field is not real here")
        return v.real

    def tau_bounds(self):
        # at alpha = 2 the Levy measure is the single atom at c; for real b
        # the boundary values of Im A vanish on (c, inf), so tau lives on
        # (-inf, c]; complex b spreads mass on both sides of c
        if self.alpha == 2.0:
            return self.c.real, self.c.real
        if abs(self.b.imag) > 1e-12:
            return -math.inf, math.inf
        return -math.inf, self.c.real


def stable_field(p):
    return StableField(p.alpha, p.b, p.c)


def stable_H(p, z):
    """H_t(z) = c + ((z-c)^alpha + b t)^(1/alpha) on the (0, 2*pi) branch.

    Raises :class:`BranchCutHit` if the inner power lands on the positive
    real axis for an interior z (boundary evaluation with real z uses the
    upper-limit convention and is allowed).
    """
    if not stable_valid(p.alpha, p.b, p.c):
        raise ValueError("invalid stable parameters")
    z = np.asarray(z, dtype=complex)
    if p.t == 0.0:
        return z if np.ndim(z) else complex(z)
    w = upper_power(z - p.c, p.alpha)
    inner = w + p.b * p.t
    interior = z.imag > 1e-12
    hit = on_positive_cut(inner) & np.asarray(interior)
    if np.any(hit):
        raise BranchCutHit("(z-c)^alpha + b*t landed on the branch cut")
    out = p.c + upper_power(inner, 1.0 / p.alpha)
    return out if np.ndim(z) else complex(out)


def _require_normalized(p):
    if abs(p.c.imag) > _NORM_TOL:
        raise UnnormalizedB("support table requires real c")
    if p.alpha < 1.0:
        if abs(p.b - 1.0) > _NORM_TOL:
            raise UnnormalizedB("support table requires b = 1 for alpha < 1")
    else:
        if abs(p.b + 1.0) > _NORM_TOL:
            raise UnnormalizedB("support table requires b = -1 for 1 <= alpha <= 2")


def stable_support_case(p):
    """The matching row of the support table (normalized b, real c).

    At alpha = 1 the flow is the pure translation H_t = z + b*t, so the law
    is the point mass at -b*t.
    """
    if not stable_valid(p.alpha, p.b, p.c):
        raise ValueError("invalid stable parameters")
    alpha, t = p.alpha, p.t
    if p.c.imag < -_NORM_TOL:
        return SupportCase(1, -math.inf, math.inf, None)
    if alpha == 1.0:
        if abs(p.b.imag) > _NORM_TOL:
            # Cauchy branch: absolutely continuous on the whole line
            return SupportCase(1, -math.inf, math.inf, None)
        return SupportCase(8, math.nan, math.nan, (-p.b.real * t, 1.0))
    _require_normalized(p)
    c = p.c.real
    if alpha == 2.0:
        lo, hi = c - math.sqrt(t), c + math.sqrt(t)
        if c == 0.0:
            return SupportCase(2, lo, hi, None)
        s = math.sqrt(c * c + t)
        w = abs(c) / s
        if c > 0:
            return SupportCase(2, lo, hi, (c - s, w))
        return SupportCase(3, lo, hi, (c + s, w))
    if alpha > 1.0:
        hi = c + t ** (1.0 / alpha)
        if c >= 0:
            return SupportCase(4, -math.inf, hi, None)
        m = abs(c) ** alpha
        w = (m / (m + t)) ** ((alpha - 1.0) / alpha)
        return SupportCase(5, -math.inf, hi, (c + (m + t) ** (1.0 / alpha), w))
    # 0 < alpha < 1
    if c >= 0:
        return SupportCase(6, -math.inf, c, None)
    m = abs(c) ** alpha
    if t < m:
        w = ((m - t) / m) ** ((1.0 - alpha) / alpha)
        return SupportCase(7, -math.inf, c, (c + (m - t) ** (1.0 / alpha), w))
    return SupportCase(7, -math.inf, c, None)


def stable_support_bounds(p):
    """(a, b) support bounds, atoms included; falls back to the whole line
    when the parameters sit outside the tabulated normalization."""
    try:
        sc = stable_support_case(p)
    except UnnormalizedB:
        return -math.inf, math.inf
    if sc.case_id == 8:
        pos = sc.atom[0]
        return pos, pos
    lo, hi = sc.ac_lo, sc.ac_hi
    if p.t == 0.0:
        return 0.0, 0.0
    if sc.atom is not None:
        lo = min(lo, sc.atom[0])
        hi = max(hi, sc.atom[0])
    return lo, hi


def _density_alpha2(c, t, xs):
    u = xs - c
    r2 = t - u * u
    return np.where(r2 > 0, np.sqrt(np.maximum(r2, 0.0)) / (math.pi * (c * c + t - u * u)), 0.0)


def _density_alpha_half(c, t, xs):
    under = c - xs
    num = 2.0 * t * np.sqrt(np.maximum(under, 0.0))
    den = (t * t + xs) ** 2 + 4.0 * t * t * np.maximum(under, 0.0)
    return np.where(under > 0, num / (math.pi * den), 0.0)


def stable_density(p, xs):
    """Density of mu_t on the grid: closed form for alpha in {2, 1/2} with
    normalized parameters, Stieltjes inversion of H_t otherwise."""
    xs = np.asarray(xs, dtype=float)
    if p.t == 0.0:
        return GridMeasure(xs, np.zeros_like(xs), AtomicMeasure.dirac(0.0), meta="closed-form")
    closed = None
    if abs(p.c.imag) <= _NORM_TOL:
        c = p.c.real
        if p.alpha == 2.0 and abs(p.b + 1.0) <= _NORM_TOL:
            closed = _density_alpha2(c, p.t, xs)
        elif p.alpha == 0.5 and abs(p.b - 1.0) <= _NORM_TOL:
            closed = _density_alpha_half(c, p.t, xs)
    if closed is not None:
        sc = stable_support_case(p)
        atoms = AtomicMeasure.empty()
        if sc.atom is not None:
            atoms = AtomicMeasure.dirac(*sc.atom)
        return GridMeasure(xs, closed, atoms, meta="closed-form")

    from .transforms import stieltjes_invert

    hints = ()
    try:
        sc = stable_support_case(p)
        if sc.atom is not None:
            hints = (sc.atom[0],)
    except UnnormalizedB:
        pass
    gm = stieltjes_invert(lambda z: stable_H(p, z), xs, atom_hints=hints, meta="inverted")
    return gm


__all__ = [
    "StableParams",
    "SupportCase",
    "StableField",
    "stable_field",
    "stable_valid",
    "stable_H",
    "stable_support_case",
    "stable_support_bounds",
    "stable_density",
]
