"""Moment extraction, the convolution moment recursion, and semigroup moments.

Two combinatorial formulas drive this module: the monotone convolution
moment recursion

    m_l(mu |> nu) = m_l(mu) + m_l(nu)
                    + sum_{k=1}^{l-1} sum_{j_0+...+j_k = l-k} m_k(mu) m_{j_0}(nu)...m_{j_k}(nu)

and the semigroup moment polynomial

    m_n(t) = sum_{k=1}^{n} (t^k / k!) sum_{1=i_0<i_1<...<i_k=n+1}
             prod_{p=1}^{k} i_{p-1} * r_{i_p - i_{p-1}},

where the field coefficients r_n expand the generating vector field as
A(z) = -(r_1 + r_2/z + r_3/z^2 + ...).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentMoment
from .measures import (
    Arcsine,
    AtomicMeasure,
    DeformedArcsine,
    Dirac,
    GridMeasure,
    MonotonePoisson,
    StableLaw,
)

MAX_CONV_ORDER = 16


@dataclass(frozen=True)
class MomentSequence:
    """values[k] = m_k, k = 0..N (m_0 = 1 for probability measures)."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def __getitem__(self, k):
        return float(self.values[k])

    @property
    def order(self):
        return self.values.size - 1


@dataclass(frozen=True)
class FieldCoefficients:
    """r[n-1] = r_n with A(z) = -sum_{n>=1} r_n z^{-(n-1)}."""

    r: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float))

    def r_n(self, n):
        return float(self.r[n - 1]) if n <= self.r.size else 0.0

    @property
    def order(self):
        return self.r.size


def _grid_moment(gm, k):
    val = float(np.trapezoid(gm.density * gm.xs**k, gm.xs))
    if gm.atoms.n_atoms:
        val += float(np.dot(gm.atoms.weights, gm.atoms.positions**k))
    return val


def _tail_moment_finite(gm, k):
    if gm.tails is None:
        return True
    for p in gm.tails:
        if p is not None and k >= p - 1.0 - 1e-12:
            return False
    return True


def _cos_grid_moments(c, radius, denom_shift, N, n_nodes=4096):
    """Moments of density sqrt(r^2-(x-c)^2)/(pi*(denom_shift + r^2 - (x-c)^2))
    via the substitution x = c + r*cos(phi), which removes the edge
    singularity of the arcsine-type laws."""
    phi = np.linspace(0.0, math.pi, n_nodes)
    x = c + radius * np.cos(phi)
    s2 = (radius * np.sin(phi)) ** 2
    base = s2 / (math.pi * (denom_shift + s2))  # density * |dx/dphi|
    return [float(np.trapezoid(base * x**k, phi)) for k in range(N + 1)]


def moments_of(m, N):
    """First N+1 moments (m_0..m_N); exact for atoms, closed form for the
    arcsine family, quadrature elsewhere.  Raises DivergentMoment when the
    representation declares a tail too heavy for the requested order."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if isinstance(m, Dirac):
        return MomentSequence([m.a**k for k in range(N + 1)])
    if isinstance(m, AtomicMeasure):
        return MomentSequence(
            [float(np.dot(m.weights, m.positions**k)) for k in range(N + 1)]
        )
    if isinstance(m, GridMeasure):
        vals = []
        for k in range(N + 1):
            if not _tail_moment_finite(m, k):
                raise DivergentMoment(f"moment {k} diverges under the declared tail")
            vals.append(_grid_moment(m, k))
        return MomentSequence(vals)
    if isinstance(m, Arcsine):
        vals = [1.0]
        for k in range(1, N + 1):
            if k % 2:
                vals.append(0.0)
            else:
                half = k // 2
                vals.append((2.0 * m.t) ** half * math.comb(k, half) / 4.0**half)
        return MomentSequence(vals)
    if isinstance(m, DeformedArcsine):
        r = math.sqrt(2.0 * m.t)
        vals = np.array(_cos_grid_moments(m.c, r, m.c * m.c, N))
        if m.c != 0.0:
            s = math.sqrt(m.c * m.c + 2.0 * m.t)
            pos = m.c - s if m.c > 0 else m.c + s
            w = abs(m.c) / s
            vals = vals + np.array([w * pos**k for k in range(N + 1)])
        return MomentSequence(vals)
    if isinstance(m, MonotonePoisson):
        r = field_coefficients(m.lam / 2.0, AtomicMeasure.dirac(1.0, m.lam / 2.0), N)
        return MomentSequence([semigroup_moment(r, m.t, k) if k else 1.0 for k in range(N + 1)])
    if isinstance(m, StableLaw):
        if m.alpha == 2.0 and abs(m.b + 1.0) < 1e-12 and abs(m.c.imag) < 1e-12:
            c = m.c.real
            vals = np.array(_cos_grid_moments(c, math.sqrt(m.t), c * c, N)) if m.t > 0 else np.array(
                [0.0**k if k else 1.0 for k in range(N + 1)]
            )
            if c != 0.0 and m.t > 0:
                s = math.sqrt(c * c + m.t)
                pos = c - s if c >= 0 else c + s
                vals = vals + np.array([(abs(c) / s) * pos**k for k in range(N + 1)])
            return MomentSequence(vals)
        if N >= 1:
            raise DivergentMoment(
                f"stable law with alpha={m.alpha} has divergent moments of order >= 1"
            )
        return MomentSequence([1.0])
    raise TypeError(f"not a measure: {m!r}")


def field_coefficients(gamma, tau, N):
    """Coefficients r_1..r_N of A(z) = -gamma + integral (1+xz)/(x-z) d tau.

    Writing A(z) = -gamma' + integral d sigma/(x-z) with sigma = (1+x^2) tau
    and gamma' = gamma + m_1(tau) gives r_1 = gamma', r_n = m_{n-2}(sigma).
    """
    if N < 1:
        raise ValueError("need N >= 1")
    tau_moments = moments_of(tau, max(N, 2))
    r = np.zeros(N)
    r[0] = gamma + tau_moments[1]
    for n in range(2, N + 1):
        # m_{n-2}(sigma) = m_{n-2}(tau) + m_n(tau)
        r[n - 1] = tau_moments[n - 2] + tau_moments[n]
    return FieldCoefficients(r)


def convolve_moments(m_mu, m_nu, L):
    """Moments of mu |> nu up to order L from the moments of the factors."""
    if L > MAX_CONV_ORDER:
        raise ValueError(f"order capped at {MAX_CONV_ORDER}")
    if m_mu.order < L or m_nu.order < L:
        raise ValueError("factor moment sequences too short")
    nu = m_nu.values

    cache = {}

    def weak_sum(parts, rem):
        """sum over j_1..j_parts >= 0 with sum rem of prod m_{j_p}(nu)."""
        if parts == 1:
            return nu[rem]
        key = (parts, rem)
        if key not in cache:
            cache[key] = sum(nu[j] * weak_sum(parts - 1, rem - j) for j in range(rem + 1))
        return cache[key]

    out = np.empty(L + 1)
    out[0] = 1.0
    for l in range(1, L + 1):
        val = m_mu.values[l] + m_nu.values[l]
        for k in range(1, l):
            val += m_mu.values[k] * weak_sum(k + 1, l - k)
        out[l] = val
    return MomentSequence(out)


def semigroup_moment(r, t, n):
    """m_n(t) of the semigroup generated by the field with coefficients r."""
    if n == 0:
        return 1.0
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > r.order:
        raise ValueError("field coefficients too short for requested order")

    cache = {}

    def chains(i, rem, k):
        """sum over increasing chains taking k steps of total length rem from
        index i of prod i_{p-1} r_{step_p}."""
        if k == 0:
            return 1.0 if rem == 0 else 0.0
        key = (i, rem, k)
        if key not in cache:
            cache[key] = sum(
                i * r.r_n(d) * chains(i + d, rem - d, k - 1)
                for d in range(1, rem - (k - 1) + 1)
            )
        return cache[key]

    total = 0.0
    tk = 1.0
    for k in range(1, n + 1):
        tk *= t / k
        total += tk * chains(1, n, k)
    return total


def moment_ode_rhs(r, m):
    """Right-hand sides dm_n/dt = sum_{k=1}^n k r_{n-k+1} m_{k-1}, n = 1..N."""
    values = np.asarray(m.values if isinstance(m, MomentSequence) else m, dtype=float)
    N = values.size - 1
    out = np.zeros(N)
    for n in range(1, N + 1):
        out[n - 1] = sum(k * r.r_n(n - k + 1) * values[k - 1] for k in range(1, n + 1))
    return out


def semigroup_consistency(r, t, s, N):
    """Max over n <= N of |m_n(t+s) - composition formula| (should be ~0)."""
    m_t = MomentSequence([semigroup_moment(r, t, n) for n in range(N + 1)])
    m_s = MomentSequence([semigroup_moment(r, s, n) for n in range(N + 1)])
    lhs = np.array([semigroup_moment(r, t + s, n) for n in range(N + 1)])
    rhs = convolve_moments(m_t, m_s, N).values
    return float(np.max(np.abs(lhs - rhs)))


def symmetry_diagnostic(gamma, tau, N):
    """True iff gamma vanishes and tau is symmetric (odd moments up to N).

    Compactly supported representations only; grids with declared tails are
    refused because the underlying equivalence is proved for compact
    support.
    """
    if isinstance(tau, GridMeasure) and tau.tails is not None:
        raise ValueError("symmetry diagnostic requires a compactly supported tau")
    if abs(gamma) > 1e-12:
        return False
    ms = moments_of(tau, N)
    for k in range(1, N + 1, 2):
        if abs(ms[k]) > 1e-10:
            return False
    if isinstance(tau, GridMeasure):
        # reflection comparison of the sampled density
        refl = np.interp(-tau.xs[::-1], tau.xs, tau.density, left=0.0, right=0.0)
        if np.max(np.abs(refl[::-1] - tau.density)) > 1e-8 * (1.0 + np.max(tau.density)):
            return False
    return True


def even_moment_tail_check(tau, n):
    """Is m_{2n}(tau) finite under the stored representation?"""
    if isinstance(tau, (AtomicMeasure, Dirac)):
        return True
    if isinstance(tau, GridMeasure):
        return _tail_moment_finite(tau, 2 * n)
    try:
        moments_of(tau, 2 * n)
        return True
    except DivergentMoment:
        return False


__all__ = [
    "MAX_CONV_ORDER",
    "MomentSequence",
    "FieldCoefficients",
    "moments_of",
    "field_coefficients",
    "convolve_moments",
    "semigroup_moment",
    "moment_ode_rhs",
    "semigroup_consistency",
    "symmetry_diagnostic",
    "even_moment_tail_check",
]
