"""The monotone Bercovici-Pata bijection and its property checks.

Classical infinitely divisible laws and monotone ones are both parametrised
by a pair (gamma, tau) with tau a finite positive measure: the classical
side through the Levy-Khintchine characteristic function, the monotone side
through the generating vector field.  The bijection is the identity on
pairs; the content is in what it preserves (Gaussians <-> arcsine laws,
Poissons <-> monotone Poissons, positivity, dilations, stable laws,
even-moment finiteness).
"""

import math
from dataclasses import dataclass

import numpy as np

from .measures import (
    AtomicMeasure,
    GridMeasure,
    measure_from_json,
    measure_to_json,
    total_mass,
)
from .moments import even_moment_tail_check
from .semigroup import VectorField, bounded_below_check, subordinator_check


@dataclass(frozen=True, eq=False)
class ClassicalTriple:
    """Classical Levy-Khintchine pair: characteristic function
    exp(i*gamma*u + integral (e^{ixu} - 1 - ixu/(1+x^2)) (1+x^2)/x^2 d tau)."""

    gamma: float
    tau: object

    def __post_init__(self):
        object.__setattr__(self, "gamma", float(self.gamma))


def lambda_M(c):
    """Classical pair -> monotone vector field (identity on the pair)."""
    return VectorField(c.gamma, c.tau)


def lambda_M_inverse(V):
    """Monotone vector field -> classical pair (identity on the pair)."""
    return ClassicalTriple(V.gamma, V.tau)


def _cf_integrand(x, u):
    """(e^{ixu} - 1 - ixu/(1+x^2)) * (1+x^2)/x^2, extended by -u^2/2 at x=0."""
    x = np.asarray(x, dtype=float)
    out = np.empty(np.shape(x), dtype=complex)
    small = np.abs(x) < 1e-8
    xs = np.where(small, 1.0, x)
    val = (np.exp(1j * xs * u) - 1.0 - 1j * xs * u / (1.0 + xs * xs)) * (1.0 + xs * xs) / (xs * xs)
    out = np.where(small, -u * u / 2.0 + 0.0j, val)
    return out


def classical_cf(c, u):
    """Characteristic function of the classical infinitely divisible law."""
    tau = c.tau
    expo = 1j * c.gamma * u
    if isinstance(tau, AtomicMeasure):
        if tau.n_atoms:
            expo = expo + np.sum(tau.weights * _cf_integrand(tau.positions, u))
    elif isinstance(tau, GridMeasure):
        expo = expo + np.trapezoid(tau.density * _cf_integrand(tau.xs, u), tau.xs)
        if tau.atoms.n_atoms:
            expo = expo + np.sum(tau.atoms.weights * _cf_integrand(tau.atoms.positions, u))
    else:
        raise TypeError("tau must be atomic or grid")
    return complex(np.exp(expo))


def classical_positive_check(c):
    """Classical subordinator criterion; same pair arithmetic as the
    monotone check, which is the content of the positivity correspondence."""
    return subordinator_check(VectorField(c.gamma, c.tau))


def classical_bounded_below_check(c):
    return bounded_below_check(VectorField(c.gamma, c.tau))


def classical_even_moment_check(c, n):
    return even_moment_tail_check(c.tau, n)


def dilation_conjugate(V, lam):
    """The pair of the dilated field A_lam(z) = lam * A(z / lam).

    Atom positions scale by lam with weights w -> w * lam^2 (1+x^2)/(1+lam^2 x^2)
    (the Gaussian part tau({0}) scales by lam^2); the drift picks up
    gamma' = lam*gamma - lam * integral (lam^2-1) x / (1 + lam^2 x^2) d tau.
    """
    if not lam > 0:
        raise ValueError("dilation factor must be positive")
    lam = float(lam)
    tau = V.tau
    if isinstance(tau, AtomicMeasure):
        x = tau.positions
        w = tau.weights
        shift = float(np.sum((lam * lam - 1.0) * x / (1.0 + lam * lam * x * x) * w))
        new_w = w * lam * lam * (1.0 + x * x) / (1.0 + lam * lam * x * x)
        new_tau = AtomicMeasure(x * lam, new_w) if x.size else AtomicMeasure.empty()
        return VectorField(lam * V.gamma - lam * shift, new_tau)
    if isinstance(tau, GridMeasure):
        x = tau.xs
        shift = float(
            np.trapezoid((lam * lam - 1.0) * x / (1.0 + lam * lam * x * x) * tau.density, x)
        )
        ys = lam * x
        new_dens = tau.density * lam * (1.0 + x * x) / (1.0 + ys * ys)
        atoms = AtomicMeasure.empty()
        ashift = 0.0
        if tau.atoms.n_atoms:
            inner = dilation_conjugate(VectorField(0.0, tau.atoms), lam)
            atoms = inner.tau
            ashift = -inner.gamma / lam
        return VectorField(
            lam * V.gamma - lam * (shift + ashift),
            GridMeasure(ys, new_dens, atoms, tails=tau.tails),
        )
    raise TypeError("tau must be atomic or grid")


def stable_pair(alpha, b, window=1e4, n_points=100001):
    """Levy pair of the strictly stable field A(z) = b z^(1-alpha).

    The boundary values give, with c1 = Im(b)/pi and c2 = Im(b e^{i pi (1-alpha)})/pi,

        (1+x^2)/x^2 tau(dx) = c1 |x|^{-1-alpha} dx on (0, inf)
                              + c2 |x|^{-1-alpha} dx on (-inf, 0),
        gamma = Im(b e^{-i pi alpha / 2}),

    truncated to a log-spaced grid on [-window, window].  For alpha != 1 the
    classical side then satisfies gamma = (c1 - c2) * pi / (2 cos(alpha pi/2)).
    """
    if not (0.0 < alpha < 2.0):
        raise ValueError("stable_pair needs 0 < alpha < 2")
    b = complex(b)
    c1 = b.imag / math.pi
    c2 = (b * np.exp(1j * math.pi * (1.0 - alpha))).imag / math.pi
    if c1 < -1e-13 or c2 < -1e-13:
        raise ValueError("parameters give a signed boundary measure; b is invalid")
    gamma = (b * np.exp(-1j * math.pi * alpha / 2.0)).imag

    half = n_points // 2
    x_pos = np.geomspace(1e-6, window, half)
    xs = np.concatenate((-x_pos[::-1], x_pos))
    dens = np.empty_like(xs)
    # tau density = c_i |x|^{1-alpha} / (1+x^2)
    dens[xs > 0] = c1 * np.abs(x_pos) ** (1.0 - alpha) / (1.0 + x_pos * x_pos)
    dens[xs < 0] = c2 * np.abs(x_pos[::-1]) ** (1.0 - alpha) / (1.0 + x_pos[::-1] ** 2)
    return VectorField(gamma, GridMeasure(xs, dens, AtomicMeasure.empty()))


def classical_stable_drift(alpha, c1, c2):
    """gamma of a strictly alpha-stable classical law (alpha != 1)."""
    if alpha == 1.0:
        raise ValueError("alpha = 1 carries no drift constraint of this form")
    return (c1 - c2) * math.pi / (2.0 * math.cos(alpha * math.pi / 2.0))


def triple_to_json(c):
    return {"gamma": c.gamma, "tau": measure_to_json(c.tau)}


def triple_from_json(obj):
    return ClassicalTriple(float(obj["gamma"]), measure_from_json(obj["tau"]))


__all__ = [
    "ClassicalTriple",
    "lambda_M",
    "lambda_M_inverse",
    "classical_cf",
    "classical_positive_check",
    "classical_bounded_below_check",
    "classical_even_moment_check",
    "dilation_conjugate",
    "stable_pair",
    "classical_stable_drift",
    "triple_to_json",
    "triple_from_json",
]
