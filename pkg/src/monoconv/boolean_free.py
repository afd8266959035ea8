"""Boolean convolution and the free positivity counterexample.

Boolean convolution adds K-transforms, K(z) = z - H(z): for atomic factors
H stays rational, so the convolution is computed exactly from the combined
partial-fraction form (the same bracketed root finding as the monotone
atomic path).  The free side implements the one closed-form semigroup

    H_t(z) = z - a t + t^2/2 + t sqrt(z - (a t - t^2/4 + c))

whose support leaves the negative half-line for small t > 0 and returns to
it for large t: positivity of a free convolution semigroup is genuinely
time-dependent, unlike the monotone, boolean, and classical cases.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ._branch import upper_power
from .atomic import atomic_H_partial_fractions
from .errors import MonoconvError
from .measures import AtomicMeasure, Dirac, GridMeasure, require_probability
from .semigroup import VectorField, subordinator_check
from .transforms import TransformEvaluator, as_evaluator, reciprocal_H, stieltjes_invert


@dataclass(frozen=True)
class KTransform:
    """K(z) = z - H(z); additive under boolean convolution."""

    fn: object
    provenance: str = "custom"

    def __call__(self, z):
        return self.fn(z)


def k_transform(m):
    h = as_evaluator(m)
    return KTransform(lambda z: np.asarray(z, dtype=complex) - h(z), h.provenance)


def _partial_fractions_of(m):
    if isinstance(m, Dirac):
        return -m.a, []
    if isinstance(m, AtomicMeasure):
        return atomic_H_partial_fractions(m)
    raise TypeError("exact boolean path needs atomic input")


def _boolean_atomic(mu, nu):
    """Exact boolean convolution of atomic measures.

    H = H_mu + H_nu - z is alpha + z + sum beta_k/(b_k - z) with the poles
    of both factors combined; its zeros (one per pole gap plus two exterior)
    are the atoms, with weights 1/H'(zero).
    """
    a1, p1 = _partial_fractions_of(mu)
    a2, p2 = _partial_fractions_of(nu)
    alpha = a1 + a2
    combined = {}
    for pos, beta in p1 + p2:
        for key in combined:
            if abs(key - pos) < 1e-12 * (1.0 + abs(pos)):
                combined[key] += beta
                break
        else:
            combined[pos] = beta
    poles = np.array(sorted(combined))
    betas = np.array([combined[p] for p in poles])

    def H(u):
        return alpha + u + float(np.sum(betas / (poles - u)))

    def H_deriv(u):
        return 1.0 + float(np.sum(betas / (poles - u) ** 2))

    roots = []
    if poles.size == 0:
        roots.append(-alpha)
    else:
        # one root per gap: H runs from -inf to +inf across each
        for lo, hi in zip(poles[:-1], poles[1:]):
            def phi(u, lo=lo, hi=hi):
                if u == lo:
                    return -(hi - lo) * betas[np.argmin(np.abs(poles - lo))]
                if u == hi:
                    return (hi - lo) * betas[np.argmin(np.abs(poles - hi))]
                return (u - lo) * (hi - u) * H(u)

            roots.append(brentq(phi, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200))
        # exterior roots: H -> -inf at poles[0]- and +inf at poles[-1]+
        span = abs(alpha) + float(np.sum(betas)) + 1.0
        lo = poles[0] - span
        while H(lo) > 0:
            lo = poles[0] - 2.0 * (poles[0] - lo)

        def psi_left(u):
            if u == poles[0]:
                return betas[0]
            return (poles[0] - u) * H(u)

        roots.append(brentq(psi_left, lo, poles[0], xtol=1e-15, rtol=8.9e-16, maxiter=200))
        hi = poles[-1] + span
        while H(hi) < 0:
            hi = poles[-1] + 2.0 * (hi - poles[-1])

        def psi_right(u):
            if u == poles[-1]:
                return -betas[-1]
            return (u - poles[-1]) * H(u)

        roots.append(brentq(psi_right, poles[-1], hi, xtol=1e-15, rtol=8.9e-16, maxiter=200))

    pairs = []
    for r in sorted(roots):
        for _ in range(2):  # Newton polish
            r -= H(r) / H_deriv(r)
        w = 1.0 / H_deriv(r)
        if w <= 0:
            raise MonoconvError("boolean convolution produced a nonpositive weight")
        pairs.append((r, w))
    total = sum(w for _, w in pairs)
    if abs(total - 1.0) > 1e-8:
        raise MonoconvError(f"boolean atomic weights sum to {total}")
    return AtomicMeasure.from_pairs(pairs)


def boolean_convolve(mu, nu, xs=None):
    """Boolean convolution via K_{mu (+) nu} = K_mu + K_nu.

    Atomic (or Dirac) factors take the exact rational path; anything else is
    inverted on the grid ``xs``.
    """
    for m in (mu, nu):
        if isinstance(m, (AtomicMeasure, GridMeasure)):
            require_probability(m, "boolean_convolve")
    exactable = all(isinstance(m, (AtomicMeasure, Dirac)) for m in (mu, nu))
    if exactable:
        return _boolean_atomic(mu, nu)
    if xs is None:
        raise ValueError("non-atomic boolean convolution needs an inversion grid xs")
    h_mu = as_evaluator(mu)
    h_nu = as_evaluator(nu)

    def h(z):
        z = np.asarray(z, dtype=complex)
        return h_mu(z) + h_nu(z) - z

    return stieltjes_invert(TransformEvaluator(h, "boolean"), xs)


def boolean_subordinator_check(gamma, tau):
    """Boolean semigroup positivity; the arithmetic coincides with the
    monotone subordinator condition on the same pair."""
    return subordinator_check(VectorField(gamma, tau))


def boolean_symmetry_check(K, sample):
    """Odd-function test of K compatible with reflection symmetry:
    max |-K(-conj(z)) - conj(K(z))| < 1e-9 over the sample."""
    worst = 0.0
    for z in sample:
        z = complex(z)
        lhs = -complex(K(-z.conjugate()))
        rhs = complex(K(z)).conjugate()
        worst = max(worst, abs(lhs - rhs))
    return worst < 1e-9


@dataclass(frozen=True)
class FreeCounterexampleParams:
    """Free semigroup with Voiculescu transform a - sqrt(z - c) at time t."""

    a: float
    c: float
    t: float = 0.0


def free_branch_point(p, t=None):
    """z*(t) = a t - t^2/4 + c, the branch point of the time-t transform."""
    t = p.t if t is None else t
    return p.a * t - t * t / 4.0 + p.c


def free_counterexample_H(p, z):
    """H_t(z) = z - a t + t^2/2 + t sqrt(z - z*(t)), upper-branch root."""
    z = np.asarray(z, dtype=complex)
    t = p.t
    out = z - p.a * t + t * t / 2.0 + t * upper_power(z - free_branch_point(p), 0.5)
    return out if np.ndim(z) else complex(out)


def _free_measure(p, t, xs):
    q = FreeCounterexampleParams(p.a, p.c, t)
    return stieltjes_invert(
        TransformEvaluator(lambda z: free_counterexample_H(q, z), f"free(t={t})"), xs
    )


def _negative_support_verdict(gm):
    """Is the measure supported in (-inf, 0]? (mass above 1e-6 below 1e-3)"""
    xs, dens = gm.xs, gm.density
    sel = xs > 1e-6
    mass_pos = float(np.trapezoid(dens[sel], xs[sel])) if np.count_nonzero(sel) >= 2 else 0.0
    if gm.atoms.n_atoms:
        mass_pos += float(gm.atoms.weights[gm.atoms.positions > 1e-6].sum())
    return mass_pos < 1e-3


def _default_free_grid(p, ts):
    hi = max(4.0, max(free_branch_point(p, t) for t in ts) + 4.0)
    return np.linspace(-40.0, hi, 1200)


def free_positivity_timeline(p, ts, xs=None):
    """For each t: is mu_t supported in (-inf, 0]?

    In the counterexample regime (a >= 0, a^2 > c) the verdicts read False
    for small t > 0 and True for large t: free positivity is time-dependent.
    """
    ts = [float(t) for t in ts]
    if xs is None:
        xs = _default_free_grid(p, ts)
    out = []
    for t in ts:
        if t == 0.0:
            out.append(True)  # mu_0 = delta_0
            continue
        out.append(_negative_support_verdict(_free_measure(p, t, xs)))
    return out


def free_transition_time(p, t_lo, t_hi, xs=None, tol=1e-2):
    """Bisect the single False -> True transition of the positivity verdict."""
    if xs is None:
        xs = _default_free_grid(p, (t_lo, t_hi))
    lo, hi = float(t_lo), float(t_hi)
    if _negative_support_verdict(_free_measure(p, lo, xs)):
        raise ValueError("expected a negative verdict at t_lo")
    if not _negative_support_verdict(_free_measure(p, hi, xs)):
        raise ValueError("expected a positive verdict at t_hi")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _negative_support_verdict(_free_measure(p, mid, xs)):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


__all__ = [
    "KTransform",
    "k_transform",
    "boolean_convolve",
    "boolean_subordinator_check",
    "boolean_symmetry_check",
    "FreeCounterexampleParams",
    "free_branch_point",
    "free_counterexample_H",
    "free_positivity_timeline",
    "free_transition_time",
]
