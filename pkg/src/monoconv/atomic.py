"""Exact monotone convolution with an atomic left factor.

For a point mass delta_b, the convolution delta_b |> nu of an m-atom
probability measure nu has exactly m atoms: the new positions are the real
roots of

    f(z) = prod_k (z - a_k) - b * sum_j lam_j prod_{k != j} (z - a_k),

equivalently the solutions of G_nu(z) = 1/b.  G_nu decreases from +inf to
-inf across every gap between adjacent atoms, so each gap brackets exactly
one root and one exterior root sits beyond the atoms on the side given by
the sign of b.  Affinity in the left component then gives the general
atomic x atomic convolution.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import AtomCollision, MonoconvError
from .measures import ATOM_MERGE_TOL, AtomicMeasure, require_probability

RIGHT_SHIFT = "right_shift"
LEFT_SHIFT = "left_shift"


@dataclass(frozen=True)
class InterlacingReport:
    a_positions: tuple
    b_positions: tuple
    pattern: str
    valid: bool
    first_violation: int | None = None


def _G(a, lam, z):
    return float(np.sum(lam / (z - a)))


def _G_deriv(a, lam, z):
    return float(-np.sum(lam / (z - a) ** 2))


def _root_in_gap(a, lam, lo, hi, level):
    """The unique solution of G(z) = level inside the open gap (lo, hi).

    Solved on the pole-free transform (z-lo)*(hi-z)*(G(z)-level), whose
    endpoint values are finite with opposite signs.
    """

    def phi(z):
        # endpoint limits: the pole factor cancels the matching kernel term
        if z == lo:
            j = int(np.argmin(np.abs(a - lo)))
            return (hi - lo) * lam[j]
        if z == hi:
            j = int(np.argmin(np.abs(a - hi)))
            return -(hi - lo) * lam[j]
        return (z - lo) * (hi - z) * (_G(a, lam, z) - level)

    root = brentq(phi, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    # Newton polish on G itself
    for _ in range(2):
        g = _G(a, lam, root) - level
        gp = _G_deriv(a, lam, root)
        if gp == 0.0:
            break
        step = g / gp
        cand = root - step
        if lo < cand < hi:
            root = cand
    return root


def _exterior_root(a, lam, b):
    """Root of G(z) = 1/b outside the atom range (right for b>0, left for b<0)."""
    level = 1.0 / b
    width = abs(b) * max(1.0, float(lam.sum())) + 1.0
    if b > 0:
        edge = float(a[-1])
        far = edge + width
        while _G(a, lam, far) > level:
            far = edge + 2.0 * (far - edge)

        def psi(z):
            if z == edge:
                return lam[-1]
            return (z - edge) * (_G(a, lam, z) - level)

        root = brentq(psi, edge, far, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    else:
        edge = float(a[0])
        far = edge - width
        while _G(a, lam, far) < level:
            far = edge - 2.0 * (edge - far)

        def psi(z):
            if z == edge:
                return -lam[0]
            return (edge - z) * (_G(a, lam, z) - level)

        root = brentq(psi, far, edge, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    for _ in range(2):
        g = _G(a, lam, root) - level
        gp = _G_deriv(a, lam, root)
        if gp != 0.0 and root not in a:
            root -= g / gp
    return root


def _weights_from_formula(b, a, roots):
    """mu_i = prod_k (b_i - a_k) / (b * prod_{k != i} (b_i - b_k)).

    Plain products up to m = 20 atoms; log-magnitude with sign tracking
    beyond that to dodge overflow.
    """
    m = a.size
    out = np.empty(m)
    if m <= 20:
        for i, r in enumerate(roots):
            num = np.prod(r - a)
            den = b * np.prod(r - roots[np.arange(m) != i])
            out[i] = num / den
        return out
    for i, r in enumerate(roots):
        dn = r - a
        dd = r - roots[np.arange(m) != i]
        sign = np.prod(np.sign(dn)) * np.prod(np.sign(dd)) * np.sign(b)
        logmag = np.sum(np.log(np.abs(dn))) - np.sum(np.log(np.abs(dd))) - np.log(abs(b))
        out[i] = sign * np.exp(logmag)
    return out


def point_convolve(b, nu):
    """delta_b |> nu for an atomic probability measure nu (exact).

    Returns the m-atom result; the new atoms interlace the old ones with the
    direction set by the sign of b, weights are positive and sum to 1.
    """
    require_probability(nu, "point_convolve")
    b = float(b)
    if b == 0.0:
        return nu
    a = nu.positions
    lam = nu.weights
    m = a.size
    if m == 1:
        return AtomicMeasure(np.array([a[0] + b]), np.array([1.0]))

    level = 1.0 / b
    roots = [_root_in_gap(a, lam, a[k], a[k + 1], level) for k in range(m - 1)]
    roots.append(_exterior_root(a, lam, b))
    roots = np.sort(np.array(roots))

    weights = _weights_from_formula(b, a, roots)
    if np.any(weights <= 0):
        raise MonoconvError("weight positivity lost in point_convolve (numerical breakdown)")
    total = weights.sum()
    if abs(total - 1.0) > 1e-8:
        raise MonoconvError(f"point_convolve weights sum to {total}, expected 1")
    return AtomicMeasure(roots, weights)


def monotone_convolve_atomic(mu, nu):
    """mu |> nu for atomic probability measures (exactly m*n atoms).

    Monotone convolution is affine in its left component, so the result is
    the theta-mixture of the point convolutions delta_{x_i} |> nu.
    """
    require_probability(mu, "monotone_convolve_atomic")
    require_probability(nu, "monotone_convolve_atomic")
    pairs = []
    for x, theta in zip(mu.positions, mu.weights):
        part = point_convolve(float(x), nu)
        pairs.extend((p, theta * w) for p, w in zip(part.positions, part.weights))
    out = AtomicMeasure.from_pairs(pairs)
    expected = mu.n_atoms * nu.n_atoms
    if out.n_atoms != expected:
        raise AtomCollision(
            f"merged to {out.n_atoms} atoms where theory guarantees {expected}"
        )
    return out


def interlacing_check(nu_positions, result_positions, b):
    """Verify the interlacing pattern of delta_b |> nu against the sign of b."""
    a = [float(x) for x in nu_positions]
    bb = [float(x) for x in result_positions]
    if b == 0:
        raise ValueError("interlacing pattern undefined for b = 0")
    pattern = RIGHT_SHIFT if b > 0 else LEFT_SHIFT
    valid = True
    violation = None
    if len(a) != len(bb):
        return InterlacingReport(tuple(a), tuple(bb), pattern, False, 0)
    m = len(a)
    # merged alternating sequence: a1 b1 a2 b2 ... (b>0) / b1 a1 b2 a2 ... (b<0)
    if b > 0:
        seq = [v for pair in zip(a, bb) for v in pair]
    else:
        seq = [v for pair in zip(bb, a) for v in pair]
    for k in range(len(seq) - 1):
        if not seq[k] < seq[k + 1]:
            valid = False
            violation = k // 2
            break
    return InterlacingReport(tuple(a), tuple(bb), pattern, valid, violation)


def atomic_H_partial_fractions(nu):
    """H_nu(z) = alpha + z + sum_k beta_k / (b_k - z) for atomic nu.

    The m-1 poles b_k are the zeros of G_nu (one per gap between adjacent
    atoms); beta_k = -1/G_nu'(b_k) > 0; alpha = -mean(nu).
    """
    require_probability(nu, "atomic_H_partial_fractions")
    a = nu.positions
    lam = nu.weights
    alpha = -float(np.dot(a, lam))
    m = a.size
    if m == 1:
        return alpha, []
    poles = []
    for k in range(m - 1):
        b_k = _root_in_gap(a, lam, a[k], a[k + 1], 0.0)
        beta = 1.0 / float(np.sum(lam / (b_k - a) ** 2))
        poles.append((b_k, beta))
    return alpha, poles


__all__ = [
    "InterlacingReport",
    "RIGHT_SHIFT",
    "LEFT_SHIFT",
    "point_convolve",
    "monotone_convolve_atomic",
    "interlacing_check",
    "atomic_H_partial_fractions",
]
