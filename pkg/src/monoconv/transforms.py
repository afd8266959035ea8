"""Cauchy transforms, their reciprocals, and boundary-value inversion.

The reciprocal Cauchy transform H = 1/G is the workhorse: it is a self-map
of the upper half-plane with Im H(z) >= Im z, composition of H's realises
monotone convolution, and boundary values of G = 1/H recover densities and
atoms (Perron-Stieltjes inversion).

Evaluator convention: an ``h`` argument is anything callable on complex
scalars and 1-d complex arrays (a :class:`TransformEvaluator`, a bare
function, or a Measure, which is wrapped on the fly).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import atomic as _atomic
from . import moments as _moments
from ._branch import upper_power
from .errors import DivergentMoment, GridTooCoarse, InfiniteVariance, PoleAt, ZeroG, ZeroVariance
from .measures import (
    ATOM_MERGE_TOL,
    Arcsine,
    AtomicMeasure,
    DeformedArcsine,
    Dirac,
    GridMeasure,
    MonotonePoisson,
    StableLaw,
    is_analytic_family,
    support_bounds,
    total_mass,
)

# Extrapolated iy*G below this is reported as "no atom".
ATOM_WEIGHT_THRESHOLD = 1e-5

# Geometric schedule 1e-2 -> 1e-7, ratio 1/sqrt(10).
DEFAULT_EPS_SCHEDULE = np.geomspace(1e-2, 1e-7, 11)


@dataclass(frozen=True)
class TransformEvaluator:
    """z -> H(z) on the closed upper half-plane, tagged with provenance."""

    fn: object
    provenance: str = "custom"

    def __call__(self, z):
        return self.fn(z)


@dataclass(frozen=True)
class NevanlinnaRep:
    """H(z) = z + b + integral (1+xz)/(x-z) d eta(x)."""

    b: float
    eta: object  # Measure (finite positive, not necessarily probability)


@dataclass(frozen=True)
class FiniteVarianceRep:
    """H(z) = a + z + integral d rho(x)/(x-z); rho(R) = variance, a = -mean."""

    a: float
    rho: object


# ---------------------------------------------------------------------------
# Forward transforms
# ---------------------------------------------------------------------------


def _atomic_G(m, z):
    z = np.asarray(z, dtype=complex)
    pos = m.positions
    if pos.size:
        dist = np.abs(z[..., None] - pos)
        if np.any(dist < 1e-15 * (1.0 + np.abs(pos))):
            bad = np.argwhere(dist < 1e-15 * (1.0 + np.abs(pos)))
            raise PoleAt(float(pos[bad[0][-1]]))
        return np.sum(m.weights / (z[..., None] - pos), axis=-1)
    return np.zeros_like(z)


def _grid_G(m, z):
    z = np.asarray(z, dtype=complex)
    flat = z.reshape(-1)
    out = np.empty(flat.shape, dtype=complex)
    # chunked so the (n_z, n_x) broadcast stays cache-friendly
    step = max(1, int(2e6 / max(m.xs.size, 1)))
    for i in range(0, flat.size, step):
        blk = flat[i : i + step]
        integrand = m.density / (blk[:, None] - m.xs)
        out[i : i + step] = np.trapezoid(integrand, m.xs, axis=1)
    out = out.reshape(z.shape)
    if m.atoms.n_atoms:
        out = out + _atomic_G(m.atoms, z)
    return out


def family_H(m, z):
    """Closed-form (or flow-backed) reciprocal Cauchy transform of a family."""
    z = np.asarray(z, dtype=complex)
    if isinstance(m, Dirac):
        return z - m.a
    if isinstance(m, Arcsine):
        return upper_power(z * z - 2.0 * m.t, 0.5)
    if isinstance(m, DeformedArcsine):
        w = z - m.c
        return m.c + upper_power(w * w - 2.0 * m.t, 0.5)
    if isinstance(m, StableLaw):
        from .stable import stable_H

        return stable_H(m, z)
    if isinstance(m, MonotonePoisson):
        from .semigroup import VectorField, flow, monotone_poisson_field

        return flow(monotone_poisson_field(m.lam), z, m.t)
    raise TypeError(f"not an analytic family: {m!r}")


def cauchy_G(m, z):
    """Cauchy (Stieltjes) transform G(z) = integral d mu(x)/(z - x).

    Vectorised over z.  Im z > 0 gives Im G < 0; real z is allowed off the
    support.  Raises :class:`PoleAt` when z coincides with an atom.
    """
    if isinstance(m, AtomicMeasure):
        return _atomic_G(m, z)
    if isinstance(m, GridMeasure):
        return _grid_G(m, z)
    if is_analytic_family(m):
        h = family_H(m, z)
        return _safe_reciprocal(h)
    raise TypeError(f"not a measure: {m!r}")


def _safe_reciprocal(v):
    v_arr = np.asarray(v, dtype=complex)
    if np.any(np.abs(v_arr) < 1e-300):
        raise ZeroG("transform vanished; reciprocal undefined")
    out = 1.0 / v_arr
    return out if np.ndim(v) else complex(out)


def reciprocal_H(m, z):
    """H(z) = 1/G(z); satisfies Im H(z) >= Im z on the upper half-plane."""
    if is_analytic_family(m):
        return family_H(m, z)
    return _safe_reciprocal(cauchy_G(m, z))


def as_evaluator(obj, provenance=None):
    """Coerce a Measure / callable / TransformEvaluator into an H-evaluator."""
    if isinstance(obj, TransformEvaluator):
        return obj
    if isinstance(obj, (AtomicMeasure, GridMeasure)) or is_analytic_family(obj):
        m = obj
        return TransformEvaluator(lambda z: reciprocal_H(m, z), provenance or f"measure:{type(m).__name__}")
    if callable(obj):
        return TransformEvaluator(obj, provenance or "callable")
    raise TypeError(f"cannot interpret {obj!r} as a transform evaluator")


def nevanlinna_H(rep, z):
    """Evaluate the Nevanlinna form z + b + integral (1+xz)/(x-z) d eta."""
    z = np.asarray(z, dtype=complex)
    eta = rep.eta
    out = z + rep.b
    if isinstance(eta, AtomicMeasure):
        if eta.n_atoms:
            x = eta.positions
            out = out + np.sum(eta.weights * (1.0 + x * z[..., None]) / (x - z[..., None]), axis=-1)
        return out
    if isinstance(eta, GridMeasure):
        x = eta.xs
        flat = z.reshape(-1)
        add = np.empty(flat.shape, dtype=complex)
        for i in range(0, flat.size, 4096):
            blk = flat[i : i + 4096]
            integrand = eta.density * (1.0 + x * blk[:, None]) / (x - blk[:, None])
            add[i : i + 4096] = np.trapezoid(integrand, x, axis=1)
        out = out + add.reshape(z.shape)
        if eta.atoms.n_atoms:
            out = out + nevanlinna_H(NevanlinnaRep(0.0, eta.atoms), z) - z
        return out
    raise TypeError("eta must be atomic or grid")


def fv_rep_H(rep, z):
    """Evaluate H(z) = a + z + integral d rho/(x - z)."""
    z = np.asarray(z, dtype=complex)
    rho = rep.rho
    out = z + rep.a
    if isinstance(rho, AtomicMeasure):
        if rho.n_atoms:
            out = out + np.sum(rho.weights / (rho.positions - z[..., None]), axis=-1)
        return out
    if isinstance(rho, GridMeasure):
        return out - _grid_G(rho, z)
    raise TypeError("rho must be atomic or grid")


def nevanlinna_rep_atomic(nu):
    """Exact Eq.-style pair (b, eta) of an atomic probability measure."""
    alpha, poles = _atomic.atomic_H_partial_fractions(nu)
    if not poles:
        return NevanlinnaRep(alpha, AtomicMeasure.empty())
    b_k = np.array([p for p, _ in poles])
    beta = np.array([v for _, v in poles])
    eta_w = beta / (1.0 + b_k * b_k)
    b = alpha + float(np.sum(eta_w * b_k))
    order = np.argsort(b_k)
    return NevanlinnaRep(b, AtomicMeasure(b_k[order], eta_w[order]))


# ---------------------------------------------------------------------------
# Stieltjes inversion
# ---------------------------------------------------------------------------


def _richardson_columns(vals, eps):
    """Two-point Richardson in eps (error linear in eps) with a stability pick.

    vals has shape (K, n); returns (extrapolated value, stability residual)
    per column.
    """
    eps = np.asarray(eps, dtype=float)
    e = (eps[:-1, None] * vals[1:] - eps[1:, None] * vals[:-1]) / (eps[:-1] - eps[1:])[:, None]
    if e.shape[0] == 1:
        return e[0], np.zeros(e.shape[1])
    d = np.abs(np.diff(e, axis=0))
    k = np.argmin(d, axis=0)
    cols = np.arange(e.shape[1])
    return e[k + 1, cols], d[k, cols]


def _eval_mesh(h, xs, eps):
    Z = (np.asarray(xs, dtype=float)[None, :] + 1j * np.asarray(eps, dtype=float)[:, None])
    flat = h(Z.reshape(-1))
    return np.asarray(flat, dtype=complex).reshape(Z.shape)


def _bisect_real_zero(g, lo, hi, iters=52):
    """Vectorised bisection for one sign change of g per [lo_i, hi_i]."""
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    glo = g(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        left = glo * gm > 0
        lo = np.where(left, mid, lo)
        glo = np.where(left, gm, glo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def atom_weight_at(h, a, y_schedule=None):
    """Extrapolated value of iy*G(a+iy) as y -> 0 (G = 1/h); 0 below threshold."""
    h = as_evaluator(h)
    ys = DEFAULT_EPS_SCHEDULE if y_schedule is None else np.asarray(y_schedule, dtype=float)
    z = a + 1j * ys
    vals = np.asarray(h(z), dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        iyg = (1j * ys) / vals
    w, _ = _richardson_columns(iyg.real[:, None], ys)
    w = float(w[0])
    if not math.isfinite(w) or w < ATOM_WEIGHT_THRESHOLD:
        return 0.0
    return w


def _detect_atoms(h, xs, eps, atom_hints):
    y_probe = float(eps[-1])
    re = np.asarray(h(xs + 1j * y_probe), dtype=complex).real
    neg = re < 0.0
    flips = np.nonzero(neg[:-1] != neg[1:])[0]
    cands = []
    if flips.size:
        g = lambda x: np.asarray(h(x + 1j * y_probe), dtype=complex).real
        roots = _bisect_real_zero(g, xs[flips], xs[flips + 1])
        cands.extend(roots.tolist())
    for hint in atom_hints:
        cands.append(float(hint))
    pairs = []
    for a in sorted(cands):
        if pairs and abs(a - pairs[-1][0]) <= ATOM_MERGE_TOL * (1.0 + abs(a)):
            continue
        w = atom_weight_at(h, a, eps)
        if w > 0.0:
            pairs.append((a, w))
    if not pairs:
        return AtomicMeasure.empty()
    return AtomicMeasure.from_pairs(pairs)


def stieltjes_invert(h, xs, eps_schedule=None, atom_hints=(), meta=None):
    """Recover a grid measure from boundary values of G = 1/h.

    density(x) = -(1/pi) lim Im G(x + i eps), estimated by two-point
    Richardson extrapolation over the eps schedule; atoms are detected at
    sign changes of Re H on the real line (plus any hints) and weighed via
    :func:`atom_weight_at`.  Raises :class:`GridTooCoarse` when the
    extrapolation fails to stabilise on more than 1% of the grid.
    """
    h = as_evaluator(h)
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or xs.size < 2 or np.any(np.diff(xs) <= 0):
        raise ValueError("xs must be a strictly increasing 1-d grid")
    eps = DEFAULT_EPS_SCHEDULE if eps_schedule is None else np.asarray(eps_schedule, dtype=float)
    if np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise ValueError("eps_schedule must be positive and decreasing")

    H = _eval_mesh(h, xs, eps)
    with np.errstate(divide="ignore", invalid="ignore"):
        G = 1.0 / H
    vals = -G.imag / math.pi
    dens, resid = _richardson_columns(vals, eps)

    bad = ~np.isfinite(dens) | (resid > 0.05 * (1.0 + np.abs(dens)))
    if np.count_nonzero(bad) > 0.01 * xs.size:
        raise GridTooCoarse(
            f"extrapolation diverged at {np.count_nonzero(bad)}/{xs.size} grid points"
        )
    # isolated unstable points sit on atoms (the boundary limit genuinely
    # diverges there); their mass is carried by the detected atom instead
    dens = np.where(np.isfinite(dens) & ~bad, np.maximum(dens, 0.0), 0.0)

    atoms = _detect_atoms(h, xs, eps, atom_hints)
    return GridMeasure(xs, dens, atoms, meta=meta or h.provenance)


def boundary_divergence_scan(h, xs, eps_schedule=None):
    """Estimated growth exponents p with |G(x+i eps)| ~ eps**(-p).

    Diagnostic only (no hard threshold is claimed): p near 1 flags an atom,
    p near 0 a bounded density; slow growth hints at a boundary divergence
    of |G| without an atom.
    """
    h = as_evaluator(h)
    eps = DEFAULT_EPS_SCHEDULE if eps_schedule is None else np.asarray(eps_schedule, dtype=float)
    H = _eval_mesh(h, np.asarray(xs, dtype=float), eps)
    with np.errstate(divide="ignore", invalid="ignore"):
        logG = np.log(np.abs(1.0 / H))
    k = max(1, len(eps) // 3)
    slope = (logG[-1] - logG[-1 - k]) / (math.log(eps[-1]) - math.log(eps[-1 - k]))
    return -slope


def sample_to_grid(m, xs):
    """Sample any measure onto a grid (closed-form density where available)."""
    xs = np.asarray(xs, dtype=float)
    if isinstance(m, GridMeasure):
        dens = np.interp(xs, m.xs, m.density, left=0.0, right=0.0)
        return GridMeasure(xs, dens, m.atoms, tails=m.tails, meta=m.meta)
    if isinstance(m, AtomicMeasure):
        return GridMeasure(xs, np.zeros_like(xs), m)
    if isinstance(m, Dirac):
        return GridMeasure(xs, np.zeros_like(xs), AtomicMeasure.dirac(m.a))
    if isinstance(m, Arcsine):
        r2 = 2.0 * m.t - xs * xs
        dens = np.where(r2 > 0, 1.0 / (math.pi * np.sqrt(np.maximum(r2, 1e-300))), 0.0)
        return GridMeasure(xs, dens, AtomicMeasure.empty(), meta="closed-form")
    if isinstance(m, DeformedArcsine):
        u = xs - m.c
        r2 = 2.0 * m.t - u * u
        dens = np.where(
            r2 > 0,
            np.sqrt(np.maximum(r2, 0.0)) / (math.pi * (m.c * m.c + 2.0 * m.t - u * u)),
            0.0,
        )
        atoms = AtomicMeasure.empty()
        if m.c != 0.0:
            s = math.sqrt(m.c * m.c + 2.0 * m.t)
            pos = m.c - s if m.c > 0 else m.c + s
            atoms = AtomicMeasure.dirac(pos, abs(m.c) / s)
        return GridMeasure(xs, dens, atoms, meta="closed-form")
    if isinstance(m, StableLaw):
        from .stable import stable_density

        return stable_density(m, xs)
    if isinstance(m, MonotonePoisson):
        from .semigroup import flow, monotone_poisson_field

        V = monotone_poisson_field(m.lam)
        return stieltjes_invert(lambda z: flow(V, z, m.t), xs, atom_hints=(0.0,))
    raise TypeError(f"not a measure: {m!r}")


# ---------------------------------------------------------------------------
# Finite-variance representation
# ---------------------------------------------------------------------------


def finite_variance_rep(m, xs=None):
    """Pair (a, rho) with H(z) = a + z + integral d rho/(x-z).

    a = -mean, rho(R) = variance.  Exact (partial fractions) for atomic
    input; otherwise rho is recovered by Stieltjes inversion of z + a - H(z)
    on ``xs`` (auto-chosen from the support when omitted).
    """
    try:
        ms = _moments.moments_of(m, 2)
    except DivergentMoment as exc:
        raise InfiniteVariance(str(exc)) from exc
    mean = ms.values[1]
    var = ms.values[2] - mean * mean
    if isinstance(m, Dirac):
        return FiniteVarianceRep(-m.a, AtomicMeasure.empty())
    if isinstance(m, AtomicMeasure):
        if m.n_atoms == 1:
            return FiniteVarianceRep(-mean, AtomicMeasure.empty())
        alpha, poles = _atomic.atomic_H_partial_fractions(m)
        pos = np.array([p for p, _ in poles])
        wts = np.array([w for _, w in poles])
        order = np.argsort(pos)
        return FiniteVarianceRep(alpha, AtomicMeasure(pos[order], wts[order]))
    a = -mean
    if xs is None:
        lo, hi = support_bounds(m)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InfiniteVariance("cannot auto-grid rho for unbounded support")
        pad = 0.25 * (hi - lo) + 1.0
        xs = np.linspace(lo - pad, hi + pad, 2001)
    h = as_evaluator(m)
    rho_h = TransformEvaluator(lambda z: 1.0 / (np.asarray(z, dtype=complex) + a - h(z)), "rho")
    rho = stieltjes_invert(rho_h, xs)
    return FiniteVarianceRep(a, rho)


# ---------------------------------------------------------------------------
# Injectivity probes
# ---------------------------------------------------------------------------


def default_collision_seeds():
    """Deterministic seed pairs for the collision search.

    Starts with the canonical (i/2, 2i) pair, then pure-imaginary pairs from
    a log grid (collisions of finite-variance H's concentrate there), then a
    few off-axis pairs.
    """
    seeds = [(0.5j, 2.0j)]
    ims = np.geomspace(0.05, 20.0, 10)
    for i, s in enumerate(ims):
        for j, t in enumerate(ims):
            if i != j:
                seeds.append((1j * s, 1j * t))
    for r in (-10.0, -3.0, -1.0, -0.3, 0.3, 1.0, 3.0, 10.0):
        seeds.append((r + 1.0j, -r + 2.0j))
    return seeds


def _cdiff(h, z, d):
    return (h(z + d) - h(z - d)) / (2.0 * d)


def collision_search(h, seeds=None):
    """Hunt for z1 != z2 in the upper half-plane with h(z1) == h(z2).

    Damped complex Newton on h(z) - h(z1) = 0 from each seed pair; returns
    the first pair with |h(z1)-h(z2)| < 1e-10 and |z1-z2| > 1e-6, or None.
    """
    h = as_evaluator(h)
    if seeds is None:
        seeds = default_collision_seeds()
    for z1, z0 in seeds:
        z1 = complex(z1)
        z = complex(z0)
        if z1.imag <= 0 or z.imag <= 0:
            continue
        try:
            target = complex(h(z1))
        except (PoleAt, ZeroG):
            continue
        ok = True
        for _ in range(60):
            try:
                fz = complex(h(z)) - target
            except (PoleAt, ZeroG):
                ok = False
                break
            if abs(fz) < 1e-13 * (1.0 + abs(target)):
                break
            d = 1e-6 * (1.0 + abs(z))
            try:
                dz = _cdiff(h, z, d)
            except (PoleAt, ZeroG):
                ok = False
                break
            if dz == 0 or not np.isfinite(dz):
                ok = False
                break
            step = fz / dz
            new = z - step
            for _ in range(40):
                if new.imag > 0:
                    try:
                        if abs(complex(h(new)) - target) <= abs(fz):
                            break
                    except (PoleAt, ZeroG):
                        pass
                step *= 0.5
                new = z - step
            if abs(step) < 1e-12 * (1.0 + abs(z)):
                z = new
                break
            z = new
        if not ok or z.imag <= 1e-12:
            continue
        if abs(z - z1) > 1e-6 and abs(complex(h(z)) - target) < 1e-10:
            return (z1, z)
    return None


def divisibility_bound(rep, collision):
    """n_max = floor(rho(R) / (Im z1 * Im z2)).

    The measure is certified not n-divisible (under monotone convolution)
    for every n > n_max.  A return of 0 is a contradiction flag: the
    collision is incompatible with the representation's mass.
    """
    mass = total_mass(rep.rho) if not isinstance(rep.rho, AtomicMeasure) else rep.rho.mass
    if mass < 1e-300:
        raise ZeroVariance("divisibility bound needs positive variance")
    z1, z2 = collision
    prod = complex(z1).imag * complex(z2).imag
    if prod <= 0:
        raise ValueError("collision must lie in the upper half-plane")
    return int(math.floor(mass / prod + 1e-9))


# ---------------------------------------------------------------------------
# Positivity of the underlying measure from the Nevanlinna pair
# ---------------------------------------------------------------------------


def _eta_inverse_moment(eta):
    """integral (1/x) d eta over (0, inf); math.inf when divergent."""
    if isinstance(eta, AtomicMeasure):
        if eta.n_atoms == 0:
            return 0.0
        return float(np.sum(eta.weights / eta.positions))
    if isinstance(eta, GridMeasure):
        total = 0.0
        xs, dens = eta.xs, eta.density
        pos = xs > 0
        if np.any(dens[~pos] > 1e-300):
            return math.inf
        if np.count_nonzero(pos) >= 2:
            contrib = np.trapezoid(dens[pos] / xs[pos], xs[pos])
            if contrib > 1e6:
                return math.inf
            total += float(contrib)
        if eta.atoms.n_atoms:
            total += _eta_inverse_moment(eta.atoms)
        return total
    raise TypeError("eta must be atomic or grid")


def positivity_check(rep):
    """supp mu in [0, inf)?  Evaluates the Nevanlinna-side criterion:

    supp eta in [0, inf), eta({0}) = 0, integral (1/x) d eta finite, and
    b + integral (1/x) d eta <= 0.
    """
    eta = rep.eta
    lo, _ = support_bounds(eta)
    if lo < -1e-12 and lo != math.inf:
        return False
    if isinstance(eta, AtomicMeasure) and eta.n_atoms:
        if np.any(np.abs(eta.positions) < 1e-9):
            return False
    if isinstance(eta, GridMeasure):
        if eta.atoms.n_atoms and np.any(np.abs(eta.atoms.positions) < 1e-9):
            return False
    inv = _eta_inverse_moment(eta)
    if not math.isfinite(inv):
        return False
    return rep.b + inv <= 1e-12


__all__ = [
    "ATOM_WEIGHT_THRESHOLD",
    "DEFAULT_EPS_SCHEDULE",
    "TransformEvaluator",
    "NevanlinnaRep",
    "FiniteVarianceRep",
    "cauchy_G",
    "reciprocal_H",
    "family_H",
    "as_evaluator",
    "nevanlinna_H",
    "fv_rep_H",
    "nevanlinna_rep_atomic",
    "stieltjes_invert",
    "atom_weight_at",
    "boundary_divergence_scan",
    "sample_to_grid",
    "finite_variance_rep",
    "collision_search",
    "default_collision_seeds",
    "divisibility_bound",
    "positivity_check",
]
