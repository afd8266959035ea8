"""Measure representations on the real line and their basic arithmetic.

Three carriers share one interface: purely atomic measures, grid measures
(sampled density plus optional atoms), and closed-form analytic families.
Everything downstream (transforms, convolution, semigroup flows) speaks in
these types.

All types are immutable values; every operation here is pure.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from .errors import DivergentMoment

# Positions closer than ATOM_MERGE_TOL*(1+|x|) are considered the same atom.
ATOM_MERGE_TOL = 1e-9
# Grid density below this is treated as zero when locating support edges.
GRID_SUPPORT_THRESHOLD = 1e-12

PROB_ATOL_ATOMIC = 1e-9
PROB_ATOL_GRID = 2e-3


def _as_float_array(a, name):
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """A finite positive purely atomic measure, atoms sorted by position.

    The constructor insists on strictly increasing positions; use
    :meth:`from_pairs` to build from unsorted/near-duplicate data (it merges
    atoms closer than the package merge tolerance).
    """

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = _as_float_array(self.positions, "positions")
        wts = _as_float_array(self.weights, "weights")
        if pos.shape != wts.shape:
            raise ValueError("positions and weights must have equal length")
        if pos.size and np.any(np.diff(pos) <= 0):
            raise ValueError("positions must be strictly increasing")
        if np.any(wts <= 0):
            raise ValueError("weights must be positive")
        pos.setflags(write=False)
        wts.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", wts)

    @classmethod
    def from_pairs(cls, pairs):
        pairs = [(float(x), float(w)) for x, w in pairs]
        pairs.sort(key=lambda p: p[0])
        merged_x, merged_w = [], []
        for x, w in pairs:
            if w <= 0:
                raise ValueError("weights must be positive")
            if merged_x and (x - merged_x[-1]) <= ATOM_MERGE_TOL * (1.0 + abs(x)):
                total = merged_w[-1] + w
                merged_x[-1] = (merged_x[-1] * merged_w[-1] + x * w) / total
                merged_w[-1] = total
            else:
                merged_x.append(x)
                merged_w.append(w)
        return cls(np.array(merged_x), np.array(merged_w))

    @classmethod
    def dirac(cls, a, weight=1.0):
        return cls(np.array([float(a)]), np.array([float(weight)]))

    @classmethod
    def empty(cls):
        return cls(np.empty(0), np.empty(0))

    @property
    def atoms(self):
        return list(zip(self.positions.tolist(), self.weights.tolist()))

    @property
    def n_atoms(self):
        return self.positions.size

    @property
    def mass(self):
        return float(self.weights.sum())

    def mean(self):
        return float(np.dot(self.positions, self.weights))

    def variance(self):
        m1 = self.mean() / self.mass if self.mass else 0.0
        return float(np.dot((self.positions - m1) ** 2, self.weights))


@dataclass(frozen=True, eq=False)
class GridMeasure:
    """Density samples on a strictly increasing grid, plus optional atoms.

    ``tails`` optionally declares power-law behaviour beyond the grid as a
    pair of exponents ``(p_lo, p_hi)`` (density ~ |x|**-p); the declared tail
    carries no quadrature mass, it only informs divergence/boundedness checks.
    ``meta`` is a free-form provenance label (e.g. "closed-form" vs
    "inverted") and never serialised.
    """

    xs: np.ndarray
    density: np.ndarray
    atoms: AtomicMeasure = field(default_factory=AtomicMeasure.empty)
    tails: tuple | None = None
    meta: str | None = None

    def __post_init__(self):
        xs = _as_float_array(self.xs, "xs")
        dens = _as_float_array(self.density, "density")
        if xs.shape != dens.shape:
            raise ValueError("xs and density must have equal length")
        if xs.size < 2:
            raise ValueError("grid needs at least two points")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        if np.any(dens < -1e-12):
            raise ValueError("density must be nonnegative")
        dens = np.maximum(dens, 0.0)
        xs.setflags(write=False)
        dens.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "density", dens)
        if self.tails is not None:
            lo, hi = self.tails
            object.__setattr__(
                self,
                "tails",
                (None if lo is None else float(lo), None if hi is None else float(hi)),
            )

    @property
    def mass(self):
        return float(np.trapezoid(self.density, self.xs)) + self.atoms.mass


@dataclass(frozen=True)
class Arcsine:
    """Arcsine law at semigroup time t: density 1/(pi*sqrt(2t - x^2))."""

    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError("t must be positive")


@dataclass(frozen=True)
class DeformedArcsine:
    """Deformed arcsine law: a.c. part on (c - sqrt(2t), c + sqrt(2t)) plus,
    for c != 0, one atom of weight |c|/sqrt(c^2 + 2t)."""

    t: float
    c: float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError("t must be positive")


@dataclass(frozen=True)
class MonotonePoisson:
    """Monotone Poisson law with rate lam at semigroup time t."""

    lam: float
    t: float

    def __post_init__(self):
        if not (self.lam > 0 and self.t > 0):
            raise ValueError("lam and t must be positive")


def _stable_params_valid(alpha, b, c):
    """Validity conditions for the strictly stable family (arg in [0, 2*pi))."""
    if not (0.0 < alpha <= 2.0):
        return False
    b = complex(b)
    if b == 0:
        return False
    arg_b = math.atan2(b.imag, b.real)  # principal (-pi, pi]
    tol = 1e-12
    if alpha <= 1.0:
        ok_b = -tol <= arg_b <= alpha * math.pi + tol
    else:
        ok_b = (alpha - 1.0) * math.pi - tol <= arg_b <= math.pi + tol
    if not ok_b:
        return False
    if alpha == 1.0:
        return True  # the c condition is not needed at alpha = 1
    return complex(c).imag <= tol


@dataclass(frozen=True)
class StableLaw:
    """Strictly stable family member H_t(z) = c + ((z-c)^alpha + b*t)^(1/alpha)."""

    alpha: float
    b: complex
    c: complex
    t: float

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        if self.t < 0:
            raise ValueError("t must be nonnegative")
        if not _stable_params_valid(self.alpha, self.b, self.c):
            raise ValueError(
                f"invalid stable parameters alpha={self.alpha}, b={self.b}, c={self.c}"
            )


@dataclass(frozen=True)
class Dirac:
    a: float


ANALYTIC_FAMILIES = (Arcsine, DeformedArcsine, MonotonePoisson, StableLaw, Dirac)

# A Measure is any of: AtomicMeasure | GridMeasure | analytic family instance.
Measure = object


def is_analytic_family(m):
    return isinstance(m, ANALYTIC_FAMILIES)


def total_mass(m):
    """Total mass: atom weights plus trapezoid mass of any density."""
    if isinstance(m, AtomicMeasure):
        return m.mass
    if isinstance(m, GridMeasure):
        return m.mass
    if is_analytic_family(m):
        return 1.0
    raise TypeError(f"not a measure: {m!r}")


def is_probability(m, atol=None):
    if is_analytic_family(m):
        return True
    if atol is None:
        atol = PROB_ATOL_ATOMIC if isinstance(m, AtomicMeasure) else PROB_ATOL_GRID
    return abs(total_mass(m) - 1.0) <= atol


def require_probability(m, what="operation"):
    if not is_probability(m):
        raise ValueError(f"{what} requires a probability measure (mass={total_mass(m)})")


def _grid_support(gm):
    keep = gm.density > GRID_SUPPORT_THRESHOLD
    lo = math.inf
    hi = -math.inf
    if np.any(keep):
        lo = float(gm.xs[keep][0])
        hi = float(gm.xs[keep][-1])
    if gm.atoms.n_atoms:
        lo = min(lo, float(gm.atoms.positions[0]))
        hi = max(hi, float(gm.atoms.positions[-1]))
    if gm.tails is not None:
        if gm.tails[0] is not None:
            lo = -math.inf
        if gm.tails[1] is not None:
            hi = math.inf
    return lo, hi


def support_bounds(m):
    """(a(mu), b(mu)); -inf/+inf allowed; (inf, -inf) for the zero measure."""
    if isinstance(m, AtomicMeasure):
        if m.n_atoms == 0:
            return math.inf, -math.inf
        return float(m.positions[0]), float(m.positions[-1])
    if isinstance(m, GridMeasure):
        return _grid_support(m)
    if isinstance(m, Dirac):
        return m.a, m.a
    if isinstance(m, Arcsine):
        r = math.sqrt(2.0 * m.t)
        return -r, r
    if isinstance(m, DeformedArcsine):
        r = math.sqrt(2.0 * m.t)
        if m.c > 0:
            return m.c - math.sqrt(m.c * m.c + 2.0 * m.t), m.c + r
        if m.c < 0:
            return m.c - r, m.c + math.sqrt(m.c * m.c + 2.0 * m.t)
        return -r, r
    if isinstance(m, StableLaw):
        from .stable import stable_support_bounds

        return stable_support_bounds(m)
    if isinstance(m, MonotonePoisson):
        from .semigroup import monotone_poisson_support

        return monotone_poisson_support(m.lam, m.t)
    raise TypeError(f"not a measure: {m!r}")


def conv_support_bounds(nu, mu):
    """Outer bounds containing supp(nu |> mu).

    Case split on the position of supp(nu) relative to 0: the interval
    [a(mu) + min(a(nu), 0), b(mu) + max(b(nu), 0)] always contains the
    support of the monotone convolution.
    """
    require_probability(nu, "conv_support_bounds")
    require_probability(mu, "conv_support_bounds")
    a_nu, b_nu = support_bounds(nu)
    a_mu, b_mu = support_bounds(mu)
    return a_mu + min(a_nu, 0.0), b_mu + max(b_nu, 0.0)


def dilate(m, lam):
    """Pushforward under x -> lam*x (lam > 0)."""
    if not lam > 0:
        raise ValueError("dilation factor must be positive")
    lam = float(lam)
    if isinstance(m, AtomicMeasure):
        return AtomicMeasure(m.positions * lam, m.weights.copy())
    if isinstance(m, GridMeasure):
        return GridMeasure(
            m.xs * lam,
            m.density / lam,
            AtomicMeasure(m.atoms.positions * lam, m.atoms.weights.copy())
            if m.atoms.n_atoms
            else AtomicMeasure.empty(),
            tails=m.tails,
            meta=m.meta,
        )
    if isinstance(m, Dirac):
        return Dirac(lam * m.a)
    if isinstance(m, Arcsine):
        return Arcsine(lam * lam * m.t)
    if isinstance(m, DeformedArcsine):
        return DeformedArcsine(lam * lam * m.t, lam * m.c)
    if isinstance(m, StableLaw):
        # D_lam H_t(z) = lam*c + ((z - lam*c)^alpha + b*lam^alpha*t)^(1/alpha)
        return StableLaw(m.alpha, m.b, lam * m.c, lam**m.alpha * m.t)
    if isinstance(m, MonotonePoisson):
        from .transforms import sample_to_grid

        a, b = support_bounds(m)
        xs = np.linspace(min(a, 0.0) - 0.5, b + 0.5, 2001)
        return dilate(sample_to_grid(m, xs), lam)
    raise TypeError(f"not a measure: {m!r}")


def reflect(m):
    """Pushforward under x -> -x."""
    if isinstance(m, AtomicMeasure):
        return AtomicMeasure(-m.positions[::-1], m.weights[::-1].copy())
    if isinstance(m, GridMeasure):
        tails = None if m.tails is None else (m.tails[1], m.tails[0])
        return GridMeasure(
            -m.xs[::-1], m.density[::-1].copy(), reflect(m.atoms), tails=tails, meta=m.meta
        )
    if isinstance(m, Dirac):
        return Dirac(-m.a)
    if isinstance(m, Arcsine):
        return m
    raise TypeError(f"cannot reflect {type(m).__name__} in closed form")


def interval_mass(m, lo, hi):
    """mu([lo, hi]) for atomic and grid measures (linear interpolation at cuts)."""
    if lo > hi:
        return 0.0
    if isinstance(m, AtomicMeasure):
        sel = (m.positions >= lo) & (m.positions <= hi)
        return float(m.weights[sel].sum())
    if isinstance(m, GridMeasure):
        xs, dens = m.xs, m.density
        a = max(lo, xs[0])
        b = min(hi, xs[-1])
        total = 0.0
        if a < b:
            grid = xs[(xs > a) & (xs < b)]
            pts = np.concatenate(([a], grid, [b]))
            vals = np.interp(pts, xs, dens)
            total = float(np.trapezoid(vals, pts))
        return total + interval_mass(m.atoms, lo, hi)
    raise TypeError("interval_mass needs an atomic or grid measure")


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def _c2j(z):
    z = complex(z)
    return [z.real, z.imag]


def measure_to_json(m):
    """Measure -> plain dict matching the documented schema."""
    if isinstance(m, AtomicMeasure):
        return {"kind": "atomic", "atoms": [[x, w] for x, w in m.atoms]}
    if isinstance(m, GridMeasure):
        out = {
            "kind": "grid",
            "xs": m.xs.tolist(),
            "density": m.density.tolist(),
            "atoms": [[x, w] for x, w in m.atoms.atoms],
        }
        if m.tails is not None:
            out["tails"] = list(m.tails)
        return out
    if isinstance(m, Arcsine):
        return {"kind": "family", "name": "arcsine", "params": {"t": m.t}}
    if isinstance(m, DeformedArcsine):
        return {"kind": "family", "name": "deformed_arcsine", "params": {"t": m.t, "c": m.c}}
    if isinstance(m, MonotonePoisson):
        return {"kind": "family", "name": "monotone_poisson", "params": {"lambda": m.lam, "t": m.t}}
    if isinstance(m, StableLaw):
        return {
            "kind": "family",
            "name": "stable",
            "params": {"alpha": m.alpha, "b": _c2j(m.b), "c": _c2j(m.c), "t": m.t},
        }
    if isinstance(m, Dirac):
        return {"kind": "family", "name": "dirac", "params": {"a": m.a}}
    raise TypeError(f"not a measure: {m!r}")


def measure_from_json(obj):
    kind = obj.get("kind")
    if kind == "atomic":
        atoms = obj["atoms"]
        if not atoms:
            return AtomicMeasure.empty()
        pos, wts = zip(*atoms)
        return AtomicMeasure(np.array(pos, dtype=float), np.array(wts, dtype=float))
    if kind == "grid":
        atoms = obj.get("atoms", [])
        am = AtomicMeasure.empty()
        if atoms:
            pos, wts = zip(*atoms)
            am = AtomicMeasure(np.array(pos, dtype=float), np.array(wts, dtype=float))
        tails = obj.get("tails")
        return GridMeasure(
            np.array(obj["xs"], dtype=float),
            np.array(obj["density"], dtype=float),
            am,
            tails=None if tails is None else tuple(tails),
        )
    if kind == "family":
        name = obj["name"]
        p = obj["params"]
        if name == "arcsine":
            return Arcsine(float(p["t"]))
        if name == "deformed_arcsine":
            return DeformedArcsine(float(p["t"]), float(p["c"]))
        if name == "monotone_poisson":
            return MonotonePoisson(float(p["lambda"]), float(p["t"]))
        if name == "stable":
            return StableLaw(
                float(p["alpha"]),
                complex(p["b"][0], p["b"][1]),
                complex(p["c"][0], p["c"][1]),
                float(p["t"]),
            )
        if name == "dirac":
            return Dirac(float(p["a"]))
        raise ValueError(f"unknown family name {name!r}")
    raise ValueError(f"unknown measure kind {kind!r}")


def measures_equal(m1, m2, atol=0.0):
    """Structural equality (exact field comparison up to atol on arrays)."""
    if type(m1) is not type(m2):
        return False
    if isinstance(m1, AtomicMeasure):
        return (
            m1.n_atoms == m2.n_atoms
            and np.allclose(m1.positions, m2.positions, rtol=0, atol=atol)
            and np.allclose(m1.weights, m2.weights, rtol=0, atol=atol)
        )
    if isinstance(m1, GridMeasure):
        return (
            m1.xs.size == m2.xs.size
            and np.allclose(m1.xs, m2.xs, rtol=0, atol=atol)
            and np.allclose(m1.density, m2.density, rtol=0, atol=atol)
            and measures_equal(m1.atoms, m2.atoms, atol)
            and m1.tails == m2.tails
        )
    return m1 == m2


__all__ = [
    "ATOM_MERGE_TOL",
    "GRID_SUPPORT_THRESHOLD",
    "AtomicMeasure",
    "GridMeasure",
    "Arcsine",
    "DeformedArcsine",
    "MonotonePoisson",
    "StableLaw",
    "Dirac",
    "Measure",
    "is_analytic_family",
    "total_mass",
    "is_probability",
    "require_probability",
    "support_bounds",
    "conv_support_bounds",
    "dilate",
    "reflect",
    "interval_mass",
    "measure_to_json",
    "measure_from_json",
    "measures_equal",
]
