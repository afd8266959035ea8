"""Vector fields, semigroup flows, atom and support-edge tracking.

A monotone convolution semigroup is generated by a vector field

    A(z) = -gamma + integral (1+xz)/(x-z) d tau(x)

through dH_t/dt = A(H_t), H_0 = id.  This module integrates that flow in
the upper half-plane, classifies the sign pattern of A left of the Levy
measure's support, tracks the isolated atom position theta(t) (with weight
A(theta)/A(0), or exp(-A'(0) t) when A(0) = 0) and the support edge E(t),
both solving x' = -A(x), and exposes the time-t Markov transition kernels.

Fields are duck-typed: a :class:`VectorField` pair, any object with
``eval``/``eval_real``/``tau_bounds``, or a bare callable works everywhere a
field is expected.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ._ivp import integrate
from .errors import CaseMismatch, PoleAt, StepUnderflow, UnboundedBelowTau
from .measures import (
    AtomicMeasure,
    GridMeasure,
    measure_from_json,
    measure_to_json,
    reflect,
    support_bounds,
    total_mass,
)
from .moments import moments_of
from .transforms import DEFAULT_EPS_SCHEDULE, TransformEvaluator, stieltjes_invert

CASE_A = "A"
CASE_A_PRIME = "Aprime"
CASE_B = "B"
CASE_C = "C"
CASE_D = "D"
EDGE_A = "a"
EDGE_B = "b"
EDGE_C = "c"

_SIGN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class VectorField:
    """Levy pair (gamma, tau) of a monotone convolution semigroup."""

    gamma: float
    tau: object  # Measure, finite positive

    def __post_init__(self):
        object.__setattr__(self, "gamma", float(self.gamma))


@dataclass(frozen=True)
class CaseLabel:
    """Sign-pattern classification of A left of the support of tau.

    ``atom_case`` in {A, Aprime, B, C, D} when a(tau) > 0, else None;
    ``edge_case`` in {a, b, c}; ``u0`` is the zero of A when one exists.
    """

    atom_case: str | None
    edge_case: str
    u0: float | None = None
    low_confidence: bool = False


@dataclass(frozen=True)
class FlowResult:
    times: np.ndarray
    H_values: np.ndarray
    theta: np.ndarray | None = None
    weight: np.ndarray | None = None
    E: np.ndarray | None = None
    case: CaseLabel | None = None


@dataclass(frozen=True)
class AtomTrack:
    times: np.ndarray
    theta: np.ndarray
    weight: np.ndarray
    case: CaseLabel
    death_time: float | None = None


@dataclass(frozen=True)
class EdgeTrack:
    times: np.ndarray
    E: np.ndarray
    case: CaseLabel
    low_confidence: bool = False


class ReflectedField:
    """The field of the semigroup of reflections x -> -x.

    For closed-form fields: A~(z) = -conj(A(-conj(z))); the Levy measure
    support flips sign.
    """

    def __init__(self, inner):
        self.inner = inner

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        return -np.conj(_eval_field(self.inner, -np.conj(z)))

    def eval_real(self, u):
        return -_eval_field_real(self.inner, -u)

    def tau_bounds(self):
        lo, hi = _field_tau_bounds(self.inner)
        return -hi, -lo


def field_eval(V, z):
    """A(z) = -gamma + integral (1+xz)/(x-z) d tau, vectorised over z."""
    z = np.asarray(z, dtype=complex)
    tau = V.tau
    out = np.full(z.shape, -V.gamma, dtype=complex)
    if isinstance(tau, AtomicMeasure):
        if tau.n_atoms:
            x = tau.positions
            diff = x - z[..., None]
            if np.any(np.abs(diff) < 1e-300):
                raise PoleAt(float(x[0]), "field evaluated on supp tau")
            out = out + np.sum(tau.weights * (1.0 + x * z[..., None]) / diff, axis=-1)
    elif isinstance(tau, GridMeasure):
        x = tau.xs
        flat = z.reshape(-1)
        add = np.empty(flat.shape, dtype=complex)
        for i in range(0, flat.size, 4096):
            blk = flat[i : i + 4096]
            integrand = tau.density * (1.0 + x * blk[:, None]) / (x - blk[:, None])
            add[i : i + 4096] = np.trapezoid(integrand, x, axis=1)
        out = out + add.reshape(z.shape)
        if tau.atoms.n_atoms:
            out = out + field_eval(VectorField(0.0, tau.atoms), z)
    else:
        raise TypeError("tau must be an atomic or grid measure")
    return out if np.ndim(z) else complex(out)


def field_eval_real(V, u):
    """Boundary value of A on the real line, off the support of tau."""
    u = float(u)
    tau = V.tau
    val = -V.gamma
    if isinstance(tau, AtomicMeasure):
        if tau.n_atoms:
            x = tau.positions
            d = x - u
            if np.any(np.abs(d) < 1e-13 * (1.0 + np.abs(x))):
                raise PoleAt(u)
            val += float(np.sum(tau.weights * (1.0 + x * u) / d))
        return val
    if isinstance(tau, GridMeasure):
        lo, hi = support_bounds(tau)
        if lo <= u <= hi:
            raise PoleAt(u, "field evaluated inside supp tau")
        x = tau.xs
        val += float(np.trapezoid(tau.density * (1.0 + x * u) / (x - u), x))
        if tau.atoms.n_atoms:
            val += field_eval_real(VectorField(0.0, tau.atoms), u)
        return val
    raise TypeError("tau must be an atomic or grid measure")


def field_deriv_real(V, u, h=1e-6):
    """A'(u): analytic for atomic tau, central differences otherwise."""
    tau = V.tau
    if isinstance(tau, AtomicMeasure):
        if tau.n_atoms == 0:
            return 0.0
        x = tau.positions
        return float(np.sum(tau.weights * (1.0 + x * x) / (x - u) ** 2))
    return (_eval_field_real(V, u + h) - _eval_field_real(V, u - h)) / (2.0 * h)


def reflect_field(field):
    """Field of the reflected semigroup; exact pair for VectorField input."""
    if isinstance(field, VectorField):
        return VectorField(-field.gamma, reflect(field.tau))
    return ReflectedField(field)


def monotone_poisson_field(lam):
    """Levy pair of the monotone Poisson semigroup: A(z) = lam*z/(1-z)."""
    return VectorField(lam / 2.0, AtomicMeasure.dirac(1.0, lam / 2.0))


# -- duck-typed field access -------------------------------------------------


def _eval_field(field, z):
    if isinstance(field, VectorField):
        return field_eval(field, z)
    if hasattr(field, "eval"):
        return field.eval(z)
    return field(z)


def _eval_field_real(field, u):
    if isinstance(field, VectorField):
        return field_eval_real(field, u)
    if hasattr(field, "eval_real"):
        return field.eval_real(u)
    v = complex(field(complex(u)))
    if abs(v.imag) > 1e-9 * (1.0 + abs(v)):
        raise PoleAt(u, "field is not real on the line here")
    return v.real


def _field_tau_bounds(field):
    if isinstance(field, VectorField):
        if total_mass(field.tau) == 0.0:
            raise UnboundedBelowTau("tau is the zero measure")
        return support_bounds(field.tau)
    if hasattr(field, "tau_bounds"):
        return field.tau_bounds()
    raise UnboundedBelowTau("field does not expose Levy-measure support bounds")


def _deriv_at_zero(field):
    if isinstance(field, VectorField):
        return field_deriv_real(field, 0.0)
    h = 1e-6
    return (_eval_field_real(field, h) - _eval_field_real(field, -h)) / (2.0 * h)


# ---------------------------------------------------------------------------
# Flow in the upper half-plane
# ---------------------------------------------------------------------------


def flow(field, z0, t, rtol=1e-10, atol=1e-10):
    """H_t(z0): integrate dH/dt = A(H) from z0 over time t (t >= 0).

    Vectorised over z0 (shared adaptive steps, max-norm error control).
    Real scalar z0 is tracked on the real line.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if np.ndim(z0) == 0 and not np.iscomplexobj(z0):
        times, xs, _ = _track_line(field, float(z0), t, 1, rtol=rtol, atol=atol)
        return xs[-1]
    z0 = np.asarray(z0, dtype=complex)
    shape = z0.shape
    flat = z0.reshape(-1)

    def rhs(_t, y):
        return np.asarray(_eval_field(field, y))

    out = integrate(rhs, flat, 0.0, float(t), rtol=rtol, atol=atol)
    out = np.atleast_1d(out)
    return out.reshape(shape) if shape else complex(out[0])


def evolve(field, z0, T, steps, rtol=1e-10, atol=1e-10):
    """Flow trajectory of one starting point on a uniform time grid."""
    times = np.linspace(0.0, float(T), steps + 1)
    vals = [complex(z0)]
    for t0, t1 in zip(times[:-1], times[1:]):
        def rhs(_t, y):
            return np.asarray(_eval_field(field, y))

        vals.append(complex(np.atleast_1d(integrate(rhs, np.array([vals[-1]], dtype=complex), t0, t1, rtol=rtol, atol=atol))[0]))
    return FlowResult(times, np.array(vals))


# ---------------------------------------------------------------------------
# Classification of the sign pattern of A
# ---------------------------------------------------------------------------


def _limit_at_minus_infinity(field):
    if isinstance(field, VectorField):
        m = moments_of(field.tau, 1)
        return -(field.gamma + m[1])
    return _eval_field_real(field, -1e9)


def _left_limit_at(field, a_tau):
    val = None
    for d in np.geomspace(1e-3, 1e-9, 7):
        try:
            val = _eval_field_real(field, a_tau - d * (1.0 + abs(a_tau)))
        except PoleAt:
            break
    if val is None:
        raise CaseMismatch("could not evaluate the field left of a(tau)")
    return val


def _bisect_field_zero(field, lo, hi):
    return brentq(lambda u: _eval_field_real(field, u), lo, hi, xtol=1e-12, maxiter=300)


def classify_field(field):
    """Sign-pattern case of A on (-inf, a(tau)).

    Returns both the five-way atom classification (requires a(tau) > 0) and
    the three-way edge classification (requires a(tau) > -inf).
    """
    a_tau, _ = _field_tau_bounds(field)
    if not math.isfinite(a_tau):
        raise UnboundedBelowTau("a(tau) = -inf; no sign classification available")
    scale = 1.0 + abs(a_tau)

    lim_minus = _limit_at_minus_infinity(field)
    lim_plus = _left_limit_at(field, a_tau)

    # three-way edge classification (A is strictly increasing left of a(tau))
    low_conf = False
    u0 = None
    if lim_minus >= -_SIGN_TOL:
        edge = EDGE_A
    elif lim_plus <= _SIGN_TOL:
        edge = EDGE_C
        low_conf = abs(lim_plus) <= 1e-6
    else:
        edge = EDGE_B
        lo = a_tau - scale
        while _eval_field_real(field, lo) > 0:
            lo = a_tau - 2.0 * (a_tau - lo)
        u0 = _bisect_field_zero(field, lo, a_tau - 1e-12 * scale)

    atom_case = None
    if a_tau > _SIGN_TOL:
        A0 = _eval_field_real(field, 0.0)
        if abs(A0) <= _SIGN_TOL:
            atom_case = CASE_B
        elif A0 > 0:
            if lim_minus >= -_SIGN_TOL:
                atom_case = CASE_A
            else:
                atom_case = CASE_A_PRIME
                lo = -scale
                while _eval_field_real(field, lo) > 0:
                    lo *= 2.0
                u0 = _bisect_field_zero(field, lo, -1e-300)
        else:
            if lim_plus > _SIGN_TOL:
                atom_case = CASE_C
                u0 = _bisect_field_zero(field, 1e-300, a_tau - 1e-12 * scale)
            else:
                atom_case = CASE_D
    return CaseLabel(atom_case, edge, u0, low_conf)


# ---------------------------------------------------------------------------
# Real-line tracking (theta and E solve x' = -A(x))
# ---------------------------------------------------------------------------


def _track_line(field, x0, T, steps, barrier=None, rtol=1e-10, atol=1e-12):
    """Integrate x' = -A(x) from x0 on a uniform grid of `steps` segments.

    ``barrier`` (approached from below) stops the track: transversal hits
    surface as a step-size collapse next to the barrier, tangential arrivals
    as |barrier - x| shrinking into the arrival tolerance.  Returns
    (times, xs, arrival_time).
    """
    times = np.linspace(0.0, float(T), steps + 1)
    scale = 1.0 + (abs(barrier) if barrier is not None else abs(x0))
    arrive_tol = 1e-13 * scale

    def rhs(_t, y):
        return np.array([-_eval_field_real(field, float(y[0]))])

    guard = None
    if barrier is not None:
        guard = lambda y: bool(y[0] < barrier)

    xs = np.empty(steps + 1)
    xs[0] = x0
    arrival = None
    x = np.array([float(x0)])
    for i, (t0, t1) in enumerate(zip(times[:-1], times[1:]), start=1):
        if arrival is not None:
            xs[i] = barrier if barrier is not None else xs[i - 1]
            continue
        y, t_reached, status = integrate(
            rhs, x, t0, t1, rtol=rtol, atol=atol, stage_guard=guard, return_status=True
        )
        y = np.atleast_1d(y)
        if status != "done":
            if barrier is not None and barrier - y[0] < 1e-8 * scale:
                arrival = t_reached
                xs[i] = barrier
                continue
            raise StepUnderflow(f"real-line track stalled at t={t_reached}, x={y[0]}")
        if barrier is not None and barrier - y[0] < arrive_tol:
            arrival = _refine_arrival(field, x[0], t0, t1, barrier, rtol, atol)
            xs[i] = barrier
            x = y
            continue
        xs[i] = y[0]
        x = y
    return times, xs, arrival


def _refine_arrival(field, x_start, t0, t1, barrier, rtol, atol):
    """Bisect the first time in [t0, t1] where x(t) enters the arrival band."""
    scale = 1.0 + abs(barrier)
    arrive_tol = 1e-13 * scale

    def rhs(_t, y):
        return np.array([-_eval_field_real(field, float(y[0]))])

    guard = lambda y: bool(y[0] < barrier)
    lo, hi = t0, t1
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        y, t_reached, status = integrate(
            rhs, np.array([x_start]), t0, mid, rtol=rtol, atol=atol,
            stage_guard=guard, return_status=True,
        )
        hit = status != "done" or barrier - np.atleast_1d(y)[0] < arrive_tol
        if hit:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-9 * (1.0 + abs(t1)):
            break
    return 0.5 * (lo + hi)


def atom_track(field, T, steps):
    """Track the isolated atom: position theta(t) and weight lambda(t).

    theta solves theta' = -A(theta), theta(0) = 0; the weight is
    A(theta(t))/A(0) (or exp(-A'(0) t) in case B).  In case D the track
    stops when theta reaches a(tau) (the atom death time); past death the
    arrays hold theta = a(tau), weight = 0.
    """
    label = classify_field(field)
    if label.atom_case is None:
        raise CaseMismatch("atom tracking needs a(tau) > 0 (cases A..D)")
    a_tau, _ = _field_tau_bounds(field)
    times = np.linspace(0.0, float(T), steps + 1)

    if label.atom_case == CASE_B:
        rate = _deriv_at_zero(field)
        theta = np.zeros(steps + 1)
        weight = np.exp(-rate * times)
        return AtomTrack(times, theta, weight, label, None)

    barrier = a_tau if label.atom_case in (CASE_C, CASE_D) else None
    times, theta, arrival = _track_line(field, 0.0, T, steps, barrier=barrier)
    A0 = _eval_field_real(field, 0.0)
    weight = np.empty(steps + 1)
    for i, (t, x) in enumerate(zip(times, theta)):
        if arrival is not None and t >= arrival:
            weight[i] = 0.0
        else:
            try:
                weight[i] = _eval_field_real(field, x) / A0
            except PoleAt:
                weight[i] = 0.0
    weight = np.clip(weight, 0.0, None)
    return AtomTrack(times, theta, weight, label, arrival)


def support_edge(field, T, steps):
    """Track E(t), the edge of the non-atomic part: E' = -A(E), E(0) = a(tau).

    Cases a/b integrate the ODE; case c returns the constant a(tau), with a
    low-confidence flag when the left limit of A at a(tau) vanishes (the
    open sub-case).
    """
    label = classify_field(field)
    a_tau, _ = _field_tau_bounds(field)
    times = np.linspace(0.0, float(T), steps + 1)
    if label.edge_case == EDGE_C:
        return EdgeTrack(times, np.full(steps + 1, a_tau), label, label.low_confidence)
    # singular start: step just inside the domain (outside the pole guard
    # band); the induced time offset is O(delta) and below integration noise
    delta0 = 1e-12 * (1.0 + abs(a_tau))
    x0 = a_tau - delta0
    times, xs, _ = _track_line_with_upper_guard(field, x0, T, steps, upper=a_tau)
    xs[0] = a_tau
    return EdgeTrack(times, xs, label, label.low_confidence)


def _track_line_with_upper_guard(field, x0, T, steps, upper):
    """Like _track_line but only guards stage overshoot above `upper` (the
    track moves away from it)."""
    times = np.linspace(0.0, float(T), steps + 1)

    def rhs(_t, y):
        return np.array([-_eval_field_real(field, float(y[0]))])

    guard = lambda y: bool(y[0] < upper)
    xs = np.empty(steps + 1)
    xs[0] = x0
    x = np.array([float(x0)])
    for i, (t0, t1) in enumerate(zip(times[:-1], times[1:]), start=1):
        x = np.atleast_1d(
            integrate(rhs, x, t0, t1, rtol=1e-10, atol=1e-12, stage_guard=guard)
        )
        xs[i] = x[0]
    return times, xs, None


# ---------------------------------------------------------------------------
# Time-independent property checks
# ---------------------------------------------------------------------------


def _tau_inverse_moment(tau):
    """integral (1/x) d tau over (0, inf); inf when divergent.

    Grid input: trapezoid, with the leftmost positive panel integrated under
    a locally-constant density; a panel above 1e6 declares divergence.
    """
    if isinstance(tau, AtomicMeasure):
        if tau.n_atoms == 0:
            return 0.0
        return float(np.sum(tau.weights / tau.positions))
    if isinstance(tau, GridMeasure):
        xs, dens = tau.xs, tau.density
        pos = xs > 0
        total = 0.0
        if np.count_nonzero(pos) >= 2:
            xp, dp = xs[pos], dens[pos]
            panel = np.trapezoid(dp / xp, xp)
            if panel > 1e6:
                return math.inf
            total += float(panel)
            # leftmost panel down to x=0 under a frozen density
            if xs[~pos].size and dp.size and dp[0] > 1e-300:
                return math.inf  # density continuous at 0+ makes 1/x non-integrable
        if tau.atoms.n_atoms:
            total += _tau_inverse_moment(tau.atoms)
        return total
    raise TypeError("tau must be atomic or grid")


def subordinator_check(V):
    """Positivity of the whole semigroup from the pair:

    supp tau in [0, inf), tau({0}) = 0, integral (1/x) d tau < inf, and
    gamma >= integral (1/x) d tau.
    """
    tau = V.tau
    if total_mass(tau) == 0.0:
        return V.gamma >= -1e-12  # pure drift: delta_{gamma*t}, positive iff gamma >= 0
    lo, _ = support_bounds(tau)
    if lo < -1e-12:
        return False
    if isinstance(tau, AtomicMeasure) and np.any(np.abs(tau.positions) < 1e-9):
        return False
    if isinstance(tau, GridMeasure) and tau.atoms.n_atoms and np.any(
        np.abs(tau.atoms.positions) < 1e-9
    ):
        return False
    inv = _tau_inverse_moment(tau)
    if not math.isfinite(inv):
        return False
    return V.gamma >= inv - 1e-9


def bounded_below_check(V):
    """True iff a(tau) > -inf under the representation."""
    tau = V.tau
    if total_mass(tau) == 0.0:
        return True
    lo, _ = support_bounds(tau)
    return math.isfinite(lo)


def monotone_poisson_support(lam, t):
    """Support bounds of the monotone Poisson law (atom at 0 plus a.c. band)."""
    V = monotone_poisson_field(lam)
    upper = support_edge(reflect_field(V), t, max(8, int(20 * t)))
    return 0.0, -float(upper.E[-1])


# ---------------------------------------------------------------------------
# Markov transition kernels
# ---------------------------------------------------------------------------


def markov_kernel(V, t, x, xs, eps_schedule=None, flow_rtol=1e-10, flow_atol=1e-10):
    """The Aleksandrov-Clark kernel mu_{t,x}: invert z -> H_t(z) - x."""
    if t < 0:
        raise ValueError("t must be nonnegative")

    def h(z):
        return flow(V, np.asarray(z, dtype=complex), t, rtol=flow_rtol, atol=flow_atol) - x

    return stieltjes_invert(
        TransformEvaluator(h, f"markov(t={t}, x={x})"), xs, eps_schedule, atom_hints=(float(x),) if t == 0 else ()
    )


class TransitionMesh:
    """Precomputed time-t flow on an inversion mesh, reusable across x.

    H_{mu_{t,x}} = H_t - x, so one flow evaluation serves every x: densities
    come from extrapolating Im 1/(H - x) and atoms from inverting the real
    boundary values of H_t where Im H_t vanishes.
    """

    def __init__(self, V, t, xs, eps_schedule=None, flow_rtol=1e-9, flow_atol=1e-9):
        self.xs = np.asarray(xs, dtype=float)
        self.eps = (
            DEFAULT_EPS_SCHEDULE if eps_schedule is None else np.asarray(eps_schedule, dtype=float)
        )
        Z = self.xs[None, :] + 1j * self.eps[:, None]
        flat = flow(V, Z.reshape(-1), t, rtol=flow_rtol, atol=flow_atol)
        self.H = flat.reshape(Z.shape)
        probe = self.H[-1]
        self.real_mask = np.abs(probe.imag) < 1e-3 * (1.0 + np.abs(probe))
        self.H_real = probe.real
        self.dH_real = np.gradient(self.H_real, self.xs)

    def density_rows(self, x_values):
        """Densities of mu_{t,x} for an array of x, shape (n_x, len(xs))."""
        from .transforms import _richardson_columns

        x_values = np.asarray(x_values, dtype=float)
        out = np.empty((x_values.size, self.xs.size))
        for i, x in enumerate(x_values):
            with np.errstate(divide="ignore", invalid="ignore"):
                G = 1.0 / (self.H - x)
            dens, _ = _richardson_columns(-G.imag / math.pi, self.eps)
            out[i] = np.where(np.isfinite(dens), np.maximum(dens, 0.0), 0.0)
        return out

    def atoms_for(self, x):
        """Atoms of mu_{t,x}: solutions of H_t = x on the real part of the line."""
        pairs = []
        mask = self.real_mask
        edges = np.nonzero(np.diff(mask.astype(int)))[0]
        runs = np.split(np.arange(self.xs.size), edges + 1)
        for run in runs:
            if run.size < 3 or not mask[run[0]]:
                continue
            vals = self.H_real[run]
            lo, hi = vals[0], vals[-1]
            if not (min(lo, hi) < x < max(lo, hi)):
                continue
            pos = float(np.interp(x, vals, self.xs[run]))
            slope = float(np.interp(pos, self.xs[run], self.dH_real[run]))
            if slope > 1e-12:
                pairs.append((pos, 1.0 / slope))
        return pairs


def transition_interval_masses(V, t, xs, intervals, x_values, eps_schedule=None, chunk=64):
    """mu_{t,x}([a,b]) for every x in x_values and every interval.

    Shares a single flow mesh across all x (Chapman-Kolmogorov checks need
    hundreds of kernels of the same time slice).  Returns an array of shape
    (len(x_values), len(intervals)).
    """
    mesh = TransitionMesh(V, t, xs, eps_schedule)
    intervals = [(float(a), float(b)) for a, b in intervals]
    xs_arr = mesh.xs
    out = np.zeros((len(x_values), len(intervals)))
    for start in range(0, len(x_values), chunk):
        block = np.asarray(x_values[start : start + chunk], dtype=float)
        dens = mesh.density_rows(block)
        for bi, (a, b) in enumerate(intervals):
            sel = (xs_arr >= a) & (xs_arr <= b)
            if np.count_nonzero(sel) >= 2:
                out[start : start + block.size, bi] = np.trapezoid(
                    dens[:, sel], xs_arr[sel], axis=1
                )
        for i, x in enumerate(block):
            for pos, w in mesh.atoms_for(float(x)):
                for bi, (a, b) in enumerate(intervals):
                    if a <= pos <= b:
                        out[start + i, bi] += w
    return out


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def triple_to_json(V):
    return {"gamma": V.gamma, "tau": measure_to_json(V.tau)}


def triple_from_json(obj):
    return VectorField(float(obj["gamma"]), measure_from_json(obj["tau"]))


__all__ = [
    "VectorField",
    "CaseLabel",
    "FlowResult",
    "AtomTrack",
    "EdgeTrack",
    "ReflectedField",
    "field_eval",
    "field_eval_real",
    "field_deriv_real",
    "reflect_field",
    "monotone_poisson_field",
    "flow",
    "evolve",
    "classify_field",
    "atom_track",
    "support_edge",
    "subordinator_check",
    "bounded_below_check",
    "monotone_poisson_support",
    "markov_kernel",
    "TransitionMesh",
    "transition_interval_masses",
    "triple_to_json",
    "triple_from_json",
    "CASE_A",
    "CASE_A_PRIME",
    "CASE_B",
    "CASE_C",
    "CASE_D",
    "EDGE_A",
    "EDGE_B",
    "EDGE_C",
]
