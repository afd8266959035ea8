"""Embedded Dormand-Prince 5(4) integrator.

Hand-rolled rather than delegated: the flows integrated here live on the
closed upper half-plane and on the real line next to poles of the driving
field, so step rejection needs domain guards (reject any step whose stages
poke past a barrier) that library integrators do not expose.  Supports
vectorised complex state; the step size is shared across the whole state
array with a max-norm error control.
"""

import os

import numpy as np

from .errors import StepUnderflow

# Dormand-Prince tableau.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_ERR = _B5 - _B4

DEFAULT_MAX_STEPS = 1_000_000


def max_steps_limit():
    """Step budget, overridable through the MONOCONV_MAX_STEPS environment variable."""
    raw = os.environ.get("MONOCONV_MAX_STEPS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_MAX_STEPS


def integrate(
    f,
    y0,
    t0,
    t1,
    rtol=1e-10,
    atol=1e-10,
    max_steps=None,
    stage_guard=None,
    return_status=False,
):
    """Integrate y' = f(t, y) from t0 to t1 >= t0.

    ``y0`` may be a scalar or ndarray (complex or float).  ``stage_guard`` is
    an optional predicate on a state array; if any stage of a trial step
    fails it, the step is rejected and halved (used to keep real-line tracks
    on the analytic side of a barrier).

    Returns y(t1), or with ``return_status=True`` the triple
    ``(y, t_reached, status)`` where status is "done" or "underflow"; the
    latter reports the state where the step size collapsed instead of
    raising, which is how barrier arrivals are detected.
    """
    if t1 < t0:
        raise ValueError("backward integration not supported")
    scalar = np.ndim(y0) == 0
    y = np.atleast_1d(np.asarray(y0)).astype(
        complex if np.iscomplexobj(y0) else float
    )
    y = y.copy()

    def pack(status, t):
        res = y[0] if scalar else y
        if return_status:
            return res, t, status
        if status != "done":
            raise StepUnderflow(f"step size underflow at t={t}")
        return res

    if t1 == t0:
        return pack("done", t1)

    if max_steps is None:
        max_steps = max_steps_limit()
    t = float(t0)
    k = [None] * 7
    k[0] = np.asarray(f(t, y))
    # derivative-aware initial step (stiff starts next to the real line)
    f_scale = float(np.max(np.abs(k[0]))) if y.size else 0.0
    y_scale = float(np.max(np.abs(y))) if y.size else 0.0
    h = min(t1 - t0, 1e-2 * (1.0 + abs(t1 - t0)))
    if f_scale > 0.0:
        h = min(h, 1e-2 * (1.0 + y_scale) / f_scale)

    steps = 0
    while t < t1:
        if steps >= max_steps:
            return pack("underflow", t)
        steps += 1
        h = min(h, t1 - t)
        # the floor follows the local time resolution so that tracks may creep
        # away from a singular start, yet a stalled step still surfaces
        if h < max(4.0 * np.spacing(abs(t)), 1e-200):
            return pack("underflow", t)

        bad = False
        for i in range(1, 7):
            yi = y + h * sum(a * k[j] for j, a in enumerate(_A[i]))
            if stage_guard is not None and not stage_guard(yi):
                bad = True
                break
            k[i] = np.asarray(f(t + _C[i] * h, yi))
            if not np.all(np.isfinite(k[i].view(float))):
                bad = True
                break
        if bad:
            h *= 0.5
            continue

        y_new = y + h * sum(b * k[i] for i, b in enumerate(_B5) if b)
        if stage_guard is not None and not stage_guard(y_new):
            h *= 0.5
            continue
        err_vec = h * sum(e * k[i] for i, e in enumerate(_ERR) if e)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.max(np.abs(err_vec) / scale)) if y.size else 0.0

        if err <= 1.0:
            t += h
            y = y_new
            k[0] = k[6]  # FSAL
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err**-0.2))
            h *= factor
        else:
            h *= max(0.2, 0.9 * err**-0.2)

    return pack("done", t1)


def integrate_path(f, y0, times, **kwargs):
    """Solution values at an increasing time grid; times[0] is the initial time."""
    y = np.atleast_1d(np.asarray(y0)).copy()
    out = [y.copy()]
    for t_prev, t_next in zip(times[:-1], times[1:]):
        y = np.atleast_1d(integrate(f, y, t_prev, t_next, **kwargs))
        out.append(y.copy())
    return np.array(out)
