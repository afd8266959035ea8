"""The one audited code path for complex powers on the (0, 2*pi) branch.

Every fractional power in the package goes through :func:`upper_power`; the
branch cut lies on the positive real axis and values on the cut take the
limit from the upper half-plane (arg -> 0+).  Keeping a single implementation
makes the branch convention impossible to get wrong in just one place.
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def upper_angle(w):
    """arg(w) in [0, 2*pi), with the positive real axis mapped to 0."""
    theta = np.angle(w)
    return np.where(theta < 0.0, theta + TWO_PI, theta)


def upper_power(w, s):
    """``w**s`` with arg(w) taken in [0, 2*pi).

    ``w == 0`` maps to 0 (callers guard the ``s < 0`` case).  Scalar input
    gives a scalar back.
    """
    w_arr = np.asarray(w, dtype=complex)
    r = np.abs(w_arr)
    theta = upper_angle(w_arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.exp(s * (np.log(r) + 1j * theta))
    out = np.where(r > 0.0, val, 0.0 + 0.0j)
    if np.ndim(w) == 0:
        return complex(out)
    return out


def on_positive_cut(w, tol=1e-14):
    """True where w sits on the open positive real axis within ``tol`` (relative)."""
    w_arr = np.asarray(w, dtype=complex)
    scale = np.abs(w_arr) + 1.0
    return (np.abs(w_arr.imag) <= tol * scale) & (w_arr.real > tol * scale)
