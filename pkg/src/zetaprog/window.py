"""Smooth compactly supported test window phi and its Fourier transform.

The window is the standard C-infinity partition-of-unity bump

    phi(x) = S((x - 1)/edge) * S((2 - x)/edge),
    S(u)   = f(u) / (f(u) + f(1 - u)),   f(u) = exp(-1/u)  (u > 0),

so phi vanishes outside [1, 2], equals 1 on [1 + edge, 2 - edge], and the two
ramps never overlap for edge < 1/2.  Because S(u) + S(1 - u) = 1, each ramp
integrates to edge/2 and the total mass is exactly 1 - edge.

The Fourier transform uses the convention

    phi_hat(xi) = integral over [1, 2] of phi(t) * exp(-2*pi*i*xi*t) dt,

evaluated by composite Gauss-Legendre panels whose length shrinks like
1/(4|xi|) so that each panel sees at most a quarter oscillation.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import QuadratureError
from .quadrature import gl_panels

__all__ = ["SmoothWindow", "eval_phi", "phi_hat"]


def _ramp(u):
    """The C-infinity ramp S(u): 0 for u <= 0, 1 for u >= 1, smooth glue between."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    out[u >= 1.0] = 1.0
    mid = (u > 0.0) & (u < 1.0)
    um = u[mid]
    fu = np.exp(-1.0 / um)
    fv = np.exp(-1.0 / (1.0 - um))
    out[mid] = fu / (fu + fv)
    return out


@dataclass(frozen=True)
class SmoothWindow:
    """Bump supported on [1, 2] with plateau [1 + edge, 2 - edge].

    plateau_mass caches the integral of phi, which is exactly 1 - edge for
    this ramp (each transition contributes edge/2 by the S(u) + S(1-u) = 1
    symmetry); the property suite re-derives it by quadrature.
    """

    edge: float = 0.05
    plateau_mass: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.edge < 0.5):
            raise ValueError(f"edge must lie in (0, 1/2), got {self.edge}")
        object.__setattr__(self, "plateau_mass", 1.0 - self.edge)

    # -- evaluation ---------------------------------------------------------

    def phi(self, x):
        """Evaluate phi pointwise; accepts scalars or arrays, returns the same shape."""
        x = np.asarray(x, dtype=float)
        val = _ramp((x - 1.0) / self.edge) * _ramp((2.0 - x) / self.edge)
        if val.ndim == 0:
            return float(val)
        return val

    def phi_hat(self, xi: float) -> complex:
        """Fourier transform at xi, absolute accuracy 1e-10.

        phi_hat(-xi) = conj(phi_hat(xi)) is enforced exactly by evaluating at
        |xi| and conjugating, which is legitimate because phi is real.
        """
        xi = float(xi)
        if xi < 0.0:
            return np.conj(self.phi_hat(-xi))
        if xi == 0.0:
            # The zero frequency is the cached mass; quadrature agrees to 1e-14.
            return complex(self.plateau_mass)

        base = min(0.25, self.edge / 2.0)
        if xi > 1.0:
            base = min(base, 1.0 / (4.0 * xi))
        prev = None
        for refine in range(5):
            plen = base / (2.0 ** refine)
            panels = int(np.ceil(1.0 / plen))
            t, w = gl_panels(1.0, 2.0, panels, 16)
            val = complex(np.sum(w * self.phi(t) * np.exp(-2j * np.pi * xi * t)))
            if prev is not None and abs(val - prev) <= 1e-12:
                return val
            prev = val
        raise QuadratureError(
            f"phi_hat({xi}) did not converge to 1e-10 within the panel budget"
        )


def eval_phi(w: SmoothWindow, x):
    """Functional form of SmoothWindow.phi."""
    return w.phi(x)


def phi_hat(w: SmoothWindow, xi: float) -> complex:
    """Functional form of SmoothWindow.phi_hat."""
    return w.phi_hat(xi)
