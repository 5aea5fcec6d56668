"""Edge angle functions on the closed unit disk, reduced mod 1.

These are the primitives whose exterior derivatives form the weight
density; the integrator uses their analytic gradients (see _fallback),
while these scalar versions serve the cocycle identity check and the CLI.
"""

from __future__ import annotations

import cmath
import math

from ..conventions import CONVENTIONS

TWO_PI = 2.0 * math.pi


def angle_c(z: complex, w: complex) -> float:
    """Central angle function in [0, 1): sign * arg(z/w) / 2pi mod 1.

    Singular when either argument is 0."""
    if z == 0 or w == 0:
        raise ValueError("angle_c is undefined at the origin")
    val = CONVENTIONS.central_angle_sign * (cmath.phase(z) - cmath.phase(w)) / TWO_PI
    return val % 1.0


def angle(z: complex, w: complex) -> float:
    """Aerial angle function in [0, 1): arg((z-w)(1-z*conj(w))*conj(z))/2pi.

    Singular at z = w, z = 0, and 1 = z*conj(w)."""
    h = (z - w) * (1 - z * w.conjugate()) * z.conjugate()
    if h == 0:
        raise ValueError("angle is undefined at a collision")
    return (CONVENTIONS.boundary_angle_sign * cmath.phase(h) / TWO_PI) % 1.0


def angle_boundary_chord(z: complex, w: complex) -> float:
    """Independent geometric route for |w| = 1: twice the chord direction
    angle minus the position angles of z and w, plus a half turn.

    For w on the unit circle, 1 - z*conj(w) = conj(w) * (w - z), so the
    angle reduces to 2*arg(z-w) - arg(z) - arg(w) + pi.  Used as an oracle
    for `angle`."""
    if abs(abs(w) - 1.0) > 1e-12:
        raise ValueError("chord construction needs |w| = 1")
    chord = math.atan2((z - w).imag, (z - w).real)
    val = 2.0 * chord - math.atan2(z.imag, z.real) - math.atan2(w.imag, w.real) + math.pi
    return (CONVENTIONS.boundary_angle_sign * val / TWO_PI) % 1.0


def cocycle_defect(z: complex, w: complex, u: complex) -> float:
    """Distance of angle_c(z,w) - angle_c(z,u) - angle_c(u,w) from the
    nearest integer; zero by the additivity of arg mod 2pi."""
    d = angle_c(z, w) - angle_c(z, u) - angle_c(u, w)
    return abs(d - round(d))
