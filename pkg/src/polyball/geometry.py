"""Complex-vector geometry for rotated spheres and the Lie ball.

Conventions used throughout the package:

* Points of C^n are 1-d arrays (or sequences) of complex numbers, n >= 2.
* ``bilinear_square(z)`` is the analytic square z.z = sum z_j**2, without
  conjugation.  ``complex_abs`` is its principal square root, with branch cut
  on the non-positive real axis and argument in (-pi, pi].  Negative reals
  map to the positive imaginary axis regardless of the sign of an incoming
  imaginary zero.
* The Lie norm is L(z) = sqrt(|z|_h^2 + sqrt(|z|_h^4 - |z.z|^2)) where
  |.|_h is the hermitian norm.  For real x, L(x) = |x|; L is invariant under
  multiplication by unit scalars e^{i phi}.
* ``RotatedVector`` stores a point e^{i*angle} * a with real coordinate
  vector a and angle reduced into [0, pi) (the sign of a absorbs full-pi
  rotations, so the embedded complex point is preserved).  Sector points of
  the union of rotated spheres/balls have angle = j*pi/p.

Public API (stable): bilinear_square, complex_abs, hermitian_dot,
hermitian_norm, lie_norm, in_lie_ball, on_lie_sphere, in_lie_domain,
principal_sqrt, principal_power, as_complex_vector, RotatedVector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RotatedVector",
    "as_complex_vector",
    "as_rotated",
    "bilinear_square",
    "complex_abs",
    "hermitian_dot",
    "hermitian_norm",
    "in_lie_ball",
    "in_lie_domain",
    "lie_norm",
    "on_lie_sphere",
    "principal_power",
    "principal_sqrt",
]


# --------------------------------------------------------------------------
# principal branch helpers
# --------------------------------------------------------------------------

def _canonical_complex(w):
    """Return ``w`` as ndarray with imaginary -0.0 flushed to +0.0.

    numpy and cmath put arguments of negative reals on the side of the
    imaginary zero's sign; the package fixes arg in (-pi, pi], so a -0.0
    imaginary part must not select the lower branch.
    """
    arr = np.asarray(w, dtype=complex)
    im = arr.imag.copy()
    im[im == 0.0] = 0.0
    return arr.real + 1j * im


def principal_sqrt(w):
    """Principal square root, branch cut (-inf, 0], arg in (-pi, pi]."""
    res = np.sqrt(_canonical_complex(w))
    return complex(res) if np.isscalar(w) or np.ndim(w) == 0 else res


def principal_power(w, a):
    """Principal power w**a for real exponent a, same branch as principal_sqrt.

    Integer exponents are evaluated by plain powering (no branch involved).
    Zero base requires a positive exponent.
    """
    if float(a) == int(a):
        res = np.asarray(w, dtype=complex) ** int(a)
        return complex(res) if np.ndim(w) == 0 else res
    arr = _canonical_complex(w)
    zero = arr == 0
    if np.any(zero):
        if a <= 0:
            raise ValueError("0 cannot be raised to a non-positive power")
        res = np.where(zero, 0.0, np.exp(a * np.log(np.where(zero, 1.0, arr))))
    else:
        res = np.exp(a * np.log(arr))
    return complex(res) if np.ndim(w) == 0 else res


# --------------------------------------------------------------------------
# rotated points
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RotatedVector:
    """A point e^{i*angle} * coords with real coords, angle in [0, pi).

    Construction reduces the angle mod pi and flips the sign of coords for
    each full half-turn, so the embedded complex point is unchanged and the
    representation is unique for coords != 0.
    """

    angle: float
    coords: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.coords, dtype=float)
        if a.ndim != 1 or a.size < 2:
            raise ValueError("coords must be a 1-d real vector with n >= 2")
        if not np.all(np.isfinite(a)):
            raise ValueError("coords must be finite")
        phi = float(self.angle)
        if not math.isfinite(phi):
            raise ValueError("angle must be finite")
        k = math.floor(phi / math.pi)
        phi = phi - k * math.pi
        if phi >= math.pi:  # guard the floating edge phi == pi
            phi -= math.pi
            k += 1
        if k % 2:
            a = -a
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "angle", phi)
        object.__setattr__(self, "coords", a)

    @classmethod
    def sector(cls, j: int, p: int, coords) -> "RotatedVector":
        """The point e^{i j pi / p} * coords of the j-th sector."""
        if p < 1:
            raise ValueError("p must be >= 1")
        return cls(j * math.pi / p, coords)

    @property
    def n(self) -> int:
        return self.coords.size

    @property
    def radius(self) -> float:
        """Hermitian norm; equals the euclidean norm of coords."""
        return float(np.linalg.norm(self.coords))

    def to_complex(self) -> np.ndarray:
        return np.exp(1j * self.angle) * self.coords

    def rotated(self, delta: float) -> "RotatedVector":
        """The point multiplied by e^{i*delta}."""
        return RotatedVector(self.angle + delta, self.coords)

    def sector_index(self, p: int, tol: float = 1e-9) -> int:
        """Index j with angle = j*pi/p, or raise if no sector matches."""
        j = round(self.angle * p / math.pi)
        if abs(self.angle - j * math.pi / p) > tol:
            raise ValueError(
                f"angle {self.angle!r} is not a multiple of pi/{p}")
        return j % p


def as_complex_vector(z) -> np.ndarray:
    """Coerce a RotatedVector / sequence / array to a complex 1-d array."""
    if isinstance(z, RotatedVector):
        return z.to_complex()
    arr = np.asarray(z, dtype=complex)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("expected a 1-d vector with n >= 2")
    return arr


def as_rotated(v) -> RotatedVector:
    """Coerce to RotatedVector; plain sequences must be real (angle 0)."""
    if isinstance(v, RotatedVector):
        return v
    arr = np.asarray(v)
    if np.iscomplexobj(arr):
        raise ValueError("expected a rotated point (angle + real coords); "
                         "wrap complex points explicitly")
    return RotatedVector(0.0, arr)


# --------------------------------------------------------------------------
# norms and domains
# --------------------------------------------------------------------------

def bilinear_square(z) -> complex:
    """The analytic square z.z = sum z_j**2 (no conjugation)."""
    arr = as_complex_vector(z)
    return complex(np.sum(arr * arr))


def complex_abs(z) -> complex:
    """Principal square root of the analytic square z.z."""
    return principal_sqrt(bilinear_square(z))


def hermitian_dot(z, w) -> complex:
    """<z, w> = sum z_j * conj(w_j)."""
    za, wa = as_complex_vector(z), as_complex_vector(w)
    if za.size != wa.size:
        raise ValueError("dimension mismatch")
    return complex(np.sum(za * np.conj(wa)))


def hermitian_norm(z) -> float:
    return float(np.linalg.norm(as_complex_vector(z)))


def lie_norm(z) -> float:
    """L(z) = sqrt(|z|_h^2 + sqrt(|z|_h^4 - |z.z|^2)).

    With z = a + ib (a, b real) the inner radicand equals the Lagrange
    form 4 sum_{i<j} (a_i b_j - a_j b_i)^2, a sum of squares.  Evaluating
    that form instead of the difference of fourth powers avoids the
    catastrophic cancellation on near-rotated-real vectors, where the
    radicand vanishes; there L(e^{i phi} x) = ||x|| to machine precision.
    """
    arr = as_complex_vector(z)
    a, b = arr.real, arr.imag
    h2 = float(a @ a + b @ b)
    minors = np.outer(a, b)
    minors -= minors.T
    inner = 2.0 * float(np.sum(minors * minors))
    return math.sqrt(h2 + math.sqrt(inner))


def in_lie_ball(z) -> bool:
    """Open Lie ball membership, L(z) < 1."""
    return lie_norm(z) < 1.0


def on_lie_sphere(z, tol: float = 1e-12) -> bool:
    return abs(lie_norm(z) - 1.0) <= tol


def in_lie_domain(z, w) -> bool:
    """Membership in {L(z) * L(w) < 1}, the domain of the kernel series."""
    return lie_norm(z) * lie_norm(w) < 1.0
