"""Cohomological obstruction on the standard flat annulus.

The annulus is [-C, C]_p x S^1_q.  Boundary traces are truncated Fourier
series; the harmonic extension splits into modes, with the zero mode
affine in p and every other mode a combination of cosh/sinh profiles
(realized in an exponentially normalized basis so large n*C cannot
overflow).  The obstruction pairs the class [dt o j] with the core circle
{p = 0} oriented by increasing q; only the zero mode survives:

    integral = (pi / C) * (f_0(-C) - f_0(C)).

The integral can also be evaluated by trapezoidal quadrature of dt o j
along the core circle, which serves as an independent numerical oracle.
Disks carry no obstruction: H^1 vanishes for chi = 1, so lifting rigid
disks never requires this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import IllConditionedError, NoSignChangeError


def h1_rank(euler_char: int) -> int:
    """dim H^1 for a compact surface with boundary; zero exactly for disks."""
    return 1 - euler_char


@dataclass(frozen=True)
class FlatAnnulus:
    modulus: float  # C > 0, the annulus is [-C, C] x S^1

    def __post_init__(self):
        if not (self.modulus > 0 and math.isfinite(self.modulus)):
            raise ValueError(f"modulus must be finite and positive, got {self.modulus}")


class FourierBoundary:
    """Truncated Fourier data of the two boundary traces.

    ``inner`` and ``outer`` hold coefficients for modes n = 0 .. n_max at
    p = -C and p = +C respectively; negative modes are implied by conjugate
    symmetry, so mode 0 must be real and the traces are real-valued.
    """

    def __init__(self, inner, outer, n_max=None):
        inner = np.asarray(inner, dtype=complex)
        outer = np.asarray(outer, dtype=complex)
        if n_max is not None:
            inner = np.pad(inner, (0, max(0, n_max + 1 - len(inner))))[: n_max + 1]
            outer = np.pad(outer, (0, max(0, n_max + 1 - len(outer))))[: n_max + 1]
        if len(inner) != len(outer):
            raise ValueError("inner and outer coefficient lists differ in length")
        if len(inner) == 0:
            raise ValueError("mode 0 is required")
        if abs(inner[0].imag) > 0 or abs(outer[0].imag) > 0:
            raise ValueError("mode 0 must be real (traces are real-valued)")
        self.inner = inner
        self.outer = outer
        self.n_max = len(inner) - 1

    def trace(self, side, q):
        """Evaluate the boundary trace at angles q (side "inner"/"outer")."""
        coeffs = self.inner if side == "inner" else self.outer
        q = np.asarray(q, dtype=float)
        total = np.full_like(q, float(coeffs[0].real))
        for n in range(1, len(coeffs)):
            total = total + 2.0 * (coeffs[n] * np.exp(1j * n * q)).real
        return total

    def mean(self, side):
        return float((self.inner if side == "inner" else self.outer)[0].real)


class HarmonicExtension:
    """Per-mode radial profiles f_n with f_n'' = n^2 f_n exactly.

    Mode 0: f_0(p) = a p + b.  Mode n > 0 is stored as
    alpha * exp(n (p - C)) + beta * exp(-n (p + C)), which matches the
    cosh/sinh solution without evaluating large exponentials.
    """

    def __init__(self, annulus: FlatAnnulus, boundary: FourierBoundary):
        c = annulus.modulus
        self.annulus = annulus
        self.boundary = boundary
        f_in, f_out = boundary.inner, boundary.outer
        self.slope = (f_out[0].real - f_in[0].real) / (2.0 * c)
        self.offset = (f_out[0].real + f_in[0].real) / 2.0
        alphas, betas = [0j], [0j]
        for n in range(1, boundary.n_max + 1):
            # alpha + beta e^{-2nC} = outer;  alpha e^{-2nC} + beta = inner
            damp = math.exp(-2.0 * n * c)
            det = 1.0 - damp * damp
            if det == 0.0:
                raise IllConditionedError(f"mode {n}: boundary system is singular")
            alphas.append((f_out[n] - damp * f_in[n]) / det)
            betas.append((f_in[n] - damp * f_out[n]) / det)
        self.alphas = np.array(alphas)
        self.betas = np.array(betas)
        if not (
            np.all(np.isfinite(self.alphas.view(float)))
            and np.all(np.isfinite(self.betas.view(float)))
            and math.isfinite(self.slope)
        ):
            raise IllConditionedError("harmonic extension produced non-finite profiles")

    def mode(self, n, p, derivative=0):
        """f_n(p), f_n'(p) or f_n''(p) on a grid of p values."""
        p = np.asarray(p, dtype=float)
        c = self.annulus.modulus
        if n == 0:
            if derivative == 0:
                return self.slope * p + self.offset + 0j
            if derivative == 1:
                return np.full_like(p, self.slope) + 0j
            return np.zeros_like(p) + 0j
        up = np.exp(n * (p - c))
        down = np.exp(-n * (p + c))
        k = n**derivative
        sign = (-1) ** derivative
        return k * (self.alphas[n] * up + sign * self.betas[n] * down)

    def value(self, p, q):
        """t(p, q) on a grid (broadcasting p against q)."""
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        total = self.mode(0, p).real * np.ones_like(q)
        for n in range(1, self.boundary.n_max + 1):
            total = total + 2.0 * (self.mode(n, p) * np.exp(1j * n * q)).real
        return total


def harmonic_extend(annulus: FlatAnnulus, boundary: FourierBoundary) -> HarmonicExtension:
    """The unique harmonic extension of the boundary traces."""
    return HarmonicExtension(annulus, boundary)


def obstruction_integral(annulus, boundary, method="closed_form", n_quad=4096):
    """Pairing of [dt o j] with the core circle {p = 0}.

    Closed form: only mode 0 contributes, giving
    (pi / C) (f_0(-C) - f_0(C)) = -2 pi a.  The quadrature method
    integrates -df_n/dp along the core circle with the trapezoid rule and
    must agree to high accuracy; it exists as an independent check.
    """
    if method == "closed_form":
        return math.pi / annulus.modulus * (boundary.mean("inner") - boundary.mean("outer"))
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    ext = harmonic_extend(annulus, boundary)
    q = np.linspace(0.0, 2.0 * math.pi, n_quad, endpoint=False)
    integrand = np.full_like(q, -float(ext.mode(0, 0.0, derivative=1).real))
    for n in range(1, boundary.n_max + 1):
        integrand = integrand - 2.0 * (ext.mode(n, 0.0, derivative=1) * np.exp(1j * n * q)).real
    return float(np.mean(integrand) * 2.0 * math.pi)


def find_obstruction_zero(family, bracket, tol=1e-9, max_iter=200):
    """Bisection for the parameter where the obstruction vanishes.

    ``family`` maps T to (FlatAnnulus, FourierBoundary) or FourierBoundary
    (with a shared annulus supplied as ``family.annulus``).  The endpoint
    values must have opposite signs; returns (T*, value at T*)."""

    def evaluate(t):
        spec = family(t)
        if isinstance(spec, tuple):
            annulus, boundary = spec
        else:
            annulus, boundary = family.annulus, spec
        return obstruction_integral(annulus, boundary)

    lo, hi = float(bracket[0]), float(bracket[1])
    f_lo, f_hi = evaluate(lo), evaluate(hi)
    if f_lo == 0.0:
        return lo, f_lo
    if f_hi == 0.0:
        return hi, f_hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChangeError(
            f"obstruction has the same sign at both ends of [{lo}, {hi}]: "
            f"{f_lo:.3e}, {f_hi:.3e}"
        )
    mid, f_mid = lo, f_lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = evaluate(mid)
        if abs(f_mid) < tol:
            return mid, f_mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    if abs(f_mid) < tol:
        return mid, f_mid
    raise NoSignChangeError(f"bisection did not reach |value| < {tol} in {max_iter} steps")


# ----------------------------------------------------------------------
# family files

class AffineFamily:
    """Boundary family affine in T, loaded from a JSON specification.

    Schema: {"schema_version": 1, "modulus": C, "n_max": N,
             "inner": {"0": {"const": c, "slope": s}, "3": {...}, ...},
             "outer": {...}, "bracket": [T0, T1], "tol": 1e-9}
    where const/slope are numbers for mode 0 and [re, im] pairs otherwise.
    """

    def __init__(self, spec):
        self.annulus = FlatAnnulus(float(spec["modulus"]))
        self.n_max = int(spec.get("n_max", 0))
        self.bracket = tuple(spec.get("bracket", (-1.0, 1.0)))
        self.tol = float(spec.get("tol", 1e-9))
        self._sides = {}
        for side in ("inner", "outer"):
            const = np.zeros(self.n_max + 1, dtype=complex)
            slope = np.zeros(self.n_max + 1, dtype=complex)
            for key, entry in spec.get(side, {}).items():
                n = int(key)
                if not 0 <= n <= self.n_max:
                    raise ValueError(f"{side} mode {n} outside 0..{self.n_max}")
                const[n] = _coeff(entry.get("const", 0))
                slope[n] = _coeff(entry.get("slope", 0))
            self._sides[side] = (const, slope)

    def __call__(self, t):
        inner = self._sides["inner"][0] + t * self._sides["inner"][1]
        outer = self._sides["outer"][0] + t * self._sides["outer"][1]
        return FourierBoundary(inner, outer)

    def solve(self):
        t_star, value = find_obstruction_zero(self, self.bracket, tol=self.tol)
        h = max(1e-6, 1e-6 * (abs(self.bracket[1] - self.bracket[0])))
        slope = (
            obstruction_integral(self.annulus, self(t_star + h))
            - obstruction_integral(self.annulus, self(t_star - h))
        ) / (2 * h)
        return {
            "t_star": t_star,
            "value": value,
            "slope": slope,
            "bracket": list(self.bracket),
            "tol": self.tol,
        }


def _coeff(entry):
    if isinstance(entry, (int, float)):
        return complex(entry)
    re, im = entry
    return complex(re, im)


def load_family(path) -> AffineFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return AffineFamily(json.load(fh))
