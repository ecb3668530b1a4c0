"""Complex special functions for the characteristic equations.

Cylindrical Bessel J and modified Bessel I of complex order and complex
argument, Airy Ai/Bi of complex argument (all with analytic derivatives),
principal-branch log-Gamma, and Jacobi polynomials with complex parameters.

The Bessel/Airy power series suffer catastrophic cancellation once the
argument grows (the partial sums reach ~e^{2|z|} while the result can be
exponentially small), so the series are accumulated in extended-precision
MPC arithmetic with the working precision scaled to the cancellation bound.
Past ``SERIES_RADIUS`` the standard large-argument asymptotic expansions
take over, with sector rotations for Airy.  Everything is a pure function.
"""

from __future__ import annotations

import cmath
import math

import gmpy2
from gmpy2 import mpc, mpfr

__all__ = [
    "SpecFunError",
    "PoleError",
    "NonConvergenceError",
    "SERIES_RADIUS",
    "ln_gamma",
    "bessel_j",
    "bessel_i",
    "airy",
    "airy_all",
    "jacobi_poly",
]


class SpecFunError(ArithmeticError):
    """Base class for special-function evaluation failures."""


class PoleError(SpecFunError):
    """Evaluation requested at a pole."""


class NonConvergenceError(SpecFunError):
    """No validated evaluation regime applies at the requested point."""


# Series are trusted up to this |z| (with precision scaled to the
# cancellation bound); asymptotic expansions take over beyond.
SERIES_RADIUS = 40.0

_MAX_TERMS = 3000

# Lanczos g=7, n=9 coefficients; ~1e-13 relative on Re z >= 0.5.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.9189385332046727417803297364056176

# 40-digit Maclaurin constants: Ai(0), -Ai'(0).
_AI0_STR = "0.3550280538878172392600631860041831763980"
_AIP0_STR = "0.2588194037928067984051835601892039634793"


def _check_finite(value: complex) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NonConvergenceError("result overflowed double precision")
    return value


# ----------------------------------------------------------------------
# log-Gamma
# ----------------------------------------------------------------------

def _lanczos_ln_gamma(z: complex) -> complex:
    """Lanczos sum, valid for Re z >= 0.5."""
    zm1 = z - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (zm1 + i)
    t = zm1 + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm1 + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _log_sin_pi(z: complex) -> complex:
    """Principal log(sin(pi z)) for Im z >= 0, accurate for large Im z."""
    if z.imag <= 1.0:
        return cmath.log(cmath.sin(cmath.pi * z))
    # sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2 i); the exponential
    # form avoids overflow of sin for large Im z.
    w = cmath.exp(2j * cmath.pi * z)
    return -1j * cmath.pi * z + cmath.log((w - 1.0) / 2j)


def ln_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Raises PoleError at the poles z = 0, -1, -2, ...
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"log-Gamma pole at z = {z.real:g}")
    if z.real >= 0.5:
        return _check_finite(_lanczos_ln_gamma(z))
    if z.imag < 0.0:
        return _check_finite(ln_gamma(z.conjugate()).conjugate())
    # Reflection for Re z < 0.5, Im z >= 0 (Hare's winding correction).
    two_pi_floor = 2.0 * math.pi * math.floor(0.5 * z.real + 0.25)
    log_pi = complex(math.log(math.pi), two_pi_floor)
    return _check_finite(log_pi - _log_sin_pi(z) - _lanczos_ln_gamma(1.0 - z))


# ----------------------------------------------------------------------
# Bessel J / I of complex order
# ----------------------------------------------------------------------

def _bessel_prec_bits(z: complex) -> int:
    # Partial sums reach ~e^{|z|} while the result can be ~e^{-|z|}.
    return max(96, int(2.0 * abs(z) * 1.4427) + 96)


def _bessel_value_at_zero(nu: complex, derivative: bool) -> complex:
    if not derivative:
        if nu == 0:
            return 1.0 + 0.0j
        if nu.real > 0:
            return 0.0 + 0.0j
        raise NonConvergenceError("J/I singular at z=0 for Re nu < 0")
    if nu == 0:
        return 0.0 + 0.0j
    if nu == 1:
        return 0.5 + 0.0j
    if nu.real > 1:
        return 0.0 + 0.0j
    raise NonConvergenceError("dJ/dz, dI/dz singular at z=0 for Re nu <= 1")


def _bessel_series(nu: complex, z: complex, sign: int) -> tuple[complex, complex]:
    """(value, d/dz) of sum_k (sign)^k (z/2)^{nu+2k} / (k! Gamma(nu+k+1)).

    The hypergeometric sums are accumulated in MPC at a precision covering
    the cancellation bound; the smooth prefactor (z/2)^nu / Gamma(nu+1) is
    applied in double precision at the end.
    """
    prec = _bessel_prec_bits(z)
    with gmpy2.context(precision=prec):
        w = mpc(z)
        q = mpc(sign) * w * w / 4
        nug = mpc(nu)
        term = mpc(1)
        s_val = mpc(1)
        s_der = mpc(nu)
        cutoff = mpfr(2) ** (-(prec + 20))
        peak = mpfr(1)
        small = 0
        for k in range(_MAX_TERMS):
            term = term * q / ((k + 1) * (nug + k + 1))
            s_val += term
            s_der += (nug + 2 * (k + 1)) * term
            mag = abs(term)
            if mag > peak:
                peak = mag
            if mag < cutoff * peak:
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
        else:
            raise NonConvergenceError(
                f"Bessel series did not converge at nu={nu}, z={z}")
        # prefactor exponent; double precision is enough for a smooth factor
        expo = nu * cmath.log(z / 2.0) - ln_gamma(nu + 1.0)
        if abs(expo.real) > 690.0:
            raise NonConvergenceError("Bessel prefactor out of double range")
        pref = gmpy2.exp(mpc(expo))
        value = complex(pref * s_val)
        deriv = complex(pref * s_der / w)
    return _check_finite(value), _check_finite(deriv)


def _hankel_symbol(nu: complex, z: complex, rotation: int) -> complex:
    """Truncated Hankel expansion sum for H^(1) (rotation=+1) or H^(2) (-1)."""
    term = 1.0 + 0.0j
    acc = 1.0 + 0.0j
    four_nu2 = 4.0 * nu * nu
    last = abs(term)
    for k in range(60):
        term = term * (four_nu2 - (2 * k + 1) ** 2) / (8.0 * z * (k + 1))
        term *= 1j if rotation > 0 else -1j
        mag = abs(term)
        if mag > last:
            break
        acc += term
        last = mag
        if mag < 1e-18 * abs(acc):
            break
    return acc


def _bessel_j_asymptotic(nu: complex, z: complex) -> complex:
    if abs(nu) ** 2 > abs(z):
        raise NonConvergenceError(
            f"|nu|^2 = {abs(nu)**2:.3g} too large for the asymptotic regime at |z| = {abs(z):.3g}")
    omega = z - nu * cmath.pi / 2.0 - cmath.pi / 4.0
    front = cmath.sqrt(2.0 / (cmath.pi * z))
    h1 = cmath.exp(1j * omega) * _hankel_symbol(nu, z, +1)
    h2 = cmath.exp(-1j * omega) * _hankel_symbol(nu, z, -1)
    return front * (h1 + h2) / 2.0


def _bessel_j_large(nu: complex, z: complex, derivative: bool) -> complex:
    if not derivative:
        return _check_finite(_bessel_j_asymptotic(nu, z))
    val = (_bessel_j_asymptotic(nu - 1.0, z) - _bessel_j_asymptotic(nu + 1.0, z)) / 2.0
    return _check_finite(val)


def _negative_integer_order(nu: complex):
    if nu.imag == 0.0 and nu.real < 0.0 and nu.real == int(nu.real):
        return int(-nu.real)
    return None


def bessel_j(nu: complex, z: complex, derivative: bool = False) -> complex:
    """Cylindrical Bessel J_nu(z), or dJ_nu/dz, for complex order and argument."""
    nu, z = complex(nu), complex(z)
    n = _negative_integer_order(nu)
    if n is not None:  # J_{-n} = (-1)^n J_n
        return (-1.0) ** n * bessel_j(float(n), z, derivative)
    if z == 0:
        return _bessel_value_at_zero(nu, derivative)
    if abs(z) <= SERIES_RADIUS:
        value, deriv = _bessel_series(nu, z, -1)
        return deriv if derivative else value
    return _bessel_j_large(nu, z, derivative)


def bessel_i(nu: complex, z: complex, derivative: bool = False) -> complex:
    """Modified Bessel I_nu(z), or dI_nu/dz, for complex order and argument."""
    nu, z = complex(nu), complex(z)
    n = _negative_integer_order(nu)
    if n is not None:  # I_{-n} = I_n
        return bessel_i(float(n), z, derivative)
    if z == 0:
        return _bessel_value_at_zero(nu, derivative)
    if abs(z) <= SERIES_RADIUS:
        value, deriv = _bessel_series(nu, z, +1)
        return deriv if derivative else value
    # I_nu(z) = e^{-/+ nu pi i / 2} J_nu(z e^{+/- i pi/2}); rotate into |arg| <= pi/2
    if z.imag >= 0.0:
        rot, phase = -1j, cmath.exp(nu * cmath.pi * 0.5j)
    else:
        rot, phase = 1j, cmath.exp(-nu * cmath.pi * 0.5j)
    if not derivative:
        return _check_finite(phase * _bessel_j_asymptotic(nu, rot * z))
    return _check_finite((bessel_i(nu - 1.0, z) + bessel_i(nu + 1.0, z)) / 2.0)


# ----------------------------------------------------------------------
# Airy Ai / Bi
# ----------------------------------------------------------------------

def _airy_prec_bits(z: complex) -> int:
    xi = (2.0 / 3.0) * abs(z) ** 1.5
    return max(96, int(2.0 * xi * 1.4427) + 96)


def _airy_series_all(z: complex) -> tuple[complex, complex, complex, complex]:
    """(Ai, Ai', Bi, Bi') by the two Maclaurin auxiliary series."""
    prec = _airy_prec_bits(z)
    with gmpy2.context(precision=prec):
        w = mpc(z)
        w3 = w * w * w
        c1 = mpfr(_AI0_STR)
        c2 = mpfr(_AIP0_STR)
        # f = sum u_k, u_{k+1} = u_k z^3 / ((3k+2)(3k+3)), u_0 = 1
        # g = sum v_k, v_{k+1} = v_k z^3 / ((3k+3)(3k+4)), v_0 = z
        # f' = sum u_k 3k / z,  g' = sum v_k (3k+1) / z   (term-wise)
        u = mpc(1)
        v = w
        sf = mpc(1)
        sg = w
        sfp = mpc(0)
        sgp = mpc(1)
        cutoff = mpfr(2) ** (-(prec + 20))
        peak = max(mpfr(1), abs(v))
        small = 0
        for k in range(_MAX_TERMS):
            u = u * w3 / ((3 * k + 2) * (3 * k + 3))
            v = v * w3 / ((3 * k + 3) * (3 * k + 4))
            sf += u
            sg += v
            # d/dz of the u term: exponent 3(k+1); of the v term: 3(k+1)+1
            kk = 3 * (k + 1)
            if z != 0:
                sfp += u * kk / w
                sgp += v * (kk + 1) / w
            mag = max(abs(u), abs(v))
            if mag > peak:
                peak = mag
            if mag < cutoff * peak:
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
        else:
            raise NonConvergenceError(f"Airy series did not converge at z={z}")
        sqrt3 = gmpy2.sqrt(mpfr(3))
        ai = complex(c1 * sf - c2 * sg)
        aip = complex(c1 * sfp - c2 * sgp)
        bi = complex(sqrt3 * (c1 * sf + c2 * sg))
        bip = complex(sqrt3 * (c1 * sfp + c2 * sgp))
    for r in (ai, aip, bi, bip):
        _check_finite(r)
    return ai, aip, bi, bip


def _airy_asym_direct(z: complex) -> tuple[complex, complex]:
    """(Ai, Ai') from the large-|z| expansion; use only for |arg z| <= 2pi/3."""
    xi = (2.0 / 3.0) * z ** 1.5
    u = 1.0 + 0.0j
    s_val = 1.0 + 0.0j
    s_der = 1.0 + 0.0j
    last = 1.0
    uk = 1.0 + 0.0j
    for k in range(40):
        uk = uk * (6 * k + 1) * (6 * k + 5) / (72.0 * (k + 1))
        term = uk * (-1.0 / xi) ** (k + 1)
        mag = abs(term)
        if mag > last:
            break
        vk_term = term * (6 * (k + 1) + 1) / (1.0 - 6.0 * (k + 1))
        s_val += term
        s_der += vk_term
        last = mag
        if mag < 1e-19:
            break
    front = cmath.exp(-xi) / (2.0 * math.sqrt(math.pi))
    ai = front * z ** -0.25 * s_val
    aip = -front * z ** 0.25 * s_der
    return ai, aip


_OMEGA = cmath.exp(2j * cmath.pi / 3.0)


def _airy_asym_ai(z: complex) -> tuple[complex, complex]:
    """(Ai, Ai') for large |z|, any sector, via the rotation identity."""
    if abs(cmath.phase(z)) <= 2.0 * cmath.pi / 3.0:
        return _airy_asym_direct(z)
    # Ai(z) = -[w Ai(w z) + w^2 Ai(w^2 z)],  Ai'(z) = -[w^2 Ai'(wz) + w^4 Ai'(w^2 z)]
    a1, a1p = _airy_asym_direct(_OMEGA * z)
    a2, a2p = _airy_asym_direct(z / _OMEGA)
    ai = -(_OMEGA * a1 + _OMEGA ** 2 * a2)
    aip = -(_OMEGA ** 2 * a1p + _OMEGA ** 4 * a2p)
    return ai, aip


def _airy_asym_all(z: complex) -> tuple[complex, complex, complex, complex]:
    ai, aip = _airy_asym_ai(z)
    # Bi(z) = e^{i pi/6} Ai(z w) + e^{-i pi/6} Ai(z / w)
    b1, b1p = _airy_asym_ai(_OMEGA * z)
    b2, b2p = _airy_asym_ai(z / _OMEGA)
    e = cmath.exp(1j * cmath.pi / 6.0)
    bi = e * b1 + b2 / e
    bip = cmath.exp(5j * cmath.pi / 6.0) * b1p + cmath.exp(-5j * cmath.pi / 6.0) * b2p
    return ai, aip, bi, bip


def airy_all(z: complex) -> tuple[complex, complex, complex, complex]:
    """(Ai, Ai', Bi, Bi') at complex z; one series pass serves all four."""
    z = complex(z)
    if abs(z) <= SERIES_RADIUS:
        return _airy_series_all(z)
    vals = _airy_asym_all(z)
    for r in vals:
        _check_finite(r)
    return vals


def airy(z: complex, kind: str = "Ai", derivative: bool = False) -> complex:
    """Airy function Ai or Bi (or its derivative) at complex z."""
    ai, aip, bi, bip = airy_all(z)
    if kind == "Ai":
        return aip if derivative else ai
    if kind == "Bi":
        return bip if derivative else bi
    raise ValueError(f"kind must be 'Ai' or 'Bi', got {kind!r}")


# ----------------------------------------------------------------------
# Jacobi polynomials
# ----------------------------------------------------------------------

def jacobi_poly(n: int, alpha: complex, beta: complex, z: complex) -> complex:
    """Jacobi polynomial P_n^{(alpha,beta)}(z) for complex parameters, n >= 0.

    Three-term recurrence; valid as long as 2k(k+alpha+beta) stays away from
    zero for k = 2..n, which holds for all parameters used here.
    """
    if n < 0:
        raise ValueError("polynomial degree must be >= 0")
    alpha, beta, z = complex(alpha), complex(beta), complex(z)
    p_prev = 1.0 + 0.0j
    if n == 0:
        return p_prev
    p = (alpha - beta) / 2.0 + (alpha + beta + 2.0) * z / 2.0
    for k in range(2, n + 1):
        ab = alpha + beta
        c0 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        if c0 == 0:
            raise NonConvergenceError(
                f"degenerate Jacobi recurrence at degree {k} for alpha+beta={ab}")
        b1 = (2.0 * k + ab - 1.0) * ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * z + alpha ** 2 - beta ** 2)
        b2 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab)
        p, p_prev = (b1 * p - b2 * p_prev) / c0, p
    return _check_finite(p)
