"""Potential models, their kinematics, and characteristic functions.

Five PT-symmetric potentials with imaginary asymptotic saturation
V(x -> +/-inf) -> +/- i V1, in units hbar = 1, 2m = 1:

* ``Step``        -- two-piece imaginary step (empty spectrum).
* ``ExpStep``     -- two-piece exponential approach to the step; the
                     characteristic function combines Bessel J and I of
                     complex order at fixed argument q = a sqrt(i V1).
* ``LinearStep``  -- linear ramp between the saturation plateaus; the
                     characteristic function is a four-term Airy eliminant.
* ``SquareWell``  -- real square well/barrier of depth V0 between the
                     plateaus; elementary characteristic function.
* ``RosenMorse``  -- -s(s+1) sech^2 x + 2 i c tanh x, with a closed-form
                     real spectrum (no characteristic function needed).

Characteristic-function callables support both scalars and numpy arrays:
array input takes a fast complex128 path meant for grid scanning, scalar
input takes the extended-precision path meant for root refinement.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from . import specfun

__all__ = [
    "Step",
    "ExpStep",
    "LinearStep",
    "SquareWell",
    "RosenMorse",
    "ModelSpec",
    "Kinematics",
    "kinematics",
    "potential_value",
    "char_step",
    "char_expstep",
    "char_linear",
    "char_sqwell",
    "hermitian_sqwell_levels",
    "rosen_morse_levels",
    "characteristic",
    "characteristic_grid",
    "swapped_characteristic",
    "model_from_name",
]


@dataclass(frozen=True)
class Step:
    """V = -i v1 for x <= 0, +i v1 for x > 0."""

    v1: float

    def __post_init__(self):
        if self.v1 == 0:
            raise ValueError("saturation strength v1 must be nonzero")


@dataclass(frozen=True)
class ExpStep:
    """V = -i v1 (1 - e^{2x/a}) for x <= 0, +i v1 (1 - e^{-2x/a}) for x > 0."""

    v1: float
    a: float

    def __post_init__(self):
        if self.v1 == 0:
            raise ValueError("saturation strength v1 must be nonzero")
        if self.a <= 0:
            raise ValueError("length scale a must be positive")


@dataclass(frozen=True)
class LinearStep:
    """V = i v1 x/a on |x| < a, saturating at +/- i v1 outside."""

    v1: float
    a: float

    def __post_init__(self):
        if self.v1 == 0:
            raise ValueError("saturation strength v1 must be nonzero")
        if self.a <= 0:
            raise ValueError("length scale a must be positive")


@dataclass(frozen=True)
class SquareWell:
    """V = -v0 on |x| <= a, -i v1 for x < -a, +i v1 for x > a.

    v1 = 0 is allowed here (the Hermitian degenerate case used by limit
    tests); the spectrum pipeline then has a continuum and only the
    bound-state window (-v0, 0) is meaningful.
    """

    v0: float
    v1: float
    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("length scale a must be positive")


@dataclass(frozen=True)
class RosenMorse:
    """V = -s(s+1) sech^2 x + 2 i c tanh x (asymptotic saturation 2|c|)."""

    s: float
    c: float

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError("well strength s must be positive")


ModelSpec = Union[Step, ExpStep, LinearStep, SquareWell, RosenMorse]


@dataclass(frozen=True)
class Kinematics:
    """Asymptotic decay rates and per-model auxiliary quantities at energy E.

    k1/k2 are the principal square roots of -(E + i V1) and -(E - i V1);
    both are computed independently (they are mutual conjugates only for
    real E).  q is fixed by the exponential step geometry, (g, h1, h2)
    belong to the linear ramp, p to the square well.
    """

    k1: complex
    k2: complex
    q: Optional[complex] = None
    g: Optional[float] = None
    h1: Optional[complex] = None
    h2: Optional[complex] = None
    p: Optional[complex] = None


def _saturation(model: ModelSpec) -> float:
    if isinstance(model, RosenMorse):
        return 2.0 * model.c
    return model.v1


def kinematics(model: ModelSpec, E: complex) -> Kinematics:
    """Shared kinematic quantities for a model at complex energy E."""
    E = complex(E)
    v1 = _saturation(model)
    k1 = cmath.sqrt(-(E + 1j * v1))
    k2 = cmath.sqrt(-(E - 1j * v1))
    if isinstance(model, ExpStep):
        return Kinematics(k1, k2, q=model.a * cmath.sqrt(1j * model.v1))
    if isinstance(model, LinearStep):
        # real positive scale: g^3 = (v1/a)^2 for either sign of v1
        g = (abs(model.v1) / model.a) ** (2.0 / 3.0)
        return Kinematics(k1, k2, g=g, h1=(E + 1j * model.v1) / g,
                          h2=(E - 1j * model.v1) / g)
    if isinstance(model, SquareWell):
        return Kinematics(k1, k2, p=cmath.sqrt(E + model.v0))
    return Kinematics(k1, k2)


# ----------------------------------------------------------------------
# Potentials
# ----------------------------------------------------------------------

def potential_value(model: ModelSpec, x: float) -> complex:
    """V(x).  Satisfies V(-x) = conj(V(x)) pointwise for every model."""
    if isinstance(model, Step):
        return -1j * model.v1 if x <= 0 else 1j * model.v1
    if isinstance(model, ExpStep):
        if x <= 0:
            return -1j * model.v1 * (1.0 - math.exp(2.0 * x / model.a))
        return 1j * model.v1 * (1.0 - math.exp(-2.0 * x / model.a))
    if isinstance(model, LinearStep):
        if x <= -model.a:
            return -1j * model.v1
        if x >= model.a:
            return 1j * model.v1
        return 1j * model.v1 * x / model.a
    if isinstance(model, SquareWell):
        if abs(x) <= model.a:
            return complex(-model.v0)
        return -1j * model.v1 if x < 0 else 1j * model.v1
    if isinstance(model, RosenMorse):
        sech = 1.0 / math.cosh(x)
        return -model.s * (model.s + 1.0) * sech * sech + 2j * model.c * math.tanh(x)
    raise TypeError(f"unknown model {model!r}")


def potential_on_grid(model: ModelSpec, x: np.ndarray) -> np.ndarray:
    """Vectorized V(x) for the ODE integrator."""
    x = np.asarray(x, dtype=float)
    if isinstance(model, Step):
        return np.where(x <= 0, -1j * model.v1, 1j * model.v1)
    if isinstance(model, ExpStep):
        left = -1j * model.v1 * (1.0 - np.exp(2.0 * np.minimum(x, 0.0) / model.a))
        right = 1j * model.v1 * (1.0 - np.exp(-2.0 * np.maximum(x, 0.0) / model.a))
        return np.where(x <= 0, left, right)
    if isinstance(model, LinearStep):
        core = 1j * model.v1 * np.clip(x / model.a, -1.0, 1.0)
        return core.astype(complex)
    if isinstance(model, SquareWell):
        out = np.where(x < 0, -1j * model.v1, 1j * model.v1)
        return np.where(np.abs(x) <= model.a, complex(-model.v0), out)
    if isinstance(model, RosenMorse):
        sech = 1.0 / np.cosh(x)
        return -model.s * (model.s + 1.0) * sech * sech + 2j * model.c * np.tanh(x)
    raise TypeError(f"unknown model {model!r}")


# ----------------------------------------------------------------------
# Characteristic functions (scalar, full accuracy)
# ----------------------------------------------------------------------

def char_step(E: complex, v1: float) -> complex:
    """2 k1 for the plain step; strictly positive real part for v1 != 0,
    so the model's spectrum is empty."""
    return 2.0 * cmath.sqrt(-(complex(E) + 1j * v1)).real + 0.0j


def char_expstep(E: complex, v1: float, a: float) -> complex:
    """J_{K2 a}(q) I'_{K1 a}(q) + I_{K1 a}(q) J'_{K2 a}(q), q = a sqrt(i v1)."""
    kin = kinematics(ExpStep(v1, a), E)
    n1, n2 = kin.k1 * a, kin.k2 * a
    q = kin.q
    return (specfun.bessel_j(n2, q) * specfun.bessel_i(n1, q, derivative=True)
            + specfun.bessel_i(n1, q) * specfun.bessel_j(n2, q, derivative=True))


def char_linear(E: complex, v1: float, a: float) -> complex:
    """Four-term Airy eliminant of the linear ramp matching conditions.

    Written with the chain-rule factor hp = dh/dx = -i v1/(a g); for
    v1 > 0, hp = -i sqrt(g) and the terms reduce to the usual
    -i sqrt(g) / -g coefficients.
    """
    kin = kinematics(LinearStep(v1, a), E)
    k1, k2, g, h1, h2 = kin.k1, kin.k2, kin.g, kin.h1, kin.h2
    hp = -1j * v1 / (a * g)
    ai1, dai1, bi1, dbi1 = specfun.airy_all(h1)
    ai2, dai2, bi2, dbi2 = specfun.airy_all(h2)
    return (k1 * k2 * (ai2 * bi1 - ai1 * bi2)
            - k1 * hp * (ai1 * dbi2 - bi1 * dai2)
            + k2 * hp * (dai1 * bi2 - dbi1 * ai2)
            + hp * hp * (dai1 * dbi2 - dbi1 * dai2))


def char_sqwell(E: complex, v0: float, v1: float, a: float) -> complex:
    """(K1 + K2) p cos(2pa) + (K1 K2 - p^2) sin(2pa), p = sqrt(E + v0).

    Odd in p, so the branch choice for p cannot move the roots.
    """
    kin = kinematics(SquareWell(v0, v1, a), E)
    p = kin.p
    return ((kin.k1 + kin.k2) * p * cmath.cos(2.0 * p * a)
            + (kin.k1 * kin.k2 - p * p) * cmath.sin(2.0 * p * a))


# ----------------------------------------------------------------------
# Characteristic functions (vectorized complex128, scan accuracy)
# ----------------------------------------------------------------------

_GRID_TERMS = 220


def _ln_gamma_right_half(z: np.ndarray) -> np.ndarray:
    """Vectorized Lanczos log-Gamma, valid for Re z >= 0.5 (all scan uses)."""
    zm1 = z - 1.0
    acc = np.full_like(z, specfun._LANCZOS[0])
    for i, c in enumerate(specfun._LANCZOS[1:], start=1):
        acc = acc + c / (zm1 + i)
    t = zm1 + specfun._LANCZOS_G + 0.5
    return specfun._LOG_SQRT_2PI + (zm1 + 0.5) * np.log(t) - t + np.log(acc)


def _bessel_sums_grid(nu: np.ndarray, z: complex, sign: int):
    """Series sums (value, d/dz accumulator) for an order array at fixed z."""
    q = sign * z * z / 4.0
    term = np.ones(nu.shape, dtype=complex)
    s_val = np.ones_like(term)
    s_der = nu.astype(complex).copy()
    for k in range(_GRID_TERMS):
        term = term * (q / ((k + 1) * (nu + k + 1)))
        s_val += term
        s_der += (nu + 2 * (k + 1)) * term
        if np.max(np.abs(term)) < 1e-20 * max(1.0, float(np.max(np.abs(s_val)))):
            break
    return s_val, s_der


def _char_expstep_grid(E: np.ndarray, v1: float, a: float) -> np.ndarray:
    q = a * cmath.sqrt(1j * v1)
    n1 = a * np.sqrt(-(E + 1j * v1))
    n2 = a * np.sqrt(-(E - 1j * v1))
    i_val, i_der = _bessel_sums_grid(n1, q, +1)
    j_val, j_der = _bessel_sums_grid(n2, q, -1)
    # f = pref_I * pref_J * (S_J S'_I + S_I S'_J)/q with combined prefactor
    expo = (n1 + n2) * cmath.log(q / 2.0) - _ln_gamma_right_half(n1 + 1.0) \
        - _ln_gamma_right_half(n2 + 1.0)
    core = (j_val * i_der + i_val * j_der) / q
    # clamp the exponent so corner cells overflow to inf rather than raise
    with np.errstate(over="ignore", invalid="ignore"):
        return np.exp(expo) * core


def _airy_all_grid(z: np.ndarray):
    """Vectorized Maclaurin (Ai, Ai', Bi, Bi'); scan-grade for |z| <~ 9."""
    w3 = z * z * z
    u = np.ones(z.shape, dtype=complex)
    v = z.astype(complex).copy()
    sf, sg = u.copy(), v.copy()
    sfp = np.zeros_like(u)
    sgp = np.ones_like(u)
    zsafe = np.where(z == 0, 1.0, z)
    for k in range(_GRID_TERMS):
        u = u * (w3 / ((3 * k + 2) * (3 * k + 3)))
        v = v * (w3 / ((3 * k + 3) * (3 * k + 4)))
        sf += u
        sg += v
        kk = 3 * (k + 1)
        sfp += u * (kk / zsafe)
        sgp += v * ((kk + 1) / zsafe)
        if max(float(np.max(np.abs(u))), float(np.max(np.abs(v)))) < 1e-22:
            break
    c1, c2 = 0.35502805388781723926, 0.25881940379280679841
    sqrt3 = math.sqrt(3.0)
    ai = c1 * sf - c2 * sg
    aip = c1 * sfp - c2 * sgp
    bi = sqrt3 * (c1 * sf + c2 * sg)
    bip = sqrt3 * (c1 * sfp + c2 * sgp)
    return ai, aip, bi, bip


def _char_linear_grid(E: np.ndarray, v1: float, a: float) -> np.ndarray:
    k1 = np.sqrt(-(E + 1j * v1))
    k2 = np.sqrt(-(E - 1j * v1))
    g = (abs(v1) / a) ** (2.0 / 3.0)
    hp = -1j * v1 / (a * g)
    h1 = (E + 1j * v1) / g
    h2 = (E - 1j * v1) / g
    ai1, dai1, bi1, dbi1 = _airy_all_grid(h1)
    ai2, dai2, bi2, dbi2 = _airy_all_grid(h2)
    return (k1 * k2 * (ai2 * bi1 - ai1 * bi2)
            - k1 * hp * (ai1 * dbi2 - bi1 * dai2)
            + k2 * hp * (dai1 * bi2 - dbi1 * ai2)
            + hp * hp * (dai1 * dbi2 - dbi1 * dai2))


def _char_sqwell_grid(E: np.ndarray, v0: float, v1: float, a: float) -> np.ndarray:
    k1 = np.sqrt(-(E + 1j * v1))
    k2 = np.sqrt(-(E - 1j * v1))
    p = np.sqrt(E + complex(v0))
    return (k1 + k2) * p * np.cos(2 * p * a) + (k1 * k2 - p * p) * np.sin(2 * p * a)


def _char_step_grid(E: np.ndarray, v1: float) -> np.ndarray:
    return 2.0 * np.sqrt(-(E + 1j * v1)).real + 0.0j


# ----------------------------------------------------------------------
# Dispatch
# ----------------------------------------------------------------------

def characteristic(model: ModelSpec) -> Optional[Callable]:
    """Scalar-or-array characteristic function for the model, or None.

    Scalar input returns the full-accuracy value; ndarray input runs the
    fast complex128 evaluation intended for grid scans and contours.
    """
    grid_fn = characteristic_grid(model)
    if grid_fn is None:
        return None
    if isinstance(model, Step):
        scalar_fn = lambda E: char_step(E, model.v1)
    elif isinstance(model, ExpStep):
        scalar_fn = lambda E: char_expstep(E, model.v1, model.a)
    elif isinstance(model, LinearStep):
        scalar_fn = lambda E: char_linear(E, model.v1, model.a)
    else:
        scalar_fn = lambda E: char_sqwell(E, model.v0, model.v1, model.a)

    def f(E):
        if isinstance(E, np.ndarray):
            return grid_fn(E)
        return scalar_fn(E)

    return f


def characteristic_grid(model: ModelSpec) -> Optional[Callable]:
    """Vectorized complex128 characteristic function (scan accuracy)."""
    if isinstance(model, Step):
        return lambda E: _char_step_grid(np.asarray(E, complex), model.v1)
    if isinstance(model, ExpStep):
        return lambda E: _char_expstep_grid(np.asarray(E, complex), model.v1, model.a)
    if isinstance(model, LinearStep):
        return lambda E: _char_linear_grid(np.asarray(E, complex), model.v1, model.a)
    if isinstance(model, SquareWell):
        return lambda E: _char_sqwell_grid(np.asarray(E, complex), model.v0, model.v1, model.a)
    return None


def swapped_characteristic(model: ModelSpec) -> Optional[Callable]:
    """Characteristic function with the decay-rate subscripts exchanged.

    Exchanging the subscripts consistently means reflecting the potential
    (x -> -x, i.e. v1 -> -v1): K1 <-> K2, h1 <-> h2, and the auxiliary
    argument q (or ramp slope) conjugates along.  The reflected potential
    is the complex conjugate of the original, so its spectrum is the
    conjugate set; conjugation closure then makes the root set coincide
    with the original, which tests verify at root level.  A literal
    subscripts-only exchange that leaves q fixed does NOT preserve the
    root set for the Bessel model.
    """
    if isinstance(model, ExpStep):
        return lambda E: char_expstep(E, -model.v1, model.a)
    if isinstance(model, LinearStep):
        return lambda E: char_linear(E, -model.v1, model.a)
    return None


# ----------------------------------------------------------------------
# Analytic spectra
# ----------------------------------------------------------------------

def hermitian_sqwell_levels(v0: float, a: float, count: int = 16) -> list[float]:
    """Bound states of the Hermitian well (v1 = 0) in (-v0, 0).

    Solves theta tan(theta) = sqrt(Theta^2 - theta^2) (even states) and
    -theta cot(theta) = sqrt(Theta^2 - theta^2) (odd states) by bisection
    on each monotone branch, theta = p a, Theta = a sqrt(v0).

    Returns at most ``count`` levels, fewer if the well holds fewer.
    """
    if v0 <= 0 or a <= 0:
        raise ValueError("well depth v0 and width a must be positive")
    big_theta = a * math.sqrt(v0)
    levels: list[float] = []
    n = 0
    while len(levels) < count:
        lo = n * math.pi / 2.0
        if lo >= big_theta:
            break
        hi = min((n + 1) * math.pi / 2.0, big_theta)

        if n % 2 == 0:
            g = lambda t: t * math.tan(t) - math.sqrt(max(big_theta**2 - t * t, 0.0))
        else:
            g = lambda t: -t / math.tan(t) - math.sqrt(max(big_theta**2 - t * t, 0.0))

        eps = 1e-12 * max(1.0, hi)
        a_, b_ = lo + eps, hi - eps
        ga, gb = g(a_), g(b_)
        if ga * gb > 0:
            n += 1
            continue
        for _ in range(200):
            mid = 0.5 * (a_ + b_)
            if g(a_) * g(mid) <= 0:
                b_ = mid
            else:
                a_ = mid
        theta = 0.5 * (a_ + b_)
        levels.append((theta / a) ** 2 - v0)
        n += 1
    return levels


def rosen_morse_levels(s: float, c: float) -> list[float]:
    """E_n = -(n-s)^2 + c^2/(n-s)^2 for integer 0 <= n < s (ascending)."""
    if s <= 0:
        return []
    out = []
    n = 0
    while n < s:
        d = n - s
        out.append(-(d * d) + (c * c) / (d * d))
        n += 1
    return out


# ----------------------------------------------------------------------
# CLI helpers
# ----------------------------------------------------------------------

_MODEL_NAMES = ("step", "expstep", "linear", "sqwell", "rosen-morse")


def model_from_name(name: str, *, v0=None, v1=None, a=None, s=None, c=None) -> ModelSpec:
    """Build a ModelSpec from CLI-style parameters; raises ValueError."""

    def need(**kw):
        missing = [k for k, v in kw.items() if v is None]
        if missing:
            raise ValueError(f"model '{name}' requires --{', --'.join(missing)}")

    if name == "step":
        need(V1=v1)
        return Step(v1)
    if name == "expstep":
        need(V1=v1, a=a)
        return ExpStep(v1, a)
    if name == "linear":
        need(V1=v1, a=a)
        return LinearStep(v1, a)
    if name == "sqwell":
        need(V0=v0, V1=v1, a=a)
        return SquareWell(v0, v1, a)
    if name == "rosen-morse":
        need(s=s, c=c)
        return RosenMorse(s, c)
    raise ValueError(f"unknown model '{name}', expected one of {', '.join(_MODEL_NAMES)}")
