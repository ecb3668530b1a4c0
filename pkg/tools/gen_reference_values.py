"""Generate frozen reference values for the test suite with mpmath.

Everything here is computed with mpmath's own special functions and root
finder at 40 significant digits, fully independent of the ptsat
implementation.  Run from the repo root:

    python3 tools/gen_reference_values.py

and paste the printed dict into tests/reference_values.py.
"""

import mpmath as mp

mp.mp.dps = 40


def cplx(z):
    z = mp.mpc(z)
    return (float(z.real), float(z.imag))


def k1k2(E, V1):
    return mp.sqrt(-(E + 1j * V1)), mp.sqrt(-(E - 1j * V1))


def char_expstep(E, V1, a):
    K1, K2 = k1k2(E, V1)
    q = a * mp.sqrt(1j * V1)
    return (mp.besselj(K2 * a, q) * mp.besseli(K1 * a, q, derivative=1)
            + mp.besseli(K1 * a, q) * mp.besselj(K2 * a, q, derivative=1))


def char_linear(E, V1, a):
    K1, K2 = k1k2(E, V1)
    g = (V1 / mp.mpf(a)) ** mp.mpf(2) / 3 if False else (mp.mpf(V1) / a) ** (mp.mpf(2) / 3)
    h1 = (E + 1j * V1) / g
    h2 = (E - 1j * V1) / g
    sg = mp.sqrt(g)
    Ai1, Ai2 = mp.airyai(h1), mp.airyai(h2)
    Bi1, Bi2 = mp.airybi(h1), mp.airybi(h2)
    dAi1, dAi2 = mp.airyai(h1, derivative=1), mp.airyai(h2, derivative=1)
    dBi1, dBi2 = mp.airybi(h1, derivative=1), mp.airybi(h2, derivative=1)
    return (K1 * K2 * (Ai2 * Bi1 - Ai1 * Bi2)
            - 1j * K1 * sg * (dAi2 * Bi1 - Ai1 * dBi2)
            - 1j * K2 * sg * (dAi1 * Bi2 - Ai2 * dBi1)
            - g * (dAi1 * dBi2 - dAi2 * dBi1))


def char_sqwell(E, V0, V1, a):
    K1, K2 = k1k2(E, V1)
    p = mp.sqrt(E + V0)
    return (K1 + K2) * p * mp.cos(2 * p * a) + (K1 * K2 - p * p) * mp.sin(2 * p * a)


def refine(f, z0):
    z0 = mp.mpc(z0)
    try:
        return mp.findroot(f, z0, tol=1e-50)
    except Exception:  # noqa: BLE001
        trip = (z0, z0 + mp.mpc("1e-3", "2e-3"), z0 - mp.mpc("2e-3", "1e-3"))
        return mp.findroot(f, trip, solver="muller", tol=1e-50)


def hermitian_sqwell_levels(V0, a, count=8):
    """Bisection on the graphical branches of the textbook well conditions.

    Even states: theta*tan(theta) = sqrt(Theta^2 - theta^2)
    Odd states:  -theta*cot(theta) = sqrt(Theta^2 - theta^2)
    with theta = P*a, Theta = a*sqrt(V0), E = (theta/a)^2 - V0.
    """
    Theta = a * mp.sqrt(V0)
    levels = []
    n = 0
    while True:
        lo, hi = n * mp.pi / 2, (n + 1) * mp.pi / 2
        if lo >= Theta:
            break
        hi = min(hi, Theta)
        if n % 2 == 0:
            G = lambda t: t * mp.tan(t) - mp.sqrt(Theta**2 - t**2)
        else:
            G = lambda t: -t / mp.tan(t) - mp.sqrt(Theta**2 - t**2)
        glo = G(lo + mp.mpf("1e-30"))
        ghi = G(hi - mp.mpf("1e-30"))
        if glo * ghi > 0:
            n += 1
            continue
        a_, b_ = lo + mp.mpf("1e-30"), hi - mp.mpf("1e-30")
        for _ in range(200):
            mid = (a_ + b_) / 2
            if G(a_) * G(mid) <= 0:
                b_ = mid
            else:
                a_ = mid
        theta = (a_ + b_) / 2
        levels.append(float((theta / a) ** 2 - V0))
        n += 1
        if len(levels) >= count:
            break
    return levels


OUT = {}

# --- special function point values -------------------------------------
OUT["ln_gamma_2_3i"] = cplx(mp.loggamma(mp.mpc(2, 3)))
OUT["besselj_nu1p2i_z3m1i"] = cplx(mp.besselj(mp.mpc(1, 2), mp.mpc(3, -1)))
OUT["besselj_d_nu1p2i_z3m1i"] = cplx(mp.besselj(mp.mpc(1, 2), mp.mpc(3, -1), derivative=1))

# live ExpStep point: nu = K1*a at E = 2.28+4.80i, V1 = 5, a = 8, z = q
E_live = mp.mpc("2.28", "4.80")
K1_live, K2_live = k1k2(E_live, 5)
q_live = 8 * mp.sqrt(5j)
OUT["expstep_live_nu1"] = cplx(K1_live * 8)
OUT["expstep_live_nu2"] = cplx(K2_live * 8)
OUT["expstep_live_q"] = cplx(q_live)
OUT["besseli_live"] = cplx(mp.besseli(K1_live * 8, q_live))
OUT["besseli_d_live"] = cplx(mp.besseli(K1_live * 8, q_live, derivative=1))
OUT["besselj_live"] = cplx(mp.besselj(K2_live * 8, q_live))
OUT["besselj_d_live"] = cplx(mp.besselj(K2_live * 8, q_live, derivative=1))

OUT["airy_ai_1p5m2i"] = cplx(mp.airyai(mp.mpc("1.5", "-2")))
OUT["airy_aid_1p5m2i"] = cplx(mp.airyai(mp.mpc("1.5", "-2"), derivative=1))
OUT["airy_bi_1p5m2i"] = cplx(mp.airybi(mp.mpc("1.5", "-2")))
OUT["airy_bid_1p5m2i"] = cplx(mp.airybi(mp.mpc("1.5", "-2"), derivative=1))

# mid-range points exercising the extended-precision series band
OUT["besselj_nu0_z18"] = cplx(mp.besselj(0, mp.mpf(18)))
OUT["besselj_nu2m1i_z25p10i"] = cplx(mp.besselj(mp.mpc(2, -1), mp.mpc(25, 10)))
OUT["besseli_nu1p1i_z30m4i"] = cplx(mp.besseli(mp.mpc(1, 1), mp.mpc(30, -4)))
OUT["airy_ai_8"] = cplx(mp.airyai(8))
OUT["airy_bi_8"] = cplx(mp.airybi(8))
OUT["airy_ai_m12p3i"] = cplx(mp.airyai(mp.mpc(-12, 3)))
OUT["airy_bid_10m6i"] = cplx(mp.airybi(mp.mpc(10, -6), derivative=1))

# beyond the series radius: asymptotic regime
OUT["besselj_nu0p3p0p2i_z47p9i"] = cplx(mp.besselj(mp.mpc("0.3", "0.2"), mp.mpc(47, 9)))
OUT["besselj_d_nu0p3p0p2i_z47p9i"] = cplx(mp.besselj(mp.mpc("0.3", "0.2"), mp.mpc(47, 9), derivative=1))
OUT["besseli_nu1p2m0p7i_z44m6i"] = cplx(mp.besseli(mp.mpc("1.2", "-0.7"), mp.mpc(44, -6)))
OUT["besseli_d_nu1p2m0p7i_z44m6i"] = cplx(mp.besseli(mp.mpc("1.2", "-0.7"), mp.mpc(44, -6), derivative=1))
OUT["besselj_nu2_z60"] = cplx(mp.besselj(2, 60))
OUT["airy_ai_43m7i"] = cplx(mp.airyai(mp.mpc(43, -7)))
OUT["airy_aid_43m7i"] = cplx(mp.airyai(mp.mpc(43, -7), derivative=1))
OUT["airy_bi_41p3i"] = cplx(mp.airybi(mp.mpc(41, 3)))
OUT["airy_bid_41p3i"] = cplx(mp.airybi(mp.mpc(41, 3), derivative=1))
OUT["airy_ai_m45p2i"] = cplx(mp.airyai(mp.mpc(-45, 2)))
OUT["airy_bi_m45p2i"] = cplx(mp.airybi(mp.mpc(-45, 2)))
OUT["airy_aid_m45p2i"] = cplx(mp.airyai(mp.mpc(-45, 2), derivative=1))
OUT["airy_bid_m45p2i"] = cplx(mp.airybi(mp.mpc(-45, 2), derivative=1))

OUT["jacobi_n2"] = cplx(mp.jacobi(2, mp.mpc(1, 1), mp.mpc(1, -1), mp.mpf("0.3")))
OUT["jacobi_n3"] = cplx(mp.jacobi(3, mp.mpc("0.5", "2"), mp.mpc("-0.25", "1"), mp.mpc("0.4", "0.1")))

# --- characteristic-function regression values -------------------------
OUT["char_expstep_E1p1i"] = cplx(char_expstep(mp.mpc(1, 1), 5, 8))
OUT["char_linear_E2p0p5i"] = cplx(char_linear(mp.mpc(2, "0.5"), 5, 2))

# --- eigenvalue verification against figure captions -------------------
def root_set(f, guesses):
    roots = []
    for g in guesses:
        r = refine(f, g)
        roots.append(cplx(r))
    return roots

# two-piece exponential step, V1=5, a=8
f = lambda E: char_expstep(E, 5, 8)
OUT["roots_expstep"] = root_set(f, [mp.mpc("2.28", "4.80"), mp.mpc("3.54", "3.69"),
                                    mp.mpc("2.64", "2.09")])

# linear ramp, V1=5, a=2
f = lambda E: char_linear(E, 5, 2)
OUT["roots_linear"] = root_set(f, [mp.mpc("4.2959", "1.5653"), mp.mpf("6.5952"),
                                   mp.mpf("10.7814")])

# square well V0=0, V1=5: try both candidate widths for the ambiguous case
f2 = lambda E: char_sqwell(E, 0, 5, 2)
f8 = lambda E: char_sqwell(E, 0, 5, 8)
OUT["roots_sqwell_V0_0_a2"] = root_set(f2, [mp.mpf("0.4619"), mp.mpf("1.8754"),
                                            mp.mpf("4.3348"), mp.mpf("7.9631")])
try:
    OUT["roots_sqwell_V0_0_a8_near_0p46"] = [cplx(refine(f8, mp.mpf("0.4619")))]
except Exception as exc:  # noqa: BLE001
    OUT["roots_sqwell_V0_0_a8_near_0p46"] = str(exc)

# square well V0=5, V1=2, a=2: true spectrum (all real; starting points from a
# verified global grid scan over [-6,39]x[-4,4])
f = lambda E: char_sqwell(E, 5, 2, 2)
OUT["roots_sqwell_V0_5"] = root_set(f, [mp.mpf(x) for x in
                                        ("-4.581441", "-3.347076", "-1.364703", "1.455814",
                                         "5.711476", "11.338058", "18.235911", "26.382050",
                                         "35.769097")])

# square barrier V0=-5, V1=2, a=2: true spectrum (all real; scan over [0,45]x[-4,4])
f = lambda E: char_sqwell(E, -5, 2, 2)
OUT["roots_sqwell_V0_m5"] = root_set(f, [mp.mpf(x) for x in
                                         ("5.571605", "7.306532", "10.240846", "14.397866",
                                          "19.787004", "26.411092", "34.270669", "43.365605")])

OUT["char_sqwell_E10p3i"] = cplx(char_sqwell(mp.mpc(10, 3), 5, 2, 2))

# Hermitian limit reference (V0=5, a=2)
OUT["hermitian_levels_V05_a2"] = hermitian_sqwell_levels(5, 2)

# Rosen-Morse analytic levels, s=3.2, c=1
s, c = mp.mpf("3.2"), mp.mpf(1)
OUT["rosen_morse_levels_s3p2_c1"] = [float(-(s - n) ** 2 + c**2 / (s - n) ** 2) for n in range(4)]

# non-root magnitude pins
OUT["abs_char_expstep_E5p4i"] = float(abs(char_expstep(mp.mpc(5, 4), 5, 8)))


def fmt(v):
    if isinstance(v, tuple):
        return "(%.17e, %.17e)" % v
    if isinstance(v, float):
        return "%.17e" % v
    if isinstance(v, list):
        return "[" + ",\n     ".join(fmt(x) for x in v) + "]"
    return repr(v)


print("REFERENCE = {")
for k, v in OUT.items():
    print('    "%s":\n    %s,' % (k, fmt(v)))
print("}")
