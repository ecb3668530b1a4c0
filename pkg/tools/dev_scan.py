"""Dev-only: global grid scans to establish the true root sets.

Square well uses numpy (elementary functions).  The exponential step uses
mpmath on a coarse grid plus tight Muller refinement, since its orders are
complex.
"""

import numpy as np
import mpmath as mp


def sqwell_grid(v0, v1, a, re_lo, re_hi, im_lo, im_hi, nx=500, ny=250):
    re = np.linspace(re_lo, re_hi, nx + 1)
    im = np.linspace(im_lo, im_hi, ny + 1)
    E = re[None, :] + 1j * im[:, None]
    K1 = np.sqrt(-(E + 1j * v1))
    K2 = np.sqrt(-(E - 1j * v1))
    p = np.sqrt(E + v0)
    F = (K1 + K2) * p * np.cos(2 * p * a) + (K1 * K2 - p * p) * np.sin(2 * p * a)
    return re, im, E, F


def candidates(re, im, F):
    fr, fi = F.real, F.imag
    out = []
    for j in range(F.shape[0] - 1):
        for i in range(F.shape[1] - 1):
            cr = np.array([fr[j, i], fr[j, i + 1], fr[j + 1, i], fr[j + 1, i + 1]])
            ci = np.array([fi[j, i], fi[j, i + 1], fi[j + 1, i], fi[j + 1, i + 1]])
            if cr.min() <= 0 <= cr.max() and ci.min() <= 0 <= ci.max():
                out.append(complex((re[i] + re[i + 1]) / 2, (im[j] + im[j + 1]) / 2))
    return out


def newton(f, z0, tol=1e-13, itmax=80):
    z = complex(z0)
    for _ in range(itmax):
        h = 1e-7 * max(1.0, abs(z))
        d = (f(z + h) - f(z - h)) / (2 * h)
        if d == 0:
            return None
        step = f(z) / d
        if abs(step) > 1.0:
            step *= 1.0 / abs(step)
        z -= step
        if abs(step) < tol * max(1.0, abs(z)):
            return z
    return None


def dedup(roots, tol=1e-6):
    out = []
    for r in roots:
        if r is None:
            continue
        if all(abs(r - o) > tol * max(1, abs(o)) for o in out):
            out.append(r)
    return sorted(out, key=lambda z: (round(z.real, 9), z.imag))


def scan_sqwell(v0, v1, a, box, label):
    re, im, E, F = sqwell_grid(v0, v1, a, *box)
    cands = candidates(re, im, F)

    def f(z):
        K1 = np.sqrt(-(z + 1j * v1))
        K2 = np.sqrt(-(z - 1j * v1))
        p = np.sqrt(z + v0)
        return (K1 + K2) * p * np.cos(2 * p * a) + (K1 * K2 - p * p) * np.sin(2 * p * a)

    roots = dedup([newton(f, c) for c in cands])
    roots = [r for r in roots if abs(f(r)) < 1e-6 * max(1.0, abs(f(r + 0.1)))]
    print(label, "->")
    for r in roots:
        print("   %.6f %+.6fi   |f|=%.2e" % (r.real, r.imag, abs(f(r))))


def scan_expstep(v1, a, box, label, nx=60, ny=60):
    mp.mp.dps = 15
    q = a * mp.sqrt(1j * v1)

    def f(E):
        K1 = mp.sqrt(-(E + 1j * v1))
        K2 = mp.sqrt(-(E - 1j * v1))
        return (mp.besselj(K2 * a, q) * mp.besseli(K1 * a, q, derivative=1)
                + mp.besseli(K1 * a, q) * mp.besselj(K2 * a, q, derivative=1))

    re = np.linspace(box[0], box[1], nx + 1)
    im = np.linspace(box[2], box[3], ny + 1)
    F = np.empty((ny + 1, nx + 1), complex)
    for j, y in enumerate(im):
        for i, x in enumerate(re):
            F[j, i] = complex(f(mp.mpc(float(x), float(y))))
    cands = candidates(re, im, F)
    print(label, "candidate cells:", ["%.2f%+.2fi" % (c.real, c.imag) for c in cands])
    mp.mp.dps = 30
    roots = []
    for c in cands:
        try:
            trip = (mp.mpc(c), mp.mpc(c) + mp.mpc("1e-3", "2e-3"), mp.mpc(c) - mp.mpc("2e-3", "1e-3"))
            r = mp.findroot(f, trip, solver="muller", tol=1e-40, maxsteps=60)
            roots.append(complex(r))
        except Exception as e:  # noqa: BLE001
            print("   refine fail at %.2f%+.2fi: %s" % (c.real, c.imag, e))
    for r in dedup(roots, 1e-5):
        print("   %.6f %+.6fi  |f|=%.2e" % (r.real, r.imag, abs(complex(f(mp.mpc(r))))))


if __name__ == "__main__":
    print("|f_expstep(3.54+3.69i)| =", end=" ")
    mp.mp.dps = 25
    q = 8 * mp.sqrt(5j)
    fE = lambda E: (mp.besselj(mp.sqrt(-(E - 5j)) * 8, q) * mp.besseli(mp.sqrt(-(E + 5j)) * 8, q, derivative=1)
                    + mp.besseli(mp.sqrt(-(E + 5j)) * 8, q) * mp.besselj(mp.sqrt(-(E - 5j)) * 8, q, derivative=1))
    print(mp.nstr(abs(fE(mp.mpc("3.54", "3.69"))), 6),
          " vs |f(2.54+3.69i)| =", mp.nstr(abs(fE(mp.mpc("2.54", "3.69"))), 6))

    scan_sqwell(5, 2, 2, (-6, 39, -4, 4), "sqwell V0=5 V1=2 a=2  [-6,39]x[-4,4]")
    scan_sqwell(-5, 2, 2, (0, 45, -4, 4), "sqwell V0=-5 V1=2 a=2  [0,45]x[-4,4]")
    scan_sqwell(0, 5, 2, (0, 9, -3, 3), "sqwell V0=0 V1=5 a=2  [0,9]x[-3,3]")
    scan_expstep(5, 8, (0.0, 6.0, -6.0, 6.0), "expstep V1=5 a=8  [0,6]x[-6,6]")
