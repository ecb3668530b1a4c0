"""Locate zeros of characteristic functions in a complex-energy rectangle.

Pipeline: evaluate f on a rectangular grid, flag every cell where both
Re f and Im f straddle zero, refine each cell center with a Newton /
Muller hybrid, deduplicate, apply the physical decay filter, classify
real roots versus conjugate pairs, and sort by ascending real part.
The same grid doubles as the source for marching-squares contour
extraction of the Re f = 0 and Im f = 0 level sets.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import models as _models

__all__ = [
    "SearchRect",
    "Root",
    "ContourSet",
    "scan_candidates",
    "refine_root",
    "locate_roots",
    "find_spectrum",
    "contour_polylines",
    "grid_values",
]

log = logging.getLogger(__name__)

DEFAULT_NX = 400
DEFAULT_NY = 200
DEFAULT_TOL_F = 1e-9          # on the median-normalized |f|
STEP_TOL = 1e-10              # relative size of a converged Newton step
DEDUP_TOL = 1e-6              # relative distance for merging refined roots
PAIR_TOL = 1e-8               # relative mismatch allowed between conjugate partners


@dataclass(frozen=True)
class SearchRect:
    """Rectangle [re_min, re_max] x [im_min, im_max] with an nx-by-ny cell grid."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int = DEFAULT_NX
    ny: int = DEFAULT_NY

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("rectangle must have positive extent")
        if self.nx < 8 or self.ny < 8:
            raise ValueError("grid resolution must be at least 8x8 cells")

    @property
    def cell(self) -> tuple[float, float]:
        return ((self.re_max - self.re_min) / self.nx,
                (self.im_max - self.im_min) / self.ny)

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return (self.re_min - margin <= z.real <= self.re_max + margin
                and self.im_min - margin <= z.imag <= self.im_max + margin)

    def doubled(self) -> "SearchRect":
        return replace(self, nx=2 * self.nx, ny=2 * self.ny)


@dataclass(frozen=True)
class Root:
    """A refined zero of a characteristic function."""

    energy: complex
    residual: float
    kind: str                       # "real" | "ccpe_plus" | "ccpe_minus"
    pair_id: Optional[int] = None
    iterations: int = 0


@dataclass
class ContourSet:
    """Zero-level polylines of Re f and Im f inside a search rectangle."""

    re_zero: list[list[complex]] = field(default_factory=list)
    im_zero: list[list[complex]] = field(default_factory=list)


# ----------------------------------------------------------------------
# Grid scan
# ----------------------------------------------------------------------

def grid_values(f: Callable, rect: SearchRect):
    """(nodes E, values f(E)) on the rect's (nx+1) x (ny+1) node grid."""
    re = np.linspace(rect.re_min, rect.re_max, rect.nx + 1)
    im = np.linspace(rect.im_min, rect.im_max, rect.ny + 1)
    E = re[None, :] + 1j * im[:, None]
    F = np.asarray(f(E), dtype=complex)
    bad = ~np.isfinite(F)
    if bad.any():
        log.info("masked %d non-finite grid nodes", int(bad.sum()))
    return E, F


def _candidate_cells(F: np.ndarray) -> np.ndarray:
    """Boolean (ny, nx) mask of cells whose corners straddle zero in Re and Im.

    A cell fires when one field changes sign strictly and the other at
    least touches zero.  Demanding one strict crossing keeps branch-cut
    half-lines (where a field is exactly +0.0 without crossing) from
    firing whole rows, while the relaxed other-field test still catches
    real-axis roots when the axis is a grid row (there Im f == 0 on the
    row and one-signed beside it).
    """
    finite = np.isfinite(F)
    ok = finite[:-1, :-1] & finite[:-1, 1:] & finite[1:, :-1] & finite[1:, 1:]

    def bounds(v):
        c = np.stack([v[:-1, :-1], v[:-1, 1:], v[1:, :-1], v[1:, 1:]])
        return c.min(axis=0), c.max(axis=0)

    re_min, re_max = bounds(F.real)
    im_min, im_max = bounds(F.imag)
    re_strict = (re_min < 0.0) & (re_max > 0.0)
    re_weak = (re_min <= 0.0) & (re_max >= 0.0)
    im_strict = (im_min < 0.0) & (im_max > 0.0)
    im_weak = (im_min <= 0.0) & (im_max >= 0.0)
    return ok & ((re_strict & im_weak) | (re_weak & im_strict))


def scan_candidates(f: Callable, rect: SearchRect) -> list[complex]:
    """Cell centers of every grid cell where Re f and Im f both change sign.

    Roots lying exactly on a grid node can evade the strict-crossing test;
    perturb the rectangle bounds if that degenerate alignment matters.
    """
    E, F = grid_values(f, rect)
    mask = _candidate_cells(F)
    dx, dy = rect.cell
    js, is_ = np.nonzero(mask)
    return [complex(E[j, i]) + complex(dx / 2.0, dy / 2.0) for j, i in zip(js, is_)]


def _seed_cells(mask: np.ndarray, F: np.ndarray) -> list[tuple[int, int]]:
    """Candidate cells thinned to the interesting ones per connected run.

    Isolated roots light up 1-3 neighboring cells and are kept whole.
    Branch-cut jump lines light up long runs; in those, only cells that are
    local minima of the summed corner magnitude survive (a root touching or
    inside the run is such a minimum, the run's bulk is not).
    """
    remaining = mask.copy()
    absF = np.abs(F)
    corner_mag = (absF[:-1, :-1] + absF[:-1, 1:] + absF[1:, :-1] + absF[1:, 1:])
    seeds: list[tuple[int, int]] = []
    ny, nx = mask.shape
    neighborhood = ((1, 0), (-1, 0), (0, 1), (0, -1),
                    (1, 1), (1, -1), (-1, 1), (-1, -1))
    for j0, i0 in zip(*np.nonzero(mask)):
        if not remaining[j0, i0]:
            continue
        stack = [(j0, i0)]
        remaining[j0, i0] = False
        comp = []
        while stack:
            j, i = stack.pop()
            comp.append((j, i))
            for dj, di in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                jj, ii = j + dj, i + di
                if 0 <= jj < ny and 0 <= ii < nx and remaining[jj, ii]:
                    remaining[jj, ii] = False
                    stack.append((jj, ii))
        if len(comp) <= 3:
            seeds.extend(comp)
            continue
        in_comp = set(comp)
        for j, i in comp:
            m = corner_mag[j, i]
            if all(m <= corner_mag[j + dj, i + di]
                   for dj, di in neighborhood if (j + dj, i + di) in in_comp):
                seeds.append((j, i))
    return seeds


# ----------------------------------------------------------------------
# Refinement
# ----------------------------------------------------------------------

def _muller_step(pts: list[complex], vals: list[complex]) -> Optional[complex]:
    (x0, x1, x2), (f0, f1, f2) = pts, vals
    if x1 == x2 or x0 == x2 or x0 == x1:
        return None
    q = (x2 - x1) / (x1 - x0)
    a = q * f2 - q * (1 + q) * f1 + q * q * f0
    b = (2 * q + 1) * f2 - (1 + q) ** 2 * f1 + q * q * f0
    c = (1 + q) * f2
    disc = cmath.sqrt(b * b - 4 * a * c)
    den = b + disc if abs(b + disc) > abs(b - disc) else b - disc
    if den == 0:
        return None
    return x2 - (x2 - x1) * (2 * c / den)


def refine_root(f: Callable, z0: complex, tol_f: float,
                max_iter: int = 80, rect: Optional[SearchRect] = None,
                step_tol: float = STEP_TOL) -> Optional[Root]:
    """Polish a candidate with Newton iteration (central-difference slope),
    falling back to Muller's method when the slope degenerates.

    Converged when |f| < tol_f and the last step is below step_tol
    relative; returns None on divergence or iteration exhaustion.
    step_tol defaults to the closed-form setting; noisy callables (the
    shooting mismatch) need it loosened to their energy jitter radius.
    """
    z = complex(z0)
    margin = 0.0
    if rect is not None:
        margin = 0.5 * max(rect.re_max - rect.re_min, rect.im_max - rect.im_min)
    step_cap = margin if margin > 0 else 10.0 * max(1.0, abs(z))

    history_z: list[complex] = [z]
    history_f: list[complex] = []
    muller_mode = False
    best = float("inf")
    stalls = 0
    fz = None
    for it in range(1, max_iter + 1):
        try:
            fz = complex(f(z))
        except ArithmeticError:
            return None
        if not (np.isfinite(fz.real) and np.isfinite(fz.imag)):
            return None
        history_f.append(fz)
        # bail out early on candidates that never contract (branch-cut
        # jump cells produce these); genuine roots improve steadily
        if abs(fz) < 0.5 * best:
            best = abs(fz)
            stalls = 0
        else:
            stalls += 1
            if stalls >= 12 and abs(fz) > 1e3 * tol_f:
                return None
        if it >= 25 and abs(fz) > 1e3 * tol_f:
            return None

        step = None
        if not muller_mode:
            h = 1e-6 * max(1.0, abs(z))
            try:
                d = (complex(f(z + h)) - complex(f(z - h))) / (2.0 * h)
            except ArithmeticError:
                return None
            if d != 0 and np.isfinite(d.real) and np.isfinite(d.imag):
                step = -fz / d
            if step is None or abs(step) > step_cap:
                muller_mode = True
        if muller_mode:
            if len(history_z) >= 3:
                nxt = _muller_step(history_z[-3:], history_f[-3:])
            else:
                nxt = None
            if nxt is None:
                # seed Muller with a slight perturbation
                nxt = z + (1e-4 + 1e-4j) * max(1.0, abs(z))
            step = nxt - z
            if abs(step) > step_cap:
                step *= step_cap / abs(step)

        if rect is not None and abs(fz) < tol_f \
                and abs(step) > 4.0 * math.hypot(*rect.cell):
            # below tolerance with a step spanning many cells: magnitude
            # collapse region, no localized zero here
            return None
        z_new = z + step
        if rect is not None and not rect.contains(z_new, margin):
            return None
        z = z_new
        history_z.append(z)
        if abs(fz) < tol_f and abs(step) < step_tol * max(1.0, abs(z)):
            kind = "real" if abs(z.imag) < 1e-6 * max(1.0, abs(z.real)) else \
                ("ccpe_plus" if z.imag > 0 else "ccpe_minus")
            return Root(energy=z, residual=abs(fz), kind=kind, iterations=it)
    return None


# ----------------------------------------------------------------------
# Full pipeline
# ----------------------------------------------------------------------

def _dedup(roots: list[Root]) -> list[Root]:
    kept: list[Root] = []
    for r in sorted(roots, key=lambda r: r.residual):
        if all(abs(r.energy - k.energy) > DEDUP_TOL * max(1.0, abs(k.energy))
               for k in kept):
            kept.append(r)
    return kept


def _classify_and_pair(roots: list[Root], f: Callable, tol_f: float,
                       tol_real: Optional[float], rect: SearchRect,
                       physical: Optional[Callable], scale: float,
                       step_tol: float = STEP_TOL) -> list[Root]:
    def is_real(z: complex) -> bool:
        tol = tol_real if tol_real is not None else 1e-6 * max(1.0, abs(z.real))
        return abs(z.imag) < tol

    reals = [replace(r, kind="real", pair_id=None) for r in roots if is_real(r.energy)]
    complexes = [r for r in roots if not is_real(r.energy)]

    # group conjugate partners; refine a clipped partner back in if missing
    used = [False] * len(complexes)
    pairs: list[tuple[Optional[Root], Optional[Root]]] = []
    for i, r in enumerate(complexes):
        if used[i]:
            continue
        used[i] = True
        target = r.energy.conjugate()
        partner = None
        for j in range(i + 1, len(complexes)):
            if not used[j] and abs(complexes[j].energy - target) \
                    < PAIR_TOL * max(1.0, abs(target)):
                partner = complexes[j]
                used[j] = True
                break
        if partner is None:
            cand = refine_root(f, target, tol_f, rect=rect, step_tol=step_tol)
            if cand is not None and (physical is None or physical(cand.energy)) \
                    and abs(cand.energy - target) < 1e-3 * max(1.0, abs(target)):
                partner = replace(cand, residual=abs(complex(f(cand.energy))) / scale)
            else:
                log.warning("unpaired complex root at %s", r.energy)
        plus, minus = (r, partner) if r.energy.imag > 0 else (partner, r)
        pairs.append((plus, minus))

    entries: list[tuple[Root, Optional[int], str]] = [(r, None, "real") for r in reals]
    for pidx, (plus, minus) in enumerate(pairs):
        if plus is not None:
            entries.append((plus, pidx, "ccpe_plus"))
        if minus is not None:
            entries.append((minus, pidx, "ccpe_minus"))
    entries.sort(key=lambda t: (t[0].energy.real, t[0].energy.imag))

    id_map: dict[int, int] = {}
    final: list[Root] = []
    for r, pidx, kind in entries:
        if pidx is None:
            final.append(r)
        else:
            if pidx not in id_map:
                id_map[pidx] = len(id_map) + 1
            final.append(replace(r, kind=kind, pair_id=id_map[pidx]))
    return final


def _batch_newton(f: Callable, z0s: list[complex], tol: float,
                  rect: SearchRect, max_iter: int = 90,
                  step_tol: float = STEP_TOL):
    """Newton on all candidates at once through the vectorized f.

    Returns (z, converged, iterations, needs_fallback); lanes whose slope
    degenerates while the value stays finite are handed to the scalar
    hybrid, all other non-converging lanes (overflow/underflow zones next
    to branch cuts, endless wanderers) are retired here.
    """
    n = len(z0s)
    z = np.array(z0s, dtype=complex)
    active = np.ones(n, bool)
    converged = np.zeros(n, bool)
    fallback = np.zeros(n, bool)
    best = np.full(n, np.inf)
    stalls = np.zeros(n, int)
    iters = np.zeros(n, int)
    margin = 0.5 * max(rect.re_max - rect.re_min, rect.im_max - rect.im_min)
    cell_diag = math.hypot(*rect.cell)

    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        za = z[idx]
        h = 1e-6 * np.maximum(1.0, np.abs(za))
        vals = np.asarray(f(np.concatenate([za, za + h, za - h])), complex)
        fz = vals[:idx.size]
        dz = (vals[idx.size:2 * idx.size] - vals[2 * idx.size:]) / (2.0 * h)
        iters[idx] += 1

        absf = np.abs(fz)
        # non-finite samples (overflow zone) or identically-zero value and
        # slope (underflow-flat zone): unrefinable, retire the lane
        hopeless = ~np.isfinite(absf) | ~np.isfinite(dz) | ((absf == 0) & (dz == 0))
        bad = ~hopeless & (dz == 0)
        improved = absf < 0.5 * best[idx]
        best[idx] = np.where(improved, absf, best[idx])
        stalls[idx] = np.where(improved, 0, stalls[idx] + 1)
        stalled = ((stalls[idx] >= 12) & (absf > 1e3 * tol)) | hopeless \
            | ((iters[idx] >= 25) & (absf > 1e3 * tol))

        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(bad, 0.0, -fz / np.where(dz == 0, 1.0, dz))
        # a lane already below tolerance whose Newton step spans many cells
        # sits in a magnitude-collapse region (|f| underflows there), not
        # near a localized zero: retire it
        flat = (absf < tol) & (np.abs(step) > 4.0 * cell_diag)
        # clip runaway steps (branch-cut jumps); the stall counter retires
        # lanes that keep bouncing without contracting
        big = np.abs(step) > margin
        step = np.where(big, step * (margin / np.where(big, np.abs(step), 1.0)), step)
        znew = za + step
        outside = ~np.array([rect.contains(w, margin) for w in znew])

        done = (absf < tol) & ~bad & ~hopeless \
            & (np.abs(step) < step_tol * np.maximum(1.0, np.abs(znew)))
        fb = bad & ~done
        dead = (stalled | outside | flat) & ~done & ~fb

        z[idx] = np.where(fb | dead, za, znew)
        converged[idx] |= done
        fallback[idx] |= fb
        active[idx] &= ~(done | fb | dead)
    return z, converged, iters, fallback


def _zoom_refine_batch(f: Callable, boxes: list[tuple[float, float, float, float]],
                       step_tol: float, max_levels: int = 14, m: int = 6):
    """Sign-based recursive subdivision of candidate boxes, all in lockstep.

    Each level evaluates f on an (m+1)x(m+1) sub-grid per box, keeps the
    sub-cell whose corners straddle zero in both fields with the smallest
    corner magnitude, and shrinks onto it.  Only the signs of Re f and
    Im f enter, so a positive real (even non-analytic) rescaling of an
    analytic f cannot mislead it -- the property the shooting mismatch
    needs, since unit-norm scaling warps its magnitudes but not its zero
    curves.  Returns per-box (center, levels_done, alive).
    """
    boxes = [list(b) for b in boxes]
    alive = [True] * len(boxes)
    levels = [0] * len(boxes)
    u = np.linspace(0.0, 1.0, m + 1)
    for _ in range(max_levels):
        work = [k for k, a in enumerate(alive) if a]
        if not work:
            break
        pts = []
        for k in work:
            re_lo, re_hi, im_lo, im_hi = boxes[k]
            ctr = complex(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi))
            if max(re_hi - re_lo, im_hi - im_lo) < step_tol * max(1.0, abs(ctr)):
                alive[k] = False
                continue
            re = re_lo + u * (re_hi - re_lo)
            im = im_lo + u * (im_hi - im_lo)
            pts.append(re[None, :] + 1j * im[:, None])
        work = [k for k in work if alive[k]]
        if not work:
            break
        F = np.asarray(f(np.stack(pts).ravel()), complex).reshape(len(work), m + 1, m + 1)
        for w, k in enumerate(work):
            Fk = F[w]
            mask = _candidate_cells(Fk)
            js, is_ = np.nonzero(mask)
            if js.size == 0:
                alive[k] = False
                continue
            absF = np.abs(Fk)
            corner = absF[:-1, :-1] + absF[:-1, 1:] + absF[1:, :-1] + absF[1:, 1:]
            best = int(np.argmin(corner[js, is_]))
            j, i = int(js[best]), int(is_[best])
            re_lo, re_hi, im_lo, im_hi = boxes[k]
            dre = (re_hi - re_lo) / m
            dim = (im_hi - im_lo) / m
            boxes[k] = [re_lo + i * dre, re_lo + (i + 1) * dre,
                        im_lo + j * dim, im_lo + (j + 1) * dim]
            levels[k] += 1
    centers = [complex(0.5 * (b[0] + b[1]), 0.5 * (b[2] + b[3])) for b in boxes]
    return centers, levels


def locate_roots(f: Callable, rect: SearchRect, tol_f: Optional[float] = None,
                 tol_real: Optional[float] = None,
                 physical: Optional[Callable] = None,
                 step_tol: float = STEP_TOL,
                 tol_floor: float = 0.0,
                 prelocalize: int = 0) -> list[Root]:
    """Scan + refine + dedup + filter + classify for a generic f.

    ``f`` must accept both ndarray (scan, fast path) and scalar
    (refinement, full accuracy) input.  Candidates are pre-refined with a
    batched Newton sweep through the vectorized path, then polished with
    the scalar hybrid; ``physical`` is an optional predicate on the
    refined energy, and roots failing it are dropped.
    """
    E, F = grid_values(f, rect)
    absF = np.abs(F)
    finite = np.isfinite(absF) & (absF > 0)
    scale = float(np.median(absF[finite])) if finite.any() else 1.0
    if not np.isfinite(scale) or scale == 0.0:
        scale = 1.0
    tol = max((tol_f if tol_f is not None else DEFAULT_TOL_F) * scale, tol_floor)

    mask = _candidate_cells(F)
    dx, dy = rect.cell
    seeds = _seed_cells(mask, F)
    candidates = [complex(E[j, i]) + complex(dx / 2.0, dy / 2.0) for j, i in seeds]

    if seeds and prelocalize > 0:
        # Sign-based subdivision shrinks each seed's neighborhood before
        # Newton takes over.  Shooting-type f have Newton basins of width
        # ~1/(L dK/dE) around each zero (the e^{KL} factors dominate the
        # log-derivative farther out), which can be narrower than a scan
        # cell; subdivision is immune to that and to any positive real
        # rescaling of an analytic function.
        boxes = [(rect.re_min + (i - 1) * dx, rect.re_min + (i + 2) * dx,
                  rect.im_min + (j - 1) * dy, rect.im_min + (j + 2) * dy)
                 for j, i in seeds]
        centers, levels = _zoom_refine_batch(f, boxes, step_tol,
                                             max_levels=prelocalize)
        candidates = [c if lv > 0 else candidates[k]
                      for k, (c, lv) in enumerate(zip(centers, levels))]

    refined: list[Root] = []
    if candidates:
        zb, conv, iters, fb = _batch_newton(f, candidates, tol, rect,
                                            step_tol=step_tol)
        for k, z0 in enumerate(candidates):
            root = None
            if conv[k]:
                # polish through the full-accuracy scalar path
                root = refine_root(f, complex(zb[k]), tol, max_iter=12, rect=rect,
                                   step_tol=step_tol)
                if root is not None:
                    root = replace(root, iterations=int(iters[k]) + root.iterations)
            if root is None and fb[k]:
                # slope degenerated in the batch sweep: full scalar hybrid
                root = refine_root(f, z0, tol, rect=rect, step_tol=step_tol)
            if root is None:
                continue
            res = abs(complex(f(root.energy)))
            if res >= tol:
                continue
            refined.append(replace(root, residual=res / scale))

    refined = _dedup(refined)
    if physical is not None:
        kept = []
        for r in refined:
            if physical(r.energy):
                kept.append(r)
            else:
                log.debug("rejected non-decaying branch artifact at %s", r.energy)
        refined = kept

    return _classify_and_pair(refined, f, tol, tol_real, rect, physical, scale,
                              step_tol=step_tol)


def _decay_filter(model: _models.ModelSpec) -> Callable:
    # Strictly positive decay rates, with a relative epsilon so roots that
    # converged onto a branch cut (k -> +0 there) are rejected reliably.
    def ok(E: complex) -> bool:
        kin = _models.kinematics(model, E)
        return (kin.k1.real > 1e-9 * max(1.0, abs(kin.k1))
                and kin.k2.real > 1e-9 * max(1.0, abs(kin.k2)))
    return ok


def find_spectrum(model: _models.ModelSpec, rect: SearchRect,
                  tol_f: Optional[float] = None,
                  tol_real: Optional[float] = None) -> list[Root]:
    """All physical zeros of the model's characteristic function in rect."""
    f = _models.characteristic(model)
    if f is None:
        raise ValueError(f"model {model!r} has no characteristic function")
    return locate_roots(f, rect, tol_f=tol_f, tol_real=tol_real,
                        physical=_decay_filter(model))


# ----------------------------------------------------------------------
# Marching-squares contours
# ----------------------------------------------------------------------

# per-case list of (edge, edge) segments; edges: 0 bottom, 1 right, 2 top, 3 left
_MS_SEGMENTS = {
    0: [], 15: [],
    1: [(3, 0)], 14: [(3, 0)],
    2: [(0, 1)], 13: [(0, 1)],
    3: [(3, 1)], 12: [(3, 1)],
    4: [(1, 2)], 11: [(1, 2)],
    6: [(0, 2)], 9: [(0, 2)],
    7: [(3, 2)], 8: [(3, 2)],
    5: None, 10: None,  # saddles, resolved by the corner average
}


def _interp(p0, p1, v0, v1):
    t = 0.5 if v0 == v1 else v0 / (v0 - v1)
    t = min(max(t, 0.0), 1.0)
    return p0 + t * (p1 - p0)


def _cell_segments(corners, values):
    """Segments (pairs of complex points) of the zero set inside one cell.

    corners/values ordered: bottom-left, bottom-right, top-right, top-left.
    """
    idx = 0
    for bit, v in enumerate(values):
        if v >= 0.0:
            idx |= 1 << bit
    spec = _MS_SEGMENTS.get(idx, [])
    if spec is None:  # ambiguous saddle, resolved by the corner average
        center = sum(values) / 4.0
        positive_isolates = [(0, 1), (3, 2)] if idx == 5 else [(3, 0), (1, 2)]
        negative_isolates = [(3, 0), (1, 2)] if idx == 5 else [(0, 1), (3, 2)]
        spec = positive_isolates if center >= 0 else negative_isolates

    edge_pts = {}
    edges = ((0, 1), (1, 2), (2, 3), (3, 0))  # corner index pairs per edge
    for e, (i, j) in enumerate(edges):
        vi, vj = values[i], values[j]
        if (vi >= 0) != (vj >= 0) or vi == 0 or vj == 0:
            edge_pts[e] = _interp(corners[i], corners[j], vi, vj)
    segs = []
    for e1, e2 in spec:
        if e1 in edge_pts and e2 in edge_pts:
            segs.append((edge_pts[e1], edge_pts[e2]))
    return segs


def _chain_segments(segs: list[tuple[complex, complex]], snap: float) -> list[list[complex]]:
    """Join segments sharing endpoints into polylines."""
    def key(z: complex):
        return (round(z.real / snap), round(z.imag / snap))

    adj: dict[tuple[int, int], list[int]] = {}
    for n, (p, q) in enumerate(segs):
        adj.setdefault(key(p), []).append(n)
        adj.setdefault(key(q), []).append(n)

    unused = set(range(len(segs)))
    polylines = []
    while unused:
        n = unused.pop()
        p, q = segs[n]
        line = [p, q]
        for grow_end in (True, False):
            while True:
                tip = line[-1] if grow_end else line[0]
                nxt = None
                for m in adj.get(key(tip), []):
                    if m in unused:
                        nxt = m
                        break
                if nxt is None:
                    break
                unused.discard(nxt)
                a, b = segs[nxt]
                ext = b if key(a) == key(tip) else a
                if grow_end:
                    line.append(ext)
                else:
                    line.insert(0, ext)
        polylines.append(line)
    return polylines


def contour_polylines(f: Callable, rect: SearchRect) -> ContourSet:
    """Zero-set polylines of Re f and Im f by marching squares with linear
    edge interpolation on the scan grid."""
    E, F = grid_values(f, rect)
    dx, dy = rect.cell
    snap = 1e-9 * max(dx, dy)
    out = ContourSet()
    for field_vals, dest in ((F.real, out.re_zero), (F.imag, out.im_zero)):
        segs = []
        finite = np.isfinite(field_vals)
        for j in range(rect.ny):
            for i in range(rect.nx):
                if not (finite[j, i] and finite[j, i + 1]
                        and finite[j + 1, i] and finite[j + 1, i + 1]):
                    continue
                vals = (field_vals[j, i], field_vals[j, i + 1],
                        field_vals[j + 1, i + 1], field_vals[j + 1, i])
                if (min(vals) > 0.0) or (max(vals) < 0.0):
                    continue
                corners = (E[j, i], E[j, i + 1], E[j + 1, i + 1], E[j + 1, i])
                segs.extend(_cell_segments(corners, vals))
        dest.extend(_chain_segments(segs, snap))
    return out
