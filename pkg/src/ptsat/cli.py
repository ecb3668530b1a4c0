"""Command-line interface: spectra, wavefunctions, contours, verification.

Everything is serialized as JSON or CSV with a fixed key order and no
timestamps, so repeated runs produce byte-identical files.  Complex numbers
are written as {"re": ..., "im": ...} objects (or paired columns in CSV).

Exit codes: 0 ok, 2 configuration error, 3 solver non-convergence,
4 residual validation failure, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, eigenfunctions, models, oracle, rootfinder, specfun

UNITS = "hbar=1, 2m=1"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_RESIDUAL = 4
EXIT_VERIFY = 5

# demo search windows bracketing every bundled reference case with margin
DEFAULT_RECTS = {
    "step": (-20.0, 20.0, -20.0, 20.0),
    "expstep": (0.0, 6.0, -6.0, 6.0),
    "linear": (0.0, 12.0, -4.0, 4.0),
    "sqwell": (-6.0, 45.0, -4.0, 4.0),
    "rosen-morse": (-12.0, 26.0, -2.0, 2.0),
}

AGREEMENT_TOL = 1e-3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    model: Optional[str] = None
    v0: Optional[float] = None
    v1: Optional[float] = None
    a: Optional[float] = None
    s: Optional[float] = None
    c: Optional[float] = None
    rect: Optional[tuple] = None          # (re_min, re_max, im_min, im_max)
    grid: Optional[tuple] = None          # (nx, ny)
    tol_f: Optional[float] = None
    tol_real: Optional[float] = None
    x_range: Optional[tuple] = None       # (lo, hi)
    x_points: Optional[int] = None
    energy: Optional[tuple] = None        # (re, im)
    analytic: bool = False
    force: bool = False
    oracle: bool = False
    out: Optional[str] = None
    format: str = "json"

    @classmethod
    def load(cls, path: Optional[str], args: argparse.Namespace) -> "RunConfig":
        """Config file first, command-line flags override."""
        known = {f.name for f in fields(cls)}
        data = {}
        if path:
            try:
                raw = json.loads(Path(path).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
            if not isinstance(raw, dict):
                raise ConfigError("config file must hold a flat JSON object")
            unknown = set(raw) - known
            if unknown:
                raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
            data.update(raw)
        for name in known:
            val = getattr(args, name, None)
            if val is not None and val is not False:
                data[name] = val
        cfg = cls(**data)
        if cfg.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, not {cfg.format!r}")
        for name, width in (("rect", 4), ("grid", 2), ("x_range", 2), ("energy", 2)):
            v = getattr(cfg, name)
            if v is not None:
                v = tuple(float(t) for t in v)
                if len(v) != width:
                    raise ConfigError(f"{name} needs {width} comma-separated values")
                setattr(cfg, name, v)
        return cfg

    def build_model(self) -> models.ModelSpec:
        if not self.model:
            raise ConfigError("--model is required")
        try:
            return models.model_from_name(self.model, v0=self.v0, v1=self.v1,
                                          a=self.a, s=self.s, c=self.c)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def search_rect(self) -> rootfinder.SearchRect:
        rect = self.rect or DEFAULT_RECTS.get(self.model or "", None)
        if rect is None:
            raise ConfigError("--rect is required for this model")
        nx, ny = self.grid or (rootfinder.DEFAULT_NX, rootfinder.DEFAULT_NY)
        try:
            return rootfinder.SearchRect(*rect, nx=int(nx), ny=int(ny))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def _cnum(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _model_block(cfg: RunConfig, model) -> dict:
    params = {}
    for key in ("v0", "v1", "a", "s", "c"):
        if hasattr(model, key):
            params[key.upper() if key.startswith("v") else key] = getattr(model, key)
    return {"tool_version": __version__, "units": UNITS,
            "model": cfg.model, "params": params}


def _roots_payload(roots: list[rootfinder.Root]) -> list[dict]:
    return [{"re": r.energy.real, "im": r.energy.imag, "kind": r.kind,
             "pair_id": r.pair_id, "residual": r.residual,
             "iterations": r.iterations} for r in roots]


def _write_text(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _json_dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _grid_scale(f, rect: rootfinder.SearchRect) -> float:
    _, F = rootfinder.grid_values(f, rect)
    absF = np.abs(F)
    ok = np.isfinite(absF) & (absF > 0)
    return float(np.median(absF[ok])) if ok.any() else 1.0


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_spectrum(cfg: RunConfig) -> int:
    model = cfg.build_model()
    doc = _model_block(cfg, model)

    if cfg.analytic:
        if isinstance(model, models.RosenMorse):
            levels = models.rosen_morse_levels(model.s, model.c)
        elif isinstance(model, models.SquareWell) and model.v1 == 0:
            levels = models.hermitian_sqwell_levels(model.v0, model.a)
        else:
            raise ConfigError("--analytic applies to rosen-morse or the "
                              "Hermitian square well (V1 = 0)")
        doc.update(source="analytic", rect=None,
                   roots=[{"re": e, "im": 0.0, "kind": "real", "pair_id": None,
                           "residual": 0.0, "iterations": 0} for e in levels])
        _write_text(cfg.out, _render_spectrum(cfg, doc))
        return EXIT_OK

    rect = cfg.search_rect()
    rect_doc = {"re_min": rect.re_min, "re_max": rect.re_max,
                "im_min": rect.im_min, "im_max": rect.im_max,
                "nx": rect.nx, "ny": rect.ny}
    if cfg.oracle:
        shoot = oracle.default_config(model)
        orect = oracle.default_rect(rect)
        roots = oracle.oracle_spectrum(model, orect, shoot,
                                       tol_f=cfg.tol_f, tol_real=cfg.tol_real)
        doc.update(source="oracle", rect=rect_doc,
                   shooting={"L": shoot.L, "n_steps": shoot.n_steps,
                             "matcher_x": shoot.matcher_x},
                   f_scale=None, roots=_roots_payload(roots))
    else:
        f = models.characteristic(model)
        if f is None:
            raise ConfigError(f"model '{cfg.model}' has no closed-form "
                              "characteristic function; use --analytic or --oracle")
        roots = rootfinder.find_spectrum(model, rect, tol_f=cfg.tol_f,
                                         tol_real=cfg.tol_real)
        doc.update(source="characteristic", rect=rect_doc,
                   f_scale=_grid_scale(f, rect), roots=_roots_payload(roots))
    _write_text(cfg.out, _render_spectrum(cfg, doc))
    return EXIT_OK


def _render_spectrum(cfg: RunConfig, doc: dict) -> str:
    if cfg.format == "json":
        return _json_dump(doc)
    lines = ["re,im,kind,pair_id,residual"]
    for r in doc["roots"]:
        pid = "" if r["pair_id"] is None else str(r["pair_id"])
        lines.append(f"{r['re']:.11e},{r['im']:.11e},{r['kind']},{pid},"
                     f"{r['residual']:.3e}")
    return "\n".join(lines) + "\n"


def _validate_energy(model, E: complex) -> tuple[bool, float]:
    """(is close to an eigenvalue, distance measure)."""
    if isinstance(model, models.RosenMorse):
        levels = models.rosen_morse_levels(model.s, model.c)
        if not levels:
            return False, float("inf")
        d = min(abs(E - l) for l in levels)
        return d < 1e-3 * max(1.0, abs(E)), d
    f = models.characteristic(model)
    if f is None:
        return True, 0.0
    root = rootfinder.refine_root(f, E, tol_f=float("inf"), max_iter=40)
    if root is None:
        return False, float("inf")
    d = abs(root.energy - E)
    return d < 1e-6 * max(1.0, abs(E)), d


def cmd_wavefunction(cfg: RunConfig) -> int:
    model = cfg.build_model()
    if cfg.energy is None:
        raise ConfigError("--energy re,im is required")
    E = complex(cfg.energy[0], cfg.energy[1])

    if not cfg.force:
        ok, dist = _validate_energy(model, E)
        if not ok:
            sys.stderr.write(
                f"energy {E} fails the eigenvalue residual check "
                f"(distance {dist:.2e}); pass --force to override\n")
            return EXIT_RESIDUAL

    if cfg.x_range is not None:
        n = int(cfg.x_points or eigenfunctions.GRID_POINTS)
        grid = np.linspace(cfg.x_range[0], cfg.x_range[1], n)
    elif cfg.x_points is not None:
        grid = eigenfunctions.default_grid(model, E, int(cfg.x_points))
    else:
        grid = None
    sample, report = eigenfunctions.assemble(model, E, grid)

    lines = ["x,re_psi,im_psi,abs_psi,current"]
    for k in range(sample.x.size):
        lines.append(",".join(f"{v:.11e}" for v in
                              (sample.x[k], sample.psi[k].real, sample.psi[k].imag,
                               abs(sample.psi[k]), sample.current[k])))
    _write_text(cfg.out, "\n".join(lines) + "\n")

    # for one member of a conjugate pair, also measure the mirror-ratio
    # property against the partner state and drop a sidecar report
    if abs(E.imag) > 1e-6 * max(1.0, abs(E.real)) and cfg.out:
        partner, _ = eigenfunctions.assemble(model, E.conjugate(),
                                             -sample.x[::-1])
        plus, minus = (sample, partner) if E.imag > 0 else (partner, sample)
        N, dev = eigenfunctions.reflection_property(plus, minus)
        sidecar = {"tool_version": __version__, "units": UNITS,
                   "energy": _cnum(E), "partner_energy": _cnum(E.conjugate()),
                   "ratio_median": N, "max_rel_dev": dev,
                   "match_report": {"joints": report.joints,
                                    "value_jump": report.value_jump,
                                    "derivative_jump": report.derivative_jump}}
        _write_text(str(Path(cfg.out).with_suffix(".reflection.json")),
                    _json_dump(sidecar))
    return EXIT_OK


def cmd_contours(cfg: RunConfig) -> int:
    model = cfg.build_model()
    f = models.characteristic(model)
    if f is None:
        raise ConfigError(f"model '{cfg.model}' has no characteristic function")
    rect = cfg.search_rect()
    cs = rootfinder.contour_polylines(f, rect)
    doc = _model_block(cfg, model)
    doc.update(rect={"re_min": rect.re_min, "re_max": rect.re_max,
                     "im_min": rect.im_min, "im_max": rect.im_max,
                     "nx": rect.nx, "ny": rect.ny},
               re_zero=[[_cnum(p) for p in line] for line in cs.re_zero],
               im_zero=[[_cnum(p) for p in line] for line in cs.im_zero])
    _write_text(cfg.out, _json_dump(doc))
    return EXIT_OK


def _match_root_sets(reference: list[complex], probe: list[complex]):
    """Greedy nearest matching with the per-root agreement tolerance."""
    pairs, unmatched_ref = [], []
    free = list(range(len(probe)))
    for zr in reference:
        tol = max(AGREEMENT_TOL, AGREEMENT_TOL * abs(zr))
        best, best_d = None, None
        for i in free:
            d = abs(probe[i] - zr)
            if best is None or d < best_d:
                best, best_d = i, d
        if best is not None and best_d <= tol:
            free.remove(best)
            pairs.append((zr, probe[best], best_d))
        else:
            unmatched_ref.append(zr)
    unmatched_probe = [probe[i] for i in free]
    return pairs, unmatched_ref, unmatched_probe


def cmd_verify(cfg: RunConfig) -> int:
    model = cfg.build_model()
    rect = cfg.search_rect()
    doc = _model_block(cfg, model)

    if isinstance(model, models.RosenMorse):
        reference = [complex(e) for e in
                     models.rosen_morse_levels(model.s, model.c)]
        source = "analytic"
    else:
        f = models.characteristic(model)
        roots = rootfinder.find_spectrum(model, rect, tol_f=cfg.tol_f,
                                         tol_real=cfg.tol_real)
        reference = [r.energy for r in roots]
        source = "characteristic"

    shoot = oracle.default_config(model)
    orect = oracle.default_rect(rect)
    oracle_roots = [r.energy for r in
                    oracle.oracle_spectrum(model, orect, shoot,
                                           tol_f=cfg.tol_f, tol_real=cfg.tol_real)]

    pairs, missed_ref, extra_oracle = _match_root_sets(reference, oracle_roots)
    ok = not missed_ref and not extra_oracle
    doc.update(source=source,
               rect={"re_min": rect.re_min, "re_max": rect.re_max,
                     "im_min": rect.im_min, "im_max": rect.im_max},
               tolerance=AGREEMENT_TOL,
               agreement=[{"reference": _cnum(a), "oracle": _cnum(b),
                           "delta": d} for a, b, d in pairs],
               unmatched_reference=[_cnum(z) for z in missed_ref],
               unmatched_oracle=[_cnum(z) for z in extra_oracle],
               passed=ok)
    _write_text(cfg.out, _json_dump(doc))
    return EXIT_OK if ok else EXIT_VERIFY


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=sorted(DEFAULT_RECTS))
    p.add_argument("--V0", dest="v0", type=float)
    p.add_argument("--V1", dest="v1", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--rect", type=lambda s: tuple(s.split(",")))
    p.add_argument("--grid", type=lambda s: tuple(s.split(",")))
    p.add_argument("--tol-f", dest="tol_f", type=float)
    p.add_argument("--tol-real", dest="tol_real", type=float)
    p.add_argument("--x-range", dest="x_range", type=lambda s: tuple(s.split(",")))
    p.add_argument("--x-points", dest="x_points", type=int)
    p.add_argument("--energy", type=lambda s: tuple(s.split(",")))
    p.add_argument("--analytic", action="store_true", default=None)
    p.add_argument("--force", action="store_true", default=None)
    p.add_argument("--oracle", action="store_true", default=None)
    p.add_argument("--out", type=str)
    p.add_argument("--config", type=str)
    p.add_argument("--format", choices=("json", "csv"))


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ptsat",
        description="Discrete spectra of PT-symmetric potentials with "
                    "imaginary asymptotic saturation")
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {"spectrum": cmd_spectrum, "wavefunction": cmd_wavefunction,
                "contours": cmd_contours, "verify": cmd_verify}
    for name in handlers:
        _add_common(sub.add_parser(name))

    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.load(args.config, args)
        return handlers[args.command](cfg)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG
    except (specfun.NonConvergenceError, OverflowError) as exc:
        sys.stderr.write(f"solver failed to converge: {exc}\n")
        return EXIT_CONVERGENCE
    except eigenfunctions.DegenerateCoefficientsError as exc:
        sys.stderr.write(f"degenerate matching system: {exc}\n")
        return EXIT_RESIDUAL


if __name__ == "__main__":
    sys.exit(main())
