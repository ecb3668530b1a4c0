"""Figure scripts consume the solver CLI's files and render panels.

The inputs are produced by invoking the installed ptsat command line in a
subprocess -- the only interface these scripts are allowed to touch.
"""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from ptsat_figures import panels, reproduce, schema

LINEAR = ["--model", "linear", "--V1", "5", "--a", "2",
          "--rect", "0,12,-4,4", "--grid", "120,60"]


def run_ptsat(*argv):
    proc = subprocess.run([sys.executable, "-m", "ptsat.cli", *argv],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="module")
def solver_outputs(tmp_path_factory):
    d = tmp_path_factory.mktemp("data")
    run_ptsat("contours", *LINEAR, "--out", str(d / "contours.json"))
    run_ptsat("spectrum", *LINEAR, "--out", str(d / "spectrum.json"))
    run_ptsat("wavefunction", "--model", "linear", "--V1", "5", "--a", "2",
              "--energy", "6.595240855614243,0", "--x-points", "601",
              "--out", str(d / "state.csv"))
    return d


def test_contour_panel_markers_match_spectrum(solver_outputs, tmp_path):
    spec = panels.FigureSpec(output=tmp_path / "panel.png",
                             contours=solver_outputs / "contours.json",
                             spectrum=solver_outputs / "spectrum.json",
                             title="demo")
    result = panels.render_contour_panel(spec)
    assert result.output.exists() and result.output.stat().st_size > 0
    # marker positions coincide with the spectrum file's roots
    doc = json.loads((solver_outputs / "spectrum.json").read_text())
    roots = np.array([complex(r["re"], r["im"]) for r in doc["roots"]])
    assert result.markers.shape == roots.shape
    assert np.max(np.abs(np.sort_complex(result.markers) - np.sort_complex(roots))) == 0.0


def test_contour_panel_markers_near_contour_crossings(solver_outputs, tmp_path):
    contours = schema.load_contours(solver_outputs / "contours.json")
    spectrum = schema.load_spectrum(solver_outputs / "spectrum.json")
    vertices = np.concatenate([line for group in ("re_zero", "im_zero")
                               for line in contours[group]])
    for z in spectrum["energies"]:
        assert np.min(np.abs(vertices - z)) < 0.2  # within ~a grid cell


def test_wavefunction_panel(solver_outputs, tmp_path):
    spec = panels.FigureSpec(output=tmp_path / "wf.png",
                             wavefunctions=[(solver_outputs / "state.csv", "E2")])
    result = panels.render_wavefunction_panel(spec)
    assert result.output.exists() and result.output.stat().st_size > 0


def test_schema_rejects_missing_key(solver_outputs, tmp_path):
    doc = json.loads((solver_outputs / "spectrum.json").read_text())
    del doc["roots"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    with pytest.raises(schema.SchemaError):
        schema.load_spectrum(bad)


def test_schema_rejects_renamed_column(solver_outputs, tmp_path):
    text = (solver_outputs / "state.csv").read_text().replace("abs_psi", "modulus")
    bad = tmp_path / "bad.csv"
    bad.write_text(text)
    with pytest.raises(schema.SchemaError):
        schema.load_wavefunction(bad)


def test_reproduce_cli_abort_is_nonzero(solver_outputs, tmp_path):
    manifest = {"figures": [{"name": "broken", "panels": [
        {"type": "contour", "contours": "missing.json",
         "spectrum": "missing.json", "output": "x.png"}]}]}
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    code = reproduce.main(["--manifest", str(mpath), "--outdir", str(tmp_path)])
    assert code == 1


def test_reproduce_end_to_end(tmp_path):
    # a self-contained mini manifest exercising generate + both panel kinds
    manifest = {"figures": [{
        "name": "mini",
        "generate": [
            ["contours", *LINEAR, "--out", "c.json"],
            ["spectrum", *LINEAR, "--out", "s.json"],
            ["wavefunction", "--model", "linear", "--V1", "5", "--a", "2",
             "--energy", "6.595240855614243,0", "--x-points", "401",
             "--out", "w.csv"],
        ],
        "panels": [
            {"type": "contour", "contours": "c.json", "spectrum": "s.json",
             "output": "mini_a.png"},
            {"type": "wavefunction", "inputs": [["w.csv", "state"]],
             "output": "mini_b.png"},
        ],
    }]}
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    code = reproduce.main(["--manifest", str(mpath), "--outdir", str(tmp_path),
                           "--generate"])
    assert code == 0
    assert (tmp_path / "mini_a.png").exists()
    assert (tmp_path / "mini_b.png").exists()
    assert (tmp_path / "data" / "s.json").exists()


def test_bundled_manifest_loads():
    doc = reproduce._load_manifest(None)
    names = [f["name"] for f in doc["figures"]]
    assert len(names) == 6 and len(set(names)) == 6
    for fig in doc["figures"]:
        assert fig["panels"], fig["name"]
