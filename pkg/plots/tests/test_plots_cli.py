"""Command line wiring and exit codes."""

import numpy as np
import pytest
from plot_fixtures import (
    cosine_coeffs,
    diagnostics_text,
    dispersion_text,
    hierarchy_text,
    snapshot_bytes,
)

from hydroplots.cli import main


def test_cli_decay(tmp_path, capsys):
    tau = np.linspace(0.0, 10.0, 41)
    src = tmp_path / "d.csv"
    src.write_text(diagnostics_text(tau, 3.0 * np.exp(-0.7 * tau)))
    out = tmp_path / "d.png"
    assert main(["decay", str(src), "-o", str(out), "--title", "run 5"]) == 0
    assert out.exists()
    assert "c = 0.7" in capsys.readouterr().out


def test_cli_other_kinds(tmp_path, capsys):
    disp = tmp_path / "disp.csv"
    disp.write_text(dispersion_text([0.5, 1.0]))
    assert main(["dispersion", str(disp), "-o", str(tmp_path / "disp.png")]) == 0
    assert "2 modes" in capsys.readouterr().out

    snap = tmp_path / "s.snap"
    snap.write_bytes(snapshot_bytes(cosine_coeffs(16, 2)))
    assert main(["snapshot", str(snap), "-o", str(tmp_path / "s.png")]) == 0
    assert "2d, n=16" in capsys.readouterr().out

    hier = tmp_path / "h.csv"
    eps = np.array([0.2, 0.1])
    hier.write_text(hierarchy_text(eps, eps**2))
    assert main(["slope", str(hier), "-o", str(tmp_path / "h.png")]) == 0
    assert "slope = 2" in capsys.readouterr().out


def test_cli_schema_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text(diagnostics_text([0, 1], [2, 1], version=2))
    assert main(["decay", str(bad), "-o", str(tmp_path / "x.png")]) == 2
    assert "unsupported diagnostics schema v2" in capsys.readouterr().err

    assert main(["decay", str(tmp_path / "ghost.csv"), "-o", str(tmp_path / "x.png")]) == 2
    assert "no such file" in capsys.readouterr().err


def test_cli_requires_kind():
    with pytest.raises(SystemExit):
        main([])
