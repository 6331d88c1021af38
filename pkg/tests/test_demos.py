import runpy
import sys
from pathlib import Path

import pytest

DEMOS = Path(__file__).resolve().parents[1] / "demos"


@pytest.mark.parametrize("script", ["geodesic_classes.py", "dipole_scattering.py", "finite_dipole_limit.py"])
def test_demo_runs(script, monkeypatch, capsys):
    monkeypatch.syspath_prepend(str(DEMOS))
    monkeypatch.setattr(sys, "argv", [script])
    runpy.run_path(str(DEMOS / script), run_name="__main__")
    assert capsys.readouterr().out.strip()


def test_demo_plot(tmp_path, monkeypatch, capsys):
    pytest.importorskip("matplotlib")
    monkeypatch.syspath_prepend(str(DEMOS))
    target = tmp_path / "g.png"
    monkeypatch.setattr(sys, "argv", ["geodesic_classes.py", "--plot", str(target)])
    runpy.run_path(str(DEMOS / "geodesic_classes.py"), run_name="__main__")
    assert target.stat().st_size > 0
