"""Package-level checks: exports resolve and the demo scripts run."""

import pathlib
import subprocess
import sys

import pytest

import ruledsurf

DEMOS = sorted((pathlib.Path(__file__).parent.parent / "demos").glob("0*.py"))


def test_all_exports_resolve():
    assert ruledsurf.__all__ == sorted(ruledsurf.__all__)
    for name in ruledsurf.__all__:
        assert getattr(ruledsurf, name) is not None, name


def test_version_is_a_string():
    assert isinstance(ruledsurf.__version__, str)
    assert ruledsurf.__version__.count(".") == 2


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.name)
def test_demo_runs_clean(script):
    proc = subprocess.run([sys.executable, str(script)], capture_output=True,
                          text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip()
