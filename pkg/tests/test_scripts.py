from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name,args,needle", [
    ("reproduce_table1.py", ["AN:2", "Finf"], "AN:2"),
    ("tensor_collapse.py", [], "Proven"),
    ("compactification_demo.py", ["2", "--bound", "13"], "isomorphic = True"),
])
def test_script_runs(name, args, needle):
    r = subprocess.run([sys.executable, str(SCRIPTS / name), *args],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0, r.stderr
    assert needle in r.stdout
