"""
The command line
================

Every computation is reachable from ``ramify``.  Reports are
deterministic JSON by default; ``--csv`` and ``--pretty`` are also
available.  Run from the repository root.
"""

import json
import subprocess
import sys

def ramify(*args):
    res = subprocess.run([sys.executable, "-m", "ramify.cli", *args], capture_output=True, text=True)
    return res.returncode, res.stdout

# %%
code, out = ramify("different", "--tower", "docs/towers/cyclotomic3_2.json", "--cross-check")
doc = json.loads(out)
print("exit", code, " total v(delta) =", doc["total"])

# %%
code, out = ramify("tower-scan", "--family", "constant", "--p", "5", "--n", "1..3", "--csv")
print(out)

# %%
code, out = ramify("defect", "--problem", "docs/problems/dep.json", "--pretty")
print(out)

# %%
# usage errors exit with 64, invalid input with 2
print(ramify("bogus")[0], ramify("vg", "--group", "R")[0])
