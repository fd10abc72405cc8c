#!/usr/bin/env python3
"""Build and run the three canonical scenarios against the engine.

Writes scenario JSON files for the three standard Fujiki constants on a
hyperbolic degree-2 pair (c_X = 3 and 9 in dimension 4, c_X = 945 in
dimension 10) and prints each resulting report summary.
"""

import json
import pathlib
import sys

from hk4.cli import run_scenario

SCENARIOS = {
    "hyperbolic_cx3": {
        "n": 2,
        "rank": 2,
        "gram": [[0, 1], [1, 0]],
        "l": [1, 0],
        "m": [0, 1],
        "overrides": {"c_X": "3"},
    },
    "hyperbolic_cx9": {
        "n": 2,
        "rank": 2,
        "gram": [[0, 1], [1, 0]],
        "l": [1, 0],
        "m": [0, 1],
        "overrides": {"c_X": "9"},
    },
    "dim10_cx945": {
        "n": 5,
        "rank": 2,
        "gram": [[0, 1], [1, 0]],
        "l": [1, 0],
        "m": [0, 1],
        "overrides": {"c_X": "945"},
    },
}

outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "scenarios")
outdir.mkdir(exist_ok=True)
for name, doc in SCENARIOS.items():
    path = outdir / f"{name}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    out = run_scenario(doc)
    if "classification" in out:
        verdict = out["classification"]["verdict"]
        extra = f"classification: {verdict}"
    else:
        rr = out["principal_case"]["rr"].pretty() if out["principal_case"] else "-"
        extra = f"principal case, P_RR(T) = {rr}"
    print(f"{path}: n={out['n']} a={out['a']} -> {extra}")
