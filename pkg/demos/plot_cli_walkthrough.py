"""
Command-line walkthrough
========================

The same computations through the ``cayleypers`` command, run in-process.
Equivalent shell commands are printed before each step.
"""

import json
import tempfile
from pathlib import Path

from cayleypers.cli import dispatch
from cayleypers.io import fixture_path

work = Path(tempfile.mkdtemp())
fsc = work / "weighted4.fsc"


def run(*argv):
    print("$ cayleypers", " ".join(map(str, argv)))
    code = dispatch([str(a) for a in argv])
    print("exit status", code)


run("rips", "--points", fixture_path("weighted4.csv"), "--weights", "1,2,3", "--scales", "0,1,2,2.2360679",
    "-o", fsc)
run("present", "-i", fsc, "--field", "3", "-o", work / "present.json")
doc = json.loads((work / "present.json").read_text())
print(len(doc["generators"]), "generators,", len(doc["relations"]), "relations")

run("barcode", "-i", fixture_path("torus_i.fsc"), "--theory", "cohomology", "--dim", "1",
    "--svg", work / "bars.svg", "-o", work / "bars.json")
run("duality", "-i", fixture_path("torus_collapse.fsc"), "-o", work / "duality.json")
print("outputs in", work)
