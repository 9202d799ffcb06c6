# Copyright 2026 The jrsp4 Authors
# SPDX-License-Identifier: Apache-2.0
"""Runs the CLI and validates every JSON document against the shipped schemas."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

cli, schema_dir = sys.argv[1], Path(sys.argv[2])
shares = ["--share1", "0.1,0.3,0.5,0.806225774829855", "--share2", "0.7,-0.2,0.4,0.5567764362830022"]

cases = [
    ("report", ["run", "--protocol", "p1", *shares, "--seed", "7", "--shots", "500"]),
    ("report", ["run", "--protocol", "p2", *shares, "--provenance", "transcribed", "--shots", "10"]),
    ("report", ["enumerate", "--protocol", "p3", *shares]),
    ("tables", ["tables", "--protocol", "p1"]),
    ("tables", ["tables", "--protocol", "p2", *shares]),
    ("tables", ["tables", "--protocol", "p3", "--seed", "4"]),
    ("audit", ["verify", "--seed", "3", "--draws", "4"]),
]

failures = 0
for schema_name, args in cases:
    schema = json.loads((schema_dir / f"{schema_name}.schema.json").read_text())
    proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    try:
        jsonschema.validate(json.loads(proc.stdout), schema)
        print(f"ok   {' '.join(args[:3])}")
    except jsonschema.ValidationError as e:
        print(f"FAIL {' '.join(args)}: {e.message}")
        failures += 1

sys.exit(1 if failures else 0)
