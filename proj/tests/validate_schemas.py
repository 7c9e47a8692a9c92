"""Validates CLI reports against the shipped JSON schemas.

Usage: validate_schemas.py <path to dcyc> <schemas directory>
"""
import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

RUNS = [
    ("set_report", ["set", "--points", "0"]),
    ("set_report", ["set", "--cantor", "geometric:lambda=1/3"]),
    ("energy_report", ["energy", "--modulus", "abs(1-zeta)"]),
    ("energy_report", ["energy", "--points", "0", "--weight", "power:p=1", "--gamma", "1"]),
    ("energy_report", ["energy", "--points", "0", "--power-alpha", "0.25"]),
    ("regularize_report", ["regularize", "--points", "0"]),
    ("certify_report", ["certify", "--points", "0"]),
    ("certify_report", ["certify", "--cantor", "geometric:lambda=1/3"]),
    ("fusion_report", ["fusion-test", "--count", "3"]),
]

DESCRIPTORS = [
    {"kind": "points", "angles": [0, 3.14159]},
    {"kind": "arcs", "arcs": [{"start": 1, "length": 0.5}]},
    {"kind": "cantor", "rule": "geometric", "ratio": 0.25, "generation": 3, "positions": True},
    {"kind": "cantor", "rule": "double_exp", "generation": 5},
    {"kind": "gap_sequence", "rule": "power", "exponent": 2, "count": 50},
]


def main():
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry()
    for s in schemas.values():
        registry = registry.with_resource(s["$id"], Resource.from_contents(s))

    failures = 0
    for name, args in RUNS:
        out = subprocess.run([cli, *args], capture_output=True, text=True)
        if out.returncode not in (0, 2):
            print(f"FAIL {' '.join(args)}: exit {out.returncode}\n{out.stderr}")
            failures += 1
            continue
        errors = list(Draft202012Validator(schemas[name], registry=registry).iter_errors(json.loads(out.stdout)))
        for e in errors[:3]:
            print(f"FAIL {' '.join(args)}: /{'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {' '.join(args)}")

    for d in DESCRIPTORS:
        errors = list(Draft202012Validator(schemas["set_descriptor"], registry=registry).iter_errors(d))
        failures += bool(errors)
        print(("FAIL " if errors else "ok   ") + json.dumps(d))
    bad = {"kind": "arcs", "arcs": [{"start": 0, "length": -1}]}
    if Draft202012Validator(schemas["set_descriptor"], registry=registry).is_valid(bad):
        print("FAIL negative arc length accepted")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
