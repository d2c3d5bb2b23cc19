"""Runs the CLI with --json on a spread of inputs and validates every
document against the output schema. Usage: check_cli_schema.py MINLOB SCHEMA"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    minlob, schema_path = str(Path(sys.argv[1]).resolve()), Path(sys.argv[2])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    tmp = Path(tempfile.mkdtemp(prefix="minlob_schema_"))
    files = {
        "path.txt": "p digraph 4 3\na 1 2\na 2 3\na 3 4\n",
        "split.txt": "p digraph 3 2\na 1 3\na 2 3\n",
        "digon.txt": "p digraph 2 2\na 1 2\na 2 1\n",
        "one.cnf": "p cnf 3 1\n1 -2 3 0\n",
        "branching.cert": "b root 1\nb 1 2\nb 2 3\nb 3 4\n",
        "bad.dpd": "bag 1 1\nbag 2 2\n",
        "good.dpd": "bag 1 1 2\n",
        "good.arb": "node 1 1\nnode 2 2\ntarc 1 2 1\n",
        "bad.arb": "node 1 1\nnode 2 2\ntarc 1 2\n",
    }
    for name, text in files.items():
        (tmp / name).write_text(text)

    runs = [
        (["solve", "path.txt"], 0),
        (["solve", "split.txt"], 1),
        (["check", "-k", "1", "path.txt"], 0),
        (["check", "-k", "1", "split.txt"], 1),
        (["reduce", "one.cnf", "--dpd", "one.dpd", "--certify"], 0),
        (["reduce", "one.cnf"], 0),
        (["dpw", "digon.txt"], 0),
        (["certify", "path.txt", "branching.cert"], 0),
        (["certify", "digon.txt", "bad.dpd"], 1),
        (["certify", "digon.txt", "good.dpd"], 0),
        (["certify", "digon.txt", "good.arb"], 0),
        (["certify", "digon.txt", "bad.arb"], 1),
        (["gen", "--n", "6", "--density", "0.4", "--seed", "3"], 0),
    ]
    failures = 0
    for args, expected in runs:
        proc = subprocess.run([minlob, "--json", *args], cwd=tmp, capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != expected:
            print(f"FAIL {label}: exit {proc.returncode}, expected {expected}\n{proc.stderr}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failures += 1
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
