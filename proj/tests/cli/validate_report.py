"""Validate `arrayctl analyze --json` output for every built-in example against the report schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema

EXAMPLES = [
    "watertanks",
    "watertanks-ring",
    "oscillators-a",
    "oscillators-b",
    "counterexample-23",
    "integrator-chain-ring",
]


def main() -> int:
    binary, schema_path, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    work.mkdir(parents=True, exist_ok=True)
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    for name in EXAMPLES:
        spec = work / f"{name}.json"
        subprocess.run([binary, "examples", name, "--out", str(spec)], check=True)
        for extra in ([], ["--pair", "1", "2", "--pair", "3", "1"]):
            run = subprocess.run([binary, "analyze", str(spec), "--json", *extra],
                                 check=True, capture_output=True, text=True)
            errors = list(validator.iter_errors(json.loads(run.stdout)))
            for error in errors:
                print(f"{name} {extra}: {error.json_path}: {error.message}")
            failures += len(errors)
            print(f"{'ok' if not errors else 'FAIL'}: {name} {' '.join(extra)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
