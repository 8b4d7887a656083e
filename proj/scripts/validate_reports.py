#!/usr/bin/env python3
"""Validate every saddle JSON report under a directory against schemas/<name>.schema.json."""
import json
import pathlib
import sys

import jsonschema

SCHEMAS = pathlib.Path(__file__).resolve().parent.parent / "schemas"


def main(root):
    reports = sorted(pathlib.Path(root).rglob("*.json"))
    if not reports:
        print(f"no reports under {root}")
        return 1
    bad = 0
    for path in reports:
        schema_path = SCHEMAS / f"{path.stem}.schema.json"
        if not schema_path.exists():
            print(f"FAIL {path}: no schema {schema_path.name}")
            bad += 1
            continue
        schema = json.loads(schema_path.read_text())
        try:
            jsonschema.validate(json.loads(path.read_text()), schema)
            print(f"ok   {path}")
        except jsonschema.ValidationError as e:
            print(f"FAIL {path}: {e.message} at {list(e.absolute_path)}")
            bad += 1
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1] if len(sys.argv) > 1 else "."))
