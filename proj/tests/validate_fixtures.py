#!/usr/bin/env python3
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Validate every fixture against the automaton file schema."""

import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    fixtures = sorted(pathlib.Path(sys.argv[2]).glob("*.json"))
    for path in fixtures:
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        for err in errors:
            print(f"{path.name}: {err.message}")
        failures += bool(errors)
    print(f"{len(fixtures) - failures}/{len(fixtures)} fixtures valid")
    return 1 if failures or not fixtures else 0


if __name__ == "__main__":
    sys.exit(main())
