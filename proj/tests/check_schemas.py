# Copyright 2026 The PhyDiT Authors
#
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

# Checks shipped fixtures and phydit output against core/schema with an
# off-the-shelf validator.
# usage: check_schemas.py <schema-dir> <test-data-dir> <phydit-binary> <scratch-dir>

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

schema_dir, data_dir, phydit, scratch = map(pathlib.Path, sys.argv[1:5])

schemas = {}
registry = Registry()
for name in ("sdd", "cpd", "td"):
    doc = json.loads((schema_dir / f"{name}.schema.json").read_text())
    Draft202012Validator.check_schema(doc)
    schemas[name] = doc
    resource = Resource.from_contents(doc)
    registry = registry.with_resources([(doc["$id"], resource), (f"{name}.schema.json", resource)])

def check(kind, path):
    errors = list(Draft202012Validator(schemas[kind], registry=registry).iter_errors(json.loads(path.read_text())))
    for e in errors:
        print(f"{path}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
    return not errors

ok = True
ok &= check("sdd", data_dir / "boiler.sdd.json")
ok &= check("cpd", data_dir / "combustion-control.cpd.json")
ok &= check("td", data_dir / "boiler-01.plain.td.json")
ok &= check("td", data_dir / "boiler.td.golden.json")

corpus = scratch / "corpus"
subprocess.run([phydit, "corpus", "gen", "--seed", "42", "-o", corpus], check=True, stdout=subprocess.DEVNULL)
sdds = sorted((corpus / "sdd").glob("*.json"))
cpds = sorted((corpus / "cpd").glob("*.json"))
assert len(sdds) == 34 and len(cpds) == 11, (len(sdds), len(cpds))
for p in sdds:
    ok &= check("sdd", p)
    td = scratch / (p.stem + ".td.json")
    subprocess.run([phydit, "synth", p, "-o", td], check=True)
    ok &= check("td", td)
for p in cpds:
    ok &= check("cpd", p)

# The schema must also reject what the parser rejects.
bad = json.loads((data_dir / "boiler.sdd.json").read_text())
bad["colour"] = "red"
if not list(Draft202012Validator(schemas["sdd"], registry=registry).iter_errors(bad)):
    print("schema accepted an unknown top-level key")
    ok = False

print("schemas: ok" if ok else "schemas: FAILED")
sys.exit(0 if ok else 1)
