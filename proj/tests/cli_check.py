#!/usr/bin/env python3
"""End-to-end checks of the parkfn binary: exit codes, outputs and schema validity.

Usage: cli_check.py PATH_TO_PARKFN PATH_TO_SCHEMA
"""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BINARY = sys.argv[1]
with open(sys.argv[2], encoding="utf-8") as fh:
    VALIDATOR = jsonschema.Draft202012Validator(json.load(fh))

failures = []


def run(*args, env=None):
    merged = dict(os.environ)
    merged.pop("PARKFN_CAP", None)
    merged.update(env or {})
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True, env=merged, check=False)
    return proc.returncode, proc.stdout, proc.stderr


def expect(name, condition, detail=""):
    print(("PASS " if condition else "FAIL ") + name + (f": {detail}" if detail and not condition else ""))
    if not condition:
        failures.append(name)


def run_json(name, *args, code=0, env=None):
    rc, out, err = run(*args, env=env)
    expect(f"{name} exit {code}", rc == code, f"got {rc}, stderr {err.strip()}")
    try:
        doc = json.loads(out)
    except json.JSONDecodeError as exc:
        expect(f"{name} json", False, str(exc))
        return {}
    errors = sorted(VALIDATOR.iter_errors(doc), key=lambda e: e.path)
    expect(f"{name} schema", not errors, "; ".join(e.message for e in errors[:3]))
    return doc


doc = run_json("check worked example", "check", "9 12 : 6 1 4 1 8 3 6 11 8")
expect("check worked example holes", doc.get("holes") == [5, 10, 12], doc.get("holes"))
expect("check worked example specification",
       doc.get("specification") == [2, 0, 1, 1, 0, 2, 0, 2, 0, 0, 1, 0], doc.get("specification"))

doc = run_json("check invalid", "check", "2 2 : 2 2", code=1)
expect("check invalid fields", doc.get("valid") is False and doc.get("failingCar") == 2, doc)

doc = run_json("check out of range", "check", "2 2 : 1 3", code=1)
expect("check out of range car", doc.get("failingCar") == 2, doc)

doc = run_json("check displacement", "check", "5 5 : 1 3 5 1 3")
expect("check displacement value", doc.get("disp") == 2, doc.get("disp"))

doc = run_json("check profile", "check", "3 4 : 1 1 3", "--profile-grid", "4")
expect("check profile shape", len(doc.get("profiles", [])) == len(doc.get("segments", [])), doc.get("profiles"))

rc, _, _ = run("check", "5 5 : 1 x")
expect("check parse error exit 2", rc == 2, rc)
rc, _, _ = run("check", "3 5 : 1 2")
expect("check count mismatch exit 2", rc == 2, rc)

rc, out, _ = run("count", "3", "5")
expect("count 3 5", rc == 0 and out.strip() == "108", out)
rc, out, _ = run("count", "0", "7")
expect("count 0 7", rc == 0 and out.strip() == "1", out)
doc = run_json("count first json", "count", "3", "5", "--first", "2", "--cross-check", "--format", "json")
expect("count first cross-check", doc.get("agrees") is True and doc.get("count") == doc.get("enumerated"), doc)
doc = run_json("count holes json", "count", "3", "5", "--holes", "2,4", "--cross-check", "--format", "json")
expect("count holes cross-check", doc.get("agrees") is True, doc)
rc, _, _ = run("count", "5", "3")
expect("count m > n exit 2", rc == 2, rc)

rc, out, _ = run("enumerate", "2", "2")
expect("enumerate 2 2", rc == 0 and out.split("\n")[:-1] == ["2 2 : 1 1", "2 2 : 1 2", "2 2 : 2 1"], out)
doc = run_json("enumerate forests json", "enumerate", "2", "1", "--forests", "--format", "json")
expect("enumerate forests count", doc.get("count") == "3" and len(doc.get("items", [])) == 3, doc)
rc, _, err = run("enumerate", "6", "8", env={"PARKFN_CAP": "100"})
expect("enumerate cap exit 3", rc == 3, err)
rc, _, err = run("--cap", "100", "count", "6", "8", "--cross-check")
expect("cap flag exit 3", rc == 3, err)

rc, out, _ = run("convert", "9 12 : 6 1 4 1 8 3 6 11 8", "--roundtrip")
expect("convert roundtrip", rc == 0 and out.strip().endswith("roundtrip true"), out)
doc = run_json("convert knuth json", "convert", "9 12 : 3 1 9 1 10 7 3 11 10", "--bijection", "knuth", "--format", "json")
expect("convert knuth inversions", doc.get("inversions") == 4, doc.get("inversions"))
forest = doc.get("forest", "")
rc, out, _ = run("convert", forest, "--from", "forest", "--bijection", "knuth")
expect("convert forest back", rc == 0 and out.strip() == "9 12 : 3 1 9 1 10 7 3 11 10", out)
for bij in ("bfs1", "bfs2", "knuth"):
    rc, out, _ = run("convert", forest, "--from", "forest", "--bijection", bij, "--roundtrip")
    expect(f"convert forest roundtrip {bij}", rc == 0 and "roundtrip true" in out, out)
rc, out, _ = run("convert", "3 3 : 1 1 2", "--dot")
expect("convert dot", rc == 0 and out.startswith("digraph forest {"), out)
rc, _, _ = run("convert", "2 2 : 2 2")
expect("convert invalid exit 1", rc == 1, rc)

rc, out, _ = run("sample", "0", "3", "--trials", "5")
lines = out.strip().split("\n")
expect("sample empty pfs", rc == 0 and lines[0] == "index,pf" and lines[1:] == [f'{i},"0 3 :"' for i in range(1, 6)], out)
first = run("sample", "4", "6", "--trials", "200", "--seed", "11")
second = run("sample", "4", "6", "--trials", "200", "--seed", "11", "--threads", "1")
expect("sample deterministic", first[0] == 0 and first[1] == second[1], "outputs differ")
other = run("sample", "4", "6", "--trials", "200", "--seed", "12")
expect("sample seed matters", first[1] != other[1])
doc = run_json("sample raw json", "sample", "2", "3", "--trials", "7", "--format", "json")
expect("sample raw json count", len(doc.get("samples", [])) == 7, doc)

doc = run_json("sample chi2", "sample", "3", "5", "--trials", "100000", "--seed", "7", "--report", "chi2")
expect("sample chi2 passes", doc.get("passed") is True, doc.get("verdicts"))
rep1 = run("sample", "20", "30", "--trials", "2000", "--seed", "5", "--report", "holes")
rep2 = run("sample", "20", "30", "--trials", "2000", "--seed", "5", "--report", "holes", "--threads", "3")
expect("report deterministic", rep1[1] == rep2[1], "reports differ")
for report, m, n in (("holes", 20, 30), ("lucky", 30, 60), ("repeats", 20, 40), ("covariance", 10, 10)):
    rc, out, err = run("sample", str(m), str(n), "--trials", "2000", "--seed", "3", "--report", report)
    try:
        doc = json.loads(out)
    except json.JSONDecodeError:
        doc = {}
    errors = list(VALIDATOR.iter_errors(doc))
    expect(f"sample {report} schema", not errors and doc.get("kind") == "sample-report", err + str(errors[:1]))
    expect(f"sample {report} exit matches verdict", rc == (0 if doc.get("passed") else 1), rc)
rc, out, _ = run("sample", "3", "5", "--trials", "1000", "--report", "chi2", "--format", "csv")
expect("sample csv header", rc == 0 and out.startswith("label,observed,reference_probability,expected_count\n"), out[:80])
doc = run_json("sample excursion", "sample", "12", "12", "--trials", "500", "--report", "excursion", "--grid", "6",
               "--format", "json")
expect("sample excursion grid", len(doc.get("profile", [])) == 7, doc.get("profile"))
rc, out, _ = run("sample", "12", "12", "--trials", "500", "--report", "excursion", "--grid", "6")
expect("sample excursion csv", rc == 0 and out.startswith("x,mean,stddev\n") and len(out.strip().split("\n")) == 8, out)

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "out.json")
    rc, out, _ = run("-o", path, "count", "3", "5", "--format", "json")
    with open(path, encoding="utf-8") as fh:
        written = json.load(fh)
    expect("output file", rc == 0 and out == "" and written.get("count") == "108", written)

doc = run_json("verify disp-inv", "verify", "disp-inv", "--max-size", "6")
expect("verify disp-inv passes", doc.get("passed") is True, doc.get("counterexample"))
doc = run_json("verify tutte", "verify", "tutte", "--n", "4")
expect("verify tutte passes", doc.get("passed") is True, doc.get("counterexample"))
doc = run_json("verify abel", "verify", "abel", "--n", "12", "--seed", "3")
expect("verify abel passes", doc.get("passed") is True, doc.get("counterexample"))
rc, _, _ = run("verify", "no-such-suite")
expect("verify unknown suite exit 2", rc == 2, rc)

rc, _, _ = run()
expect("no subcommand exit 2", rc == 2, rc)
rc, _, _ = run("count", "3")
expect("missing argument exit 2", rc == 2, rc)
rc, out, _ = run("--version")
expect("version flag", rc == 0 and out.strip() == "1.0.0", out)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
