"""CLI contract: schema validity, exit codes, determinism, config errors."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

cli, root = sys.argv[1], sys.argv[2]
schemas = os.path.join(root, "schemas")
configs = os.path.join(root, "configs")
failures = []


def load(path):
    with open(path) as f:
        return json.load(f)


def run(*args):
    return subprocess.run([cli, *args], capture_output=True, text=True, timeout=600)


def expect(cond, msg):
    print(("PASS " if cond else "FAIL ") + msg)
    if not cond:
        failures.append(msg)


config_schema = load(os.path.join(schemas, "config.schema.json"))
jsonschema.Draft202012Validator.check_schema(config_schema)
for name in sorted(os.listdir(configs)):
    if name == "runs.json" or not name.endswith(".json"):
        continue
    errs = list(jsonschema.Draft202012Validator(config_schema).iter_errors(load(os.path.join(configs, name))))
    expect(not errs, f"config {name} validates" + (f": {errs[0].message}" if errs else ""))

for sub, cfg in load(os.path.join(configs, "runs.json")):
    path = os.path.join(configs, cfg)
    a = run(sub, "--config", path, "--seed", "11")
    expect(a.returncode == 0, f"{sub} {cfg} exits 0 (got {a.returncode}) {a.stderr.strip()[:200]}")
    if a.returncode not in (0, 1):
        continue
    report = json.loads(a.stdout)
    schema = load(os.path.join(schemas, f"report.{sub}.schema.json"))
    errs = list(jsonschema.Draft202012Validator(schema).iter_errors(report))
    expect(not errs, f"{sub} {cfg} report validates" + (f": {errs[0].message}" if errs else ""))
    expect(report["ok"] == all(c["pass"] for c in report["checks"]), f"{sub} {cfg} ok flag matches checks")
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "r.json")
        b = run(sub, "--config", path, "--seed", "11", "--threads", "3", "--out", out)
        with open(out) as f:
            same = f.read() == a.stdout
        expect(b.returncode == a.returncode and same, f"{sub} {cfg} byte-identical across runs and thread counts")

flag = os.path.join(configs, "flagship_gl4.json")
r = json.loads(run("verify-summand", "--config", flag).stdout)
expect(len(r["checks"]) == 6 and all(c["pass"] for c in r["checks"]), "flagship verify-summand: six passing checks")

a = run("factor-char", "--config", os.path.join(configs, "character_quadratic.json"), "--seed", "1")
b = run("factor-char", "--config", os.path.join(configs, "character_quadratic.json"), "--seed", "2")
expect(a.stdout != b.stdout, "different seeds give different random samples")

with tempfile.TemporaryDirectory() as tmp:
    def bad(cfg, field, sub="roots"):
        p = os.path.join(tmp, "bad.json")
        with open(p, "w") as f:
            json.dump(cfg, f)
        res = run(sub, "--config", p)
        err = {}
        try:
            err = json.loads(res.stderr.strip().splitlines()[-1])
        except Exception:
            pass
        expect(res.returncode == 2 and err.get("error") == "ConfigError" and err.get("field") == field
               and f'"{field}"' in err.get("message", ""),
               f"malformed config names field {field!r} (exit {res.returncode}, {res.stderr.strip()[:160]})")

    bad({"n": 0}, "n")
    bad({"p": 6}, "p")
    bad({"family": "SO"}, "family")
    bad({"n": 2, "weight": {"algebraic": [1, 2]}}, "weight.algebraic")
    bad({"n": 2, "w": "(1 2)"}, "w")
    bad({"n": 2, "frobnicate": 1}, "frobnicate")
    bad({"n": 2, "lattice": [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}, "lattice")
    bad({"n": 2}, "character", sub="factor-char")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
