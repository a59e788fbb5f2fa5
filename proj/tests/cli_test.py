#!/usr/bin/env python3
"""End-to-end checks of the rsat command line: exit codes and round trips."""

import json
import os
import subprocess
import sys
import tempfile

RSAT = sys.argv[1]
failures = []


def run(*args):
    return subprocess.run([RSAT, *args], capture_output=True, text=True)


def expect(name, cond, detail=""):
    print(("PASS " if cond else "FAIL ") + name + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


with tempfile.TemporaryDirectory() as tmp:
    ib = os.path.join(tmp, "ib.json")
    r = run("--m", "2", "construct", "--family", "identity-block", "--k", "3", "--rho", "2", "--out", ib)
    expect("construct identity-block", r.returncode == 0 and os.path.exists(ib), r.stderr)

    r = run("verify", "--matrix", ib, "--rho", "2")
    expect("verify match exits 0", r.returncode == 0, r.stderr)
    expect("verify reports measured radius", r.returncode == 0 and json.loads(r.stdout)["measured"] == 2)

    r = run("verify", "--matrix", ib, "--rho", "1")
    expect("verify mismatch exits 1", r.returncode == 1)

    r = run("--budget", "100", "verify", "--matrix", ib, "--rho", "2")
    out = json.loads(r.stdout) if r.returncode == 3 else {}
    expect("budget refusal exits 3", r.returncode == 3 and out.get("completed_level") == 1)

    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as fh:
        fh.write("{not json")
    expect("malformed matrix exits 2", run("verify", "--matrix", bad, "--rho", "1").returncode == 2)

    with open(bad, "w") as fh:
        json.dump({"q": 2, "m": 2, "rows": 1, "cols": 2, "entries": [[[1, 0], [1, 0]]]}, fh)
    expect("dependent columns exit 2", run("verify", "--matrix", bad, "--rho", "1").returncode == 2)

    cert = os.path.join(tmp, "cert.json")
    r = run("verify", "--matrix", ib, "--rho", "2", "--certificate", cert)
    expect("certificate written", r.returncode == 0 and os.path.exists(cert))

    e58 = os.path.join(tmp, "e58.json")
    r = run("construct", "--family", "example-5.8", "--out", e58)
    expect("construct cutting example", r.returncode == 0)
    r = run("verify", "--matrix", e58, "--rho", "2", "--over-m", "8")
    expect("cutting example over F_256 has radius 2",
           r.returncode == 0 and json.loads(r.stdout)["measured"] == 2, r.stdout[:200] + r.stderr)

    r = run("--m", "4", "construct", "--family", "gabidulin", "--n", "4", "--k", "2", "--out",
            os.path.join(tmp, "g.json"))
    expect("construct gabidulin", r.returncode == 0, r.stderr)

    r = run("--m", "4", "--format", "csv", "bounds", "--kmax", "4")
    expect("bounds csv", r.returncode == 0 and r.stdout.startswith("q,m,k,rho,"), r.stderr)

    r = run("bounds", "--verify-paper")
    expect("bounds audit", r.returncode == 0, r.stdout[-300:] + r.stderr)

    r = run("--m", "2", "search", "--k", "2", "--rho", "1")
    expect("exhaustive search", r.returncode == 0 and json.loads(r.stdout)["n"] == 3, r.stdout + r.stderr)

    r = run("examples", "gabidulin-*", "rho1-*")
    expect("examples subset", r.returncode == 0 and "FAIL" not in r.stdout, r.stdout + r.stderr)

    r = run("examples", "no-such-scenario")
    expect("unknown scenario warns", "no-such-scenario" in r.stderr)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
