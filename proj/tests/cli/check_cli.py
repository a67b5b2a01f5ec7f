"""Report schema and curvature-query checks for the paraplex tool."""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

tool, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
work = Path(tempfile.mkdtemp())
failures = []


def run(*args):
    return subprocess.run([tool, *args], capture_output=True, text=True)


def expect(cond, what):
    if not cond:
        failures.append(what)


for suite in ["linespace", "products", "topology"]:
    out = work / f"{suite}.json"
    r = run("verify", "--suite", suite, "--seed", "7", "--out", str(out))
    expect(r.returncode == 0, f"verify {suite} exit {r.returncode}")
    report = json.loads(out.read_text())
    jsonschema.validate(report, schema)
    s = report["summary"]
    expect(s["total"] == len(report["checks"]) == s["passed"] + s["failed"], f"{suite} summary counts")
    for c in report["checks"]:
        expect(c["pass"] == (c["residual"] <= c["tolerance"]), f"{c['id']} pass flag")

# A tight tolerance scale fails some checks and the report records the scale.
out = work / "tight.json"
r = run("verify", "--suite", "products", "--tolerance-scale", "1e-12", "--out", str(out))
expect(r.returncode == 1, f"tight scale exit {r.returncode}")
tight = json.loads(out.read_text())
jsonschema.validate(tight, schema)
expect(tight["tolerance_scale"] == 1e-12 and not tight["pass"], "tight report")

# Numbers are written with 17 significant digits.
text = (work / "linespace.json").read_text()
expect("e-" in text and any(len(t.strip(",").replace("-", "").split("e")[0].replace(".", "")) == 17
                            for t in text.split() if "e-" in t), "17 significant digits")

# User config with a conformal factor.
cfg = work / "cfg.json"
cfg.write_text(json.dumps({"conformal_factor": "1+abs2(Z1)", "signature": "neutral"}))
r = run("curvature", "--geometry", str(cfg), "--point", "0.1,0.2,0.3,0.4")
expect(r.returncode == 0, f"config curvature exit {r.returncode} {r.stderr}")
pkg = json.loads(r.stdout)
scalar = pkg["points"][0]["scalar"]
# S = -24 Omega^-3 (d1 d1bar - d2 d2bar) Omega = -24 / Omega^3 for Omega = 1 + |Z1|^2.
expect(abs(scalar + 24 / (1 + 0.1**2 + 0.2**2) ** 3) < 1e-9, f"config scalar {scalar}")

r = run("curvature", "--geometry", "linespace-G", "--point", "0.2,-0.1,0.4,0.3")
p = json.loads(r.stdout)["points"][0]
expect(r.returncode == 0 and abs(p["scalar"]) < 1e-9, "linespace-G scalar flat")
expect([s["kind"] for s in p["structures"]] == ["isometric", "anti_isometric", "anti_isometric"], "J0 J1 J2 kinds")
r = run("curvature", "--geometry", "product-s2xs2-minus")
p = json.loads(r.stdout)["points"][0]
expect(abs(p["weyl_norm2"]) < 1e-9, "product-s2xs2-minus conformally flat")

cfg.write_text(json.dumps({"conformal_factor": "1+abs2(Z1)", "signature": "neutral", "extra": 1}))
expect(run("curvature", "--geometry", str(cfg), "--point", "0,0,0,0").returncode == 2, "unknown key rejected")
cfg.write_text(json.dumps({"conformal_factor": "1+abs2(W)", "signature": "neutral"}))
expect(run("curvature", "--geometry", str(cfg), "--point", "0,0,0,0").returncode == 2, "unbound name rejected")
expect(run("curvature", "--geometry", str(work / "missing.json")).returncode == 3, "missing config is I/O")

pay = work / "p.json"
pay.write_text(json.dumps({"xi": [0.3, 0.1], "eta": [0.2, -0.4]}))
r = run("convert", "--kind", "xi-eta->conformal", "--in", str(pay))
expect(r.returncode == 0 and json.loads(r.stdout)["roundtrip_residual"] < 1e-10, "xi-eta roundtrip")
pay.write_text(json.dumps({"s": [0, 0, 0], "t": [0, 0, -1]}))
r = run("convert", "--kind", "pluecker->conformal", "--in", str(pay))
expect(r.returncode == 0 and json.loads(r.stdout)["X"] == [0, 0, 0, 0], "x3-axis maps to the origin")
pay.write_text(json.dumps({"xi": [1.2, 0], "eta": [0, 0]}))
r = run("convert", "--kind", "xi-eta->conformal", "--in", str(pay))
expect(r.returncode == 1 and "OutsideHemisphere" in r.stderr, "outside hemisphere")

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
