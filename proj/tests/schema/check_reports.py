"""Runs the CLI on the golden inputs, validates inputs and reports against the
shipped schemas, and checks exit codes and byte-identical reruns."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

ROOT = Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "schemas"
DATA = ROOT / "data"

# (command, input file, input schema, expected exit code, extra flags)
CASES = [
    ("validate-graph", "single_edge_graph.json", "graph", 0, []),
    ("validate-graph", "two_edge_cycle_graph.json", "graph", 0, []),
    ("validate-graph", "odd_cycle_graph.json", "graph", 2, []),
    ("validate-graph", "line6_graph.json", "graph", 0, []),
    ("render", "line6_graph.json", "graph", 0, []),
    ("validate-bpolytope", "nondelzant_leaf_bpolytope.json", "bpolytope", 0, []),
    ("delzant-check", "nondelzant_leaf_bpolytope.json", "bpolytope", 2, []),
    ("delzant-check", "cycle_product_bpolytope.json", "bpolytope", 0, []),
    ("classify", "cycle_product_bpolytope.json", "bpolytope", 0, []),
    ("classify", "interval_times_line_bpolytope.json", "bpolytope", 0, []),
    ("render", "cycle_product_bpolytope.json", "bpolytope", 0, []),
    ("render", "interval_times_line_bpolytope.json", "bpolytope", 0, []),
    ("volume", "sphere_log_model.json", "surface_model", 0, []),
    ("volume", "sphere_pole_plus_one.json", "surface_model", 0, ["--epsilon-ladder", "1e-2:1e-7:0.5"]),
    ("period", "torus_sine_model.json", "surface_model", 0, []),
    ("period", "sphere_log_model.json", "surface_model", 0, []),
    ("verify-moment", "s2_log_moment.json", "moment", 0, []),
    ("verify-moment", "s2_product_moment.json", "moment", 0, []),
    ("verify-moment", "s2_product_moment_unscaled.json", "moment", 2, []),
]


def load_schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(tool, args, stdin=None):
    return subprocess.run([tool, *args], input=stdin, capture_output=True, check=False)


def main():
    tool = sys.argv[1]
    report_schema = load_schema("report")
    jsonschema.Draft202012Validator.check_schema(report_schema)
    report_validator = jsonschema.Draft202012Validator(report_schema)
    failures = []

    def check(ok, what):
        if not ok:
            failures.append(what)

    for command, name, input_schema, code, flags in CASES:
        tag = f"{command} {name}"
        schema = load_schema(input_schema)
        jsonschema.Draft202012Validator.check_schema(schema)
        errs = list(jsonschema.Draft202012Validator(schema).iter_errors(json.loads((DATA / name).read_text())))
        check(not errs, f"{tag}: input does not match {input_schema} schema: {errs[:1]}")

        args = [command, "--in", str(DATA / name), *flags]
        first = run(tool, args)
        second = run(tool, args)
        check(first.returncode == code, f"{tag}: exit {first.returncode}, expected {code}")
        check(first.stdout == second.stdout, f"{tag}: output differs between runs")
        try:
            report = json.loads(first.stdout)
        except json.JSONDecodeError as e:
            failures.append(f"{tag}: report is not JSON ({e})")
            continue
        errs = list(report_validator.iter_errors(report))
        check(not errs, f"{tag}: report invalid: {errs[:1]}")
        want = {0: "ok", 2: "violation", 1: "error"}[code]
        check(report["status"] == want, f"{tag}: status {report['status']}")

    # Error paths still produce valid reports.
    for args, stdin in [
        (["validate-graph"], b"{oops"),
        (["validate-graph"], b'{"shape":"line","n":1,"u":[1],"edges":[{"sign":1,"period":0.5}]}'),
        (["classify", "--schema-version", "9"], (DATA / "cycle_product_bpolytope.json").read_bytes()),
        (["classify", "--format", "svg"], (DATA / "cycle_product_bpolytope.json").read_bytes()),
        (["volume", "--in", str(DATA / "no_such_file.json")], None),
    ]:
        r = run(tool, args, stdin)
        check(r.returncode == 1, f"{args}: exit {r.returncode}, expected 1")
        try:
            errs = list(report_validator.iter_errors(json.loads(r.stdout)))
            check(not errs, f"{args}: error report invalid: {errs[:1]}")
        except json.JSONDecodeError:
            failures.append(f"{args}: error report is not JSON")

    # Unknown flag is a usage error.
    r = run(tool, ["validate-graph", "--bogus"])
    check(r.returncode == 1, f"--bogus: exit {r.returncode}")

    svg1 = run(tool, ["render", "--format", "svg", "--in", str(DATA / "cycle_product_bpolytope.json")])
    svg2 = run(tool, ["render", "--format", "svg", "--in", str(DATA / "cycle_product_bpolytope.json")])
    check(svg1.returncode == 0 and b"<svg" in svg1.stdout, "svg render failed")
    check(svg1.stdout == svg2.stdout, "svg output differs between runs")

    for f in failures:
        print("FAIL", f)
    print(f"{len(CASES)} golden cases, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
