"""Batch interface: parse structure definitions from JSON, run the
construction/verification pipelines, and emit deterministic reports.

Commands: verify-hopf, build-uea, matched-pair-check, doublecross,
bicross, semidualize, hom-lie-hopf.  Exit status: 0 when every requested
check passed, 1 when violations or run-time errors were reported, 2 for
unreadable or schema-invalid input.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import HomHopfError, InverseMismatch, NotInvertible, SchemaError
from .foundation import LinComb, LinearOperator
from .hom_core import HomHopfData, check_hom_hopf
from .hom_lie import HomLieData, LieActionData, MatchedPairLie, check_hom_lie
from .cross_products import (
    MatchedPairHopf,
    MutualPairHopf,
    build_bicrossproduct,
    build_double_cross_product,
    check_matched_pair_hopf,
    check_mutual_pair,
)
from .semidual import SemidualConfig, build_hom_lie_hopf, semidualize
from .uea_trees import build_truncated_uea, lift_to_Uh_action, tree_label

COMMANDS = (
    "verify-hopf",
    "build-uea",
    "matched-pair-check",
    "doublecross",
    "bicross",
    "semidualize",
    "hom-lie-hopf",
)


# ---------------------------------------------------------------------------
# input parsing


def _scalar(value, where):
    try:
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, int):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise SchemaError("%s: not an exact rational: %r" % (where, value))


def _matrix(data, dim, where):
    if (
        not isinstance(data, list)
        or len(data) != dim
        or any(not isinstance(row, list) or len(row) != dim for row in data)
    ):
        raise SchemaError("%s: expected a %dx%d matrix" % (where, dim, dim))
    return [[_scalar(x, where) for x in row] for row in data]


def _operator(section, name, dim, where, required=True):
    if name not in section:
        if required:
            raise SchemaError("%s: missing matrix %r" % (where, name))
        return None
    mat = _matrix(section[name], dim, "%s/%s" % (where, name))
    inv_name = name + "_inv"
    inverse = None
    if inv_name in section:
        inverse = _matrix(section[inv_name], dim, "%s/%s" % (where, inv_name))
    try:
        op = LinearOperator.from_matrix(mat, inverse=inverse)
        if name != "antipode":
            op.inverted()  # structure maps must be invertible up front
        return op
    except NotInvertible as exc:
        raise InverseMismatch("%s/%s: %s" % (where, name, exc))


def _sparse_vector(entries, dim, where):
    out = {}
    if isinstance(entries, list) and all(not isinstance(x, list) for x in entries):
        if len(entries) != dim:
            raise SchemaError("%s: dense vector length != %d" % (where, dim))
        return LinComb({i: _scalar(c, where) for i, c in enumerate(entries)})
    for item in entries:
        if not isinstance(item, list) or len(item) != 2:
            raise SchemaError("%s: expected [index, scalar] pairs" % where)
        k, c = item
        out[k] = out.get(k, Fraction(0)) + _scalar(c, where)
    return LinComb(out)


def _table3(entries, where):
    """[[i, j, k, scalar], ...] -> dict (i, j) -> LinComb over k."""
    out = {}
    for item in entries:
        if not isinstance(item, list) or len(item) != 4:
            raise SchemaError("%s: expected [i, j, k, scalar] rows" % where)
        i, j, k, c = item
        cur = out.setdefault((i, j), {})
        cur[k] = cur.get(k, Fraction(0)) + _scalar(c, where)
    return {key: LinComb(val) for key, val in out.items()}


def _full_mult(table, dim, where):
    out = {}
    for i in range(dim):
        for j in range(dim):
            out[(i, j)] = table.get((i, j), LinComb.zero())
    for (i, j) in table:
        if not (0 <= i < dim and 0 <= j < dim):
            raise SchemaError("%s: index (%d, %d) out of range" % (where, i, j))
    return out


def _comult_table(entries, dim, where):
    """[[i, j, k, scalar], ...] -> dict i -> LinComb over (j, k)."""
    out = {i: {} for i in range(dim)}
    for item in entries:
        if not isinstance(item, list) or len(item) != 4:
            raise SchemaError("%s: expected [i, j, k, scalar] rows" % where)
        i, j, k, c = item
        if not 0 <= i < dim:
            raise SchemaError("%s: index %d out of range" % (where, i))
        out[i][(j, k)] = out[i].get((j, k), Fraction(0)) + _scalar(c, where)
    return {i: LinComb(v) for i, v in out.items()}


class InputDocument:
    """Validated structures from one JSON input file."""

    def __init__(self):
        self.hopf = {}
        self.hom_lie = {}
        self.matched_pairs = {}
        self.mutual_pairs = {}
        self.lie_matched_pairs = {}
        self.pipeline = {}


def parse_input(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SchemaError("/: cannot read input: %s" % exc)
    except json.JSONDecodeError as exc:
        raise SchemaError("/: invalid JSON: %s" % exc)
    if not isinstance(raw, dict):
        raise SchemaError("/: top level must be an object")
    if raw.get("field", "Q") != "Q":
        raise SchemaError("/field: only the rational field Q is supported")

    doc = InputDocument()
    for name, entry in raw.get("hopf", {}).items():
        where = "/hopf/%s" % name
        dim = entry.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise SchemaError("%s/dim: positive integer required" % where)
        mult = _full_mult(_table3(entry.get("mult", []), where + "/mult"), dim, where + "/mult")
        unit = _sparse_vector(entry.get("unit", []), dim, where + "/unit")
        comult = _comult_table(entry.get("comult", []), dim, where + "/comult")
        counit_vec = _sparse_vector(entry.get("counit", []), dim, where + "/counit")
        counit = {i: counit_vec.get(i) for i in range(dim)}
        alpha = _operator(entry, "alpha", dim, where)
        beta = _operator(entry, "beta", dim, where)
        antipode = _operator(entry, "antipode", dim, where)
        doc.hopf[name] = HomHopfData(
            dim, mult, unit, alpha, comult, counit, beta, antipode
        )

    for name, entry in raw.get("hom_lie", {}).items():
        where = "/hom_lie/%s" % name
        dim = entry.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise SchemaError("%s/dim: positive integer required" % where)
        bracket = {}
        for item in entry.get("bracket", []):
            if not isinstance(item, list) or len(item) != 3:
                raise SchemaError("%s/bracket: expected [i, j, vector] rows" % where)
            i, j, vec = item
            bracket[(i, j)] = _sparse_vector(vec, dim, where + "/bracket")
        phi = _operator(entry, "phi", dim, where)
        doc.hom_lie[name] = HomLieData(dim, bracket, phi)

    def _resolve(ref, table, where):
        if ref not in table:
            raise SchemaError("%s: dangling reference %r" % (where, ref))
        return table[ref]

    for name, entry in raw.get("matched_pairs", {}).items():
        where = "/matched_pairs/%s" % name
        u = _resolve(entry.get("u"), doc.hopf, where + "/u")
        v = _resolve(entry.get("v"), doc.hopf, where + "/v")
        left = _table3(entry.get("left", []), where + "/left")
        right = _table3(entry.get("right", []), where + "/right")
        for i in v.basis_keys():
            for j in u.basis_keys():
                left.setdefault((i, j), LinComb.zero())
                right.setdefault((i, j), LinComb.zero())
        doc.matched_pairs[name] = MatchedPairHopf(u, v, left, right)

    for name, entry in raw.get("mutual_pairs", {}).items():
        where = "/mutual_pairs/%s" % name
        f = _resolve(entry.get("f"), doc.hopf, where + "/f")
        u = _resolve(entry.get("u"), doc.hopf, where + "/u")
        action = _table3(entry.get("action", []), where + "/action")
        for i in u.basis_keys():
            for j in f.basis_keys():
                action.setdefault((i, j), LinComb.zero())
        coaction = {}
        for item in entry.get("coaction", []):
            if not isinstance(item, list) or len(item) != 4:
                raise SchemaError(
                    "%s/coaction: expected [u, u', f, scalar] rows" % where
                )
            i, j, k, c = item
            cur = coaction.setdefault(i, {})
            cur[(j, k)] = cur.get((j, k), Fraction(0)) + _scalar(c, where)
        coaction = {
            i: LinComb(coaction.get(i, {})) for i in u.basis_keys()
        }
        doc.mutual_pairs[name] = MutualPairHopf(f, u, action, coaction)

    for name, entry in raw.get("lie_matched_pairs", {}).items():
        where = "/lie_matched_pairs/%s" % name
        g = _resolve(entry.get("g"), doc.hom_lie, where + "/g")
        h = _resolve(entry.get("h"), doc.hom_lie, where + "/h")
        h_on_g = _table3(entry.get("h_on_g", []), where + "/h_on_g")
        g_on_h = _table3(entry.get("g_on_h", []), where + "/g_on_h")
        doc.lie_matched_pairs[name] = MatchedPairLie(
            g,
            h,
            LieActionData(h, range(g.dim), h_on_g, g.phi),
            LieActionData(g, range(h.dim), g_on_h, h.phi),
        )

    pipeline = raw.get("pipeline", {})
    if pipeline and not isinstance(pipeline, dict):
        raise SchemaError("/pipeline: expected an object")
    doc.pipeline = pipeline
    return doc


# ---------------------------------------------------------------------------
# report construction


def _is_tree_key(key):
    return key == "1" or (
        isinstance(key, tuple)
        and len(key) in (2, 3)
        and isinstance(key[0], tuple)
        and isinstance(key[1], tuple)
        and all(isinstance(w, int) for w in key[1])
    )


def _label(key):
    if _is_tree_key(key):
        return tree_label(key)
    if isinstance(key, tuple):
        return "(" + ", ".join(_label(k) for k in key) + ")"
    return str(key)


def _lincomb_json(x):
    items = sorted(((_label(k), str(c)) for k, c in x.items()))
    return [[k, c] for k, c in items]


def _report_block(check_id, rep):
    equations = []
    for eq in rep.equations:
        entry = {
            "id": eq.eq_id,
            "checked": eq.checked,
            "skipped": eq.skipped,
            "violations": [
                {
                    "witness": [_label(w) for w in v.witness],
                    "lhs": _lincomb_json(v.lhs),
                    "rhs": _lincomb_json(v.rhs),
                }
                for v in eq.violations
            ],
        }
        equations.append(entry)
    return {
        "id": check_id,
        "passed": rep.passed,
        "equations": equations,
        "tuples_checked": rep.total_checked(),
        "tuples_skipped": rep.total_skipped(),
    }


def _pipeline_args(doc, args):
    target = args.target or doc.pipeline.get("target")
    degree = args.degree or doc.pipeline.get("degree") or 2
    weight = (
        args.weight_bound
        if args.weight_bound is not None
        else doc.pipeline.get("weight_bound", 3)
    )
    enforce = not args.no_order_constraint and doc.pipeline.get(
        "enforce_order_constraint", True
    )
    return target, degree, weight, enforce


def run(command, doc, args):
    """Execute one pipeline; returns the report document (a plain dict)."""
    target, degree, weight, enforce = _pipeline_args(doc, args)
    report = {
        "tool": "homhopf",
        "version": __version__,
        "command": command,
        "target": target,
        "parameters": {"degree": degree, "weight_bound": weight,
                       "order_constraint": enforce},
        "checks": [],
    }
    checks = report["checks"]

    def need(table, kind):
        if target not in table:
            raise SchemaError("/pipeline/target: no %s named %r" % (kind, target))
        return table[target]

    if command == "verify-hopf":
        h = need(doc.hopf, "hopf algebra")
        checks.append(_report_block("hom-hopf-suite", check_hom_hopf(h)))
    elif command == "build-uea":
        g = need(doc.hom_lie, "hom_lie algebra")
        checks.append(_report_block("hom-lie", check_hom_lie(g)))
        u = build_truncated_uea(g, degree, weight)
        report["dimensions"] = {"per_degree": u.dims_per_degree()}
        report["normal_forms"] = [_label(k) for k in u.basis_keys()]
        checks.append(_report_block("well-definedness", u.well_definedness_report()))
        checks.append(_report_block("hom-hopf-suite", check_hom_hopf(u)))
    elif command in ("matched-pair-check", "doublecross"):
        if target in doc.matched_pairs:
            mp = doc.matched_pairs[target]
        else:
            pair = need(doc.lie_matched_pairs, "matched pair")
            left, right = lift_to_Uh_action(pair, degree, weight)
            right_vu = {(v, u): val for (u, v), val in right.act.items()}
            mp = MatchedPairHopf(left.carrier, right.carrier, left.act, right_vu)
            report["dimensions"] = {
                "u_per_degree": left.carrier.dims_per_degree(),
                "v_per_degree": right.carrier.dims_per_degree(),
            }
        rep = check_matched_pair_hopf(mp)
        checks.append(_report_block("matched-pair", rep))
        if command == "doublecross" and rep.passed:
            dcp = build_double_cross_product(mp, check=False)
            checks.append(_report_block("double-cross-suite", check_hom_hopf(dcp)))
    elif command == "bicross":
        m = need(doc.mutual_pairs, "mutual pair")
        rep = check_mutual_pair(m)
        checks.append(_report_block("mutual-pair", rep))
        if rep.passed:
            bi = build_bicrossproduct(m, check=False)
            checks.append(_report_block("bicross-suite", check_hom_hopf(bi)))
    elif command == "semidualize":
        cfg = SemidualConfig(degree, weight, enforce)
        if target in doc.matched_pairs:
            mp = doc.matched_pairs[target]
        else:
            pair = need(doc.lie_matched_pairs, "matched pair")
            left, right = lift_to_Uh_action(pair, degree, weight)
            right_vu = {(v, u): val for (u, v), val in right.act.items()}
            mp = MatchedPairHopf(left.carrier, right.carrier, left.act, right_vu)
        checks.append(_report_block("matched-pair", check_matched_pair_hopf(mp)))
        mutual = semidualize(mp, cfg)
        checks.append(_report_block("mutual-pair", check_mutual_pair(mutual)))
    elif command == "hom-lie-hopf":
        pair = need(doc.lie_matched_pairs, "matched pair of Hom-Lie algebras")
        cfg = SemidualConfig(degree, weight, enforce)
        res = build_hom_lie_hopf(pair.g, pair.h, pair, cfg)
        report["dimensions"] = {
            "u_per_degree": res.ug.dims_per_degree(),
            "v_per_degree": res.uh.dims_per_degree(),
        }
        checks.append(_report_block("matched-pair", res.matched_report))
        checks.append(_report_block("mutual-pair", res.mutual_report))
        checks.append(_report_block("bicross-suite", res.suite_report))
    else:
        raise SchemaError("unknown command %r" % command)

    report["passed"] = all(block["passed"] for block in checks)
    report["violations_total"] = sum(
        len(eq["violations"]) for block in checks for eq in block["equations"]
    )
    return report


# ---------------------------------------------------------------------------
# emission


def emit_report(report, fmt):
    if fmt == "json":
        return (json.dumps(report, indent=2) + "\n").encode("utf-8")
    lines = [
        "homhopf %s: %s (target %s)"
        % (report["version"], report["command"], report.get("target"))
    ]
    if "dimensions" in report:
        for key, dims in report["dimensions"].items():
            lines.append("dimensions %s: %s" % (key, dims))
    total_eqs = 0
    total_tuples = 0
    for block in report["checks"]:
        lines.append("[%s]" % block["id"])
        for eq in block["equations"]:
            total_eqs += 1
            total_tuples += eq["checked"]
            status = "ok  " if not eq["violations"] else "FAIL"
            extra = ", %d skipped" % eq["skipped"] if eq["skipped"] else ""
            lines.append(
                "  %s %-32s (%d tuples%s)"
                % (status, eq["id"], eq["checked"], extra)
            )
            for v in eq["violations"][:5]:
                lines.append(
                    "       witness (%s): lhs=%s rhs=%s"
                    % (", ".join(v["witness"]), v["lhs"], v["rhs"])
                )
    if "error" in report:
        lines.append("error: %s" % report["error"])
    if "timing_ms" in report:
        lines.append("timing: %s ms" % report["timing_ms"])
    if report["passed"]:
        lines.append(
            "ALL CHECKS PASSED (%d equations, %d tuples)" % (total_eqs, total_tuples)
        )
    else:
        lines.append("FAILED (%d violations)" % report["violations_total"])
    return ("\n".join(lines) + "\n").encode("utf-8")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="homhopf",
        description="Construct and verify Hom-Hopf algebras over Q, exactly.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, help="JSON structure file")
    parser.add_argument("--target", help="name of the structure to act on")
    parser.add_argument("--degree", type=int, help="truncation degree N")
    parser.add_argument("--weight-bound", type=int, help="per-leaf weight bound W")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument(
        "--no-order-constraint",
        action="store_true",
        help="skip the finite-order twist hypothesis check",
    )
    parser.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock timing in the report (breaks byte determinism)",
    )
    args = parser.parse_args(argv)

    try:
        doc = parse_input(args.input)
    except (SchemaError, InverseMismatch) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return 2

    started = time.monotonic()
    try:
        report = run(args.command, doc, args)
    except SchemaError as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return 2
    except HomHopfError as exc:
        report = {
            "tool": "homhopf",
            "version": __version__,
            "command": args.command,
            "target": args.target or doc.pipeline.get("target"),
            "checks": [],
            "passed": False,
            "violations_total": 0,
            "error": "%s: %s" % (type(exc).__name__, exc),
        }
        if args.timing:
            report["timing_ms"] = int((time.monotonic() - started) * 1000)
        sys.stdout.buffer.write(emit_report(report, args.format))
        return 1
    if args.timing:
        report["timing_ms"] = int((time.monotonic() - started) * 1000)
    sys.stdout.buffer.write(emit_report(report, args.format))
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
