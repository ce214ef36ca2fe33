"""Command-line front end.

Every subcommand emits a deterministic byte stream for a fixed invocation:
iteration follows the chart coordinate order, JSON keys are sorted, and no
timestamps or addresses leak into the output.  Exit codes: 0 emitted or all
checks passed, 1 a verification mismatch (a diff is printed), 2 a structural
failure, 64 a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .chart import resolve_chart
from .closedforms import (ACTION, DECOMP3, DECOMP3_F0, OBSTRUCTION4_ENTRY,
                          OBSTRUCTION4_VALUE, TRUNCATED, parse_field)
from .connection import check_pairing_invariance, full_connection
from .cy3 import basis_keys, cy3_dims, key_name
from .errors import DworkError, Sl2Violation
from .group import (act, basis_pairs, decompose_elem, group_elem,
                    subgroup_counts, symbolic_elem)
from .liealg import (NotMember, amsy_decompose, fR_identities, verify_flatness,
                     verify_theorem2)
from .linalg import VecField
from .modular import (basis_vf, modular_vf, sl2_triple, truncate_poly, weights)
from .ratfn import RatFn, _ordkey, _tscale, parse_ratfn, ratfn_string

EX_OK, EX_MISMATCH, EX_STRUCTURAL, EX_USAGE = 0, 1, 2, 64

SUITES = ("sl2", "theorem2", "flatness", "action", "omega", "weights",
          "membership")


# ---------------------------------------------------------------------------
# serialization

def field_lines(vf, coords, indent="  "):
    return [f"{indent}{v}' = {ratfn_string(vf.get(v))}" for v in coords]


def field_json(vf, coords):
    comps = {}
    for v in coords:
        rf = vf.get(v)
        if not rf.is_zero:
            comps[v] = ratfn_string(rf)
    return {"components": comps}


def matrix_json(M):
    return [[ratfn_string(M.get1(i, j)) for j in range(1, M.ncols + 1)]
            for i in range(1, M.nrows + 1)]


def _latex_var(nm):
    head = nm.rstrip("0123456789")
    tail = nm[len(head):]
    return f"{head}_{{{tail}}}" if tail else head


def _latex_mono(e, c, names):
    parts = []
    for nm, k in zip(names, e):
        if k == 1:
            parts.append(_latex_var(nm))
        elif k > 1:
            parts.append(f"{_latex_var(nm)}^{{{k}}}")
    ac = abs(c)
    if not parts:
        return str(ac)
    body = " ".join(parts)
    return body if ac == 1 else f"{ac} {body}"


def _latex_poly(terms, names):
    items = sorted(terms.items(), key=lambda kv: _ordkey(kv[0]))
    out = []
    for i, (e, c) in enumerate(items):
        m = _latex_mono(e, c, names)
        if i == 0:
            out.append(f"-{m}" if c < 0 else m)
        else:
            out.append(f" - {m}" if c < 0 else f" + {m}")
    return "".join(out)


def latex_ratfn(r):
    """Same term order as the canonical string, TeX spelling."""
    if r.num.is_zero:
        return "0"
    names = r.ring.names
    D = _tscale(r.den.terms, r.num.den)
    if D == {(0,) * r.ring.nvars: 1}:
        return _latex_poly(r.num.terms, names)
    return "\\frac{%s}{%s}" % (_latex_poly(r.num.terms, names),
                               _latex_poly(D, names))


def latex_field(vf, coords):
    parts = []
    for v in coords:
        comp = vf.get(v)
        if comp.is_zero:
            continue
        cs = latex_ratfn(comp)
        sign = "+"
        if len(comp.num.terms) > 1 and not cs.startswith("\\frac"):
            cs = f"\\left({cs}\\right)"
        elif cs.startswith("-"):
            sign, cs = "-", cs[1:]
        term = cs + "\\,\\frac{\\partial}{\\partial %s}" % _latex_var(v)
        if not parts:
            parts.append(term if sign == "+" else "-" + term)
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else "0"


def chart_doc(ch, obj, c_mode):
    return {
        "n": ch.n,
        "dim": ch.d,
        "ambient_vars": list(ch.coords),
        "relation": ch.relation_string(),
        "object": obj,
        "meta": {"c_mode": c_mode,
                 "rule_extrapolated": ch.rule_extrapolated},
    }


def dump_json(doc):
    return [json.dumps(doc, sort_keys=True, indent=2)]


# ---------------------------------------------------------------------------
# fixtures

FIXTURE_RANGE = (1, 2, 3, 4)


def fixture_payload(n):
    """Canonical strings of the three named fields plus the chart relation."""
    ch = resolve_chart(n)
    R, _ = modular_vf(n)
    tr = sl2_triple(n)
    out = {"relation": ch.relation_string()}
    for name, vf in (("modular", R), ("weight", tr.Hf), ("lowering", tr.F)):
        out[name] = field_json(vf, ch.coords)["components"]
    return out


def load_fixture(n, override_dir):
    for base in (override_dir, os.environ.get("DWORK_FIXTURES")):
        if base:
            path = Path(base) / f"n{n}.json"
            if not path.is_file():
                return None
            return json.loads(path.read_text())
    res = resources.files(__package__) / "fixtures" / f"n{n}.json"
    if not res.is_file():
        return None
    return json.loads(res.read_text())


# ---------------------------------------------------------------------------
# verification suites

class Check:
    __slots__ = ("name", "ok", "detail")

    def __init__(self, name, ok, detail=()):
        self.name = name
        self.ok = ok
        self.detail = list(detail)


def _vf_detail(expected, got, coords):
    lines = []
    for v in coords:
        e, g = expected.get(v), got.get(v)
        if e != g:
            lines.append(f"{v}: expected {ratfn_string(e)}")
            lines.append(f"{v}: got      {ratfn_string(g)}")
    return lines


def _row_checks(prefix, report):
    out = []
    for row in report:
        detail = []
        if not row.equal:
            detail = _vf_detail(row.rhs, row.lhs, row.lhs.ring.names)
        out.append(Check(f"{prefix}: {row.name}", row.equal, detail))
    return out


def _suite_omega(n, c, fix):
    ch = resolve_chart(n, c)
    checks = [Check("omega: connection preserves the pairing form",
                    check_pairing_invariance(ch))]
    R, Y = modular_vf(n, c)
    A = full_connection(ch)
    Ymat = Y.matrix()
    checks.append(Check("omega: modular field contracts to the coupling band",
                        A.contract(R) == Ymat))
    checks.append(Check("omega: coupling band is pairing-antisymmetric",
                        (Ymat @ ch.phi + ch.phi @ Ymat.transpose()).is_zero))
    if fix is not None:
        want = VecField(ch.ring, parse_field(ch.ring, fix["modular"]))
        checks.append(Check("omega: modular field matches fixture",
                            R == want, _vf_detail(want, R, ch.coords)))
        rel = fix.get("relation")
        checks.append(Check(
            "omega: chart relation matches fixture",
            rel == ch.relation_string(),
            [f"expected {rel}", f"got      {ch.relation_string()}"]))
    return checks


def _suite_theorem2(n, c, fix):
    return _row_checks("theorem2", verify_theorem2(n, c))


def _suite_sl2(n, c, fix):
    try:
        tr = sl2_triple(n, c)
    except Sl2Violation as e:
        return [Check("sl2: defining bracket relations", False, [str(e)])]
    checks = [Check("sl2: defining bracket relations", True)]
    if fix is not None:
        ch = resolve_chart(n, c)
        want = VecField(ch.ring, parse_field(ch.ring, fix["lowering"]))
        checks.append(Check("sl2: lowering field matches fixture",
                            tr.F == want, _vf_detail(want, tr.F, ch.coords)))
    return checks


def _suite_weights(n, c, fix):
    w, report = weights(n, c)
    checks = []
    for label, expect, actual, ok in report:
        checks.append(Check(f"weights: {label} is quasi-homogeneous of "
                            f"degree {expect}", ok, [f"actual degree {actual}"]))
    if fix is not None:
        ch = resolve_chart(n, c)
        tr = sl2_triple(n, c)
        want = VecField(ch.ring, parse_field(ch.ring, fix["weight"]))
        checks.append(Check("weights: grading field matches fixture",
                            tr.Hf == want, _vf_detail(want, tr.Hf, ch.coords)))
    for row in fR_identities(n, c):
        checks.append(Check(f"weights: {row.name}", row.equal))
    return checks


def _suite_flatness(n, c, fix):
    R, _ = modular_vf(n, c)
    B = basis_vf(n, c)
    fields = [("R", R)]
    fields += [(f"B_{a}{b}", B[(a, b)]) for a, b in basis_pairs(n)]
    if n <= 3:
        pairs = [(i, j) for i in range(len(fields))
                 for j in range(i + 1, len(fields))]
    else:
        rng = random.Random(20260400 + n)
        pairs = []
        while len(pairs) < 5:
            i, j = rng.sample(range(len(fields)), 2)
            if i > j:
                i, j = j, i
            if (i, j) not in pairs:
                pairs.append((i, j))
    checks = []
    for i, j in pairs:
        ni, Vi = fields[i]
        nj, Vj = fields[j]
        checks.append(Check(f"flatness: [{ni}, {nj}]",
                            verify_flatness(Vi, Vj)))
    return checks


def _suite_action(n, c, fix):
    checks = []
    if n in ACTION:
        g = symbolic_elem(n, c)
        formulas = act(n, g=g, c=c)
        want = parse_field(g.ring, ACTION[n])
        ch = resolve_chart(n, c)
        for v in ch.coords:
            got, exp = formulas[v], want[v]
            checks.append(Check(
                f"action: moved coordinate {v} matches the closed form",
                got == exp,
                [f"expected {ratfn_string(exp)}",
                 f"got      {ratfn_string(got)}"]))
    mult, add = subgroup_counts(n)
    rng = random.Random(20260800 + n)
    ok = True
    note = []
    for _ in range(10):
        params = [Fraction(rng.choice([1, 2, 3, -1, -2]),
                           rng.randint(1, 3)) for _ in range(mult)]
        params += [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                   for _ in range(add)]
        g = group_elem(n, params, c=c)
        back = decompose_elem(n, g.matrix)
        if back != g.params:
            ok = False
            note = [f"params {params} came back as {back}"]
            break
    checks.append(Check("action: factor decomposition round-trips "
                        "(10 draws)", ok, note))
    return checks


def _suite_membership(n, c, fix):
    checks = []
    ch = resolve_chart(n, c)
    R, _ = modular_vf(n, c)
    res = amsy_decompose(R, n, c)
    triv = (not isinstance(res, NotMember)
            and res[0] == RatFn.of(ch.ring, 1)
            and all(f.is_zero for f in res[1].values()))
    checks.append(Check("membership: modular field decomposes as itself",
                        triv))
    if n in TRUNCATED:
        T = truncate_poly(R)
        want = VecField(ch.ring, parse_field(ch.ring, TRUNCATED[n]))
        checks.append(Check("membership: truncation matches the closed form",
                            T == want, _vf_detail(want, T, ch.coords)))
        res = amsy_decompose(T, n, c)
        if n == 3:
            if isinstance(res, NotMember):
                checks.append(Check("membership: truncated field decomposes",
                                    False, [repr(res)]))
            else:
                f0, coeffs = res
                exp0 = parse_ratfn(ch.ring, DECOMP3_F0)
                checks.append(Check("membership: leading coefficient",
                                    f0 == exp0,
                                    [f"expected {DECOMP3_F0}",
                                     f"got      {ratfn_string(f0)}"]))
                for key in sorted(coeffs):
                    exp = (parse_ratfn(ch.ring, DECOMP3[key])
                           if key in DECOMP3 else None)
                    got = coeffs[key]
                    ok = got.is_zero if exp is None else got == exp
                    checks.append(Check(
                        f"membership: coefficient on basis {key}", ok,
                        [f"got {ratfn_string(got)}"]))
        if n == 4:
            ok = (isinstance(res, NotMember)
                  and res.entry == OBSTRUCTION4_ENTRY
                  and res.value == parse_ratfn(ch.ring, OBSTRUCTION4_VALUE))
            detail = [] if ok else [repr(res)]
            checks.append(Check(
                "membership: truncated field is obstructed at "
                f"{OBSTRUCTION4_ENTRY}", ok, detail))
    return checks


SUITE_FN = {
    "omega": _suite_omega,
    "theorem2": _suite_theorem2,
    "sl2": _suite_sl2,
    "weights": _suite_weights,
    "flatness": _suite_flatness,
    "action": _suite_action,
    "membership": _suite_membership,
}


# ---------------------------------------------------------------------------
# subcommands

def _c_mode(cn):
    if cn is None:
        return "matched"
    return "symbolic" if cn == "sym" else "explicit"


def cmd_build(args, out):
    ch = resolve_chart(args.n, args.cn)
    mode = _c_mode(args.cn)
    if args.format == "json":
        A = full_connection(ch)
        obj = {
            "dependent_slots": {f"{i},{j}": ratfn_string(e)
                                for (i, j), e in sorted(ch.dep_exprs.items())},
            "disc": ratfn_string(ch.disc),
            "connection": {v: matrix_json(A.get(v)) for v in ch.coords},
        }
        out.extend(dump_json(chart_doc(ch, obj, mode)))
        return EX_OK
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    out.append(f"coordinates: {' '.join(ch.coords)}")
    out.append(f"dim: {ch.d}")
    out.append(f"relation: {ch.relation_string() or 'none'}")
    out.append(f"disc: {ratfn_string(ch.disc)}")
    for (i, j), e in sorted(ch.dep_exprs.items()):
        out.append(f"dependent slot ({i},{j}): {ratfn_string(e)}")
    if ch.rule_extrapolated:
        out.append("note: coupling rule extrapolated beyond the tabulated "
                   "dimensions")
    return EX_OK


def _c_text(ch, cn):
    from .closedforms import matched_c
    if cn is None:
        return str(matched_c(ch.n))
    return "symbolic" if cn == "sym" else str(cn)


def _named_fields(n, cn):
    ch = resolve_chart(n, cn)
    R, _ = modular_vf(n, cn)
    tr = sl2_triple(n, cn)
    return ch, (("modular", R), ("weight", tr.Hf), ("lowering", tr.F))


def cmd_ra(args, out):
    ch, fields = _named_fields(args.n, args.cn)
    if args.format == "json":
        obj = {name: field_json(vf, ch.coords) for name, vf in fields}
        out.extend(dump_json(chart_doc(ch, obj, _c_mode(args.cn))))
        return EX_OK
    if args.format == "latex":
        for name, vf in fields:
            out.append(f"% {name}")
            out.append(f"\\[ {latex_field(vf, ch.coords)} \\]")
        if ch.relation_string():
            out.append("% relation")
            out.append(f"\\[ {_latex_relation(ch)} \\]")
        return EX_OK
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    for name, vf in fields:
        out.append(f"{name}:")
        out.extend(field_lines(vf, ch.coords))
    if ch.relation_string():
        out.append(f"relation: {ch.relation_string()}")
    return EX_OK


def _latex_relation(ch):
    rel = ch.kappa * ch.disc
    return f"{_latex_var(ch.pivot_var)}^{{2}} = {latex_ratfn(rel)}"


def cmd_basis(args, out):
    ch = resolve_chart(args.n, args.cn)
    B = basis_vf(args.n, args.cn)
    pairs = basis_pairs(args.n)
    if args.format == "json":
        obj = {"fields": {f"{a},{b}": field_json(B[(a, b)], ch.coords)
                          for a, b in pairs}}
        out.extend(dump_json(chart_doc(ch, obj, _c_mode(args.cn))))
        return EX_OK
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    for a, b in pairs:
        label = f"basis ({a},{b})"
        if args.format == "latex":
            out.append(f"% {label}")
            out.append(f"\\[ {latex_field(B[(a, b)], ch.coords)} \\]")
        else:
            out.append(f"{label}:")
            out.extend(field_lines(B[(a, b)], ch.coords))
    return EX_OK


def cmd_sl2(args, out):
    ch = resolve_chart(args.n, args.cn)
    tr = sl2_triple(args.n, args.cn)
    named = (("raising", tr.E), ("lowering", tr.F), ("grading", tr.Hf))
    if args.format == "json":
        obj = {name: field_json(vf, ch.coords) for name, vf in named}
        out.extend(dump_json(chart_doc(ch, obj, _c_mode(args.cn))))
        return EX_OK
    if args.format == "latex":
        for name, vf in named:
            out.append(f"% {name}")
            out.append(f"\\[ {latex_field(vf, ch.coords)} \\]")
        return EX_OK
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    for name, vf in named:
        out.append(f"{name}:")
        out.extend(field_lines(vf, ch.coords))
    out.append("brackets: [raising, lowering] = grading, "
               "[grading, raising] = 2*raising, "
               "[grading, lowering] = -2*lowering (verified)")
    return EX_OK


def cmd_weights(args, out):
    ch = resolve_chart(args.n, args.cn)
    w, report = weights(args.n, args.cn)
    if args.format == "json":
        obj = {"weights": {v: w[v] for v in ch.coords},
               "degree_report": [
                   {"label": label, "expected": expect,
                    "actual": actual, "ok": ok}
                   for label, expect, actual, ok in report]}
        out.extend(dump_json(chart_doc(ch, obj, _c_mode(args.cn))))
        return EX_OK
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    for v in ch.coords:
        out.append(f"w({v}) = {w[v]}")
    bad = 0
    for label, expect, actual, ok in report:
        mark = "ok  " if ok else "FAIL"
        out.append(f"{mark} {label}: degree {actual} (expected {expect})")
        bad += not ok
    return EX_OK if bad == 0 else EX_MISMATCH


def cmd_brackets(args, out):
    ch = resolve_chart(args.n, args.cn)
    report = verify_theorem2(args.n, args.cn)
    rows = list(report) + list(fR_identities(args.n, args.cn))
    if args.format == "json":
        obj = {"rows": [{"name": r.name, "ok": r.equal} for r in rows]}
        out.extend(dump_json(chart_doc(ch, obj, _c_mode(args.cn))))
        return EX_OK if all(r.equal for r in rows) else EX_MISMATCH
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    bad = 0
    for r in rows:
        out.append(f"{'ok  ' if r.equal else 'FAIL'} {r.name}")
        if not r.equal:
            out.extend("  " + ln for ln in
                       _vf_detail(r.rhs, r.lhs, ch.coords))
            bad += 1
    return EX_OK if bad == 0 else EX_MISMATCH


def cmd_action(args, out):
    ch = resolve_chart(args.n, args.cn)
    g = symbolic_elem(args.n, args.cn)
    formulas = act(args.n, g=g, c=args.cn)
    mult, add = subgroup_counts(args.n)
    if args.format == "json":
        obj = {"parameters": [f"g{i}" for i in range(1, ch.d)],
               "multiplicative": mult, "additive": add,
               "formulas": {v: ratfn_string(formulas[v])
                            for v in ch.coords}}
        out.extend(dump_json(chart_doc(ch, obj, _c_mode(args.cn))))
        return EX_OK
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    out.append(f"parameters: g1..g{ch.d - 1} "
               f"({mult} multiplicative, {add} additive)")
    for v in ch.coords:
        if args.format == "latex":
            out.append(f"\\[ {_latex_var(v)} \\mapsto "
                       f"{latex_ratfn(formulas[v])} \\]")
        else:
            out.append(f"{v} -> {ratfn_string(formulas[v])}")
    return EX_OK


def cmd_decompose(args, out):
    ch = resolve_chart(args.n, args.cn)
    R, _ = modular_vf(args.n, args.cn)
    T = truncate_poly(R)
    res = amsy_decompose(T, args.n, args.cn)
    if isinstance(res, NotMember):
        obj = {"member": False,
               "entry": list(res.entry),
               "value": ratfn_string(res.value)}
        if res.reason:
            obj["reason"] = res.reason
        lines = ["member: no",
                 f"entry ({res.entry[0]},{res.entry[1]}): "
                 f"{ratfn_string(res.value)}"]
        if res.reason:
            lines.append(f"reason: {res.reason}")
    else:
        f0, coeffs = res
        obj = {"member": True,
               "f0": ratfn_string(f0),
               "coefficients": {f"{a},{b}": ratfn_string(f)
                                for (a, b), f in sorted(coeffs.items())
                                if not f.is_zero}}
        lines = ["member: yes", f"f0 = {ratfn_string(f0)}"]
        for (a, b), f in sorted(coeffs.items()):
            if not f.is_zero:
                lines.append(f"basis ({a},{b}): {ratfn_string(f)}")
    if args.format == "json":
        out.extend(dump_json(chart_doc(ch, obj, _c_mode(args.cn))))
        return EX_OK
    out.append(f"n = {ch.n}  (c = {_c_text(ch, args.cn)})")
    out.append("decomposing the polynomial truncation of the modular field:")
    out.extend(lines)
    return EX_OK


def cmd_cy3(args, out):
    frame, dim_g, dim_m = cy3_dims(args.h)
    names = [key_name(k) for k in basis_keys(args.h)]
    names += [f"R{k}" for k in range(1, args.h + 1)]
    if args.format == "json":
        doc = {
            "n": args.h,
            "dim": dim_g,
            "ambient_vars": [],
            "relation": None,
            "object": {"frame_size": frame,
                       "algebra_dim": dim_g,
                       "moduli_dim": dim_m,
                       "basis": names},
            "meta": {"c_mode": "none", "rule_extrapolated": False},
        }
        out.extend(dump_json(doc))
        return EX_OK
    out.append(f"h = {args.h}")
    out.append(f"frame size: {frame}")
    out.append(f"algebra dim: {dim_g}")
    out.append(f"moduli dim: {dim_m}")
    out.append(f"basis: {' '.join(names)}")
    return EX_OK


def cmd_verify(args, out):
    suites = SUITES if args.suite == "all" else (args.suite,)
    fix = load_fixture(args.n, args.fixtures) if args.cn is None else None
    header = (f"verify n={args.n} c={_c_text(resolve_chart(args.n, args.cn), args.cn)} "
              f"suite={args.suite}")
    checks = []
    for name in suites:
        checks.extend(SUITE_FN[name](args.n, args.cn, fix))
    if args.format == "json":
        doc = chart_doc(resolve_chart(args.n, args.cn),
                        {"checks": [{"name": c.name, "ok": c.ok}
                                    for c in checks]},
                        _c_mode(args.cn))
        out.extend(dump_json(doc))
        return EX_OK if all(c.ok for c in checks) else EX_MISMATCH
    out.append(header)
    if fix is None and args.cn is None:
        out.append(f"fixtures: none found for n={args.n} "
                   "(fixture comparisons skipped)")
    bad = 0
    for c in checks:
        out.append(f"{'ok  ' if c.ok else 'FAIL'} {c.name}")
        if not c.ok:
            out.extend("  " + ln for ln in c.detail)
            bad += 1
    out.append(f"summary: {len(checks)} checks, {bad} failed")
    return EX_OK if bad == 0 else EX_MISMATCH


def cmd_fixtures(args, out):
    dest = Path(args.fixtures)
    dest.mkdir(parents=True, exist_ok=True)
    payload = fixture_payload(args.n)
    path = dest / f"n{args.n}.json"
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    out.append(f"wrote {path}")
    return EX_OK


# ---------------------------------------------------------------------------
# argument parsing

class UsageError(Exception):
    def __init__(self, parser, message):
        self.parser = parser
        super().__init__(message)


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(self, message)


def _n_arg(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("dimension must be at least 1")
    return v


def _cn_arg(s):
    if s == "symbolic":
        return "sym"
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"expected a rational number or 'symbolic', got {s!r}")


COMMANDS = {
    "build": (cmd_build, "emit the chart data", "n"),
    "ra": (cmd_ra, "emit the modular, grading, and lowering fields", "n"),
    "basis": (cmd_basis, "emit the canonical basis fields", "n"),
    "sl2": (cmd_sl2, "emit the verified sl2 triple", "n"),
    "weights": (cmd_weights, "emit coordinate weights and degree checks", "n"),
    "brackets": (cmd_brackets, "emit the bracket table checks", "n"),
    "action": (cmd_action, "emit the symbolic group action", "n"),
    "decompose": (cmd_decompose,
                  "decompose the truncated modular field", "n"),
    "cy3": (cmd_cy3, "emit the threefold block-model dimensions", "h"),
    "verify": (cmd_verify, "run verification suites", "n"),
    "fixtures": (cmd_fixtures, "write a fixture file", "n"),
}


def build_parser():
    top = Parser(prog="dworklie",
                 description="exact reconstructions for the Dwork family")
    sub = top.add_subparsers(dest="command", metavar="command")
    for name, (fn, help_text, dim_flag) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        if dim_flag == "n":
            p.add_argument("--n", type=_n_arg, required=True,
                           help="family dimension (at least 1)")
            p.add_argument("--cn", type=_cn_arg, default=None, metavar="C",
                           help="rational constant or 'symbolic' "
                                "(default: matched value)")
        else:
            p.add_argument("--h", type=_n_arg, required=True,
                           help="number of deformation directions")
        if name == "verify":
            p.add_argument("--suite", choices=("all",) + SUITES,
                           default="all")
            p.add_argument("--fixtures", default=None, metavar="DIR",
                           help="fixture directory (default: packaged; "
                                "DWORK_FIXTURES overrides)")
            p.add_argument("--format", choices=("text", "json"),
                           default="text")
        elif name == "fixtures":
            p.add_argument("--fixtures", required=True, metavar="DIR",
                           help="output directory")
        elif name == "cy3":
            p.add_argument("--format", choices=("text", "json"),
                           default="text")
        else:
            p.add_argument("--format", choices=("text", "json", "latex"),
                           default="text")
    return top


def main(argv=None):
    top = build_parser()
    try:
        args = top.parse_args(argv)
    except UsageError as e:
        e.parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EX_USAGE
    if getattr(args, "fn", None) is None:
        top.print_usage(sys.stderr)
        print("error: a command is required", file=sys.stderr)
        return EX_USAGE
    out = []
    try:
        code = args.fn(args, out)
    except DworkError as e:
        for line in out:
            print(line)
        print(f"structural failure: {type(e).__name__}: {e}", file=sys.stderr)
        return EX_STRUCTURAL
    for line in out:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
