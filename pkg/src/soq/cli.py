"""Command-line front end.

    soq classify --field Q --form 1,1,1
    soq embed    --group D8 --field F7 --form 1,2,3
    soq synth    --group S4 --field Q --form 1,1,1 --out s4.json
    soq conj     --group C2 --field Q --form 1,1,1 --representative 3
    soq oracle   --p 7 --form 1,1,1 --cross-check
    soq verify   s4.json

Exit codes: 0 success, 1 domain error (or a failed verification), 2 usage
or parse error.  JSON output writes every number as a string.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import linalg as la
from .conjugacy import (
    _ab,
    conjugacy_summary,
    dihedral_class,
    dihedral_representative,
    dihedral_same_class,
    in_Q_ab,
    involution_class,
    klein_invariant,
    klein_representative,
    representative_involution,
    s3_orbit,
)
from .embedding import (
    KLEIN,
    GeneratorSet,
    GroupSpec,
    _PRESENTATIONS,
    check_relations,
    embeds,
    synthesize_generators,
    verify_subgroup,
)
from .errors import NotInGroup, NotRepresentable, SOQError
from .field import Field, SquareClass
from .oracle import candidate_types, cross_check, subgroup_census
from .quadform import DEFAULT_BUDGET, diagonalize, make_form, represents
from .spectra import OrthoMatrix

RATIONAL_TYPES = [GroupSpec("C", n) for n in (1, 2, 3, 4, 6)] + \
    [GroupSpec("D", n) for n in (2, 3, 4, 6)] + [GroupSpec("A4"), GroupSpec("S4"), GroupSpec("A5")]


_NEGATIVE_LITERALS = re.compile(r"^-\d[\d/,-]*$")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing


def _field(label):
    try:
        return Field.from_label(label)
    except (ValueError, SOQError) as e:
        raise UsageError(f"bad --field {label!r}: {e}")


def _parse_entries(text, k):
    try:
        return [k.parse(s) for s in text.split(",")]
    except (ValueError, ZeroDivisionError, SOQError) as e:
        raise UsageError(f"bad literal list {text!r}: {e}")


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}")


def _matrix(rows, k):
    try:
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 matrix")
        return tuple(tuple(k.parse(str(x)) for x in r) for r in rows)
    except (TypeError, ValueError, ZeroDivisionError, SOQError) as e:
        raise UsageError(f"bad matrix: {e}")


def _form(args, k):
    """Diagonal form from --form, or from --gram after diagonalizing."""
    if bool(args.form) == bool(args.gram):
        raise UsageError("give exactly one of --form and --gram")
    try:
        if args.form:
            entries = _parse_entries(args.form, k)
            if len(entries) != 3:
                raise UsageError("--form needs three entries")
            return make_form(entries, k), None
        G = _matrix(_read_json(args.gram), k)
        if la.transpose(G) != G:
            raise UsageError("Gram matrix is not symmetric")
        q, w = diagonalize(G, k)
        return q, w
    except UsageError:
        raise
    except (ValueError, SOQError) as e:
        raise UsageError(f"bad form: {e}")


def _group(label):
    try:
        return GroupSpec.parse(label)
    except ValueError as e:
        raise UsageError(f"bad --group {label!r}: {e}")


def _sq(text, k) -> SquareClass:
    x = _parse_entries(text, k)
    if len(x) != 1 or x[0] == 0:
        raise UsageError(f"expected one nonzero literal, got {text!r}")
    return k.square_class(x[0])


def _pair(text, k):
    x = _parse_entries(text, k)
    if len(x) != 2 or 0 in x:
        raise UsageError(f"expected a pair x,y of nonzero literals, got {text!r}")
    return tuple(k.square_class(v) for v in x)


# ---------------------------------------------------------------------------
# JSON helpers


def _s(x):
    return str(x)


def _mat_json(M):
    M = M.M if isinstance(M, OrthoMatrix) else M
    return [[_s(x) for x in row] for row in M]


def _form_json(q):
    return [_s(x) for x in q.diag]


def certificate(gs: GeneratorSet) -> dict:
    return {
        "field": str(gs.form.field),
        "form": _form_json(gs.form),
        "group": gs.group.label,
        "generators": [_mat_json(g) for g in gs.gens],
        "relations": {k: v for k, v in gs.relations.items()},
        "order": _s(gs.order),
    }


def _emit(args, payload, text):
    print(text)
    if args.json:
        out = json.dumps(payload, sort_keys=True, indent=2)
        if args.json == "-":
            print(out)
        else:
            with open(args.json, "w") as fh:
                fh.write(out + "\n")


# ---------------------------------------------------------------------------
# commands


def _types_for(k):
    return RATIONAL_TYPES if not k.p else candidate_types(k.p)


def cmd_classify(args):
    k = _field(args.field)
    q, _ = _form(args, k)
    rows = []
    for G in _types_for(k):
        d = embeds(G, q)
        rows.append({"group": G.label, "embeds": d.embeds, "reason": "; ".join(d.reasons)})
    if k.p:
        skipped = [f"C{n}" for n in range(1, k.p + 2) if n % k.p == 0]
        note = f"p-irregular orders skipped: {', '.join(skipped)} and any order divisible by {k.p}"
    else:
        note = ""
    w = max(len(r["group"]) for r in rows)
    lines = [f"finite subgroups of SO(q), q = {q} over {k}"]
    lines += [f"{r['group']:<{w}}  {'yes' if r['embeds'] else 'no ':<3}  {r['reason']}" for r in rows]
    if note:
        lines.append(note)
    payload = {"field": str(k), "form": _form_json(q), "rows": rows}
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_embed(args):
    k = _field(args.field)
    q, _ = _form(args, k)
    G = _group(args.group)
    d = embeds(G, q)
    payload = {"field": str(k), "form": _form_json(q), "group": G.label,
               "embeds": d.embeds, "reasons": d.reasons}
    text = f"{G.label} {'embeds' if d.embeds else 'does not embed'} in SO({q}) over {k}"
    text += "".join(f"\n  {r}" for r in d.reasons)
    _emit(args, payload, text)
    return 0


def cmd_synth(args):
    k = _field(args.field)
    q, _ = _form(args, k)
    G = _group(args.group)
    gs = synthesize_generators(G, q, args.budget)
    cert = certificate(gs)
    text = [f"{G.label} inside SO({q}) over {k}, order {gs.order}"]
    for i, g in enumerate(gs.gens):
        text.append(f"generator {i}:")
        text += ["  [" + ", ".join(r) + "]" for r in _mat_json(g)]
    text += [f"{rel}: {'ok' if ok else 'FAILED'}" for rel, ok in gs.relations.items()]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(cert, sort_keys=True, indent=2) + "\n")
        text.append(f"certificate written to {args.out}")
    _emit(args, cert, "\n".join(text))
    return 0


def _load_gens(path, q):
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("generators", data.get("matrix"))
    if not isinstance(data, list) or not data:
        raise UsageError(f"{path} holds no matrices")
    mats = data if isinstance(data[0][0], list) else [data]
    return [OrthoMatrix(_matrix(M, q.field), q) for M in mats]


def _descr(d):
    return {"c": _s(d.c), "coset": [_s(x) for x in d.coset], "C_generator": _s(d.C_generator),
            "norm_form": _form_json(d.norm_form), "n": _s(d.n)}


def cmd_conj(args):
    k = _field(args.field)
    q, _ = _form(args, k)
    G = _group(args.group)
    chosen = [x for x in (args.class_of, args.same_class, args.representative) if x]
    if len(chosen) > 1:
        raise UsageError("--class-of, --same-class and --representative are exclusive")
    if G.kind == "D" and G.n >= 3:
        kind = "dihedral"
    elif G == KLEIN:
        kind = "klein"
    elif G == GroupSpec("C", 2):
        kind = "involution"
    else:
        kind = "unique"
    payload = {"field": str(k), "form": _form_json(q), "group": G.label}

    if args.class_of:
        gens = _load_gens(args.class_of, q)
        if kind == "involution":
            inv = involution_class(gens[0], q)
            payload["invariant"] = _s(inv.d)
            payload["axis"] = [_s(x) for x in inv.axis]
        elif kind == "klein":
            ki = klein_invariant(gens, q)
            payload["invariant"] = [_s(x) for x in ki.pair]
            payload["orbit"] = [[_s(x) for x in p] for p in ki.orbit]
            payload["axis_triple"] = [_s(x) for x in ki.axis_triple]
        elif kind == "dihedral":
            payload["invariant"] = _descr(dihedral_class(gens, G.n, q, args.budget))
        else:
            rep = verify_subgroup(gens, q)
            if rep.iso_type != G:
                raise NotInGroup(f"matrices generate a group of order {rep.order}, not {G.label}")
            payload["invariant"] = "unique class"
        text = f"class of the given {G.label}: " + json.dumps(payload["invariant"], sort_keys=True)
    elif args.same_class:
        a, b = args.same_class
        if kind == "involution":
            ca, cb = _sq(a, k), _sq(b, k)
            for c in (ca, cb):
                if not represents(q.normalized()[0], c.element):
                    raise NotRepresentable(f"{c} is not represented by the normalized form")
            same = ca == cb
        elif kind == "klein":
            qn, _ = q.normalized()
            x, y = _pair(a, k), _pair(b, k)
            al, be = _ab(qn)
            if not (in_Q_ab(x, al, be, k) and in_Q_ab(y, al, be, k)):
                raise NotRepresentable("pair outside Q_(a,b)")
            same = s3_orbit(x, al, be, k) == s3_orbit(y, al, be, k)
        elif kind == "dihedral":
            same = dihedral_same_class(_sq(a, k), _sq(b, k), G.n, q)
        else:
            same = bool(embeds(G, q))
        payload["same_class"] = same
        payload["pair"] = [a, b]
        text = f"{a} and {b} {'give' if same else 'do not give'} conjugate {G.label} subgroups"
    elif args.representative:
        if kind == "involution":
            gs = representative_involution(_sq(args.representative, k), q, args.budget)
            payload["invariant"] = _s(_sq(args.representative, k))
        elif kind == "klein":
            gs = klein_representative(_pair(args.representative, k), q, args.budget)
            payload["invariant"] = [_s(x) for x in klein_invariant(gs, q).pair]
        elif kind == "dihedral":
            d, gs = dihedral_representative(_sq(args.representative, k), G.n, q, args.budget)
            payload["invariant"] = _descr(d)
        else:
            gs = synthesize_generators(G, q, args.budget)
            payload["invariant"] = "unique class"
        payload["certificate"] = certificate(gs)
        text = f"representative {G.label} for {args.representative}:\n" + \
            "\n".join("  " + json.dumps(_mat_json(g)) for g in gs.gens)
    else:
        s = conjugacy_summary(G, q)
        payload.update({
            "mode": s.mode,
            "count": None if s.count is None else _s(s.count),
            "classes": [_s(c) if not isinstance(c, tuple) else [_s(x) for x in c] for c in s.classes],
            "parametrization": s.parametrization,
            "reasons": s.reasons,
        })
        if s.mode == "count":
            text = f"{G.label} in SO({q}) over {k}: {s.count} conjugacy class(es); {s.parametrization}"
        else:
            text = f"{G.label} in SO({q}) over {k}: classes parametrized by {s.parametrization}"
    _emit(args, payload, text)
    return 0


def cmd_oracle(args):
    k = _field(f"F{args.p}")
    if not k.p:
        raise UsageError("--p must be an odd prime")
    if args.form:
        entries = _parse_entries(args.form, k)
        if len(entries) != 3:
            raise UsageError("--form needs three entries")
        try:
            q = make_form(entries, k)
        except (ValueError, SOQError) as e:
            raise UsageError(f"bad form: {e}")
    else:
        q = make_form((1, 1, 1), k)
    census = subgroup_census(q)
    lines = [f"SO({q}) over {k}: {census.group_order} elements"]
    lines += [f"  {e.label:<16} subgroups {e.subgroup_count:>4}  classes {e.conjugacy_class_count}"
              for e in census.entries]
    payload = {
        "p": _s(census.p), "form": _form_json(q), "group_order": _s(census.group_order),
        "entries": [{"type": e.label, "order": _s(e.order), "p_irregular": e.p_irregular,
                     "subgroups": _s(e.subgroup_count), "classes": _s(e.conjugacy_class_count),
                     "representatives": [[_mat_json(g) for g in r] for r in e.representatives]}
                    for e in census.entries],
    }
    code = 0
    if args.cross_check:
        rep = cross_check(q)
        lines.append(rep.table())
        payload["cross_check"] = rep.to_json()
        code = 0 if rep.ok else 1
    _emit(args, payload, "\n".join(lines))
    return code


def verify_certificate(data) -> list[tuple[str, bool]]:
    """Re-check a certificate; returns (check, passed) pairs."""
    k = _field(data["field"])
    q = make_form([k.parse(str(x)) for x in data["form"]], k)
    G = _group(data["group"])
    mats = [_matrix(M, k) for M in data["generators"]]
    Q = q.gram()
    checks = []
    for i, M in enumerate(mats):
        checks.append((f"generator {i} preserves q", la.congruent(M, Q) == Q))
        checks.append((f"generator {i} has det 1", la.det(M) == 1))
    if not all(ok for _, ok in checks):
        return checks
    if G.kind in _PRESENTATIONS and not (G.kind == "C" and G.n <= 2 or G == KLEIN):
        for rel, ok in check_relations(G, mats).items():
            checks.append((f"relation {rel} = 1", ok))
    rep = verify_subgroup(mats, q, cap=max(2 * G.order, 2))
    checks.append((f"order is {G.order}", rep.order == G.order))
    checks.append((f"isomorphism type is {G.label}", rep.iso_type == G))
    stated = str(data.get("order", G.order))
    checks.append(("stated order matches", stated == str(rep.order)))
    return checks


def cmd_verify(args):
    data = _read_json(args.path)
    try:
        checks = verify_certificate(data)
    except (KeyError, TypeError, IndexError) as e:
        raise UsageError(f"malformed certificate: {e!r}")
    except SOQError as e:
        checks = [(f"closure: {type(e).__name__}", False)]
    ok = all(c for _, c in checks)
    lines = [f"{'PASS' if c else 'FAIL'}  {name}" for name, c in checks]
    lines.append("PASS" if ok else "FAIL")
    payload = {"ok": ok, "checks": [{"check": n, "passed": c} for n, c in checks]}
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="soq", description="Finite subgroups of SO(q) for ternary forms over Q and F_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    def shared(p, form=True):
        if form:
            p.add_argument("--field", default="Q", help="Q or F<p>")
            p.add_argument("--form", help="diagonal entries d1,d2,d3")
            p.add_argument("--gram", help="JSON file with a symmetric 3x3 Gram matrix")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search height budget")
        p.add_argument("--json", help="write JSON output to this path ('-' for stdout)")

    p = sub.add_parser("classify", help="which finite groups embed")
    shared(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("embed", help="decide whether one group embeds")
    shared(p)
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("synth", help="build verified generator matrices")
    shared(p)
    p.add_argument("--group", required=True)
    p.add_argument("--out", help="write the certificate JSON here")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("conj", help="conjugacy classes and invariants")
    shared(p)
    p.add_argument("--group", required=True)
    p.add_argument("--class-of", help="JSON file with the generator matrices of a subgroup")
    p.add_argument("--same-class", nargs=2, metavar=("C1", "C2"))
    p.add_argument("--representative", metavar="D")
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("oracle", help="brute-force census over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--form", help="diagonal entries d1,d2,d3 (default 1,1,1)")
    p.add_argument("--cross-check", action="store_true")
    shared(p, form=False)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="re-check a generator certificate")
    p.add_argument("path")
    p.add_argument("--json", help="write JSON output to this path ('-' for stdout)")
    p.set_defaults(func=cmd_verify)
    # let "-1,-1,1" and "-3/4" through as values rather than options
    for parser in [ap, *sub.choices.values()]:
        parser._negative_number_matcher = _NEGATIVE_LITERALS
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (SOQError, ValueError, ArithmeticError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
