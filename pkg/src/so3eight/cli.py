"""Command-line front end.

Exit codes: 0 when every check in the command passed, 1 when a check
failed (or an internal consistency assertion fired), 2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from so3eight import __version__, charclass, exforms, liealg, torsion
from so3eight.kernels import BACKEND
from so3eight.repring import (
    Character,
    RepError,
    VirtualRep,
    decompose,
    exterior_power,
    real_dimension,
    symmetric_power,
    tensor,
)
from so3eight.verify import Check, Report, verify_paper

DEFAULT_SEED = 0
FORM_NAMES = ("alpha", "beta", "gamma", "*gamma", "*alpha", "*beta")


class UsageError(Exception):
    pass


# -- argument parsing ----------------------------------------------------------------

def _common(defaults: bool) -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--json", action="store_true", help="emit JSON instead of text", **sup)
    p.add_argument("--seed", type=int, help="seed for random sampling (default 0)",
                   **({"default": DEFAULT_SEED} if defaults else sup))
    p.add_argument("--resolution", type=int, help="pencil scan grid resolution (default 4)",
                   **({"default": 4} if defaults else sup))
    return p


def build_parser() -> argparse.ArgumentParser:
    leaf = [_common(False)]
    parser = argparse.ArgumentParser(prog="so3eight", parents=[_common(True)],
                                     description="Exact rational algebra for the irreducible SO(3) action on R^8.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    rep = sub.add_parser("rep", help="representation ring of SO(3)").add_subparsers(dest="action", metavar="ACTION")
    rep.required = True
    p = rep.add_parser("decompose", parents=leaf, help="normalise an expression or decompose a weight list")
    p.add_argument("expr", nargs="?", help='representation such as "2S6+S4-3S2"')
    p.add_argument("--weights", help="comma-separated integer weights to decompose")
    p = rep.add_parser("tensor", parents=leaf, help="tensor product of two representations")
    p.add_argument("a")
    p.add_argument("b")
    p = rep.add_parser("power", parents=leaf, help="exterior or symmetric power")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ext", type=int, metavar="K")
    g.add_argument("--sym", type=int, metavar="K")
    p.add_argument("expr")

    alg = sub.add_parser("alg", help="subalgebras of so(8)").add_subparsers(dest="action", metavar="ACTION")
    alg.required = True
    p = alg.add_parser("build", parents=leaf, help="build an algebra and report it")
    p.add_argument("kind", choices=liealg.KINDS)
    p.add_argument("--basis", action="store_true", help="include the subspace basis as 8x8 matrices")
    p = alg.add_parser("intersect", parents=leaf, help="intersect two algebras")
    p.add_argument("a", choices=liealg.KINDS)
    p.add_argument("b", choices=liealg.KINDS)
    p = alg.add_parser("complement", parents=leaf, help="orthogonal complements and the quotient identities")
    p.add_argument("kind", nargs="?", choices=liealg.KINDS)
    p = alg.add_parser("isotypes", parents=leaf, help="isotypic decomposition under g")
    p.add_argument("kind", choices=liealg.KINDS)

    forms = sub.add_parser("forms", help="invariant exterior forms").add_subparsers(dest="action", metavar="ACTION")
    forms.required = True
    forms.add_parser("invariants", parents=leaf, help="invariant forms and invariant dimensions")
    p = forms.add_parser("star", parents=leaf, help="Hodge star of a form")
    p.add_argument("form", help="a form name (alpha, ..., *beta) or KForm JSON")
    p = forms.add_parser("stabilizer", parents=leaf, help="stabiliser of a form in so(8)")
    p.add_argument("form", help="a form name, 'gamma+*gamma'-style sum of names, or KForm JSON")
    forms.add_parser("pencil", parents=leaf, help="stabiliser dimension along the gamma / *gamma pencil")

    cc = sub.add_parser("charclass", help="characteristic classes").add_subparsers(dest="action", metavar="ACTION")
    cc.required = True
    p = cc.add_parser("report", parents=leaf, help="Chern character, Pontrjagin classes, relations, genera")
    p.add_argument("--weights", help="comma-separated rational weights (default: the tangent bundle)")
    p = cc.add_parser("acs", parents=leaf, help="classify almost complex structures by (1,0)-weights")
    p.add_argument("--weights", help="comma-separated (1,0)-weights; omitted reports J, J', J'' and conjugates")

    tor = sub.add_parser("torsion", help="intrinsic torsion").add_subparsers(dest="action", metavar="ACTION")
    tor.required = True
    tor.add_parser("table", parents=leaf, help="relative torsion table")
    p = tor.add_parser("cases", parents=leaf, help="the four invariant-torsion families")
    p.add_argument("--samples", type=int, default=0, help="also classify this many random admissible pairs")
    p = tor.add_parser("classify", parents=leaf, help="classify a concrete pair (A, B)")
    p.add_argument("--a", required=True, help='2x2 matrix "a11,a12;a21,a22"')
    p.add_argument("--b", required=True, help='2x2 matrix "b11,b12;b21,b22"')
    tor.add_parser("cyclic", parents=leaf, help="cyclic identities between relative torsion components")

    sub.add_parser("verify-paper", parents=leaf, help="run every acceptance check")
    sub.add_parser("conventions", parents=leaf, help="print the frozen conventions")
    return parser


# -- helpers -----------------------------------------------------------------------

def _parse_rep(text: str) -> VirtualRep:
    try:
        return VirtualRep.parse(text)
    except RepError as exc:
        raise UsageError(str(exc)) from None


def _parse_matrix(text: str) -> list:
    try:
        rows = [[Fraction(x.strip()) for x in r.split(",")] for r in text.split(";")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad matrix {text!r}: {exc}") from None
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise UsageError(f"matrix {text!r} is not 2x2")
    return rows


def _parse_weights(text: str) -> charclass.WeightBundle:
    try:
        return charclass.WeightBundle.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weight list {text!r}: {exc}") from None


def _parse_form(text: str) -> exforms.KForm:
    named = exforms.locate_invariant_forms()
    text = text.strip()
    if text.startswith("{"):
        try:
            return exforms.KForm.from_json(text)
        except (ValueError, KeyError, exforms.FormError) as exc:
            raise UsageError(f"bad form JSON: {exc}") from None
    total = None
    for piece in text.replace("-", "+-").split("+"):
        piece = piece.strip()
        if not piece:
            continue
        sign = -1 if piece.startswith("-") else 1
        name = piece.lstrip("-").strip()
        if name not in named:
            raise UsageError(f"unknown form {name!r}; expected one of {', '.join(FORM_NAMES)} or KForm JSON")
        f = named[name].scale(sign)
        total = f if total is None else total + f
    if total is None:
        raise UsageError("empty form")
    return total


def _rep_result(r: VirtualRep) -> dict:
    dim, per = real_dimension(r) if r.is_genuine() else (None, [])
    return {"rep": r.to_json(), "text": str(r), "complex_dim": r.dim, "real_dim": dim, "summands": per}


def _check(name: str, anchor: str, expected, computed, passed: bool, note=None) -> Check:
    return Check(0, name, anchor, expected, computed, passed, note)


# -- command handlers ---------------------------------------------------------------

def cmd_rep(args, report: Report):
    if args.action == "decompose":
        if args.weights is not None:
            try:
                ws = [int(w) for w in args.weights.split(",") if w.strip()]
            except ValueError:
                raise UsageError(f"weights must be integers: {args.weights!r}") from None
            try:
                r = decompose(Character.from_weights(ws))
            except RepError as exc:
                raise UsageError(str(exc)) from None
        elif args.expr is not None:
            r = _parse_rep(args.expr)
        else:
            raise UsageError("give an expression or --weights")
        report.result = _rep_result(r)
    elif args.action == "tensor":
        report.result = _rep_result(tensor(_parse_rep(args.a), _parse_rep(args.b)))
    elif args.action == "power":
        r = _parse_rep(args.expr)
        k = args.ext if args.ext is not None else args.sym
        try:
            out = exterior_power(r, k) if args.ext is not None else symmetric_power(r, k)
        except RepError as exc:
            raise UsageError(str(exc)) from None
        report.result = _rep_result(out)
    report.text = json.dumps(report.result["rep"])


def cmd_alg(args, report: Report):
    if args.action == "build":
        m = liealg.build_algebra(args.kind)
        res = m.report()
        if args.basis:
            res["space"] = liealg.subspace_to_json(m.space)
        report.result = res
        report.text = f"{m.name}: dim {m.dim}, bracket closed {m.bracket_closed}, contains g {m.contains_g}"
        report.checks.append(_check(f"{m.name} is a subalgebra containing g", "the complements in so(8)",
                                    True, m.bracket_closed and m.contains_g, m.bracket_closed and m.contains_g))
    elif args.action == "intersect":
        a, b = liealg.build_algebra(args.a).space, liealg.build_algebra(args.b).space
        inter = a.intersect(b)
        eq_g = inter == liealg.build_algebra("g").space
        report.result = {"a": args.a, "b": args.b, "dim": inter.dim, "equals_g": eq_g,
                         "space": liealg.subspace_to_json(inter)}
        report.text = f"{args.a} ∩ {args.b}: dim {inter.dim}, equals g: {eq_g}"
    elif args.action == "complement":
        if args.kind:
            space = liealg.build_algebra(args.kind).space
            perp = liealg.orth_complement(space)
            iso = liealg.isotypes_of(perp) if args.kind != "so8" else VirtualRep()
            report.result = {"kind": args.kind, "perp_dim": perp.dim, "isotypes": iso.to_json(),
                             "space": liealg.subspace_to_json(perp)}
            report.text = f"{args.kind}^perp: dim {perp.dim}, isotypes {iso}"
        else:
            rep = liealg.verify_complement_theorem()
            report.result = rep
            lines = []
            for c in rep["cyclic"]:
                lines.append(f"{c['perp']}^perp (dim {c['perp_dim']}) vs {c['summands'][0]}/g + {c['summands'][1]}/g "
                             f"(dims {c['summand_dims']}): direct {c['direct']}, exact {c['exact_equal']}, "
                             f"isomorphic by projection {c['isomorphic_by_projection']}")
                report.checks.append(_check(f"{c['perp']}^perp equals the sum of the other quotients",
                                            "the complements in so(8)", True, c["exact_equal"],
                                            c["exact_equal"] and c["direct"]))
            lines.append(f"g^perp (dim {rep['g_perp_dim']}) = sum of quotients: {rep['g_perp_exact_equal']}")
            report.checks.append(_check("g^perp is the direct sum of the quotients", "the complements in so(8)",
                                        True, rep["g_perp_exact_equal"],
                                        rep["g_perp_exact_equal"] and rep["g_perp_direct_sum"]))
            report.text = "\n".join(lines)
    elif args.action == "isotypes":
        m = liealg.build_algebra(args.kind)
        res = {"kind": args.kind, "algebra": liealg.isotypes_of(m.space).to_json()}
        if args.kind not in ("g",) and m.contains_g:
            res["quotient"] = liealg.quotient_isotypes(m).to_json()
        if args.kind != "so8":
            res["perp"] = liealg.isotypes_of(liealg.orth_complement(m.space)).to_json()
        report.result = res
        report.text = "\n".join(f"{k}: {VirtualRep.from_json(v)}" for k, v in res.items() if k != "kind")


def cmd_forms(args, report: Report):
    if args.action == "invariants":
        named = exforms.locate_invariant_forms()
        dims = {k: exforms.invariant_subspace(k).dim for k in range(9)}
        report.result = {
            "invariant_dims": dims,
            "forms": {n: {"form": f.to_json(), "norm2": str(f.norm2()), "support": exforms.support_profile(f)}
                      for n, f in named.items()},
        }
        lines = [f"invariant dims by degree: {dims}"]
        lines += [f"{n} (norm^2 {f.norm2()}, V-degree profile {exforms.support_profile(f)}): {f.pretty()}"
                  for n, f in named.items()]
        report.text = "\n".join(lines)
        ok = [dims[3], dims[4], dims[5]] == [2, 2, 2]
        report.checks.append(_check("invariant dims (2,2,2) in degrees 3,4,5", "Ω = γ + *γ; Ω′ = γ − *γ",
                                    [2, 2, 2], [dims[3], dims[4], dims[5]], ok))
    elif args.action == "star":
        f = _parse_form(args.form)
        s = exforms.hodge_star(f)
        report.result = {"form": f.to_json(), "star": s.to_json()}
        report.text = s.pretty()
    elif args.action == "stabilizer":
        f = _parse_form(args.form)
        stab = exforms.stabilizer(f)
        closed = liealg.is_bracket_closed(stab)
        ideal_dims = sorted((i.dim for i in liealg.ideals(stab)), reverse=True) if closed and stab.dim else []
        g_in = liealg.build_algebra("g").space.issubspace(stab)
        report.result = {"dim": stab.dim, "bracket_closed": closed, "ideal_dims": ideal_dims, "contains_g": g_in,
                         "space": liealg.subspace_to_json(stab)}
        report.text = f"stabiliser: dim {stab.dim}, bracket closed {closed}, ideals {ideal_dims}, contains g {g_in}"
    elif args.action == "pencil":
        pencil = exforms.invariant_pencil(resolution=args.resolution)
        scan = exforms.pencil_scan(pencil)
        rays = [{"slope": None if r["slope"] is None else str(r["slope"]), "stabilizer_dim": r["stabilizer_dim"]}
                for r in scan["rays"]]
        jumps = [{"slope": None if r["slope"] is None else str(r["slope"]), "stabilizer_dim": r["stabilizer_dim"]}
                 for r in scan["jumps"]]
        report.result = {"resolution": args.resolution, "generic_dim": scan["generic_dim"], "jumps": jumps,
                         "rays": rays}
        report.text = "\n".join([f"generic stabiliser dim {scan['generic_dim']} over {len(rays)} rays"] +
                                [f"jump at gamma + ({j['slope']})*(*gamma): dim {j['stabilizer_dim']}" for j in jumps])
        ok = len(jumps) == 2 and all(j["stabilizer_dim"] == 13 for j in jumps)
        report.checks.append(_check("two jump rays of dimension 13", "Ω = γ + *γ; Ω′ = γ − *γ", 2, len(jumps), ok))


def cmd_charclass(args, report: Report):
    if args.action == "report":
        bundle = _parse_weights(args.weights) if args.weights else charclass.T_C
        try:
            res = charclass.report(bundle)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report.result = res
        report.text = "\n".join([
            f"ch = {res['ch']['text']}",
            f"p1 = {res['p1']['text']}",
            f"p2 = {res['p2']['text']}",
            f"4p2 = p1^2: {res['relations']['four_p2_eq_p1sq']}",
            f"e = 0: {res['relations']['euler_zero']}",
            f"p1^2 divisible by {res['relations']['divisibility']['bound']}",
            f"L2 = {res['genera']['L2']}, Ahat2 = {res['genera']['Ahat2']}",
        ])
    elif args.action == "acs":
        if args.weights:
            j = _parse_weights(args.weights)
            try:
                kind = charclass.acs_classify(j)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            report.result = {"weights": [str(w) for w in j.weights], "class": kind}
            report.text = kind
        else:
            res = charclass.acs_report()
            report.result = res
            report.text = "\n".join(f"{k}: {v}" for k, v in {**res["base"], **res["conjugates"]}.items())


def cmd_torsion(args, report: Report):
    if args.action == "table":
        table = torsion.torsion_table()
        report.result = table.to_json()
        report.text = table.text()
    elif args.action == "cases":
        fams = torsion.enumerate_invariant_cases()
        res = {"families": [f.to_json() for f in fams]}
        lines = []
        for f in fams:
            d = f.to_json()["differentials"]
            lines.append(f"{f.tag}: rank A {f.rank_a}, rank B in {list(f.ranks_b)}; "
                         + ", ".join(f"{k} = {v}" for k, v in d.items()))
        if args.samples:
            stats = torsion.sample_cases(args.samples, args.seed)
            res["sampling"] = stats
            lines.append(f"sampled {stats['samples']} pairs (seed {stats['seed']}): {stats['counts']}")
            report.checks.append(_check("every sample lands in exactly one family",
                                        "one of the following four sets of differential equations", 0,
                                        stats["unclassified_or_ambiguous"],
                                        stats["unclassified_or_ambiguous"] == 0 and stats["all_ba_zero"]))
        report.result = res
        report.text = "\n".join(lines)
    elif args.action == "classify":
        tag = torsion.case_classify(_parse_matrix(args.a), _parse_matrix(args.b))
        report.result = {"family": tag}
        report.text = tag
    elif args.action == "cyclic":
        res = torsion.verify_cyclic_identities()
        report.result = res
        lines = [f"tau^{s['label']} ({s['algebra']}): dims {s['dims']}, rep identity {s['rep_identity']}, "
                 f"direct {s['direct']}, exact {s['exact_equal']}" for s in res["splits"]]
        t = res["three_term"]
        lines.append(f"tau_G = {' + '.join(t['terms'])}: dims {t['dims']} of {t['total_dim']}, "
                     f"direct {t['direct']}, exact {t['exact_equal']}")
        report.text = "\n".join(lines)
        report.checks.append(_check("direct-sum certificates", "satisfy the cyclic conditions", True,
                                    res["certificates_ok"], res["certificates_ok"]))


def cmd_verify(args, report: Report):
    full = verify_paper()
    report.checks = full.checks
    report.notes = full.notes
    report.result = full.result
    report.text = full.table()


def cmd_conventions(args, report: Report):
    report.result = {
        "version": __version__,
        "kernel_backend": BACKEND,
        "basis": liealg.REFERENCE.to_json(),
        "model": "R^8 = su(3) with X = A + i sqrt(3) S stored as rational pairs (A, S); "
                 "inner product -tr(AB)/2 + 3 tr(ST)/2",
        "split": "indices 1-3 span V = S^2, indices 4-8 span W = S^4",
        "orientation": "e1^...^e8 is positive; Hodge star by the sign of the permutation (I, complement)",
        "so8_coordinates": "upper-triangular entries (i<j) of an antisymmetric 8x8 matrix; -tr(XY) is twice the dot product",
        "casimir": "generators e_i = 2 ad(L_i) with [e1,e2] = 2 e3; Casimir sum e_i^2 acts on S^n by -n(n+2)",
        "forms": "alpha pure Lambda^3 V, beta without Lambda^3 V part, gamma without V^Lambda^3 W part; "
                 "each the primitive integer vector with positive first coefficient",
        "sp2sp1": "stabiliser of gamma + *gamma; gamma - *gamma gives the conjugate copy",
        "real_dims": "even labels are real type (n+1), odd labels quaternionic (2(n+1))",
    }
    report.text = "\n".join(f"{k}: {v}" for k, v in report.result.items() if k != "basis")


HANDLERS = {
    "rep": cmd_rep,
    "alg": cmd_alg,
    "forms": cmd_forms,
    "charclass": cmd_charclass,
    "torsion": cmd_torsion,
    "verify-paper": cmd_verify,
    "conventions": cmd_conventions,
}


def dispatch(argv=None) -> tuple[Report, int, bool]:
    """Parse ``argv`` and run the command; returns (report, exit code, json flag)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    command = [args.command] + ([args.action] if getattr(args, "action", None) else [])
    report = Report(command=command)
    try:
        HANDLERS[args.command](args, report)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"so3eight: error: {exc}", file=sys.stderr)
        return report, 2, args.json
    except (AssertionError, liealg.AlgebraError, exforms.FormError, torsion.TorsionError) as exc:
        report.checks.append(_check("internal consistency", "internal assertion", "no failure",
                                    f"{type(exc).__name__}: {exc}", False))
        return report, 1, args.json
    return report, 0 if report.passed else 1, args.json


def main(argv=None) -> int:
    try:
        report, code, as_json = dispatch(argv)
    except SystemExit as exc:  # argparse usage errors exit 2 already
        return int(exc.code or 0)
    if code == 2:
        return code
    if as_json:
        print(report.dumps())
    else:
        if report.text:
            print(report.text)
        if report.checks and report.command != ["verify-paper"]:
            for c in report.checks:
                print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}  ({c.anchor})")
        for n in report.notes if report.command != ["verify-paper"] else []:
            print(n)
        if code == 1:
            failed = [c.anchor for c in report.checks if not c.passed]
            print(f"failed anchors: {'; '.join(failed)}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
