"""Command line front end.

Exit codes: 0 success, 1 verification or bound failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import covers, fixtures
from .document import ActionDocument, load_document
from .errors import (CertificateError, EqcatError, InputError, LiftObstructed, NoPrincipal,
                     OrderCapExceeded, SearchBudgetExceeded, VerificationFailure)
from .report import BoundsReport
from .strata import (HIERARCHY_KINDS, build_hierarchy, hierarchy_filtration, lower_bound,
                     stratify)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_BUDGET = 20_000


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _perm_cycles(p, label) -> list[list[str]]:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(label(j))
            j = p[j]
        out.append(cyc)
    return out


# -- stratify -------------------------------------------------------------------


def stratify_json(doc: ActionDocument) -> dict:
    K = doc.complex
    rep = stratify(K)
    lb = lower_bound(rep)
    label = K.label
    strata = []
    for st in rep.strata:
        strata.append({
            "id": st.id,
            "type_order": st.type.order,
            "type": [_perm_cycles(g, label) for g in st.type.representative],
            "simplices": [[label(v) for v in K.simplices[i]] for i in sorted(st.simplices)],
            "is_closed": st.is_closed,
            "locally_minimal": st.locally_minimal,
        })
    hier = {}
    for kind in HIERARCHY_KINDS:
        try:
            h = build_hierarchy(K, kind)
        except NoPrincipal as e:
            hier[kind] = {"error": f"NoPrincipal: {e}"}
            continue
        hier[kind] = {
            "values": {str(st.id): h(st.type) for st in rep.strata},
            "filtration": [[n, sorted(ids)] for n, ids in hierarchy_filtration(rep, h)],
        }
    return {
        "name": doc.name,
        "complex": {"vertices": K.n_vertices, "simplices": len(K.simplices),
                    "regularized": doc.regularized and K is not doc.raw},
        "group_order": K.group.order,
        "strata": strata,
        "order_edges": sorted([a, b] for a, b in rep.cover_edges),
        "order": sorted([a, b] for a, b in rep.order),
        "minimal": list(rep.minimal),
        "fixed_components": len(rep.fixed_components),
        "frontier_condition": rep.frontier_condition,
        "lower_bound": {"value": lb.value, "kind": lb.kind},
        "hierarchies": hier,
    }


def cmd_stratify(args) -> int:
    doc = load_document(args.file)
    out = stratify_json(doc)
    if args.json:
        print(_dump(out))
    else:
        print(f"{out['name']}: {len(out['strata'])} strata, "
              f"{out['complex']['simplices']} simplices, group order {out['group_order']}")
        for st in out["strata"]:
            flag = " closed" if st["is_closed"] else ""
            print(f"  stratum {st['id']}: stabilizer order {st['type_order']}, "
                  f"{len(st['simplices'])} simplices{flag}")
        print(f"  locally minimal: {out['minimal']}; Fix(G) components: {out['fixed_components']}")
        print(f"  lower bound {out['lower_bound']['value']} ({out['lower_bound']['kind']})")
    return EXIT_OK


# -- bounds -----------------------------------------------------------------------


def bounds_report(doc: ActionDocument, budget: int = DEFAULT_BUDGET) -> BoundsReport:
    K = doc.complex
    lower, kind = covers.combined_lower_bound(K)
    rep = stratify(K)
    lb = lower_bound(rep)
    lower_cert = {"kind": kind, "minimal_strata": lb.minimal_strata,
                  "fixed_components": lb.fixed_components}
    model = {"engine": "strata+search", "name": doc.name, "budget": budget,
             "vertices": K.n_vertices, "simplices": len(K.simplices)}
    notes = []
    try:
        res = covers.brute_force_cat(K, state_budget=budget)
    except SearchBudgetExceeded as e:
        notes.append(f"search: {e}")
        return BoundsReport(model=model, lower=lower, lower_certificate=lower_cert,
                            upper=None, upper_certificate=None, notes=tuple(notes))
    if res.upper != lower:
        notes.append("bounds differ: the lower-bound certificates cannot see this gap")
    return BoundsReport(model=model, lower=lower, lower_certificate=lower_cert,
                        upper=res.upper, upper_certificate=covers.cover_to_json(K, res.cover),
                        conclusion=f"cat_G = {lower}" if res.upper == lower else None,
                        notes=tuple(notes))


def _print_bounds(r: BoundsReport, as_json: bool):
    if as_json:
        print(r.dumps())
        return
    up = "?" if r.upper is None else r.upper
    state = "exact" if r.exact else "not exact"
    print(f"{r.model.get('name', r.model.get('kind'))}: {r.lower} <= cat <= {up} ({state})")
    if r.conclusion:
        print(f"  {r.conclusion}")
    for note in r.notes:
        print(f"  note: {note}")


def cmd_bounds(args) -> int:
    doc = load_document(args.file)
    r = bounds_report(doc, args.budget)
    _print_bounds(r, args.json)
    return EXIT_OK if r.upper is not None else EXIT_FAIL


# -- cover ------------------------------------------------------------------------


def cmd_cover_verify(args) -> int:
    doc = load_document(args.file)
    K = doc.complex
    try:
        text = Path(args.cert).read_text()
    except OSError as e:
        raise InputError(f"cannot read {args.cert}: {e.strerror}") from e
    cover = covers.loads_cover(K, text)
    try:
        ub = covers.verify_cover(K, cover)
    except CertificateError as e:
        if args.json:
            print(_dump({"verified": False, "error": e.name, "message": str(e)}))
        else:
            print(f"FAIL {e.name}: {e}")
        return EXIT_FAIL
    if args.json:
        print(_dump({"verified": True, "upper": ub.value}))
    else:
        print(f"verified: cat_G <= {ub.value}")
    return EXIT_OK


def cmd_cover_search(args) -> int:
    doc = load_document(args.file)
    K = doc.complex
    res = covers.brute_force_cat(K, state_budget=args.budget)
    text = covers.dumps_cover(K, res.cover)
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"wrote {len(res.cover)}-piece certificate to {args.output}", file=sys.stderr)
    else:
        print(text)
    return EXIT_OK


# -- weyl -------------------------------------------------------------------------


def cmd_weyl(args) -> int:
    from . import weyl
    if args.model == "torus":
        model = weyl.torus_model(args.n, args.epsilon, args.delta, args.mesh,
                                 spread_guard=not args.no_spread_guard)
    elif args.model == "cpn":
        model = weyl.projective_model(args.n, label=args.label)
    else:
        model = weyl.circle_model(args.mesh)
    r = weyl.certify_weyl_cat(model)
    _print_bounds(r, args.json)
    return EXIT_OK if r.exact else EXIT_FAIL


# -- seed corpus ------------------------------------------------------------------


def run_seed_corpus(budget: int = DEFAULT_BUDGET) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for name in fixtures.FIXTURES:
        doc = fixtures.load_fixture(name)
        r = bounds_report(doc, budget)
        row = {"fixture": name, "lower": r.lower, "upper": r.upper, "exact": r.exact}
        if r.upper is None or r.lower > r.upper:
            ok = False
        if name in fixtures.CERTIFICATES:
            try:
                covers.verify_cover(doc.complex, fixtures.load_certificate(name))
                row["certificate"] = "verified"
            except CertificateError as e:
                row["certificate"] = e.name
                ok = False
        rows.append(row)
    return rows, ok


def cmd_seed_corpus(args) -> int:
    rows, ok = run_seed_corpus(args.budget)
    if args.json:
        print(_dump({"fixtures": rows, "ok": ok}))
    else:
        for r in rows:
            cert = f"  certificate {r['certificate']}" if "certificate" in r else ""
            up = "?" if r["upper"] is None else r["upper"]
            print(f"{r['fixture']:20s} {r['lower']} <= cat <= {up}"
                  f"{'  exact' if r['exact'] else ''}{cert}")
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit machine-readable JSON")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"search state budget per core (default {DEFAULT_BUDGET})")

    p = argparse.ArgumentParser(prog="eqcat", parents=[common],
                                description="Certified bounds for equivariant LS category.")
    p.add_argument("--seed-corpus", action="store_true",
                   help="run the shipped fixture suite and exit")
    sub = p.add_subparsers(dest="verb")

    s = sub.add_parser("stratify", parents=[common], help="orbit-type stratification")
    s.add_argument("file")
    s.set_defaults(func=cmd_stratify)

    s = sub.add_parser("bounds", parents=[common], help="lower and upper bounds")
    s.add_argument("file")
    s.set_defaults(func=cmd_bounds)

    c = sub.add_parser("cover", help="cover certificates")
    csub = c.add_subparsers(dest="cover_verb", required=True)
    s = csub.add_parser("verify", parents=[common], help="verify a certificate")
    s.add_argument("file")
    s.add_argument("cert")
    s.set_defaults(func=cmd_cover_verify)
    s = csub.add_parser("search", parents=[common], help="search for a certificate")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cover_search)

    w = sub.add_parser("weyl", help="certify a Weyl model")
    wsub = w.add_subparsers(dest="model", required=True)
    s = wsub.add_parser("torus", parents=[common], help="maximal torus of SU(n+1)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--epsilon")
    s.add_argument("--delta")
    s.add_argument("--mesh")
    s.add_argument("--no-spread-guard", action="store_true",
                   help="drop the spread < 1 condition from the chart sets")
    s.set_defaults(func=cmd_weyl)
    s = wsub.add_parser("cpn", parents=[common], help="RP^n section of CP^n, HP^n, OP^2")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--as", dest="label", choices=["cpn", "hpn", "op2"], default="cpn",
                   help="which space the conclusion is stated for")
    s.set_defaults(func=cmd_weyl)
    s = wsub.add_parser("circle", parents=[common], help="SO(2) acting on the 2-sphere")
    s.add_argument("--mesh")
    s.set_defaults(func=cmd_weyl)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    args.json = getattr(args, "json", False)
    args.budget = getattr(args, "budget", DEFAULT_BUDGET)
    try:
        if args.seed_corpus:
            return cmd_seed_corpus(args)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            return EXIT_INPUT
        return args.func(args)
    except (InputError, OrderCapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (CertificateError, VerificationFailure, SearchBudgetExceeded, LiftObstructed) as e:
        print(f"FAIL {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    except EqcatError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
