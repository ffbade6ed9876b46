"""Command-line front end.

Exit codes: 0 success, 1 law or theorem violation, 2 input error,
3 budget exceeded, 4 a functor lift was refused (class not closed).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .canext import (
    canonical_extension,
    check_compactness,
    check_density,
    check_embedding_preservation,
    check_routes,
)
from .errors import AxiomViolation, BudgetExceeded, ClassNotClosed, InvalidInput, ShapeMismatch
from .funext import (
    ExtensionBundle,
    check_adjunction,
    check_functoriality,
    check_virtual_adjoint,
    commutation_report,
)
from .io import (
    FORMAT_VERSION,
    automaton_from_json,
    canext_config_from_json,
    context_from_json,
    dumps,
    load_json,
    map_from_json,
    parse_quantale_arg,
    quantale_from_json,
    relation_from_json,
    space_from_json,
)
from .limits import observability, reachability
from .macneille import covering_edges, enumerate_concepts, to_dot
from .oracle import (
    accepted_words,
    oracle_concepts,
    oracle_residual,
    oracle_space_ok,
    reaching_words,
)
from .quantale import check_quantale_laws
from .space import is_skeletal

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET, EXIT_REFUSED = range(5)


class _Fail(Exception):
    def __init__(self, code, report):
        super().__init__(code)
        self.code = code
        self.report = report


def _report(command, **fields):
    return {"formatVersion": FORMAT_VERSION, "command": command, **fields}


def _budget(args, default):
    return args.budget if args.budget is not None else default


# -- check -------------------------------------------------------------------


def _check_quantale(q, args):
    laws = check_quantale_laws(q)
    out = {
        "target": "quantale",
        "quantale": q.describe(),
        "carrierSize": q.carrier_size,
        "commutative": laws.commutative,
        "laws": [
            {"law": r.name, "ok": r.passed}
            | ({} if r.passed else
               {"counterexample": [q.value_to_json(v) for v in r.counterexample]})
            for r in laws.results
        ],
    }
    ok = laws.ok
    if args.oracle:
        rng = random.Random(args.seed)
        carrier = q.carrier()
        mismatches = 0
        for _ in range(args.samples):
            a, c = rng.choice(carrier), rng.choice(carrier)
            if q.rres(a, c) != oracle_residual(q, a, c, "right"):
                mismatches += 1
            if q.lres(c, a) != oracle_residual(q, a, c, "left"):
                mismatches += 1
        out["oracle"] = {"samples": args.samples, "seed": args.seed, "mismatches": mismatches}
        ok = ok and mismatches == 0
    out["ok"] = ok
    return out


def _violation(exc: AxiomViolation):
    return {"ok": False, "violation": {"axiom": exc.axiom, "witness": list(exc.witness)}}


def cmd_check(args):
    default_q = parse_quantale_arg(args.quantale) if args.quantale else None
    if args.file is None:
        if default_q is None:
            raise InvalidInput("check needs a file or --quantale")
        return _check_quantale(default_q, args)
    doc = load_json(args.file)
    if not isinstance(doc, dict):
        raise InvalidInput("expected a JSON object")
    if "kind" in doc:
        return _check_quantale(quantale_from_json(doc), args)
    try:
        if "points" in doc:
            X = space_from_json(doc, default_q)
            out = {"target": "space", "ok": True, "points": len(X), "skeletal": is_skeletal(X)}
            if args.oracle:
                out["oracle"] = oracle_space_ok(X.quantale, X.hom)
            return out
        if "matrix" in doc:
            R = relation_from_json(doc, default_q)
            return {"target": "relation", "ok": True, "shape": [len(R.source), len(R.target)]}
        if "I" in doc:
            I = context_from_json(doc, default_q)
            return {"target": "context", "ok": True, "shape": [len(I.X), len(I.A)]}
    except AxiomViolation as exc:
        target = "space" if "points" in doc else "relation" if "matrix" in doc else "context"
        raise _Fail(EXIT_VIOLATION, {"target": target} | _violation(exc)) from None
    raise InvalidInput("cannot tell which kind of document this is")


# -- concepts ----------------------------------------------------------------


def cmd_concepts(args):
    default_q = parse_quantale_arg(args.quantale) if args.quantale else None
    I = context_from_json(load_json(args.file), default_q)
    q = I.quantale
    M = enumerate_concepts(I, _budget(args, 200_000))
    out = {
        "quantale": q.describe(),
        "count": len(M),
        "concepts": [k.to_json(q) for k in M.concepts],
        "covers": [[M.points[i], M.points[j]] for i, j in covering_edges(M)],
        "ok": True,
    }
    if args.oracle:
        ref = oracle_concepts(q, I.matrix, len(I.A))
        agree = [(e, i) for e, i in ref] == [(k.extent, k.intent) for k in M.concepts]
        out["oracle"] = {"count": len(ref), "agrees": agree}
        out["ok"] = agree
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(M))
    return out


# -- canext ------------------------------------------------------------------


def _canext(path, args, filters=None, ideals=None):
    default_q = parse_quantale_arg(args.quantale) if args.quantale else None
    C, f_spec, i_spec = canext_config_from_json(load_json(path), default_q)
    return canonical_extension(C, filters or f_spec, ideals or i_spec, _budget(args, 1_000_000))


def _verdict(v):
    return {"ok": v.ok} | ({} if v.ok else {"witness": _plain(v.witness)})


def _plain(w):
    if isinstance(w, tuple):
        return [_plain(x) for x in w]
    if hasattr(w, "label"):
        return repr(w)
    return w if isinstance(w, (str, int, bool)) or w is None else str(w)


def cmd_canext(args):
    E = _canext(args.file, args, args.filters, args.ideals)
    q = E.quantale
    comp, dens, routes = check_compactness(E), check_density(E), check_routes(E)
    pres = check_embedding_preservation(E)
    out = {
        "quantale": q.describe(),
        "filterClass": E.filter_spec,
        "idealClass": E.ideal_spec,
        "filters": len(E.filters),
        "ideals": len(E.ideals),
        "concepts": len(E.delta),
        "compactness": _verdict(comp),
        "density": _verdict(dens),
        "routes": _verdict(routes),
        "embedding": {p: E.delta.points[k] for p, k in zip(E.base.points, E.embedding)},
        "preservationFailures": pres.failures,
        "ok": comp.ok and dens.ok and routes.ok,
    }
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(E.delta, "canonical_extension"))
    return out


# -- extend ------------------------------------------------------------------


def cmd_extend(args):
    EC = _canext(args.source, args, args.classes, args.classes)
    ED = _canext(args.target, args, args.classes, args.classes)
    default_q = EC.quantale
    G = map_from_json(load_json(args.functor), EC.base, ED.base)
    try:
        bundle = ExtensionBundle(G, EC, ED)
    except ShapeMismatch as exc:
        raise _Fail(EXIT_VIOLATION, {"ok": False, "error": str(exc)}) from None
    pre = bundle.preconditions()
    out = {"quantale": default_q.describe(), "preconditions": pre}
    out["commutation"] = {
        "pi": [{"ideal": EC.context.A.points[k], "colimit": label}
               for k, label in commutation_report(bundle, "pi")],
        "sigma": [{"filter": EC.context.X.points[k], "limit": label}
                  for k, label in commutation_report(bundle, "sigma")],
    }
    exch_ok = bundle.exchange_sweep().ok
    out["exchange"] = exch_ok
    ok = exch_ok
    refused = None
    checks = {}
    for side, adj in (("l", "l-pi"), ("r", "sigma-r")):
        try:
            bundle.require(side)
        except ClassNotClosed as exc:
            refused = refused or exc
            checks[side] = {"refused": True, "violator": exc.name,
                            "vector": [default_q.value_to_json(v) for v in exc.violator]}
            continue
        entry = {"virtualAdjoint": check_virtual_adjoint(bundle, side).ok,
                 "functorial": check_functoriality(bundle, side).ok}
        if args.check in ("adjunction", "all"):
            dual_ok = pre["pi"] if side == "l" else pre["sigma"]
            entry["adjunction"] = check_adjunction(bundle, adj).ok
            entry["adjunctionHypotheses"] = dual_ok
            if dual_ok:
                ok = ok and entry["adjunction"]
        ok = ok and entry["virtualAdjoint"] and entry["functorial"]
        checks[side] = entry
    out["lifts"] = checks
    out["ok"] = ok and refused is None
    if refused is not None:
        raise _Fail(EXIT_REFUSED, out | {"error": str(refused)})
    return out


# -- automata ----------------------------------------------------------------


def cmd_automata(args):
    default_q = parse_quantale_arg(args.quantale) if args.quantale else None
    doc = load_json(args.file)
    A, transitions, initial, final = automaton_from_json(doc, default_q)
    q = A.quantale
    obs, reach = observability(A, final), reachability(A, initial)
    out = {
        "quantale": q.describe(),
        "states": list(A.points),
        "observability": {p: q.value_to_json(v) for p, v in zip(A.points, obs)},
        "reachability": {p: q.value_to_json(v) for p, v in zip(A.points, reach)},
        "ok": True,
    }
    if args.oracle:
        fin = [p for p, v in zip(A.points, final) if v]
        ini = [p for p, v in zip(A.points, initial) if v]
        acc = accepted_words(A.points, transitions, fin, q.max_len)
        rea = reaching_words(A.points, transitions, ini, q.max_len)
        agree = all(set(obs[k]) == acc[p] and set(reach[k]) == rea[p]
                    for k, p in enumerate(A.points))
        out["oracle"] = {"agrees": agree}
        out["ok"] = agree
    return out


# -- rendering ---------------------------------------------------------------


def _scalar(v):
    return v if isinstance(v, str) else json.dumps(v, ensure_ascii=False)


def _text(report, indent=0):
    pad = "  " * indent
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  - " + ", ".join(f"{a}={_scalar(b)}" for a, b in item.items()))
        else:
            lines.append(f"{pad}{k}: {_scalar(v)}")
    return lines


def _emit(report, args):
    text = dumps(report) if args.json else "\n".join(_text(report)) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quantale", help="bool2, lawvere:N, similarity:N, language:ab:L or JSON")
    common.add_argument("--budget", type=int, help="override the enumeration budget")
    common.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("-o", "--output", help="write the report to a file")

    p = argparse.ArgumentParser(prog="qcanext", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check laws of a quantale, space or relation")
    c.add_argument("file", nargs="?")
    c.add_argument("--samples", type=int, default=200)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("concepts", parents=[common], help="enumerate the concepts of a context")
    c.add_argument("file")
    c.add_argument("--dot", help="write the concept order as DOT")
    c.set_defaults(func=cmd_concepts)

    c = sub.add_parser("canext", parents=[common], help="build and check a canonical extension")
    c.add_argument("file")
    c.add_argument("--filters", choices=("all", "representables", "finlim"))
    c.add_argument("--ideals", choices=("all", "representables", "finlim"))
    c.add_argument("--dot")
    c.set_defaults(func=cmd_canext)

    c = sub.add_parser("extend", parents=[common], help="extend a functor to canonical extensions")
    c.add_argument("--functor", required=True)
    c.add_argument("--source", required=True)
    c.add_argument("--target", required=True)
    c.add_argument("--classes", choices=("all", "representables", "finlim"))
    c.add_argument("--check", choices=("adjunction", "lifts", "all"), default="adjunction")
    c.set_defaults(func=cmd_extend)

    c = sub.add_parser("automata", parents=[common], help="observability and reachability")
    c.add_argument("file")
    c.set_defaults(func=cmd_automata)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
        code = EXIT_OK if report.get("ok", True) else EXIT_VIOLATION
    except _Fail as fail:
        report, code = fail.report, fail.code
    except BudgetExceeded as exc:
        report, code = {"ok": False, "error": str(exc), "required": exc.required,
                        "budget": exc.budget}, EXIT_BUDGET
    except InvalidInput as exc:
        report, code = {"ok": False, "error": str(exc)}, EXIT_INPUT
    _emit(_report(args.command, **report), args)
    return code


if __name__ == "__main__":
    sys.exit(main())
