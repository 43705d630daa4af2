"""Command-line front end.

Exit status 0 on success, 1 when a precondition fails (a JSON error with
stage and witness goes to stderr), 2 on usage or format errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import serialize as ser
from .constructions import (WideSubgroupoid, collapse, normal_basis, normal_core, quotient,
                            reconstruct, separating_family, separation_report, skeletal_replacement,
                            van_dantzig)
from .errors import DomainError, _jsonable
from .finite_groupoid import (FiniteGroupoid, equivalence_oracle, internal_essentially_surjective,
                              internal_fully_faithful, isotropy, pi0, validate_groupoid,
                              whitehead_equivalence)
from .generators import KINDS as GEN_KINDS, GeneratorSpec, generate
from .realization import AnimaPresentation, limit_commutation_check, pipeline, realize_finite, realize_tower
from .tower import GroupoidTower, pi0_tower, threads_at_depth, validate_tower


class UsageError(Exception):
    pass


def _read(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return ser.loads(text)


def _load(path: str, *kinds: str):
    kind, obj = ser.parse(_read(path))
    if kinds and kind not in kinds:
        raise ser.FormatError(f"expected a {' or '.join(kinds)} document, got {kind}")
    return kind, obj


def _groupoid(args) -> FiniteGroupoid:
    return _load(args.input, "groupoid")[1]


def _groupoid_or_tower(args):
    return _load(args.input, "groupoid", "tower")[1]


def _checked(G: FiniteGroupoid, stage: str = "validate") -> FiniteGroupoid:
    rep = validate_groupoid(G)
    if not rep.ok:
        raise DomainError("input is not a valid groupoid", witness=rep.violations[:10], stage=stage)
    return G


def _checked_any(X, stage: str = "validate"):
    if isinstance(X, GroupoidTower):
        rep = validate_tower(X)
        if not rep.ok:
            raise DomainError("input is not a valid tower", witness=rep.violations[:10], stage=stage)
        return X
    return _checked(X, stage)


def _subset(path: str, G: FiniteGroupoid, stage: str) -> WideSubgroupoid:
    S = ser.subset_from_doc(_read(path))
    bad = sorted(g for g in S if not 0 <= g < G.num_morphisms)
    if bad:
        raise DomainError("subset names morphisms outside the groupoid", witness=bad, stage=stage)
    return WideSubgroupoid(G, S)


# -- subcommands -----------------------------------------------------------------


def cmd_validate(args):
    kind, obj = _load(args.input)
    if kind == "groupoid":
        v = validate_groupoid(obj).violations
    elif kind == "tower":
        v = validate_tower(obj).violations
    elif kind == "set-tower":
        v = [("surjectivity", n, e) for n, e in obj.surjectivity_failures()]
    elif kind == "functor":
        v = [("source",) + t for t in validate_groupoid(obj.source).violations]
        v += [("target",) + t for t in validate_groupoid(obj.target).violations]
        v += obj.violations()
    elif kind == "presentation":
        v = obj.violations()
    else:
        v = []
    out = ser.result_doc("validate", kind=kind, ok=not v, violations=[list(t) for t in v])
    return out, None, (0 if not v else 1)


def cmd_pi0(args):
    X = _checked_any(_groupoid_or_tower(args))
    if isinstance(X, GroupoidTower):
        S = pi0_tower(X)
        return ser.result_doc("pi0", tower=ser.set_tower_to_doc(S),
                              levels=[_pi0_doc(G) for G in X.levels]), None
    return ser.result_doc("pi0", **_pi0_doc(X)), None


def _pi0_doc(G: FiniteGroupoid) -> dict:
    p = pi0(G)
    return {"count": p.count, "component": list(p.component), "representatives": list(p.representatives)}


def cmd_isotropy(args):
    G = _checked(_groupoid(args))
    return ser.result_doc("isotropy", object=args.object, group=ser.group_to_doc(isotropy(G, args.object))), None


def cmd_skeletonize(args):
    X = _checked_any(_groupoid_or_tower(args), "validate")
    res = skeletal_replacement(X)
    if isinstance(X, GroupoidTower):
        trace = {"levels": [{"section": list(r.section), "inclusion": ser.functor_to_doc(r.inclusion)}
                            for r in res.levels]}
        return ser.tower_to_doc(res.tower), trace
    return ser.groupoid_to_doc(res.skeleton), {"section": list(res.section),
                                                "inclusion": ser.functor_to_doc(res.inclusion)}


def cmd_vandantzig(args):
    G = _checked(_groupoid(args))
    U = _subset(args.neighborhood, G, "van-dantzig")
    H, tr = van_dantzig(G, U.morphisms)
    trace = {k: _jsonable(getattr(tr, k)) for k in ("U", "K", "W", "F", "B", "M", "V", "H1")}
    return ser.subset_to_doc(H.morphisms), trace


def cmd_core(args):
    G = _checked(_groupoid(args))
    H = _subset(args.subgroupoid, G, "core")
    return ser.subset_to_doc(normal_core(G, H).morphisms), None


def cmd_quotient(args):
    G = _checked(_groupoid(args))
    N = _subset(args.normal, G, "quotient")
    q = quotient(G, N)
    return ser.groupoid_to_doc(q.quotient), {"cosets": [sorted(c) for c in q.cosets],
                                             "projection": ser.functor_to_doc(q.projection)}


def cmd_basis(args):
    X = _checked_any(_groupoid_or_tower(args))
    return ser.result_doc("basis", basis=[sorted(H.morphisms) for H in normal_basis(X)]), None


def cmd_collapse(args):
    G = _checked(_groupoid(args))
    return ser.functor_to_doc(collapse(G, args.object)), None


def cmd_separate(args):
    G = _checked(_groupoid(args))
    fam = separating_family(G)
    rep = separation_report(G, fam)
    trace = {"family": [{"objects": list(F.obj_map), "morphisms": list(F.mor_map),
                         "target": ser.groupoid_to_doc(F.target)} for F in fam]}
    return ser.result_doc("separate", functors=len(fam), objects_injective=rep.objects_injective,
                          morphisms_injective=rep.morphisms_injective, ok=rep.ok,
                          witness=None if rep.witness is None else list(rep.witness)), trace


def cmd_reconstruct(args):
    X = _checked_any(_groupoid_or_tower(args))
    r = reconstruct(X)
    return ser.result_doc("reconstruct", bijective=r.bijective, objects_injective=r.objects_injective,
                          objects_surjective=r.objects_surjective, morphisms_injective=r.morphisms_injective,
                          morphisms_surjective=r.morphisms_surjective, limit_points=r.families,
                          witness=r.witness), None


def _pipeline(args, X):
    U = None
    if getattr(args, "neighborhood", None):
        top = X.top if isinstance(X, GroupoidTower) else X
        U = _subset(args.neighborhood, top, "van-dantzig").morphisms
    res = pipeline(X, U)
    return ser.presentation_to_doc(res.presentation), res.trace


def cmd_realize(args):
    X = _groupoid_or_tower(args)
    if args.pipeline:
        return _pipeline(args, X)
    _checked_any(X)
    if isinstance(X, GroupoidTower):
        return ser.presentation_to_doc(realize_tower(X)), None
    P = realize_finite(X)
    return ser.presentation_to_doc(AnimaPresentation((P,), ())), None


def cmd_pipeline(args):
    return _pipeline(args, _groupoid_or_tower(args))


def cmd_check_equiv(args):
    """The functor document may embed its source; otherwise the input is the source."""
    doc = _read(args.functor)
    if isinstance(doc, dict) and "source" in doc and args.input == "-":
        F = ser.functor_from_doc(doc)
    else:
        F = ser.functor_from_doc(doc, _load(args.input, "groupoid")[1])
    for name, G in (("source", F.source), ("target", F.target)):
        rep = validate_groupoid(G)
        if not rep.ok:
            raise DomainError(f"functor {name} is not a valid groupoid", witness=rep.violations[:10], stage="validate")
    bad = F.violations()
    if bad:
        raise DomainError("mapping is not a functor", witness=bad[:10], stage="functor")
    ff, es = internal_fully_faithful(F), internal_essentially_surjective(F)
    wh = whitehead_equivalence(F)
    out = {"fully_faithful": ff, "essentially_surjective": es, "whitehead": wh, "equivalence": ff and es}
    if not args.no_oracle:
        out["oracle"] = equivalence_oracle(F.source, F.target)
    return ser.result_doc("check-equiv", **out), None


def cmd_gen(args):
    spec = GeneratorSpec(args.kind, p=args.p, depth=args.depth, n=args.n, seed=args.seed,
                         components=args.components, max_morphisms=args.max_morphisms)
    X = generate(spec)
    return ser.to_doc(X), {"spec": spec.__dict__}


def cmd_threads(args):
    kind, X = _load(args.input, "tower", "set-tower")
    if kind == "tower":
        if args.strict:
            _checked_any(X)
        S = pi0_tower(X) if args.of == "components" else X
        threads = threads_at_depth(S, args.depth, "objects" if args.of == "components" else args.of)
    else:
        threads = threads_at_depth(X, args.depth)
    out = {"depth": args.depth, "of": args.of if kind == "tower" else "elements",
           "count": len(threads), "threads": [list(t) for t in threads]}
    trace = None
    if kind == "tower" and args.check:
        chk = limit_commutation_check(X, args.depth)
        out["limit_check"] = {"ok": chk.ok, "witnesses": chk.witnesses, "pi0_threads": chk.pi0_threads,
                              "isotropy_orders": {str(k): v for k, v in sorted(chk.isotropy_orders.items())}}
    return ser.result_doc("threads", **out), trace


# -- argument parsing ---------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stonegroupoid", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, helptext: str, input_: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=helptext, description=helptext)
        if input_:
            p.add_argument("input", nargs="?", default="-", help="input document (default: stdin)")
        p.add_argument("--trace", metavar="FILE", help="write intermediate data to FILE")
        p.add_argument("-o", "--output", metavar="FILE", help="write the result to FILE instead of stdout")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check a document of any kind")
    add("pi0", cmd_pi0, "connected components")
    add("isotropy", cmd_isotropy, "loop group at an object").add_argument("--object", type=int, required=True)
    add("skeletonize", cmd_skeletonize, "skeletal replacement (groupoid or tower)")
    add("vandantzig", cmd_vandantzig, "compact open wide subgroupoid inside a unit neighbourhood"
        ).add_argument("--neighborhood", metavar="FILE", required=True)
    add("core", cmd_core, "largest normal wide subgroupoid inside a wide subgroupoid"
        ).add_argument("--subgroupoid", metavar="FILE", required=True)
    add("quotient", cmd_quotient, "quotient by a normal wide subgroupoid"
        ).add_argument("--normal", metavar="FILE", required=True)
    add("basis", cmd_basis, "normal basis (all normal wide subgroupoids, or tower kernels)")
    add("collapse", cmd_collapse, "collapse onto the isotropy at an object").add_argument(
        "--object", type=int, required=True)
    add("separate", cmd_separate, "check that the separating family is jointly injective")
    add("reconstruct", cmd_reconstruct, "compare with the limit of quotients by the normal basis")
    p = add("realize", cmd_realize, "1-type presentation of a skeletal groupoid or tower")
    p.add_argument("--pipeline", action="store_true", help="run the full pipeline first")
    p.add_argument("--neighborhood", metavar="FILE", help="with --pipeline: unit neighbourhood at the top level")
    add("pipeline", cmd_pipeline, "validate, skeletonize, quotient by kernels and realize a tower"
        ).add_argument("--neighborhood", metavar="FILE", help="unit neighbourhood at the top level")
    p = add("check-equiv", cmd_check_equiv, "equivalence criteria for a functor")
    p.add_argument("--functor", metavar="FILE", required=True)
    p.add_argument("--no-oracle", action="store_true", help="skip the isotropy-matching oracle")
    p = add("gen", cmd_gen, "generate an example input", input_=False)
    p.add_argument("--kind", required=True, choices=GEN_KINDS)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--components", type=int, default=4)
    p.add_argument("--max-morphisms", type=int, default=24)
    p = add("threads", cmd_threads, "compatible threads of a tower at a depth")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--of", choices=("objects", "morphisms", "components"), default="objects")
    p.add_argument("--check", action="store_true", help="also run the limit-commutation check")
    p.add_argument("--strict", action="store_true", help="validate the tower first")
    return ap


def _write(path: str, doc: Any) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(ser.dumps(doc))
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        ret = args.func(args)
        out, trace = ret[0], ret[1]
        code = ret[2] if len(ret) > 2 else 0
        if code:
            sys.stderr.write(json.dumps({"error": "invalid", "stage": "validate",
                                         "witness": out["violations"][:10]}, sort_keys=True) + "\n")
        if args.trace:
            _write(args.trace, trace if trace is not None else {})
        if args.output:
            _write(args.output, out)
        else:
            sys.stdout.write(ser.dumps(out))
        return code
    except DomainError as e:
        sys.stderr.write(json.dumps({"kind": type(e).__name__, **e.to_dict()}, sort_keys=True) + "\n")
        return 1
    except (ser.FormatError, UsageError, ValueError) as e:
        sys.stderr.write(json.dumps({"error": "usage", "message": str(e)}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
