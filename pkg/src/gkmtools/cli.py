"""Command line interface: ``gkmtools <command> [options]``.

Exit status is 0 when every check in the report passes, 1 when a check
fails, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from .catalog import EXTENSIONS, FLAG_PROJECTION, catalog, fig3, flag_su3
from . import linalg
from .abfp import build_abfp, check_cochain, homology_at, sign_independence_check, \
    torsion_report
from .cohomology import (cohomology_basis, find_signed_relation, freeness_probe,
                         hilbert_function, kernel_ideal_check, module_generators,
                         restriction_map, thom_class)
from .extension import ExtensionError, check_extension, facet_normals, lift_to_tgraph, \
    search_extension, tgraph_from_characteristic
from .facering import check_facemap_iso, check_simplicial_opposite, face_ring_hilbert, \
    theorem2_quotient_check
from .faces import Face, check_regular_cw, face_poset, solve_signs
from .graph import (GkmError, check_congruence, check_effectivity, gkm_independence_level,
                    validate_graph, validate_tgraph)
from .io import ParseError, load_graph, tgraph_to_dict
from .poly import Polynomial


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    config: dict
    checks: dict = field(default_factory=dict)     # name -> bool
    data: dict = field(default_factory=dict)
    status: str | None = None

    @property
    def passed(self):
        return all(self.checks.values())

    def as_dict(self):
        return {"command": self.command, "config": self.config, "checks": self.checks,
                "data": self.data, "passed": self.passed,
                "status": self.status or ("pass" if self.passed else "fail")}


# -- input ---------------------------------------------------------------------

def _graph(args, required=True):
    if args.catalog and args.input:
        raise UsageError("give either --catalog or --input, not both")
    if args.catalog:
        try:
            return catalog(args.catalog), args.catalog
        except GkmError as exc:
            raise UsageError(str(exc)) from exc
    if args.input:
        try:
            return load_graph(args.input), args.input
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
    if required:
        raise UsageError("an input graph is required (--catalog NAME or --input FILE)")
    return None, None


def _names(g, vertices):
    return [g.vertices[v] for v in sorted(vertices)]


def _face_dict(g, face):
    return {"rank": face.rank, "vertices": _names(g, face.vertices),
            "edges": [[g.vertices[g.origin[e]], g.vertices[g.terminus(e)]]
                      for e in face.edges(g)]}


# -- commands ------------------------------------------------------------------

def cmd_validate(args, rep: Report):
    g, _ = _graph(args)
    problems = validate_graph(g)
    rep.checks["structure"] = not problems
    rep.data["problems"] = problems
    rep.data["vertices"] = len(g.vertices)
    rep.data["valence"] = g.valence
    rep.data["rank"] = g.rank
    rep.data["signed"] = g.signed
    if problems or g.connection is None:
        return
    fails = check_congruence(g)
    rep.checks["congruence"] = not fails
    rep.data["congruence_failures"] = [list(x) for x in fails]
    rep.checks["effective"] = check_effectivity(g, args.mode)
    # the integer reading (labels at each vertex generate Z^k) is stricter
    rep.data["effective_span"] = {m: check_effectivity(g, m) for m in ("rational", "integer")}
    rep.data["gkm_level"] = gkm_independence_level(g)


def cmd_cohom(args, rep: Report):
    g, _ = _graph(args)
    D = args.degree
    rep.data["hilbert"] = list(hilbert_function(g, D, args.mode, args.jobs))
    gens = module_generators(g, D, args.mode)
    rep.data["generator_degrees"] = gens.degrees
    rep.data["quotient_dims"] = list(gens.quotient_dims)
    verdict = freeness_probe(g, D, args.mode)
    rep.data["freeness"] = verdict.describe()
    if verdict.witness:
        rep.data["witness"] = {
            "degree": verdict.witness_degree,
            "relation": [[i, repr(f)] for i, f in verdict.witness],
            "generators": {str(i): gens.generators[i].table() for i, _ in verdict.witness},
        }
    ok = True
    for two_d in range(0, D + 1, 2):
        for c in cohomology_basis(g, two_d, args.mode).classes:
            ok &= c.satisfies_congruences(args.mode)
    rep.checks["classes_satisfy_congruences"] = ok


def cmd_faces(args, rep: Report):
    g, _ = _graph(args)
    poset = face_poset(g)
    rep.data["rank_profile"] = list(poset.rank_profile())
    rep.data["faces"] = [_face_dict(g, f) for f in poset.faces]
    rep.data["covers"] = [list(x) for x in poset.covers]
    s2 = poset.truncated(2)
    regular = check_regular_cw(s2)
    rep.checks["s2_regular_cw"] = regular
    if regular:
        try:
            signs = solve_signs(s2)[0]
        except GkmError as exc:
            rep.checks["signs_solvable"] = False
            rep.data["signs_error"] = str(exc)
            return
        rep.checks["signs_solvable"] = True
        # S_2 indices agree with the full poset because faces are sorted by rank first
        rep.data["signs"] = [[u, lo, s] for (u, lo), s in sorted(signs.signs.items())]


def cmd_abfp(args, rep: Report):
    g, _ = _graph(args)
    D = args.degree
    try:
        c = build_abfp(g, mode=args.mode)
    except GkmError as exc:
        rep.checks["complex_defined"] = False
        rep.data["error"] = f"complex undefined: {exc}" if "undefined" not in str(exc) \
            else str(exc)
        return
    rep.data["term_dims"] = {str(t): list(c.slice(t).dims) for t in range(0, D + 1, 2)}
    rep.checks["cochain"] = check_cochain(c, D)
    table = {str(pos): list(homology_at(c, pos, D)) for pos in ("H", 0, 1)}
    rep.data["homology"] = table
    rep.checks["exact_at_H"] = not any(table["H"])
    rep.checks["exact_at_0"] = not any(table["0"])
    si = sign_independence_check(g, min(D, args.sign_degree))
    rep.data["sign_independence"] = "skipped" if si.skipped else si.equal
    if not si.skipped:
        rep.checks["sign_independent"] = bool(si.equal)
    if args.mode == "integer":
        rep.data["d0_torsion"] = {str(t): torsion_report(c, t) for t in range(0, D + 1, 2)}


def cmd_extend(args, rep: Report):
    g, _ = _graph(args)
    if args.rank is None:
        raise UsageError("extend needs --rank")
    sols = search_extension(g, args.rank, args.bound)
    rep.data["solutions"] = len(sols)
    rep.data["labelings"] = [[list(s.labels[e]) for e in s.edges] for s in sols]
    rep.checks["found"] = bool(sols)


def cmd_lift(args, rep: Report):
    g, _ = _graph(args)
    t = lift_to_tgraph(g.unsigned() if g.signed else g)
    problems = validate_tgraph(t)
    rep.checks["tgraph_valid"] = not problems
    rep.data["problems"] = problems
    chi = facet_normals(t)
    rep.data["facet_normals"] = [[_names(g, f.vertices), list(v)]
                                 for f, v in zip(chi.facets, chi.values)]
    rep.checks["characteristic_round_trip"] = tgraph_from_characteristic(t.graph, chi) == t
    rep.data["tgraph"] = tgraph_to_dict(t)


def cmd_facering(args, rep: Report):
    g, name = _graph(args)
    D = args.degree
    poset = face_poset(g)
    simp = check_simplicial_opposite(poset)
    rep.checks["simplicial"] = simp.simplicial
    if not simp.simplicial:
        rep.data["failures"] = [list(x) for x in simp.failures]
        return
    fr = face_ring_hilbert(poset, D)
    hf = hilbert_function(g.unsigned() if g.signed else g, D)
    rep.data["face_ring_hilbert"] = list(fr)
    rep.data["cohomology_hilbert"] = list(hf)
    rep.checks["hilbert_equal"] = fr == hf
    if args.check_iso:
        rows = check_facemap_iso(g, D)
        rep.data["facemap"] = [[r.degree, r.monomials, r.image_rank, r.cohomology_dim]
                               for r in rows]
        rep.checks["facemap_iso"] = all(r.iso for r in rows)
    if args.source:
        src = catalog(args.source)
        p = _projection(args, args.source, name)
        q = theorem2_quotient_check(src, g, p, D)
        rep.data["quotient"] = [[r.degree, r.face_ring_dim, r.ideal_dim, r.target_dim]
                                for r in q.rows]
        rep.data["ideal_generators"] = [str(x) for x in q.generators]
        rep.checks["quotient_agrees"] = q.agree


def _projection(args, source, target):
    if getattr(args, "projection", None):
        try:
            return json.loads(args.projection)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--projection is not a JSON matrix: {exc.msg}") from exc
    known = EXTENSIONS.get(source)
    if known and known[0] == target:
        return known[1]
    raise UsageError(f"no known projection from {target} to {source}; pass --projection")


# -- demos ---------------------------------------------------------------------

QUADRANGLE = ((1, 2), (2, 3), (3, 6), (1, 6))


def _edge_face(g, u, v):
    iu, iv = g.vertices.index(u), g.vertices.index(v)
    e = next(x for x in g.star(iu) if g.terminus(x) == iv)
    return Face(frozenset((iu, iv)), frozenset((e, g.opposite[e])), 1)


def cmd_demo_counterexample(args, rep: Report):
    gT = fig3()
    mode = args.mode
    if args.identity_p:
        gK, p = gT, linalg.identity(3)
        rep.status = "hypothesis changed"
        res = restriction_map(gT, gK, p, 2, mode)
        rep.data["p"] = p
        rep.checks["surjective_with_identity"] = res.surjective
        return
    gK, p = flag_su3(), FLAG_PROJECTION
    # 1. degree 2: no new generators upstairs, dimension 4 downstairs
    hT, hK = cohomology_basis(gT, 2, mode).dim, cohomology_basis(gK, 2, mode).dim
    gens = module_generators(gT, 4, mode)
    rep.data["dim_H2_fig3"] = hT
    rep.data["dim_H2_flag"] = hK
    rep.data["quotient_dims_fig3"] = list(gens.quotient_dims)
    rep.checks["degree2_dimensions"] = hT == 3 and hK == 4 and gens.quotient_dims[1] == 0
    # 2. p_* is not onto in degree 2
    res = restriction_map(gT, gK, p, 2, mode)
    rep.data["restriction_rank_deg2"] = res.rank
    rep.checks["restriction_not_surjective"] = not res.surjective and res.rank <= 3
    if res.witness is not None:
        from .cohomology import CohomologyClass
        rep.data["missed_class"] = CohomologyClass(gK, 2, res.witness).table()
    # 3. Thom classes of the quadrangle edges
    t = lift_to_tgraph(gT)
    x, y, z = (Polynomial.variable(3, i) for i in range(3))
    expected = {(1, 2): x * z, (2, 3): x * y, (3, 6): x * z, (1, 6): y * z}
    classes, ok = [], True
    for u, v in QUADRANGLE:
        th = thom_class(t, _edge_face(gT, u, v))
        classes.append(th)
        vals = th.values
        for i, name in enumerate(gT.vertices):
            want = expected[(u, v)] if name in (u, v) else Polynomial(3)
            ok &= vals[i] in (want, want * -1)
        ok &= th.satisfies_congruences(mode)
        rep.data[f"Th{u}{v}"] = th.table()
    rep.checks["thom_classes"] = ok
    # 4. y Th12 - z Th23 + y Th36 - x Th16 = 0 for suitable signs
    signs = find_signed_relation(classes, [y, z * -1, y, x * -1])
    rep.data["relation_signs"] = list(signs) if signs else None
    rep.checks["signed_relation"] = signs is not None
    # 5. not free
    verdict = freeness_probe(gT, max(args.degree, 6), mode)
    rep.data["freeness"] = verdict.describe()
    if verdict.witness:
        rep.data["witness_generator_degrees"] = sorted(
            {verdict.generator_degrees[i] for i, _ in verdict.witness})
    rep.checks["not_free"] = not verdict.free


def cmd_demo_theorem1(args, rep: Report):
    D = args.degree
    if args.identity_p:
        src_name = tgt_name = args.target or "cpn_torus:4"
        gK = gT = catalog(tgt_name)
        p = linalg.identity(gT.rank)
    else:
        src_name = args.source or "cp4_projected"
        tgt_name = args.target or EXTENSIONS.get(src_name, (None,))[0]
        if tgt_name is None:
            raise UsageError(f"no known extension of {src_name}; pass --target")
        gK, gT = catalog(src_name), catalog(tgt_name)
        p = _projection(args, src_name, tgt_name)
    rep.data["source"], rep.data["target"] = src_name, tgt_name
    # hypotheses: valid extension, GKM_3 source
    try:
        check_extension(gK, gT, p)
        level = gkm_independence_level(gK)
    except (ExtensionError, GkmError) as exc:
        rep.status = "hypothesis violated"
        rep.checks["hypotheses"] = False
        rep.data["reason"] = str(exc)
        return
    if level < 3:
        rep.status = "hypothesis violated"
        rep.checks["hypotheses"] = False
        rep.data["reason"] = f"source graph is GKM_{level}, not GKM_3"
        return
    rep.checks["hypotheses"] = True
    surj = []
    for two_d in range(0, D + 1, 2):
        res = restriction_map(gT, gK, p, two_d, args.mode)
        surj.append([two_d, res.rank, res.dim_target])
    rep.data["restriction"] = surj
    rep.checks["surjective"] = all(r == t for _, r, t in surj)
    rows = kernel_ideal_check(gT, gK, p, D, args.mode)
    rep.data["kernel"] = [[r.degree, r.kernel_dim, r.ideal_dim] for r in rows]
    rep.checks["kernel_is_ideal"] = all(r.equal for r in rows)
    verdict = freeness_probe(gT, D, args.mode)
    rep.data["freeness"] = verdict.describe()
    rep.data["quotient_dims"] = list(module_generators(gT, D, args.mode).quotient_dims)
    rep.checks["free"] = verdict.free


COMMANDS = {
    "validate": cmd_validate,
    "cohom": cmd_cohom,
    "faces": cmd_faces,
    "abfp": cmd_abfp,
    "extend": cmd_extend,
    "lift": cmd_lift,
    "facering": cmd_facering,
    "demo-counterexample": cmd_demo_counterexample,
    "demo-theorem1": cmd_demo_theorem1,
}


# -- parsing and output --------------------------------------------------------

def _even_degree(text):
    try:
        d = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from exc
    if d < 0 or d % 2:
        raise argparse.ArgumentTypeError("degree must be even and >= 0")
    return d


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="catalog graph, e.g. fig3 or cpn_torus:4")
    common.add_argument("--input", help="graph file (JSON interchange format)")
    common.add_argument("-D", "--degree", type=_even_degree, default=6,
                        help="even degree cutoff (default 6)")
    common.add_argument("--mode", choices=("rational", "integer"), default="rational")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="gkmtools", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "abfp":
            sp.add_argument("--sign-degree", type=_even_degree, default=8,
                            help="degree cutoff for the sign-independence check")
        if name == "extend":
            sp.add_argument("--rank", type=int)
            sp.add_argument("--bound", type=int, default=1)
        if name == "facering":
            sp.add_argument("--check-iso", action="store_true")
            sp.add_argument("--source", help="catalog graph to compare the quotient with")
            sp.add_argument("--projection", help="JSON matrix of p (source rank x rank)")
        if name.startswith("demo"):
            sp.add_argument("--identity-p", action="store_true",
                            help="replace p by the identity")
        if name == "demo-theorem1":
            sp.add_argument("--source")
            sp.add_argument("--target")
            sp.add_argument("--projection")
    return parser


def _config(args):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("format",)}
    return cfg


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    else:
        for v in obj:
            lines.append(f"{pad}- {_inline(v)}" if _flat(v) else f"{pad}-")
            if not _flat(v):
                lines += _text(v, indent + 1)
    return lines


def _flat(v):
    if isinstance(v, dict):
        return not v
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x))
                   for x in v)
    return True


def _inline(v):
    return json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else str(v)


def render(rep: Report, fmt: str) -> str:
    d = rep.as_dict()
    if fmt == "structured":
        return json.dumps(d, sort_keys=True, indent=1)
    lines = [f"{rep.command}: {d['status']}"]
    for name in sorted(rep.checks):
        lines.append(f"  [{'pass' if rep.checks[name] else 'FAIL'}] {name}")
    lines += _text(rep.data, 1)
    return "\n".join(lines)


def run(argv=None) -> tuple[int, Report | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    rep = Report(args.command, _config(args))
    try:
        COMMANDS[args.command](args, rep)
    except (UsageError, ParseError) as exc:
        print(f"gkmtools: error: {exc}", file=sys.stderr)
        return 2, None
    except GkmError as exc:
        rep.checks["completed"] = False
        rep.data["error"] = str(exc)
    print(render(rep, args.format))
    return (0 if rep.passed else 1), rep


def main(argv=None) -> int:
    try:
        code, _ = run(argv)
    except SystemExit as exc:       # argparse usage errors
        return int(exc.code or 0)
    return code


if __name__ == "__main__":
    sys.exit(main())
