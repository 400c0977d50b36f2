import sys
import os
import argparse
import json
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from algebra.laurent import LaurentPoly
from algebra.series import GradedSeries
from brokenlines.broken_lines import restrict_to_A, theta_function
from brokenlines.theta_path import theta_via_mutation_path, theta_via_path, transport_theta
from cluster.seed import (Seed, check_tropical_duality, mutate_word,
                          mutation_ball)
from config import settings
from emitters.dot import emit_dot
from emitters.json_codec import dumps, encode_diagram, encode_laurent, encode_theta
from emitters.svg import emit_svg
from emitters.tikz import emit_tikz
from hall.qpoly import gl_poincare
from hall.strata import Filtration, hn_phases, strata_report
from quiver.ar_theory import (ar_component, classify_indecomposable,
                              coxeter_translate)
from quiver.caldero_chapoton import caldero_chapoton
from quiver.quiver import Quiver
from quiver.representations import indecomposable_spec, quiver_grassmannian_polynomial
from scattering.cluster_complex import ar_order_check, cluster_complex_diagram
from scattering.geometry import format_point, parse_point
from scattering.rank2 import ScatteringEngine, is_consistent
from utils.errors import (ScatteringLabError, SchemaError,
                          TranslateUndefinedError)
from utils.golden_store import has_changed
from utils.logger import setup_logger

logger = setup_logger("Main")

FORMATS = ("text", "json", "svg", "dot", "tikz")


# ── Argument parsing ─────────────────────────────────────────────────

def _ints(text):
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError as e:
        raise SchemaError(f"expected comma-separated integers, got {text!r}") from e


def _formatted(args):
    for name in ("json", "svg", "dot", "tikz"):
        if getattr(args, f"as_{name}", False):
            return name
    return args.format


def _require_format(fmt, allowed, command):
    if fmt not in allowed:
        raise SchemaError(f"{command} cannot emit {fmt}; choose from {', '.join(allowed)}")


def _rank2_diagram(args):
    order = args.order or settings.DEFAULT_ORDER
    return ScatteringEngine(args.b, order).complete()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=settings.DEFAULT_FORMAT)
    common.add_argument("--json", dest="as_json", action="store_true")
    common.add_argument("--svg", dest="as_svg", action="store_true")
    common.add_argument("--dot", dest="as_dot", action="store_true")
    common.add_argument("--tikz", dest="as_tikz", action="store_true")
    common.add_argument("--order", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="scattering-lab",
        description="Cluster scattering diagrams, theta functions and quiver Grassmannians")
    parser.add_argument("--job", help="JSON file {\"command\": ..., \"args\": {...}}")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("mutate", parents=[common], help="mutate the initial seed along a word")
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--quiver")
    p.add_argument("--matrix", help="B-matrix as JSON, e.g. [[0,1],[-1,0]]")
    p.add_argument("--word", default="")

    p = sub.add_parser("scatter", parents=[common], help="complete a rank-2 diagram or build a cluster complex")
    p.add_argument("--b", type=int, default=settings.DEFAULT_B)
    p.add_argument("--quiver", help="build the cluster complex of this quiver instead")
    p.add_argument("--depth", type=int, default=3)

    p = sub.add_parser("theta", parents=[common], help="theta function of a rank-2 diagram")
    p.add_argument("--b", type=int, default=settings.DEFAULT_B)
    p.add_argument("--m", required=True, help="initial exponent m1,m2,n1,n2")
    p.add_argument("--endpoint", default=settings.THETA_ENDPOINT)
    p.add_argument("--method", choices=("lines", "path", "mutation"), default="lines")
    p.add_argument("--word", default="")
    p.add_argument("--idx", type=int, default=1)

    p = sub.add_parser("cc", parents=[common], help="Caldero-Chapoton function of an indecomposable")
    p.add_argument("--quiver", default="kronecker2")
    p.add_argument("--D", required=True)
    p.add_argument("--no-principal", action="store_true")

    p = sub.add_parser("grass", parents=[common], help="Euler characteristic of a quiver Grassmannian")
    p.add_argument("--quiver", default="kronecker2")
    p.add_argument("--D", required=True)
    p.add_argument("--e", required=True)

    p = sub.add_parser("strata", parents=[common], help="bending strata of broken lines")
    p.add_argument("--quiver", default="kronecker2")
    p.add_argument("--D", required=True)
    p.add_argument("--e", required=True)
    p.add_argument("--endpoint", default=settings.STRATA_ENDPOINT)
    p.add_argument("--no-oracle", action="store_true")

    p = sub.add_parser("ar", parents=[common], help="Auslander-Reiten components and τ")
    p.add_argument("--quiver", default="kronecker2")
    p.add_argument("--side", choices=("P", "I"), default="P")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--classify", help="dimension vector to classify")
    p.add_argument("--tau", help="dimension vector to translate by τ")

    p = sub.add_parser("check", parents=[common], help="recompute the reproduction targets")
    p.add_argument("--update", action="store_true")
    p.add_argument("--only", help="comma-separated target names")
    return parser


def _job_argv(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            job = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"cannot read job file {path}: {e}") from e
    if not isinstance(job, dict) or "command" not in job:
        raise SchemaError("job must be an object with a 'command' key")
    argv = [str(job["command"])]
    for key, value in (job.get("args") or {}).items():
        flag = f"--{key}"
        if value is True:
            argv.append(flag)
        elif value is False or value is None:
            continue
        elif isinstance(value, list):
            argv += [flag, ",".join(str(v) for v in value)]
        else:
            argv += [flag, str(value)]
    return argv


# ── Commands ─────────────────────────────────────────────────────────

def cmd_mutate(args, fmt):
    _require_format(fmt, ("text", "json"), "mutate")
    if args.matrix:
        try:
            seed = Seed.from_b_matrix(json.loads(args.matrix))
        except json.JSONDecodeError as e:
            raise SchemaError(f"--matrix is not JSON: {e}") from e
    elif args.quiver:
        seed = Seed.from_quiver(Quiver.named(args.quiver))
    else:
        seed = Seed.rank2(args.b if args.b is not None else settings.DEFAULT_B)
    result = mutate_word(seed, _ints(args.word))
    if fmt == "json":
        return dumps({
            "word": list(result.word),
            "variables": [encode_laurent(v) for v in result.variables],
            "g_vectors": [list(g) for g in result.g_vectors()],
            "c_matrix": [list(c) for c in result.c_matrix],
        })
    lines = [f"word: {list(result.word)}"]
    for i, (v, g) in enumerate(zip(result.variables, result.g_vectors()), start=1):
        lines.append(f"A{i}' = {v.to_text()}    g = {g}")
    lines.append(f"c-vectors: {[list(c) for c in result.c_matrix]}")
    return "\n".join(lines) + "\n"


def cmd_scatter(args, fmt):
    order = args.order or settings.DEFAULT_ORDER
    if args.quiver:
        diagram = cluster_complex_diagram(Seed.from_quiver(Quiver.named(args.quiver)),
                                          args.depth, order)
    else:
        diagram = ScatteringEngine(args.b, order).complete()
    if fmt == "json":
        return dumps(encode_diagram(diagram))
    if fmt == "svg":
        return emit_svg(diagram)
    if fmt == "tikz":
        return emit_tikz(diagram)
    _require_format(fmt, ("text",), "scatter")
    if diagram.rank != 2:
        return "\n".join(f"normal {w.normal}  generators {list(w.generators)}  "
                         f"f = {w.func.to_poly().to_text()}" for w in diagram.walls) + "\n"
    out = []
    for r in diagram.rays():
        kind = "in " if r.incoming else "out"
        out.append(f"{kind} {r.direction}  n={r.normal}  f = {r.func.to_poly().to_text()}")
    return "\n".join(out) + "\n"


def cmd_theta(args, fmt):
    m0 = _ints(args.m)
    endpoint = parse_point(args.endpoint, 2)
    order = args.order or settings.DEFAULT_ORDER
    if args.method == "mutation":
        _require_format(fmt, ("text", "json"), "theta --method mutation")
        value = theta_via_mutation_path(Seed.rank2(args.b), _ints(args.word), args.idx, order)
        return dumps(encode_laurent(value)) if fmt == "json" else value.to_text() + "\n"

    diagram = _rank2_diagram(args)
    if args.method == "path":
        _require_format(fmt, ("text", "json"), "theta --method path")
        value = theta_via_path(m0, endpoint, diagram)
        return dumps(encode_laurent(value)) if fmt == "json" else value.to_text() + "\n"

    result = theta_function(m0, endpoint, diagram, order)
    if fmt == "json":
        return dumps(encode_theta(result))
    if fmt == "svg":
        return emit_svg(diagram, result.lines)
    if fmt == "tikz":
        return emit_tikz(diagram, result.lines)
    _require_format(fmt, ("text",), "theta")
    out = [result.value.to_text(), f"# {len(result.lines)} broken lines"]
    out += [f"#   {bl.describe()}" for bl in result.lines]
    return "\n".join(out) + "\n"


def cmd_cc(args, fmt):
    _require_format(fmt, ("text", "json"), "cc")
    quiver = Quiver.named(args.quiver)
    value = caldero_chapoton(quiver, indecomposable_spec(quiver, _ints(args.D)),
                             with_principal=not args.no_principal)
    return dumps(encode_laurent(value)) if fmt == "json" else value.to_text() + "\n"


def cmd_grass(args, fmt):
    _require_format(fmt, ("text", "json"), "grass")
    quiver = Quiver.named(args.quiver)
    spec = indecomposable_spec(quiver, _ints(args.D))
    e = _ints(args.e)
    poly = quiver_grassmannian_polynomial(spec, e)
    chi = int(poly.eval(1))
    if fmt == "json":
        return dumps({"quiver": quiver.name, "D": list(spec.dims), "e": list(e),
                      "polynomial": str(poly.as_expr()), "euler_characteristic": chi})
    return f"{chi}\n# |Gr_e(D)(F_q)| = {poly.as_expr()}\n"


def cmd_strata(args, fmt):
    _require_format(fmt, ("text", "json"), "strata")
    report = strata_report(Quiver.named(args.quiver), _ints(args.D), _ints(args.e),
                           parse_point(args.endpoint, 2), with_oracle=not args.no_oracle)
    if fmt == "json":
        return dumps(report)
    out = []
    for row in report["lines"]:
        hn = "decreasing" if row["hn_decreasing"] else "NOT decreasing"
        out.append(f"{row['filtration']}: {row['qpoly']} -> {row['value']}  "
                   f"Z = [{', '.join(row['phases'])}] {hn}")
    out.append(f"total {report['total']}")
    if "oracle" in report:
        out.append(f"oracle {report['oracle']}")
    return "\n".join(out) + "\n"


def cmd_ar(args, fmt):
    quiver = Quiver.named(args.quiver)
    if args.tau:
        _require_format(fmt, ("text", "json"), "ar --tau")
        image = coxeter_translate(quiver, _ints(args.tau))
        return dumps({"tau": list(image)}) if fmt == "json" else f"{image}\n"
    if args.classify:
        _require_format(fmt, ("text", "json"), "ar --classify")
        node = classify_indecomposable(quiver, _ints(args.classify))
        if fmt == "json":
            return dumps({"component": node.component, "label": node.label(), "dim": list(node.dim)})
        return f"{node.component} {node.label()}\n"
    graph = ar_component(quiver, args.side, args.bound)
    if fmt == "dot":
        return emit_dot(graph)
    _require_format(fmt, ("text", "json", "dot"), "ar")
    nodes = [graph.nodes[k]["node"] for k in sorted(graph.nodes)]
    if fmt == "json":
        return dumps({"nodes": [{"label": n.label(), "dim": list(n.dim)} for n in nodes],
                      "edges": [[list(u), list(v), graph.edges[u, v]["multiplicity"]]
                                for u, v in sorted(graph.edges)]})
    return "\n".join(f"{n.label()}  {n.dim}" for n in nodes) + "\n"


# ── Reproduction targets ─────────────────────────────────────────────

def _ray_funcs(diagram):
    return {r.direction: r.func for r in diagram.rays()}


def target_scatter_b1():
    diagram = ScatteringEngine(1, 2).complete()
    outgoing = [r for r in diagram.rays() if not r.incoming]
    expected = GradedSeries.binomial((-1, 1, 1, 1), 2)
    ok = len(outgoing) == 1 and outgoing[0].func == expected
    return ok, {"outgoing": [[list(r.direction), r.func.to_poly().to_text()] for r in outgoing]}


def target_scatter_b2():
    diagram = ScatteringEngine(2, 8).complete()
    funcs = _ray_funcs(diagram)
    central = GradedSeries.binomial((-2, 2, 1, 1), 8, -1).power(-2)
    wanted = [GradedSeries.binomial(e, 8) for e in
              ((-4, 2, 1, 2), (-2, 4, 2, 1), (-6, 4, 2, 3))]
    ok = funcs.get((1, -1)) == central and all(f in funcs.values() for f in wanted)
    return ok, {"rays": [[list(d), f.to_poly().to_text()] for d, f in sorted(funcs.items())]}


def _theta_b2(m0):
    diagram = ScatteringEngine(2, 8).complete()
    return theta_function(m0, parse_point(settings.THETA_ENDPOINT, 2), diagram)


def target_theta_three_term():
    result = _theta_b2((1, -1, 0, 0))
    expected = LaurentPoly(2, {(1, -1, 0, 0): 1, (-1, -1, 0, 1): 1, (-1, 1, 1, 1): 1})
    ok = result.value == expected and len(result.lines) == 3
    return ok, {"theta": result.value.to_text(), "lines": len(result.lines)}


def target_theta_five_term():
    result = _theta_b2((2, -2, -1, -1))
    expected = LaurentPoly(2, {(2, -2, -1, -1): 1, (-2, 2, 1, 1): 1, (-2, -2, -1, 1): 1,
                               (0, -2, -1, 0): 2, (-2, 0, 0, 1): 2})
    square = restrict_to_A(_theta_b2((1, -1, 0, 0))) ** 2 - 2
    ok = result.value == expected and restrict_to_A(result) == square
    return ok, {"theta": result.value.to_text(), "restricted": restrict_to_A(result).to_text()}


def target_grassmannian_strata():
    kronecker = Quiver.kronecker(2)
    report = strata_report(kronecker, (5, 6), (2, 4), parse_point(settings.STRATA_ENDPOINT, 2))
    values = sorted(row["value"] for row in report["lines"])
    ok = report["oracle"] == 18 and values == [8, 10] and report["total"] == 18
    return ok, {"oracle": report["oracle"], "values": values, "total": report["total"]}


def target_tau():
    kronecker = Quiver.kronecker(2)
    image = coxeter_translate(kronecker, (2, 3))
    undefined = []
    for d in kronecker.projectives():
        try:
            coxeter_translate(kronecker, d)
        except TranslateUndefinedError:
            undefined.append(list(d))
    ok = image == (0, 1) and len(undefined) == kronecker.n_vertices
    return ok, {"tau(2,3)": list(image), "undefined_on": sorted(undefined)}


def target_hn():
    kronecker = Quiver.kronecker(2)
    filt = Filtration().extend((2, 3), 1).extend((0, 1), 1)
    values, decreasing = hn_phases(filt, parse_point(settings.STRATA_ENDPOINT, 2),
                                   kronecker, (5, 6), (2, 4))
    phases = [str(v) for v in values]
    return phases == ["8+7i", "2+i"] and decreasing, {"phases": phases, "decreasing": decreasing}


def target_properties():
    loops = {b: is_consistent(ScatteringEngine(b, settings.DEFAULT_ORDER).complete())
             for b in (1, 2, 3)}
    duality = {}
    balls = {"a2": 6, "a3": 8, "kronecker2": 6}
    for name, depth in balls.items():
        seeds = mutation_ball(Seed.from_quiver(Quiver.named(name)), depth)
        duality[name] = all(check_tropical_duality(s) and s.is_sign_coherent() for s in seeds)
    for b in (1, 2):
        seeds = mutation_ball(Seed.rank2(b), 5)
        duality[f"rank2_b{b}"] = all(check_tropical_duality(s) and s.is_sign_coherent() for s in seeds)
    gl = {(d, p): int(gl_poincare(d).eval(p)) for d in range(1, 4) for p in (2, 3, 5)}
    gl_ok = all(value == _gl_order(d, p) for (d, p), value in gl.items())
    ok = all(loops.values()) and all(duality.values()) and gl_ok
    return ok, {"loops": {str(b): v for b, v in loops.items()},
                "duality": duality,
                "gl": {f"{d},{p}": v for (d, p), v in gl.items()}}


FAR_ENDPOINTS = ((Fraction(-1), Fraction(1, 3)), (Fraction(-1), Fraction(-2, 5)),
                 (Fraction(1, 3), Fraction(-1)))


def target_path_independence():
    diagram = ScatteringEngine(2, settings.DEFAULT_ORDER).complete()
    start = parse_point(settings.THETA_ENDPOINT, 2)
    agree, thetas = {}, {}
    for m0 in ((1, -1, 0, 0), (2, -1, 0, 0)):
        near = theta_function(m0, start, diagram).value
        for far in FAR_ENDPOINTS:
            key = f"{list(m0)}@{format_point(far)}"
            direct = theta_function(m0, far, diagram).value
            agree[key] = transport_theta(near, start, far, diagram, base_degree=0) == direct
            thetas[key] = direct.to_text()
    return all(agree.values()), {"agree": agree, "theta": thetas}


def target_theta_path():
    diagram = ScatteringEngine(2, settings.DEFAULT_ORDER).complete()
    endpoint = parse_point(settings.THETA_ENDPOINT, 2)
    agree = {}
    for m0 in ((1, 1, 0, 0), (-1, 0, 0, 0), (2, -1, 0, 0), (3, -2, 0, 0), (0, -1, 0, 0)):
        by_lines = theta_function(m0, endpoint, diagram).value
        agree[str(list(m0))] = theta_via_path(m0, endpoint, diagram) == by_lines
    return all(agree.values()), {"agree": agree}


def target_ar_order():
    checked = {}
    for name, depth in (("a2", 6), ("a3", 6), ("kronecker2", 5)):
        quiver = Quiver.named(name)
        walls = cluster_complex_diagram(Seed.from_quiver(quiver), depth).walls
        normals = {w.normal: w for w in walls}
        pairs = [(w1, w2) for w1 in normals.values() for w2 in normals.values() if w1 is not w2]
        checked[name] = {"walls": len(normals),
                         "ok": all(ar_order_check(w1, w2, quiver) for w1, w2 in pairs)}
    return all(v["ok"] for v in checked.values()), checked


def _gl_order(d, p):
    order = 1
    for i in range(d):
        order *= p ** d - p ** i
    return order


TARGETS = {
    "scatter_b1": target_scatter_b1,
    "scatter_b2": target_scatter_b2,
    "theta_three_term": target_theta_three_term,
    "theta_five_term": target_theta_five_term,
    "grassmannian_strata": target_grassmannian_strata,
    "tau": target_tau,
    "hn_phases": target_hn,
    "path_independence": target_path_independence,
    "theta_path": target_theta_path,
    "ar_order": target_ar_order,
    "properties": target_properties,
}


def cmd_check(args, fmt):
    _require_format(fmt, ("text", "json"), "check")
    names = [n.strip() for n in args.only.split(",")] if args.only else list(TARGETS)
    unknown = [n for n in names if n not in TARGETS]
    if unknown:
        raise SchemaError(f"unknown targets: {', '.join(unknown)}")
    summary = {}
    for name in names:
        logger.info("Reproducing %s...", name)
        ok, payload = TARGETS[name]()
        drift = has_changed(name, payload, update=args.update)
        summary[name] = {"ok": ok, "golden_drift": drift}
    args.failed = [n for n, s in summary.items() if not s["ok"] or (s["golden_drift"] and not args.update)]
    if fmt == "json":
        return dumps(summary)
    return "\n".join(f"{'PASS' if s['ok'] else 'FAIL'} {n}"
                     f"{'  (golden drift)' if s['golden_drift'] else ''}"
                     for n, s in summary.items()) + "\n"


COMMANDS = {
    "mutate": cmd_mutate,
    "scatter": cmd_scatter,
    "theta": cmd_theta,
    "cc": cmd_cc,
    "grass": cmd_grass,
    "strata": cmd_strata,
    "ar": cmd_ar,
    "check": cmd_check,
}


def run(argv=None, stdout=None) -> int:
    """Parse, dispatch and print. Returns the process exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.job:
            args = parser.parse_args(_job_argv(args.job))
        if not args.command:
            parser.print_help(sys.stderr)
            return 2
        output = COMMANDS[args.command](args, _formatted(args))
    except SystemExit as e:
        return int(e.code or 0)
    except ScatteringLabError as e:
        logger.error("%s failed: %s", type(e).__name__, e)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error("Unexpected failure: %s", e)
        raise

    stdout.write(output)
    if args.command == "check" and args.failed:
        return 1
    return 0


if __name__ == "__main__":
    sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(run())
