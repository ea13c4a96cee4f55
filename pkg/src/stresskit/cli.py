"""Command-line interface.

One subcommand per workflow: `analyze` reads a framework file, the rest
read a graph (a file path or `builtin:<name>`) and run a construction or
certificate.  All randomness flows from `--seed`, reports embed the seed
and tolerance, and identical inputs produce byte-identical JSON.

Exit codes: 0 ok, 2 input error, 3 numerical failure, 4 construction
failure.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import certificates, constructions, statics, stresses
from .certificates import as_jsonable
from .errors import ConstructionFailed, InvalidInput, NumericalError
from .frameworks import (
    affine_general_position,
    affine_span_dimension,
    framework_to_json_dict,
    infinitesimally_rigid,
    load_framework,
    maxwell_index,
    neighborhood_spans,
    on_conic_at_infinity,
    rigidity_matrix,
    save_framework,
)
from .graphs import builtin_graph, load_graph
from .linalg import TolerancePolicy, numeric_rank

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_CONSTRUCTION = 4


def _parse_policy(text):
    """--tol accepts REL or REL,ABS."""
    if text is None:
        return TolerancePolicy()
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return TolerancePolicy(rel_tol=float(parts[0]))
        if len(parts) == 2:
            return TolerancePolicy(rel_tol=float(parts[0]), abs_floor=float(parts[1]))
    except ValueError:
        pass
    raise InvalidInput(f"--tol expects REL or REL,ABS, got {text!r}")


def _resolve_graph(spec, dim_flag):
    """Graph argument: builtin:<name> (with its default dimension) or a
    JSON file path (requires --dim)."""
    if spec.startswith("builtin:"):
        g, default_dim = builtin_graph(spec[len("builtin:"):])
        return g, (dim_flag if dim_flag is not None else default_dim)
    g = load_graph(spec)
    if dim_flag is None:
        raise InvalidInput("--dim is required for graphs loaded from a file")
    return g, dim_flag


def _emit(report, args, artifacts=()):
    """Print the report in the chosen format; write report + artifacts
    under --out when given."""
    payload = as_jsonable(report)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.format == "json":
        sys.stdout.write(text)
    elif args.format == "human":
        for line in _human_lines(payload, prefix=""):
            sys.stdout.write(line + "\n")
    else:
        for key, value in _flatten(payload, prefix=""):
            sys.stdout.write(f"{key},{value}\n")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "report.json"), "w") as fh:
            fh.write(text)
        for name, writer in artifacts:
            writer(os.path.join(args.out, name))


def _human_lines(value, prefix):
    if isinstance(value, dict):
        for k in sorted(value):
            yield from _human_lines(value[k], f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(value, list):
        yield f"{prefix[:-1]}: {json.dumps(value)}"
    else:
        yield f"{prefix[:-1]}: {value}"


def _flatten(value, prefix):
    if isinstance(value, dict):
        for k in sorted(value):
            yield from _flatten(value[k], f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(value, list):
        yield prefix[:-1], json.dumps(value, sort_keys=True)
    else:
        yield prefix[:-1], value


def cmd_analyze(args):
    fw = load_framework(args.framework)
    policy = _parse_policy(args.tol)
    g, d, n = fw.graph, fw.dim, fw.num_vertices
    rank = numeric_rank(rigidity_matrix(fw), policy)
    basis = stresses.stress_space(fw, policy)
    gp = affine_general_position(fw.coordinates, policy, seed=args.seed)
    spanning = affine_span_dimension(fw.coordinates, policy) == d
    rigid = bool(infinitesimally_rigid(fw, policy)) if spanning else None
    report = {
        "kind": "Analysis",
        "seed": args.seed,
        "tolerance": {"rel_tol": policy.rel_tol, "abs_floor": policy.abs_floor},
        "dim": d,
        "num_vertices": n,
        "num_edges": g.num_edges,
        "rigidity_rank": rank,
        "maxwell_index": maxwell_index(g, d),
        "stress_space_dim": len(basis),
        "infinitesimally_rigid": rigid,
        "isostatic": bool(rigid) and len(basis) == 0,
        "affine_general_position": bool(gp),
        "general_position_exact": gp.exact,
        "neighborhood_spans": bool(neighborhood_spans(fw, policy)),
        "on_conic_at_infinity": bool(on_conic_at_infinity(fw, policy)),
        "stresses": [
            _class_dict(stresses.classify(g, sv.to_matrix(), d, policy, seed=args.seed))
            for sv in basis
        ],
    }
    _emit(report, args)
    return EXIT_OK


def _class_dict(cls):
    return {
        "rank": cls.rank,
        "is_gstress": cls.is_gstress,
        "is_fstress": cls.is_fstress,
        "is_psd": cls.is_psd,
        "probable": cls.probable,
    }


def cmd_rubber_band(args):
    g, d = _resolve_graph(args.graph, args.dim)
    policy = _parse_policy(args.tol)
    from .graphs import find_clique

    clique = find_clique(g, d + 1)
    if clique is None:
        raise InvalidInput(f"graph has no {d + 1}-clique to pin")
    k = len(constructions.non_clique_edges(g, clique))
    if args.weights is not None:
        try:
            with open(args.weights) as fh:
                data = json.load(fh)
            w = np.asarray(data["weights"], dtype=np.float64)
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"cannot read weights from {args.weights}: {exc}") from exc
    elif args.random:
        rng = np.random.default_rng(args.seed)
        w = rng.standard_normal(k)
    else:
        raise InvalidInput("rubber-band needs a weights JSON file or --random")
    res = constructions.rubber_band_stress(g, d, w, clique, policy)
    report = {
        "kind": "RubberBand",
        "seed": args.seed,
        "tolerance": {"rel_tol": policy.rel_tol, "abs_floor": policy.abs_floor},
        "dim": d,
        "clique": list(res.clique),
        "weights": [float(x) for x in w],
        "condition": res.condition,
        "stress_rank": res.stress_class.rank,
        "classification": _class_dict(res.stress_class),
    }
    _emit(
        report,
        args,
        artifacts=[
            ("stress.csv", lambda p: stresses.save_stress_csv(res.stress, p)),
            ("framework.json", lambda p: save_framework(res.framework, p)),
        ],
    )
    return EXIT_OK


def cmd_gor(args):
    g, d = _resolve_graph(args.graph, args.dim)
    policy = _parse_policy(args.tol)
    signature = constructions.parse_signature(args.signature) if args.signature else None
    rep = constructions.build_gor(g, d, signature=signature, seed=args.seed, policy=policy)
    _, centered = constructions.center_gor(rep, policy, seed=args.seed)
    sm = constructions.lss_stress(centered, policy)
    cls = stresses.classify(g, sm, d, policy, seed=args.seed)
    report = {
        "kind": "LssStress",
        "seed": args.seed,
        "tolerance": {"rel_tol": policy.rel_tol, "abs_floor": policy.abs_floor},
        "dim": d,
        "rep_dim": rep.rep_dim,
        "signature": list(rep.signature),
        "stress_rank": cls.rank,
        "classification": _class_dict(cls),
    }
    _emit(report, args, artifacts=[("stress.csv", lambda p: stresses.save_stress_csv(sm, p))])
    return EXIT_OK


def cmd_ggr(args):
    g, d = _resolve_graph(args.graph, args.dim)
    policy = _parse_policy(args.tol)
    report = certificates.ggr_test(g, d, trials=args.trials or 50, seed=args.seed, policy=policy)
    _emit(report.to_json_dict(), args)
    return EXIT_OK


def cmd_certify_ur(args):
    g, d = _resolve_graph(args.graph, args.dim)
    policy = _parse_policy(args.tol)
    result = certificates.construct_universally_rigid(
        g, d, seed=args.seed, retry_cap=args.trials or 10, policy=policy
    )
    _emit(
        result.report.to_json_dict(),
        args,
        artifacts=[
            ("stress.csv", lambda p: stresses.save_stress_csv(result.stress, p)),
            ("framework.json", lambda p: save_framework(result.framework, p)),
        ],
    )
    return EXIT_OK


def cmd_corank(args):
    g, d = _resolve_graph(args.graph, args.dim)
    policy = _parse_policy(args.tol)
    report = certificates.corank_stats(
        g, d, samples=args.trials or 200, seed=args.seed, policy=policy
    )
    _emit(report.to_json_dict(), args)
    return EXIT_OK


def cmd_probe_dim(args):
    g, d = _resolve_graph(args.graph, args.dim)
    policy = _parse_policy(args.tol)
    report = certificates.dimension_probe(
        g, d, seed=args.seed, policy=policy, points=args.trials or 10
    )
    _emit(report.to_json_dict(), args)
    return EXIT_OK


def cmd_statics(args):
    fw = load_framework(args.framework)
    policy = _parse_policy(args.tol)
    forces = statics.load_forces(args.load)
    rho = statics.resolve_load(fw, forces, policy)
    residual = float(
        np.max(np.abs(rigidity_matrix(fw).T @ rho - forces.reshape(-1)), initial=0.0)
    )
    report = {
        "kind": "Resolution",
        "seed": args.seed,
        "tolerance": {"rel_tol": policy.rel_tol, "abs_floor": policy.abs_floor},
        "edges": [list(e) for e in fw.graph.edges],
        "edge_forces": [float(x) for x in rho],
        "max_residual": residual,
    }
    _emit(report, args)
    return EXIT_OK


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    sub.add_argument("--tol", default=None, metavar="REL[,ABS]",
                     help="tolerance policy override (default 1e-9,1e-12)")
    sub.add_argument("--out", default=None, help="directory for report + artifacts")
    sub.add_argument("--format", choices=("json", "csv", "human"), default="json",
                     help="stdout report format (default json)")


def _add_graph_common(sub):
    sub.add_argument("graph", help="graph JSON path or builtin:<name>")
    sub.add_argument("--dim", type=int, default=None,
                     help="ambient dimension (defaults per builtin)")
    _add_common(sub)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stresskit",
        description="Equilibrium stresses of bar-joint frameworks: analysis, "
                    "constructions, and rigidity certificates.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="rigidity/stress report for a framework JSON")
    p.add_argument("framework", help="framework JSON path")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("rubber-band", help="stress from weights on a pinned clique")
    _add_graph_common(p)
    p.add_argument("--weights", default=None, help="weights JSON file (key: weights)")
    p.add_argument("--random", action="store_true", help="draw weights from --seed")
    p.set_defaults(func=cmd_rubber_band)

    p = subs.add_parser("gor", help="stress from a centered orthogonal representation")
    _add_graph_common(p)
    p.add_argument("--signature", default=None, metavar="+++-",
                   help="inner-product signs, one per representation coordinate")
    p.set_defaults(func=cmd_gor)

    p = subs.add_parser("ggr", help="generic global rigidity verdict")
    _add_graph_common(p)
    p.add_argument("--trials", type=int, default=None, help="sample count (default 50)")
    p.set_defaults(func=cmd_ggr)

    p = subs.add_parser("certify-ur", help="construct a certified universally rigid framework")
    _add_graph_common(p)
    p.add_argument("--trials", type=int, default=None, help="retry cap (default 10)")
    p.set_defaults(func=cmd_certify_ur)

    p = subs.add_parser("corank", help="generic vs stressed corank statistics")
    _add_graph_common(p)
    p.add_argument("--trials", type=int, default=None, help="sample count (default 200)")
    p.set_defaults(func=cmd_corank)

    p = subs.add_parser("probe-dim", help="stress-manifold dimension probe")
    _add_graph_common(p)
    p.add_argument("--trials", type=int, default=None, help="probe points (default 10)")
    p.set_defaults(func=cmd_probe_dim)

    p = subs.add_parser("statics", help="resolve a load by edge forces")
    p.add_argument("framework", help="framework JSON path")
    p.add_argument("load", help="load JSON path (key: forces)")
    _add_common(p)
    p.set_defaults(func=cmd_statics)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "seed"):
        args.seed = 0
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ConstructionFailed as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
