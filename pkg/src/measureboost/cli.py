"""Command-line interface: data generation, diagram computation, training,
prediction, evaluation, distances, and the bundled experiment recipes.

Exit codes: 0 success, 2 argument errors (argparse), 3 config errors,
4 input/output errors, 5 computation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import datagen
from .boosting import Ensemble, OneVsOneModel, ensemble_predict, one_vs_one_predict
from .graphs import save_graph_json
from .measures import LabeledDataset, load_dataset_jsonl, save_dataset_jsonl, Measure
from .metrics import evaluate
from .ph import cech_filtration, persistence, rips_filtration
from .ph.bottleneck import bottleneck
from .ph.diagrams import load_diagrams_jsonl, save_diagrams_jsonl
from .recipes import (
    RECIPES,
    build_ball_grid,
    diagrams_to_feature_measure,
    make_cached_learner,
    run_experiment,
)


def _gen(args) -> int:
    kind = args.generator
    if kind in ("er-graph", "ring-of-cliques"):
        from .recipes import _random_graph, _ring_of_cliques

        if kind == "er-graph":
            g = _random_graph(args.n_points, args.edge_prob, args.seed)
        else:
            g = _ring_of_cliques(args.n_cliques, args.clique_size)
        save_graph_json(g, args.out)
        return 0
    measures, labels = [], []
    for j in range(args.count):
        s = args.seed + 13 * j
        if kind == "torus":
            pts = datagen.sample_torus(args.n_points, args.outer_radius, args.inner_radius, s)
        elif kind == "sphere":
            pts = datagen.sample_sphere(args.n_points, args.radius, s)
        elif kind == "ppp":
            pts = datagen.sample_ppp_disk(args.mean_count, args.radius, s)
        elif kind == "ginibre":
            pts = datagen.sample_ginibre(args.mean_count, s, args.radius)
        elif kind == "orbit":
            pts = datagen.orbit(args.rho, args.n_points, s)
        else:
            raise ValueError(f"unknown generator {kind!r}")
        if args.noise > 0:
            pts = datagen.add_gaussian_noise(pts, args.noise, s + 1)
        measures.append(Measure(pts))
        labels.append(args.label)
    save_dataset_jsonl(LabeledDataset(tuple(measures), np.array(labels)), args.out)
    return 0


def _ph(args) -> int:
    data = load_dataset_jsonl(args.input)
    build = rips_filtration if args.complex == "rips" else cech_filtration
    flat, metas = [], []
    for i, (mu, y) in enumerate(zip(data.measures, data.labels)):
        fc = build(mu.points, max_dim=args.max_dim, max_value=args.max_value)
        for dg in persistence(fc, include_zero_length=args.include_zero_length):
            flat.append(dg)
            metas.append({"cloud": i, "label": int(y)})
    save_diagrams_jsonl(flat, args.output, metas)
    return 0


def _group_diagrams(path):
    """Diagrams JSONL with cloud/label meta -> (per-cloud diagram lists, labels)."""
    diagrams, metas = load_diagrams_jsonl(path)
    groups, labels = {}, {}
    for dg, meta in zip(diagrams, metas):
        i = int(meta["cloud"])
        groups.setdefault(i, []).append(dg)
        if "label" in meta:
            labels[i] = int(meta["label"])
    order = sorted(groups)
    return [groups[i] for i in order], [labels.get(i) for i in order]


def _features(path, dims, truncation):
    per_cloud, labels = _group_diagrams(path)
    meas = [diagrams_to_feature_measure(d, tuple(dims), truncation) for d in per_cloud]
    return meas, labels


def _train(args) -> int:
    from .boosting import adaboost_fit, one_vs_one_fit

    meas, labels = _features(args.input, args.dims, args.truncation)
    if any(y is None for y in labels):
        raise ValueError("training diagrams must carry a label field")
    data = LabeledDataset(tuple(meas), np.array(labels))
    grid = build_ball_grid(data, args.n_centers, tuple(args.radius_quantiles), args.seed + 7)
    learner = make_cached_learner(grid)
    if len(data.label_set) > 2:
        model = one_vs_one_fit(data, args.rounds, learner, seed=args.seed + 11)
        obj = {"kind": "one-vs-one", **model.to_json()}
    else:
        ens = adaboost_fit(data, args.rounds, learner, seed=args.seed + 11)
        obj = {"kind": "binary", **ens.to_json()}
    with open(args.out, "w") as fh:
        json.dump(obj, fh, indent=2)
    return 0


def _load_model(path):
    with open(path) as fh:
        obj = json.load(fh)
    if obj.get("kind") == "one-vs-one":
        model = OneVsOneModel.from_json(obj)
        return lambda mu: one_vs_one_predict(model, mu)
    ens = Ensemble.from_json(obj)
    return lambda mu: ensemble_predict(ens, mu)


def _predict(args) -> int:
    predict = _load_model(args.model)
    meas, _ = _features(args.input, args.dims, args.truncation)
    with open(args.out, "w") as fh:
        for i, mu in enumerate(meas):
            fh.write(json.dumps({"cloud": i, "prediction": int(predict(mu))}) + "\n")
    return 0


def _eval(args) -> int:
    predict = _load_model(args.model)
    meas, labels = _features(args.input, args.dims, args.truncation)
    if any(y is None for y in labels):
        raise ValueError("evaluation diagrams must carry a label field")
    preds = [predict(mu) for mu in meas]
    report = evaluate(np.array(labels), np.array(preds))
    if args.out:
        report.save(args.out, include_timings=False)
    print(f"accuracy {report.accuracy:.4f}")
    return 0


def _bottleneck(args) -> int:
    da, _ = load_diagrams_jsonl(args.first)
    db, _ = load_diagrams_jsonl(args.second)
    pick = lambda ds: next((d for d in ds if d.dim == args.dim), None)
    a, b = pick(da), pick(db)
    if a is None or b is None:
        raise ValueError(f"no diagram of dim {args.dim} in one of the inputs")
    print(bottleneck(a, b))
    return 0


def _recipe(args) -> int:
    overrides = {}
    if args.outdir:
        overrides[("output", "dir")] = args.outdir
    if args.seed is not None:
        overrides[("seeds", "base")] = args.seed
    result = run_experiment(args.name, config_path=args.config, overrides=overrides, workers=args.workers)
    if isinstance(result, tuple) and hasattr(result[0], "accuracy"):
        print(f"accuracy {result[0].accuracy:.4f} weak {result[1]:.4f}")
    elif hasattr(result, "accuracy"):
        print(f"accuracy {result.accuracy:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="measureboost")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate synthetic point clouds or graphs")
    g.add_argument("--generator", required=True,
                   choices=["torus", "sphere", "ppp", "ginibre", "orbit", "er-graph", "ring-of-cliques"])
    g.add_argument("--out", required=True)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--n-points", type=int, default=100)
    g.add_argument("--label", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--noise", type=float, default=0.0)
    g.add_argument("--outer-radius", type=float, default=4.0)
    g.add_argument("--inner-radius", type=float, default=2.0)
    g.add_argument("--radius", type=float, default=1.0)
    g.add_argument("--mean-count", type=int, default=30)
    g.add_argument("--rho", type=float, default=4.1)
    g.add_argument("--edge-prob", type=float, default=0.25)
    g.add_argument("--n-cliques", type=int, default=5)
    g.add_argument("--clique-size", type=int, default=4)
    g.set_defaults(func=_gen)

    h = sub.add_parser("ph", help="persistence diagrams of a point-cloud dataset")
    h.add_argument("--input", required=True)
    h.add_argument("--output", required=True)
    h.add_argument("--complex", choices=["cech", "rips"], default="cech")
    h.add_argument("--max-dim", type=int, default=2)
    h.add_argument("--max-value", type=float, default=float("inf"))
    h.add_argument("--include-zero-length", action="store_true")
    h.set_defaults(func=_ph)

    def add_feature_flags(sp):
        sp.add_argument("--dims", type=int, nargs="+", default=[0, 1])
        sp.add_argument("--truncation", type=float, default=2.0)

    t = sub.add_parser("train", help="boost region classifiers on diagram features")
    t.add_argument("--input", required=True)
    t.add_argument("--out", required=True)
    add_feature_flags(t)
    t.add_argument("--rounds", type=int, default=15)
    t.add_argument("--n-centers", type=int, default=25)
    t.add_argument("--radius-quantiles", type=float, nargs="+", default=[0.05, 0.15, 0.3, 0.5])
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=_train)

    pr = sub.add_parser("predict", help="predict labels for diagram features")
    pr.add_argument("--model", required=True)
    pr.add_argument("--input", required=True)
    pr.add_argument("--out", required=True)
    add_feature_flags(pr)
    pr.set_defaults(func=_predict)

    e = sub.add_parser("eval", help="evaluate a model on labeled diagram features")
    e.add_argument("--model", required=True)
    e.add_argument("--input", required=True)
    e.add_argument("--out", default=None)
    add_feature_flags(e)
    e.set_defaults(func=_eval)

    b = sub.add_parser("bottleneck", help="bottleneck distance between two diagrams")
    b.add_argument("first")
    b.add_argument("second")
    b.add_argument("--dim", type=int, default=1)
    b.set_defaults(func=_bottleneck)

    r = sub.add_parser("recipe", help="run a bundled experiment recipe")
    r.add_argument("name", choices=sorted(RECIPES))
    r.add_argument("--config", default=None)
    r.add_argument("--outdir", default=None)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--workers", type=int, default=1)
    r.set_defaults(func=_recipe)

    for alias in ("limit-check", "rademacher"):
        a = sub.add_parser(alias, help=f"shortcut for `recipe` on the {alias} study")
        a.add_argument("--config", default=None)
        a.add_argument("--outdir", default=None)
        a.add_argument("--seed", type=int, default=None)
        a.add_argument("--workers", type=int, default=1)
        name = "limit-check" if alias == "limit-check" else "rademacher-scaling"
        a.set_defaults(func=_recipe, name=name)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
