"""End-to-end experiment recipes: generate data, compute diagrams, train a
boosted region classifier, evaluate, and write all artifacts to disk.

Every recipe is a pure function of its config (all seeds explicit), so
fixed-seed single-worker runs produce bit-identical output files.  Wall
clock timings go to a separate timings.json that is excluded from the
reproducibility guarantee.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from configparser import ConfigParser

import numpy as np

from . import datagen
from .boosting import (
    adaboost_fit,
    ensemble_predict,
    one_vs_one_fit,
    one_vs_one_predict,
    staged_training_error,
)
from .graphs import Graph, graph_hks, graph_sublevel_diagrams
from .limits import Rectangle, feature_matrix, mu_k_montecarlo, r_n_schedule, rademacher_estimate, xi_count
from .measures import LabeledDataset, Measure
from .metrics import evaluate
from .ph import cech_filtration, persistence
from .ph.diagrams import PersistenceDiagram, diagram_to_measure, save_diagrams_jsonl
from .regions import AxisRect, Ball
from .weak import GridSpec, exhaustive_search, kmeans_centers, mass_matrix

__all__ = ["RunConfig", "run_experiment", "emit_rectangle_trace", "RECIPES"]


# ---------------------------------------------------------------------------
# run configuration


class RunConfig:
    """Sectioned key/value run configuration with strict key validation.

    Built from a recipe's defaults; an INI file may override values but may
    not introduce sections or keys the recipe does not declare.
    """

    def __init__(self, defaults: dict):
        self.sections = {s: dict(kv) for s, kv in defaults.items()}

    def override_from_file(self, path) -> "RunConfig":
        cp = ConfigParser()
        with open(path) as fh:
            cp.read_file(fh)
        for sec in cp.sections():
            if sec not in self.sections:
                raise KeyError(f"unknown config section [{sec}]")
            for key, raw in cp.items(sec):
                if key not in self.sections[sec]:
                    raise KeyError(f"unknown config key [{sec}] {key}")
                default = self.sections[sec][key]
                self.sections[sec][key] = _parse_like(raw, default)
        return self

    def __getitem__(self, section):
        return self.sections[section]


def _parse_like(raw: str, default):
    """Parse a raw string with the type of the default value."""
    if isinstance(default, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    if isinstance(default, (tuple, list)):
        items = [x for x in raw.replace(",", " ").split() if x]
        elem = default[0] if len(default) else 0.0
        return tuple(type(elem)(x) for x in items)
    return raw


# ---------------------------------------------------------------------------
# shared pipeline pieces


def _cloud_diagrams(args):
    pts, max_dim, max_value = args
    fc = cech_filtration(np.asarray(pts), max_dim=max_dim, max_value=max_value)
    return persistence(fc)


def compute_diagrams(clouds, max_dim, max_value, workers=1):
    """Čech diagrams per cloud, optionally across a process pool.

    Results come back in input order either way, so worker count does not
    change the output.
    """
    jobs = [(np.asarray(c), max_dim, max_value) for c in clouds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_cloud_diagrams, jobs, chunksize=4))
    return [_cloud_diagrams(j) for j in jobs]


def diagrams_to_feature_measure(dgms, dims, truncation) -> Measure:
    """Rotated diagram points of the selected dims as one planar measure.

    With several dims, the homology degree rides along as a third
    coordinate so regions can tell the diagrams apart.
    """
    tag = len(dims) > 1
    feats = []
    for dg in dgms:
        if dg.dim not in dims:
            continue
        m = diagram_to_measure(dg, truncation=truncation, rotate=True)
        if len(m) == 0:
            continue
        pts = m.points
        if tag:
            pts = np.column_stack([pts, np.full(len(pts), float(dg.dim))])
        feats.append(pts)
    d = 3 if tag else 2
    return Measure(np.vstack(feats) if feats else np.zeros((0, d)))


def build_ball_grid(train: LabeledDataset, n_centers, radius_quantiles, seed) -> GridSpec:
    """Candidate balls: k-means centers of the pooled training support,
    radii at fixed quantiles of the center-to-point distances."""
    allpts = np.vstack([m.points for m in train.measures if len(m)])
    sub = allpts[:: max(1, len(allpts) // 20000)]  # cap the clustering input
    centers = kmeans_centers(sub, min(n_centers, len(sub)), seed=seed)
    dsub = allpts[:: max(1, len(allpts) // 4000)]
    d = np.linalg.norm(dsub[None, :, :] - np.asarray(centers)[:, None, :], axis=2)
    radii = np.unique(np.quantile(d, radius_quantiles))
    radii = radii[radii > 0]
    return GridSpec.balls(centers, radii)


def make_cached_learner(grid: GridSpec):
    """Exhaustive-search learner that reuses the region-mass matrix per dataset."""
    cache = {}

    def learner(data, w, rng):
        key = id(data)
        hit = cache.get(key)
        if hit is None or hit[0] is not data:
            cache[key] = (data, mass_matrix(data, grid.regions))
        return exhaustive_search(data, grid, w, masses=cache[key][1])

    return learner


def emit_rectangle_trace(ensemble, path) -> None:
    """One CSV row per boosting stage with its region geometry."""
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["stage", "alpha", "sign", "kind", "center", "radius", "mins", "maxs", "threshold"])
        for i, (h, alpha) in enumerate(ensemble.stages):
            A = h.region
            if isinstance(A, Ball):
                row = [i, repr(alpha), h.sign, "ball", json.dumps(A.center.tolist()), repr(A.radius), "", "", repr(h.threshold)]
            elif isinstance(A, AxisRect):
                row = [i, repr(alpha), h.sign, "rect", "", "", json.dumps(A.mins.tolist()), json.dumps(A.maxs.tolist()), repr(h.threshold)]
            else:
                row = [i, repr(alpha), h.sign, type(A).__name__, "", "", "", "", repr(h.threshold)]
            wr.writerow(row)


def _save_cloud_diagrams(per_cloud, labels, path):
    flat, metas = [], []
    for i, (dgms, lab) in enumerate(zip(per_cloud, labels)):
        for dg in dgms:
            flat.append(dg)
            metas.append({"cloud": i, "label": int(lab)})
    save_diagrams_jsonl(flat, path, metas)


def _binary_pipeline(cfg, outdir, workers, gen_fn):
    """generate -> diagrams -> features -> boost -> evaluate for a 2-class task.

    gen_fn(class_id, index, seed) -> point cloud.  Returns the report plus
    the accuracy of the first weak classifier alone.
    """
    import os

    os.makedirs(outdir, exist_ok=True)
    seed = cfg["seeds"]["base"]
    n_train, n_test = cfg["data"]["n_train"], cfg["data"]["n_test"]
    half_tr, half_te = n_train // 2, n_test // 2
    timings = {}

    t0 = time.perf_counter()
    clouds, labels = [], []
    for c in (0, 1):
        for j in range(half_tr + half_te):
            clouds.append(gen_fn(c, j, seed + 100003 * c + 13 * j))
            labels.append(c)
    labels = np.array(labels)
    timings["generate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    per_cloud = compute_diagrams(
        clouds, cfg["filtration"]["max_dim"], cfg["filtration"]["max_value"], workers
    )
    timings["diagrams"] = time.perf_counter() - t0

    dims = tuple(cfg["filtration"]["dims"])
    trunc = cfg["filtration"]["truncation"]
    meas = [diagrams_to_feature_measure(d, dims, trunc) for d in per_cloud]
    idx_tr = [i for c in (0, 1) for i in range(c * (half_tr + half_te), c * (half_tr + half_te) + half_tr)]
    idx_te = [i for c in (0, 1) for i in range(c * (half_tr + half_te) + half_tr, (c + 1) * (half_tr + half_te))]
    train = LabeledDataset(tuple(meas[i] for i in idx_tr), labels[idx_tr])
    test = LabeledDataset(tuple(meas[i] for i in idx_te), labels[idx_te])
    _save_cloud_diagrams([per_cloud[i] for i in idx_tr], labels[idx_tr], f"{outdir}/train_diagrams.jsonl")
    _save_cloud_diagrams([per_cloud[i] for i in idx_te], labels[idx_te], f"{outdir}/test_diagrams.jsonl")

    t0 = time.perf_counter()
    grid = build_ball_grid(
        train, cfg["learner"]["n_centers"], cfg["learner"]["radius_quantiles"], seed + 7
    )
    learner = make_cached_learner(grid)
    ens = adaboost_fit(train, cfg["boosting"]["rounds"], learner, seed=seed + 11)
    timings["train"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    preds = [ensemble_predict(ens, m) for m in test.measures]
    h0 = ens.stages[0][0]
    lo, hi = ens.labels
    weak_preds = [hi if h0.predict(m) == 1 else lo for m in test.measures]
    weak_acc = float(np.mean(np.array(weak_preds) == test.labels))
    timings["evaluate"] = time.perf_counter() - t0

    report = evaluate(
        test.labels,
        preds,
        labels=(0, 1),
        staged_errors=staged_training_error(ens, train),
        timings=timings,
    )
    with open(f"{outdir}/model.json", "w") as fh:
        json.dump(ens.to_json(), fh, indent=2)
    emit_rectangle_trace(ens, f"{outdir}/rectangles.csv")
    obj = report.to_json()
    obj.pop("timings")
    obj["weak_accuracy"] = weak_acc
    with open(f"{outdir}/metrics.json", "w") as fh:
        json.dump(obj, fh, indent=2)
    with open(f"{outdir}/timings.json", "w") as fh:
        json.dump(timings, fh, indent=2)
    return report, weak_acc


# ---------------------------------------------------------------------------
# recipes


def ppp_vs_gpp_defaults():
    return {
        "data": {"n_train": 400, "n_test": 200, "mean_count": 30, "radius": 1.0},
        "filtration": {"max_dim": 2, "max_value": 2.0, "dims": (0, 1), "truncation": 2.0},
        "learner": {"n_centers": 25, "radius_quantiles": (0.05, 0.15, 0.3, 0.5)},
        "boosting": {"rounds": 15},
        "seeds": {"base": 0},
        "output": {"dir": "out/ppp-vs-gpp"},
    }


def run_ppp_vs_gpp(cfg: RunConfig, workers=1):
    radius = cfg["data"]["radius"]
    mean_count = cfg["data"]["mean_count"]

    def gen(c, j, s):
        if c == 0:
            return datagen.sample_ppp_disk(mean_count, radius, s)
        return datagen.sample_ginibre(mean_count, s, radius)

    return _binary_pipeline(cfg, cfg["output"]["dir"], workers, gen)


def torus_vs_sphere_defaults():
    return {
        "data": {
            "n_train": 100,
            "n_test": 100,
            "n_points": 500,
            "outer_radius": 4.0,
            "inner_radius": 2.0,
            "sphere_radius": 6.0,
            "noise": 0.0,
            "randomized_size": False,
        },
        "filtration": {"max_dim": 2, "max_value": 1.5, "dims": (1,), "truncation": 1.5},
        "learner": {"n_centers": 15, "radius_quantiles": (0.05, 0.15, 0.3)},
        "boosting": {"rounds": 15},
        "seeds": {"base": 0},
        "output": {"dir": "out/torus-vs-sphere"},
    }


def run_torus_vs_sphere(cfg: RunConfig, workers=1):
    d = cfg["data"]

    def gen(c, j, s):
        rng = np.random.default_rng(s + 55609)
        if c == 0:
            if d["randomized_size"]:
                outer = rng.uniform(3.0, 5.0)
                inner = outer / 2.0
            else:
                outer, inner = d["outer_radius"], d["inner_radius"]
            pts = datagen.sample_torus(d["n_points"], outer, inner, s)
        else:
            radius = rng.uniform(4.0, 7.0) if d["randomized_size"] else d["sphere_radius"]
            pts = datagen.sample_sphere(d["n_points"], radius, s)
        if d["noise"] > 0:
            pts = datagen.add_gaussian_noise(pts, d["noise"], s + 1)
        return pts

    return _binary_pipeline(cfg, cfg["output"]["dir"], workers, gen)


def _thin_cloud(pts, res, cap):
    """Keep at most `cap` points per res-sized grid cell.

    Orbits that collapse onto periodic attractors produce hundreds of
    near-duplicate points whose Čech complex is combinatorially huge;
    thinning bounds the local density without changing the shape.
    """
    counts = {}
    keep = []
    for i, p in enumerate(pts):
        key = tuple((p // res).astype(int))
        c = counts.get(key, 0)
        if c < cap:
            counts[key] = c + 1
            keep.append(i)
    return pts[np.array(keep)]


def orbit_defaults():
    return {
        "data": {
            "rhos": (2.5, 3.5, 4.0, 4.1, 4.3),
            "n_train_per_class": 100,
            "n_test_per_class": 50,
            "orbit_length": 300,
            "thin_resolution": 0.02,
            "thin_cap": 2,
        },
        "filtration": {"max_dim": 2, "max_value": 0.08, "dims": (0, 1), "truncation": 0.08},
        "features": {"include_raw": True, "diagram_scale": 10.0, "channel_gap": 10.0},
        "learner": {"n_centers": 60, "radius_quantiles": (0.005, 0.01, 0.02, 0.05, 0.1, 0.2)},
        "boosting": {"rounds": 20},
        "seeds": {"base": 0},
        "output": {"dir": "out/orbit-5class"},
    }


def run_orbit_5class(cfg: RunConfig, workers=1):
    import os

    outdir = cfg["output"]["dir"]
    os.makedirs(outdir, exist_ok=True)
    d, seed = cfg["data"], cfg["seeds"]["base"]
    rhos = tuple(d["rhos"])
    n_tr, n_te = d["n_train_per_class"], d["n_test_per_class"]
    timings = {}

    t0 = time.perf_counter()
    clouds, labels = [], []
    for ci, rho in enumerate(rhos):
        for j in range(n_tr + n_te):
            pts = datagen.orbit(rho, d["orbit_length"], seed + 100003 * ci + 13 * j)
            clouds.append(_thin_cloud(pts, d["thin_resolution"], d["thin_cap"]))
            labels.append(ci)
    labels = np.array(labels)
    timings["generate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    per_cloud = compute_diagrams(
        clouds, cfg["filtration"]["max_dim"], cfg["filtration"]["max_value"], workers
    )
    timings["diagrams"] = time.perf_counter() - t0

    dims, trunc = tuple(cfg["filtration"]["dims"]), cfg["filtration"]["truncation"]
    feat = cfg["features"]
    gap, dscale = feat["channel_gap"], feat["diagram_scale"]

    def hybrid(pts, dgms):
        # diagram channels plus (optionally) the raw orbit cloud, each on its
        # own channel-tag plane; at 300-point orbits the raw occupancy pattern
        # carries most of the class signal and the diagrams refine it
        chans = []
        if feat["include_raw"]:
            chans.append(np.column_stack([pts, np.full(len(pts), 2.0 * gap)]))
        for dg in dgms:
            if dg.dim not in dims:
                continue
            m = diagram_to_measure(dg, truncation=trunc, rotate=True)
            if len(m):
                chans.append(
                    np.column_stack([m.points * dscale, np.full(len(m), float(dg.dim) * gap)])
                )
        return Measure(np.vstack(chans) if chans else np.zeros((0, 3)))

    meas = [hybrid(c, x) for c, x in zip(clouds, per_cloud)]
    per = n_tr + n_te
    idx_tr = [ci * per + j for ci in range(len(rhos)) for j in range(n_tr)]
    idx_te = [ci * per + n_tr + j for ci in range(len(rhos)) for j in range(n_te)]
    train = LabeledDataset(tuple(meas[i] for i in idx_tr), labels[idx_tr])
    test = LabeledDataset(tuple(meas[i] for i in idx_te), labels[idx_te])
    _save_cloud_diagrams([per_cloud[i] for i in idx_tr], labels[idx_tr], f"{outdir}/train_diagrams.jsonl")
    _save_cloud_diagrams([per_cloud[i] for i in idx_te], labels[idx_te], f"{outdir}/test_diagrams.jsonl")

    t0 = time.perf_counter()
    grid = build_ball_grid(
        train, cfg["learner"]["n_centers"], cfg["learner"]["radius_quantiles"], seed + 7
    )
    learner = make_cached_learner(grid)
    model = one_vs_one_fit(train, cfg["boosting"]["rounds"], learner, seed=seed + 11)
    timings["train"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    preds = [one_vs_one_predict(model, m) for m in test.measures]
    timings["evaluate"] = time.perf_counter() - t0

    report = evaluate(test.labels, preds, labels=tuple(range(len(rhos))), timings=timings)
    with open(f"{outdir}/model.json", "w") as fh:
        json.dump(model.to_json(), fh, indent=2)
    first_pair = min(model.models)
    emit_rectangle_trace(model.models[first_pair], f"{outdir}/rectangles.csv")
    report.save(f"{outdir}/metrics.json", include_timings=False)
    with open(f"{outdir}/timings.json", "w") as fh:
        json.dump(timings, fh, indent=2)
    return report


def graph_hks_defaults():
    return {
        "data": {"n_train": 80, "n_test": 40, "n_vertices": 20, "hks_time": 10.0},
        "filtration": {"truncation": 1.5},
        "learner": {"n_centers": 15, "radius_quantiles": (0.05, 0.15, 0.3, 0.5)},
        "boosting": {"rounds": 10},
        "seeds": {"base": 0},
        "output": {"dir": "out/graph-hks"},
    }


def _random_graph(n, p, seed) -> Graph:
    rng = np.random.default_rng(seed)
    edges = [(u, v) for u in range(n - 1) for v in range(u + 1, n) if rng.uniform() < p]
    # keep it connected so the two classes differ by structure, not components
    order = rng.permutation(n)
    edge_set = set(edges)
    for a, b in zip(order[:-1], order[1:]):
        key = (min(a, b), max(a, b))
        edge_set.add((int(key[0]), int(key[1])))
    return Graph(n, tuple(sorted(edge_set)))


def _ring_of_cliques(n_cliques, clique_size) -> Graph:
    edges = []
    n = n_cliques * clique_size
    for c in range(n_cliques):
        base = c * clique_size
        for i in range(clique_size):
            for j in range(i + 1, clique_size):
                edges.append((base + i, base + j))
        nxt = ((c + 1) % n_cliques) * clique_size
        edges.append((min(base, nxt), max(base, nxt)))
    return Graph(n, tuple(sorted(set(edges))))


def run_graph_hks_demo(cfg: RunConfig, workers=1):
    import os

    outdir = cfg["output"]["dir"]
    os.makedirs(outdir, exist_ok=True)
    d, seed = cfg["data"], cfg["seeds"]["base"]
    n_tr, n_te = d["n_train"], d["n_test"]
    half_tr, half_te = n_tr // 2, n_te // 2
    trunc = cfg["filtration"]["truncation"]
    timings = {}

    t0 = time.perf_counter()
    meas, labels = [], []
    for c in (0, 1):
        for j in range(half_tr + half_te):
            s = seed + 100003 * c + 13 * j
            if c == 0:
                g = _random_graph(d["n_vertices"], 0.25, s)
            else:
                rng = np.random.default_rng(s)
                g = _ring_of_cliques(5, d["n_vertices"] // 5)
                # sprinkle a few random chords so the class is not a single graph
                extra = _random_graph(g.n, 0.02, s + 1).edges
                g = Graph(g.n, tuple(sorted(set(g.edges) | set(extra))))
            hks = graph_hks(g, d["hks_time"])
            d0, d1 = graph_sublevel_diagrams(g, hks)
            pts = []
            for dg in (d0, d1):
                m = diagram_to_measure(dg, truncation=trunc, rotate=True)
                if len(m):
                    pts.append(np.column_stack([m.points, np.full(len(m), float(dg.dim))]))
            meas.append(Measure(np.vstack(pts) if pts else np.zeros((0, 3))))
            labels.append(c)
    labels = np.array(labels)
    timings["generate"] = time.perf_counter() - t0

    idx_tr = [i for c in (0, 1) for i in range(c * (half_tr + half_te), c * (half_tr + half_te) + half_tr)]
    idx_te = [i for c in (0, 1) for i in range(c * (half_tr + half_te) + half_tr, (c + 1) * (half_tr + half_te))]
    train = LabeledDataset(tuple(meas[i] for i in idx_tr), labels[idx_tr])
    test = LabeledDataset(tuple(meas[i] for i in idx_te), labels[idx_te])

    t0 = time.perf_counter()
    grid = build_ball_grid(train, cfg["learner"]["n_centers"], cfg["learner"]["radius_quantiles"], seed + 7)
    learner = make_cached_learner(grid)
    ens = adaboost_fit(train, cfg["boosting"]["rounds"], learner, seed=seed + 11)
    timings["train"] = time.perf_counter() - t0

    preds = [ensemble_predict(ens, m) for m in test.measures]
    report = evaluate(test.labels, preds, labels=(0, 1), timings=timings)
    with open(f"{outdir}/model.json", "w") as fh:
        json.dump(ens.to_json(), fh, indent=2)
    emit_rectangle_trace(ens, f"{outdir}/rectangles.csv")
    report.save(f"{outdir}/metrics.json", include_timings=False)
    with open(f"{outdir}/timings.json", "w") as fh:
        json.dump(timings, fh, indent=2)
    return report


def limit_check_defaults():
    return {
        "setup": {"name": "square", "k": 0, "d": 2},
        "data": {"sizes": (200, 2000), "n_seeds": 10, "n_mc": 2000},
        "rectangles": {
            "r1": (0.5, 1.0, 1.0, 2.0),
            "r2": (0.3, 0.8, 0.9, 1.5),
            "r3": (0.6, 1.2, 1.3, 2.5),
        },
        "seeds": {"base": 0},
        "output": {"dir": "out/limit-check"},
    }


def _limit_cloud(setup, n, seed):
    rng = np.random.default_rng(seed)
    if setup == "circle":
        theta = rng.uniform(0.0, 2 * np.pi, size=n)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if setup == "square":
        return rng.uniform(0.0, 1.0, size=(n, 2))
    raise ValueError(f"unknown setup {setup!r}")


def _density_moment(setup, k):
    if setup == "circle":  # length 2*pi, density 1/(2*pi) w.r.t. arc length
        return 2 * np.pi * (1 / (2 * np.pi)) ** (k + 2)
    return 1.0  # unit density on the unit square


def run_limit_check(cfg: RunConfig, workers=1):
    import os

    outdir = cfg["output"]["dir"]
    os.makedirs(outdir, exist_ok=True)
    setup = cfg["setup"]["name"]
    k, d = cfg["setup"]["k"], cfg["setup"]["d"]
    rects = {name: Rectangle(*vals) for name, vals in cfg["rectangles"].items()}
    base = cfg["seeds"]["base"]
    v_max = max(r.v for r in rects.values())
    moment = _density_moment(setup, k)

    mu_hat = {
        name: mu_k_montecarlo(moment, k, d, r, cfg["data"]["n_mc"], base + 31 + i)
        for i, (name, r) in enumerate(sorted(rects.items()))
    }

    rows = []
    for n in cfg["data"]["sizes"]:
        r_n = r_n_schedule(n, k, d)
        for s in range(cfg["data"]["n_seeds"]):
            pts = _limit_cloud(setup, n, base + 7919 * s + n)
            if setup == "square":
                # trim the boundary layer where the limit does not apply
                margin = 3 * r_n * v_max
                keep = np.all((pts >= margin) & (pts <= 1 - margin), axis=1)
                pts = pts[keep]
            scaled = pts / r_n
            fc = cech_filtration(scaled, max_dim=min(k + 2, 3), max_value=v_max)
            dgms = persistence(fc)
            dg = next((x for x in dgms if x.dim == k), PersistenceDiagram(k, np.zeros((0, 2))))
            for name, r in sorted(rects.items()):
                xi = xi_count(dg, r, n, r_n, k, d)
                est, se = mu_hat[name]
                rows.append((setup, n, s, name, r_n, xi, est, se))

    with open(f"{outdir}/limit_check.csv", "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["setup", "n", "seed", "rect", "r_n", "xi", "mu_hat", "mu_stderr"])
        for row in rows:
            wr.writerow([row[0], row[1], row[2], row[3], repr(row[4]), repr(row[5]), repr(row[6]), repr(row[7])])
    return rows


def rademacher_defaults():
    return {
        "data": {"sizes": (50, 100, 200, 400, 800, 1600), "n_draws": 300},
        "learner": {"grid_side": 8, "radii": (0.1, 0.2, 0.35)},
        "seeds": {"base": 0},
        "output": {"dir": "out/rademacher"},
    }


def run_rademacher_scaling(cfg: RunConfig, workers=1):
    """Estimate vs sample size for the ball-mass class on unit-mass measures."""
    import os

    outdir = cfg["output"]["dir"]
    os.makedirs(outdir, exist_ok=True)
    base = cfg["seeds"]["base"]
    side = cfg["learner"]["grid_side"]
    xs = (np.arange(side) + 0.5) / side
    centers = [(x, y) for x in xs for y in xs]
    regions = [Ball(np.array(c), r) for c in centers for r in cfg["learner"]["radii"]]

    rows = []
    for i, n in enumerate(cfg["data"]["sizes"]):
        rng = np.random.default_rng(base + 17 * i)
        sample = [Measure(rng.uniform(0, 1, size=(1, 2))) for _ in range(n)]
        values = feature_matrix(regions, sample)
        est, se = rademacher_estimate(values, cfg["data"]["n_draws"], base + 23 + i)
        rows.append((n, est, se))

    with open(f"{outdir}/rademacher.csv", "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["N", "estimate", "stderr"])
        for n, est, se in rows:
            wr.writerow([n, repr(est), repr(se)])
    return rows


RECIPES = {
    "ppp-vs-gpp": (ppp_vs_gpp_defaults, run_ppp_vs_gpp),
    "torus-vs-sphere": (torus_vs_sphere_defaults, run_torus_vs_sphere),
    "orbit-5class-reduced": (orbit_defaults, run_orbit_5class),
    "graph-hks-demo": (graph_hks_defaults, run_graph_hks_demo),
    "limit-check": (limit_check_defaults, run_limit_check),
    "rademacher-scaling": (rademacher_defaults, run_rademacher_scaling),
}


def run_experiment(name, config_path=None, overrides=None, workers=1):
    """Look up a recipe, apply config-file and in-memory overrides, run it."""
    if name not in RECIPES:
        raise KeyError(f"unknown recipe {name!r}; known: {sorted(RECIPES)}")
    defaults_fn, runner = RECIPES[name]
    cfg = RunConfig(defaults_fn())
    if config_path is not None:
        cfg.override_from_file(config_path)
    for (sec, key), val in (overrides or {}).items():
        if sec not in cfg.sections or key not in cfg.sections[sec]:
            raise KeyError(f"unknown config key [{sec}] {key}")
        cfg.sections[sec][key] = val
    return runner(cfg, workers=workers)
