"""Command-line front end: preprocess, solve, evaluate, sweep.

Every command reads a JSON config, writes its outputs atomically into the
output directory, and is deterministic for fixed (config, seeds): wall
times are tracked in memory but kept out of output files unless the
config sets include_timing. Exit codes: 0 success/feasible, 2 config or
data errors, 3 iteration limit, 4 time limit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time

import numpy as np

from .models import build_lapalma, build_milp_example
from .sip import (
    SipTolerances,
    evaluate_supply_gap,
    feasibility_timestep_heuristic,
    maxmin_discretization,
    maxmin_vertex_enum,
    solve_esip,
)
from .timeseries import (
    GapError,
    RangeError,
    SchemaError,
    explained_variance_report,
    ingest_csv,
    kmeans_scenarios,
    load_bundle,
    pca_fit,
    pca_project,
    prune_generators,
    save_bundle,
    synth_generate,
    write_json_atomic,
    znormalize,
)

log = logging.getLogger("resd")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ITERATION_LIMIT = 3
EXIT_TIME_LIMIT = 4

_STATUS_EXIT = {"feasible": EXIT_OK,
                "iteration_limit": EXIT_ITERATION_LIMIT,
                "time_limit": EXIT_TIME_LIMIT}


class ConfigError(ValueError):
    pass


def _setup_logging():
    level = os.environ.get("RESD_LOG", "WARNING").upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR"):
        level = "WARNING"
    logging.basicConfig(level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg


def _tolerances(cfg: dict) -> SipTolerances:
    overrides = cfg.get("tolerances", {})
    if not isinstance(overrides, dict):
        raise ConfigError("tolerances must be an object")
    try:
        tol = SipTolerances(**overrides)
        tol.validate()
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid tolerances: {exc}") from None
    return tol


def _load_dataset(cfg: dict, seed_override=None):
    data = cfg.get("data")
    if not isinstance(data, dict):
        raise ConfigError("config requires a 'data' object")
    if "csv" in data:
        path = data["csv"]
        if not os.path.exists(path):
            raise ConfigError(f"data file not found: {path}")
        return ingest_csv(path)
    if "synth_seed" in data:
        seed = int(data["synth_seed"])
        n_days = int(data.get("n_days", 100))
        n_steps = int(data.get("n_steps", 8))
        if seed_override is not None:
            seed = int(seed_override)
        if n_days < 1 or n_steps < 1:
            raise ConfigError("n_days and n_steps must be positive")
        return synth_generate(seed, n_days, n_steps)
    raise ConfigError("data must specify either 'csv' or 'synth_seed'")


def _n_dim_value(spec, n_days: int, n_features: int) -> int:
    full = min(n_days, n_features)
    if spec == "full":
        return full
    n = int(spec)
    if n < 1 or n > full:
        raise ConfigError(f"n_dim {n} outside [1, {full}]")
    return n


def preprocess_artifacts(dataset, k: int, n_dim: int, seed: int):
    """Shared preprocessing chain: normalize, cluster, project, prune."""
    _, norm = znormalize(dataset)
    nmat = norm.normalize_day_matrix(dataset.day_matrix(), dataset.n_steps)
    scenarios = kmeans_scenarios(nmat, k, seed, norm, dataset.n_steps)
    pca = pca_fit(nmat, n_dim)
    gens = prune_generators(pca_project(pca, nmat))
    return norm, scenarios, pca, gens


def cmd_preprocess(cfg: dict, seed, out: str) -> int:
    dataset = _load_dataset(cfg)
    k = int(cfg.get("k_scenarios", 5))
    seed = int(seed if seed is not None else cfg.get("seed", 1))
    ndim_spec = cfg.get("n_dim", "full")
    if isinstance(ndim_spec, list):
        ndim_spec = max(_n_dim_value(v, dataset.n_days,
                                     dataset.day_matrix().shape[1])
                        for v in ndim_spec)
    n_dim = _n_dim_value(ndim_spec, dataset.n_days,
                         dataset.day_matrix().shape[1])
    if k < 1 or k > dataset.n_days:
        raise ConfigError(f"k_scenarios {k} outside [1, {dataset.n_days}]")

    norm, scenarios, pca, gens = preprocess_artifacts(dataset, k, n_dim, seed)
    provenance = {
        "source": dataset.metadata.get("source", "unknown"),
        "n_days": dataset.n_days,
        "n_steps": dataset.n_steps,
        "k_scenarios": k,
        "n_dim": n_dim,
        "seed": seed,
    }
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, "bundle.json")
    save_bundle(path, norm, scenarios, pca, gens, provenance)
    evr = explained_variance_report(pca)
    print(f"bundle written to {path}")
    print(f"days={dataset.n_days} steps={dataset.n_steps} "
          f"scenarios={scenarios.n_scenarios} "
          f"generators={gens.n_generators}/{gens.original_count} "
          f"evr={evr[n_dim - 1]:.4f}")
    return EXIT_OK


def _build_lapalma_problem(cfg: dict, out: str):
    bundle_path = cfg.get("bundle", os.path.join(out, "bundle.json"))
    if not os.path.exists(bundle_path):
        raise ConfigError(f"bundle not found: {bundle_path}")
    norm, scenarios, pca, gens, _ = load_bundle(bundle_path)
    return build_lapalma(scenarios, pca, norm, gens)


def _write_solution(out: str, name: str, design, solve_log, cfg,
                    include_timing: bool) -> None:
    os.makedirs(out, exist_ok=True)
    doc = design.as_dict()
    doc["config"] = {k: cfg[k] for k in sorted(cfg)}
    write_json_atomic(os.path.join(out, f"{name}.json"), doc)
    _write_text_atomic(os.path.join(out, f"{name}.log.jsonl"),
                       solve_log.to_jsonl(include_timing=include_timing))


def _write_text_atomic(path: str, text: str) -> None:
    import tempfile
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_solve(cfg: dict, seed, out: str, method: str, model: str) -> int:
    tol = _tolerances(cfg)
    include_timing = bool(cfg.get("include_timing", False))

    if model == "milp-example":
        problem = build_milp_example()
        design, solve_log = solve_esip(problem, maxmin_discretization, tol)
    elif method == "resd":
        problem = _build_lapalma_problem(cfg, out)
        design, solve_log = solve_esip(problem, maxmin_vertex_enum, tol)
    else:
        problem = _build_lapalma_problem(cfg, out)
        dataset = _load_dataset(cfg)
        design, solve_log = feasibility_timestep_heuristic(problem, dataset,
                                                           tol)

    _write_solution(out, f"design_{method}_{model}", design, solve_log, cfg,
                    include_timing)
    print(f"status={design.status} objective={design.objective:.6g} "
          f"iterations={design.iterations} "
          f"oracle_value={design.oracle_value:.6g}")
    for name, v in zip(design.design_names, design.x):
        print(f"  {name} = {v:.6g}")
    return _STATUS_EXIT[design.status]


def cmd_evaluate(cfg: dict, seed, out: str, model: str) -> int:
    if model != "lapalma":
        raise ConfigError("evaluate requires the lapalma model")
    design_path = cfg.get("design")
    if not design_path or not os.path.exists(design_path):
        raise ConfigError(f"design file not found: {design_path}")
    with open(design_path, encoding="utf-8") as fh:
        doc = json.load(fh)
    problem = _build_lapalma_problem(cfg, out)
    dataset = _load_dataset(cfg)
    if dataset.n_days == 0:
        raise ConfigError("dataset contains no days")
    try:
        x = np.array([doc["design"][name] for name in problem.design_names])
    except KeyError as exc:
        raise ConfigError(f"design file missing component {exc}") from None

    gaps, max_gap = evaluate_supply_gap(x, problem, dataset)
    os.makedirs(out, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["day", "gap_mw"])
    for d, g in enumerate(gaps):
        writer.writerow([d, f"{g:.10g}"])
    _write_text_atomic(os.path.join(out, "gaps.csv"), buf.getvalue())
    print(f"max supply gap: {max_gap:.6g} MW over {dataset.n_days} days")
    return EXIT_OK


def cmd_sweep(cfg: dict, seed, out: str, method: str, model: str) -> int:
    if model != "lapalma":
        raise ConfigError("sweep requires the lapalma model")
    tol = _tolerances(cfg)
    include_timing = bool(cfg.get("include_timing", False))
    seeds = cfg.get("seeds", [1, 2, 3, 4, 5])
    if seed is not None:
        seeds = [int(seed)]
    ndim_list = cfg.get("n_dim")
    if not isinstance(ndim_list, list) or not ndim_list:
        raise ConfigError("sweep requires a nonempty n_dim list")
    steps_spec = cfg.get("data", {}).get("n_steps", 8)
    steps_list = steps_spec if isinstance(steps_spec, list) else [steps_spec]
    k = int(cfg.get("k_scenarios", 5))

    rows = []
    failures = 0
    for t_steps in steps_list:
        cell_cfg = dict(cfg)
        cell_cfg["data"] = dict(cfg["data"])
        cell_cfg["data"]["n_steps"] = int(t_steps)
        for s in seeds:
            dataset = _load_dataset(cell_cfg)
            nf = dataset.day_matrix().shape[1]
            for ndim_spec in ndim_list:
                n_dim = _n_dim_value(ndim_spec, dataset.n_days, nf)
                try:
                    t0 = time.monotonic()
                    norm, scenarios, pca, gens = preprocess_artifacts(
                        dataset, k, n_dim, int(s))
                    problem = build_lapalma(scenarios, pca, norm, gens)
                    design, _ = solve_esip(problem, maxmin_vertex_enum, tol)
                    _, max_gap = evaluate_supply_gap(design.x, problem,
                                                     dataset)
                    cpu_s = time.monotonic() - t0
                    evr = explained_variance_report(pca)[n_dim - 1]
                    rows.append([
                        n_dim, int(t_steps), f"{design.objective:.10g}",
                        f"{design.investment:.10g}",
                        f"{design.operational:.10g}",
                        f"{max_gap:.10g}", f"{evr:.10g}",
                        f"{cpu_s:.3f}" if include_timing else "",
                        design.iterations, int(s),
                    ])
                except Exception as exc:
                    failures += 1
                    log.warning("sweep cell (n_dim=%s, T=%s, seed=%s) "
                                "failed: %s", n_dim, t_steps, s, exc)

    os.makedirs(out, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n_dim", "T", "tac", "invest", "opex", "max_gap",
                     "evr", "cpu_s", "iters", "seed"])
    writer.writerows(rows)
    _write_text_atomic(os.path.join(out, "sweep.csv"), buf.getvalue())
    print(f"sweep: {len(rows)} rows written, {failures} failed cells")
    return EXIT_OK if failures == 0 else EXIT_CONFIG


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resd",
        description="Robust energy-system design under uncertainty")
    parser.add_argument("command",
                        choices=["preprocess", "solve", "evaluate", "sweep"])
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--method", choices=["resd", "heuristic"],
                        default="resd")
    parser.add_argument("--model", choices=["lapalma", "milp-example"],
                        default="lapalma")
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        out = args.out or cfg.get("out", ".")
        if args.command == "preprocess":
            return cmd_preprocess(cfg, args.seed, out)
        if args.command == "solve":
            return cmd_solve(cfg, args.seed, out, args.method, args.model)
        if args.command == "evaluate":
            return cmd_evaluate(cfg, args.seed, out, args.model)
        return cmd_sweep(cfg, args.seed, out, args.method, args.model)
    except (ConfigError, SchemaError, GapError, RangeError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
