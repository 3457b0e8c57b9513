"""Command line front end.

    resgld run --preset gm1-resgld [--seed N] [--out DIR] [--override k=v ...]
    resgld run --config scenario.json [--seed N] [--out DIR]
    resgld run --preset gm1-resgld --dump-config        # print JSON, no run
    resgld sweep --preset discretization [--out FILE] [--n-runs N] [--reps R]
    resgld verify --suite {unbiasedness,sa,equivalence}

Overrides address config keys with dots (``--override estimator.correction_factor=2``);
values are parsed as JSON when possible, otherwise taken as strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import (
    PRESET_NAMES,
    config_from_dict,
    config_to_dict,
    dump_config,
    load_config,
    preset,
    run_discretization_sweep,
    run_scenario,
    verify_equivalence,
    verify_sa_consistency,
    verify_unbiasedness,
    write_sweep_csv,
)


def _apply_override(tree: dict, dotted: str) -> None:
    key, sep, raw = dotted.partition("=")
    if not sep:
        raise SystemExit(f"override {dotted!r} must look like key=value")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    node = tree
    parts = key.split(".")
    for part in parts[:-1]:
        nxt = node.get(part)
        if not isinstance(nxt, dict):
            nxt = {}
            node[part] = nxt
        node = nxt
    node[parts[-1]] = value


def _resolve_config(args) -> "ScenarioConfig":
    if bool(args.preset) == bool(args.config):
        raise SystemExit("give exactly one of --preset or --config")
    if args.preset:
        cfg = preset(args.preset)
    else:
        cfg = load_config(args.config)
    tree = config_to_dict(cfg)
    if args.seed is not None:
        tree["seed"] = args.seed
    if args.out is not None:
        tree["output_dir"] = args.out
    for item in args.override:
        _apply_override(tree, item)
    return config_from_dict(tree)


def _cmd_run(args) -> int:
    cfg = _resolve_config(args)
    if args.dump_config:
        print(dump_config(cfg))
        return 0
    artifacts = run_scenario(cfg)
    s = artifacts.summary
    print(f"run {s['name'] or '<config>'} finished: {s['sample_count']} samples")
    if s["final_w2"] is not None:
        print(f"  final_w2={s['final_w2']:.6g}  final_l2={s['final_l2_density']:.6g}")
    print(
        f"  swaps: {s['swap_accepts']}/{s['swap_attempts']} accepted "
        f"(fraction {s['accept_fraction']:.4g}, mean capped rate {s['mean_capped_rate']:.4g})"
    )
    print(f"  artifacts in {artifacts.samples_path.parent}")
    return 0


def _cmd_sweep(args) -> int:
    if args.preset != "discretization":
        raise SystemExit("sweep supports only --preset discretization")
    cfg = preset(args.preset)
    if args.seed is not None:
        cfg = config_from_dict({**config_to_dict(cfg), "seed": args.seed})
    result = run_discretization_sweep(cfg, n_runs=args.n_runs, n_reps=args.reps)
    path = write_sweep_csv(result, args.out)
    print(f"sweep table written to {path}")
    print(
        f"  reference eta={result.reference_eta:.6g}, "
        f"floor w2={result.floor.w2_mean:.6g} +- {result.floor.w2_stderr:.2g}"
    )
    return 0


def _cmd_verify(args) -> int:
    ok = True
    if args.suite == "unbiasedness":
        report = verify_unbiasedness(n_draws=args.draws)
        for row in report["rows"]:
            good = row["rel_err"] < 0.01
            ok &= good
            print(
                f"[{'PASS' if good else 'FAIL'}] corrected-rate mean at gap {row['delta_u']:+g}: "
                f"{row['mc_mean']:.5f} vs {row['expected']:.5f} (rel err {row['rel_err']:.2e})"
            )
        good = report["naive_rel_err"] < 0.03
        ok &= good
        print(
            f"[{'PASS' if good else 'FAIL'}] uncorrected-rate bias at gap 0: "
            f"{report['naive_mean']:.5f} vs {report['naive_expected']:.5f}"
        )
    elif args.suite == "sa":
        report = verify_sa_consistency()
        good = 3.8 <= report["final_sigma_hat_sq"] <= 4.2
        ok &= good
        print(
            f"[{'PASS' if good else 'FAIL'}] variance estimate after {report['n_updates']} "
            f"updates: {report['final_sigma_hat_sq']:.4f} (true {report['true_variance']:g})"
        )
    else:
        report = verify_equivalence(steps=args.steps)
        ok &= report["ok"]
        where = "" if report["ok"] else f" (first mismatch at step {report['first_mismatch']})"
        print(
            f"[{'PASS' if report['ok'] else 'FAIL'}] swap representations agree over "
            f"{report['steps']} steps{where}"
        )
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="resgld", description="Replica-exchange SGLD scenario runner"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario (or dump its config)")
    run_p.add_argument("--preset", choices=PRESET_NAMES)
    run_p.add_argument("--config", help="path to a scenario JSON file")
    run_p.add_argument("--seed", type=int)
    run_p.add_argument("--out", help="output directory override")
    run_p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
    run_p.add_argument("--dump-config", action="store_true")
    run_p.set_defaults(func=_cmd_run)

    sweep_p = sub.add_parser("sweep", help="run the step-size/noise sweep")
    sweep_p.add_argument("--preset", default="discretization")
    sweep_p.add_argument("--seed", type=int)
    sweep_p.add_argument("--out", default="runs/discretization/sweep.csv")
    sweep_p.add_argument("--n-runs", type=int, default=4096)
    sweep_p.add_argument("--reps", type=int, default=4)
    sweep_p.set_defaults(func=_cmd_sweep)

    verify_p = sub.add_parser("verify", help="run a built-in verification suite")
    verify_p.add_argument("--suite", choices=("unbiasedness", "sa", "equivalence"), required=True)
    verify_p.add_argument("--draws", type=int, default=1_000_000)
    verify_p.add_argument("--steps", type=int, default=10_000)
    verify_p.set_defaults(func=_cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
