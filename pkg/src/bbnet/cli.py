"""Command-line interface: deterministic experiment drivers with reproducible outputs.

Subcommands::

    bbnet bb             exhaustive busy-beaver table -> bb.csv
    bbnet tvg            generate a graph family instance -> tvg.txt + tvg_report.json
    bbnet run            one networked protocol run -> run.json + nodes.csv
    bbnet halting-sweep  population-size sweep of halting accuracy -> sweep.csv + sweep_summary.json
    bbnet synergy        local-synergy experiment -> synergy.json + complexity_cache.csv
    bbnet central        locate a fastest-answering node -> central.json

Every output embeds the seed and a fingerprint of the resolved semantic
configuration; output bytes are independent of --jobs and contain no
timestamps, so re-runs are byte-identical.  Exit codes: 0 success, 1
validation error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing
import os
import sys

from bbnet import measures
from bbnet.codec import (
    DEFAULT_MAX_PROGRAM_BITS,
    MalformedEncoding,
    RUNTIME_WITNESS_OVERHEAD,
    all_programs,
    decode_exact,
)
from bbnet.config import (
    ValidationError,
    fingerprint,
    merge_option,
    parse_config_file,
    resolve_seed,
)
from bbnet.machine import BusyBeaverTable, DEFAULT_BUDGET, Labels, busy_beaver_table
from bbnet.measures import ComplexityCache, ThresholdUnreachable, pick_labels, slack_constant
from bbnet.network import (
    ConfigMismatch,
    NoCentralNode,
    assemble,
    find_central_node,
    mix_seed,
    parse_selector,
    run_isolated,
    run_networked,
    sample_population,
)
from bbnet.tvg import (
    FAMILIES,
    GenerationFailed,
    InvalidArc,
    diffusion_diameter,
    reachability_centrality,
    read_tvg,
    reverse_reach_time,
    small_diameter_tvg,
    write_tvg,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage problems are validation
        raise ValidationError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="key = value config file")
    sub.add_argument("--seed", type=int, help="master seed (also via BBNET_SEED)")
    sub.add_argument("--out", help="output directory (default: out)")
    sub.add_argument("--budget", type=int, help="machine step budget per run")
    sub.add_argument("--jobs", type=int, help="worker processes (outputs unaffected)")


def build_parser() -> _Parser:
    parser = _Parser(prog="bbnet", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    bb = subs.add_parser("bb", help="exhaustive busy-beaver table")
    bb.add_argument("--max-bits", type=int, help="largest program length to enumerate")
    _add_common(bb)

    tvg = subs.add_parser("tvg", help="generate a small-diameter graph instance")
    tvg.add_argument("--family", choices=FAMILIES)
    tvg.add_argument("--n", type=int, help="vertex count")
    _add_common(tvg)

    run_p = subs.add_parser("run", help="one networked protocol run")
    run_p.add_argument("--family", choices=FAMILIES)
    run_p.add_argument("--tvg-file", help="load the graph from a file instead of a family")
    run_p.add_argument("--n", type=int, help="vertex count")
    run_p.add_argument("--w", help="input program bits")
    run_p.add_argument("--cycles", type=int, help="cycle count (default: the minimum)")
    run_p.add_argument("--warmup", type=int, help="warm-up cycles before imitation")
    run_p.add_argument("--selector", help="halt-test | identity | custom:<bits>")
    run_p.add_argument("--halting-label")
    run_p.add_argument("--nonhalting-label")
    run_p.add_argument("--max-bits", type=int, help="program sampling length cap")
    _add_common(run_p)

    sweep = subs.add_parser("halting-sweep", help="accuracy vs population size")
    sweep.add_argument("--bb-table", required=True, help="bb.csv for certification bounds")
    sweep.add_argument("--n-list", help="comma-separated population sizes")
    sweep.add_argument("--trials", type=int, help="runs per population size")
    sweep.add_argument("--w-max-bits", type=int, help="sweep all valid programs up to this length")
    sweep.add_argument("--family", choices=FAMILIES)
    sweep.add_argument("--warmup", type=int)
    sweep.add_argument("--max-bits", type=int, help="program sampling length cap")
    sweep.add_argument("--resume", action="store_true", help="keep completed rows in sweep.csv")
    _add_common(sweep)

    syn = subs.add_parser("synergy", help="local synergy against isolated runs")
    syn.add_argument("--x", type=int, help="required synergy level")
    syn.add_argument("--trials", type=int)
    syn.add_argument("--n", type=int, help="vertex count")
    syn.add_argument("--family", choices=FAMILIES)
    syn.add_argument("--w", help="input program bits")
    syn.add_argument("--label-bits", type=int)
    syn.add_argument("--budget-bits", type=int, help="complexity search length cap")
    syn.add_argument("--budget-steps", type=int, help="complexity search step cap")
    syn.add_argument("--max-bits", type=int, help="program sampling length cap")
    syn.add_argument("--warmup", type=int)
    _add_common(syn)

    central = subs.add_parser("central", help="find a fastest-answering node")
    central.add_argument("--family", choices=FAMILIES)
    central.add_argument("--n", type=int)
    central.add_argument("--w", help="input program bits")
    central.add_argument("--warmup", type=int)
    central.add_argument("--max-bits", type=int, help="program sampling length cap")
    _add_common(central)

    return parser


def _outdir(args, file_values) -> str:
    out = merge_option(getattr(args, "out", None), file_values, "out", str, "out")
    os.makedirs(out, exist_ok=True)
    return out


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _validate_program_bits(name: str, bits: str) -> str:
    if bits is None or any(c not in "01" for c in bits) or not bits:
        raise ValidationError(f"{name} must be a nonempty bit string, got {bits!r}")
    try:
        decode_exact(bits)
    except MalformedEncoding as exc:
        raise ValidationError(f"{name} is not a valid program encoding: {exc}")
    return bits


def cmd_bb(args, file_values) -> int:
    seed = resolve_seed(args.seed, file_values)
    max_bits = merge_option(args.max_bits, file_values, "max_bits", int, 16)
    budget = merge_option(args.budget, file_values, "budget", int, 100_000)
    if max_bits < 1 or budget < 1:
        raise ValidationError("max_bits and budget must be positive")
    out = _outdir(args, file_values)
    params = {"command": "bb", "max_bits": max_bits, "budget": budget, "seed": seed}
    table = busy_beaver_table(max_bits, budget)
    table.write_csv(os.path.join(out, "bb.csv"), seed=seed, fingerprint=fingerprint(params))
    unknown_total = sum(table.unknown_count(n) for n in range(1, max_bits + 1))
    print(
        f"bb: lengths 1..{max_bits}, value({max_bits})={table.value(max_bits)}, "
        f"{unknown_total} unresolved -> {out}/bb.csv"
    )
    return 0


def cmd_tvg(args, file_values) -> int:
    seed = resolve_seed(args.seed, file_values)
    family = merge_option(args.family, file_values, "family", str, "replicated-hypercube")
    n = merge_option(args.n, file_values, "n", int, 16)
    out = _outdir(args, file_values)
    params = {"command": "tvg", "family": family, "n": n, "seed": seed}
    graph = small_diameter_tvg(family, n, seed)
    write_tvg(graph, os.path.join(out, "tvg.txt"))
    diameter = diffusion_diameter(graph)
    report = {
        "seed": seed,
        "fingerprint": fingerprint(params),
        "family": family,
        "num_vertices": graph.num_vertices,
        "num_instants": graph.num_instants,
        "num_arcs": len(graph.arcs),
        "diffusion_diameter": diameter,
        "reverse_reach": [reverse_reach_time(graph, v) for v in range(n)],
        "centrality": [reachability_centrality(graph, v) for v in range(n)],
    }
    _write_json(os.path.join(out, "tvg_report.json"), report)
    print(f"tvg: {family} n={n} diameter={diameter} -> {out}/tvg.txt")
    return 0


def _resolve_labels(args, file_values) -> Labels:
    halting = merge_option(
        getattr(args, "halting_label", None), file_values, "halting_label", str, "1"
    )
    nonhalting = merge_option(
        getattr(args, "nonhalting_label", None), file_values, "nonhalting_label", str, "0"
    )
    labels = Labels(halting, nonhalting)
    try:
        labels.validate()
    except ValueError as exc:
        raise ValidationError(str(exc))
    return labels


def cmd_run(args, file_values) -> int:
    seed = resolve_seed(args.seed, file_values)
    family = merge_option(args.family, file_values, "family", str, "replicated-hypercube")
    n = merge_option(args.n, file_values, "n", int, 16)
    w = _validate_program_bits("w", merge_option(args.w, file_values, "w", str, "1"))
    budget = merge_option(args.budget, file_values, "budget", int, DEFAULT_BUDGET)
    warmup = merge_option(args.warmup, file_values, "warmup", int, 0)
    max_bits = merge_option(args.max_bits, file_values, "max_bits", int, DEFAULT_MAX_PROGRAM_BITS)
    selector_text = merge_option(args.selector, file_values, "selector", str, "halt-test")
    tvg_file = merge_option(args.tvg_file, file_values, "tvg_file", str, None)
    labels = _resolve_labels(args, file_values)
    try:
        selector = parse_selector(selector_text)
    except (ValueError, MalformedEncoding) as exc:
        raise ValidationError(str(exc))
    out = _outdir(args, file_values)

    if tvg_file is not None:
        graph = read_tvg(tvg_file)
        n = graph.num_vertices
        graph_source = os.path.basename(tvg_file)
    else:
        graph = small_diameter_tvg(family, n, seed)
        graph_source = family
    population = sample_population(n, mix_seed(seed, 1), max_bits)
    assembly = assemble(graph, population, warmup)
    cycles = merge_option(args.cycles, file_values, "cycles", int, assembly.minimum_cycles)
    record = run_networked(assembly, w, budget, labels, selector, n_cycles=cycles)

    params = {
        "command": "run", "graph": graph_source, "n": n, "w": w, "budget": budget,
        "warmup": warmup, "cycles": cycles, "selector": selector_text,
        "labels": [labels.halting, labels.nonhalting], "max_bits": max_bits, "seed": seed,
    }
    fp = fingerprint(params)
    _write_json(
        os.path.join(out, "run.json"),
        {
            "seed": seed,
            "fingerprint": fp,
            "graph": graph_source,
            "num_vertices": n,
            "num_instants": graph.num_instants,
            "w": w,
            "w_resolved": record.w_resolved,
            "reference_label": record.reference_label,
            "budget": budget,
            "warmup": warmup,
            "n_cycles": record.n_cycles,
            "selector": selector_text,
            "labels": {"halting": labels.halting, "nonhalting": labels.nonhalting},
            "x_max": record.x_max,
            "fraction_correct": record.fraction_correct,
        },
    )
    with open(os.path.join(out, "nodes.csv"), "w", newline="") as fh:
        fh.write(f"# seed={seed} fingerprint={fp}\n")
        writer = csv.writer(fh)
        writer.writerow(
            ["node_id", "vertex", "program_bits", "first_kind", "first_fitness",
             "final_output", "correct"]
        )
        for node in record.nodes:
            writer.writerow(
                [node.node, node.vertex, node.program_bits, node.first_kind,
                 node.first_fitness, node.final_output, int(node.correct)]
            )
    print(
        f"run: n={n} cycles={record.n_cycles} x_max={record.x_max} "
        f"correct={record.fraction_correct:.3f} -> {out}/run.json"
    )
    return 0


def _sweep_task(payload):
    (n, trial, seed, family, w_list, budget, max_bits, warmup,
     bb_values, bb_resolved, bb_max_bits) = payload
    task_seed = mix_seed(seed, n, trial)
    graph = small_diameter_tvg(family, n, task_seed)
    population = sample_population(n, task_seed, max_bits)
    assembly = assemble(graph, population, warmup)
    rows = []
    for w in w_list:
        record = run_networked(assembly, w, budget)
        witness_bits = len(w) + RUNTIME_WITNESS_OVERHEAD
        bb_value = bb_values.get(witness_bits)
        certified = bool(
            bb_value is not None and record.w_resolved and record.x_max >= bb_value
        )
        literal_certified = bool(
            certified and bb_resolved.get(witness_bits, False)
        )
        correct_nodes = sum(1 for node in record.nodes if node.correct)
        rows.append({
            "n": n, "trial": trial, "w": w,
            "w_resolved": int(record.w_resolved),
            "reference_label": record.reference_label,
            "x_max": record.x_max,
            "witness_bits": witness_bits,
            "bb_value": "" if bb_value is None else bb_value,
            "certified": int(certified),
            "literal_certified": int(literal_certified),
            "correct_nodes": correct_nodes,
            "node_count": len(record.nodes),
            "all_correct": int(correct_nodes == len(record.nodes)),
        })
    return rows


_SWEEP_COLUMNS = [
    "n", "trial", "w", "w_resolved", "reference_label", "x_max", "witness_bits",
    "bb_value", "certified", "literal_certified", "correct_nodes", "node_count",
    "all_correct",
]


def _load_sweep_rows(path, w_list):
    """Rows of a previous (possibly partial) sweep, grouped by completed task."""
    tasks: dict[tuple[int, int], list[dict]] = {}
    try:
        with open(path, newline="") as fh:
            first = fh.readline()
            if not first.startswith("#"):
                fh.seek(0)
            for row in csv.DictReader(fh):
                tasks.setdefault((int(row["n"]), int(row["trial"])), []).append(row)
    except FileNotFoundError:
        return {}
    return {
        key: rows for key, rows in tasks.items()
        if [r["w"] for r in rows] == list(w_list)
    }


def cmd_halting_sweep(args, file_values) -> int:
    seed = resolve_seed(args.seed, file_values)
    n_list = merge_option(args.n_list and _int_list(args.n_list), file_values, "n_list",
                          _int_list, [16, 32, 64])
    trials = merge_option(args.trials, file_values, "trials", int, 50)
    w_max_bits = merge_option(args.w_max_bits, file_values, "w_max_bits", int, 6)
    family = merge_option(args.family, file_values, "family", str, "star-broadcast")
    budget = merge_option(args.budget, file_values, "budget", int, DEFAULT_BUDGET)
    warmup = merge_option(args.warmup, file_values, "warmup", int, 0)
    max_bits = merge_option(args.max_bits, file_values, "max_bits", int, DEFAULT_MAX_PROGRAM_BITS)
    jobs = merge_option(args.jobs, file_values, "jobs", int, 1)
    if trials < 1 or not n_list or min(n_list) < 2:
        raise ValidationError("need trials >= 1 and population sizes >= 2")
    out = _outdir(args, file_values)
    try:
        table = BusyBeaverTable.read_csv(args.bb_table)
    except (OSError, KeyError, ValueError) as exc:
        raise ValidationError(f"cannot read bb table {args.bb_table}: {exc}")
    if budget + 2 > table.budget:
        raise ValidationError(
            f"sweep budget {budget} needs a bb table built with budget >= {budget + 2} "
            f"(got {table.budget}) for certification to be sound"
        )
    w_list = [p.bits for p in all_programs(w_max_bits)]
    bb_resolved = {
        length: table.resolved_through(length) for length in range(1, table.max_bits + 1)
    }

    params = {
        "command": "halting-sweep", "n_list": n_list, "trials": trials,
        "w_max_bits": w_max_bits, "family": family, "budget": budget,
        "warmup": warmup, "max_bits": max_bits, "seed": seed,
        "bb_budget": table.budget, "bb_max_bits": table.max_bits,
    }
    fp = fingerprint(params)
    sweep_path = os.path.join(out, "sweep.csv")

    completed = _load_sweep_rows(sweep_path, w_list) if args.resume else {}
    tasks = [(n, trial) for n in n_list for trial in range(trials)]
    payloads = [
        (n, trial, seed, family, w_list, budget, max_bits, warmup,
         table.values, bb_resolved, table.max_bits)
        for (n, trial) in tasks if (n, trial) not in completed
    ]

    def flush() -> None:
        with open(sweep_path, "w", newline="") as fh:
            fh.write(f"# seed={seed} fingerprint={fp}\n")
            writer = csv.DictWriter(fh, fieldnames=_SWEEP_COLUMNS)
            writer.writeheader()
            for key in tasks:
                if key in completed:
                    for row in completed[key]:
                        writer.writerow({col: row[col] for col in _SWEEP_COLUMNS})

    if jobs > 1 and payloads:
        with multiprocessing.Pool(jobs) as pool:
            for payload, rows in zip(payloads, pool.imap(_sweep_task, payloads, chunksize=1)):
                completed[(payload[0], payload[1])] = rows
                flush()
    else:
        for payload in payloads:
            completed[(payload[0], payload[1])] = _sweep_task(payload)
            flush()
    if not payloads:
        flush()

    per_n = {}
    for n in n_list:
        rows = [row for (task_n, _), task_rows in completed.items()
                for row in task_rows if task_n == n]
        correct = sum(int(r["correct_nodes"]) for r in rows)
        total = sum(int(r["node_count"]) for r in rows)
        fraction = correct / total if total else 0.0
        stderr = (fraction * (1 - fraction) / total) ** 0.5 if total else 0.0
        all_correct = sum(int(r["all_correct"]) for r in rows)
        all_fraction = all_correct / len(rows) if rows else 0.0
        all_stderr = (all_fraction * (1 - all_fraction) / len(rows)) ** 0.5 if rows else 0.0
        per_n[n] = {
            "fraction_correct": fraction,
            "stderr": stderr,
            "nodes": total,
            "rows": len(rows),
            "fraction_all_correct": all_fraction,
            "stderr_all_correct": all_stderr,
            "certified_rows": sum(int(r["certified"]) for r in rows),
            "certified_all_correct": sum(
                1 for r in rows if int(r["certified"]) and int(r["all_correct"])
            ),
            "literal_certified_rows": sum(int(r["literal_certified"]) for r in rows),
        }
    trend = []
    for smaller, larger in zip(n_list, n_list[1:]):
        a, b = per_n[smaller], per_n[larger]
        band = 1.96 * (a["stderr"] ** 2 + b["stderr"] ** 2) ** 0.5
        all_band = 1.96 * (a["stderr_all_correct"] ** 2 + b["stderr_all_correct"] ** 2) ** 0.5
        trend.append({
            "from_n": smaller, "to_n": larger,
            "delta": b["fraction_correct"] - a["fraction_correct"],
            "allowed_drop": band,
            "non_decreasing_within_ci": b["fraction_correct"] >= a["fraction_correct"] - band,
            "delta_all_correct": b["fraction_all_correct"] - a["fraction_all_correct"],
            "allowed_drop_all_correct": all_band,
            "non_decreasing_all_correct_within_ci": (
                b["fraction_all_correct"] >= a["fraction_all_correct"] - all_band
            ),
        })
    summary = {
        "seed": seed, "fingerprint": fp, "per_n": {str(k): v for k, v in per_n.items()},
        "trend": trend, "w_count": len(w_list), "params": params,
        "certified_consistent": all(
            int(r["all_correct"]) == 1
            for rows in completed.values() for r in rows if int(r["certified"])
        ),
    }
    _write_json(os.path.join(out, "sweep_summary.json"), summary)
    print(
        "halting-sweep: "
        + ", ".join(f"n={n}: {per_n[n]['fraction_correct']:.4f}" for n in n_list)
        + f" -> {out}/sweep.csv"
    )
    return 0


def _synergy_task(payload):
    (trial, seed, x, family, n, w, budget, warmup, max_bits,
     halting, nonhalting, budget_bits, budget_steps) = payload
    labels = Labels(halting, nonhalting)
    task_seed = mix_seed(seed, 4242, trial)
    graph = small_diameter_tvg(family, n, task_seed)
    population = sample_population(n, task_seed, max_bits)
    assembly = assemble(graph, population, warmup)
    record = run_networked(assembly, w, budget, labels)
    isolated = [
        run_isolated(program, w, record.n_cycles, budget, labels)[-1]
        for program in population
    ]
    cache = ComplexityCache()
    stats = measures.expected_local_synergy(
        record, isolated, record.reference_label, budget_bits, budget_steps, cache
    )
    contributions = [
        measures.algorithmic_contribution(
            outcome.final_output, iso, budget_bits, budget_steps, cache
        )
        for outcome, iso in zip(record.nodes, isolated)
    ]
    cache_rows = [
        (target, given, est.value, est.method, est.witness)
        for (target, given), est in cache.entries.items()
    ]
    return {
        "trial": trial,
        "x_max": record.x_max,
        "n_cycles": record.n_cycles,
        "fraction_correct": stats.fraction_correct,
        "mean_synergy": stats.mean,
        "mean_synergy_correct": stats.mean_correct,
        "per_node_synergy": stats.per_node,
        "mean_contribution": sum(contributions) / len(contributions),
        "w_resolved": record.w_resolved,
    }, cache_rows


def cmd_synergy(args, file_values) -> int:
    seed = resolve_seed(args.seed, file_values)
    x = merge_option(args.x, file_values, "x", int, 10)
    trials = merge_option(args.trials, file_values, "trials", int, 3)
    n = merge_option(args.n, file_values, "n", int, 32)
    family = merge_option(args.family, file_values, "family", str, "star-broadcast")
    w = _validate_program_bits("w", merge_option(args.w, file_values, "w", str, "1"))
    budget = merge_option(args.budget, file_values, "budget", int, DEFAULT_BUDGET)
    warmup = merge_option(args.warmup, file_values, "warmup", int, 0)
    max_bits = merge_option(args.max_bits, file_values, "max_bits", int, DEFAULT_MAX_PROGRAM_BITS)
    label_bits = merge_option(args.label_bits, file_values, "label_bits", int,
                              measures.DEFAULT_LABEL_BITS)
    budget_bits = merge_option(args.budget_bits, file_values, "budget_bits", int,
                               measures.DEFAULT_BUDGET_BITS)
    budget_steps = merge_option(args.budget_steps, file_values, "budget_steps", int,
                                measures.DEFAULT_BUDGET_STEPS)
    jobs = merge_option(args.jobs, file_values, "jobs", int, 1)
    if x < 0 or trials < 1 or n < 2:
        raise ValidationError("need x >= 0, trials >= 1, n >= 2")
    out = _outdir(args, file_values)

    pick = pick_labels(
        x, seed, label_bits=label_bits, budget_bits=budget_bits, budget_steps=budget_steps
    )
    params = {
        "command": "synergy", "x": x, "trials": trials, "n": n, "family": family,
        "w": w, "budget": budget, "warmup": warmup, "max_bits": max_bits,
        "label_bits": label_bits, "budget_bits": budget_bits,
        "budget_steps": budget_steps, "seed": seed,
    }
    fp = fingerprint(params)
    payloads = [
        (trial, seed, x, family, n, w, budget, warmup, max_bits,
         pick.halting, pick.nonhalting, budget_bits, budget_steps)
        for trial in range(trials)
    ]
    results = []
    cache_entries = {}
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            outcomes = pool.map(_synergy_task, payloads, chunksize=1)
    else:
        outcomes = [_synergy_task(p) for p in payloads]
    for stats, cache_rows in outcomes:
        results.append(stats)
        for target, given, value, method, witness in cache_rows:
            cache_entries.setdefault((target, given), (value, method, witness))

    with open(os.path.join(out, "complexity_cache.csv"), "w", newline="") as fh:
        fh.write(f"# seed={seed} fingerprint={fp}\n")
        writer = csv.writer(fh)
        writer.writerow(["target", "given", "value", "method", "witness"])
        for (target, given) in sorted(cache_entries, key=lambda k: (k[0], k[1] or "")):
            value, method, witness = cache_entries[(target, given)]
            writer.writerow([target, "-" if given is None else given, value, method,
                             witness or ""])

    pooled_all = [value for r in results for value in r["per_node_synergy"]]
    restricted_values = [
        r["mean_synergy_correct"] for r in results if r["mean_synergy_correct"] is not None
    ]
    report = {
        "seed": seed,
        "fingerprint": fp,
        "x": x,
        "slack": slack_constant(),
        "required_mean_synergy": x - slack_constant(),
        "labels": {
            "halting": pick.halting,
            "nonhalting": pick.nonhalting,
            "threshold": pick.threshold,
            "attempts": pick.attempts,
            "halting_complexity": pick.halting_estimate.value,
            "nonhalting_complexity": pick.nonhalting_estimate.value,
            "method": pick.halting_estimate.method,
        },
        "trials": results,
        "pooled": {
            "mean_synergy": sum(pooled_all) / len(pooled_all),
            "mean_synergy_correct": (
                sum(restricted_values) / len(restricted_values) if restricted_values else None
            ),
            "fraction_correct": (
                sum(r["fraction_correct"] for r in results) / len(results)
            ),
        },
        "params": params,
    }
    _write_json(os.path.join(out, "synergy.json"), report)
    print(
        f"synergy: x={x} labels=({pick.halting},{pick.nonhalting}) "
        f"mean_correct={report['pooled']['mean_synergy_correct']} "
        f"fraction={report['pooled']['fraction_correct']:.3f} -> {out}/synergy.json"
    )
    return 0


def cmd_central(args, file_values) -> int:
    seed = resolve_seed(args.seed, file_values)
    family = merge_option(args.family, file_values, "family", str, "replicated-random-regular")
    n = merge_option(args.n, file_values, "n", int, 16)
    w = _validate_program_bits("w", merge_option(args.w, file_values, "w", str, "1"))
    budget = merge_option(args.budget, file_values, "budget", int, DEFAULT_BUDGET)
    warmup = merge_option(args.warmup, file_values, "warmup", int, 0)
    max_bits = merge_option(args.max_bits, file_values, "max_bits", int, DEFAULT_MAX_PROGRAM_BITS)
    if n < 2:
        raise ValidationError("need n >= 2")
    out = _outdir(args, file_values)
    graph = small_diameter_tvg(family, n, seed)
    population = sample_population(n, mix_seed(seed, 1), max_bits)
    result = find_central_node(graph, population, w, budget, warmup=warmup)
    params = {
        "command": "central", "family": family, "n": n, "w": w, "budget": budget,
        "warmup": warmup, "max_bits": max_bits, "seed": seed,
    }
    _write_json(
        os.path.join(out, "central.json"),
        {
            "seed": seed,
            "fingerprint": fingerprint(params),
            "family": family,
            "n": n,
            "w": w,
            "vertex": result.vertex,
            "node": result.node,
            "c_min": result.c_min,
            "reverse_reach": result.reverse_reach,
            "centrality": result.centrality,
            "reference_label": result.record.reference_label,
        },
    )
    print(
        f"central: vertex={result.vertex} c_min={result.c_min} "
        f"centrality={result.centrality:.3f} -> {out}/central.json"
    )
    return 0


_HANDLERS = {
    "bb": cmd_bb,
    "tvg": cmd_tvg,
    "run": cmd_run,
    "halting-sweep": cmd_halting_sweep,
    "synergy": cmd_synergy,
    "central": cmd_central,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        file_values = parse_config_file(args.config) if args.config else {}
        return _HANDLERS[args.command](args, file_values)
    except (ValidationError, MalformedEncoding, InvalidArc, ConfigMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NoCentralNode, ThresholdUnreachable, GenerationFailed) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
