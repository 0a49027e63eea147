#!/usr/bin/env python3
"""A five-minute tour of the library, printed to the terminal.

Shows the self-delimiting program language, the bounded busy-beaver search,
one networked imitation run with its halting decision, the central-node
search, and a small synergy measurement.  Runs in well under a minute.
"""

from bbnet.bits import bitstring_to_natural
from bbnet.codec import all_programs
from bbnet.machine import Labels, busy_beaver_table, oracle
from bbnet.measures import ComplexityCache, expected_local_synergy, pick_labels
from bbnet.network import (
    assemble,
    find_central_node,
    run_isolated,
    run_networked,
    sample_population,
)
from bbnet.tvg import diffusion_diameter, small_diameter_tvg

SEED = 7
W = "010001"  # single-increment program: halts in 1 step with output value 1


def main() -> None:
    print("== The program language ==")
    print("All valid encodings up to 8 bits, with their outputs on empty input:")
    for program in all_programs(8):
        verdict = oracle(program, "", budget=100)
        value = (
            f"halts, value {bitstring_to_natural(verdict.output)}"
            if verdict.kind == "halted"
            else verdict.kind
        )
        print(f"  {program.bits:>10}  {value}")

    print("\n== Bounded busy-beaver search ==")
    table = busy_beaver_table(14, 2000)
    for n in (1, 6, 9, 14):
        print(
            f"  length <= {n:>2}: max value {table.value(n)}  "
            f"witness {table.witness(n)}  undecided at this length: {table.unknown_count(n)}"
        )

    print("\n== Networked imitation run ==")
    graph = small_diameter_tvg("star-broadcast", 8, SEED)
    population = sample_population(8, SEED)
    print(f"  star over 8 nodes, temporal diffusion diameter {diffusion_diameter(graph)}")
    record = run_networked(assemble(graph, population), W, budget=2000)
    print(f"  input program w = {W}; oracle-correct label: {record.reference_label}")
    print(f"  best first-cycle fitness x_max = {record.x_max}")
    for node in record.nodes:
        print(
            f"    node {node.node}: first fitness {node.first_fitness:>6}  "
            f"answers {node.final_output!r}  correct={node.correct}"
        )

    print("\n== Central node ==")
    result = find_central_node(graph, population, W, budget=2000)
    print(
        f"  vertex {result.vertex} answers correctly after {result.c_min} cycles "
        f"(reverse reach {result.reverse_reach}, centrality {result.centrality:.2f})"
    )

    print("\n== Local synergy with picked labels ==")
    pick = pick_labels(10, SEED)
    print(f"  labels: halting={pick.halting} nonhalting={pick.nonhalting} "
          f"(complexity threshold {pick.threshold}, {pick.attempts} attempt(s))")
    labels = Labels(pick.halting, pick.nonhalting)
    labelled = run_networked(assemble(graph, population), W, budget=2000, labels=labels)
    isolated = [
        run_isolated(program, W, labelled.n_cycles, budget=2000, labels=labels)[-1]
        for program in population
    ]
    stats = expected_local_synergy(
        record=labelled,
        isolated_outputs=isolated,
        target=labelled.reference_label,
        cache=ComplexityCache(),
    )
    print(f"  per-node synergy: {stats.per_node}")
    correct_part = (
        "no node was correct" if stats.mean_correct is None
        else f"over correct nodes {stats.mean_correct:.1f} bits"
    )
    print(f"  mean {stats.mean:.1f} bits; {correct_part}; "
          f"fraction correct {stats.fraction_correct:.2f}")


if __name__ == "__main__":
    main()
