"""bbnet: busy-beaver imitation networks of self-delimiting register-machine programs.

A deterministic, desk-scale toolkit for studying how a synchronous network of
randomly generated programs, iterating a fittest-imitation protocol over a
time-varying graph, collectively approximates the halting behaviour of an input
program — together with algorithmic-information measures quantifying what the
network adds over nodes run in isolation.
"""

from bbnet.bits import bitstring_to_natural, natural_to_bitstring
from bbnet.codec import (
    MalformedEncoding,
    Program,
    decode_program,
    native_program,
    sample_program,
)
from bbnet.machine import DEFAULT_BUDGET, DEFAULT_LABELS, Labels, Verdict, fitness, oracle, run

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_LABELS",
    "Labels",
    "MalformedEncoding",
    "Program",
    "Verdict",
    "bitstring_to_natural",
    "decode_program",
    "fitness",
    "native_program",
    "natural_to_bitstring",
    "oracle",
    "run",
    "sample_program",
]
