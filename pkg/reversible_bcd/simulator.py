from __future__ import annotations
from cachetools import LRUCache, cached
from cachetools.keys import hashkey
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from reversible_bcd.constants import DEFAULT_CONFIG
from reversible_bcd.errors import ReversibleBcdError
from reversible_bcd.netlist import Netlist, garbage_wires, require_valid
from tqdm import tqdm
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import logging
import reversible_bcd.util as util

DEFAULT_MAX_INPUTS = DEFAULT_CONFIG["simulation"]["max-inputs"]
DEFAULT_MAX_COUNTEREXAMPLES = DEFAULT_CONFIG["equivalence"][
    "max-counterexamples"
]
DEFAULT_CHUNK_SIZE = DEFAULT_CONFIG["simulation"]["chunk-size"]

Pattern = Tuple[int, ...]


class AssignmentError(ReversibleBcdError, ValueError):
    pass


class InputLimitError(ReversibleBcdError):
    pass


class Assignment(Mapping):
    """Bit values over an ordered set of wires."""

    def __init__(self, bindings, domain=None):
        if domain is None:
            domain = list(bindings)
        self.domain = tuple(domain)
        self.bindings = {}
        for wire in self.domain:
            if wire not in bindings:
                raise AssignmentError(f"no value for wire {wire}")
            bit = bindings[wire]
            if bit not in (0, 1):
                raise AssignmentError(f"wire {wire} has non-bit value {bit}")
            self.bindings[wire] = int(bit)
        extra = set(bindings) - set(self.domain)
        if extra:
            raise AssignmentError(
                f"unexpected wires in assignment: {', '.join(sorted(extra))}"
            )

    @classmethod
    def from_bits(cls, wires, bits) -> Assignment:
        wires = list(wires)
        bits = list(bits)
        if len(wires) != len(bits):
            raise AssignmentError(
                f"{len(bits)} bits given for {len(wires)} wires"
            )
        return cls(dict(zip(wires, bits)), wires)

    @classmethod
    def from_int(cls, wires, value) -> Assignment:
        wires = list(wires)
        return cls.from_bits(wires, util.int_to_bits(value, len(wires)))

    def bits(self, wires=None) -> Pattern:
        wires = self.domain if wires is None else wires
        return tuple(self.bindings[wire] for wire in wires)

    def as_int(self, wires=None) -> int:
        return util.bits_to_int(self.bits(wires))

    def restrict(self, wires) -> Assignment:
        return Assignment({w: self.bindings[w] for w in wires}, wires)

    def __getitem__(self, wire) -> int:
        return self.bindings[wire]

    def __iter__(self):
        return iter(self.domain)

    def __len__(self) -> int:
        return len(self.domain)

    def __repr__(self) -> str:
        return f"Assignment({self.bindings})"

    def __str__(self) -> str:
        return " ".join(f"{w}={self.bindings[w]}" for w in self.domain)


@dataclass(frozen=True)
class TraceResult:
    primary_out: Assignment
    garbage_out: Assignment
    all_lines: Assignment

    def terminals(self) -> Assignment:
        wires = self.primary_out.domain + self.garbage_out.domain
        return self.all_lines.restrict(wires)


@dataclass(frozen=True)
class TruthTableRow:
    inputs: Pattern
    outputs: Pattern
    garbage: Pattern


@dataclass(frozen=True)
class Counterexample:
    inputs: Pattern
    expected: Pattern
    actual: Pattern

    def __str__(self) -> str:
        return (
            f"in {util.format_bits(self.inputs)}: expected"
            f" {util.format_bits(self.expected)}, got"
            f" {util.format_bits(self.actual)}"
        )


@dataclass
class EquivalenceResult:
    checked: int = 0
    mismatches: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def __bool__(self) -> bool:
        return self.ok


class CompiledNetlist:
    """Slot-indexed form of a valid netlist for fast repeated evaluation."""

    def __init__(self, n: Netlist, library=None):
        self.netlist = n
        self.garbage = tuple(garbage_wires(n, library))
        self.wires = n.wires()
        self.slot = {wire: i for i, wire in enumerate(self.wires)}
        self.source_slots = [self.slot[w] for w in n.source_wires()]
        self.input_slots = [self.slot[w] for w in n.primary_inputs]
        self.constant_slots = [
            (self.slot[w], bit) for w, bit in n.constants
        ]
        self.output_slots = [self.slot[w] for w in n.primary_outputs]
        self.garbage_slots = [self.slot[w] for w in self.garbage]
        self.steps = [
            (
                inst.gate.table,
                inst.gate.inverse_table,
                [self.slot[w] for w in inst.inputs],
                [self.slot[w] for w in inst.outputs],
            )
            for inst in n.gates
        ]

    def forward(self, input_bits: Sequence[int]) -> List[int]:
        values = [0] * len(self.wires)
        for slot, bit in zip(self.input_slots, input_bits):
            values[slot] = bit
        for slot, bit in self.constant_slots:
            values[slot] = bit
        for table, _, ins, outs in self.steps:
            x = 0
            for slot in ins:
                x = (x << 1) | values[slot]
            y = table[x]
            shift = len(outs) - 1
            for slot in outs:
                values[slot] = (y >> shift) & 1
                shift -= 1
        return values

    def backward(self, terminal_values: Dict[int, int]) -> List[int]:
        values: List[Optional[int]] = [None] * len(self.wires)
        for slot, bit in terminal_values.items():
            values[slot] = bit
        for _, inverse, ins, outs in reversed(self.steps):
            y = 0
            for slot in outs:
                y = (y << 1) | values[slot]
            x = inverse[y]
            shift = len(ins) - 1
            for slot in ins:
                values[slot] = (x >> shift) & 1
                shift -= 1
        return values

    def outputs(self, values) -> Pattern:
        return tuple(values[slot] for slot in self.output_slots)

    def garbage_bits(self, values) -> Pattern:
        return tuple(values[slot] for slot in self.garbage_slots)


@cached(
    cache=LRUCache(maxsize=32),
    # GateLibrary hashes by identity; an entry holds its library alive
    key=lambda n, library=None: hashkey(n, library),
)
def compile_netlist(n: Netlist, library=None) -> CompiledNetlist:
    require_valid(n, library)
    logging.debug(f"Compiled {n}")
    return CompiledNetlist(n, library)


def _to_assignment(values, wires, what) -> Assignment:
    if isinstance(values, Assignment) and values.domain == tuple(wires):
        return values
    if not isinstance(values, Mapping):
        raise AssignmentError(f"{what} must map wires to bits")
    missing = [w for w in wires if w not in values]
    extra = [w for w in values if w not in set(wires)]
    if missing:
        raise AssignmentError(f"missing {what} for {', '.join(missing)}")
    if extra:
        raise AssignmentError(
            f"{', '.join(sorted(extra))} not among the {what} wires"
        )
    return Assignment(values, wires)


def run(n: Netlist, inputs, library=None) -> TraceResult:
    compiled = compile_netlist(n, library)
    inputs = _to_assignment(inputs, n.primary_inputs, "primary inputs")
    values = compiled.forward(inputs.bits())
    if logging.getLogger().isEnabledFor(logging.DEBUG - 5):
        for index, inst in enumerate(n.gates):
            ins = util.format_bits(
                values[compiled.slot[w]] for w in inst.inputs
            )
            outs = util.format_bits(
                values[compiled.slot[w]] for w in inst.outputs
            )
            util.trace(f"gate {index} {inst.gate.name}: {ins} -> {outs}")
    all_lines = Assignment(
        dict(zip(compiled.wires, values)), compiled.wires
    )
    return TraceResult(
        primary_out=all_lines.restrict(n.primary_outputs),
        garbage_out=all_lines.restrict(compiled.garbage),
        all_lines=all_lines,
    )


def run_inverse(n: Netlist, terminals, library=None) -> Assignment:
    compiled = compile_netlist(n, library)
    terminal_wires = list(n.primary_outputs) + list(compiled.garbage)
    terminals = _to_assignment(terminals, terminal_wires, "terminal lines")
    values = compiled.backward(
        {compiled.slot[w]: terminals[w] for w in terminal_wires}
    )
    sources = n.source_wires()
    return Assignment(
        {w: values[compiled.slot[w]] for w in sources}, sources
    )


def _check_limit(n, limit) -> None:
    if len(n.primary_inputs) > limit:
        raise InputLimitError(
            f"{n.name} has {len(n.primary_inputs)} primary inputs; exhaustive"
            f" sweeps are limited to {limit} (raise it with --max-inputs)"
        )


def _chunks(total, chunk_size) -> List[range]:
    return [
        range(start, min(start + chunk_size, total))
        for start in range(0, total, chunk_size)
    ]


def _sweep(chunks, work, workers, progress, desc) -> list:
    bar = tqdm(total=len(chunks), desc=desc) if progress else None
    results = []
    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                # map() yields in submission order, so rows stay sorted
                for result in executor.map(work, chunks):
                    results.append(result)
                    if bar:
                        bar.update(1)
        else:
            for chunk in chunks:
                results.append(work(chunk))
                if bar:
                    bar.update(1)
    finally:
        if bar:
            bar.close()
    return results


def truth_table(
    n: Netlist,
    limit=DEFAULT_MAX_INPUTS,
    workers=1,
    chunk_size=DEFAULT_CHUNK_SIZE,
    progress=False,
    library=None,
) -> List[TruthTableRow]:
    _check_limit(n, limit)
    compiled = compile_netlist(n, library)
    width = len(n.primary_inputs)

    def work(indexes):
        rows = []
        for index in indexes:
            pattern = tuple(util.int_to_bits(index, width))
            values = compiled.forward(pattern)
            rows.append(
                TruthTableRow(
                    pattern,
                    compiled.outputs(values),
                    compiled.garbage_bits(values),
                )
            )
        return rows

    chunks = _chunks(2**width, chunk_size)
    logging.info(f"Tabulating {n.name} over {2**width} input patterns")
    rows = []
    for part in _sweep(chunks, work, workers, progress, n.name):
        rows.extend(part)
    return rows


def check_equivalence(
    n: Netlist,
    oracle: Callable[[Pattern], Sequence[int]],
    domain: Optional[Callable[[Pattern], bool]] = None,
    limit=DEFAULT_MAX_INPUTS,
    max_counterexamples=DEFAULT_MAX_COUNTEREXAMPLES,
    workers=1,
    chunk_size=DEFAULT_CHUNK_SIZE,
    progress=False,
    patterns: Optional[Iterable[Sequence[int]]] = None,
    library=None,
) -> EquivalenceResult:
    """Compares primary outputs with `oracle` on every in-domain pattern.

    `patterns` replaces the exhaustive sweep with an explicit list (used for
    random sampling of circuits too wide to enumerate); the input limit does
    not apply to it.
    """
    compiled = compile_netlist(n, library)
    width = len(n.primary_inputs)

    def check(pattern_iter):
        result = EquivalenceResult()
        for pattern in pattern_iter:
            if len(pattern) != width:
                raise AssignmentError(
                    f"pattern {util.format_bits(pattern)} has {len(pattern)}"
                    f" bits, {n.name} has {width} primary inputs"
                )
            if domain is not None and not domain(pattern):
                continue
            result.checked += 1
            actual = compiled.outputs(compiled.forward(pattern))
            expected = tuple(oracle(pattern))
            if actual != expected:
                result.mismatches += 1
                if len(result.counterexamples) < max_counterexamples:
                    result.counterexamples.append(
                        Counterexample(pattern, expected, actual)
                    )
        return result

    def work(indexes):
        return check(tuple(util.int_to_bits(i, width)) for i in indexes)

    if patterns is not None:
        parts = [check(tuple(p) for p in patterns)]
    else:
        _check_limit(n, limit)
        chunks = _chunks(2**width, chunk_size)
        parts = _sweep(chunks, work, workers, progress, n.name)

    merged = EquivalenceResult()
    for part in parts:
        merged.checked += part.checked
        merged.mismatches += part.mismatches
        room = max_counterexamples - len(merged.counterexamples)
        merged.counterexamples.extend(part.counterexamples[:room])
    logging.info(
        f"Checked {merged.checked} patterns of {n.name}:"
        f" {merged.mismatches} mismatches"
    )
    return merged
