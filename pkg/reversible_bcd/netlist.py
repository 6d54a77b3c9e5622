from __future__ import annotations
from collections import Counter
from dataclasses import dataclass, field
from reversible_bcd.constants import WIRE_PATTERN
from reversible_bcd.errors import ReversibleBcdError, Violations
from reversible_bcd.gates import DEFAULT_LIBRARY, GateDefinition
from reversible_bcd.gates import UnknownGateError, check_bijective
from typing import Dict, Iterator, List, Mapping, Optional, Tuple
import logging
import re

WIRE_RE = re.compile(WIRE_PATTERN)


class NetlistError(ReversibleBcdError):
    def __init__(self, message, violations=None):
        super().__init__(message)
        if violations is None:
            violations = Violations()
        self.violations = violations

    def __str__(self) -> str:
        text = self.args[0]
        if self.violations:
            text += "\n" + str(self.violations)
        return text


@dataclass(frozen=True)
class GateInstance:
    gate: GateDefinition
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    lineno: Optional[int] = field(default=None, compare=False)

    @property
    def name(self) -> str:
        return self.gate.name

    def __str__(self) -> str:
        return (
            f"{self.gate.name} {' '.join(self.inputs)} ->"
            f" {' '.join(self.outputs)}"
        )


@dataclass(frozen=True)
class Netlist:
    """An ordered, fan-out-free wiring of reversible gates.

    Gates run in list order; a wire must be defined (as an input, a constant
    or a gate output) before any gate reads it, which keeps the circuit
    acyclic by construction.
    """

    name: str
    primary_inputs: Tuple[str, ...]
    constants: Tuple[Tuple[str, int], ...]
    gates: Tuple[GateInstance, ...]
    primary_outputs: Tuple[str, ...]
    # declaration line numbers from a parsed document: "inputs", "outputs",
    # "circuit" and "const <wire>"
    source_lines: Mapping[str, int] = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    def constant_values(self) -> Dict[str, int]:
        return dict(self.constants)

    def constant_wires(self) -> List[str]:
        return [wire for wire, _ in self.constants]

    def source_wires(self) -> List[str]:
        return list(self.primary_inputs) + self.constant_wires()

    def wires(self) -> List[str]:
        wires = self.source_wires()
        for inst in self.gates:
            wires.extend(inst.outputs)
        return wires

    def consumed_wires(self) -> List[str]:
        consumed = []
        for inst in self.gates:
            consumed.extend(inst.inputs)
        return consumed

    def terminal_wires(self) -> List[str]:
        return list(self.primary_outputs) + list(garbage_wires(self))

    def gate_multiset(self) -> Counter:
        return Counter(inst.gate.name for inst in self.gates)

    def line_count(self) -> int:
        return len(self.primary_inputs) + len(self.constants)

    def __str__(self) -> str:
        return (
            f"Netlist({self.name}: {len(self.primary_inputs)} inputs,"
            f" {len(self.constants)} constants, {len(self.gates)} gates,"
            f" {len(self.primary_outputs)} outputs)"
        )


@dataclass(frozen=True)
class GarbageSet:
    wires: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.wires)

    def __iter__(self) -> Iterator[str]:
        return iter(self.wires)

    def __contains__(self, wire) -> bool:
        return wire in self.wires


def _check_wire_name(wire, violations, **where) -> None:
    if not isinstance(wire, str) or not WIRE_RE.match(wire):
        violations.add(
            "wire-name", f"invalid wire name '{wire}'", wire=wire, **where
        )


def validate(n: Netlist, library=None) -> Violations:
    library = DEFAULT_LIBRARY if library is None else library
    violations = Violations()
    line = n.source_lines.get

    every_definition = set(n.source_wires())
    for inst in n.gates:
        every_definition.update(inst.outputs)

    defined = set()
    consumed = set()

    def define(wire, **where):
        _check_wire_name(wire, violations, **where)
        if wire in defined:
            violations.add(
                "redefinition",
                f"wire {wire} defined more than once",
                wire=wire,
                **where,
            )
        defined.add(wire)

    for wire in n.primary_inputs:
        define(wire, lineno=line("inputs"))

    for wire, bit in n.constants:
        define(wire, lineno=line(f"const {wire}"))
        if bit not in (0, 1):
            violations.add(
                "constant-bit",
                f"constant {wire} has value {bit}, expected 0 or 1",
                wire=wire,
                lineno=line(f"const {wire}"),
            )

    checked_gates = {}
    for index, inst in enumerate(n.gates):
        where = {"gate_index": index, "lineno": inst.lineno}
        gate = inst.gate
        try:
            registered = library.get(gate.name)
        except UnknownGateError:
            violations.add(
                "unknown-gate", f"gate {gate.name} is not registered", **where
            )
            registered = None
        if registered is not None and registered != gate:
            violations.add(
                "unknown-gate",
                f"gate {gate.name} differs from the registered definition",
                **where,
            )
        if gate.name not in checked_gates:
            checked_gates[gate.name] = check_bijective(gate.rows())
        if not checked_gates[gate.name]:
            violations.add(
                "non-bijective-gate",
                f"gate {gate.name} does not have a unique output pattern for"
                " every input pattern",
                **where,
            )
        if len(inst.inputs) != gate.arity or len(inst.outputs) != gate.arity:
            violations.add(
                "arity",
                f"gate {gate.name} takes {gate.arity} lines but was given"
                f" {len(inst.inputs)} inputs and {len(inst.outputs)} outputs",
                **where,
            )

        for wire in inst.inputs:
            if wire not in defined:
                if wire in every_definition:
                    violations.add(
                        "use-before-definition",
                        f"use before definition of {wire}",
                        wire=wire,
                        **where,
                    )
                else:
                    violations.add(
                        "undefined-wire",
                        f"wire {wire} is never defined",
                        wire=wire,
                        **where,
                    )
            if wire in consumed:
                violations.add(
                    "fan-out", f"fan-out at {wire}", wire=wire, **where
                )
            consumed.add(wire)

        for wire in inst.outputs:
            define(wire, **where)

    outputs_line = line("outputs")
    seen_outputs = set()
    for wire in n.primary_outputs:
        if wire in seen_outputs:
            violations.add(
                "duplicate-output",
                f"primary output {wire} listed more than once",
                wire=wire,
                lineno=outputs_line,
            )
            continue
        seen_outputs.add(wire)
        if wire not in defined:
            violations.add(
                "undefined-output",
                f"primary output {wire} is never defined",
                wire=wire,
                lineno=outputs_line,
            )
        elif wire in consumed:
            violations.add(
                "fan-out",
                f"fan-out at {wire} (consumed by a gate and a primary output)",
                wire=wire,
                lineno=outputs_line,
            )

    for wire, _ in n.constants:
        if wire not in consumed and wire not in seen_outputs:
            violations.warn(
                "unused-constant",
                f"constant {wire} feeds no gate",
                wire=wire,
                lineno=line(f"const {wire}"),
            )

    if not violations:
        garbage = _scan_garbage(n)
        if n.line_count() != len(n.primary_outputs) + len(garbage):
            violations.add(
                "line-conservation",
                f"{len(n.primary_inputs)} inputs + {len(n.constants)}"
                f" constants != {len(n.primary_outputs)} outputs +"
                f" {len(garbage)} garbage",
            )

    logging.debug(
        f"Validated {n.name}: {len(violations)} errors,"
        f" {len(violations.warnings)} warnings"
    )
    return violations


def _scan_garbage(n: Netlist) -> Tuple[str, ...]:
    used = set(n.consumed_wires()) | set(n.primary_outputs)
    return tuple(wire for wire in n.wires() if wire not in used)


def require_valid(n: Netlist, library=None) -> None:
    violations = validate(n, library)
    if violations:
        raise NetlistError(f"netlist {n.name} is not valid", violations)


def garbage_wires(n: Netlist, library=None) -> GarbageSet:
    require_valid(n, library)
    return GarbageSet(_scan_garbage(n))


def conserved_garbage_count(n: Netlist) -> int:
    return n.line_count() - len(n.primary_outputs)


def combine(name, *netlists) -> Netlist:
    """Places netlists side by side; they must not share wires."""
    seen = set()
    for n in netlists:
        shared = seen.intersection(n.wires())
        if shared:
            raise NetlistError(
                f"cannot combine {n.name}: shares wires {sorted(shared)}"
            )
        seen.update(n.wires())
    return Netlist(
        name=name,
        primary_inputs=sum((n.primary_inputs for n in netlists), ()),
        constants=sum((n.constants for n in netlists), ()),
        gates=sum((n.gates for n in netlists), ()),
        primary_outputs=sum((n.primary_outputs for n in netlists), ()),
    )
