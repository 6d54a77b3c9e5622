from __future__ import annotations
from cachetools import LRUCache, cached
from dataclasses import dataclass, field
from reversible_bcd.constants import BUILTIN_GATES, MAX_CUSTOM_ARITY
from reversible_bcd.constants import WIRE_PATTERN
from reversible_bcd.errors import ReversibleBcdError
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging
import re
import reversible_bcd.util as util


class UnknownGateError(ReversibleBcdError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ArityError(ReversibleBcdError, ValueError):
    pass


class TableShapeError(ReversibleBcdError, ValueError):
    pass


class GateDefinitionError(ReversibleBcdError, ValueError):
    pass


@dataclass(frozen=True)
class LogicCost:
    """Counts of two-input EXOR (alpha), two-input AND (beta) and NOT
    (delta) calculations."""

    alpha: int = 0
    beta: int = 0
    delta: int = 0

    def __post_init__(self):
        for name in ("alpha", "beta", "delta"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"LogicCost.{name} must be >= 0, got {value}")

    def __add__(self, other) -> LogicCost:
        if not isinstance(other, LogicCost):
            return NotImplemented
        return LogicCost(
            self.alpha + other.alpha,
            self.beta + other.beta,
            self.delta + other.delta,
        )

    def __mul__(self, times) -> LogicCost:
        if not isinstance(times, int):
            return NotImplemented
        return LogicCost(
            self.alpha * times, self.beta * times, self.delta * times
        )

    __rmul__ = __mul__

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.alpha, self.beta, self.delta)

    def total(self) -> int:
        return self.alpha + self.beta + self.delta

    def as_dict(self) -> Dict[str, int]:
        return {"xor": self.alpha, "and": self.beta, "not": self.delta}

    def __str__(self) -> str:
        terms = [
            f"{count}{symbol}"
            for count, symbol in zip(self.as_tuple(), "αβδ")
            if count
        ]
        return "+".join(terms) if terms else "0"


@dataclass(frozen=True)
class GateDefinition:
    name: str
    arity: int
    # table[x] is the output pattern for input pattern x; line A is the MSB.
    table: Tuple[int, ...]
    quantum_cost: Optional[int]
    logic_cost: LogicCost
    expressions: Tuple[str, ...] = ()
    builtin: bool = False
    evaluator: Optional[Callable] = field(
        default=None, compare=False, repr=False
    )

    @property
    def inverse_table(self) -> Tuple[int, ...]:
        return _inverse(self.table)

    def rows(self) -> List[List[int]]:
        return [util.int_to_bits(y, self.arity) for y in self.table]

    def __str__(self) -> str:
        cost = "unknown" if self.quantum_cost is None else self.quantum_cost
        return f"{self.name}/{self.arity} (quantum cost {cost})"


@cached(cache=LRUCache(maxsize=256))
def _inverse(table) -> Tuple[int, ...]:
    inverse = [0] * len(table)
    for x, y in enumerate(table):
        inverse[y] = x
    return tuple(inverse)


def _tabulate(evaluator, arity) -> Tuple[int, ...]:
    return tuple(
        util.bits_to_int(evaluator(*util.int_to_bits(x, arity)))
        for x in range(2**arity)
    )


def _fg(a, b):
    return (a, a ^ b)


def _pg(a, b, c):
    return (a, a ^ b, (a & b) ^ c)


def _tg(a, b, c):
    return (a, b, (a & b) ^ c)


def _frg(a, b, c):
    na = a ^ 1
    return (a, (na & b) ^ (a & c), (na & c) ^ (a & b))


def _pfag(a, b, c, d):
    p = a ^ b
    return (a, p, p ^ c, (p & c) ^ (a & b) ^ d)


def _hng(a, b, c, d):
    p = a ^ b
    return (a, b, p ^ c, (p & c) ^ (a & b) ^ d)


def _hnfg(a, b, c, d):
    return (a, a ^ b, c, c ^ d)


# name: (evaluator, arity, quantum cost, (alpha, beta, delta), expressions)
_BUILTIN_SPECS = {
    "FG": (_fg, 2, 1, (1, 0, 0), ("A", "A^B")),
    "PG": (_pg, 3, 4, (2, 1, 0), ("A", "A^B", "AB^C")),
    "TG": (_tg, 3, 5, (1, 1, 0), ("A", "B", "AB^C")),
    "FRG": (_frg, 3, 5, (2, 4, 2), ("A", "A'B^AC", "A'C^AB")),
    "PFAG": (
        _pfag,
        4,
        8,
        (5, 2, 0),
        ("A", "A^B", "A^B^C", "(A^B)C^AB^D"),
    ),
    "HNG": (_hng, 4, None, (4, 2, 0), ("A", "B", "A^B^C", "(A^B)C^AB^D")),
    "HNFG": (_hnfg, 4, 2, (2, 0, 0), ("A", "A^B", "C", "C^D")),
}


def _make_builtin(name) -> GateDefinition:
    evaluator, arity, qcost, logic, expressions = _BUILTIN_SPECS[name]
    return GateDefinition(
        name=name,
        arity=arity,
        table=_tabulate(evaluator, arity),
        quantum_cost=qcost,
        logic_cost=LogicCost(*logic),
        expressions=expressions,
        builtin=True,
        evaluator=evaluator,
    )


_BUILTINS = {name: _make_builtin(name) for name in BUILTIN_GATES}


def builtin(name) -> GateDefinition:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise UnknownGateError(
            f"'{name}' is not a built-in gate (expected one of"
            f" {', '.join(BUILTIN_GATES)})"
        ) from None


def _check_width(g, bits, what) -> None:
    if len(bits) != g.arity:
        raise ArityError(
            f"{g.name} takes {g.arity} {what} lines, got {len(bits)}"
        )
    if any(bit not in (0, 1) for bit in bits):
        raise ArityError(f"{g.name} {what} {list(bits)} is not a bit vector")


def eval_gate(g: GateDefinition, bits: Sequence[int]) -> List[int]:
    _check_width(g, bits, "input")
    return util.int_to_bits(g.table[util.bits_to_int(bits)], g.arity)


def inverse_eval_gate(g: GateDefinition, bits: Sequence[int]) -> List[int]:
    _check_width(g, bits, "output")
    return util.int_to_bits(g.inverse_table[util.bits_to_int(bits)], g.arity)


def table_arity(table) -> int:
    rows = len(table)
    if rows < 2 or rows & (rows - 1):
        raise TableShapeError(
            f"truth table has {rows} rows, expected a power of two >= 2"
        )
    arity = rows.bit_length() - 1
    for i, row in enumerate(table):
        if len(row) != arity:
            raise TableShapeError(
                f"row {i} has width {len(row)}, expected {arity}"
            )
        if any(bit not in (0, 1) for bit in row):
            raise TableShapeError(f"row {i} {list(row)} is not a bit vector")
    return arity


def check_bijective(table) -> bool:
    table_arity(table)
    return len({tuple(row) for row in table}) == len(table)


class GateLibrary:
    """Registry of gate definitions, seeded with the built-ins.

    Reads are safe from any thread; registration belongs to setup.
    """

    def __init__(self, include_builtins=True):
        self.gates: Dict[str, GateDefinition] = {}
        if include_builtins:
            self.gates.update(_BUILTINS)

    def get(self, name) -> GateDefinition:
        try:
            return self.gates[name]
        except KeyError:
            raise UnknownGateError(f"unknown gate '{name}'") from None

    def register(self, gate: GateDefinition) -> GateDefinition:
        if gate.name in self.gates:
            raise GateDefinitionError(f"gate '{gate.name}' already registered")
        self.gates[gate.name] = gate
        logging.debug(f"Registered gate {gate}")
        return gate

    def names(self) -> List[str]:
        return list(self.gates)

    def __contains__(self, name) -> bool:
        return name in self.gates

    def __iter__(self):
        return iter(self.gates.values())

    def __len__(self) -> int:
        return len(self.gates)


DEFAULT_LIBRARY = GateLibrary()


def define_custom_gate(
    name,
    table,
    quantum_cost=None,
    logic_cost=None,
    library=None,
) -> GateDefinition:
    library = DEFAULT_LIBRARY if library is None else library
    if not re.match(WIRE_PATTERN, name or ""):
        raise GateDefinitionError(f"'{name}' is not a valid gate name")
    try:
        arity = table_arity(table)
    except TableShapeError as e:
        raise GateDefinitionError(f"gate '{name}': {e}") from e
    if arity > MAX_CUSTOM_ARITY:
        raise GateDefinitionError(
            f"gate '{name}' has {arity} lines, at most"
            f" {MAX_CUSTOM_ARITY} are supported"
        )
    if not check_bijective(table):
        raise GateDefinitionError(
            f"gate '{name}' is not reversible: its table repeats an output"
        )
    if quantum_cost is not None and (
        not isinstance(quantum_cost, int) or quantum_cost < 0
    ):
        raise GateDefinitionError(
            f"gate '{name}' quantum cost must be a non-negative integer"
        )
    if name in library:
        raise GateDefinitionError(f"gate '{name}' already registered")
    gate = GateDefinition(
        name=name,
        arity=arity,
        table=tuple(util.bits_to_int(row) for row in table),
        quantum_cost=quantum_cost,
        logic_cost=logic_cost if logic_cost is not None else LogicCost(),
    )
    return library.register(gate)
