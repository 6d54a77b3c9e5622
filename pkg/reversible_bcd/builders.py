"""
Generators for the PFAG adder circuits.

Every builder returns a flat, validated Netlist. Buses are declared most
significant bit first (a3 a2 a1 a0), and multi-digit operands most
significant digit first, so a simulation input pattern reads like the
binary number it encodes.
"""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from reversible_bcd.errors import ReversibleBcdError
from reversible_bcd.gates import builtin
from reversible_bcd.netlist import GateInstance, Netlist, validate
from typing import Callable, List, Optional, Sequence, Tuple
import logging
import reversible_bcd.util as util

BCD_CONSTANTS = 19


class BuildError(ReversibleBcdError):
    pass


class CarryIn(Enum):
    PRIMARY = "primary"
    CONSTANT = "const"


@dataclass(frozen=True)
class BuildOptions:
    carry_in: CarryIn = CarryIn.CONSTANT
    wire_prefix: str = ""


@dataclass(frozen=True)
class DesignId:
    kind: str
    digits: int = 1

    KINDS = ("ripple4", "bcd1", "bcd2", "bcd_chain")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise BuildError(
                f"unknown design '{self.kind}' (expected one of"
                f" {', '.join(self.KINDS)})"
            )
        if self.digits < 1:
            raise BuildError(
                f"a BCD chain needs at least 1 digit, got {self.digits}"
            )

    @classmethod
    def parse(cls, text, digits=None) -> DesignId:
        kind = text.replace("-", "_")
        if kind == "bcd_chain":
            if digits is None:
                raise BuildError("bcd-chain needs a digit count")
            return cls(kind, int(digits))
        return cls(kind)

    def __str__(self) -> str:
        if self.kind == "bcd_chain":
            return f"bcd_chain{self.digits}"
        return self.kind


class NetlistBuilder:
    """Accumulates declarations and gates, handing out fresh wire names."""

    def __init__(self, name):
        self.name = name
        self.prefix = ""
        self.inputs: List[str] = []
        self.constants: List[Tuple[str, int]] = []
        self.gates: List[GateInstance] = []
        self.outputs: List[str] = []
        self.counters = {}

    def stage(self, prefix) -> None:
        self.prefix = prefix
        self.counters = {}

    def wire(self, name) -> str:
        return f"{self.prefix}{name}"

    def fresh(self, stem) -> str:
        index = self.counters.get(stem, 0)
        self.counters[stem] = index + 1
        return self.wire(f"{stem}{index}")

    def garbage(self) -> str:
        return self.fresh("g")

    def input(self, name) -> str:
        self.inputs.append(name)
        return name

    def const(self, bit=0) -> str:
        wire = self.fresh("k")
        self.constants.append((wire, bit))
        return wire

    def gate(self, name, inputs, outputs) -> Tuple[str, ...]:
        self.gates.append(
            GateInstance(builtin(name), tuple(inputs), tuple(outputs))
        )
        return tuple(outputs)

    def output(self, *wires) -> None:
        self.outputs.extend(wires)

    def build(self) -> Netlist:
        netlist = Netlist(
            name=self.name,
            primary_inputs=tuple(self.inputs),
            constants=tuple(self.constants),
            gates=tuple(self.gates),
            primary_outputs=tuple(self.outputs),
        )
        violations = validate(netlist)
        if violations:
            raise BuildError(f"built {self.name} is invalid:\n{violations}")
        logging.debug(f"Built {netlist}")
        return netlist


def _ripple(nb, a, b, carry) -> Tuple[List[str], str]:
    """Adds two LSB-first buses with one PFAG per bit."""
    sums = []
    for i, (ai, bi) in enumerate(zip(a, b)):
        _, _, s, carry = nb.gate(
            "PFAG",
            [ai, bi, carry, nb.const()],
            [
                nb.garbage(),
                nb.garbage(),
                nb.wire(f"s{i}"),
                nb.wire(f"c{i + 1}"),
            ],
        )
        sums.append(s)
    return sums, carry


def _bcd_digit(nb, design, a, b, cin) -> Tuple[List[str], str]:
    """One BCD digit adder. `a` and `b` are MSB-first wires; a `cin` of None
    means the carry-in is a constant 0 line. Returns MSB-first sum wires and
    the decimal carry-out."""
    carry_from_constant = cin is None
    if carry_from_constant:
        cin = nb.const()

    # binary sum of the two digits
    s, c4 = _ripple(nb, a[::-1], b[::-1], cin)

    # s2 tripler: PFAG(s2, 0, 0, 0) = (s2, s2, s2, 0)
    zero = nb.wire("zero") if carry_from_constant else nb.garbage()
    s2_0, s2_1, _, zero = nb.gate(
        "PFAG",
        [s[2], nb.const(), nb.const(), nb.const()],
        [nb.wire("s2_0"), nb.wire("s2_1"), nb.garbage(), zero],
    )

    # s1 and s3 copies
    s1_copies = [nb.wire("s1_0"), nb.wire("s1_1")]
    s3_copies = [nb.wire("s3_0"), nb.wire("s3_1")]
    if design == "bcd2":
        nb.gate(
            "HNFG",
            [s[1], nb.const(), s[3], nb.const()],
            s1_copies + s3_copies,
        )
    else:
        nb.gate("FG", [s[1], nb.const()], s1_copies)
        nb.gate("FG", [s[3], nb.const()], s3_copies)

    # overflow: ov = c4 | s3 & (s2 | s1). x1 & x2 is always 0, so the PFAG
    # carry output reduces to (x1 ^ x2) & s3 ^ c4, and the two terms never
    # hold together for digit inputs.
    _, x1, x2 = nb.gate(
        "PG",
        [s2_0, s1_copies[0], nb.const()],
        [nb.garbage(), nb.wire("x1"), nb.wire("x2")],
    )
    _, _, _, ov = nb.gate(
        "PFAG",
        [x1, x2, s3_copies[0], c4],
        [nb.garbage(), nb.garbage(), nb.garbage(), nb.wire("ov")],
    )
    ov0, ov1 = nb.gate(
        "FG", [ov, nb.const()], [nb.wire("ov0"), nb.wire("ov1")]
    )
    ov2, cout = nb.gate(
        "FG", [ov1, nb.const()], [nb.wire("ov2"), nb.wire("cout")]
    )

    # add 0110 when ov is set; bit 0 only passes s0 and makes the 0 carry
    _, _, z0, t1 = nb.gate(
        "PFAG",
        [s[0], nb.const(), nb.const(), nb.const()],
        [nb.garbage(), nb.garbage(), nb.wire("z0"), nb.wire("t1")],
    )
    _, _, z1, t2 = nb.gate(
        "PFAG",
        [s1_copies[1], ov0, t1, nb.const()],
        [nb.garbage(), nb.garbage(), nb.wire("z1"), nb.wire("t2")],
    )
    _, _, z2, t3 = nb.gate(
        "PFAG",
        [s2_1, ov2, t2, nb.const()],
        [nb.garbage(), nb.garbage(), nb.wire("z2"), nb.wire("t3")],
    )
    # with a constant carry-in the tripler's zero line stands in for a
    # fresh constant, keeping the constant count at 19 in both modes
    b3 = zero if carry_from_constant else nb.const()
    _, _, z3, _ = nb.gate(
        "PFAG",
        [s3_copies[1], b3, t3, nb.const()],
        [nb.garbage(), nb.garbage(), nb.wire("z3"), nb.garbage()],
    )
    return [z3, z2, z1, z0], cout


def _declare_bus(nb, stem, width=4) -> List[str]:
    return [nb.input(nb.wire(f"{stem}{i}")) for i in range(width - 1, -1, -1)]


def build_ripple_adder() -> Netlist:
    nb = NetlistBuilder("ripple4")
    a = _declare_bus(nb, "a")
    b = _declare_bus(nb, "b")
    cin = nb.input("cin")
    sums, carry = _ripple(nb, a[::-1], b[::-1], cin)
    nb.output(*sums[::-1], carry)
    return nb.build()


def build_bcd_adder(design, opts: Optional[BuildOptions] = None) -> Netlist:
    opts = opts or BuildOptions()
    design = str(design)
    if design not in ("bcd1", "bcd2"):
        raise BuildError(f"'{design}' is not a BCD adder design")
    nb = NetlistBuilder(design)
    nb.stage(opts.wire_prefix)
    a = _declare_bus(nb, "a")
    b = _declare_bus(nb, "b")
    cin = None
    if opts.carry_in == CarryIn.PRIMARY:
        cin = nb.input(nb.wire("cin"))
    z, cout = _bcd_digit(nb, design, a, b, cin)
    nb.output(*z, cout)
    netlist = nb.build()
    if len(netlist.constants) != BCD_CONSTANTS:
        raise BuildError(
            f"{design} uses {len(netlist.constants)} constants, expected"
            f" {BCD_CONSTANTS}"
        )
    return netlist


def build_bcd_chain(n) -> Netlist:
    if n < 1:
        raise BuildError(f"a BCD chain needs at least 1 digit, got {n}")
    nb = NetlistBuilder(f"bcd_chain{n}")
    prefix = lambda digit: f"d{digit}_" if n > 1 else ""

    buses = {}
    for stem in ("a", "b"):
        for digit in range(n - 1, -1, -1):
            nb.stage(prefix(digit))
            buses[stem, digit] = _declare_bus(nb, stem)
    nb.stage("")
    carry = nb.input("cin")

    sums = {}
    for digit in range(n):
        nb.stage(prefix(digit))
        sums[digit], carry = _bcd_digit(
            nb, "bcd2", buses["a", digit], buses["b", digit], carry
        )
    for digit in range(n - 1, -1, -1):
        nb.output(*sums[digit])
    nb.output(carry)
    return nb.build()


def build_design(
    design_id: DesignId, opts: Optional[BuildOptions] = None
) -> Netlist:
    if design_id.kind == "ripple4":
        return build_ripple_adder()
    if design_id.kind == "bcd_chain":
        return build_bcd_chain(design_id.digits)
    return build_bcd_adder(design_id.kind, opts)


def digits_value(bits, digits) -> int:
    value = 0
    for i in range(digits):
        value = value * 10 + util.bits_to_int(bits[4 * i : 4 * i + 4])
    return value


def digits_bits(value, digits) -> List[int]:
    bits = []
    for i in range(digits - 1, -1, -1):
        bits.extend(util.int_to_bits((value // 10**i) % 10, 4))
    return bits


def ripple_oracle() -> Tuple[Callable, None]:
    """Integer addition over (a3..a0, b3..b0, cin) -> (s3..s0, c4)."""

    def oracle(pattern):
        total = (
            util.bits_to_int(pattern[0:4])
            + util.bits_to_int(pattern[4:8])
            + pattern[8]
        )
        return util.int_to_bits(total & 15, 4) + [total >> 4]

    return oracle, None


def bcd_oracle(digits=1, carry_in=True) -> Tuple[Callable, Callable]:
    """Decimal addition of two `digits`-digit BCD operands, restricted to
    patterns where every digit is 0..9."""
    width = 4 * digits

    def oracle(pattern):
        cin = pattern[2 * width] if carry_in else 0
        total = (
            digits_value(pattern[:width], digits)
            + digits_value(pattern[width : 2 * width], digits)
            + cin
        )
        return digits_bits(total % 10**digits, digits) + [
            total // 10**digits
        ]

    def domain(pattern):
        return all(
            util.bits_to_int(pattern[i : i + 4]) <= 9
            for i in range(0, 2 * width, 4)
        )

    return oracle, domain


def operand_pattern(a, b, cin, digits=1, carry_in=True) -> List[int]:
    pattern = digits_bits(a, digits) + digits_bits(b, digits)
    if carry_in:
        pattern.append(cin)
    elif cin:
        raise BuildError("carry-in is a constant 0 line in this netlist")
    return pattern
