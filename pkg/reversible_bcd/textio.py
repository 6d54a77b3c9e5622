"""
Line-oriented netlist documents.

    # comment
    circuit NAME
    inputs W...
    const W BIT
    gate GATENAME IN... -> OUT...
    outputs W...
    end

Gate lines run in the order written. Structural rules (define before use,
no fan-out, single definition) are checked by netlist.validate() on the
parsed result and reported against the document's line numbers.
"""

from dataclasses import dataclass
from reversible_bcd.errors import ReversibleBcdError
from reversible_bcd.gates import DEFAULT_LIBRARY, UnknownGateError
from reversible_bcd.netlist import GateInstance, Netlist, require_valid
from reversible_bcd.netlist import validate
from typing import List, Optional
import json
import logging

DIRECTIVES = ("circuit", "inputs", "const", "gate", "outputs", "end")


@dataclass(frozen=True)
class Diagnostic:
    lineno: int
    token: Optional[int]
    rule: str
    message: str

    def __str__(self) -> str:
        where = f"line {self.lineno}"
        if self.token is not None:
            where += f", token {self.token}"
        return f"{where}: {self.message} [{self.rule}]"


class NetlistParseError(ReversibleBcdError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__(
            "\n".join(str(d) for d in self.diagnostics) or "parse error"
        )

    def rules(self) -> List[str]:
        return [d.rule for d in self.diagnostics]


def _token_index(tokens, wire, rule) -> Optional[int]:
    if wire is None or wire not in tokens:
        return None
    positions = [i for i, token in enumerate(tokens) if token == wire]
    if tokens and tokens[0] == "gate" and "->" in tokens:
        arrow = tokens.index("->")
        ins = [i for i in positions if i < arrow]
        outs = [i for i in positions if i > arrow]
        if rule == "redefinition" and outs:
            return outs[-1]
        if rule == "fan-out" and ins:
            return ins[-1]
        if ins:
            return ins[0]
    if rule in ("redefinition", "fan-out"):
        return positions[-1]
    return positions[0]


class _Parser:
    def __init__(self, text, library, check_structure=True):
        self.lines = text.splitlines()
        self.library = library
        self.check_structure = check_structure
        self.diagnostics: List[Diagnostic] = []
        self.tokens_by_line = {}
        self.name = None
        self.inputs = []
        self.constants = []
        self.gates = []
        self.outputs = []
        self.source_lines = {}
        self.ended = False

    def error(self, lineno, token, rule, message) -> None:
        self.diagnostics.append(Diagnostic(lineno, token, rule, message))

    def parse(self) -> Netlist:
        for lineno, raw in enumerate(self.lines, start=1):
            tokens = raw.split("#", 1)[0].split()
            if not tokens:
                continue
            self.tokens_by_line[lineno] = tokens
            if self.ended:
                self.error(lineno, 0, "after-end", "text after 'end'")
                continue
            directive = tokens[0]
            if directive not in DIRECTIVES:
                self.error(
                    lineno, 0, "syntax", f"unknown directive '{directive}'"
                )
                continue
            if self.name is None and directive != "circuit":
                self.error(
                    lineno, 0, "syntax", "document must start with 'circuit'"
                )
                # keep going so later lines are still checked
                self.name = ""
            getattr(self, f"_{directive}")(lineno, tokens)

        last = len(self.lines)
        if self.name is None:
            self.error(max(last, 1), None, "syntax", "empty document")
        elif not self.ended:
            self.error(max(last, 1), None, "syntax", "missing 'end'")
        if self.diagnostics:
            raise NetlistParseError(self.diagnostics)

        netlist = Netlist(
            name=self.name,
            primary_inputs=tuple(self.inputs),
            constants=tuple(self.constants),
            gates=tuple(self.gates),
            primary_outputs=tuple(self.outputs),
            source_lines=self.source_lines,
        )
        if self.check_structure:
            self._check_structure(netlist)
        return netlist

    def _check_structure(self, netlist) -> None:
        violations = validate(netlist, self.library)
        for warning in violations.warnings:
            logging.warning(f"{self.name}: {warning}")
        for violation in violations:
            lineno = violation.lineno or self.source_lines.get("circuit", 1)
            tokens = self.tokens_by_line.get(lineno, [])
            self.error(
                lineno,
                _token_index(tokens, violation.wire, violation.rule),
                violation.rule,
                violation.message,
            )
        if self.diagnostics:
            raise NetlistParseError(self.diagnostics)

    def _once(self, lineno, key) -> bool:
        if key in self.source_lines:
            self.error(
                lineno,
                0,
                "syntax",
                f"'{key}' already given on line {self.source_lines[key]}",
            )
            return False
        self.source_lines[key] = lineno
        return True

    def _circuit(self, lineno, tokens) -> None:
        if not self._once(lineno, "circuit"):
            return
        if len(tokens) != 2:
            self.error(lineno, 0, "syntax", "expected 'circuit NAME'")
            self.name = ""
            return
        self.name = tokens[1]

    def _inputs(self, lineno, tokens) -> None:
        if self.constants or self.gates:
            self.error(
                lineno, 0, "syntax", "inputs must precede constants and gates"
            )
            return
        if self._once(lineno, "inputs"):
            self.inputs.extend(tokens[1:])

    def _const(self, lineno, tokens) -> None:
        if len(tokens) != 3:
            self.error(lineno, 0, "syntax", "expected 'const WIRE BIT'")
            return
        wire, bit = tokens[1], tokens[2]
        if bit not in ("0", "1"):
            self.error(
                lineno,
                2,
                "constant-bit",
                f"constant {wire} has value {bit}, expected 0 or 1",
            )
            return
        if self.gates:
            self.error(
                lineno, 0, "syntax", "constants must be declared before gates"
            )
            return
        if f"const {wire}" in self.source_lines:
            self.error(
                lineno, 1, "redefinition", f"wire {wire} defined more than once"
            )
            return
        self.source_lines[f"const {wire}"] = lineno
        self.constants.append((wire, int(bit)))

    def _gate(self, lineno, tokens) -> None:
        if "outputs" in self.source_lines:
            self.error(lineno, 0, "syntax", "gate after 'outputs'")
            return
        if len(tokens) < 2 or tokens.count("->") != 1:
            self.error(
                lineno, 0, "syntax", "expected 'gate NAME IN... -> OUT...'"
            )
            return
        try:
            gate = self.library.get(tokens[1])
        except UnknownGateError:
            self.error(lineno, 1, "unknown-gate", f"unknown gate '{tokens[1]}'")
            return
        arrow = tokens.index("->")
        inputs = tuple(tokens[2:arrow])
        outputs = tuple(tokens[arrow + 1 :])
        if len(inputs) != gate.arity or len(outputs) != gate.arity:
            self.error(
                lineno,
                1,
                "arity",
                f"gate {gate.name} takes {gate.arity} lines, got"
                f" {len(inputs)} inputs and {len(outputs)} outputs",
            )
            return
        self.gates.append(GateInstance(gate, inputs, outputs, lineno))

    def _outputs(self, lineno, tokens) -> None:
        if self._once(lineno, "outputs"):
            self.outputs.extend(tokens[1:])

    def _end(self, lineno, tokens) -> None:
        if len(tokens) != 1:
            self.error(lineno, 1, "syntax", "nothing may follow 'end'")
        self.ended = True


def parse_netlist(text, library=None, check_structure=True) -> Netlist:
    """With check_structure off only syntax and gate lookups are checked,
    leaving netlist.validate() to the caller."""
    library = DEFAULT_LIBRARY if library is None else library
    return _Parser(text, library, check_structure).parse()


def read_netlist(path, library=None) -> Netlist:
    with open(path) as fh:
        text = fh.read()
    logging.debug(f"Parsing netlist file {path}")
    return parse_netlist(text, library)


def serialize_netlist(n: Netlist, library=None) -> str:
    require_valid(n, library)
    lines = [f"circuit {n.name}", " ".join(["inputs", *n.primary_inputs])]
    lines.extend(f"const {wire} {bit}" for wire, bit in n.constants)
    lines.extend(
        " ".join(["gate", inst.gate.name, *inst.inputs, "->", *inst.outputs])
        for inst in n.gates
    )
    lines.append(" ".join(["outputs", *n.primary_outputs]))
    lines.append("end")
    return "\n".join(lines) + "\n"


def report_json(data) -> str:
    """Keys keep their insertion order so output diffs cleanly."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
