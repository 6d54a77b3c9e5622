from __future__ import annotations
from dataclasses import dataclass, field
from reversible_bcd.constants import DESIGN_LABELS, PUBLISHED_CLAIMS
from reversible_bcd.gates import LogicCost
from reversible_bcd.netlist import Netlist, garbage_wires
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging

UNKNOWN = "Unknown"


def add_costs(a, b) -> Optional[int]:
    if a is None or b is None:
        return None
    return a + b


def format_gate_expr(gates) -> str:
    ordered = sorted(gates.items(), key=lambda item: (-item[1], item[0]))
    terms = "+".join(f"{count}{name}" for name, count in ordered)
    return f"{terms}={sum(gates.values())}"


@dataclass(frozen=True)
class MetricsReport:
    gate_count: int
    gates: Dict[str, int]
    quantum_cost: Optional[int]
    garbage: int
    constants: int
    logical: LogicCost
    inputs: int = field(default=0, compare=False)
    outputs: int = field(default=0, compare=False)

    def gate_count_expr(self) -> str:
        return format_gate_expr(self.gates)

    def conserves_lines(self) -> bool:
        return self.garbage == self.inputs + self.constants - self.outputs

    def to_dict(self) -> dict:
        return {
            "gate_count": self.gate_count,
            "gates": dict(sorted(self.gates.items())),
            "quantum_cost": self.quantum_cost,
            "garbage": self.garbage,
            "constants": self.constants,
            "logical": self.logical.as_dict(),
        }

    def __add__(self, other) -> MetricsReport:
        gates = dict(self.gates)
        for name, count in other.gates.items():
            gates[name] = gates.get(name, 0) + count
        return MetricsReport(
            gate_count=self.gate_count + other.gate_count,
            gates=dict(sorted(gates.items())),
            quantum_cost=add_costs(self.quantum_cost, other.quantum_cost),
            garbage=self.garbage + other.garbage,
            constants=self.constants + other.constants,
            logical=self.logical + other.logical,
            inputs=self.inputs + other.inputs,
            outputs=self.outputs + other.outputs,
        )


def analyze(n: Netlist, library=None) -> MetricsReport:
    garbage = garbage_wires(n, library)

    gates = n.gate_multiset()
    quantum_cost = 0
    logical = LogicCost()
    for inst in n.gates:
        quantum_cost = add_costs(quantum_cost, inst.gate.quantum_cost)
        logical = logical + inst.gate.logic_cost

    report = MetricsReport(
        gate_count=len(n.gates),
        gates=dict(sorted(gates.items())),
        quantum_cost=quantum_cost,
        garbage=len(garbage),
        constants=len(n.constants),
        logical=logical,
        inputs=len(n.primary_inputs),
        outputs=len(n.primary_outputs),
    )
    # validate() already enforced this; a failure here is a bug
    assert report.conserves_lines(), f"{n.name} breaks line conservation"
    logging.debug(f"Metrics for {n.name}: {report.to_dict()}")
    return report


@dataclass(frozen=True)
class LiteratureRow:
    label: str
    gate_count_expr: str
    garbage: int
    logical: LogicCost
    quantum_cost: Union[int, str]

    @property
    def gate_count(self) -> int:
        return int(self.gate_count_expr.rsplit("=", 1)[1])


# Published comparison figures, stored exactly as printed.
LITERATURE_ROWS = (
    LiteratureRow(
        "This study: Design 1",
        "10 PFAG +4FG+1PG=15",
        24,
        LogicCost(56, 21, 0),
        88,
    ),
    LiteratureRow(
        "This study: Design 2",
        "10 PFAG+1PG +2FG+1HNFG=14",
        24,
        LogicCost(56, 21, 0),
        88,
    ),
    LiteratureRow(
        "BCD adder [15]",
        "8 HNG +2NG+ 1TG+2FG + 1HNFG=14",
        22,
        LogicCost(49, 21, 6),
        UNKNOWN,
    ),
    LiteratureRow(
        "BCD adder [16]",
        "19+4FG=23",
        22,
        LogicCost(42, 30, 33),
        UNKNOWN,
    ),
    LiteratureRow(
        "Conventional BCD adder plus fanout [17]",
        "11+5FG=16",
        22,
        LogicCost(59, 30, 33),
        UNKNOWN,
    ),
    LiteratureRow(
        "Carry skip BCD adder plus fanout [17]",
        "15+7FG=22",
        27,
        LogicCost(75, 48, 36),
        UNKNOWN,
    ),
)


def literature_table() -> List[LiteratureRow]:
    return list(LITERATURE_ROWS)


def literature_cost(row) -> Optional[int]:
    return None if row.quantum_cost == UNKNOWN else row.quantum_cost


def claim_key(label) -> Optional[str]:
    if label in PUBLISHED_CLAIMS:
        return label
    for design, design_label in DESIGN_LABELS.items():
        if label == design_label:
            return design
    return None


def discrepancies(report: MetricsReport, design) -> Dict[str, object]:
    """Fields whose computed value differs from the published claim,
    mapped to the claimed value."""
    claim = PUBLISHED_CLAIMS.get(design)
    if claim is None:
        return {}
    found = {}
    if report.gate_count != claim["gate_count"]:
        found["gate_count"] = claim["gate_count"]
    claimed_gates = dict(sorted(claim["gates"].items()))
    if report.gates != claimed_gates:
        found["gates"] = claimed_gates
    if report.quantum_cost != claim["quantum_cost"]:
        found["quantum_cost"] = claim["quantum_cost"]
    if report.garbage != claim["garbage"]:
        found["garbage"] = claim["garbage"]
    if report.constants != claim["constants"]:
        found["constants"] = claim["constants"]
    logical = claim["logical"]
    if logical is not None and report.logical.as_tuple() != tuple(logical):
        found["logical"] = LogicCost(*logical)
    return found


def assert_published(report: MetricsReport, design) -> List[str]:
    """Checks gates, quantum cost, logical totals and constants against the
    published figures. Garbage is left out: the published count for the BCD
    designs breaks line conservation and is only reported."""
    claim = PUBLISHED_CLAIMS.get(design)
    if claim is None:
        return [f"no published figures for design '{design}'"]
    problems = []
    for name, value in discrepancies(report, design).items():
        if name == "garbage":
            continue
        if name == "gates":
            problems.append(f"gate multiset {report.gates} != {value}")
            continue
        computed = getattr(report, name)
        problems.append(f"{name} {computed} != {value}")
    return problems


@dataclass
class ComparisonRow:
    label: str
    source: str
    gate_count_expr: str
    gate_count: int
    garbage: int
    constants: Optional[int]
    logical: LogicCost
    quantum_cost: Optional[int]
    discrepancies: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "source": self.source,
            "gate_count": self.gate_count,
            "gate_count_expr": self.gate_count_expr,
            "garbage": self.garbage,
            "constants": self.constants,
            "logical": self.logical.as_dict(),
            "basic_gates": self.logical.total(),
            "quantum_cost": self.quantum_cost,
            "discrepancies": {
                name: (
                    value.as_dict() if isinstance(value, LogicCost) else value
                )
                for name, value in self.discrepancies.items()
            },
        }


class ComparisonTable:
    headers = (
        "Design",
        "Source",
        "Gate Count",
        "Garbage",
        "Constants",
        "Logical",
        "Basic",
        "Quantum Cost",
    )

    def __init__(self, rows=None, marker="*"):
        self.rows: List[ComparisonRow] = rows or []
        self.marker = marker

    def has_discrepancies(self) -> bool:
        return any(row.discrepancies for row in self.rows)

    def _cell(self, row, name, value) -> str:
        if name in row.discrepancies:
            claimed = row.discrepancies[name]
            return f"{value} {self.marker}(claimed {claimed})"
        return str(value)

    def _gate_cell(self, row) -> str:
        if "gates" in row.discrepancies:
            claimed = format_gate_expr(row.discrepancies["gates"])
            return f"{row.gate_count_expr} {self.marker}(claimed {claimed})"
        return self._cell(row, "gate_count", row.gate_count_expr)

    def text_rows(self) -> List[Tuple[str, ...]]:
        lines = []
        for row in self.rows:
            qcost = UNKNOWN if row.quantum_cost is None else row.quantum_cost
            lines.append(
                (
                    row.label,
                    row.source,
                    self._gate_cell(row),
                    self._cell(row, "garbage", row.garbage),
                    self._cell(
                        row,
                        "constants",
                        "-" if row.constants is None else row.constants,
                    ),
                    self._cell(row, "logical", row.logical),
                    str(row.logical.total()),
                    self._cell(row, "quantum_cost", qcost),
                )
            )
        return lines

    def render_text(self) -> str:
        body = self.text_rows()
        widths = [
            max([len(header)] + [len(line[i]) for line in body])
            for i, header in enumerate(self.headers)
        ]
        fmt = lambda cells: "  ".join(
            cell.ljust(width) for cell, width in zip(cells, widths)
        ).rstrip()
        text = [fmt(self.headers), fmt(["-" * w for w in widths])]
        text.extend(fmt(line) for line in body)
        if self.has_discrepancies():
            text.append("")
            text.append(
                f"{self.marker} computed value differs from the published"
                " claim"
            )
        return "\n".join(text) + "\n"

    def to_dict(self) -> dict:
        return {"rows": [row.to_dict() for row in self.rows]}

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def compare(
    reports: Sequence[Tuple[str, MetricsReport]],
    include_literature=False,
    marker="*",
) -> ComparisonTable:
    table = ComparisonTable(marker=marker)
    for label, report in reports:
        design = claim_key(label)
        table.rows.append(
            ComparisonRow(
                label=label,
                source="computed",
                gate_count_expr=report.gate_count_expr(),
                gate_count=report.gate_count,
                garbage=report.garbage,
                constants=report.constants,
                logical=report.logical,
                quantum_cost=report.quantum_cost,
                discrepancies=discrepancies(report, design) if design else {},
            )
        )
    if include_literature:
        for lit in LITERATURE_ROWS:
            table.rows.append(
                ComparisonRow(
                    label=lit.label,
                    source="paper-claimed",
                    gate_count_expr=lit.gate_count_expr,
                    gate_count=lit.gate_count,
                    garbage=lit.garbage,
                    constants=None,
                    logical=lit.logical,
                    quantum_cost=literature_cost(lit),
                )
            )
    return table
