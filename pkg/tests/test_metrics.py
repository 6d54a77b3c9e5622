from conftest import valid_netlists
from dataclasses import replace
from hypothesis import given, settings
from hypothesis import strategies as st
from reversible_bcd.gates import LogicCost, builtin
from reversible_bcd.metrics import UNKNOWN, analyze, assert_published
from reversible_bcd.metrics import compare, discrepancies, literature_table
from reversible_bcd.netlist import GateInstance, Netlist, combine, validate


def test_ripple_metrics(ripple4):
    report = analyze(ripple4)
    assert report.gates == {"PFAG": 4}
    assert report.gate_count == 4
    assert report.quantum_cost == 32
    assert report.garbage == 8
    assert report.constants == 4
    assert report.logical == LogicCost(20, 8, 0)
    assert assert_published(report, "ripple4") == []


def test_bcd1_metrics(bcd1):
    report = analyze(bcd1)
    assert report.gates == {"FG": 4, "PFAG": 10, "PG": 1}
    assert report.gate_count == 15
    assert report.quantum_cost == 88
    assert report.constants == 19
    assert report.logical.as_tuple() == (56, 21, 0)
    assert report.garbage == 23
    assert report.gate_count_expr() == "10PFAG+4FG+1PG=15"
    assert assert_published(report, "bcd1") == []


def test_bcd2_metrics(bcd2):
    report = analyze(bcd2)
    assert report.gates == {"FG": 2, "HNFG": 1, "PFAG": 10, "PG": 1}
    assert report.gate_count == 14
    assert report.quantum_cost == 88
    assert report.constants == 19
    assert report.logical.as_tuple() == (56, 21, 0)
    assert report.garbage == 23
    assert discrepancies(report, "bcd2") == {"garbage": 24}
    assert assert_published(report, "bcd2") == []


def test_published_check_catches_mismatch(bcd1):
    problems = assert_published(analyze(bcd1), "bcd2")
    assert any(p.startswith("gate multiset") for p in problems)
    assert "gate_count 15 != 14" in problems


def hng_netlist():
    return Netlist(
        name="h",
        primary_inputs=tuple("abcd"),
        constants=(),
        gates=(GateInstance(builtin("HNG"), tuple("abcd"), tuple("pqrs")),),
        primary_outputs=tuple("pqrs"),
    )


def test_unknown_quantum_cost():
    report = analyze(hng_netlist())
    assert report.quantum_cost is None
    assert report.to_dict()["quantum_cost"] is None


def test_report_schema(ripple4):
    data = analyze(ripple4).to_dict()
    assert list(data) == [
        "gate_count",
        "gates",
        "quantum_cost",
        "garbage",
        "constants",
        "logical",
    ]
    assert data["logical"] == {"xor": 20, "and": 8, "not": 0}


def test_literature_rows():
    rows = {row.label: row for row in literature_table()}
    assert len(rows) == 6
    assert (
        rows["This study: Design 2"].gate_count_expr
        == "10 PFAG+1PG +2FG+1HNFG=14"
    )
    assert rows["Carry skip BCD adder plus fanout [17]"].garbage == 27
    assert rows["BCD adder [16]"].logical == LogicCost(42, 30, 33)
    assert rows["BCD adder [15]"].quantum_cost == UNKNOWN
    assert rows["This study: Design 1"].gate_count == 15


def test_compare_marks_garbage(bcd2):
    table = compare([("bcd2", analyze(bcd2))], include_literature=True)
    assert len(table) == 7
    computed = table.rows[0]
    assert computed.source == "computed"
    assert computed.garbage == 23
    assert computed.discrepancies == {"garbage": 24}
    assert {row.source for row in table.rows[1:]} == {"paper-claimed"}
    assert table.has_discrepancies()
    text = table.render_text()
    assert "23 *(claimed 24)" in text
    assert "Unknown" in text
    assert "10 PFAG+1PG +2FG+1HNFG=14" in text


def test_compare_literature_only():
    table = compare([], include_literature=True)
    assert [row.label for row in table] == [
        row.label for row in literature_table()
    ]
    assert not table.has_discrepancies()


def test_compare_single_row(ripple4):
    table = compare([("ripple4", analyze(ripple4))])
    assert len(table) == 1
    data = table.to_dict()
    assert data["rows"][0]["source"] == "computed"
    assert data["rows"][0]["discrepancies"] == {}
    assert data["rows"][0]["basic_gates"] == 28


def test_compare_custom_marker(bcd1):
    table = compare([("bcd1", analyze(bcd1))], marker="!")
    assert "23 !(claimed 24)" in table.render_text()


@settings(max_examples=200, deadline=None)
@given(valid_netlists())
def test_garbage_conservation(n):
    report = analyze(n)
    assert report.garbage == (
        len(n.primary_inputs) + len(n.constants) - len(n.primary_outputs)
    )


@settings(max_examples=100, deadline=None)
@given(valid_netlists(prefix="x_"), valid_netlists(prefix="y_"))
def test_metrics_are_additive(left, right):
    both = combine("both", left, right)
    assert analyze(both) == analyze(left) + analyze(right)


def test_unknown_cost_absorbs_sums(ripple4):
    ripple = analyze(ripple4)
    assert (ripple + ripple).quantum_cost == 64
    assert (ripple + analyze(hng_netlist())).quantum_cost is None


def test_compare_marks_wrong_gate_mix(bcd1):
    report = replace(analyze(bcd1), gates={"FG": 3, "PFAG": 10, "PG": 2})
    assert discrepancies(report, "bcd1") == {
        "gates": {"FG": 4, "PFAG": 10, "PG": 1},
        "garbage": 24,
    }
    problems = assert_published(report, "bcd1")
    assert len(problems) == 1
    assert problems[0].startswith("gate multiset")
    text = compare([("bcd1", report)]).render_text()
    assert "10PFAG+3FG+2PG=15 *(claimed 10PFAG+4FG+1PG=15)" in text


def reorder_gates(n, data):
    """Draws another define-before-use order of the same gates."""
    defined = set(n.source_wires())
    pending = list(n.gates)
    order = []
    while pending:
        ready = [g for g in pending if set(g.inputs) <= defined]
        inst = data.draw(st.sampled_from(ready))
        pending.remove(inst)
        defined.update(inst.outputs)
        order.append(inst)
    return replace(n, gates=tuple(order))


@settings(max_examples=200, deadline=None)
@given(valid_netlists(), st.data())
def test_report_ignores_gate_order(n, data):
    reordered = reorder_gates(n, data)
    assert validate(reordered).ok
    assert analyze(reordered) == analyze(n)
    assert analyze(reordered).logical == analyze(n).logical
