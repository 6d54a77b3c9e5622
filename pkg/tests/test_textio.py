from conftest import FG_DOC, valid_netlists
from hypothesis import given, settings
from reversible_bcd.netlist import NetlistError, validate
from reversible_bcd.textio import Diagnostic, NetlistParseError, parse_netlist
from reversible_bcd.textio import read_netlist, report_json, serialize_netlist
import pytest


def doc(*gate_lines, inputs="a b", outputs="p q", consts=()):
    lines = ["circuit c", f"inputs {inputs}"]
    lines.extend(consts)
    lines.extend(gate_lines)
    lines.extend([f"outputs {outputs}", "end"])
    return "\n".join(lines) + "\n"


def diagnostics(text):
    with pytest.raises(NetlistParseError) as excinfo:
        parse_netlist(text)
    return excinfo.value.diagnostics


def test_minimal_document():
    n = parse_netlist(FG_DOC)
    assert n.name == "c"
    assert n.primary_inputs == ("a", "b")
    assert len(n.gates) == 1
    assert n.gates[0].lineno == 3
    assert n.primary_outputs == ("p", "q")


def test_comments_and_blank_lines():
    text = """\
# full adder
circuit fa   # one gate

inputs a b cin
const k0 0
gate PFAG a b cin k0 -> g0 g1 s cout  # sum and carry
outputs s cout
end
"""
    n = parse_netlist(text)
    assert n.constants == (("k0", 0),)
    assert serialize_netlist(n) == (
        "circuit fa\n"
        "inputs a b cin\n"
        "const k0 0\n"
        "gate PFAG a b cin k0 -> g0 g1 s cout\n"
        "outputs s cout\n"
        "end\n"
    )


def test_fan_out_diagnostic():
    found = diagnostics(doc("gate FG a a -> p q"))
    assert found == [Diagnostic(3, 3, "fan-out", "fan-out at a")]


def test_use_before_definition_diagnostic():
    found = diagnostics(
        doc("gate FG x b -> p q", "gate FG a q -> x y", outputs="p y")
    )
    assert found == [
        Diagnostic(
            3, 2, "use-before-definition", "use before definition of x"
        )
    ]


def test_arity_diagnostic():
    (found,) = diagnostics(doc("gate PG a b -> p q"))
    assert (found.lineno, found.token, found.rule) == (3, 1, "arity")


def test_unknown_gate_diagnostic():
    (found,) = diagnostics(doc("gate NG a b -> p q"))
    assert (found.lineno, found.token, found.rule) == (3, 1, "unknown-gate")


def test_redefinition_diagnostics():
    (found,) = diagnostics(doc("gate FG a b -> a q", outputs="q"))
    assert (found.lineno, found.token, found.rule) == (3, 5, "redefinition")

    consts = ["const k0 0", "const k0 1"]
    found = diagnostics(doc("gate FG a k0 -> p q", consts=consts))
    assert (found[0].lineno, found[0].token, found[0].rule) == (
        4,
        1,
        "redefinition",
    )


def test_constant_bit_diagnostic():
    (found,) = diagnostics(doc("gate FG a b -> p q", consts=["const k0 2"]))
    assert (found.lineno, found.token, found.rule) == (3, 2, "constant-bit")


def test_undefined_output_diagnostic():
    found = diagnostics(doc("gate FG a b -> p q", outputs="p zz"))
    assert (found[0].lineno, found[0].token, found[0].rule) == (
        4,
        2,
        "undefined-output",
    )


@pytest.mark.parametrize(
    "text,rule",
    [
        ("", "syntax"),
        ("circuit c\ninputs a\noutputs a\n", "syntax"),
        ("circuit c\nwire a\noutputs a\nend\n", "syntax"),
        ("inputs a\noutputs a\nend\n", "syntax"),
        ("circuit c\ninputs a\noutputs a\nend\noutputs a\n", "after-end"),
        ("circuit c\ninputs a\ninputs b\noutputs a b\nend\n", "syntax"),
        ("circuit c\ninputs a b\ngate FG a b p q\nend\n", "syntax"),
    ],
)
def test_syntax_errors(text, rule):
    assert rule in [d.rule for d in diagnostics(text)]


def test_every_diagnostic_has_a_line():
    text = doc("gate FG a a -> p q", "gate NG p -> r")
    for diagnostic in diagnostics(text):
        assert diagnostic.lineno >= 1
        assert str(diagnostic).startswith(f"line {diagnostic.lineno}")


def test_unchecked_parse_leaves_validation_to_caller():
    n = parse_netlist(doc("gate FG a a -> p q"), check_structure=False)
    assert validate(n).rules() == ["fan-out"]
    with pytest.raises(NetlistError):
        serialize_netlist(n)


@pytest.mark.parametrize("design", ["ripple4", "bcd1", "bcd2", "chain2"])
def test_builds_round_trip(design, request):
    n = request.getfixturevalue(design)
    text = serialize_netlist(n)
    assert parse_netlist(text) == n
    assert serialize_netlist(parse_netlist(text)) == text


def test_serialized_gate_lines(ripple4, bcd2):
    ripple_lines = serialize_netlist(ripple4).splitlines()
    assert sum(line.startswith("gate PFAG") for line in ripple_lines) == 4
    bcd_lines = serialize_netlist(bcd2).splitlines()
    assert sum(line.startswith("gate HNFG") for line in bcd_lines) == 1


def test_read_netlist(netlist_file):
    assert read_netlist(netlist_file(FG_DOC)) == parse_netlist(FG_DOC)


def test_report_json():
    assert report_json({"b": 1, "a": [1]}) == (
        '{\n  "b": 1,\n  "a": [\n    1\n  ]\n}\n'
    )


@settings(max_examples=500, deadline=None)
@given(valid_netlists())
def test_random_netlists_round_trip(n):
    text = serialize_netlist(n)
    parsed = parse_netlist(text)
    assert parsed == n
    assert serialize_netlist(parsed) == text
