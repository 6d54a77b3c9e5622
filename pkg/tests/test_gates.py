from hypothesis import given
from hypothesis import strategies as st
from reversible_bcd.constants import BUILTIN_GATES
from reversible_bcd.gates import ArityError, GateDefinitionError, GateLibrary
from reversible_bcd.gates import LogicCost, TableShapeError
from reversible_bcd.gates import UnknownGateError, builtin, check_bijective
from reversible_bcd.gates import define_custom_gate, eval_gate
from reversible_bcd.gates import inverse_eval_gate
import itertools
import pytest


def all_patterns(arity):
    return [list(p) for p in itertools.product((0, 1), repeat=arity)]


@pytest.mark.parametrize("name", BUILTIN_GATES)
def test_builtin_is_bijective(name):
    g = builtin(name)
    outputs = {tuple(eval_gate(g, bits)) for bits in all_patterns(g.arity)}
    assert len(outputs) == 2**g.arity
    assert check_bijective(g.rows())


@pytest.mark.parametrize("name", BUILTIN_GATES)
def test_builtin_inverse_round_trip(name):
    g = builtin(name)
    for bits in all_patterns(g.arity):
        assert inverse_eval_gate(g, eval_gate(g, bits)) == bits
        assert eval_gate(g, inverse_eval_gate(g, bits)) == bits


@pytest.mark.parametrize(
    "name,qcost",
    [
        ("FG", 1),
        ("PG", 4),
        ("TG", 5),
        ("FRG", 5),
        ("PFAG", 8),
        ("HNFG", 2),
        ("HNG", None),
    ],
)
def test_quantum_costs(name, qcost):
    assert builtin(name).quantum_cost == qcost


def test_logic_costs():
    assert builtin("FG").logic_cost == LogicCost(1, 0, 0)
    assert builtin("PG").logic_cost == LogicCost(2, 1, 0)
    assert builtin("PFAG").logic_cost == LogicCost(5, 2, 0)
    assert builtin("HNFG").logic_cost == LogicCost(2, 0, 0)
    total = 10 * builtin("PFAG").logic_cost + 4 * builtin("FG").logic_cost
    assert (total + builtin("PG").logic_cost).as_tuple() == (56, 21, 0)


def test_eval_examples():
    assert eval_gate(builtin("FG"), [0, 0]) == [0, 0]
    assert eval_gate(builtin("PFAG"), [1, 1, 1, 0]) == [1, 0, 1, 1]
    assert eval_gate(builtin("PG"), [1, 1, 0]) == [1, 0, 1]


def test_inverse_examples():
    assert inverse_eval_gate(builtin("FG"), [1, 0]) == [1, 1]
    assert inverse_eval_gate(builtin("PFAG"), [1, 0, 1, 1]) == [1, 1, 1, 0]
    assert inverse_eval_gate(builtin("TG"), [0, 0, 0]) == [0, 0, 0]


def test_pfag_full_adder_contract():
    pfag = builtin("PFAG")
    for a, b, c in itertools.product((0, 1), repeat=3):
        p, q, total, carry = eval_gate(pfag, [a, b, c, 0])
        assert p == a
        assert q == a ^ b
        assert total == (a + b + c) % 2
        assert carry == (a + b + c) // 2


def test_hnfg_is_two_feynman_gates():
    fg, hnfg = builtin("FG"), builtin("HNFG")
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        assert eval_gate(hnfg, [a, b, c, d]) == (
            eval_gate(fg, [a, b]) + eval_gate(fg, [c, d])
        )


def test_unknown_builtin():
    with pytest.raises(UnknownGateError, match="NG"):
        builtin("NG")


@pytest.mark.parametrize("bits", [[0], [0, 1, 1], [0, 2]])
def test_arity_error(bits):
    with pytest.raises(ArityError):
        eval_gate(builtin("FG"), bits)


def test_check_bijective():
    assert check_bijective([[0, 0], [0, 1], [1, 0], [1, 1]])
    assert not check_bijective([[0, 0], [0, 0], [1, 0], [1, 1]])
    assert check_bijective(builtin("PFAG").rows())


@pytest.mark.parametrize(
    "table", [[[0]], [[0, 0], [0, 1], [1, 0]], [[0, 0], [0, 1, 0]]]
)
def test_check_bijective_shape(table):
    with pytest.raises(TableShapeError):
        check_bijective(table)


def test_define_swap_gate():
    library = GateLibrary()
    swap = define_custom_gate(
        "SWAP", [[0, 0], [1, 0], [0, 1], [1, 1]], 3, library=library
    )
    assert "SWAP" in library
    assert eval_gate(swap, [0, 1]) == [1, 0]
    assert swap.logic_cost == LogicCost()
    assert not swap.builtin


def test_define_rejects_duplicate_outputs():
    library = GateLibrary()
    with pytest.raises(GateDefinitionError, match="not reversible"):
        define_custom_gate(
            "BAD", [[0, 0], [0, 0], [1, 0], [1, 1]], library=library
        )
    assert "BAD" not in library


def test_define_rejects_existing_name():
    library = GateLibrary()
    with pytest.raises(GateDefinitionError, match="already registered"):
        define_custom_gate(
            "FG", [[0, 0], [0, 1], [1, 1], [1, 0]], library=library
        )


def test_define_rejects_negative_cost():
    with pytest.raises(GateDefinitionError):
        define_custom_gate(
            "NEG", [[0], [1]], quantum_cost=-1, library=GateLibrary()
        )


def test_library_without_builtins():
    library = GateLibrary(include_builtins=False)
    assert len(library) == 0
    with pytest.raises(UnknownGateError):
        library.get("FG")


@given(st.permutations(range(8)))
def test_any_permutation_defines_a_gate(perm):
    table = [[(y >> s) & 1 for s in (2, 1, 0)] for y in perm]
    gate = define_custom_gate("PERM", table, library=GateLibrary())
    assert gate.arity == 3
    for x in range(8):
        bits = [(x >> s) & 1 for s in (2, 1, 0)]
        assert inverse_eval_gate(gate, eval_gate(gate, bits)) == bits


def test_logic_cost_str():
    assert str(LogicCost(56, 21, 0)) == "56α+21β"
    assert str(LogicCost()) == "0"
    with pytest.raises(ValueError):
        LogicCost(-1, 0, 0)
