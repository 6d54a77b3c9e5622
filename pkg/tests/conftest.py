from hypothesis import strategies as st
from reversible_bcd.builders import BuildOptions, CarryIn
from reversible_bcd.builders import build_bcd_adder, build_bcd_chain
from reversible_bcd.builders import build_ripple_adder
from reversible_bcd.gates import builtin
from reversible_bcd.netlist import GateInstance, Netlist
import logging
import pytest

PRIMARY = BuildOptions(carry_in=CarryIn.PRIMARY)

FG_DOC = """\
circuit c
inputs a b
gate FG a b -> p q
outputs p q
end
"""

GATE_NAMES = ["FG", "PG", "TG", "FRG", "PFAG", "HNG", "HNFG"]


@pytest.fixture(autouse=True)
def restore_log_level():
    level = logging.getLogger().level
    yield
    logging.getLogger().setLevel(level)


@pytest.fixture(scope="session")
def ripple4():
    return build_ripple_adder()


@pytest.fixture(scope="session")
def bcd1():
    return build_bcd_adder("bcd1", PRIMARY)


@pytest.fixture(scope="session")
def bcd2():
    return build_bcd_adder("bcd2", PRIMARY)


@pytest.fixture(scope="session")
def chain2():
    return build_bcd_chain(2)


@pytest.fixture
def fg_netlist():
    return Netlist(
        name="c",
        primary_inputs=("a", "b"),
        constants=(),
        gates=(GateInstance(builtin("FG"), ("a", "b"), ("p", "q")),),
        primary_outputs=("p", "q"),
    )


@pytest.fixture
def netlist_file(tmp_path):
    def write(text, name="circuit.net"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


@st.composite
def valid_netlists(draw, prefix="", max_gates=6):
    """Random define-before-use netlists over the built-in gates."""
    inputs = [f"{prefix}i{i}" for i in range(draw(st.integers(1, 4)))]
    constants = [
        (f"{prefix}k{i}", draw(st.integers(0, 1)))
        for i in range(draw(st.integers(0, 3)))
    ]
    available = inputs + [wire for wire, _ in constants]
    gates = []
    fresh = 0
    for _ in range(draw(st.integers(0, max_gates))):
        names = [
            name for name in GATE_NAMES if builtin(name).arity <= len(available)
        ]
        if not names:
            break
        gate = builtin(draw(st.sampled_from(names)))
        order = draw(st.permutations(range(len(available))))
        picked = sorted(order[: gate.arity])
        ins = tuple(available[i] for i in order[: gate.arity])
        available = [w for i, w in enumerate(available) if i not in picked]
        outs = tuple(f"{prefix}w{fresh + j}" for j in range(gate.arity))
        fresh += gate.arity
        available.extend(outs)
        gates.append(GateInstance(gate, ins, outs))
    order = draw(st.permutations(available))
    count = draw(st.integers(1, len(available)))
    return Netlist(
        name=f"{prefix}rand",
        primary_inputs=tuple(inputs),
        constants=tuple(constants),
        gates=tuple(gates),
        primary_outputs=tuple(order[:count]),
    )
