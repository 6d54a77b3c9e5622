BUILTIN_GATES = """
FG
PG
TG
FRG
PFAG
HNG
HNFG
""".split()

WIRE_PATTERN = r"^[A-Za-z_][A-Za-z0-9_]*$"

MAX_CUSTOM_ARITY = 8

DEFAULT_CONFIG = {
    "simulation": {
        "max-inputs": 20,
        "workers": 1,
        "chunk-size": 4096,
    },
    "equivalence": {
        "max-counterexamples": 16,
    },
    "random": {
        "seed": 20111,
        "chain-samples": 1000,
    },
    "report": {
        "discrepancy-marker": "*",
        "color": False,
    },
}

# Netlist names produced by the builders, mapped to comparison labels.
DESIGN_LABELS = {
    "bcd1": "This study: Design 1",
    "bcd2": "This study: Design 2",
}

# Published metrics for the built circuits. Garbage for the BCD designs
# is the published figure, which disagrees with line conservation.
PUBLISHED_CLAIMS = {
    "ripple4": {
        "gate_count": 4,
        "gates": {"PFAG": 4},
        "quantum_cost": 32,
        "garbage": 8,
        "constants": 4,
        "logical": None,
    },
    "bcd1": {
        "gate_count": 15,
        "gates": {"PFAG": 10, "FG": 4, "PG": 1},
        "quantum_cost": 88,
        "garbage": 24,
        "constants": 19,
        "logical": (56, 21, 0),
    },
    "bcd2": {
        "gate_count": 14,
        "gates": {"PFAG": 10, "PG": 1, "FG": 2, "HNFG": 1},
        "quantum_cost": 88,
        "garbage": 24,
        "constants": 19,
        "logical": (56, 21, 0),
    },
}
