from .builders import BuildError, BuildOptions, CarryIn, DesignId
from .builders import build_bcd_adder, build_bcd_chain, build_design
from .builders import build_ripple_adder
from .errors import ReversibleBcdError, Violation, Violations
from .gates import DEFAULT_LIBRARY, GateDefinition, GateLibrary, LogicCost
from .gates import builtin, define_custom_gate, eval_gate, inverse_eval_gate
from .metrics import MetricsReport, analyze, compare, literature_table
from .netlist import GateInstance, Netlist, NetlistError, garbage_wires
from .netlist import validate
from .simulator import Assignment, check_equivalence, run, run_inverse
from .simulator import truth_table
from .textio import NetlistParseError, parse_netlist, serialize_netlist
from . import util
