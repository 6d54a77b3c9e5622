from anytree import Node, RenderTree
from pprint import pformat
from reversible_bcd import util
from reversible_bcd.builders import BuildError, BuildOptions, CarryIn
from reversible_bcd.builders import DesignId, bcd_oracle, build_design
from reversible_bcd.builders import operand_pattern, ripple_oracle
from reversible_bcd.constants import PUBLISHED_CLAIMS
from reversible_bcd.errors import ReversibleBcdError
from reversible_bcd.gates import DEFAULT_LIBRARY
from reversible_bcd.metrics import analyze, assert_published, compare
from reversible_bcd.netlist import Netlist, garbage_wires, validate
from reversible_bcd.simulator import Assignment, InputLimitError
from reversible_bcd.simulator import check_equivalence, run, run_inverse
from reversible_bcd.simulator import truth_table
from reversible_bcd.textio import NetlistParseError, parse_netlist
from reversible_bcd.textio import report_json, serialize_netlist
from typing import List
import argparse
import functools
import inflect
import logging
import os.path
import random
import sys
import time

print = functools.partial(print, flush=True)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

colors_enabled = False


def colorize(text, *color_codes) -> str:
    color_seq = ";".join(map(str, color_codes))
    return f"\033[{color_seq}m{text}\033[0m" if colors_enabled else text


red = lambda text: colorize(text, 31)
green = lambda text: colorize(text, 32)

pass_color = {
    True: green,
    False: red,
}


def passed_str(passed) -> str:
    status = "PASS" if passed else "FAIL"
    return pass_color[passed](status)


class UsageError(ReversibleBcdError):
    pass


def build_netlist_tree(n: Netlist) -> Node:
    root = Node(f"circuit {n.name}")
    for index, inst in enumerate(n.gates):
        gate_node = Node(f"{index}: {inst}", parent=root)
        for wire in inst.outputs:
            Node(wire, parent=gate_node)
    return root


def render_netlist_tree(n: Netlist) -> List[str]:
    root = build_netlist_tree(n)
    return [f"{pre}{node.name}\n" for pre, fill, node in RenderTree(root)]


def read_document(path, check_structure=True) -> Netlist:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    logging.debug(f"Parsing {path}")
    return parse_netlist(
        text, DEFAULT_LIBRARY, check_structure=check_structure
    )


def bits_arg(text, width, what) -> List[int]:
    try:
        bits = util.parse_bitstring(text)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if len(bits) != width:
        raise UsageError(
            f"{what} needs {width} bits, got {len(bits)} ('{text}')"
        )
    return bits


def cmd_validate(args, config) -> int:
    n = read_document(args.file, check_structure=False)
    tree = "".join(render_netlist_tree(n))
    logging.debug(f"Netlist tree\n{tree}")
    violations = validate(n)
    for warning in violations.warnings:
        print(f"{args.file}: {warning}")
    p = inflect.engine()
    if violations:
        p.num(len(violations))
        print(f"There {p.plural_verb('is')} {p.no('violation')}.")
        for violation in violations:
            print(f"{args.file}: {violation}")
        return EXIT_FAIL
    print(f"{n.name}: [{passed_str(True)}] {n}")
    return EXIT_OK


def cmd_sim(args, config) -> int:
    n = read_document(args.file)
    garbage = list(garbage_wires(n))
    if args.exhaustive:
        rows = truth_table(
            n,
            limit=args.max_inputs,
            workers=args.workers,
            chunk_size=config["simulation"]["chunk-size"],
            progress=args.progress_bar,
        )
        if args.json:
            data = {
                "inputs": list(n.primary_inputs),
                "outputs": list(n.primary_outputs),
                "rows": [],
            }
            if args.show_garbage:
                data["garbage"] = garbage
            for row in rows:
                entry = {
                    "in": util.format_bits(row.inputs),
                    "out": util.format_bits(row.outputs),
                }
                if args.show_garbage:
                    entry["garbage"] = util.format_bits(row.garbage)
                data["rows"].append(entry)
            print(report_json(data), end="")
            return EXIT_OK
        header = (
            f"# {' '.join(n.primary_inputs)} ->"
            f" {' '.join(n.primary_outputs)}"
        )
        if args.show_garbage:
            header += f" [{' '.join(garbage)}]"
        print(header)
        for row in rows:
            line = (
                f"{util.format_bits(row.inputs)} ->"
                f" {util.format_bits(row.outputs)}"
            )
            if args.show_garbage:
                line += f" [{util.format_bits(row.garbage)}]"
            print(line)
        return EXIT_OK

    bits = bits_arg(args.inputs, len(n.primary_inputs), "--in")
    result = run(n, Assignment.from_bits(n.primary_inputs, bits))
    if args.json:
        data = {
            "in": util.format_bits(bits),
            "out": util.format_bits(result.primary_out.bits()),
            "outputs": dict(result.primary_out),
        }
        if args.show_garbage:
            data["garbage"] = dict(result.garbage_out)
        print(report_json(data), end="")
        return EXIT_OK
    print(
        f"out: {util.format_bits(result.primary_out.bits())} "
        f" {result.primary_out}"
    )
    if args.show_garbage:
        print(
            f"garbage: {util.format_bits(result.garbage_out.bits())} "
            f" {result.garbage_out}"
        )
    return EXIT_OK


def cmd_inverse(args, config) -> int:
    n = read_document(args.file)
    terminals = n.terminal_wires()
    bits = bits_arg(args.outputs, len(terminals), "--out")
    sources = run_inverse(n, Assignment.from_bits(terminals, bits))
    print(f"in: {util.format_bits(sources.bits(n.primary_inputs))}")
    print(f"sources: {sources}")
    declared = n.constant_values()
    changed = [w for w, bit in declared.items() if sources[w] != bit]
    if changed:
        p = inflect.engine()
        p.num(len(changed))
        print(
            f"{p.no('constant line')} would need a value other than"
            f" declared: {', '.join(changed)}"
        )
    return EXIT_OK


def format_report(name, report) -> str:
    qcost = "unknown" if report.quantum_cost is None else report.quantum_cost
    gates = ", ".join(f"{k}={v}" for k, v in report.gates.items())
    return "\n".join(
        [
            f"circuit:      {name}",
            f"gate count:   {report.gate_count} ({gates})",
            f"quantum cost: {qcost}",
            f"garbage:      {report.garbage}",
            f"constants:    {report.constants}",
            f"logical:      {report.logical}",
        ]
    )


def cmd_metrics(args, config) -> int:
    n = read_document(args.file)
    report = analyze(n)
    if args.json:
        print(report_json(report.to_dict()), end="")
    else:
        print(format_report(n.name, report))
    return EXIT_OK


def table_problems(n, report) -> List[str]:
    if n.name not in PUBLISHED_CLAIMS:
        return []
    return assert_published(report, n.name)


def cmd_build(args, config) -> int:
    design_id = DesignId.parse(args.design, args.digits)
    opts = BuildOptions(carry_in=CarryIn(args.carry_in))
    n = build_design(design_id, opts)
    text = serialize_netlist(n)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        logging.info(f"Wrote {n} to {args.output}")
    else:
        print(text, end="")
    if args.assert_table:
        problems = table_problems(n, analyze(n))
        for problem in problems:
            print(f"{n.name}: {problem}", file=sys.stderr)
        if problems:
            return EXIT_FAIL
    return EXIT_OK


def adder_oracle(n, kind):
    width = len(n.primary_inputs)
    if kind[0] == "ripple4":
        if width != 9:
            raise UsageError(f"{n.name} has {width} inputs, ripple4 has 9")
        return ripple_oracle() + (1, True)
    digits = 1
    if kind[0] == "bcd-chain":
        if len(kind) != 2 or not kind[1].isdigit() or int(kind[1]) < 1:
            raise UsageError("--kind bcd-chain needs a digit count N >= 1")
        digits = int(kind[1])
    elif kind[0] != "bcd" or len(kind) != 1:
        raise UsageError(f"unknown adder kind {' '.join(kind)}")
    if width == 8 * digits + 1:
        carry_in = True
    elif width == 8 * digits:
        carry_in = False
    else:
        raise UsageError(
            f"{n.name} has {width} inputs, a {digits}-digit BCD adder has"
            f" {8 * digits} or {8 * digits + 1}"
        )
    return bcd_oracle(digits, carry_in) + (digits, carry_in)


def random_patterns(kind, digits, carry_in, count, seed) -> List[List[int]]:
    rng = random.Random(seed)
    patterns = []
    for _ in range(count):
        if kind == "ripple4":
            patterns.append([rng.randint(0, 1) for _ in range(9)])
            continue
        limit = 10**digits - 1
        cin = rng.randint(0, 1) if carry_in else 0
        patterns.append(
            operand_pattern(
                rng.randint(0, limit),
                rng.randint(0, limit),
                cin,
                digits,
                carry_in,
            )
        )
    return patterns


def take_trailing_file(args) -> None:
    """`--kind` takes one or more words, so a FILE written after it lands
    at the end of the kind list."""
    if args.file is not None:
        return
    if len(args.kind) < 2:
        raise UsageError("check-adder needs a FILE")
    args.file = args.kind.pop()


def cmd_check_adder(args, config) -> int:
    take_trailing_file(args)
    n = read_document(args.file)
    oracle, domain, digits, carry_in = adder_oracle(n, args.kind)
    patterns = None
    if args.samples:
        patterns = random_patterns(
            args.kind[0], digits, carry_in, args.samples, args.seed
        )
    result = check_equivalence(
        n,
        oracle,
        domain,
        limit=args.max_inputs,
        max_counterexamples=config["equivalence"]["max-counterexamples"],
        workers=args.workers,
        chunk_size=config["simulation"]["chunk-size"],
        progress=args.progress_bar,
        patterns=patterns,
    )
    p = inflect.engine()
    print(
        f"{n.name} vs {' '.join(args.kind)} oracle:"
        f" [{passed_str(result.ok)}] {result.checked} patterns,"
        f" {p.no('mismatch', result.mismatches)}"
    )
    for counterexample in result.counterexamples:
        print(f"  {counterexample}")
    if result.mismatches > len(result.counterexamples):
        print(f"  ... {result.mismatches - len(result.counterexamples)} more")

    problems = table_problems(n, analyze(n))
    for problem in problems:
        print(f"{n.name}: {problem}")
    return EXIT_OK if result.ok and not problems else EXIT_FAIL


def cmd_compare(args, config) -> int:
    reports = []
    for path in args.files:
        n = read_document(path)
        reports.append((n.name, analyze(n)))
    table = compare(
        reports,
        include_literature=args.with_literature,
        marker=config["report"]["discrepancy-marker"],
    )
    if args.json:
        print(report_json(table.to_dict()), end="")
    else:
        print(table.render_text(), end="")
    return EXIT_OK


def cmd_gates(args, config) -> int:
    rows = []
    for gate in DEFAULT_LIBRARY:
        rows.append(
            {
                "name": gate.name,
                "arity": gate.arity,
                "quantum_cost": gate.quantum_cost,
                "logical": gate.logic_cost.as_dict(),
                "outputs": list(gate.expressions),
            }
        )
    if args.json:
        print(report_json(rows), end="")
        return EXIT_OK
    for gate in DEFAULT_LIBRARY:
        qcost = "unknown" if gate.quantum_cost is None else gate.quantum_cost
        outputs = ", ".join(gate.expressions) or "(table)"
        print(
            f"{gate.name:<5} {gate.arity}x{gate.arity}  qc={qcost:<7}"
            f" logical={gate.logic_cost}  {outputs}"
        )
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "sim": cmd_sim,
    "inverse": cmd_inverse,
    "metrics": cmd_metrics,
    "build": cmd_build,
    "check-adder": cmd_check_adder,
    "compare": cmd_compare,
    "gates": cmd_gates,
}


def add_common_options(parser, suppress=False) -> None:
    """Options accepted before and after the command name. Copies on the
    subparsers default to SUPPRESS so they never reset a value given before
    the command."""
    default = lambda value: argparse.SUPPRESS if suppress else value
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=default(0),
        help=(
            "Verbose mode. Multiple -v options increase the verbosity."
            " The maximum is 3."
        ),
    )
    parser.add_argument(
        "-l",
        "--log-format",
        default=default(
            "%(asctime)s - reversible-bcd - %(levelname)s - %(message)s"
        ),
        help="format for logging messages",
    )
    parser.add_argument(
        "--config",
        default=default(None),
        help="configuration file (default: config.toml)",
    )
    parser.add_argument(
        "-c",
        "--color",
        action="store_true",
        default=default(False),
        help="Enable color output",
    )
    parser.add_argument(
        "--duration",
        action="store_true",
        default=default(False),
        help="Print runtime duration as non-logging message",
    )


def make_parser(config) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add_common_options(common, suppress=True)

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument(
        "--max-inputs",
        type=int,
        default=config["simulation"]["max-inputs"],
        help="largest input count swept exhaustively (default: %(default)s)",
    )
    sweep.add_argument(
        "--workers",
        type=int,
        default=config["simulation"]["workers"],
        help="threads for exhaustive sweeps (default: %(default)s)",
    )
    sweep.add_argument(
        "-p",
        "--progress-bar",
        action="store_true",
        help="Show progress bar for exhaustive sweeps",
    )

    parser = argparse.ArgumentParser(
        prog="reversible-bcd",
        description=(
            "Build, simulate and cost reversible PFAG adder circuits."
        ),
    )
    add_common_options(parser)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser(
        "validate", parents=[common], help="structural check of a netlist"
    )
    p.add_argument("file", metavar="FILE")

    p = sub.add_parser(
        "sim", parents=[common, sweep], help="forward simulation"
    )
    p.add_argument("file", metavar="FILE")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument(
        "--in",
        dest="inputs",
        metavar="BITSTRING",
        help="primary input bits in declaration order",
    )
    mode.add_argument(
        "--exhaustive", action="store_true", help="print the truth table"
    )
    p.add_argument(
        "--show-garbage", action="store_true", help="also print garbage lines"
    )
    p.add_argument("--json", action="store_true", help="JSON output")

    p = sub.add_parser(
        "inverse", parents=[common], help="inverse simulation"
    )
    p.add_argument("file", metavar="FILE")
    p.add_argument(
        "--out",
        dest="outputs",
        required=True,
        metavar="BITSTRING",
        help="primary output bits followed by garbage bits",
    )

    p = sub.add_parser("metrics", parents=[common], help="cost metrics")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--json", action="store_true", help="JSON output")

    p = sub.add_parser("build", parents=[common], help="emit a built design")
    p.add_argument(
        "design", choices=["ripple4", "bcd1", "bcd2", "bcd-chain"]
    )
    p.add_argument(
        "digits", nargs="?", type=int, help="digit count for bcd-chain"
    )
    p.add_argument(
        "--carry-in",
        choices=[c.value for c in CarryIn],
        default=CarryIn.PRIMARY.value,
        help="BCD carry-in line (default: %(default)s)",
    )
    p.add_argument("-o", "--output", metavar="FILE", help="output file")
    p.add_argument(
        "--assert-table",
        action="store_true",
        help="fail unless the build matches the published gate and cost"
        " figures",
    )

    p = sub.add_parser(
        "check-adder",
        parents=[common, sweep],
        help="oracle equivalence check",
    )
    p.add_argument("file", metavar="FILE", nargs="?")
    p.add_argument(
        "--kind",
        nargs="+",
        required=True,
        metavar="KIND",
        help="ripple4, bcd, or bcd-chain N",
    )
    p.add_argument(
        "--samples",
        type=int,
        nargs="?",
        default=0,
        const=config["random"]["chain-samples"],
        metavar="K",
        help=(
            "check K random in-domain patterns instead of all (K defaults"
            " to %(const)s)"
        ),
    )
    p.add_argument(
        "--seed",
        type=int,
        default=config["random"]["seed"],
        help="seed for --samples (default: %(default)s)",
    )

    p = sub.add_parser(
        "compare", parents=[common], help="comparison table of designs"
    )
    p.add_argument("files", metavar="FILE", nargs="*")
    p.add_argument(
        "--with-literature",
        action="store_true",
        help="append the published comparison rows",
    )
    p.add_argument("--json", action="store_true", help="JSON output")

    p = sub.add_parser("gates", parents=[common], help="list the gate library")
    p.add_argument("--json", action="store_true", help="JSON output")

    return parser


def default_config_file() -> str:
    package_dir = os.path.dirname(os.path.realpath(__file__))
    return os.path.join(os.path.dirname(package_dir), "config.toml")


def find_config_arg(argv) -> str:
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--config="):
            return arg.split("=", 1)[1]
    return default_config_file()


def setup_logging(args) -> None:
    logging.basicConfig(format=args.log_format, datefmt="%m/%d/%Y %I:%M:%S %p")

    util.addLoggingLevel("TRACE", logging.DEBUG - 5)

    if args.verbose == 1:
        logging.getLogger().setLevel(logging.INFO)
    elif args.verbose == 2:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.verbose == 3:
        logging.getLogger().setLevel(logging.TRACE)
    else:
        logging.getLogger().setLevel(logging.WARNING)


def main(argv=None) -> int:
    start_time = time.time()
    argv = sys.argv[1:] if argv is None else list(argv)

    config_file = find_config_arg(argv)
    config = util.read_config(config_file)
    parser = make_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if args.verbose > 3:
        print("You can only specify -v a maximum of 3 times.", file=sys.stderr)
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    global colors_enabled
    colors_enabled = args.color or config["report"]["color"]

    setup_logging(args)
    logging.debug(f"Running Python {sys.version}")
    logging.debug(f"config file: {config_file}")
    logging.debug("config: %s", pformat(config))

    try:
        status = COMMANDS[args.command](args, config)
    except NetlistParseError as e:
        p = inflect.engine()
        p.num(len(e.diagnostics))
        print(
            f"{getattr(args, 'file', 'input')}: {p.no('parse error')}:",
            file=sys.stderr,
        )
        for diagnostic in e.diagnostics:
            print(f"  {diagnostic}", file=sys.stderr)
        status = EXIT_USAGE
    except (UsageError, InputLimitError, BuildError) as e:
        print(f"error: {e}", file=sys.stderr)
        status = EXIT_USAGE
    except ReversibleBcdError as e:
        print(f"error: {e}", file=sys.stderr)
        status = EXIT_FAIL

    duration = util.format_duration(time.time() - start_time)
    message = f"{args.command} complete in {duration}"
    if args.duration:
        print(message)
    else:
        logging.info(message)
    return status
