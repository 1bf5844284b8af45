"""Command line front end.

Subcommands: validate, simulate, reduce, cover, cover-transfer,
check-lemma, dot.  Exit codes: 0 success/covered/pass, 1 usage or
parse/validation error, 2 not covered within the depth bound, 3 resource
cap hit, 4 simulation or transfer check failed.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .coverability import (
    DEFAULT_MAX_STATES,
    CoverAnswer,
    SearchLimitReached,
    check_simulation,
    check_transfer,
    cover_nunet,
    cover_object_system,
)
from .dot import dot_nunet, dot_object_system
from .multisets import Multiset
from .nunet import NuNet, enabled_modes as nu_enabled_modes, fire as nu_fire, validate as nu_validate
from .objectsystem import ObjectSystem, fire as os_fire
from .petri import NotEnabledError
from .reduction import encode_config, max_run_length, reduce_nunet
from .textio import (
    InvalidNetError,
    ParseError,
    format_config,
    format_marking,
    name_table_tsv,
    parse_config,
    parse_marking,
    parse_nunet,
    parse_object_system,
    print_nunet,
    print_object_system,
    sniff_format,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_COVERED = 2
EXIT_LIMIT = 3
EXIT_CHECK_FAILED = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="nestnets", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a net file and report violations")
    p.add_argument("file")

    p = sub.add_parser("simulate", help="fire uniformly random enabled steps")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("reduce", help="compile a name net into an object system")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--name-table", help="write the generated-id provenance table (TSV)")

    p = sub.add_parser("cover", help="bounded coverability query")
    p.add_argument("file")
    p.add_argument("--target", required=True, help="inline marking/config or a file holding one")
    p.add_argument("--init", help="override the initial marking/config from the file")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.add_argument("--exact", action="store_true",
                   help="name nets: require exact tuple inclusion instead of embedding")

    p = sub.add_parser("cover-transfer", help="compare a cover query with its compiled form")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--init", help="override the initial configuration from the file")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)

    p = sub.add_parser("check-lemma", help="verify one-step simulation on configurations")
    p.add_argument("file")
    p.add_argument("--config", help="configuration to check (default: the file's init)")
    p.add_argument("--random", action="store_true", dest="randomized",
                   help="check randomly drawn configurations instead")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=int, help="run length bound (default: longest gadget)")

    p = sub.add_parser("dot", help="export a net file to Graphviz DOT")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _inline_or_file(arg: str) -> str:
    return _read(arg) if os.path.exists(arg) else arg


def _load(path: str):
    text = _read(path)
    kind = sniff_format(text)
    if kind == "nupn":
        net, init, target = parse_nunet(text)
        return kind, net, init, target
    system, init, target = parse_object_system(text)
    return kind, system, init, target


def _require_init(init: Multiset | None, override: str | None, kind: str, obj) -> Multiset:
    if override is not None:
        if kind == "nupn":
            return parse_config(_inline_or_file(override), obj)
        return parse_marking(_inline_or_file(override), obj)
    if init is None:
        raise ValueError("no initial state: the file has no init line and --init was not given")
    return init


def _nu_step_label(net: NuNet, configuration: Multiset, t: str, mode) -> str:
    occ = configuration.elements()
    binds = " ".join(f"{x}=[{' '.join(str(k) for k in occ[i])}]" for x, i in mode.assignment)
    return t + (" " + binds if binds else "")


def _print_cover(answer: CoverAnswer, step_labels, describe_state) -> int:
    if answer.covered:
        print(f"covered at depth {len(answer.witness)}")
        for i, label in enumerate(step_labels(answer.witness), start=1):
            print(f"  {i}. {label}")
        print(f"state: {describe_state(answer.state)}")
        return EXIT_OK
    closed = " (state space exhausted)" if answer.exhausted else ""
    print(f"not covered within depth {answer.depth}{closed}")
    return EXIT_NOT_COVERED


def _cmd_validate(args) -> int:
    text = _read(args.file)
    kind = sniff_format(text)
    if kind == "nupn":
        net, _, _ = parse_nunet(text, require_valid=False)
        issues = nu_validate(net)
        if issues:
            for issue in issues:
                print(f"violation: {issue}")
            return EXIT_USAGE
        print(f"ok: nupn {net.name} ({len(net.places)} places, {len(net.transitions)} transitions)")
        return EXIT_OK
    system, _, _ = parse_object_system(text)
    nets = len(system.object_nets) - 1  # the implicit empty net does not count
    print(f"ok: eos {system.system.name} ({len(system.system.places)} places, {len(system.events)} events, {nets} object nets)")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    kind, obj, init, _ = _load(args.file)
    state = _require_init(init, None, kind, obj)
    rng = random.Random(args.seed)
    if kind == "nupn":
        net: NuNet = obj
        print(f"0: {format_config(state)}")
        for i in range(1, args.steps + 1):
            actions = [(t, m) for t in net.transitions for m in nu_enabled_modes(net, state, t)]
            if not actions:
                print(f"deadlock after {i - 1} steps")
                return EXIT_OK
            t, mode = rng.choice(actions)
            label = _nu_step_label(net, state, t, mode)
            state = nu_fire(net, state, t, mode)
            print(f"{i}: {label} -> {format_config(state)}")
        return EXIT_OK
    system: ObjectSystem = obj
    print(f"0: {format_marking(state)}")
    for i in range(1, args.steps + 1):
        modes = system.all_modes(state)
        if not modes:
            print(f"deadlock after {i - 1} steps")
            return EXIT_OK
        mode = rng.choice(modes)
        state = os_fire(state, mode)
        print(f"{i}: {mode.event.name} -> {format_marking(state)}")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    net, init, target = parse_nunet(_read(args.file))
    reduction = reduce_nunet(net)
    enc_init = encode_config(net, init) if init is not None else None
    enc_target = encode_config(net, target) if target is not None else None
    _write(args.output, print_object_system(reduction.system, enc_init, enc_target))
    if args.name_table:
        _write(args.name_table, name_table_tsv(reduction))
    return EXIT_OK


def _cmd_cover(args) -> int:
    kind, obj, init, target = _load(args.file)
    if kind == "nupn":
        net: NuNet = obj
        initial = _require_init(init, args.init, kind, net)
        goal = parse_config(_inline_or_file(args.target), net)
        answer = cover_nunet(net, initial, goal, args.depth, args.max_states, exact=args.exact)

        def nu_labels(witness):
            state = initial
            for t, mode in witness:
                yield _nu_step_label(net, state, t, mode)
                state = nu_fire(net, state, t, mode)

        return _print_cover(answer, nu_labels, format_config)
    if args.exact:
        raise ValueError("--exact only applies to name nets")
    system: ObjectSystem = obj
    initial = _require_init(init, args.init, kind, system)
    goal = parse_marking(_inline_or_file(args.target), system)
    answer = cover_object_system(system, initial, goal, args.depth, args.max_states)

    def event_labels(witness):
        for mode in witness:
            yield f"{mode.event.name}  take {format_marking(mode.lam)}  put {format_marking(mode.rho)}"

    return _print_cover(answer, event_labels, format_marking)


def _cmd_cover_transfer(args) -> int:
    net, init, target = parse_nunet(_read(args.file))
    initial = _require_init(init, args.init, "nupn", net)
    goal = parse_config(_inline_or_file(args.target), net)
    report = check_transfer(net, initial, goal, args.depth, args.max_states)
    src, cmp = report.source, report.compiled

    def verdict(a: CoverAnswer, depth: int) -> str:
        if a.covered:
            return f"covered at depth {len(a.witness)}"
        return f"not covered within depth {depth}"

    print(f"source net:   {verdict(src, report.depth)}")
    print(f"compiled:     {verdict(cmp, report.budget)} (budget {report.budget} = depth {report.depth} x run bound {report.run_bound})")
    if not report.agree:
        print("disagreement: the compiled system does not match the source verdict")
        return EXIT_CHECK_FAILED
    print("agreement: yes")
    return EXIT_OK if src.covered else EXIT_NOT_COVERED


def _random_config(rng: random.Random, arity: int, max_tuples: int = 3, max_entry: int = 2) -> Multiset:
    return Multiset(
        tuple(rng.randint(0, max_entry) for _ in range(arity))
        for _ in range(rng.randint(0, max_tuples))
    )


def _cmd_check_lemma(args) -> int:
    net, init, _ = parse_nunet(_read(args.file))
    reduction = reduce_nunet(net)
    max_len = args.max_len if args.max_len is not None else max_run_length(net)
    if args.randomized:
        rng = random.Random(args.seed)
        configs = [_random_config(rng, len(net.places)) for _ in range(args.trials)]
    elif args.config is not None:
        configs = [parse_config(_inline_or_file(args.config), net)]
    elif init is not None:
        configs = [init]
    else:
        raise ValueError("no configuration: pass --config, --random, or a file with an init line")
    failures = 0
    for cfg in configs:
        report = check_simulation(net, cfg, max_len, reduction)
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} config {format_config(cfg) or '(empty)'}: "
              f"{len(report.s1)} successor(s), {report.run_count} run(s)")
        if not report.passed:
            failures += 1
            print("  source successors:   " + ("; ".join(format_config(c) for c in report.s1) or "(none)"))
            print("  compiled endpoints:  " + ("; ".join(format_config(c) for c in report.s2) or "(none)"))
    if failures:
        print(f"{failures}/{len(configs)} configurations failed")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_dot(args) -> int:
    kind, obj, init, _ = _load(args.file)
    if kind == "nupn":
        _write(args.output, dot_nunet(obj))
    else:
        _write(args.output, dot_object_system(obj, init))
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "simulate": _cmd_simulate,
    "reduce": _cmd_reduce,
    "cover": _cmd_cover,
    "cover-transfer": _cmd_cover_transfer,
    "check-lemma": _cmd_check_lemma,
    "dot": _cmd_dot,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, InvalidNetError, NotEnabledError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchLimitReached as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
