#!/usr/bin/env python3

import argparse
import json
import pathlib
import sys

from normal_restriction.corpusdata import find_group, load_config, load_corpus
from normal_restriction.errors import GroupError
from normal_restriction.group import FiniteGroup, group_from_generators, subgroup_from_perms
from normal_restriction.lattice import all_subgroups, export_lattice
from normal_restriction.nrtheory import is_nr_subgroup, is_special_triple
from normal_restriction.numtheory import lemma3_scan, zsigmondy_exceptions, zsigmondy_scan
from normal_restriction.perm import format_generators, parse_generators
from normal_restriction.suites import SUITE_IDS
from normal_restriction.verifier import (MACHINE, TEXT, REFUTED, Verifier, VerifierOptions,
                                         format_report, set_logger, write_report)

root_dir = pathlib.Path(__file__).parent

DEFAULT = "default"
DEFAULT_CORPUS = root_dir.joinpath("data", "corpus.jsonl")
DEFAULT_CONFIG = root_dir.joinpath("data", "config.json")


def parse_cli_args():
    parser = argparse.ArgumentParser(
        description="Verify normal-restriction results over a corpus of finite groups")

    parser.add_argument("-d", "--debug_level",
                        help=f"Debug level (default: 0), 1-verbose, 2-debug", type=int, default=0)
    parser.add_argument(
        "-c", "--config", help=f"Specify custom config file (json)", default=str(DEFAULT_CONFIG))

    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a suite over the corpus")
    verify.add_argument("suite", choices=SUITE_IDS)
    verify.add_argument("--corpus", default=DEFAULT,
                        help="Corpus file (JSON Lines) or 'default'")
    verify.add_argument("--max-order", type=int, default=None,
                        help="Skip groups above this order")
    verify.add_argument("--opt-in-large", action="store_true",
                        help="Raise the lattice cap to the opt-in value")
    verify.add_argument("--report", default=None, help="Write the report to this file")
    verify.add_argument("--format", choices=[TEXT, MACHINE], default=TEXT)
    verify.add_argument("--timing", action="store_true", help="Record elapsed time")
    verify.add_argument("--workers", type=int, default=None, help="Worker threads")

    lattice = commands.add_parser("lattice", help="Dump the subgroup lattice of a group")
    which = lattice.add_mutually_exclusive_group(required=True)
    which.add_argument("--group", help="Corpus group name")
    which.add_argument("--gens", help="Comma-separated generators in cycle notation")
    lattice.add_argument("--degree", type=int, default=None,
                         help="Degree for generator input (default: largest point)")
    lattice.add_argument("--corpus", default=DEFAULT, help="Corpus used for name lookup")
    lattice.add_argument("--emit", default=None, help="Write the lattice records to this file")

    check_nr = commands.add_parser("check-nr", help="Is a subgroup NR in a group")
    _group_args(check_nr, "--group")
    check_nr.add_argument("--subgroup", required=True, help="Subgroup generators")

    check_triple = commands.add_parser("check-triple", help="Is (G, H, K) a special triple")
    _group_args(check_triple, "--G")
    check_triple.add_argument("--H", required=True, help="Generators of H")
    check_triple.add_argument("--K", required=True, help="Generators of K")

    numscan = commands.add_parser("numscan", help="Number-theoretic scans")
    numscan.add_argument("scan", choices=["lemma3", "zsigmondy"])
    numscan.add_argument("--t-max", type=int, default=None)
    numscan.add_argument("--q-max", type=int, default=None)
    numscan.add_argument("--n-max", type=int, default=None)

    return parser.parse_args()


def _group_args(parser, flag: str) -> None:
    parser.add_argument(flag, required=True,
                        help="Corpus group name or comma-separated generators in cycle notation")
    parser.add_argument("--degree", type=int, default=None,
                        help="Degree for generator input (default: largest point)")
    parser.add_argument("--corpus", default=DEFAULT, help="Corpus used for name lookup")


def corpus_path(value: str) -> pathlib.Path:
    return DEFAULT_CORPUS if value == DEFAULT else pathlib.Path(value)


def resolve_group(text: str, args, config) -> FiniteGroup:
    """A corpus group by name, or the group generated by the given cycles"""

    if "(" in text:
        return generated_group(text, args, config)

    groups = load_corpus(corpus_path(args.corpus), sys.stderr, config.order_cap)
    group = find_group(groups or [], text)
    if group is None:
        raise GroupError(f"no group named '{text}' in corpus {corpus_path(args.corpus)}")
    return group


def generated_group(text: str, args, config) -> FiniteGroup:
    gens = parse_generators(text, args.degree)
    degree = gens[0].degree if gens else (args.degree or 1)
    return group_from_generators(gens, degree, order_cap=config.order_cap,
                                 name=format_generators(gens) or "1")


def run_verify(args, config) -> int:
    groups = load_corpus(corpus_path(args.corpus), sys.stderr, config.order_cap)
    if groups == None:
        return 2

    options = VerifierOptions(max_order=args.max_order, opt_in_large=args.opt_in_large,
                              timing=args.timing, workers=args.workers)
    report = Verifier(groups, config, options).run_suite(args.suite)

    if args.report:
        write_report(report, args.report, args.format)
    else:
        print(format_report(report, args.format), end="")

    return 1 if report.verdict == REFUTED else 0


def run_lattice(args, config) -> int:
    if args.gens is not None:
        G = generated_group(args.gens, args, config)
    else:
        G = resolve_group(args.group, args, config)
    cap = config.opt_in_lattice_cap
    records = export_lattice(all_subgroups(G, cap))
    text = json.dumps(records, indent=2) + "\n"

    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as f:
            f.write(text)
        print(f"{G.name}: {len(records)} subgroups written to {args.emit}")
    else:
        print(text, end="")
    return 0


def run_check_nr(args, config) -> int:
    G = resolve_group(args.group, args, config)
    H = subgroup_from_perms(G, parse_generators(args.subgroup, G.degree))
    nr, K = is_nr_subgroup(G, H)

    if nr:
        print(f"NR: subgroup of order {H.order} is NR in {G.name}")
    else:
        record = is_special_triple(G, H, K)
        print(f"not NR: witness K = {json.dumps(K.describe())}, "
              f"K^G meet H = {json.dumps(record.meet.describe())}")
    return 0


def run_check_triple(args, config) -> int:
    G = resolve_group(args.G, args, config)
    H = subgroup_from_perms(G, parse_generators(args.H, G.degree))
    K = subgroup_from_perms(G, parse_generators(args.K, G.degree))
    record = is_special_triple(G, H, K)

    verdict = "special" if record.special else "not special"
    print(f"{verdict}: {json.dumps(record.describe())}")
    return 0


def run_numscan(args, config) -> int:
    if args.scan == "lemma3":
        t_max = args.t_max or config.lemma3_t_max
        for part in ("a", "b"):
            print(f"lemma3({part}) t <= {t_max}: {sorted(lemma3_scan(part, t_max))}")
        return 0

    q_max = args.q_max or config.zsigmondy_q_max
    n_max = args.n_max or config.zsigmondy_n_max
    scan = zsigmondy_scan(q_max, n_max)
    for (q, n), primes in sorted(scan.items()):
        print(f"q={q} n={n}: {primes}")
    print(f"exceptions: {zsigmondy_exceptions(scan)}")
    return 0


commands = {
    "verify": run_verify,
    "lattice": run_lattice,
    "check-nr": run_check_nr,
    "check-triple": run_check_triple,
    "numscan": run_numscan,
}


def main():
    args = parse_cli_args()
    set_logger(args.debug_level)

    config = load_config(args.config, errors_sink=sys.stderr)
    if config == None:
        sys.exit(2)  # exit code passed to shell

    try:
        code = commands[args.command](args, config)
    except (GroupError, OSError) as e:
        print(f"{args.command}: {e}", file=sys.stderr)
        code = 2

    if code != 0:
        sys.exit(code)


if __name__ == "__main__":
    main()
