#!/usr/bin/env python3
"""
weylgraphs command-line front-end

Usage:
    python -m weylgraphs build 'f4build(product(cycle:4,cycle:4,cycle:4))' --format dot
    python -m weylgraphs check weyl:F4 --like-f4 --cotriangular
    python -m weylgraphs check 'twist(weyl:F4)' --like weyl:F4
    python -m weylgraphs iso weyl:E7 sp:3
    python -m weylgraphs aut weyl:F4
    python -m weylgraphs classify 'twist(weyl:F4)'
    python -m weylgraphs report --format kv --output data/reports/report.txt

Exit status: 0 when every requested check passed, 1 on an error, 2 when a
check failed (its witness is printed).
"""

import argparse
import logging
import os
import sys

from tabulate import tabulate

from . import __version__, config, metrics
from .errors import StructureError, WeylGraphError
from .expr import evaluate_graph, evaluate_text
from .graph import BichromaticGraph
from .graphio import DOT, EDGELIST, format_graph
from .iso import are_isomorphic, automorphism_group
from .recognition import (classify_f4_candidate, is_cotriangular, is_locally_like,
                          is_locally_like_b4, is_locally_like_f4, local_profile)
from .report import KV, TEXT, VerificationSuite, format_value

logger = logging.getLogger('weylgraphs.cli')

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILED = 2


def _write_output(text: str, path=None):
    if not path:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        f.write(text)
    logger.info(f"Output written to {path}")


def _describe_witness(G: BichromaticGraph, witness) -> str:
    if isinstance(witness, int):
        return f"vertex {witness} {G.label(witness)}"
    if isinstance(witness, tuple) and all(isinstance(v, int) for v in witness):
        return "vertices " + ', '.join(f"{v} {G.label(v)}" for v in witness)
    return str(witness)


def cmd_build(args) -> int:
    value = evaluate_text(args.expr)
    _write_output(format_graph(value, args.format), args.output)
    return EXIT_OK


def _locally_like_expr(G: BichromaticGraph, text: str):
    """Compare the local graphs of G with those of the graph `text` denotes"""
    reference = local_profile(evaluate_graph(text))
    if not reference.homogeneous:
        raise StructureError(f"{text} is not locally homogeneous, so it fixes no local graphs",
                             witness=reference.witness)
    return is_locally_like(G, reference.short_local, reference.long_local)


def cmd_check(args) -> int:
    G = evaluate_graph(args.expr)
    requested = [name for name in ('local', 'like_f4', 'like_b4', 'like', 'cotriangular')
                 if getattr(args, name)]
    if not requested:
        requested = ['local']
    status = EXIT_OK
    for name in requested:
        if name == 'local':
            profile = local_profile(G)
            passed, witness = profile.homogeneous, profile.witness
        elif name == 'like_f4':
            result = is_locally_like_f4(G)
            passed, witness = result.passed, result.witness
        elif name == 'like_b4':
            result = is_locally_like_b4(G)
            passed, witness = result.passed, result.witness
        elif name == 'like':
            result = _locally_like_expr(G, args.like)
            passed, witness = result.passed, result.witness
        else:
            result = is_cotriangular(G)
            passed, witness = result.passed, result.witness
        check_name = f"like {args.like}" if name == 'like' else name.replace('_', '-')
        if passed:
            print(f"{check_name}: pass")
        else:
            print(f"{check_name}: FAIL ({_describe_witness(G, witness)})")
            status = EXIT_CHECK_FAILED
    return status


def cmd_iso(args) -> int:
    G = evaluate_graph(args.left)
    H = evaluate_graph(args.right)
    mapping = are_isomorphic(G, H)
    if mapping is None:
        print("not isomorphic")
        return EXIT_CHECK_FAILED
    print("isomorphic")
    if args.show_mapping:
        rows = [[v, G.label(v), mapping[v], H.label(mapping[v])] for v in range(G.n)]
        print(tabulate(rows, headers=['vertex', 'label', 'image', 'image label']))
    return EXIT_OK


def cmd_aut(args) -> int:
    G = evaluate_graph(args.expr)
    summary = automorphism_group(G)
    print(f"order: {summary.order}")
    rows = []
    for i, orbit in enumerate(summary.orbits):
        color = G.colors[orbit[0]].name.lower()
        members = ' '.join(G.label(v) for v in orbit)
        rows.append([i, len(orbit), color, members])
    print(tabulate(rows, headers=['orbit', 'size', 'color', 'members']))
    if args.generators:
        print()
        for cycles in summary.generator_cycles():
            print(cycles)
    return EXIT_OK


def cmd_classify(args) -> int:
    G = evaluate_graph(args.expr)
    result = classify_f4_candidate(G)
    values = result.as_dict()
    if args.format == KV:
        _write_output(''.join(f"{k} = {format_value(v)}\n" for k, v in values.items()))
    else:
        print(result.verdict)
        print(tabulate([[k, v] for k, v in values.items() if k != 'verdict'],
                       headers=['property', 'value']))
    return EXIT_OK


def cmd_report(args) -> int:
    suite = VerificationSuite(seed=config.get('seed'),
                              relabel_rounds=int(config.get('relabel_rounds')),
                              include_slow=not args.quick)
    passed = suite.run()
    _write_output(suite.render(args.format), args.output or config.get('report_file'))
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='weylgraphs',
                                     description='Weyl graphs and local recognition of commuting graphs')
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--config', help='Configuration file path (YAML)')
    parser.add_argument('--seed', type=int, help='Seed for randomized self-tests')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='Logging level')
    parser.add_argument('--metrics-file', help='Write Prometheus metrics to this textfile')
    parser.add_argument('--workers', type=int, help='Threads for per-vertex local checks')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('build', help='Construct a graph and export it')
    p.add_argument('expr', help='Graph expression')
    p.add_argument('--format', choices=[EDGELIST, DOT], default=EDGELIST, help='Output format')
    p.add_argument('--output', help='Output file (default: stdout)')
    p.set_defaults(func=cmd_build)

    p = sub.add_parser('check', help='Run local recognition checks')
    p.add_argument('expr', help='Graph expression')
    p.add_argument('--local', action='store_true', help='Local homogeneity per color (default)')
    p.add_argument('--like-f4', dest='like_f4', action='store_true', help='Locally like W(F4)')
    p.add_argument('--like-b4', dest='like_b4', action='store_true', help='Locally like W(B4)')
    p.add_argument('--like', metavar='EXPR',
                   help='Locally like the graph EXPR (which must be locally homogeneous)')
    p.add_argument('--cotriangular', action='store_true', help='Cotriangularity')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('iso', help='Test two graphs for color-preserving isomorphism')
    p.add_argument('left', help='Graph expression')
    p.add_argument('right', help='Graph expression')
    p.add_argument('--show-mapping', action='store_true', help='Print the isomorphism')
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser('aut', help='Automorphism group summary')
    p.add_argument('expr', help='Graph expression')
    p.add_argument('--generators', action='store_true', help='Print generators in cycle notation')
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser('classify', help='Classify a graph locally like W(F4)')
    p.add_argument('expr', help='Graph expression')
    p.add_argument('--format', choices=[TEXT, KV], default=TEXT, help='Output format')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser('report', help='Run the verification suite')
    p.add_argument('--format', choices=[TEXT, KV], default=KV, help='Report format')
    p.add_argument('--output', help='Report file (default: report_file from config, else stdout)')
    p.add_argument('--quick', action='store_true', help='Skip the slow checks (E8, 384 vertices)')
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = config.load_config(args.config)
    overrides = {'seed': args.seed, 'log_level': args.log_level,
                 'metrics_file': args.metrics_file, 'workers': args.workers}
    settings.update({k: v for k, v in overrides.items() if v is not None})
    config.activate(settings)
    config.setup_logging(settings)

    try:
        status = args.func(args)
    except StructureError as e:
        logger.error(f"{args.command} failed: {e}")
        if e.witness is not None:
            print(f"witness: {e.witness}", file=sys.stderr)
        status = EXIT_ERROR
    except WeylGraphError as e:
        logger.error(f"{args.command} failed: {e}")
        status = EXIT_ERROR

    if settings.get('metrics_file'):
        try:
            metrics.write_metrics(settings['metrics_file'])
        except OSError as e:
            logger.error(f"Cannot write metrics to {settings['metrics_file']}: {e}")
    return status


if __name__ == '__main__':
    sys.exit(main())
