#!/usr/bin/env python3
"""
constwidth command-line interface

Subcommands:
    generate  validate a curve configuration and print its normalized form
    verify    check C(D) or C_n(D) and write a JSON report
    render    draw a curve (and overlays) as SVG
    export    sample a curve to CSV (theta, x, y, kappa)
    probe     search a coefficient family for curves with C(D) and C_n(side)

Exit codes: 0 success/pass, 1 verification failure or error, 2 usage error.
"""

import argparse
import copy
import csv
import json
import logging
import math
import sys

import config
from curve_config import ConfigError, curve_to_config, load_config
from curves import CurveError
from figure_renderer import RenderOptions, write_svg
from geometry import GeometryError, curvature, native_grid
from probe import ProbeFamily, counterexample_search, probe_options
from verify import VerificationError, VerificationOptions, check_cn, check_constant_diameter


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _write_json(data, output):
    text = json.dumps(data, indent=2, sort_keys=True) + '\n'
    if output:
        with open(output, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        print(f"✓ Wrote {output}")
    else:
        sys.stdout.write(text)


def cmd_generate(args, settings):
    curve_config = load_config(args.config)
    _write_json(curve_to_config(curve_config), args.output)
    return EXIT_OK


def cmd_verify(args, settings):
    curve_config = load_config(args.config)
    curve = curve_config.curve
    verification = config.get_verification_settings(settings)
    overrides = {}
    if args.samples:
        overrides['theta_samples'] = args.samples

    if args.check == 'cd':
        D = args.D if args.D is not None else curve_config.target_D
        opts = VerificationOptions.from_settings(verification, D, **overrides)
        report = check_constant_diameter(curve, D, opts, require_unique=not args.allow_plateau)
    else:
        if curve_config.kind == 'rotor':
            default_side = curve_config.D
        else:
            default_side = curve_config.target_D * math.sin(math.pi / args.n)
        D = args.D if args.D is not None else default_side
        opts = VerificationOptions.from_settings(verification, D, **overrides)
        report = check_cn(curve, args.n, D, opts)

    _write_json(report.to_dict(), args.output)
    status = 'PASS' if report.passed else 'FAIL'
    print(f"{status}: {report.prop} with D={D:.12g} over {len(report.records)} bases",
          file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_render(args, settings):
    curve_config = load_config(args.config)
    options = RenderOptions.from_settings(
        config.get_render_settings(settings),
        samples=args.samples,
        chords=args.chords,
        ngon=args.ngon,
        show_centers=True if args.show_centers else None,
    )
    write_svg(curve_config, args.output, options)
    print(f"✓ Wrote {args.output}")
    return EXIT_OK


def cmd_export(args, settings):
    curve_config = load_config(args.config)
    curve = curve_config.curve
    samples = args.samples if args.samples is not None else config.get_export_samples(settings)
    if samples < 1:
        print("Error: --samples must be positive")
        return EXIT_USAGE
    u = native_grid(curve, samples)
    points = curve.point(u)
    kappa = curvature(curve, u)
    with open(args.output, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['theta', 'x', 'y', 'kappa'])
        for row in zip(u, points[:, 0], points[:, 1], kappa):
            writer.writerow(['%.17g' % value for value in row])
    print(f"✓ Wrote {samples} samples to {args.output}")
    return EXIT_OK


def cmd_probe(args, settings):
    probe_settings = config.get_probe_settings(settings)
    delta = probe_settings['delta_fraction'] * args.D
    try:
        family = ProbeFamily.parse(args.family, args.D, args.n, delta=delta)
    except (ValueError, CurveError) as e:
        print(f"Error: {e}")
        return EXIT_USAGE
    opts = probe_options(probe_settings['bases'], probe_settings['offsets'],
                         probe_settings['nearest_grid'])
    result = counterexample_search(
        family, args.n, args.side,
        iterations=args.iters if args.iters is not None else probe_settings['iterations'],
        restarts=args.restarts if args.restarts is not None else probe_settings['restarts'],
        seed=args.seed if args.seed is not None else probe_settings['seed'],
        opts=opts,
    )
    _write_json(result.to_dict(), args.output)
    if args.trace:
        with open(args.trace, 'w', encoding='utf-8', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['iteration', 'restart', 'penalty', 'cd_term', 'ngon_term', 'best'])
            for evaluation, restart, *values in result.trace_rows():
                writer.writerow([evaluation, restart] + ['%.17g' % v for v in values])
        print(f"✓ Wrote trace to {args.trace}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='constwidth',
        description='Construct and certify curves of constant diameter and rotor curves')
    parser.add_argument('--settings', help='Settings JSON file (created with defaults if missing)')
    parser.add_argument('--verbose', action='store_true', help='Log progress at INFO level')
    subparsers = parser.add_subparsers(dest='command', help='Commands')

    generate_parser = subparsers.add_parser('generate', help='Validate a config and print the normalized curve')
    generate_parser.add_argument('--config', required=True, help='Curve configuration JSON')
    generate_parser.add_argument('--output', help='Write JSON here instead of stdout')

    verify_parser = subparsers.add_parser('verify', help='Check C(D) or C_n(D)')
    verify_parser.add_argument('--config', required=True, help='Curve configuration JSON')
    verify_parser.add_argument('--check', required=True, choices=['cd', 'cn'])
    verify_parser.add_argument('--n', type=int, help='Polygon order (required for --check cn)')
    verify_parser.add_argument('--D', type=float, help='Diameter (cd) or polygon side (cn)')
    verify_parser.add_argument('--samples', type=int, help='Number of base points')
    verify_parser.add_argument('--allow-plateau', action='store_true',
                               help='Do not require a unique farthest point (cd only)')
    verify_parser.add_argument('--output', help='Write the report here instead of stdout')

    render_parser = subparsers.add_parser('render', help='Draw the curve as SVG')
    render_parser.add_argument('--config', required=True, help='Curve configuration JSON')
    render_parser.add_argument('--output', required=True, help='SVG file to write')
    render_parser.add_argument('--samples', type=int, help='Polyline points (>= 64)')
    render_parser.add_argument('--chords', type=int, help='Number of diametral chords to overlay')
    render_parser.add_argument('--ngon', type=int, help='Overlay one inscribed n-gon at parameter 0')
    render_parser.add_argument('--show-centers', action='store_true', help='Mark arc centers')

    export_parser = subparsers.add_parser('export', help='Sample the curve to CSV')
    export_parser.add_argument('--config', required=True, help='Curve configuration JSON')
    export_parser.add_argument('--output', required=True, help='CSV file to write')
    export_parser.add_argument('--samples', type=int, help='Number of samples')

    probe_parser = subparsers.add_parser('probe', help='Search for curves with C(D) and C_n(side)')
    probe_parser.add_argument('--family', required=True, help='trig:3,5 or rotor:4,8')
    probe_parser.add_argument('--D', type=float, required=True, help='Diameter target')
    probe_parser.add_argument('--n', type=int, required=True, help='Polygon order')
    probe_parser.add_argument('--side', type=float, required=True, help='Polygon edge length')
    probe_parser.add_argument('--iters', type=int, help='Evaluations per restart')
    probe_parser.add_argument('--restarts', type=int, help='Number of restarts')
    probe_parser.add_argument('--seed', type=int, help='Random seed')
    probe_parser.add_argument('--output', help='Write the result JSON here instead of stdout')
    probe_parser.add_argument('--trace', help='Write the evaluation trace CSV here')

    return parser, verify_parser, probe_parser


COMMANDS = {
    'generate': cmd_generate,
    'verify': cmd_verify,
    'render': cmd_render,
    'export': cmd_export,
    'probe': cmd_probe,
}


def main(argv=None):
    parser, verify_parser, probe_parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == 'verify' and args.check == 'cn' and args.n is None:
            verify_parser.error('--n is required with --check cn')
        if args.command == 'verify' and args.n is not None and args.n < 2:
            verify_parser.error(f'--n must be at least 2, got {args.n}')
        if args.command == 'probe' and args.n < 2:
            probe_parser.error(f'--n must be at least 2, got {args.n}')
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    if args.settings:
        settings = config.load_config(args.settings)
    else:
        settings = copy.deepcopy(config.DEFAULT_CONFIG)
    config.use_runtime_settings(settings)

    try:
        return COMMANDS[args.command](args, settings)
    except (ConfigError, CurveError, GeometryError, VerificationError, ValueError) as e:
        print(f"Error: {e}")
        return EXIT_FAIL
    except OSError as e:
        print(f"Error: {e}")
        return EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
