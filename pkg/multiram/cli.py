# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#

"""
This module implements the interface with the command line and the logger.
"""

import json
import logging
import os
import re
import sys
from argparse import SUPPRESS, ArgumentTypeError

from argh import ArghParser, arg, expects_obj

import multiram
import multiram.config
from multiram import constructions, detectors, output, procedures, solver
from multiram.colouring import (BLUE, COLOURS, RED, PartitionSpec,
                                dump_colouring, load_colouring)
from multiram.exceptions import (ColouringFormatError, GraphException,
                                 MultiramException, PreconditionError,
                                 ProcedureError)
from multiram.families import FAMILY_KINDS, GraphFamily, family_by_kind
from multiram.graph import (BitGraph, load_host, parse_graph, read_graph6_file,
                            write_graph6_lines)
from multiram.utils import (check_non_negative, check_positive, check_range,
                            check_vertex_list, configure_logging, dump_json,
                            force_str, get_log_levels, parse_log_level)

_logger = logging.getLogger(__name__)

_TARGET_RE = re.compile(r'^(\d+)x(.+)$')

CONSTRUCTION_KINDS = ('bes-lower', 'asym-lower', 'asym-lower-components',
                      'estimate-lower', 'critical-template')
DETECT_MODES = ('copy', 'pack', 'family', 'tie', 'join')
VERIFY_KINDS = ('embedding', 'packing', 'tie', 'join', 'tiling', 'partition')
FORMULA_KINDS = ('clique', 'asym', 'estimate')


def check_graph(value):
    """
    Check for a graph given as graph6 or as a file holding one graph6 line

    :param value: str containing the value to check
    """
    if value is None:
        return None
    try:
        return parse_graph(value)
    except GraphException as e:
        raise ArgumentTypeError(force_str(e))


def check_host(value):
    """
    Check for a host graph: graph6, a graph6 file or an edge list file

    :param value: str containing the value to check
    """
    if value is None:
        return None
    try:
        return load_host(value)
    except (GraphException, IOError) as e:
        raise ArgumentTypeError(force_str(e))


def check_target(value):
    """
    Check for a solver target written as ``<n>x<graph6>`` or
    ``<n>x<family-file>``; the ``<n>x`` prefix defaults to one copy

    :param value: str containing the value to check
    :rtype: multiram.solver.Target
    """
    if value is None:
        return None
    match = _TARGET_RE.match(value)
    copies, spec = (int(match.group(1)), match.group(2)) if match else (1, value)
    try:
        if os.path.isfile(spec):
            family = GraphFamily(read_graph6_file(spec))
        else:
            family = GraphFamily([BitGraph.from_graph6(spec)])
        return solver.Target(family, copies)
    except (GraphException, ValueError) as e:
        raise ArgumentTypeError("'%s' is not a valid target: %s" % (value, e))


def check_colour(value):
    """
    Check the colour option

    :param value: str containing the value to check
    """
    if value is None:
        return None
    if value in COLOURS:
        return value
    raise ArgumentTypeError("'%s' is not a valid colour (use red or blue)" %
                            value)


def _load_json_argument(value, what):
    """
    Decode a JSON argument given inline or as the path of a file
    """
    try:
        if os.path.isfile(value):
            with open(value, 'r') as json_file:
                return json.load(json_file)
        return json.loads(value)
    except ValueError as e:
        output.error("Invalid %s JSON: %s", what, e)
        output.close_and_exit()


def _load_colouring(file_name):
    try:
        return load_colouring(file_name)
    except (ColouringFormatError, IOError) as e:
        output.error("Cannot read colouring '%s': %s", file_name, force_str(e))
        output.close_and_exit()


def _require(args, *names):
    """
    Exit with an error naming the first missing option
    """
    for name in names:
        if getattr(args, name, None) is None:
            output.error("the --%s option is required by %s",
                         name.replace('_', '-'), args.kind)
            output.close_and_exit()


def _write_json_file(file_name, data):
    with open(file_name, 'w') as json_file:
        json_file.write(dump_json(data) + '\n')


def _solver_cap(red, blue):
    """
    The configured cap, raised to the symmetric cap when both targets agree
    """
    section = multiram.__config__.solver
    if red == blue:
        return max(section.cap, section.symmetric_cap)
    return section.cap


@arg('--graph', required=True, type=check_graph,
     help='the graph, as graph6 or a file holding one graph6 line')
@arg('--kind', required=True, choices=FAMILY_KINDS,
     help='the derived family to compute')
def families(graph=None, kind=None):
    """
    Print a derived family of a graph, one graph6 line per member
    """
    output.init('families', graph, kind)
    output.result('families', graph, kind, family_by_kind(graph, kind))
    output.close_and_exit()


@arg('kind', choices=CONSTRUCTION_KINDS, help='the construction to build')
@arg('--g', type=check_graph, metavar='GRAPH', help='the red pattern G')
@arg('--h', type=check_graph, metavar='GRAPH', help='the pattern H')
@arg('--n', type=check_positive, help='number of copies of H')
@arg('--e-colouring', metavar='FILE',
     help='colouring of the E block (asym and estimate constructions)')
@arg('--auto', action='store_true',
     help='compute an extremal E block with the solver')
@arg('--r-size', type=check_non_negative, help='size of R (critical-template)')
@arg('--b-size', type=check_non_negative, help='size of B (critical-template)')
@arg('--join-colour', type=check_colour, default=RED,
     help='colour of the R-B edges (critical-template)')
@arg('--e-to-r', type=check_colour, default=BLUE,
     help='colour of the E-R edges (critical-template)')
@arg('--e-to-b', type=check_colour, default=RED,
     help='colour of the E-B edges (critical-template)')
@arg('--output', '-o', required=True, metavar='FILE',
     help='colouring file to write')
@arg('--partition', metavar='FILE',
     help='partition sidecar to write (default: FILE.partition.json)')
@arg('--colouring-format', choices=multiram.config.COLOURING_FORMAT_VALUES,
     default=SUPPRESS, help='format of the colouring file')
@arg('--no-check', action='store_true',
     help='skip running the detectors against the claims')
@expects_obj
def construct(args):
    """
    Build an extremal colouring and write it with its partition sidecar
    """
    config = multiram.__config__
    e_col = None
    if args.kind in ('asym-lower', 'asym-lower-components', 'estimate-lower'):
        if not args.auto:
            _require(args, 'e_colouring')
    if args.e_colouring is not None:
        e_col = _load_colouring(args.e_colouring)
    cap = config.solver.cap

    output.init('construct', args.kind)
    if args.kind == 'bes-lower':
        _require(args, 'h', 'n')
        report = constructions.bes_lower(args.h, args.n)
    elif args.kind in ('asym-lower', 'asym-lower-components'):
        _require(args, 'g', 'h', 'n')
        if args.auto:
            report = constructions.asym_lower_auto(args.g, args.h, args.n, cap)
        elif args.kind == 'asym-lower':
            report = constructions.asym_lower(args.g, args.h, args.n, e_col)
        else:
            report = constructions.asym_lower_components(args.g, args.h, args.n,
                                                         e_col)
    elif args.kind == 'estimate-lower':
        _require(args, 'h', 'n')
        if args.auto:
            report = constructions.estimate_lower_auto(args.h, args.n, cap)
        else:
            report = constructions.estimate_lower(args.h, args.n, e_col)
    else:
        _require(args, 'r_size', 'b_size')
        report = constructions.critical_template(
            args.r_size, args.b_size, args.join_colour, e_col,
            args.e_to_r, args.e_to_b)

    if config.check_constructions and not args.no_check:
        for claim, packing in report.check():
            output.error("the construction violates %r: %s", claim,
                         dump_json(packing.to_json()))
        if output.error_occurred:
            output.close_and_exit()

    fmt = getattr(args, 'colouring_format', config.colouring_format)
    partition_file = args.partition or args.output + '.partition.json'
    dump_colouring(report.colouring, args.output, fmt)
    _write_json_file(partition_file, report.partition.to_json())
    output.result('construct', report, args.output, partition_file)
    output.close_and_exit()


@arg('mode', choices=DETECT_MODES, help='what to look for')
@arg('--colouring', required=True, metavar='FILE', help='the colouring file')
@arg('--pattern', type=check_graph, metavar='GRAPH',
     help='the pattern H (copy, pack and tie)')
@arg('--family-file', metavar='FILE',
     help='graph6 lines forming the family (family mode)')
@arg('--colour', type=check_colour, help='colour of the copies')
@arg('--n', type=check_positive, help='number of disjoint copies (pack)')
@arg('--forbidden', type=check_vertex_list, default=0,
     help='comma separated vertices to avoid')
@arg('--r', type=check_vertex_list, help='red candidates (join)')
@arg('--b', type=check_vertex_list, help='blue candidates (join)')
@arg('--k', type=check_non_negative, help='size of the red clique (join)')
@arg('--l', type=check_non_negative, help='size of the blue clique (join)')
@arg('--output', '-o', metavar='FILE',
     help='also write the certificate to this file')
@expects_obj
def detect(args):
    """
    Look for a monochromatic object; print its certificate or NONE
    """
    args.kind = args.mode
    c = _load_colouring(args.colouring)
    if args.mode in ('copy', 'pack', 'family'):
        _require(args, 'colour')
    output.init('detect', args.mode)
    if args.mode == 'copy':
        _require(args, 'pattern')
        certificate = detectors.find_mono_copy(c, args.pattern, args.colour,
                                               args.forbidden)
    elif args.mode == 'pack':
        _require(args, 'pattern', 'n')
        certificate = detectors.find_disjoint_copies(c, args.pattern, args.colour,
                                                     args.n, args.forbidden)
    elif args.mode == 'family':
        _require(args, 'family_file')
        family = GraphFamily(read_graph6_file(args.family_file))
        if args.n is None:
            certificate = detectors.find_family_copy(c, family, args.colour,
                                                     args.forbidden)
        else:
            certificate = detectors.find_disjoint_family_copies(
                c, family, args.colour, args.n, args.forbidden)
    elif args.mode == 'tie':
        _require(args, 'pattern')
        certificate = detectors.find_h_tie(c, args.pattern, args.forbidden)
    else:
        _require(args, 'r', 'b', 'k', 'l')
        certificate = detectors.find_join(c, args.r, args.b, args.k, args.l)
    if certificate is not None and args.output:
        _write_json_file(args.output, certificate.to_json())
    output.result('detect', args.mode, certificate)
    output.close_and_exit()


@arg('--graph', type=check_host, metavar='HOST',
     help='host graph: graph6, graph6 file or edge list file')
@arg('--sample', type=check_positive, metavar='N',
     help='tile a sampled dense host on N vertices instead')
@arg('--max-co-degree', type=check_non_negative,
     help='maximum non-degree of the sampled host')
@arg('--k', required=True, type=check_positive, help='clique size')
@arg('--seed', required=True, type=check_non_negative,
     help='seed of every random choice')
@arg('--params', metavar='JSON',
     help='tiling parameters overriding the defaults, inline or as a file')
@arg('--literal', action='store_true',
     help='use the literal constants instead of the desk-scale ones')
@arg('--host-out', metavar='FILE', help='write the host graph6 line here')
@arg('--output', '-o', metavar='FILE',
     help='also write the tiling certificate to this file')
@expects_obj
def tile(args):
    """
    Tile a dense host graph with k-cliques by absorption
    """
    config = multiram.__config__
    if (args.graph is None) == (args.sample is None):
        output.error("exactly one of --graph and --sample is required")
        output.close_and_exit()
    overrides = {}
    if args.params is not None:
        overrides = _load_json_argument(args.params, 'tiling parameters')
    if args.graph is not None:
        host = args.graph
    else:
        host = procedures.sample_dense_host(args.sample, args.k, args.seed,
                                           args.max_co_degree)
    if args.host_out:
        with open(args.host_out, 'w') as host_file:
            host_file.write(write_graph6_lines([host]))
    params = procedures.TilingParams.from_config(
        config.tiling, host.order, args.k, literal=args.literal,
        threads=config.threads)
    try:
        params = params.updated(overrides)
    except (TypeError, ValueError) as e:
        output.error("Invalid tiling parameters: %s", e)
        output.close_and_exit()
    output.init('tile', args.k)
    certificate = procedures.absorption_tiling(host, args.k, params, args.seed)
    if args.output:
        _write_json_file(args.output, certificate.to_json())
    output.result('tile', certificate)
    output.close_and_exit()


@arg('--red', required=True, type=check_target, metavar='TARGET',
     help='red target: <n>x<graph6> or <n>x<family-file>')
@arg('--blue', required=True, type=check_target, metavar='TARGET',
     help='blue target: <n>x<graph6> or <n>x<family-file>')
@arg('--n-range', type=check_range, metavar='A..B',
     help='orders to scan; the search stops at B')
@arg('--cap', type=check_positive, help='largest order searched')
@arg('--witness-out', metavar='FILE',
     help='write the extremal colouring here')
@expects_obj
def solve(args):
    """
    Compute a Ramsey number exactly by exhaustive search
    """
    config = multiram.__config__
    cap = args.cap or _solver_cap(args.red, args.blue)
    hint_lo, hint_hi = args.n_range or (0, None)
    output.init('solve', args.red, args.blue)
    result = solver.ramsey_number(args.red, args.blue, hint_lo, hint_hi,
                                  cap=cap, threads=config.threads)
    if args.witness_out and result.witness is not None:
        dump_colouring(result.witness, args.witness_out, config.colouring_format)
    output.result('solve', result)
    output.close_and_exit()


def _verify_partition(args, c):
    data = _load_json_argument(args.partition, 'partition')
    try:
        partition = PartitionSpec.from_json(data, c.order)
    except (GraphException, TypeError, ValueError) as e:
        return False, "malformed partition: %s" % force_str(e)
    ok, violations = constructions.check_critical_structure(c, partition,
                                                            args.pattern)
    details = [{'property': prop,
                'witness': (witness.to_json() if hasattr(witness, 'to_json')
                            else list(witness))}
               for prop, witness in violations]
    return ok, details


@arg('kind', choices=VERIFY_KINDS, help='the certificate type')
@arg('--colouring', metavar='FILE',
     help='the colouring file (all kinds but tiling)')
@arg('--certificate', metavar='FILE', help='the certificate JSON file')
@arg('--graph', type=check_host, metavar='HOST', help='host graph (tiling)')
@arg('--partition', metavar='FILE', help='partition sidecar (partition)')
@arg('--pattern', type=check_graph, metavar='GRAPH',
     help='the pattern H (partition)')
@arg('--n', type=check_positive, help='expected number of copies (packing)')
@arg('--k', type=check_non_negative, help='expected red clique size (join)')
@arg('--l', type=check_non_negative, help='expected blue clique size (join)')
@expects_obj
def verify(args):
    """
    Check a certificate; prints the verdict as JSON
    """
    if args.kind == 'tiling':
        _require(args, 'graph', 'certificate')
    elif args.kind == 'partition':
        _require(args, 'colouring', 'partition', 'pattern')
    else:
        _require(args, 'colouring', 'certificate')
    output.init('verify', args.kind)
    details = None
    c = None if args.kind == 'tiling' else _load_colouring(args.colouring)
    if args.kind == 'partition':
        valid, details = _verify_partition(args, c)
        output.result('verify', args.kind, valid, details)
        output.close_and_exit()
    data = _load_json_argument(args.certificate, 'certificate')
    try:
        if args.kind == 'embedding':
            valid = detectors.verify_embedding(c, detectors.Embedding.from_json(data))
        elif args.kind == 'packing':
            valid = detectors.verify_packing(c, detectors.Packing.from_json(data),
                                             args.n)
        elif args.kind == 'tie':
            valid = detectors.verify_tie(c, detectors.Tie.from_json(data))
        elif args.kind == 'join':
            valid = detectors.verify_join(c, detectors.Join.from_json(data),
                                          args.k, args.l)
        else:
            valid = procedures.verify_tiling(
                args.graph, procedures.TilingCertificate.from_json(data))
    except (KeyError, TypeError, ValueError, GraphException) as e:
        valid = False
        details = "malformed certificate: %s" % force_str(e)
    output.result('verify', args.kind, valid, details)
    output.close_and_exit()


@arg('kind', choices=FORMULA_KINDS, help='the closed form to evaluate')
@arg('--k', type=check_positive, help='clique size (clique)')
@arg('--g', type=check_graph, metavar='GRAPH', help='the red pattern G (asym)')
@arg('--h', type=check_graph, metavar='GRAPH', help='the pattern H')
@arg('--n', required=True, type=check_positive, help='number of copies')
@arg('--check', action='store_true',
     help='confirm the value with the exact solver')
@expects_obj
def formula(args):
    """
    Evaluate a closed-form Ramsey number
    """
    config = multiram.__config__
    cap = config.solver.cap
    output.init('formula', args.kind)
    if args.kind == 'clique':
        _require(args, 'k')
        data = solver.formula_clique(args.k, args.n, args.check, cap,
                                     config.threads).to_json()
    elif args.kind == 'asym':
        _require(args, 'g', 'h')
        data = solver.formula_asym(args.g, args.h, args.n, args.check, cap,
                                   config.threads).to_json()
    else:
        _require(args, 'h')
        low, high = solver.estimate_bounds(args.h, args.n, cap, config.threads)
        data = {
            'formula': 'estimate',
            'high': high,
            'low': low,
            'lower_bound': solver.prop_lower_bound(args.h, args.n),
            'regime': 'asymptotic',
            'value': low if low == high else None,
        }
    output.result('formula', args.kind, data)
    output.close_and_exit()


@arg('--h', required=True, type=check_graph, metavar='GRAPH',
     help='the pattern H')
def bracket(h=None):
    """
    Print the bracket on the additive constant of r(nH)
    """
    config = multiram.__config__
    output.init('bracket', h)
    low, high = solver.c_bracket(h, config.solver.cap, config.threads)
    output.result('bracket', h, low, high)
    output.close_and_exit()


def pretty_args(args):
    """
    Prettify the given argh namespace to be human readable

    :type args: argh.dispatching.ArghNamespace
    :return: the human readable content of the namespace
    """
    values = dict(vars(args))
    # Retrieve the command name with recent argh versions
    if '_functions_stack' in values:
        values['command'] = values['_functions_stack'][0].__name__
        del values['_functions_stack']
    # Older argh versions only have the matching function in the namespace
    elif 'function' in values:
        values['command'] = values['function'].__name__
        del values['function']
    return "%r" % values


def global_config(args):
    """
    Set the configuration file
    """
    filename = getattr(args, 'config', None)
    config = multiram.config.Config(filename)
    multiram.__config__ = config

    # configure logging
    if hasattr(args, 'log_level'):
        config.log_level = args.log_level
    log_level = parse_log_level(config.log_level)
    configure_logging(config.log_file,
                      log_level or multiram.config.DEFAULT_LOG_LEVEL,
                      config.log_format)
    if log_level is None:
        _logger.warning('unknown log_level in config file: %s',
                        config.log_level)

    if hasattr(args, 'threads'):
        config.threads = args.threads

    # Configure output
    if args.format != output.DEFAULT_WRITER or args.quiet or args.debug:
        output.set_output_writer(args.format,
                                 quiet=args.quiet,
                                 debug=args.debug)

    # Configure color output
    if args.color == 'auto':
        # Enable colored output if both stdout and stderr are TTYs
        output.ansi_colors_enabled = (
            sys.stdout.isatty() and sys.stderr.isatty())
    else:
        output.ansi_colors_enabled = args.color == 'always'

    _logger.debug('Initialised Multiram version %s (config: %s, args: %s)',
                  multiram.__version__, config.config_file, pretty_args(args))


def main():
    """
    The main method of Multiram
    """
    p = ArghParser(epilog='Multiram by the Multiram Project')
    p.add_argument('-v', '--version', action='version',
                   version='%s\n\nMultiram by the Multiram Project'
                           % multiram.__version__)
    p.add_argument('-c', '--config',
                   help='uses a configuration file (defaults: %s)'
                        % ', '.join(multiram.config.Config.CONFIG_FILES),
                   default=SUPPRESS)
    p.add_argument('--color', '--colour',
                   help='Whether to use colors in the output',
                   choices=['never', 'always', 'auto'],
                   default='auto')
    p.add_argument('--log-level',
                   help='Override the default log level',
                   choices=list(get_log_levels()),
                   default=SUPPRESS)
    p.add_argument('-q', '--quiet', help='be quiet', action='store_true')
    p.add_argument('-d', '--debug', help='debug output', action='store_true')
    p.add_argument('-f', '--format', help='output format',
                   choices=output.AVAILABLE_WRITERS.keys(),
                   default=output.DEFAULT_WRITER)
    p.add_argument('--threads', help='cap on internal parallel workers',
                   type=check_positive, default=SUPPRESS)
    p.add_commands(
        [
            bracket,
            construct,
            detect,
            families,
            formula,
            solve,
            tile,
            verify,
        ]
    )
    # noinspection PyBroadException
    try:
        p.dispatch(pre_call=global_config)
    except KeyboardInterrupt:
        msg = "Process interrupted by user (KeyboardInterrupt)"
        output.error(msg)
    except ProcedureError as e:
        output.error("%s\n%s", force_str(e), dump_json(e.to_json()))
    except PreconditionError as e:
        witness = e.witness.to_json() if hasattr(e.witness, 'to_json') else e.witness
        output.error("%s (witness: %s)", force_str(e), dump_json(witness))
    except MultiramException as e:
        output.error("%s", force_str(e))
    except Exception as e:
        msg = "%s\nSee log file for more details." % e
        output.exception(msg)

    # cleanup output API and exit honoring output.error_occurred and
    # output.error_exit_code
    output.close_and_exit()


if __name__ == '__main__':
    main()
