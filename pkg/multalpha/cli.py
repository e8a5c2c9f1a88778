"""Command-line interface for `multalpha`."""

import csv
import io
import json
import os
import sys

from argparse import (
    ArgumentParser,
    Namespace,
    RawTextHelpFormatter)
from colorama import (
    init as init_colorama)
from typing import (
    Any,
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple)

from multalpha.alphasel import (
    ladder_from_costs,
    optimal_alpha,
    population_scale)
from multalpha.config import (
    default_value,
    get_db_value,
    good_py_version,
    init_config,
    py_version_str)
from multalpha.costengine import (
    CostBreakdown)
from multalpha.errors import (
    MultalphaConfigError,
    MultalphaContractError,
    MultalphaDomainError,
    MultalphaError,
    MultalphaInternalError,
    MultalphaNumericalError)
from multalpha.io_console import (
    print_e_d1,
    print_i_d1,
    print_w_d1)
from multalpha.io_files import (
    create_dir,
    write_text)
from multalpha.report import (
    CostTable,
    StarMap,
    finding_statement,
    format_alpha,
    multilevel_ci,
    render_table,
    star_annotation,
    star_caption)
from multalpha.scenario import (
    AlphaLadder)
from multalpha.scenario_files import (
    COST_OUTPUT_SCHEMA,
    OPTIMUM_OUTPUT_SCHEMA,
    Scenario,
    load_scenario,
    validate_document)
from multalpha import (
    studies)
from multalpha.version import (
    __version__)

REPRODUCE_TARGETS = ('table1', 'table2', 'table3', 's3a', 's3b', 'fig1')


def _float_list(text: str, flag: str) -> List[float]:
    try:
        return [float(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise MultalphaConfigError(
            'Invalid `' + flag + '` value ' + repr(text) + '; expected a '
            'comma-separated list of numbers')


def get_parsed_args(args: Optional[List[str]]=None) -> Namespace:
    """Get the parsed command-line arguments.

    Args:
        args: Arguments to use in place of `sys.argv`.

    """
    parser = ArgumentParser(
        prog='multalpha',
        usage='multalpha [OPTIONS] command ...',
        description='expected error costs of tests at one or several alpha\n'
                    'levels, cost-optimal alphas and alpha ladders',
        formatter_class=RawTextHelpFormatter)

    parser.add_argument(
        '--config-dir',
        action='store',
        metavar='D',
        help='the base directory from which to load the configuration files;\n'
             'configuration files missing from this directory will instead\n'
             'be loaded from the default files shipped with this program')

    parser.add_argument(
        '--format',
        action='store',
        default='text',
        metavar='S',
        help='output document format for `cost`, `optimize`, `ladder` and\n'
             '`report`: one of text, csv or json (defaults to text)')

    parser.add_argument(
        '--quiet',
        action='store_true',
        default=False,
        help='suppress informational status lines')

    parser.add_argument(
        '--version',
        action='version',
        version=str(__version__),
        help='program version')

    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    cost = commands.add_parser(
        'cost',
        help='expected total error cost of a scenario file',
        formatter_class=RawTextHelpFormatter)
    cost.add_argument(
        'scenario',
        help='path to a JSON scenario file')

    optimize = commands.add_parser(
        'optimize',
        help='cost-minimizing single alpha level of a scenario file',
        formatter_class=RawTextHelpFormatter)
    optimize.add_argument(
        'scenario',
        help='path to a JSON scenario file')
    optimize.add_argument(
        '--bounds',
        action='store',
        metavar='L,U',
        help='alpha search interval (defaults to the configured optimizer\n'
             'bounds)')
    optimize.add_argument(
        '--resolution',
        action='store',
        type=int,
        metavar='I',
        help='number of log-spaced grid points scanned before refinement')
    optimize.add_argument(
        '--trace',
        action='store',
        metavar='F',
        help='filename of a CSV file receiving every evaluated (alpha, cost)')

    reproduce = commands.add_parser(
        'reproduce',
        help='rebuild a study table or figure into an output directory',
        formatter_class=RawTextHelpFormatter)
    reproduce.add_argument(
        'target',
        help='one of ' + ', '.join(REPRODUCE_TARGETS))
    reproduce.add_argument(
        '--seed',
        action='store',
        type=int,
        metavar='I',
        help='master seed of the random-cost simulations')
    reproduce.add_argument(
        '--runs',
        action='store',
        type=int,
        metavar='I',
        help='number of runs per simulation cell')
    reproduce.add_argument(
        '--out',
        action='store',
        default='.',
        metavar='D',
        help='directory in which to write output files (defaults to the\n'
             'current directory)')

    ladder = commands.add_parser(
        'ladder',
        help='alpha ladder from costs, or decision scale from a ladder',
        formatter_class=RawTextHelpFormatter)
    ladder.add_argument(
        '--alpha1',
        action='store',
        type=float,
        metavar='A',
        help='alpha level of the first decision')
    ladder.add_argument(
        '--costs',
        action='store',
        metavar='C,...',
        help='nondecreasing Type I costs C0(1), ..., C0(k)')
    ladder.add_argument(
        '--ladder',
        action='store',
        metavar='A,...',
        help='strictly decreasing alpha levels')
    ladder.add_argument(
        '--q1',
        action='store',
        type=float,
        metavar='Q',
        help='decision scale (e.g. population size) of the first level')
    ladder.add_argument(
        '--surprisal-digits',
        action='store',
        type=int,
        default=1,
        metavar='I',
        help='decimals to which surprisals are rounded before scaling; a\n'
             'negative value disables rounding (defaults to 1)')

    report = commands.add_parser(
        'report',
        help='finding statement, star annotation and multi-level intervals',
        formatter_class=RawTextHelpFormatter)
    report.add_argument(
        '--p-value',
        action='store',
        type=float,
        required=True,
        metavar='P',
        help='observed P-value')
    report.add_argument(
        '--ladder',
        action='store',
        metavar='A,...',
        help='strictly decreasing alpha levels (defaults to the star levels)')
    report.add_argument(
        '--subject',
        action='store',
        default='The test hypothesis',
        metavar='S',
        help='the conclusion being tested, as the subject of the sentence')
    report.add_argument(
        '--estimate',
        action='store',
        type=float,
        metavar='X',
        help='point estimate for multi-level confidence intervals')
    report.add_argument(
        '--se',
        action='store',
        type=float,
        metavar='X',
        help='standard error of the estimate')
    report.add_argument(
        '--sidedness',
        action='store',
        default='two',
        metavar='S',
        help='one or two (defaults to two)')
    report.add_argument(
        '--svg',
        action='store',
        metavar='F',
        help='filename of an SVG plot of the intervals')

    plot = commands.add_parser(
        'plot',
        help='SVG of a normal-prevalence scenario with its critical values',
        formatter_class=RawTextHelpFormatter)
    plot.add_argument(
        'scenario',
        help='path to a JSON scenario file with a normal prevalence')
    plot.add_argument(
        '--effect',
        action='store',
        type=float,
        metavar='X',
        help='effect at which to draw the sampling distribution (defaults\n'
             'to the boundary)')
    plot.add_argument(
        '--out',
        action='store',
        required=True,
        metavar='F',
        help='filename of the SVG document')

    if args is None:
        args = sys.argv[1:]

    return parser.parse_args(args)


def _tail_sds() -> float:
    return float(default_value('quadrature', 'tail_sds'))


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _csv_text(rows: Sequence[Sequence[Any]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerows(rows)
    return out.getvalue()


def _json_text(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + '\n'


def breakdown_document(scenario: Scenario,
                       breakdown: CostBreakdown) -> Dict[str, Any]:
    return {
        'scenario': scenario.name,
        'version': __version__,
        'alphas': list(scenario.ladder.levels),
        'omega0': breakdown.omega0,
        'omega1': breakdown.omega1,
        'total': breakdown.total,
        'per_level': list(breakdown.per_level),
        'weights': (None if breakdown.weights is None
                    else list(breakdown.weights)),
    }


def cmd_cost(opts: Namespace) -> int:
    """Print the multi-alpha cost breakdown of a scenario file."""
    scenario = load_scenario(opts.scenario)
    print_i_d1('Computing expected costs of ', scenario.name)
    breakdown = scenario.breakdown(_tail_sds())
    fmt = get_db_value('format')

    if fmt == 'json':
        doc = breakdown_document(scenario, breakdown)
        validate_document(doc, COST_OUTPUT_SCHEMA, 'cost output')
        _emit(_json_text(doc))
    elif fmt == 'csv':
        rows: List[List[Any]] = [['quantity', 'alpha', 'value']]
        for m, (a, c) in enumerate(
                zip(scenario.ladder.levels, breakdown.per_level)):
            rows.append(['single_cost', repr(a), repr(c)])
            if breakdown.weights is not None:
                rows.append(['weight', repr(a), repr(breakdown.weights[m])])
        rows.append(['omega0', '', repr(breakdown.omega0)])
        rows.append(['omega1', '', repr(breakdown.omega1)])
        rows.append(['total', '', repr(breakdown.total)])
        _emit(_csv_text(rows))
    else:
        lines = ['scenario: ' + scenario.name]
        for m, (a, c) in enumerate(
                zip(scenario.ladder.levels, breakdown.per_level)):
            line = 'alpha = ' + format_alpha(a) + ': single-level cost ' + \
                '{:.6f}'.format(c)
            if breakdown.weights is not None:
                line += ', weight {:.6f}'.format(breakdown.weights[m])
            lines.append(line)
        lines.append('omega0 = {:.6f}'.format(breakdown.omega0))
        lines.append('omega1 = {:.6f}'.format(breakdown.omega1))
        lines.append('total = {:.6f}'.format(breakdown.total))
        _emit('\n'.join(lines) + '\n')
    return 0


def _bounds(opts: Namespace) -> Tuple[float, float]:
    if opts.bounds is None:
        return (float(default_value('optimizer', 'lower')),
                float(default_value('optimizer', 'upper')))
    values = _float_list(opts.bounds, '--bounds')
    if len(values) != 2:
        raise MultalphaConfigError(
            'Invalid `--bounds` value ' + repr(opts.bounds) + '; expected '
            'lower,upper')
    return values[0], values[1]


def cmd_optimize(opts: Namespace) -> int:
    """Print the cost-minimizing alpha of a scenario file."""
    scenario = load_scenario(opts.scenario)
    bounds = _bounds(opts)
    resolution = opts.resolution
    if resolution is None:
        resolution = int(default_value('optimizer', 'resolution'))
    tail_sds = _tail_sds()

    print_i_d1('Searching alpha in [', format_alpha(bounds[0]), ', ',
               format_alpha(bounds[1]), '] for ', scenario.name)
    best = optimal_alpha(
        lambda a: scenario.single_cost(a, tail_sds), bounds, resolution,
        float(default_value('optimizer', 'tolerance')))

    if opts.trace is not None:
        write_text(opts.trace, _csv_text(
            [['alpha', 'cost']] +
            [[repr(a), repr(c)] for a, c in best.trace]))
        print_i_d1('Wrote ', len(best.trace), ' trace rows to ', opts.trace)

    fmt = get_db_value('format')
    if fmt == 'json':
        doc = {
            'scenario': scenario.name,
            'version': __version__,
            'alpha_star': best.alpha_star,
            'alpha_rounded': best.alpha_rounded,
            'cost_star': best.cost_star,
            'bounds': list(bounds),
            'resolution': resolution,
        }
        validate_document(doc, OPTIMUM_OUTPUT_SCHEMA, 'optimum output')
        _emit(_json_text(doc))
    elif fmt == 'csv':
        _emit(_csv_text([
            ['alpha_rounded', 'alpha_star', 'cost_star'],
            ['{:.2f}'.format(best.alpha_rounded), repr(best.alpha_star),
             repr(best.cost_star)]]))
    else:
        _emit('optimal alpha: {:.2f} ({!r})\ncost: {:.6f}\n'.format(
            best.alpha_rounded, best.alpha_star, best.cost_star))
    return 0


def _write_table(out_dir: str, stem: str, table: CostTable) -> List[str]:
    write_text(os.path.join(out_dir, stem + '.csv'),
               render_table(table, 'csv'))
    write_text(os.path.join(out_dir, stem + '.txt'),
               render_table(table, 'text'))
    return [stem + '.csv', stem + '.txt']


def _published(target: str, panel: Optional[str]=None) -> Dict[str, Any]:
    published = get_db_value('published')
    try:
        section = published[target]
        return section if panel is None else section[panel]
    except KeyError:
        name = target if panel is None else target + '.' + panel
        raise MultalphaConfigError(
            'Missing published reference section `[' + name + ']`')


def _reproduce_table(target: str, out_dir: str) -> Tuple[List[str],
                                                         Dict[str, Any]]:
    defaults = get_db_value('defaults')
    params: Dict[str, Any] = {
        target: defaults[target],
        'optimizer': defaults['optimizer'],
        'quadrature': defaults['quadrature'],
    }
    if target == 'table1':
        table = studies.table1()
    elif target == 'table2':
        table = studies.table2()
    else:
        table = studies.table3()
    studies.flag_residuals(table, _published(target))
    written = _write_table(out_dir, target, table)

    if target in studies.TABLE_TARGETS:
        params['molnupiravir'] = defaults['molnupiravir']
        print_i_d1('Comparing variance readings for ', target)
        variants = studies.variant_table(target, _published(target))
    else:
        sd = float(defaults['table3']['sensitivity_sd'])
        print_i_d1('Sensitivity run at anticipated sd ', format_alpha(sd))
        scn = studies.AnticipatedScenario.from_defaults()
        sensitivity = studies.table3(scn._replace(anticipated_sd=sd))
        written += _write_table(
            out_dir, 'table3-sd' + format_alpha(sd), sensitivity)

        print_i_d1('Comparing anticipated-effect floors for ', target)
        variants = studies.floor_variant_table(_published(target), scn,
                                               base=table)
    write_text(os.path.join(out_dir, target + '-variants.txt'),
               render_table(variants, 'text'))
    written.append(target + '-variants.txt')
    return written, params


def _reproduce_s3(target: str, out_dir: str, seed: Optional[int],
                  runs: Optional[int]) -> Tuple[List[str], Dict[str, Any]]:
    settings = get_db_value('defaults')['simulation']
    if seed is None:
        seed = int(settings['seed'])
    if runs is None:
        runs = int(settings['runs'])

    written, texts = [], []
    for panel in studies.S3_PANELS:
        print_i_d1('Simulating ', target, ' with the ', panel,
                   '-level ladder')
        table = studies.s3_table(target, panel, runs=runs, seed=seed)
        studies.flag_residuals(table, _published(target, panel))
        stem = target + '-' + panel
        write_text(os.path.join(out_dir, stem + '.csv'),
                   render_table(table, 'csv'))
        written.append(stem + '.csv')
        texts.append(render_table(table, 'text'))
    write_text(os.path.join(out_dir, target + '.txt'), '\n'.join(texts))
    written.append(target + '.txt')

    params = {'simulation': dict(settings, seed=seed, runs=runs),
              'optimizer': get_db_value('defaults')['optimizer']}
    return written, params


def _reproduce_fig1(out_dir: str) -> Tuple[List[str], Dict[str, Any]]:
    from multalpha import plots
    data = studies.fig1_data()
    write_text(os.path.join(out_dir, 'fig1.svg'), plots.plot_fig1(data))

    header = ['effect', 'true_density', 'anticipated_density',
              'sampling_density', 'anticipated', 'planned_group_size',
              'required_group_size', 'group_size', 'group_size_density']
    columns = [data.effects, data.true_density, data.anticipated_density,
               data.sampling_density, data.anticipated, data.planned_sizes,
               data.required_sizes, data.sizes, data.size_density]
    rows = [header] + [[repr(float(v)) for v in row]
                       for row in zip(*columns)]
    write_text(os.path.join(out_dir, 'fig1.csv'), _csv_text(rows))
    write_text(os.path.join(out_dir, 'fig1.txt'),
               'group size at the anticipated mean: ' +
               str(data.design_group_size) + ' per group\n'
               'critical value at the boundary: ' +
               '{:.6f}'.format(data.critical) + '\n')
    return (['fig1.svg', 'fig1.csv', 'fig1.txt'],
            {'table3': get_db_value('defaults')['table3']})


def cmd_reproduce(opts: Namespace) -> int:
    """Rebuild a study artifact with a provenance sidecar."""
    target = opts.target
    if target not in REPRODUCE_TARGETS:
        raise MultalphaConfigError(
            'Unknown reproduction target `' + target + '`; expected one of ' +
            ', '.join(REPRODUCE_TARGETS))
    create_dir(opts.out)
    print_i_d1('Reproducing ', target, ' into ', opts.out)

    seed = None
    if target in ('s3a', 's3b'):
        written, params = _reproduce_s3(target, opts.out, opts.seed,
                                        opts.runs)
        seed = params['simulation']['seed']
    elif target == 'fig1':
        written, params = _reproduce_fig1(opts.out)
    else:
        written, params = _reproduce_table(target, opts.out)

    provenance = {
        'target': target,
        'version': __version__,
        'seed': seed,
        'parameters': params,
        'outputs': written,
    }
    write_text(os.path.join(opts.out, target + '.provenance.json'),
               _json_text(provenance))
    print_i_d1('Wrote ', len(written) + 1, ' files')
    return 0


def cmd_ladder(opts: Namespace) -> int:
    """Print a ladder derived from costs, or scales derived from a ladder."""
    from_costs = opts.alpha1 is not None or opts.costs is not None
    from_ladder = opts.ladder is not None or opts.q1 is not None
    if from_costs == from_ladder:
        raise MultalphaConfigError(
            'Use either `--alpha1` with `--costs` or `--ladder` with `--q1`')

    fmt = get_db_value('format')
    if from_costs:
        if opts.alpha1 is None or opts.costs is None:
            raise MultalphaConfigError(
                '`--alpha1` and `--costs` must be given together')
        values = list(ladder_from_costs(
            opts.alpha1, _float_list(opts.costs, '--costs')).levels)
        key = 'ladder'
        text = ', '.join('{:.6g}'.format(a) for a in values)
    else:
        if opts.ladder is None or opts.q1 is None:
            raise MultalphaConfigError(
                '`--ladder` and `--q1` must be given together')
        digits = opts.surprisal_digits
        values = population_scale(
            opts.q1, AlphaLadder(_float_list(opts.ladder, '--ladder')),
            None if digits < 0 else digits)
        key = 'scale'
        text = ', '.join('{:.0f}'.format(q) for q in values)

    if fmt == 'json':
        _emit(_json_text({key: values}))
    elif fmt == 'csv':
        _emit(_csv_text([[key]] + [[repr(v)] for v in values]))
    else:
        _emit(text + '\n')
    return 0


def cmd_report(opts: Namespace) -> int:
    """Print the reporting sentences for a P-value."""
    star_map = StarMap(default_value('reporting', 'star_levels'),
                       default_value('reporting', 'star_symbols'))
    if opts.ladder is None:
        ladder = AlphaLadder(star_map.levels)
    else:
        ladder = AlphaLadder(_float_list(opts.ladder, '--ladder'))
    labels = default_value('reporting', 'evidence_labels')
    if len(labels) != ladder.k:
        labels = None

    finding = finding_statement(opts.p_value, ladder, labels, opts.subject)
    stars = star_annotation(opts.p_value, star_map)

    ci = None
    if opts.estimate is not None or opts.se is not None:
        if opts.estimate is None or opts.se is None:
            raise MultalphaConfigError(
                '`--estimate` and `--se` must be given together')
        ci = multilevel_ci(opts.estimate, opts.se, ladder, opts.sidedness)
        if opts.svg is not None:
            from multalpha.plots import plot_multilevel_ci
            write_text(opts.svg, plot_multilevel_ci(ci))
            print_i_d1('Wrote interval plot to ', opts.svg)

    fmt = get_db_value('format')
    if fmt == 'json':
        doc: Dict[str, Any] = {
            'p_value': opts.p_value,
            'alphas': list(ladder.levels),
            'level': finding.level,
            'formal': finding.formal,
            'labelled': finding.labelled,
            'stars': stars,
            'caption': star_caption(star_map),
        }
        if ci is not None:
            doc['intervals'] = [
                {'alpha': a, 'lower': None if lo == float('-inf') else lo,
                 'upper': hi}
                for a, lo, hi in zip(ci.alphas, ci.lower, ci.upper)]
        _emit(_json_text(doc))
    elif fmt == 'csv':
        rows: List[List[Any]] = [['alpha', 'rejected', 'lower', 'upper']]
        for m, a in enumerate(ladder.levels):
            rejected = finding.level is not None and m <= finding.level
            lo = hi = ''
            if ci is not None:
                lo, hi = repr(ci.lower[m]), repr(ci.upper[m])
            rows.append([repr(a), str(rejected).lower(), lo, hi])
        _emit(_csv_text(rows))
    else:
        lines = [finding.formal]
        if finding.labelled is not None:
            lines.append(finding.labelled)
        lines.append('P = ' + format_alpha(opts.p_value) + stars)
        lines.append(star_caption(star_map))
        if ci is not None:
            for a, lo, hi in zip(ci.alphas, ci.lower, ci.upper):
                lines.append('alpha = ' + format_alpha(a) +
                             ': [{:.6g}, {:.6g}]'.format(lo, hi))
        _emit('\n'.join(lines) + '\n')
    return 0


def cmd_plot(opts: Namespace) -> int:
    """Write an SVG of a scenario's prevalence and critical values."""
    from multalpha.plots import plot_scenario

    scenario = load_scenario(opts.scenario)
    if scenario.is_dichotomous():
        raise MultalphaConfigError(
            'Scenario plots need a `normal` prevalence')
    write_text(opts.out, plot_scenario(
        scenario.prevalence, scenario.model, scenario.ladder.levels,
        opts.effect))
    print_i_d1('Wrote scenario plot to ', opts.out)
    return 0


_COMMANDS: Dict[str, Callable[[Namespace], int]] = {
    'cost': cmd_cost,
    'optimize': cmd_optimize,
    'reproduce': cmd_reproduce,
    'ladder': cmd_ladder,
    'report': cmd_report,
    'plot': cmd_plot,
}


def main(args: Optional[List[str]]=None) -> int:
    """Main entry point for `multalpha`'s command-line interface.

    Args:
        args: Custom arguments to override ``sys.argv``.

    Returns:
        The exit code of the program.

    """
    try:
        init_colorama()

        if not good_py_version():
            print_w_d1('Running with Python version ', py_version_str(),
                       ' but this program is only tested with Python 3.10+')

        opts = get_parsed_args(args)
        init_config(opts)
        return _COMMANDS[opts.command](opts)
    except MultalphaConfigError as e:
        print_e_d1('Configuration error: ', e.message)
        return 2
    except (MultalphaDomainError, MultalphaContractError) as e:
        print_e_d1('Invalid input: ', e.message)
        return 2
    except MultalphaNumericalError as e:
        print_e_d1('Numerical error: ', e.message)
        return 3
    except MultalphaInternalError as e:
        print_e_d1('Internal error: ', e.message)
        return 1
    except MultalphaError:
        print_e_d1('This should not be reached!')
        return 1
    except Exception as e:
        print_e_d1('Received unexpected exception; re-raising it.')
        raise e
