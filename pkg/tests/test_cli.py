import csv
import io
import json
import os

import jsonschema
import pytest

from multalpha import (
    cli)
from multalpha.scenario_files import (
    COST_OUTPUT_SCHEMA,
    OPTIMUM_OUTPUT_SCHEMA,
    load_schema)


@pytest.fixture(autouse=True)
def no_colorama(monkeypatch):
    monkeypatch.setattr(cli, 'init_colorama', lambda: None)


@pytest.fixture
def run(capsys):
    """Run the command line; return (exit code, stdout, stderr)."""
    def _run(*args):
        code = cli.main(['--quiet'] + list(args))
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def normal_doc():
    return {
        'schema_version': 1,
        'name': 'normal-drug-trial',
        'prevalence': {'kind': 'normal', 'mean': 0.0, 'sd': 0.015},
        'alphas': [0.25, 0.05, 0.001],
        'costs': {'kind': 'riskdiff'},
        'model': {'kind': 'riskdiff', 'r1': 0.092, 'per_group_n': 1000,
                  'treatment_cost': 707.0, 'hospitalization_cost': 40000.0,
                  'variance': 'binomial'},
    }


def test_ladder_from_costs(run):
    code, out, _ = run('ladder', '--alpha1', '0.05', '--costs', '1,2')
    assert code == 0
    assert out == '0.05, 0.0025\n'


def test_scale_from_ladder(run):
    code, out, _ = run('ladder', '--ladder', '0.05,0.001', '--q1', '1000')
    assert code == 0
    assert out == '1000, 2326\n'

    code, out, _ = run('ladder', '--ladder', '0.05,0.001', '--q1', '1000',
                       '--surprisal-digits', '-1')
    assert out == '1000, 2306\n'


def test_ladder_json(run):
    code, out, _ = run('--format', 'json', 'ladder', '--alpha1', '0.1',
                       '--costs', '1,3')
    assert code == 0
    assert json.loads(out)['ladder'] == pytest.approx([0.1, 0.001])


@pytest.mark.parametrize('args', [
    ['ladder', '--alpha1', '0.05', '--costs', '1,2', '--q1', '10'],
    ['ladder'],
    ['ladder', '--alpha1', '0.05'],
    ['ladder', '--alpha1', '0.05', '--costs', '1,x'],
])
def test_ladder_flag_errors(run, args):
    code, out, err = run(*args)
    assert code == 2
    assert out == ''
    assert 'Configuration error' in err


def test_ladder_contract_error(run):
    code, _, err = run('ladder', '--alpha1', '0.05', '--costs', '2,1')
    assert code == 2
    assert 'Invalid input' in err


def test_cost_json(run, write_scenario, table1_cell):
    code, out, _ = run('--format', 'json', 'cost', write_scenario(table1_cell))
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema(COST_OUTPUT_SCHEMA))
    assert doc['scenario'] == 'table1-rd-0.025-P-0.5'
    assert doc['per_level'] == pytest.approx([doc['total']])
    assert doc['total'] == pytest.approx(143.5, rel=0.01)


def test_cost_text(run, write_scenario, table1_cell):
    code, out, _ = run('cost', write_scenario(table1_cell))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'scenario: table1-rd-0.025-P-0.5'
    assert lines[1].startswith('alpha = 0.05: single-level cost 143.')
    assert lines[-1].startswith('total = 143.')


def test_cost_csv(run, write_scenario, normal_doc):
    code, out, _ = run('--format', 'csv', 'cost', write_scenario(normal_doc))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ['quantity', 'alpha', 'value']
    assert [r[0] for r in rows[1:]] == (['single_cost', 'weight'] * 3 +
                                         ['omega0', 'omega1', 'total'])
    assert float(rows[-1][2]) == pytest.approx(33.8, rel=0.05)


def test_cost_missing_file(run, tmp_path):
    code, _, err = run('cost', str(tmp_path / 'absent.json'))
    assert code == 2
    assert 'does not exist' in err


def test_cost_invalid_scenario(run, write_scenario, table1_cell):
    table1_cell['alphas'] = [1.5]
    code, _, err = run('cost', write_scenario(table1_cell))
    assert code == 2
    assert '`alphas.0`' in err


def test_optimize(run, write_scenario, table1_cell, tmp_path):
    trace = str(tmp_path / 'trace.csv')
    code, out, _ = run('--format', 'json', 'optimize', '--bounds', '0.02,0.2',
                       '--resolution', '20', '--trace', trace,
                       write_scenario(table1_cell))
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema(OPTIMUM_OUTPUT_SCHEMA))
    assert 0.02 <= doc['alpha_star'] <= 0.2
    assert doc['bounds'] == [0.02, 0.2]
    assert doc['cost_star'] <= 143.5

    with open(trace, encoding='utf-8') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['alpha', 'cost']
    assert len(rows) > 20


def test_optimize_text(run, write_scenario, table1_cell):
    code, out, _ = run('optimize', '--resolution', '30',
                       write_scenario(table1_cell))
    assert code == 0
    assert out.startswith('optimal alpha: 0.0')
    assert '\ncost: ' in out


def test_optimize_bad_bounds(run, write_scenario, table1_cell):
    path = write_scenario(table1_cell)
    code, _, _ = run('optimize', '--bounds', '0.2', path)
    assert code == 2
    code, _, _ = run('optimize', '--bounds', '0.3,0.2', path)
    assert code == 2


def test_unknown_reproduce_target(run, tmp_path):
    code, _, err = run('reproduce', 'table9', '--out', str(tmp_path))
    assert code == 2
    assert 'table9' in err


def test_reproduce_table1(run, tmp_path):
    out_dir = str(tmp_path / 'out')
    code, _, _ = run('reproduce', 'table1', '--out', out_dir)
    assert code == 0
    names = set(os.listdir(out_dir))
    assert {'table1.csv', 'table1.txt', 'table1-variants.txt',
            'table1.provenance.json'} <= names

    with open(os.path.join(out_dir, 'table1.provenance.json'),
              encoding='utf-8') as f:
        provenance = json.load(f)
    assert provenance['target'] == 'table1'
    assert provenance['seed'] is None
    assert 'table1.csv' in provenance['outputs']
    assert provenance['parameters']['molnupiravir']['treatment_cost'] == 707.0


def test_reproduce_s3_records_seed(run, tmp_path):
    out_dir = str(tmp_path)
    code, _, _ = run('reproduce', 's3a', '--seed', '5', '--runs', '3',
                     '--out', out_dir)
    assert code == 0
    for name in ('s3a-two.csv', 's3a-three.csv', 's3a.txt'):
        assert os.path.isfile(os.path.join(out_dir, name))
    with open(os.path.join(out_dir, 's3a.provenance.json'),
              encoding='utf-8') as f:
        provenance = json.load(f)
    assert provenance['seed'] == 5
    assert provenance['parameters']['simulation']['runs'] == 3


def test_report_text(run):
    code, out, _ = run('report', '--p-value', '0.003')
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ('The test hypothesis was rejected at alpha level '
                        '0.01 but was not rejected at alpha level 0.001.')
    assert lines[1] == ('Our data provided only moderate evidence against '
                        'the test hypothesis.')
    assert lines[2] == 'P = 0.003**'


def test_report_intervals(run, tmp_path):
    svg = str(tmp_path / 'ci.svg')
    code, out, _ = run('--format', 'json', 'report', '--p-value', '0.2',
                       '--ladder', '0.1,0.05', '--estimate', '1.0', '--se',
                       '0.5', '--sidedness', 'one', '--svg', svg)
    assert code == 0
    doc = json.loads(out)
    assert doc['level'] is None
    assert doc['stars'] == ''
    assert [i['lower'] for i in doc['intervals']] == [None, None]
    assert doc['intervals'][1]['upper'] > doc['intervals'][0]['upper']
    assert os.path.isfile(svg)


def test_report_needs_both_estimate_and_se(run):
    code, _, _ = run('report', '--p-value', '0.01', '--estimate', '1.0')
    assert code == 2


def test_plot(run, write_scenario, normal_doc, tmp_path):
    out = str(tmp_path / 'scenario.svg')
    code, _, _ = run('plot', write_scenario(normal_doc), '--out', out)
    assert code == 0
    with open(out, encoding='utf-8') as f:
        assert f.read().count('id="critical-') == 3


def test_plot_needs_normal_prevalence(run, write_scenario, table1_cell,
                                      tmp_path):
    code, _, err = run('plot', write_scenario(table1_cell), '--out',
                       str(tmp_path / 'x.svg'))
    assert code == 2
    assert 'normal' in err


def test_bad_format(run):
    code, _, err = run('--format', 'xml', 'ladder', '--alpha1', '0.05',
                       '--costs', '1,2')
    assert code == 2
    assert 'xml' in err


def test_optimize_narrow_bounds(run, write_scenario, table1_cell):
    code, out, _ = run('--format', 'csv', 'optimize', '--bounds', '0.2,0.21',
                       '--resolution', '5', write_scenario(table1_cell))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ['alpha_rounded', 'alpha_star', 'cost_star']
    assert 0.2 <= float(rows[1][1]) <= 0.21


def test_single_level_ladder(run):
    code, out, _ = run('ladder', '--alpha1', '0.05', '--costs', '1')
    assert code == 0
    assert out == '0.05\n'


def test_reproduce_is_deterministic(run, tmp_path):
    outputs = []
    for name in ('first', 'second'):
        out_dir = str(tmp_path / name)
        code, _, _ = run('reproduce', 's3a', '--seed', '42', '--runs', '2',
                         '--out', out_dir)
        assert code == 0
        contents = {}
        for filename in sorted(os.listdir(out_dir)):
            with open(os.path.join(out_dir, filename), encoding='utf-8') as f:
                contents[filename] = f.read()
        outputs.append(contents)
    assert outputs[0] == outputs[1]


def test_unexpected_exception_is_reraised(monkeypatch, capsys):
    def boom(opts):
        raise RuntimeError('boom')

    monkeypatch.setitem(cli._COMMANDS, 'ladder', boom)
    with pytest.raises(RuntimeError):
        cli.main(['ladder', '--alpha1', '0.05', '--costs', '1,2'])
    _, err = capsys.readouterr()
    assert 'Received unexpected exception; re-raising it.' in err
