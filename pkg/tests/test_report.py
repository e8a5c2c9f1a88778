import csv
import io
import math

import pytest

from multalpha.errors import (
    MultalphaContractError,
    MultalphaDomainError)
from multalpha.prng import (
    SeededGenerator)
from multalpha.report import (
    CostTable,
    StarMap,
    finding_statement,
    format_alpha,
    multilevel_ci,
    render_table,
    star_annotation,
    star_caption)

LADDER = (0.05, 0.01, 0.001)
LABELS = ('weak', 'moderate', 'strong')


@pytest.fixture
def table():
    return CostTable(
        'Costs', ['alpha = 0.25', 'alpha = 0.05', 'multi-level', 'optimal'],
        ['RD = -0.025, P = 0.5', 'RD = -0.05, P = 0.1'],
        [[166.5, 143.46, 149.5, 143.2], [98.4, 108.1, 301.25, 77.5]],
        optimal_alphas=[0.04, 0.1312], single_columns=2, digits=1,
        notes=['** lowest single-level cost'])


def test_format_alpha():
    assert format_alpha(0.25) == '0.25'
    assert format_alpha(1e-6) == '0.000001'
    assert format_alpha(-0.025) == '-0.025'
    assert format_alpha(1.0) == '1'


def test_bold_index_and_column(table):
    assert table.bold_index(0) == 1
    assert table.bold_index(1) == 0
    assert table.column('optimal') == [143.2, 77.5]


def test_render_text(table):
    text = render_table(table, 'text')
    lines = text.splitlines()
    assert lines[0] == 'Costs'
    assert '**143.5**' in lines[4]
    assert '143.2 (0.04)' in lines[4]
    assert '**98.4**' in lines[5]
    assert '77.5 (0.13)' in lines[5]
    assert lines[-1] == '** lowest single-level cost'
    assert text == render_table(table, 'text')


def test_render_csv_round_trips_cells(table):
    rows = list(csv.reader(io.StringIO(render_table(table, 'csv'))))
    assert rows[0] == ['row'] + list(table.columns) + ['optimal alpha']
    for r, row in enumerate(rows[1:]):
        assert row[0] == table.rows[r]
        assert [float(v) for v in row[1:5]] == list(table.cells[r])
        assert float(row[5]) == table.optimal_alphas[r]


def test_render_csv_with_sds():
    table = CostTable('S', ['a'], ['x'], [[1.25]], sds=[[0.5]])
    rows = list(csv.reader(io.StringIO(render_table(table, 'csv'))))
    assert rows == [['row', 'a', 'a sd'], ['x', '1.25', '0.5']]
    assert '1.2 (0.5)' in render_table(table, 'text')


def test_single_cell_table():
    table = CostTable('One', ['a'], ['x'], [[2.0]])
    rows = list(csv.reader(io.StringIO(render_table(table, 'csv'))))
    assert len(rows) == 2
    assert table.bold_index(0) is None


def test_table_shape_contract():
    with pytest.raises(MultalphaContractError):
        CostTable('T', ['a', 'b'], ['x'], [[1.0]])
    with pytest.raises(MultalphaContractError):
        CostTable('T', ['a'], ['x', 'y'], [[1.0]])


def test_unknown_format(table):
    with pytest.raises(MultalphaDomainError):
        render_table(table, 'html')


def test_multilevel_ci_two_sided():
    ci = multilevel_ci(0.0, 1.0, [0.05])
    assert ci.lower[0] == pytest.approx(-1.96, abs=1e-3)
    assert ci.upper[0] == pytest.approx(1.96, abs=1e-3)


def test_multilevel_ci_one_sided():
    ci = multilevel_ci(2.0, 1.0, [0.05], 'one')
    assert ci.lower[0] == -math.inf
    assert ci.upper[0] == pytest.approx(2.0 + 1.6449, abs=1e-3)


def test_multilevel_ci_nesting_and_scaling():
    ci = multilevel_ci(0.3, 0.2, [0.05, 0.005])
    assert ci.lower[1] < ci.lower[0] < ci.upper[0] < ci.upper[1]
    wide = multilevel_ci(0.3, 0.4, [0.05, 0.005])
    for m in range(2):
        assert wide.upper[m] - 0.3 == pytest.approx(
            2.0 * (ci.upper[m] - 0.3))


def test_multilevel_ci_nesting_over_random_ladders():
    rng = SeededGenerator(1000)
    for _ in range(1000):
        k = 1 + int(rng.uniform(0.0, 5.0))
        levels = sorted(set(rng.uniform(1e-6, 0.99) for _ in range(k)),
                        reverse=True)
        for sidedness in ('one', 'two'):
            ci = multilevel_ci(rng.uniform(-5.0, 5.0), rng.uniform(0.01, 3.0),
                               levels, sidedness)
            for m in range(len(levels) - 1):
                assert ci.upper[m] < ci.upper[m + 1]
                if sidedness == 'two':
                    assert ci.lower[m] > ci.lower[m + 1]


def test_multilevel_ci_errors():
    with pytest.raises(MultalphaDomainError):
        multilevel_ci(0.0, 0.0, [0.05])
    with pytest.raises(MultalphaDomainError):
        multilevel_ci(0.0, 1.0, [0.05], 'both')
    with pytest.raises(MultalphaContractError):
        multilevel_ci(0.0, 1.0, [0.01, 0.05])


def test_finding_between_levels():
    finding = finding_statement(0.03, LADDER, LABELS)
    assert finding.level == 0
    assert finding.formal == (
        'The test hypothesis was rejected at alpha level 0.05 but was not '
        'rejected at alpha level 0.01.')
    assert finding.labelled == (
        'Our data provided only weak evidence against the test hypothesis.')


def test_finding_at_most_stringent_level():
    finding = finding_statement(0.0005, LADDER, LABELS)
    assert finding.level == 2
    assert finding.formal == (
        'The test hypothesis was rejected at alpha level 0.001.')
    assert finding.labelled == (
        'Our data provided strong evidence against the test hypothesis.')


def test_finding_not_rejected():
    finding = finding_statement(0.5, LADDER, LABELS)
    assert finding.level is None
    assert finding.formal == (
        'The test hypothesis was not rejected at any of the alpha levels '
        '0.05, 0.01, 0.001.')
    assert finding.labelled == ('Our data provided no evidence against the '
                                'test hypothesis at the levels tested.')
    assert finding_statement(0.5, [0.05]).formal == (
        'The test hypothesis was not rejected at alpha level 0.05.')


def test_finding_uses_strict_inequality():
    assert finding_statement(0.05, LADDER).level is None
    assert finding_statement(0.01, LADDER).level == 0


def test_finding_without_labels_and_custom_subject():
    finding = finding_statement(0.004, LADDER, subject='No benefit')
    assert finding.labelled is None
    assert finding.formal.startswith('No benefit was rejected at alpha level '
                                     '0.01 but')


def test_finding_is_monotone_in_p():
    levels = [finding_statement(p, LADDER).level
              for p in (0.9, 0.06, 0.04, 0.02, 0.009, 0.002, 0.0009, 1e-9)]
    ranks = [-1 if v is None else v for v in levels]
    assert ranks == sorted(ranks)


def test_finding_errors():
    with pytest.raises(MultalphaDomainError):
        finding_statement(0.0, LADDER)
    with pytest.raises(MultalphaContractError):
        finding_statement(0.03, LADDER, ['weak'])


def test_star_annotation_and_caption():
    stars = StarMap([0.05, 0.01, 0.001], ['*', '**', '***'])
    assert star_annotation(0.03, stars) == '*'
    assert star_annotation(0.0005, stars) == '***'
    assert star_annotation(0.2, stars) == ''
    assert star_caption(stars) == (
        '* statistically significant at alpha level 0.05; '
        '** statistically significant at alpha level 0.01; '
        '*** statistically significant at alpha level 0.001')


def test_star_caption_prints_custom_thresholds():
    stars = StarMap([0.1, 0.003], ['+', '***'])
    assert star_caption(stars).endswith(
        '*** statistically significant at alpha level 0.003')
    with pytest.raises(MultalphaContractError):
        StarMap([0.05, 0.01], ['*'])
