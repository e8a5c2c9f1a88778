"""Rendering of cost tables, multi-level confidence intervals and findings."""

import csv
import io
import math

import numpy as np

from collections import (
    namedtuple)
from typing import (
    List,
    Optional,
    Sequence)

from multalpha.errors import (
    MultalphaContractError,
    MultalphaDomainError)
from multalpha.scenario import (
    AlphaLadder)
from multalpha.specfun import (
    normal_quantile)

TABLE_FORMATS = ('text', 'csv')
SIDEDNESS = ('one', 'two')

_CostTable = namedtuple(
    '_CostTable',
    ['title', 'columns', 'rows', 'cells', 'optimal_alphas', 'sds',
     'single_columns', 'digits', 'notes'])


class CostTable(_CostTable):
    """Rows of expected costs with per-row annotations.

    The first `single_columns` columns hold single-level costs; the lowest of
    them is marked in rendered text. `optimal_alphas`, when present, is shown
    in brackets after the last column of each row and `sds` (same shape as
    `cells`) after each value.
    """

    def __new__(cls, title: str, columns: Sequence[str],
                rows: Sequence[str], cells: Sequence[Sequence[float]],
                optimal_alphas: Optional[Sequence[float]]=None,
                sds: Optional[Sequence[Sequence[float]]]=None,
                single_columns: int=0, digits: int=1,
                notes: Sequence[str]=()) -> 'CostTable':
        cells = tuple(tuple(float(c) for c in row) for row in cells)
        if len(cells) != len(rows):
            raise MultalphaContractError(
                'Table `' + title + '` has ' + str(len(rows)) +
                ' row labels but ' + str(len(cells)) + ' rows')
        for row in cells:
            if len(row) != len(columns):
                raise MultalphaContractError(
                    'Table `' + title + '` expects ' + str(len(columns)) +
                    ' cells per row, got ' + str(len(row)))
        if optimal_alphas is not None:
            optimal_alphas = tuple(optimal_alphas)
        if sds is not None:
            sds = tuple(tuple(float(s) for s in row) for row in sds)
        return super(CostTable, cls).__new__(
            cls, title, tuple(columns), tuple(rows), cells, optimal_alphas,
            sds, single_columns, digits, tuple(notes))

    def bold_index(self, row: int) -> Optional[int]:
        """Column of the lowest single-level cost, first on ties."""
        if self.single_columns < 1:
            return None
        singles = self.cells[row][:self.single_columns]
        return singles.index(min(singles))

    def column(self, name: str) -> List[float]:
        i = self.columns.index(name)
        return [row[i] for row in self.cells]


def format_alpha(alpha: float) -> str:
    """Shortest positional representation, never in exponent notation."""
    return np.format_float_positional(float(alpha), trim='-')


def _format_cell(table: CostTable, r: int, c: int) -> str:
    d = table.digits
    text = '{:.{d}f}'.format(table.cells[r][c], d=d)
    if table.sds is not None:
        text += ' ({:.{d}f})'.format(table.sds[r][c], d=d)
    if table.bold_index(r) == c:
        text = '**' + text + '**'
    if table.optimal_alphas is not None and c == len(table.columns) - 1:
        text += ' ({:.2f})'.format(table.optimal_alphas[r])
    return text


def _render_text(table: CostTable) -> str:
    header = [''] + list(table.columns)
    body = [[table.rows[r]] +
            [_format_cell(table, r, c) for c in range(len(table.columns))]
            for r in range(len(table.rows))]

    widths = [max(len(line[i]) for line in [header] + body)
              for i in range(len(header))]

    def fmt(line: List[str]) -> str:
        first = line[0].ljust(widths[0])
        rest = [cell.rjust(w) for cell, w in zip(line[1:], widths[1:])]
        return '  '.join([first] + rest).rstrip()

    lines = [table.title, '', fmt(header)]
    lines.append('-' * len(lines[-1]))
    lines.extend(fmt(line) for line in body)
    if table.notes:
        lines.append('')
        lines.extend(table.notes)
    return '\n'.join(lines) + '\n'


def _render_csv(table: CostTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')

    header = ['row'] + list(table.columns)
    if table.sds is not None:
        header += [c + ' sd' for c in table.columns]
    if table.optimal_alphas is not None:
        header.append('optimal alpha')
    writer.writerow(header)

    for r, label in enumerate(table.rows):
        line = [label] + [repr(v) for v in table.cells[r]]
        if table.sds is not None:
            line += [repr(s) for s in table.sds[r]]
        if table.optimal_alphas is not None:
            line.append(repr(float(table.optimal_alphas[r])))
        writer.writerow(line)
    return out.getvalue()


def render_table(table: CostTable, fmt: str='text') -> str:
    """Render `table` as aligned text or as CSV."""
    if fmt == 'text':
        return _render_text(table)
    elif fmt == 'csv':
        return _render_csv(table)
    raise MultalphaDomainError(
        'Unknown table format `' + str(fmt) + '`; expected one of ' +
        ', '.join(TABLE_FORMATS))


MultiLevelCI = namedtuple(
    'MultiLevelCI',
    ['estimate', 'se', 'sidedness', 'alphas', 'lower', 'upper'])
"""Confidence bounds about one estimate, one pair per alpha level."""


def multilevel_ci(estimate: float, se: float, ladder: Sequence[float],
                  sidedness: str='two') -> MultiLevelCI:
    """Intervals dual to testing at every level of `ladder`.

    One-sided intervals bound the estimate from above only.
    """
    if not (se > 0.0) or not math.isfinite(se):
        raise MultalphaDomainError(
            'Standard error must be positive, got ' + repr(se))
    elif sidedness not in SIDEDNESS:
        raise MultalphaDomainError(
            'Unknown sidedness `' + str(sidedness) + '`; expected one of ' +
            ', '.join(SIDEDNESS))
    if not isinstance(ladder, AlphaLadder):
        ladder = AlphaLadder(ladder)

    lower, upper = [], []
    for a in ladder.levels:
        if sidedness == 'two':
            half = normal_quantile(1.0 - a / 2.0) * se
            lower.append(estimate - half)
        else:
            half = normal_quantile(1.0 - a) * se
            lower.append(-math.inf)
        upper.append(estimate + half)
    return MultiLevelCI(estimate, se, sidedness, ladder.levels,
                        tuple(lower), tuple(upper))


Finding = namedtuple(
    'Finding',
    ['level', 'formal', 'labelled'])
"""Reported finding; `level` is the 0-based index of the most stringent
rejecting alpha, or None."""


def _lower_first(s: str) -> str:
    return s[:1].lower() + s[1:]


def finding_statement(p_value: float, ladder: Sequence[float],
                      labels: Optional[Sequence[str]]=None,
                      subject: str='The test hypothesis') -> Finding:
    """Sentences reporting the most stringent level at which p < alpha."""
    if not (0.0 < p_value <= 1.0):
        raise MultalphaDomainError(
            'P-value must lie in (0, 1], got ' + repr(p_value))
    if not isinstance(ladder, AlphaLadder):
        ladder = AlphaLadder(ladder)
    if labels is not None and len(labels) != ladder.k:
        raise MultalphaContractError(
            'Expected ' + str(ladder.k) + ' evidence labels, got ' +
            str(len(labels)))

    alphas = [format_alpha(a) for a in ladder.levels]
    level = None
    for m, a in enumerate(ladder.levels):
        if p_value < a:
            level = m

    if level is None:
        if ladder.k == 1:
            formal = (subject + ' was not rejected at alpha level ' +
                      alphas[0] + '.')
        else:
            formal = (subject + ' was not rejected at any of the alpha '
                      'levels ' + ', '.join(alphas) + '.')
        labelled = ('Our data provided no evidence against ' +
                    _lower_first(subject) + ' at the levels tested.')
    else:
        formal = subject + ' was rejected at alpha level ' + alphas[level]
        if level < ladder.k - 1:
            formal += (' but was not rejected at alpha level ' +
                       alphas[level + 1])
        formal += '.'
        if labels is None:
            labelled = None
        else:
            qualifier = 'only ' if level < ladder.k - 1 else ''
            labelled = ('Our data provided ' + qualifier + labels[level] +
                        ' evidence against ' + _lower_first(subject) + '.')

    return Finding(level, formal, labelled)


_StarMap = namedtuple(
    '_StarMap',
    ['levels', 'symbols'])


class StarMap(_StarMap):
    """Alpha thresholds and the annotation assigned below each."""

    def __new__(cls, levels: Sequence[float],
                symbols: Sequence[str]) -> 'StarMap':
        ladder = AlphaLadder(levels)
        if len(symbols) != ladder.k:
            raise MultalphaContractError(
                'Expected ' + str(ladder.k) + ' star symbols, got ' +
                str(len(symbols)))
        return super(StarMap, cls).__new__(
            cls, ladder.levels, tuple(symbols))


def star_annotation(p_value: float, star_map: StarMap) -> str:
    """Symbol of the most stringent level with p < alpha, or ''."""
    symbol = ''
    for a, s in zip(star_map.levels, star_map.symbols):
        if p_value < a:
            symbol = s
    return symbol


def star_caption(star_map: StarMap) -> str:
    """Caption explaining each annotation."""
    return '; '.join(
        s + ' statistically significant at alpha level ' + format_alpha(a)
        for a, s in zip(star_map.levels, star_map.symbols))
