"""SVG figures of scenarios, research-scenario curves and confidence intervals.

All figures are rendered to SVG text with a fixed hash salt and without a
date stamp, so rendering the same input twice yields identical bytes.
"""

import io
import math

import matplotlib
matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from typing import (  # noqa: E402
    Optional,
    Sequence)

from multalpha.errors import (  # noqa: E402
    MultalphaDomainError)
from multalpha.report import (  # noqa: E402
    MultiLevelCI,
    format_alpha)
from multalpha.scenario import (  # noqa: E402
    ContinuousPrevalence)
from multalpha.specfun import (  # noqa: E402
    SQRT2PI)
from multalpha.studies import (  # noqa: E402
    Fig1Data)

SVG_HASH_SALT = 'multalpha'
_RC = {
    'svg.hashsalt': SVG_HASH_SALT,
    'svg.fonttype': 'path',
    'font.family': 'DejaVu Sans',
    'axes.unicode_minus': False,
}
_LINESTYLES = ('--', '-', ':', '-.')


def _to_svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format='svg', metadata={'Date': None})
    plt.close(fig)
    return buf.getvalue()


def _normal_pdf(x: np.ndarray, mean: float, sd: float) -> np.ndarray:
    return np.exp(-0.5 * ((x - mean) / sd) ** 2) / (sd * SQRT2PI)


def plot_scenario(prev: ContinuousPrevalence, model, alphas: Sequence[float],
                  effect: Optional[float]=None, points: int=401) -> str:
    """Prevalence density, sampling distribution and error rates.

    The sampling distribution of the observed effect is drawn at `effect`
    (the boundary by default); each alpha adds one critical-value line with
    id `critical-<i>` and its Type I and Type II error-rate curves.
    """
    if not alphas:
        raise MultalphaDomainError('At least one alpha level is required')
    if effect is None:
        effect = model.boundary

    lo, hi = prev.integration_domain(4.0, model.effect_range)
    spread = 4.0 * model.sampling_sd(effect)
    lo = max(min(lo, effect - spread), model.effect_range[0])
    hi = min(max(hi, effect + spread), model.effect_range[1])
    # open interval: risk-difference models are undefined on the range ends
    pad = 1e-9 * (hi - lo)
    grid = np.linspace(lo + pad, hi - pad, points)

    with matplotlib.rc_context(_RC):
        fig, (ax, ax_rates) = plt.subplots(
            2, 1, figsize=(7.0, 6.0), sharex=True, constrained_layout=True)

        ax.plot(grid, [prev.density_at(e) for e in grid], color='black',
                label='prevalence of effects')
        ax.plot(grid, _normal_pdf(grid, effect, model.sampling_sd(effect)),
                color='grey', label='sampling distribution at ' +
                format_alpha(round(effect, 6)))
        ax.axvline(model.boundary, color='black', linewidth=0.6,
                   gid='boundary')

        for i, a in enumerate(alphas):
            style = _LINESTYLES[i % len(_LINESTYLES)]
            ax.axvline(model.critical_value(a), color='tab:red',
                       linestyle=style, gid='critical-' + str(i),
                       label='critical value, alpha = ' + format_alpha(a))
            curve = model.rejection_curve(a)
            ax_rates.plot(grid, [curve.type_one(e) for e in grid],
                          color='tab:red', linestyle=style,
                          label='Type I rate, alpha = ' + format_alpha(a))
            ax_rates.plot(grid, [curve.type_two(e) for e in grid],
                          color='tab:blue', linestyle=style,
                          label='Type II rate, alpha = ' + format_alpha(a))

        ax.set_ylabel('density')
        ax.legend(loc='upper right', fontsize=7)
        ax_rates.set_xlabel('effect')
        ax_rates.set_ylabel('error rate')
        ax_rates.set_ylim(0.0, 1.0)
        ax_rates.legend(loc='upper right', fontsize=7)
        return _to_svg(fig)


def plot_fig1(data: Fig1Data) -> str:
    """Densities, per-group sample sizes and their distribution."""
    with matplotlib.rc_context(_RC):
        fig, (ax_a, ax_b, ax_c) = plt.subplots(
            1, 3, figsize=(12.0, 3.6), constrained_layout=True)

        ax_a.plot(data.effects, data.true_density, color='black',
                  label='true effects')
        ax_a.plot(data.effects, data.anticipated_density, color='tab:blue',
                  linestyle='--', label='anticipated effects')
        ax_a.plot(data.effects, data.sampling_density, color='grey',
                  label='sampling at boundary, n = ' +
                  str(data.design_group_size) + ' per group')
        ax_a.axvline(data.critical, color='tab:red', linestyle=':',
                     gid='critical-0')
        ax_a.set_xlabel('standardized effect')
        ax_a.set_ylabel('density')
        ax_a.legend(loc='upper left', fontsize=7)

        ax_b.plot(data.anticipated, data.planned_sizes, color='black',
                  label='planned')
        ax_b.step(data.anticipated, data.required_sizes, color='tab:blue',
                  where='mid', linestyle='--', label='rounded up')
        ax_b.set_xlabel('anticipated effect')
        ax_b.set_ylabel('group size')
        ax_b.legend(loc='upper right', fontsize=7)

        ax_c.plot(data.sizes, data.size_density, color='black')
        ax_c.set_xlabel('group size')
        ax_c.set_ylabel('density')
        return _to_svg(fig)


def plot_multilevel_ci(ci: MultiLevelCI,
                       labels: Optional[Sequence[str]]=None) -> str:
    """Nested intervals, thickest for the least stringent level.

    Level m (0-based) of k is drawn with line width 1 + 2 (k - 1 - m) and
    id `ci-<m>`.
    """
    k = len(ci.alphas)
    if labels is not None and len(labels) != k:
        raise MultalphaDomainError(
            'Expected ' + str(k) + ' labels, got ' + str(len(labels)))

    widest = max(u - ci.estimate for u in ci.upper)
    left = ci.estimate - 1.2 * widest
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 1.6), constrained_layout=True)
        for m, (a, lower, upper) in enumerate(
                zip(ci.alphas, ci.lower, ci.upper)):
            start = left if math.isinf(lower) else lower
            text = format_alpha(a) if labels is None else labels[m]
            ax.plot([start, upper], [0.0, 0.0], color='black',
                    linewidth=1.0 + 2.0 * (k - 1 - m), solid_capstyle='butt',
                    gid='ci-' + str(m), label=text)
        ax.plot([ci.estimate], [0.0], marker='o', color='tab:red',
                gid='estimate')
        ax.set_yticks([])
        ax.set_xlim(left, ci.estimate + 1.2 * widest)
        ax.set_xlabel('effect (' + ci.sidedness + '-sided)')
        ax.legend(loc='upper right', fontsize=7, ncol=k)
        return _to_svg(fig)
