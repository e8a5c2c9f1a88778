"""Shared fixtures for the `multalpha` test suite."""

import json

import pytest

from multalpha import (
    config)
from multalpha.io_console import (
    set_quiet)


@pytest.fixture(autouse=True)
def fresh_db():
    """Start every test from the bundled defaults with status lines off."""
    config.db.clear()
    set_quiet(True)
    yield config.db
    config.db.clear()
    set_quiet(False)


@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario document to a temporary JSON file."""
    def _write(doc, name='scenario.json'):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding='utf-8')
        return str(path)
    return _write


@pytest.fixture
def table1_cell():
    """Drug-trial scenario: risk difference -0.025 with prevalence 0.5."""
    return {
        'schema_version': 1,
        'name': 'table1-rd-0.025-P-0.5',
        'prevalence': {'kind': 'dichotomous', 'P': 0.5, 'effect': -0.025},
        'alphas': [0.05],
        'costs': {'kind': 'riskdiff'},
        'model': {'kind': 'riskdiff', 'r1': 0.092, 'per_group_n': 1000,
                  'treatment_cost': 707.0, 'hospitalization_cost': 40000.0,
                  'variance': 'binomial'},
    }
