"""JSON scenario files and the schemas of command outputs."""

import json

import jsonschema

from collections import (
    namedtuple)
from jsonschema.exceptions import (
    best_match)
from typing import (
    Any,
    Dict,
    List)

from multalpha.config import (
    load_default_config_file)
from multalpha.costengine import (
    TAIL_SDS,
    CostBreakdown,
    cost_multi_continuous,
    cost_multi_dichotomous,
    cost_single_continuous,
    cost_single_dichotomous)
from multalpha.errors import (
    MultalphaConfigError,
    MultalphaDomainError)
from multalpha.io_files import (
    file_exists,
    read_text)
from multalpha.prng import (
    SeededGenerator)
from multalpha.scenario import (
    AlphaLadder,
    ContinuousPrevalence,
    CostSchedule,
    DichotomousPrevalence,
    EffectDependentCosts,
    random_costs,
    riskdiff_costs,
    surprisal_costs,
    surprisal_level_costs,
    surprisal_schedule)
from multalpha.testmodel import (
    RiskDifferenceModel,
    StandardizedEffectModel)

SCENARIO_SCHEMA = 'scenario.schema.json'
COST_OUTPUT_SCHEMA = 'cost-output.schema.json'
OPTIMUM_OUTPUT_SCHEMA = 'optimum-output.schema.json'

_schemas: Dict[str, Dict[str, Any]] = dict()


def load_schema(name: str) -> Dict[str, Any]:
    """Parse (once) a JSON schema bundled in `configuration/`."""
    if name not in _schemas:
        try:
            _schemas[name] = json.loads(load_default_config_file(name))
        except json.JSONDecodeError as e:
            raise MultalphaConfigError(
                'Unable to parse bundled schema `' + name + '`: ' + str(e))
    return _schemas[name]


def _field_path(error: jsonschema.ValidationError) -> str:
    path = '.'.join(str(p) for p in error.absolute_path)
    return path or '<root>'


def validate_document(doc: Any, schema_name: str, what: str) -> None:
    """Raise a config error naming the offending field of `doc`."""
    validator = jsonschema.Draft7Validator(load_schema(schema_name))
    error = best_match(validator.iter_errors(doc))
    if error is not None:
        raise MultalphaConfigError(
            'Invalid ' + what + ' at `' + _field_path(error) + '`: ' +
            error.message)


_Scenario = namedtuple(
    '_Scenario',
    ['name', 'document', 'prevalence', 'model', 'ladder'])


class Scenario(_Scenario):
    """A validated scenario file: prevalence, test model, ladder and costs."""

    @classmethod
    def from_document(cls, doc: Dict[str, Any]) -> 'Scenario':
        model_doc = doc['model']
        if model_doc['kind'] == 'riskdiff':
            c_t = model_doc['treatment_cost']
            c_h = model_doc['hospitalization_cost']
            if not (c_t < c_h):
                raise MultalphaConfigError(
                    'Invalid scenario at `model.treatment_cost`: must be '
                    'below the hospitalization cost')
            boundary = -c_t / c_h
            if 'boundary' in doc and abs(doc['boundary'] - boundary) > 1e-12:
                raise MultalphaConfigError(
                    'Invalid scenario at `boundary`: risk-difference models '
                    'fix the boundary at -treatment_cost / '
                    'hospitalization_cost = ' + repr(boundary))
            model = RiskDifferenceModel(
                model_doc['r1'], boundary, model_doc['per_group_n'],
                model_doc.get('variance', 'binomial'))
        else:
            model = StandardizedEffectModel(
                float(model_doc['n_total']), doc.get('boundary', 0.0),
                model_doc.get('direction', 1),
                model_doc.get('df_mode', 'normal'))

        prev_doc = doc['prevalence']
        if prev_doc['kind'] == 'dichotomous':
            prev = DichotomousPrevalence(
                prev_doc['P'], prev_doc['effect'],
                prev_doc.get('null_effect'))
        else:
            prev = ContinuousPrevalence(
                prev_doc['mean'], prev_doc['sd'], model.boundary,
                model.direction)

        ladder = AlphaLadder(doc['alphas'])
        costs_doc = doc['costs']
        if costs_doc['kind'] == 'riskdiff' and model_doc['kind'] != 'riskdiff':
            raise MultalphaConfigError(
                'Invalid scenario at `costs.kind`: `riskdiff` costs need a '
                '`riskdiff` model')
        elif costs_doc['kind'] == 'explicit':
            for key in ('c0', 'c1'):
                if len(costs_doc[key]) != ladder.k:
                    raise MultalphaConfigError(
                        'Invalid scenario at `costs.' + key + '`: expected ' +
                        str(ladder.k) + ' costs, one per alpha level')

        return cls(doc.get('name', 'scenario'), doc, prev, model, ladder)

    @property
    def costs_kind(self) -> str:
        return self.document['costs']['kind']

    def is_dichotomous(self) -> bool:
        return isinstance(self.prevalence, DichotomousPrevalence)

    def _riskdiff_base(self) -> EffectDependentCosts:
        model_doc = self.document['model']
        return riskdiff_costs(model_doc['treatment_cost'],
                              model_doc['hospitalization_cost'],
                              self.document['costs'].get('incidence', 1.0))

    def schedule(self) -> CostSchedule:
        """Cumulative costs per level for a dichotomous prevalence or
        effect-independent costs."""
        spec = self.document['costs']
        kind = spec['kind']
        if kind == 'explicit':
            return CostSchedule(spec['c0'], spec['c1'])
        elif kind == 'surprisal':
            return surprisal_costs(self.ladder, spec['c'], spec['c_prime'])
        elif kind == 'random':
            rng = SeededGenerator(spec['seed'])
            return random_costs(rng, self.ladder.k,
                                tuple(spec.get('range0', (0.0, 100.0))),
                                tuple(spec.get('range1', (0.0, 25.0))))

        if not self.is_dichotomous():
            raise MultalphaDomainError(
                'Risk-difference costs depend on the effect; use '
                '`level_costs` for a normal prevalence')
        base = self._riskdiff_base()
        effect = self.prevalence.effect_true
        if not self.model.is_meaningful(effect):
            raise MultalphaDomainError(
                'Risk difference ' + repr(effect) + ' is not beyond the '
                'break-even difference ' + repr(self.model.boundary))
        return surprisal_schedule(
            self.ladder, base.cost0(effect), base.cost1(effect))

    def level_costs(self) -> List[EffectDependentCosts]:
        """Cost differences Delta C(m; e) per level."""
        if self.costs_kind == 'riskdiff':
            return surprisal_level_costs(self.ladder, self._riskdiff_base())
        sched = self.schedule()
        return [EffectDependentCosts.constant(d0, d1)
                for d0, d1 in zip(sched.delta0(), sched.delta1())]

    def top_costs(self) -> EffectDependentCosts:
        """Costs C(k; e) of a single-level test."""
        if self.costs_kind == 'riskdiff':
            return self._riskdiff_base()
        sched = self.schedule()
        return EffectDependentCosts.constant(sched.c0[-1], sched.c1[-1])

    def breakdown(self, tail_sds: float=TAIL_SDS) -> CostBreakdown:
        """Multi-alpha expected cost over the scenario's ladder."""
        if self.is_dichotomous():
            return cost_multi_dichotomous(
                self.prevalence, self.model, self.ladder, self.schedule())
        return cost_multi_continuous(
            self.prevalence, self.model, self.ladder, self.level_costs(),
            tail_sds)

    def single_cost(self, alpha: float, tail_sds: float=TAIL_SDS) -> float:
        """Expected cost of a single-level test at `alpha`."""
        if self.is_dichotomous():
            sched = self.schedule()
            return cost_single_dichotomous(
                self.prevalence, self.model, alpha, sched.c0[-1],
                sched.c1[-1])
        return cost_single_continuous(
            self.prevalence, self.model, alpha, self.top_costs(), tail_sds)


def parse_scenario(text: str, source: str='<string>') -> Scenario:
    """Parse and validate the text of a scenario file."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MultalphaConfigError(
            'Unable to parse scenario ' + source + ' (line ' + str(e.lineno) +
            ', column ' + str(e.colno) + '): ' + e.msg)
    validate_document(doc, SCENARIO_SCHEMA, 'scenario ' + source)
    return Scenario.from_document(doc)


def load_scenario(path: str) -> Scenario:
    if not file_exists(path):
        raise MultalphaConfigError(
            'Scenario file `' + path + '` does not exist')
    return parse_scenario(read_text(path), '`' + path + '`')


def dump_scenario(scenario: Scenario) -> str:
    """Canonical JSON text of a scenario's document."""
    return json.dumps(scenario.document, indent=2, sort_keys=True) + '\n'
