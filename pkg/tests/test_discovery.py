"""Numerator discovery: solving, solution spaces, positivity."""

import json

import pytest

from rrweights.discovery import (
    INCONSISTENT,
    UNDERDETERMINED,
    UNIQUE,
    DiscoveryProblem,
    NumeratorTemplate,
    check_positivity,
    load_problem,
    matches_target,
    solve,
)
from rrweights.identities import get_entry
from rrweights.series import (
    MONO_ONE,
    MONO_T,
    MONO_W,
    WeightPolynomial,
    parse_monomial,
    qpoly_str,
)

T = WeightPolynomial.variable("t")
W = WeightPolynomial.variable("w")


def _spec(identity_id, M=None):
    return get_entry(identity_id).instantiate(M)


class TestSolve:
    def test_degenerate_no_unknowns_pass(self):
        spec = _spec("miniprop")
        problem = DiscoveryProblem(
            spec.sum_terms, spec.tail, (), spec.product, match_order=30
        )
        result = solve(problem)
        assert result.status == UNIQUE
        assert result.numerators == []

    def test_degenerate_no_unknowns_fail(self):
        rr1 = _spec("rr1")
        rr2 = _spec("rr2")
        problem = DiscoveryProblem(
            rr1.sum_terms, rr1.tail, (), rr2.product, match_order=30
        )
        assert solve(problem).status == INCONSISTENT

    def test_miniprop_recovery(self):
        spec = _spec("miniprop")
        template = NumeratorTemplate.uniform(
            2, ((MONO_T, 2),), 1, (MONO_ONE, MONO_T)
        )
        problem = DiscoveryProblem(
            (spec.sum_terms[0],), spec.tail, (template,), spec.product
        )
        result = solve(problem)
        assert result.status == UNIQUE
        assert qpoly_str(result.numerators[0]) == "t + q"
        assert matches_target(problem, result.numerators)

    def test_twvthm_q12_recovery(self):
        spec = _spec("twvthm")
        fixed = tuple(t for i, t in enumerate(spec.sum_terms) if i != 3)
        template = NumeratorTemplate.uniform(
            12, spec.sum_terms[3].denominator, 6,
            tuple(parse_monomial(s) for s in ("1", "v", "v^2")),
        )
        problem = DiscoveryProblem(
            fixed, spec.tail, (template,), spec.product, match_order=31
        )
        result = solve(problem)
        assert result.status == UNIQUE
        assert result.numerators[0] == spec.sum_terms[3].numerator

    def test_firsttw_recovery(self):
        spec = _spec("firsttw")
        templates = (
            NumeratorTemplate.uniform(
                2, ((MONO_T, 2),), 1,
                tuple(parse_monomial(s) for s in ("1", "t", "w")),
            ),
            NumeratorTemplate.uniform(
                6, ((MONO_T, 2), (MONO_W, 3)), 2,
                tuple(parse_monomial(s) for s in ("1", "t", "w", "t^2", "t^3", "w^2")),
            ),
        )
        problem = DiscoveryProblem(
            (spec.sum_terms[0],), spec.tail, templates, spec.product
        )
        result = solve(problem)
        assert result.status == UNIQUE
        assert result.numerators[0] == spec.sum_terms[1].numerator
        assert result.numerators[1] == spec.sum_terms[2].numerator

    def test_first_and_second_tw_share_a_solution_space(self):
        first = _spec("firsttw")
        second = _spec("secondtw")
        monos = tuple(
            parse_monomial(s) for s in ("1", "t", "w", "t^2", "t^3", "w^2")
        )
        templates = (
            NumeratorTemplate.uniform(2, ((MONO_T, 2),), 2, monos),
            NumeratorTemplate.uniform(2, ((MONO_W, 3),), 2, monos),
            NumeratorTemplate.uniform(6, ((MONO_T, 2), (MONO_W, 3)), 2, monos),
        )
        problem = DiscoveryProblem(
            (first.sum_terms[0],), first.tail, templates, first.product
        )
        result = solve(problem)
        assert result.status == UNDERDETERMINED
        assert result.basis
        first_pair = [
            dict(first.sum_terms[1].numerator), {},
            dict(first.sum_terms[2].numerator),
        ]
        second_pair = [
            {}, dict(second.sum_terms[1].numerator),
            dict(second.sum_terms[2].numerator),
        ]
        assert matches_target(problem, first_pair, order=70)
        assert matches_target(problem, second_pair, order=70)

    def test_soundness_at_twice_match_order(self):
        spec = _spec("miniprop")
        template = NumeratorTemplate.uniform(
            2, ((MONO_T, 2),), 1, (MONO_ONE, MONO_T)
        )
        problem = DiscoveryProblem(
            (spec.sum_terms[0],), spec.tail, (template,), spec.product,
            match_order=20,
        )
        result = solve(problem)
        assert matches_target(problem, result.numerators, order=40)

    def test_default_match_order_is_unknowns_plus_ten(self):
        template = NumeratorTemplate.uniform(
            2, ((MONO_T, 2),), 1, (MONO_ONE, MONO_T)
        )
        problem = DiscoveryProblem((), None, (template,), _spec("rr2").product)
        assert problem.resolved_order() == 4 + 10


class TestPositivity:
    def test_positive_numerator(self):
        ok, witness = check_positivity({0: T, 1: W})
        assert ok and witness is None

    def test_negative_constant_witness(self):
        ok, witness = check_positivity({0: W - 1})
        assert not ok
        degree, mono, coeff = witness
        assert (degree, mono, coeff) == (0, MONO_ONE, -1)

    def test_parts2Meq_boundary(self):
        at6 = _spec("parts2Meq", 6).rhs_terms[2].numerator
        ok, _ = check_positivity(at6)
        assert ok
        at5 = _spec("parts2Meq", 5).rhs_terms[2].numerator
        ok, witness = check_positivity(at5)
        assert not ok and witness[2] < 0


class TestProblemFiles:
    def test_load_and_solve_roundtrip(self):
        doc = {
            "target": {"catalog_id": "miniprop"},
            "fixed": {
                "catalog_id": "miniprop",
                "term_indices": [0],
                "include_tail": True,
            },
            "templates": [
                {
                    "q_shift": 2,
                    "denominator": [["t", 2]],
                    "max_degree": 1,
                    "monomials": ["1", "t"],
                }
            ],
            "match_order": 20,
        }
        problem = load_problem(json.dumps(doc))
        result = solve(problem)
        assert result.status == UNIQUE
        assert qpoly_str(result.numerators[0]) == "t + q"

    def test_rational_target_rejected(self):
        doc = {
            "target": {"catalog_id": "weirdeq"},
            "fixed": {"catalog_id": "weirdeq"},
            "templates": [],
        }
        with pytest.raises(ValueError):
            load_problem(doc)
