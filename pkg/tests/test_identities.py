"""Catalog integrity, expansion oracles and verification behavior."""

import dataclasses
import json

import pytest

from rrweights.identities import (
    ParameterError,
    UnknownIdentityError,
    catalog,
    expand_product_side,
    expand_sum_side,
    get_entry,
    verify,
    verify_entry,
)
from rrweights.partitions import MOD5_23, enumerate_class
from rrweights.series import (
    TruncatedSeries,
    WeightPolynomial,
    pack_monomial,
    rational_term,
    series_equal,
)

T = WeightPolynomial.variable("t")


def _spec(identity_id, M=None):
    return get_entry(identity_id).instantiate(M)


def weighted_class_coefficients(pclass, weight_vars, order):
    """Brute-force oracle: coefficient of q^n as a weight polynomial.

    Enumerates the partition class directly and tallies one monomial per
    partition, so it is independent of the series machinery.
    """
    out = []
    for n in range(order + 1):
        terms = {}
        for p in enumerate_class(pclass, n):
            exps = [0, 0, 0, 0]
            for size, slot in weight_vars.items():
                exps[slot] += p.multiplicity(size)
            mono = pack_monomial(*exps)
            terms[mono] = terms.get(mono, 0) + 1
        out.append(WeightPolynomial(terms))
    return out


class TestCatalogShape:
    def test_ids_unique(self):
        ids = [e.id for e in catalog()]
        assert len(ids) == len(set(ids))

    def test_case_insensitive_lookup(self):
        assert get_entry("RR2").id == "rr2"
        with pytest.raises(UnknownIdentityError):
            get_entry("nope")

    def test_partM_admissible_set(self):
        entry = get_entry("partM")
        assert [M + 1 for M in entry.sweep(14)] == [2, 3, 7, 8, 12, 13]

    def test_twopartM_parameter_domain(self):
        entry = get_entry("twopartM")
        entry.instantiate(7)
        with pytest.raises(ParameterError):
            entry.instantiate(3)
        with pytest.raises(ParameterError):
            entry.instantiate(9)  # 9 = 4 mod 5

    def test_twopart14_admissible_set(self):
        assert get_entry("twopart14").sweep(40) == [4, 6, 14, 16, 24, 26, 34, 36]

    def test_fixed_entry_rejects_parameter(self):
        with pytest.raises(ParameterError):
            get_entry("miniprop").instantiate(3)

    def test_parameter_required(self):
        with pytest.raises(ParameterError):
            get_entry("partM").instantiate()

    def test_statement_kind_labels(self):
        assert get_entry("twopart14").kind_label == "proposition"
        assert get_entry("rr1").kind_label == "classical"


class TestExpansions:
    def test_miniprop_sum_prefix(self):
        got = expand_sum_side(_spec("miniprop"), 5)
        want = TruncatedSeries.from_terms(
            5, {0: 1, 2: T, 3: 1, 4: T * T, 5: T}
        )
        assert got == want

    def test_rr2_product_prefix(self):
        got = expand_product_side(_spec("rr2"), 7)
        want = TruncatedSeries.from_terms(
            7, {0: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 2, 7: 2}
        )
        assert got == want

    def test_miniprop_product_q4_coefficient(self):
        got = expand_product_side(_spec("miniprop"), 4)
        assert got.coefficient(4) == T * T

    def test_order_zero_is_one_for_product_entries(self):
        for entry in catalog():
            spec = entry.instantiate(entry.sweep(12)[0])
            if spec.product is None:
                continue
            assert expand_sum_side(spec, 0) == TruncatedSeries.one(0)
            assert expand_product_side(spec, 0) == TruncatedSeries.one(0)

    def test_twvx14_has_q64_term(self):
        spec = _spec("twvx14thm")
        assert any(term.q_shift == 64 for term in spec.sum_terms)

    def test_tail_truncation_bound(self):
        spec = _spec("rr2")
        shifts = [t.q_shift for t in spec.tail.terms_up_to(60)]
        assert shifts == [m * (m + 1) for m in range(1, 8)]

    def test_sum_side_matches_brute_force_weighted_count(self):
        # independent oracle: weighted enumeration of the product class
        oracle = weighted_class_coefficients(MOD5_23, {2: 0}, 24)
        got = expand_sum_side(_spec("miniprop"), 24)
        for n in range(25):
            assert got.coefficient(n) == oracle[n]


class TestVerification:
    def test_firsttw_passes(self):
        assert verify(_spec("firsttw"), 60).ok

    def test_partM_at_13_passes(self):
        assert verify(_spec("partM", 12), 80).ok

    def test_injected_fault_reports_first_discrepancy(self):
        spec = _spec("miniprop")
        bad_term = rational_term(
            2, {0: T, 1: WeightPolynomial.const(2)}, ((pack_monomial(1), 2),)
        )
        broken = dataclasses.replace(
            spec, sum_terms=(spec.sum_terms[0], bad_term)
        )
        report = verify(broken, 40)
        assert not report.ok
        assert report.discrepancy.degree == 3

    def test_rational_identities_pass(self):
        for name in ("weirdeq", "reorder_twv_a", "reorder_twv_b", "x1_reduction"):
            assert verify(_spec(name), 60).ok, name

    def test_parameterized_helpers_pass(self):
        for name, M in (
            ("weirdeq_general", 5),
            ("weirdeq_general_14", 4),
            ("parts2Meq", 2),
            ("parts1Meq", 6),
        ):
            assert verify(_spec(name, M), 50).ok, (name, M)

    def test_verify_entry_sweeps(self):
        reports = verify_entry(get_entry("twopart14"), max_param=16)
        assert [r.params["M"] for r in reports] == [4, 6, 14, 16]
        assert all(r.ok for r in reports)

    def test_specializations_pass(self):
        for name in ("spec1", "spec3_firsttw", "spec3_secondtw", "spec3_display"):
            assert verify(_spec(name), 60).ok, name
        assert verify(_spec("spec2"), 80).ok


class TestWeightErasure:
    @pytest.mark.parametrize(
        "name,M",
        [
            ("miniprop", None), ("partM", 6), ("partMeq", 5), ("twopartM", 7),
            ("twopart14", 4), ("firsttw", None), ("secondtw", None),
            ("twvthm", None), ("twvx23theorem", None), ("twvx14thm", None),
        ],
    )
    def test_erased_sides_match_classical_baseline(self, name, M):
        spec = _spec(name, M)
        erased = spec.substituted({"t": 1, "w": 1, "v": 1, "x": 1})
        baseline = _spec(spec.baseline)
        order = 40
        assert series_equal(
            expand_sum_side(erased, order), expand_sum_side(baseline, order)
        ).equal
        assert series_equal(
            expand_product_side(erased, order),
            expand_product_side(baseline, order),
        ).equal

    def test_erased_rational_identities_still_balance(self):
        for name, M in (("weirdeq", None), ("parts2Meq", 8), ("reorder_twv_b", None)):
            erased = _spec(name, M).substituted({"t": 1, "w": 1, "v": 1, "x": 1})
            assert verify(erased, 40).ok, name


class TestNonUniqueness:
    def test_firsttw_secondtw_same_series_different_terms(self):
        a = _spec("firsttw")
        b = _spec("secondtw")
        assert a.sum_terms != b.sum_terms
        assert a.product.factor_list(60) == b.product.factor_list(60)
        assert series_equal(
            expand_sum_side(a, 60), expand_sum_side(b, 60)
        ).equal

    def test_spec3_versions_agree(self):
        a = _spec("spec3_firsttw")
        b = _spec("spec3_display")
        assert series_equal(
            expand_sum_side(a, 60), expand_sum_side(b, 60)
        ).equal


class TestPositivityFlags:
    def test_helper_entries_exempt(self):
        exempt = {
            e.id for e in catalog()
            if e.instantiate(e.sweep(8)[0]).positivity_exempt
        }
        assert exempt == {
            "weirdeq", "weirdeq_general", "weirdeq_general_14",
            "parts2Meq", "parts1Meq", "x1_reduction", "spec3_display",
        }

    def test_non_exempt_numerators_nonnegative(self):
        for entry in catalog():
            for M in entry.sweep(14):
                spec = entry.instantiate(M)
                if spec.positivity_exempt:
                    continue
                for term in spec.sum_terms:
                    for coeff in term.numerator.values():
                        assert coeff.nonnegative(), (entry.id, M, str(term))


class TestReports:
    def test_text_line_and_json(self):
        report = verify(_spec("partM", 1), 40)
        assert report.text_line() == "PASS partM[M=1] order=40"
        doc = report.to_json()
        assert doc == {
            "id": "partM", "params": {"M": 1}, "order": 40, "status": "pass",
        }
        json.dumps(doc)

    def test_failure_report_serializes_discrepancy(self):
        spec = _spec("miniprop")
        broken = dataclasses.replace(spec, sum_terms=spec.sum_terms[:1])
        doc = verify(broken, 40).to_json()
        assert doc["status"] == "fail"
        assert doc["discrepancy"]["degree"] == 2
        assert doc["discrepancy"]["lhs"] == "0"
        assert doc["discrepancy"]["rhs"] == "t"
