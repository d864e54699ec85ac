"""Numerator discovery by exact linear algebra.

Given a sum-side skeleton whose unknown numerators range over caller-chosen
weight monomials per q-degree, expansion is linear in the unknown integer
coefficients.  Matching coefficients against a target product up to a
chosen order yields a linear system, solved exactly over rationals; the
result is a unique solution, a description of the solution space, or an
inconsistency.  Positivity of numerator polynomials is checked separately.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .identities import get_entry
from .series import (
    TruncatedSeries,
    WeightPolynomial,
    parse_monomial,
    qpoly_add,
    qpoly_str,
    rational_term,
)

UNIQUE = "unique"
UNDERDETERMINED = "underdetermined"
INCONSISTENT = "inconsistent"
NON_INTEGRAL = "non-integral"


@dataclass
class NumeratorTemplate:
    """Unknown numerator slot: q^q_shift * (unknown poly) / prod(1 - mono*q^e).

    `allowed[d]` lists the weight monomials permitted at q-degree d.
    """

    q_shift: int
    denominator: tuple
    allowed: tuple

    @classmethod
    def uniform(cls, q_shift, denominator, max_degree, monomials):
        monos = tuple(dict.fromkeys(monomials))
        return cls(
            q_shift, tuple(denominator),
            tuple(monos for _ in range(max_degree + 1)),
        )

    def unknown_count(self):
        return sum(len(monos) for monos in self.allowed)


@dataclass
class DiscoveryProblem:
    fixed_terms: tuple
    fixed_tail: object
    templates: tuple
    target: object                 # ProductSide
    match_order: int | None = None

    def unknown_count(self):
        return sum(t.unknown_count() for t in self.templates)

    def resolved_order(self):
        # overdetermination guard: ten extra degrees past the unknown count
        if self.match_order is not None:
            return self.match_order
        return self.unknown_count() + 10


@dataclass
class SolveResult:
    status: str
    columns: tuple                 # (template_index, degree, monomial) per unknown
    solution: list | None = None   # Fractions, one per unknown
    basis: list | None = None      # nullspace vectors (Fractions)
    numerators: list | None = None # q-polys per template when integral
    detail: str = ""

    def to_json(self):
        out = {"status": self.status, "detail": self.detail}
        if self.numerators is not None:
            out["numerators"] = [qpoly_str(num) for num in self.numerators]
        if self.basis is not None:
            out["solution_space_dimension"] = len(self.basis)
        return out


def _fixed_series(problem, order):
    total = TruncatedSeries.zero(order)
    for term in problem.fixed_terms:
        total = total + term.expand(order)
    if problem.fixed_tail is not None:
        for term in problem.fixed_tail.terms_up_to(order):
            total = total + term.expand(order)
    return total


def _columns(problem, order):
    """Unknowns and the series each unit coefficient contributes."""
    labels = []
    series = []
    for ti, tmpl in enumerate(problem.templates):
        base = rational_term(tmpl.q_shift, 1, tmpl.denominator).expand(order)
        for degree, monos in enumerate(tmpl.allowed):
            shifted = base.shifted(degree).truncated(order)
            for mono in monos:
                labels.append((ti, degree, mono))
                series.append(shifted.scaled_monomial(mono))
    return labels, series


def _row_space(rhs, columns, order):
    """One equation per (q-degree, weight monomial) that appears anywhere."""
    rows = []
    for n in range(order + 1):
        monos = set(rhs.coeffs[n].terms)
        for col in columns:
            monos.update(col.coeffs[n].terms)
        for mono in sorted(monos):
            coeffs = [col.coeffs[n].terms.get(mono, 0) for col in columns]
            rows.append((coeffs, rhs.coeffs[n].terms.get(mono, 0)))
    return rows


def _eliminate(rows, ncols):
    """Gauss-Jordan over exact rationals; returns (pivots, reduced, consistent)."""
    matrix = [
        [Fraction(c) for c in coeffs] + [Fraction(rhs)] for coeffs, rhs in rows
    ]
    pivots = []
    row_at = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_at, len(matrix)):
            if matrix[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        matrix[row_at], matrix[pivot] = matrix[pivot], matrix[row_at]
        inv = 1 / matrix[row_at][col]
        matrix[row_at] = [v * inv for v in matrix[row_at]]
        for r in range(len(matrix)):
            if r != row_at and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [
                    a - factor * b for a, b in zip(matrix[r], matrix[row_at])
                ]
        pivots.append(col)
        row_at += 1
    consistent = all(
        any(row[:ncols]) or not row[ncols] for row in matrix
    )
    return pivots, matrix[:row_at], consistent


def numerators_from_vector(problem, labels, vector):
    """Assemble per-template q-polynomials from a solution vector."""
    nums = [dict() for _ in problem.templates]
    for (ti, degree, mono), value in zip(labels, vector):
        if not value:
            continue
        nums[ti] = qpoly_add(
            nums[ti], {degree: WeightPolynomial.monomial(mono, int(value))}
        )
    return nums


def assembled_terms(problem, numerators):
    terms = list(problem.fixed_terms)
    for tmpl, num in zip(problem.templates, numerators):
        if num:
            terms.append(rational_term(tmpl.q_shift, num, tmpl.denominator))
    return tuple(terms)


def matches_target(problem, numerators, order=None):
    """Plug numerators back in and compare against the target expansion."""
    order = order if order is not None else 2 * problem.resolved_order()
    total = TruncatedSeries.zero(order)
    for term in assembled_terms(problem, numerators):
        total = total + term.expand(order)
    if problem.fixed_tail is not None:
        for term in problem.fixed_tail.terms_up_to(order):
            total = total + term.expand(order)
    return total == problem.target.expand(order)


def solve(problem):
    """Solve for the unknown numerator coefficients by coefficient matching."""
    order = problem.resolved_order()
    labels, columns = _columns(problem, order)
    rhs = problem.target.expand(order) - _fixed_series(problem, order)
    if not labels:
        ok = rhs.is_zero()
        return SolveResult(
            UNIQUE if ok else INCONSISTENT, (), [], [], [],
            "no unknowns: fixed terms "
            + ("match the target" if ok else "do not match the target"),
        )
    rows = _row_space(rhs, columns, order)
    pivots, reduced, consistent = _eliminate(rows, len(labels))
    if not consistent:
        return SolveResult(
            INCONSISTENT, tuple(labels),
            detail="coefficient system has no solution",
        )
    ncols = len(labels)
    particular = [Fraction(0)] * ncols
    for row, col in zip(reduced, pivots):
        particular[col] = row[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        if all(v.denominator == 1 for v in particular):
            return SolveResult(
                UNIQUE, tuple(labels), particular, [],
                numerators_from_vector(problem, labels, particular),
                "unique integral solution",
            )
        return SolveResult(
            NON_INTEGRAL, tuple(labels), particular, [],
            detail="unique solution is not integral",
        )
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, col in zip(reduced, pivots):
            vec[col] = -row[f]
        basis.append(vec)
    numerators = None
    if all(v.denominator == 1 for v in particular):
        numerators = numerators_from_vector(problem, labels, particular)
    return SolveResult(
        UNDERDETERMINED, tuple(labels), particular, basis, numerators,
        f"solution space has dimension {len(basis)}",
    )


def check_positivity(numerator):
    """True iff every coefficient is >= 0; else a witness (degree, mono, coeff)."""
    for degree in sorted(numerator):
        bad = numerator[degree].first_negative()
        if bad is not None:
            return False, (degree, bad[0], bad[1])
    return True, None


# ---------------------------------------------------------------------------
# Declarative problem files (JSON documents).
# ---------------------------------------------------------------------------

def _entry_spec(ref):
    entry = get_entry(ref["catalog_id"])
    return entry.instantiate(ref.get("param"))


def load_problem(doc):
    """Build a DiscoveryProblem from a problem document (dict or JSON text).

    Shape:
      {"target": {"catalog_id": ..., "param"?: M},
       "fixed": {"catalog_id": ..., "param"?: M,
                  "term_indices": [..] | "all", "include_tail": bool},
       "templates": [{"q_shift": int, "denominator": [["t", 2], ...],
                      "max_degree": int, "monomials": ["1", "v", ...]}],
       "match_order"?: int}
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    target_spec = _entry_spec(doc["target"])
    if target_spec.product is None:
        raise ValueError("discovery target must have a product side")
    fixed = doc["fixed"]
    fixed_spec = _entry_spec(fixed)
    indices = fixed.get("term_indices", "all")
    if indices == "all":
        fixed_terms = tuple(fixed_spec.sum_terms)
    else:
        fixed_terms = tuple(fixed_spec.sum_terms[i] for i in indices)
    fixed_tail = fixed_spec.tail if fixed.get("include_tail", True) else None
    templates = []
    for tmpl in doc["templates"]:
        dens = tuple(
            (parse_monomial(mono), int(exp)) for mono, exp in tmpl["denominator"]
        )
        monos = [parse_monomial(m) for m in tmpl["monomials"]]
        templates.append(
            NumeratorTemplate.uniform(
                int(tmpl["q_shift"]), dens, int(tmpl["max_degree"]), monos
            )
        )
    return DiscoveryProblem(
        fixed_terms, fixed_tail, tuple(templates), target_spec.product,
        doc.get("match_order"),
    )
