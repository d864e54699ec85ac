"""Brute-force refinement checks and reproduction of the bijection tables.

Each refinement statement pairs a congruence-restricted product class
(with watched part sizes) against a gap-2 class carrying hand-coded case
rules keyed on the number of parts.  Three independent counts must agree
signature by signature: direct enumeration of the product class, case
classification of the gap-2 class, and coefficient extraction from the
linked identity's sum side.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .identities import expand_sum_side, get_entry
from .partitions import (
    DIFF2,
    DIFF2_STAR,
    MOD5_14,
    MOD5_23,
    Partition,
    PartitionClass,
    col,
    col_star,
    enumerate_class,
)
from .series import unpack_monomial

_VAR_INDEX = {"t": 0, "w": 1, "v": 2, "x": 3}


class ClassificationGapError(ValueError):
    """Some partition is claimed by no case rule."""


class AmbiguousClassificationError(ValueError):
    """Some partition is claimed by more than one case rule."""


class ExtractionError(ValueError):
    """A series coefficient carries an unexpected weight variable."""


class TableError(ValueError):
    """Table rows cannot be paired (unequal class sizes)."""


class UnknownStatementError(KeyError):
    """No refinement statement with the requested id."""


@dataclass(frozen=True)
class CaseRule:
    """Claims partitions with lo <= #parts <= hi (hi None means no bound).

    `classify(lam, image)` returns the signature tuple, or None when the
    partition is excluded from the refined set (filter-style statements).
    """

    lo: int
    hi: int | None
    classify: callable

    def claims(self, m):
        return self.lo <= m and (self.hi is None or m <= self.hi)


@dataclass
class RefinementStatement:
    id: str
    params: dict
    product_class: PartitionClass
    watched: tuple
    diff_class: PartitionClass
    rules: tuple
    linked_id: str
    linked_param: int | None = None
    linked_subs: dict | None = None
    series_vars: tuple = ()   # weight-variable names aligned with `watched`
    n_min: int = 0

    def label(self):
        if not self.params:
            return self.id
        bound = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.id}[{bound}]"


def count_product_refined(stmt, n):
    """Signature -> count over the product class, by direct enumeration."""
    out = {}
    for mu in enumerate_class(stmt.product_class, n):
        sig = tuple(mu.multiplicity(s) for s in stmt.watched)
        out[sig] = out.get(sig, 0) + 1
    return out


def classify_diff_partition(stmt, lam):
    """Apply the unique claiming case rule; None means excluded."""
    m = len(lam)
    claimed = [rule for rule in stmt.rules if rule.claims(m)]
    if not claimed:
        raise ClassificationGapError(
            f"{stmt.label()}: no case rule claims {lam} with {m} parts"
        )
    if len(claimed) > 1:
        raise AmbiguousClassificationError(
            f"{stmt.label()}: {len(claimed)} case rules claim {lam}"
        )
    image = _image(stmt, lam)
    return claimed[0].classify(lam, image)


def _image(stmt, lam):
    return col_star(lam) if stmt.diff_class.kind == "diff2_star" else col(lam)


def count_diff_refined(stmt, n):
    """Signature -> count over the gap-2 class via the case rules."""
    out = {}
    for lam in enumerate_class(stmt.diff_class, n):
        sig = classify_diff_partition(stmt, lam)
        if sig is None:
            continue
        out[sig] = out.get(sig, 0) + 1
    return out


def series_counts(stmt, order):
    """Per-n signature counts extracted from the linked sum side."""
    spec = get_entry(stmt.linked_id).instantiate(stmt.linked_param)
    if stmt.linked_subs:
        spec = spec.substituted(stmt.linked_subs)
    series = expand_sum_side(spec, order)
    var_slots = tuple(_VAR_INDEX[v] for v in stmt.series_vars)
    per_n = []
    for n in range(order + 1):
        counts = {}
        for mono, c in series.coeffs[n].terms.items():
            exps = unpack_monomial(mono)
            sig = tuple(exps[i] for i in var_slots)
            for i, e in enumerate(exps):
                if e and i not in var_slots:
                    raise ExtractionError(
                        f"{stmt.label()}: unexpected weight variable in "
                        f"coefficient of q^{n}"
                    )
            counts[sig] = counts.get(sig, 0) + c
        per_n.append(counts)
    return per_n


@dataclass
class RefinementReport:
    id: str
    params: dict
    n_min: int
    n_max: int
    ok: bool
    failure: str | None = None

    def text_line(self):
        label = self.id
        if self.params:
            bound = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            label = f"{label}[{bound}]"
        if self.ok:
            return (
                f"PASS {label} n={self.n_min}..{self.n_max} triple agreement"
            )
        return f"FAIL {label}: {self.failure}"

    def to_json(self):
        out = {
            "id": self.id,
            "params": dict(sorted(self.params.items())),
            "n_min": self.n_min,
            "n_max": self.n_max,
            "status": "pass" if self.ok else "fail",
        }
        if self.failure:
            out["failure"] = self.failure
        return out


def _first_difference(a, b):
    for sig in sorted(set(a) | set(b)):
        if a.get(sig, 0) != b.get(sig, 0):
            return sig, a.get(sig, 0), b.get(sig, 0)
    return None


def check_refinement(stmt, n_max):
    """Triple agreement for n_min..n_max; stops at the first mismatch."""
    series = series_counts(stmt, n_max)
    for n in range(stmt.n_min, n_max + 1):
        product = count_product_refined(stmt, n)
        diff = count_diff_refined(stmt, n)
        if product != diff:
            sig, a, b = _first_difference(product, diff)
            return RefinementReport(
                stmt.id, stmt.params, stmt.n_min, n_max, False,
                f"n={n} signature {sig}: product {a} vs case rules {b}",
            )
        if diff != series[n]:
            sig, a, b = _first_difference(diff, series[n])
            return RefinementReport(
                stmt.id, stmt.params, stmt.n_min, n_max, False,
                f"n={n} signature {sig}: case rules {a} vs series {b}",
            )
    return RefinementReport(stmt.id, stmt.params, stmt.n_min, n_max, True)


# ---------------------------------------------------------------------------
# Tables.
# ---------------------------------------------------------------------------

@dataclass
class TableRow:
    mu: Partition
    lam: Partition
    image: Partition
    signature: tuple


def build_table(stmt, n, restrict=None):
    """Pair product-side and diff-side partitions sharing a signature.

    Within a signature class both sides are taken in decreasing-lex order
    and paired positionally (classes in the reproduced tables are usually
    singletons, where this is plain signature pairing).  Rows come out
    sorted by decreasing-lex mu.
    """
    by_sig_mu = {}
    for mu in enumerate_class(stmt.product_class, n):
        sig = tuple(mu.multiplicity(s) for s in stmt.watched)
        by_sig_mu.setdefault(sig, []).append(mu)
    by_sig_lam = {}
    for lam in enumerate_class(stmt.diff_class, n):
        sig = classify_diff_partition(stmt, lam)
        if sig is None:
            continue
        by_sig_lam.setdefault(sig, []).append((lam, _image(stmt, lam)))
    if restrict is not None:
        restrict = tuple(restrict)
        by_sig_mu = {restrict: by_sig_mu.get(restrict, [])}
        by_sig_lam = {restrict: by_sig_lam.get(restrict, [])}
    rows = []
    for sig in sorted(set(by_sig_mu) | set(by_sig_lam)):
        mus = by_sig_mu.get(sig, [])
        lams = by_sig_lam.get(sig, [])
        if len(mus) != len(lams):
            raise TableError(
                f"{stmt.label()} n={n}: signature {sig} has {len(mus)} "
                f"product partitions vs {len(lams)} difference partitions"
            )
        mus = sorted(mus, key=lambda p: p.parts, reverse=True)
        lams = sorted(lams, key=lambda pair: pair[0].parts, reverse=True)
        for mu, (lam, image) in zip(mus, lams):
            rows.append(TableRow(mu, lam, image, sig))
    rows.sort(key=lambda r: r.mu.parts, reverse=True)
    return rows


def signature_str(sig):
    return "(" + ",".join(str(v) for v in sig) + ")"


def table_text(rows):
    header = ("mu", "lambda", "col", "signature")
    cells = [header] + [
        (str(r.mu), str(r.lam), str(r.image), signature_str(r.signature))
        for r in rows
    ]
    widths = [max(len(row[i]) for row in cells) for i in range(4)]
    lines = [
        " | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in cells
    ]
    return "\n".join(lines) + "\n"


def table_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(["mu", "lambda", "col", "signature"])
    for r in rows:
        writer.writerow(
            [r.mu.exp_str(), r.lam.exp_str(), r.image.exp_str(),
             signature_str(r.signature)]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# The statements.
# ---------------------------------------------------------------------------

def _ones(image):
    return image.multiplicity(1)


def _stmt_generalminithm(M):
    P = M + 1

    def one_part(lam, image):
        N = lam.parts[0]
        r = N % P
        if r == 1:
            return (N // P - 1,)
        return (N // P,)

    rules = (
        CaseRule(0, 0, lambda lam, image: (0,)),
        CaseRule(1, 1, one_part),
        CaseRule(2, M, lambda lam, image: (_ones(image) // P,)),
        CaseRule(P, None, lambda lam, image: (image.multiplicity(P),)),
    )
    return RefinementStatement(
        "generalminithm", {"M": M}, MOD5_23, (P,), DIFF2_STAR, rules,
        "partM", M, None, ("t",),
    )


def _stmt_generalmini14thm(M):
    P = M + 1
    rules = (
        CaseRule(0, 0, lambda lam, image: (0,)),
        CaseRule(1, 1, lambda lam, image: (lam.parts[0] // P,)),
        CaseRule(2, M, lambda lam, image: (_ones(image) // P,)),
        CaseRule(P, None, lambda lam, image: (image.multiplicity(P),)),
    )
    return RefinementStatement(
        "generalmini14thm", {"M": M}, MOD5_14, (P,), DIFF2, rules,
        "partMeq", M, None, ("t",),
    )


def _stmt_general2partcor(M):
    def one_part(lam, image):
        N = lam.parts[0]
        if N % 2 == 0:
            return (0, N // 2)
        return (0, (N - 3) // 2)

    def two_parts(lam, image):
        j = image.multiplicity(2)
        ones = _ones(image)
        k, r = divmod(ones, M)
        if r in (M - 3, M - 6):
            k += 1
        return (k, j)

    rules = (
        CaseRule(0, 0, lambda lam, image: (0, 0)),
        CaseRule(1, 1, one_part),
        CaseRule(2, 2, two_parts),
        CaseRule(
            3, M - 1,
            lambda lam, image: (_ones(image) // M, image.multiplicity(2)),
        ),
        CaseRule(
            M, None,
            lambda lam, image: (
                image.multiplicity(M), image.multiplicity(2)
            ),
        ),
    )
    return RefinementStatement(
        "general2partcor", {"M": M}, MOD5_23, (M, 2), DIFF2_STAR, rules,
        "twopartM", M, None, ("w", "t"),
    )


def _stmt_general2part14cor(M):
    h = M // 2

    def two_parts(lam, image):
        j = _ones(image)
        twos = image.multiplicity(2)
        k, r = divmod(twos, h)
        if r == h - 2:
            k += 1
        return (k, j)

    rules = (
        CaseRule(0, 0, lambda lam, image: (0, 0)),
        CaseRule(1, 1, lambda lam, image: (0, lam.parts[0])),
        CaseRule(2, 2, two_parts),
        CaseRule(
            3, M - 1,
            lambda lam, image: (image.multiplicity(2) // h, _ones(image)),
        ),
        CaseRule(
            M, None,
            lambda lam, image: (image.multiplicity(M), _ones(image)),
        ),
    )
    return RefinementStatement(
        "general2part14cor", {"M": M}, MOD5_14, (M, 1), DIFF2, rules,
        "twopart14", M, None, ("w", "t"),
    )


def _stmt_firstbigcomb():
    def one_part(lam, image):
        ones = _ones(image)
        if ones % 2 == 0:
            return (ones // 2 + 1, 0, 0)
        return ((ones - 1) // 2, 1, 0)

    def two_parts(lam, image):
        k = image.multiplicity(2)
        ones = _ones(image)
        r = ones % 3
        if r == 0:
            return (k, ones // 3 + 2, 0)
        if r == 2:
            return (k, (ones - 2) // 3, 0)
        return (k, (ones - 1) // 3, 1)

    def three_parts(lam, image):
        k = image.multiplicity(2)
        j = image.multiplicity(3)
        a, r = divmod(_ones(image), 7)
        if r == 2:
            return (k, j, a + 2)
        if r == 3:
            return (k, j, a + 1)
        return (k, j, a)

    rules = (
        CaseRule(0, 0, lambda lam, image: (0, 0, 0)),
        CaseRule(1, 1, one_part),
        CaseRule(2, 2, two_parts),
        CaseRule(3, 3, three_parts),
        CaseRule(
            4, 6,
            lambda lam, image: (
                image.multiplicity(2), image.multiplicity(3),
                _ones(image) // 7,
            ),
        ),
        CaseRule(
            7, None,
            lambda lam, image: (
                image.multiplicity(2), image.multiplicity(3),
                image.multiplicity(7),
            ),
        ),
    )
    return RefinementStatement(
        "firstbigcomb", {}, MOD5_23, (2, 3, 7), DIFF2_STAR, rules,
        "twvthm", None, None, ("t", "w", "v"),
    )


def _stmt_bigcomb():
    def two_parts(lam, image):
        k = _ones(image)
        b = image.multiplicity(2)
        if b % 2 == 0:
            return (k, b // 2 + 1, 0)
        return (k, (b - 1) // 2, 1)

    def three_parts(lam, image):
        k = _ones(image)
        a = image.multiplicity(3)
        b = image.multiplicity(2)
        if a % 2 == 0:
            j = b // 2 if b % 2 == 0 else (b - 1) // 2
            return (k, j, a // 2)
        if b % 2 == 0:
            return (k, b // 2, (a + 3) // 2)
        return (k, (b - 1) // 2, (a - 1) // 2)

    rules = (
        CaseRule(0, 0, lambda lam, image: (0, 0, 0)),
        CaseRule(1, 1, lambda lam, image: (lam.parts[0], 0, 0)),
        CaseRule(2, 2, two_parts),
        CaseRule(3, 3, three_parts),
        CaseRule(
            4, 5,
            lambda lam, image: (
                _ones(image), image.multiplicity(4),
                image.multiplicity(3) // 2,
            ),
        ),
        CaseRule(
            6, None,
            lambda lam, image: (
                _ones(image), image.multiplicity(4), image.multiplicity(6),
            ),
        ),
    )
    return RefinementStatement(
        "bigcomb", {}, MOD5_14, (1, 4, 6), DIFF2, rules,
        "twvx14thm", None, {"x": 1}, ("t", "w", "v"),
    )


def _stmt_spec1():
    def accept(cond):
        return lambda lam, image, _c=cond: () if _c(lam, image) else None

    rules = (
        CaseRule(0, 0, lambda lam, image: ()),
        CaseRule(1, 1, accept(lambda lam, image: lam.parts[0] % 2 == 0)),
        CaseRule(2, 2, accept(lambda lam, image: _ones(image) == 1)),
        CaseRule(
            3, 3,
            accept(
                lambda lam, image: image.multiplicity(3) == 0
                and _ones(image) % 7 not in (3, 4)
            ),
        ),
        CaseRule(
            4, 4,
            accept(
                lambda lam, image: image.multiplicity(4) == 0
                and image.multiplicity(3) <= 2
                and _ones(image) % 7 in (2, 3, 4)
            ),
        ),
        CaseRule(
            5, 7,
            accept(
                lambda lam, image: image.multiplicity(3) == 0
                and image.multiplicity(4) <= 1
            ),
        ),
        CaseRule(
            8, None,
            accept(
                lambda lam, image: image.multiplicity(3) == 0
                and image.multiplicity(8) == 0
            ),
        ),
    )
    return RefinementStatement(
        "spec1", {},
        PartitionClass.congruence(5, (2, 3), forbidden=(3, 8)),
        (), DIFF2_STAR, rules, "spec1", None, None, (),
    )


def _stmt_spec2():
    rules = (
        CaseRule(0, 4, lambda lam, image: None),
        CaseRule(
            5, 8,
            lambda lam, image: ()
            if _ones(image) == 0
            and image.multiplicity(4) == 0
            and image.multiplicity(2) <= 2
            and image.multiplicity(3) <= 2
            else None,
        ),
        CaseRule(
            9, None,
            lambda lam, image: ()
            if all(image.multiplicity(s) == 0 for s in (1, 4, 6, 9))
            else None,
        ),
    )
    return RefinementStatement(
        "spec2", {},
        PartitionClass.congruence(5, (1, 4), forbidden=(1, 4, 6, 9)),
        (), DIFF2, rules, "spec2", None, None, (), n_min=27,
    )


def _stmt_spec3():
    rules = (
        CaseRule(0, 0, lambda lam, image: ()),
        CaseRule(
            1, 1, lambda lam, image: () if lam.parts[0] != 3 else None
        ),
        CaseRule(
            2, 2, lambda lam, image: () if _ones(image) % 5 in (1, 2, 4) else None
        ),
        CaseRule(
            3, None,
            lambda lam, image: ()
            if image.multiplicity(2) >= image.multiplicity(3)
            else None,
        ),
    )
    return RefinementStatement(
        "spec3", {},
        PartitionClass.congruence(5, (2, 3), forbidden=(3,), extra_allowed=(5,)),
        (), DIFF2_STAR, rules, "spec3_firsttw", None, None, (),
    )


@dataclass
class StatementEntry:
    """A statement slot: fixed, or a family over the same parameter M."""

    id: str
    build: callable
    param_style: str | None = None
    admissible: callable = None
    param_hint: str = ""

    @property
    def parameterized(self):
        return self.param_style is not None

    def instantiate(self, M=None):
        if not self.parameterized:
            if M is not None:
                raise ValueError(f"{self.id} takes no parameter")
            return self.build()
        if M is None or not (M >= 1 and self.admissible(M)):
            raise ValueError(
                f"statement {self.id} needs admissible M ({self.param_hint}), got {M}"
            )
        return self.build(M)

    def sweep(self, bound=12):
        if not self.parameterized:
            return [None]
        top = bound - 1 if self.param_style == "M+1" else bound
        return [M for M in range(1, top + 1) if self.admissible(M)]


def statements():
    return [
        StatementEntry(
            "generalminithm", _stmt_generalminithm, "M+1",
            lambda M: (M + 1) % 5 in (2, 3), "M+1 = 2 or 3 mod 5",
        ),
        StatementEntry(
            "generalmini14thm", _stmt_generalmini14thm, "M+1",
            lambda M: (M + 1) % 5 in (1, 4) and M >= 1, "M+1 >= 2, = 1 or 4 mod 5",
        ),
        StatementEntry(
            "general2partcor", _stmt_general2partcor, "M",
            lambda M: M >= 7 and M % 5 in (2, 3), "M >= 7, = 2 or 3 mod 5",
        ),
        StatementEntry(
            "general2part14cor", _stmt_general2part14cor, "M",
            lambda M: M >= 4 and M % 2 == 0 and M % 5 in (1, 4),
            "even M >= 4, = 1 or 4 mod 5",
        ),
        StatementEntry("firstbigcomb", _stmt_firstbigcomb),
        StatementEntry("bigcomb", _stmt_bigcomb),
        StatementEntry("spec1", _stmt_spec1),
        StatementEntry("spec2", _stmt_spec2),
        StatementEntry("spec3", _stmt_spec3),
    ]


def get_statement(statement_id):
    wanted = statement_id.lower()
    for entry in statements():
        if entry.id.lower() == wanted:
            return entry
    raise UnknownStatementError(statement_id)
