"""Integer partitions: restricted enumeration and staircase column transforms.

Partition classes cover congruence-restricted part sizes (with explicit
forbidden and extra-allowed sizes), the gap-2 class and its no-ones
subclass.  Enumeration is exhaustive and deterministic, in decreasing
lexicographic order of parts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache


class ClassMembershipError(ValueError):
    """Partition is outside the domain of the requested transform."""


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts; () is the empty partition."""

    parts: tuple = ()

    def __post_init__(self):
        prev = None
        for p in self.parts:
            if p < 1:
                raise ValueError(f"parts must be positive: {self.parts}")
            if prev is not None and p > prev:
                raise ValueError(f"parts must weakly decrease: {self.parts}")
            prev = p

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def multiplicity(self, s):
        return self.parts.count(s)

    def counts(self):
        return Counter(self.parts)

    def exp_str(self):
        """Exponent notation: (3,3,2,2) -> "3^2,2^2"; empty -> ""."""
        pieces = []
        for p, mult in sorted(self.counts().items(), reverse=True):
            pieces.append(f"{p}^{mult}" if mult > 1 else str(p))
        return ",".join(pieces)

    def __str__(self):
        return f"({self.exp_str()})"

    def __repr__(self):
        return f"Partition({self.parts!r})"


EMPTY = Partition()


@dataclass(frozen=True)
class PartitionClass:
    """A set of partitions cut out by part-size rules.

    kind "congruence": a part s is allowed iff (s mod modulus is in
    residues or s is extra-allowed) and s is not forbidden.
    kind "diff2": consecutive parts differ by at least 2.
    kind "diff2_star": diff2 and no part equal to 1.
    """

    kind: str
    modulus: int = 0
    residues: frozenset = frozenset()
    forbidden: frozenset = frozenset()
    extra_allowed: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("congruence", "diff2", "diff2_star"):
            raise ValueError(f"unknown partition class kind {self.kind!r}")
        if self.kind == "congruence":
            if self.modulus < 1:
                raise ValueError("congruence class needs a positive modulus")
            if not self.residues <= frozenset(range(self.modulus)):
                raise ValueError("residues must lie in 0..modulus-1")
            if self.forbidden & self.extra_allowed:
                raise ValueError("forbidden and extra-allowed sizes overlap")

    @classmethod
    def congruence(cls, modulus, residues, forbidden=(), extra_allowed=()):
        return cls(
            "congruence",
            modulus,
            frozenset(residues),
            frozenset(forbidden),
            frozenset(extra_allowed),
        )

    def allows_part(self, s):
        if self.kind != "congruence":
            raise ValueError("allows_part applies to congruence classes only")
        if s in self.forbidden:
            return False
        return s % self.modulus in self.residues or s in self.extra_allowed

    def contains(self, p):
        if self.kind == "congruence":
            return all(self.allows_part(s) for s in p.parts)
        if any(
            p.parts[i] - p.parts[i + 1] < 2 for i in range(len(p.parts) - 1)
        ):
            return False
        if self.kind == "diff2_star" and p.parts and p.parts[-1] < 2:
            return False
        return True

    def describe(self):
        if self.kind != "congruence":
            return self.kind
        bits = [f"parts = {sorted(self.residues)} mod {self.modulus}"]
        if self.extra_allowed:
            bits.append(f"plus {sorted(self.extra_allowed)}")
        if self.forbidden:
            bits.append(f"minus {sorted(self.forbidden)}")
        return ", ".join(bits)


DIFF2 = PartitionClass("diff2")
DIFF2_STAR = PartitionClass("diff2_star")
MOD5_14 = PartitionClass.congruence(5, (1, 4))
MOD5_23 = PartitionClass.congruence(5, (2, 3))
ALL_PARTITIONS = PartitionClass.congruence(1, (0,))

NAMED_CLASSES = {
    "diff2": DIFF2,
    "diff2_star": DIFF2_STAR,
    "mod5_14": MOD5_14,
    "mod5_23": MOD5_23,
    "all": ALL_PARTITIONS,
}


def _gen_congruence(n, max_part, sizes):
    if n == 0:
        yield ()
        return
    for s in sizes:
        if s > min(n, max_part):
            continue
        for rest in _gen_congruence(n - s, s, sizes):
            yield (s,) + rest


def _gen_diff2(n, max_part, min_part):
    if n == 0:
        yield ()
        return
    for s in range(min(n, max_part), min_part - 1, -1):
        for rest in _gen_diff2(n - s, s - 2, min_part):
            yield (s,) + rest


@lru_cache(maxsize=None)
def enumerate_class(pclass, n):
    """All partitions of n in the class, decreasing-lex by parts."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if pclass.kind == "congruence":
        sizes = [s for s in range(n, 0, -1) if pclass.allows_part(s)]
        gen = _gen_congruence(n, n, tuple(sizes))
    else:
        min_part = 2 if pclass.kind == "diff2_star" else 1
        gen = _gen_diff2(n, n, min_part)
    return tuple(Partition(parts) for parts in gen)


def conjugate(p):
    """Transpose of the Ferrers diagram."""
    if not p.parts:
        return EMPTY
    width = p.parts[0]
    out = []
    for j in range(1, width + 1):
        out.append(sum(1 for part in p.parts if part >= j))
    return Partition(tuple(out))


def _require(p, pclass, what):
    if not pclass.contains(p):
        raise ClassMembershipError(f"{p} is not in {what}")


def _columns_after_staircase(p, first_step):
    m = len(p.parts)
    reduced = tuple(
        part - (first_step - 2 * i) for i, part in enumerate(p.parts)
    )
    trimmed = tuple(r for r in reduced if r > 0)
    return conjugate(Partition(trimmed))


@lru_cache(maxsize=None)
def col(p):
    """Columns left after removing the staircase (2m-1, 2m-3, ..., 1)."""
    _require(p, DIFF2, "the gap-2 class")
    return _columns_after_staircase(p, 2 * len(p.parts) - 1)


@lru_cache(maxsize=None)
def col_star(p):
    """Columns left after removing the staircase (2m, 2m-2, ..., 2)."""
    _require(p, DIFF2_STAR, "the gap-2 class without ones")
    return _columns_after_staircase(p, 2 * len(p.parts))


def signature(p, watched):
    """Multiplicity of each watched part size (absent sizes count 0)."""
    counts = p.counts()
    return {s: counts.get(s, 0) for s in watched}
