"""Level-p Apery sets and the two quantities they determine.

Fix a generator tuple with smallest element ``a_1``.  For each residue
``j mod a_1`` there is a least integer ``n ≡ j`` whose representation
count is at least ``p + 1``; the ``a_1`` integers so obtained form the
level-p Apery set.  From that one set both derived quantities follow
exactly:

* the largest integer with at most ``p`` representations is
  ``max(elements) - a_1`` (``-1`` when every non-negative integer already
  has more than ``p`` representations, which happens only for ``a_1 = 1``);
* the number of non-negative integers with at most ``p`` representations
  is ``sum(elements)/a_1 - (a_1 - 1)/2``, always an integer.

Alongside the Apery route this module ships an independent scan route
(:func:`p_frobenius_scan`, :func:`p_sylvester_scan`) that works straight
off the count table and never looks at residues.  The two routes share
only the denumerant table; keeping both alive is the point — each checks
the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .denumerant import GeneratorTuple, denumerant_table

__all__ = [
    "DegenerateTupleError",
    "AperySet",
    "apery_set",
    "p_frobenius",
    "p_sylvester",
    "p_frobenius_scan",
    "p_sylvester_scan",
]


class DegenerateTupleError(ValueError):
    """The tuple contains 1, so every integer is representable at level 0."""


def _as_tuple(gens: "GeneratorTuple | Iterable[int]") -> GeneratorTuple:
    return gens if isinstance(gens, GeneratorTuple) else GeneratorTuple(gens)


@dataclass(frozen=True)
class AperySet:
    """The level-``p`` Apery elements, indexed by residue mod ``a_1``.

    ``elements[j]`` is the least ``n ≡ j (mod a_1)`` with more than ``p``
    representations.
    """

    gens: GeneratorTuple
    p: int
    elements: tuple[int, ...]

    def frobenius(self) -> int:
        """Largest integer with at most ``p`` representations."""
        return max(self.elements) - self.gens.a1

    def sylvester(self) -> int:
        """How many non-negative integers have at most ``p`` representations."""
        a1 = self.gens.a1
        numerator = 2 * sum(self.elements) - a1 * (a1 - 1)
        q, rem = divmod(numerator, 2 * a1)
        if rem:
            raise AssertionError(
                f"sylvester closing formula must divide exactly; "
                f"gens={self.gens} p={self.p} numerator={numerator}"
            )
        return q


@lru_cache(maxsize=None)
def _apery_elements(gens: tuple[int, ...], p: int) -> tuple[int, ...]:
    a1 = gens[0]
    # With the two smallest generators coprime, every residue class is
    # settled within (p+1)*a1*a2 (the two-generator worst case).  Tuples
    # whose small generators share a factor can need more room, so the
    # window widens geometrically until all residues are found.
    cap = (p + 1) * gens[0] * gens[1]
    while True:
        counts = denumerant_table(cap, GeneratorTuple(gens)).counts
        found: list[int] = [-1] * a1
        missing = a1
        for n, c in enumerate(counts):
            if c > p and found[n % a1] < 0:
                found[n % a1] = n
                missing -= 1
                if missing == 0:
                    return tuple(found)
        cap *= 2


def apery_set(gens: "GeneratorTuple | Iterable[int]", p: int) -> AperySet:
    """Level-``p`` Apery set of ``gens``.

    Raises :class:`DegenerateTupleError` when the smallest generator is 1
    (a single residue class, and ``frobenius`` would be meaningless).
    """
    tup = _as_tuple(gens)
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    if tup.a1 == 1:
        raise DegenerateTupleError(f"smallest generator of {tup} is 1")
    return AperySet(tup, p, _apery_elements(tup.gens, p))


def p_frobenius(gens: "GeneratorTuple | Iterable[int]", p: int) -> int:
    """Largest integer with at most ``p`` representations (Apery route)."""
    return apery_set(gens, p).frobenius()


def p_sylvester(gens: "GeneratorTuple | Iterable[int]", p: int) -> int:
    """Count of integers with at most ``p`` representations (Apery route)."""
    return apery_set(gens, p).sylvester()


def _certified_counts(tup: GeneratorTuple, p: int) -> list[int]:
    """A count table whose tail is provably past level ``p``.

    Counts never decrease along a residue class as ``n`` steps by ``a_1``
    (add one more copy of ``a_1``), so once the top ``a_1`` entries all
    exceed ``p`` every integer beyond the table does too.
    """
    a1 = tup.a1
    cap = (p + 1) * tup.gens[0] * tup.gens[1]
    while True:
        counts = denumerant_table(cap, tup).counts
        if all(c > p for c in counts[cap - a1 + 1 :]):
            return counts
        cap *= 2


def p_frobenius_scan(gens: "GeneratorTuple | Iterable[int]", p: int) -> int:
    """Independent route: scan the raw count table downward.

    Returns ``-1`` when no non-negative integer has at most ``p``
    representations (only possible when 1 is a generator).
    """
    tup = _as_tuple(gens)
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    counts = _certified_counts(tup, p)
    for n in range(len(counts) - 1, -1, -1):
        if counts[n] <= p:
            return n
    return -1


def p_sylvester_scan(gens: "GeneratorTuple | Iterable[int]", p: int) -> int:
    """Independent route: count qualifying integers directly."""
    tup = _as_tuple(gens)
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    counts = _certified_counts(tup, p)
    return sum(1 for c in counts if c <= p)
