"""Conjugacy classes of episturmian morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .morphism import (
    EpiDecomposition,
    Morphism,
    MorphismError,
    Permutation,
    conjugate_left,
    conjugate_right,
    decompose_episturmian,
)
from .palindromic import pal
from .words import gcp, gcs


class ConjugacyError(MorphismError):
    """A cross-check between two closed forms failed."""


def class_size(sigma: Morphism) -> int:
    """Cardinality of the conjugacy class, ``(||sigma|| - 1) / (|A| - 1)``."""
    num, den = sigma.norm - 1, len(sigma.alphabet) - 1
    if num % den:
        raise ConjugacyError(f"{sigma}: norm does not fit an episturmian conjugacy class")
    return num // den


def class_span(sigma: Morphism) -> int:
    """``m = (||sigma|| - |A|) / (|A| - 1)``, the largest conjugacy index in the class."""
    return class_size(sigma) - 1


def _pair_values(sigma: Morphism) -> list[tuple[str, str, str, str]]:
    out = []
    for a, b in permutations(sigma.alphabet, 2):
        ab, ba = sigma(a + b), sigma(b + a)
        out.append((a, b, gcs(ab, ba), gcp(ab, ba)))
    return out


def _require_epi(sigma: Morphism) -> EpiDecomposition:
    if sigma.is_permutation:
        raise MorphismError(f"{sigma} is a permutation")
    return decompose_episturmian(sigma)


def conjugacy_index(sigma: Morphism) -> int:
    """Length of the word conjugating ``sigma`` to its standard conjugate.

    Computed as ``|gcs(sigma(ab), sigma(ba))|`` and as
    ``m - |gcp(sigma(ab), sigma(ba))|`` over every ordered pair of
    distinct letters; any disagreement raises :class:`ConjugacyError`.
    """
    _require_epi(sigma)
    m = class_span(sigma)
    values = set()
    for a, b, x, y in _pair_values(sigma):
        values.add(len(x))
        values.add(m - len(y))
    if len(values) != 1:
        raise ConjugacyError(f"{sigma}: conjugacy index formulas disagree: {sorted(values)}")
    return values.pop()


def gcs_gcp_factorization(sigma: Morphism) -> tuple[str, str]:
    """``(gcs(sigma(ab), sigma(ba)), gcp(sigma(ab), sigma(ba)))``, checked pair-independent."""
    _require_epi(sigma)
    results = {(x, y) for _, _, x, y in _pair_values(sigma)}
    if len(results) != 1:
        raise ConjugacyError(f"{sigma}: gcs/gcp factorization depends on the letter pair")
    return results.pop()


def standard_conjugate(sigma: Morphism) -> tuple[Morphism, str]:
    """``(w sigma w^{-1}, w)`` where the first component is standard."""
    _require_epi(sigma)
    w, _ = gcs_gcp_factorization(sigma)
    std = conjugate_left(sigma, w)
    if std is None:
        raise ConjugacyError(f"{sigma}: cannot left-conjugate by {w!r}")
    if len(w) != conjugacy_index(sigma):
        raise ConjugacyError(f"{sigma}: conjugating word length differs from the index")
    decompose_episturmian(std, plain_only=True)
    return std, w


@dataclass(frozen=True)
class ConjugacyClass:
    """Members ordered by conjugacy index; member ``i`` is ``w^{-1} std w`` with ``w = Pal(u)[:i]``."""

    members: tuple[Morphism, ...]
    directive: str
    perm: Permutation

    @property
    def palindrome(self) -> str:
        return pal(self.directive)

    @property
    def m(self) -> int:
        return len(self.members) - 1

    def prefix(self, i: int) -> str:
        return self.palindrome[:i]

    def index_of(self, sigma: Morphism) -> int:
        return self.members.index(sigma)

    def rows(self) -> list[tuple[Morphism, str, int]]:
        return [(s, self.prefix(i), i) for i, s in enumerate(self.members)]


def enumerate_class(sigma: Morphism) -> ConjugacyClass:
    std, _ = standard_conjugate(sigma)
    dec = decompose_episturmian(std, plain_only=True)
    u = dec.directive
    p = pal(u)
    members = []
    for i in range(len(p) + 1):
        rho = conjugate_right(std, p[:i])
        if rho is None:
            raise ConjugacyError(f"{std} has no right conjugate by {p[:i]!r}")
        members.append(rho)
    if len(members) != class_size(sigma):
        raise ConjugacyError(f"{sigma}: class has {len(members)} members, expected {class_size(sigma)}")
    if sigma not in members:
        raise ConjugacyError(f"{sigma} missing from its own enumerated class")
    return ConjugacyClass(tuple(members), u, dec.perm)


@dataclass(frozen=True)
class MinLetterReport:
    a_min: str
    j: int
    ind: int
    m: int
    suffix_closed: bool
    prefix_closed: bool

    @property
    def predicted_suffix_closed(self) -> bool:
        return self.ind >= self.j

    @property
    def predicted_prefix_closed(self) -> bool:
        return self.ind <= self.m - self.j

    @property
    def consistent(self) -> bool:
        return (
            self.suffix_closed == self.predicted_suffix_closed
            and self.prefix_closed == self.predicted_prefix_closed
            and (self.suffix_closed or self.prefix_closed)
            and 2 * self.j <= self.m + 1
        )


def minimal_letter(sigma: Morphism) -> MinLetterReport:
    _require_epi(sigma)
    lengths = sorted((len(img), a) for a, img in sigma.items())
    if len(lengths) > 1 and lengths[0][0] == lengths[1][0]:
        raise ConjugacyError(f"{sigma}: no letter has a strictly shortest image")
    j, a_min = lengths[0]
    short = sigma[a_min]
    return MinLetterReport(
        a_min=a_min,
        j=j,
        ind=conjugacy_index(sigma),
        m=class_span(sigma),
        suffix_closed=all(img.endswith(short) for img in sigma.images),
        prefix_closed=all(img.startswith(short) for img in sigma.images),
    )
