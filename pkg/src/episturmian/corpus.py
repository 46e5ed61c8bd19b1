"""Test corpora of episturmian morphisms and seedable random samplers."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .conjugacy import enumerate_class
from .morphism import Morphism, Permutation, compose, psi
from .words import Alphabet


@dataclass(frozen=True)
class CorpusEntry:
    """Member ``index`` of the class of ``psi_u o perm``."""

    u: str
    perm: Permutation
    index: int
    sigma: Morphism

    @property
    def label(self) -> str:
        return f"psi:{self.u}:{self.perm}:{''.join(self.perm.alphabet.letters)}#{self.index}"


def all_permutations(alphabet: Alphabet) -> list[Permutation]:
    return [Permutation(alphabet, p) for p in permutations(alphabet.letters)]


@lru_cache(maxsize=16)
def standard_morphisms(sizes: tuple[int, ...] = (2, 3), max_len: int = 4,
                       primitive_only: bool = True) -> tuple[tuple[str, Permutation, Morphism], ...]:
    """Every ``psi_u o pi`` with ``1 <= |u| <= max_len`` over the first ``k`` letters, ``k`` in ``sizes``."""
    out = []
    for k in sizes:
        alphabet = Alphabet.first(k)
        perms = all_permutations(alphabet)
        for n in range(1, max_len + 1):
            for u in alphabet.words(n):
                base = psi(alphabet, u)
                for perm in perms:
                    sigma = compose(base, perm)
                    if primitive_only and not sigma.is_primitive:
                        continue
                    out.append((u, perm, sigma))
    return tuple(out)


@lru_cache(maxsize=16)
def conjugate_corpus(sizes: tuple[int, ...] = (2, 3), max_len: int = 4,
                     primitive_only: bool = True) -> tuple[CorpusEntry, ...]:
    """All conjugates of the morphisms of :func:`standard_morphisms`."""
    out = []
    for u, perm, sigma in standard_morphisms(sizes, max_len, primitive_only):
        cls = enumerate_class(sigma)
        out.extend(CorpusEntry(u, perm, i, member) for i, member in enumerate(cls.members))
    return tuple(out)


def sample(entries, k: int, seed: int | None = 0) -> list:
    """``k`` entries drawn without replacement; the whole list when ``k`` is large."""
    entries = list(entries)
    if k >= len(entries):
        return entries
    return random.Random(seed).sample(entries, k)


def random_standard(rng: random.Random, sizes=(2, 3), max_len: int = 6) -> tuple[str, Permutation, Morphism]:
    """A random primitive ``psi_u o pi``."""
    while True:
        alphabet = Alphabet.first(rng.choice(sizes))
        u = "".join(rng.choice(alphabet.letters) for _ in range(rng.randint(1, max_len)))
        perm = Permutation(alphabet, tuple(rng.sample(alphabet.letters, len(alphabet))))
        sigma = compose(psi(alphabet, u), perm)
        if sigma.is_primitive:
            return u, perm, sigma
