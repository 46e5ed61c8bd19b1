"""Exact word primitives over a finite alphabet.

Words are plain ``str`` values whose characters are letters; an
:class:`Alphabet` fixes the set of admissible letters and their order.
Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

EMPTY = ""


class AlphabetError(ValueError):
    """A word or morphism does not fit the declared alphabet."""


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(letters) < 2:
            raise AlphabetError("an alphabet needs at least two letters")
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"repeated letters in {letters!r}")
        for a in letters:
            if not isinstance(a, str) or len(a) != 1:
                raise AlphabetError(f"letters must be single characters, got {a!r}")

    @classmethod
    def of(cls, letters: Iterable[str] | str) -> "Alphabet":
        return cls(tuple(letters))

    @classmethod
    def first(cls, k: int) -> "Alphabet":
        """The alphabet ``a, b, c, ...`` of size ``k``."""
        return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:k]))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, letter: object) -> bool:
        return letter in self.letters

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise AlphabetError(f"{letter!r} is not in {''.join(self.letters)!r}") from None

    def check(self, word: str) -> str:
        """Return ``word`` unchanged, raising if it leaves the alphabet."""
        bad = set(word) - set(self.letters)
        if bad:
            raise AlphabetError(
                f"letters {''.join(sorted(bad))!r} of {word!r} are not in {''.join(self.letters)!r}"
            )
        return word

    def words(self, length: int) -> Iterator[str]:
        """All words of the given length, in lexicographic order of the alphabet."""
        if length == 0:
            yield EMPTY
            return
        for w in self.words(length - 1):
            for a in self.letters:
                yield w + a

    def words_upto(self, length: int) -> Iterator[str]:
        for n in range(length + 1):
            yield from self.words(n)

    def __str__(self) -> str:
        return "".join(self.letters)


def concat(u: str, v: str, alphabet: Alphabet | None = None) -> str:
    if alphabet is not None:
        alphabet.check(u)
        alphabet.check(v)
    return u + v


def gcp(u: str, v: str) -> str:
    """Greatest common prefix."""
    n = min(len(u), len(v))
    i = 0
    while i < n and u[i] == v[i]:
        i += 1
    return u[:i]


def gcs(u: str, v: str) -> str:
    """Greatest common suffix."""
    n = min(len(u), len(v))
    i = 0
    while i < n and u[-1 - i] == v[-1 - i]:
        i += 1
    return u[len(u) - i:]


def reverse(u: str) -> str:
    return u[::-1]


def is_palindrome(u: str) -> bool:
    return u == u[::-1]


def occurrences(pattern: str, text: str) -> list[int]:
    """Start indices of every (possibly overlapping) occurrence of ``pattern``."""
    if not pattern:
        raise ValueError("cannot search for the empty word")
    return [m.start() for m in re.finditer(f"(?={re.escape(pattern)})", text)]


def occurrences_naive(pattern: str, text: str) -> list[int]:
    if not pattern:
        raise ValueError("cannot search for the empty word")
    k = len(pattern)
    return [i for i in range(len(text) - k + 1) if text[i:i + k] == pattern]


def factors(text: str, n: int) -> set[str]:
    """Set of length-``n`` factors of ``text``."""
    return {text[i:i + n] for i in range(len(text) - n + 1)}


def strip_prefix(w: str, u: str) -> str:
    """``w^{-1} u``; raises if ``w`` is not a prefix of ``u``."""
    if not u.startswith(w):
        raise ValueError(f"{w!r} is not a prefix of {u!r}")
    return u[len(w):]


def strip_suffix(u: str, w: str) -> str:
    """``u w^{-1}``; raises if ``w`` is not a suffix of ``u``."""
    if not u.endswith(w):
        raise ValueError(f"{w!r} is not a suffix of {u!r}")
    return u[:len(u) - len(w)]


def longest_palindromic_suffix(x: str) -> int:
    """Length of the longest palindromic suffix of ``x`` in linear time.

    The failure function of ``reverse(x) + sep + x`` gives the longest
    prefix of ``reverse(x)`` that is a suffix of ``x``, which is exactly a
    palindromic suffix.
    """
    if not x:
        return 0
    s = x[::-1] + "\x00" + x
    fail = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    return fail[-1]


def render(word: str) -> str:
    """CLI rendering: the empty word shows as ``-``."""
    return word if word else "-"
