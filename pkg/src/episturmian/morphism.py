"""Endomorphisms of the free monoid and the episturmian generators.

A :class:`Morphism` is a non-erasing map letter -> word over one
:class:`~episturmian.words.Alphabet`.  The elementary morphisms
``psi_a`` (``b -> ab``) and ``psibar_a`` (``b -> ba``) together with
letter permutations generate the episturmian monoid; a directive word
over the doubled alphabet is a tuple of :class:`SpinnedLetter`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Iterable, NamedTuple

import numpy as np

from .words import Alphabet, AlphabetError, strip_suffix


class MorphismError(ValueError):
    pass


class MorphismParseError(MorphismError):
    pass


class NotPrimitiveError(MorphismError):
    pass


class NotEpisturmian(MorphismError):
    """Raised when a morphism has no decomposition ``psi_v o pi``.

    ``step`` is the number of letters successfully stripped along the
    deepest branch explored before the search got stuck.
    """

    def __init__(self, message: str, step: int = 0):
        super().__init__(message)
        self.step = step


# --------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    alphabet: Alphabet
    images: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != sorted(self.alphabet.letters):
            raise MorphismError(f"not a bijection on {self.alphabet}: {self.images!r}")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Permutation":
        return cls(alphabet, alphabet.letters)

    @classmethod
    def from_mapping(cls, alphabet: Alphabet, mapping: dict[str, str]) -> "Permutation":
        return cls(alphabet, tuple(mapping.get(a, a) for a in alphabet))

    @classmethod
    def from_cycles(cls, alphabet: Alphabet, text: str) -> "Permutation":
        """Parse cycle notation such as ``(a c b)`` or ``(ab)(cd)``; ``id`` is the identity."""
        text = text.strip()
        mapping: dict[str, str] = {}
        if text in ("", "id", "()"):
            return cls.identity(alphabet)
        cycles = re.findall(r"\(([^()]*)\)", text)
        if not cycles or re.sub(r"\([^()]*\)", "", text).strip():
            raise MorphismParseError(f"bad cycle notation {text!r}")
        for cyc in cycles:
            letters = [c for c in cyc if not c.isspace() and c != ","]
            for a in letters:
                alphabet.index(a)
                if a in mapping:
                    raise MorphismParseError(f"letter {a!r} repeated in {text!r}")
            for x, y in zip(letters, letters[1:] + letters[:1]):
                mapping[x] = y
        return cls.from_mapping(alphabet, mapping)

    @cached_property
    def _table(self) -> dict[int, str]:
        return {ord(a): b for a, b in zip(self.alphabet.letters, self.images)}

    def __call__(self, word: str) -> str:
        return word.translate(self._table)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``."""
        return Permutation(self.alphabet, tuple(self(b) for b in other.images))

    def inverse(self) -> "Permutation":
        return Permutation.from_mapping(self.alphabet, dict(zip(self.images, self.alphabet.letters)))

    def power(self, k: int) -> "Permutation":
        result = Permutation.identity(self.alphabet)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def cycles(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for a in self.alphabet:
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self(a)
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self(b)
            out.append(tuple(cyc))
        return out

    @property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))

    @property
    def is_identity(self) -> bool:
        return self.images == self.alphabet.letters

    def as_morphism(self) -> "Morphism":
        return Morphism(self.alphabet, self.images)

    def __str__(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "id"
        return "".join("(" + " ".join(c) + ")" for c in nontrivial)


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class Morphism:
    alphabet: Alphabet
    images: tuple[str, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.alphabet):
            raise MorphismError(f"expected {len(self.alphabet)} images, got {len(images)}")
        for a, img in zip(self.alphabet, images):
            if not img:
                raise MorphismError(f"image of {a!r} is empty (erasing morphisms are not allowed)")
            self.alphabet.check(img)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Morphism":
        return cls(alphabet, alphabet.letters)

    @classmethod
    def from_dict(cls, rules: dict[str, str], alphabet: Alphabet | None = None) -> "Morphism":
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted(rules)))
        missing = [a for a in alphabet if a not in rules]
        if missing:
            raise MorphismError(f"no image given for {''.join(missing)!r}")
        return cls(alphabet, tuple(rules[a] for a in alphabet))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "Morphism":
        """Parse ``"a->ab,b->ac,c->a"`` (whitespace ignored)."""
        compact = "".join(text.split())
        rules: dict[str, str] = {}
        if not compact:
            raise MorphismParseError("empty morphism")
        for rule in compact.split(","):
            m = re.fullmatch(r"(.)->(.+)", rule)
            if m is None:
                raise MorphismParseError(f"cannot parse rule {rule!r}")
            a, img = m.groups()
            if a in rules:
                raise MorphismParseError(f"letter {a!r} has two rules (offending rule {rule!r})")
            rules[a] = img
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted(rules)))
        for a, img in rules.items():
            if a not in alphabet:
                raise MorphismParseError(f"rule {a}->{img}: {a!r} not in alphabet {alphabet}")
            try:
                alphabet.check(img)
            except AlphabetError as exc:
                raise MorphismParseError(f"rule {a}->{img}: {exc}") from None
        return cls.from_dict(rules, alphabet)

    @classmethod
    def from_json(cls, data: dict | str) -> "Morphism":
        if isinstance(data, str):
            data = json.loads(data)
        alphabet = Alphabet(tuple(data["alphabet"]))
        return cls.from_dict(dict(data["rules"]), alphabet)

    @cached_property
    def _table(self) -> dict[int, str]:
        return {ord(a): img for a, img in zip(self.alphabet.letters, self.images)}

    def __call__(self, word: str) -> str:
        return word.translate(self._table)

    def __getitem__(self, letter: str) -> str:
        return self.images[self.alphabet.index(letter)]

    def items(self) -> Iterable[tuple[str, str]]:
        return zip(self.alphabet.letters, self.images)

    def __matmul__(self, other: "Morphism | Permutation") -> "Morphism":
        return compose(self, other)

    def power(self, k: int) -> "Morphism":
        if k < 0:
            raise MorphismError("negative powers are not defined")
        result = Morphism.identity(self.alphabet)
        for _ in range(k):
            result = compose(self, result)
        return result

    @property
    def norm(self) -> int:
        return sum(len(img) for img in self.images)

    @property
    def is_permutation(self) -> bool:
        return all(len(img) == 1 for img in self.images) and len(set(self.images)) == len(self.images)

    def as_permutation(self) -> Permutation:
        if not self.is_permutation:
            raise MorphismError(f"{self} is not a permutation")
        return Permutation(self.alphabet, self.images)

    def incidence_matrix(self) -> np.ndarray:
        """``M[i, j]`` = number of occurrences of letter ``i`` in the image of letter ``j``."""
        k = len(self.alphabet)
        m = np.zeros((k, k), dtype=np.int64)
        for j, img in enumerate(self.images):
            for i, a in enumerate(self.alphabet):
                m[i, j] = img.count(a)
        return m

    @property
    def is_primitive(self) -> bool:
        k = len(self.alphabet)
        step = self.incidence_matrix() > 0
        power = step.copy()
        for _ in range((k - 1) ** 2 + 1):
            if power.all():
                return True
            power = (power.astype(np.int64) @ step.astype(np.int64)) > 0
        return False

    def to_text(self) -> str:
        return ",".join(f"{a}->{img}" for a, img in self.items())

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet.letters), "rules": dict(self.items())}

    def __str__(self) -> str:
        return self.to_text()


def compose(sigma: Morphism, rho: Morphism | Permutation) -> Morphism:
    """``sigma o rho``: first ``rho``, then ``sigma``."""
    if sigma.alphabet != rho.alphabet:
        raise AlphabetError(f"alphabet mismatch: {sigma.alphabet} vs {rho.alphabet}")
    return Morphism(sigma.alphabet, tuple(sigma(img) for img in rho.images))


def conjugate_right(sigma: Morphism, w: str) -> Morphism | None:
    """``w^{-1} sigma w`` if it is defined, else ``None``.

    The result ``rho`` satisfies ``sigma(a) w = w rho(a)`` for every letter.
    """
    out = []
    for img in sigma.images:
        t = img + w
        if not t.startswith(w):
            return None
        out.append(t[len(w):])
    return Morphism(sigma.alphabet, tuple(out))


def conjugate_left(rho: Morphism, w: str) -> Morphism | None:
    """``w rho w^{-1}`` if it is defined, else ``None``."""
    out = []
    for img in rho.images:
        t = w + img
        if not t.endswith(w):
            return None
        out.append(strip_suffix(t, w))
    return Morphism(rho.alphabet, tuple(out))


# --------------------------------------------------------------------------
# the elementary episturmian morphisms


class SpinnedLetter(NamedTuple):
    letter: str
    barred: bool = False

    def __str__(self) -> str:
        return self.letter + ("'" if self.barred else "")


SpinnedWord = tuple[SpinnedLetter, ...]


def spinned(u: str | Iterable[SpinnedLetter], barred: bool = False) -> SpinnedWord:
    """Coerce ``u`` to a spinned word; a plain string gets the uniform spin ``barred``."""
    if isinstance(u, str):
        return tuple(SpinnedLetter(a, barred) for a in u)
    return tuple(SpinnedLetter(*x) for x in u)


def parse_spinned(text: str) -> SpinnedWord:
    """``"ab'c"`` -> plain a, barred b, plain c.  A quote marks the preceding letter as barred."""
    out: list[SpinnedLetter] = []
    for ch in "".join(text.split()):
        if ch == "'":
            if not out or out[-1].barred:
                raise MorphismParseError(f"misplaced bar in {text!r}")
            out[-1] = SpinnedLetter(out[-1].letter, True)
        else:
            out.append(SpinnedLetter(ch, False))
    return tuple(out)


def format_spinned(u: SpinnedWord) -> str:
    return "".join(str(x) for x in u)


def plain_letters(u: SpinnedWord) -> str:
    return "".join(x.letter for x in u)


def elementary_psi(alphabet: Alphabet, a: str, barred: bool = False) -> Morphism:
    alphabet.index(a)
    if barred:
        return Morphism(alphabet, tuple(a if b == a else b + a for b in alphabet))
    return Morphism(alphabet, tuple(a if b == a else a + b for b in alphabet))


def apply_spinned(alphabet: Alphabet, u: str | Iterable[SpinnedLetter]) -> Morphism:
    """Build ``psi_u = psi_{u_0} o psi_{u_1} o ...``; a plain string means all spins plain."""
    images = {a: a for a in alphabet}
    for a, barred in spinned(u):
        alphabet.index(a)
        head = images[a]
        if barred:
            images = {b: (img if b == a else img + head) for b, img in images.items()}
        else:
            images = {b: (img if b == a else head + img) for b, img in images.items()}
    return Morphism(alphabet, tuple(images[a] for a in alphabet))


def psi(alphabet: Alphabet, u: str) -> Morphism:
    return apply_spinned(alphabet, spinned(u))


def psi_bar(alphabet: Alphabet, u: str) -> Morphism:
    return apply_spinned(alphabet, spinned(u, barred=True))


def permute_spinned(perm: Permutation, u: SpinnedWord) -> SpinnedWord:
    return tuple(SpinnedLetter(perm(x.letter), x.barred) for x in u)


# --------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class EpiDecomposition:
    """``sigma = psi_spinned o perm``; ``choices`` records the side stripped at each step."""

    spinned: SpinnedWord
    perm: Permutation
    choices: tuple[str, ...] = field(default=())

    @property
    def alphabet(self) -> Alphabet:
        return self.perm.alphabet

    @property
    def is_plain(self) -> bool:
        return not any(x.barred for x in self.spinned)

    @property
    def directive(self) -> str:
        return plain_letters(self.spinned)

    def reconstruct(self) -> Morphism:
        return compose(apply_spinned(self.alphabet, self.spinned), self.perm)

    def __str__(self) -> str:
        u = format_spinned(self.spinned) or "ε"
        return f"psi_{u} o {self.perm}"


def _strip_plain(images: tuple[str, ...], a: str) -> tuple[str, ...] | None:
    # decode by the code {a} u {ab : b != a}
    out = []
    for w in images:
        dec = []
        i, n = 0, len(w)
        while i < n:
            if w[i] != a:
                return None
            if i + 1 < n and w[i + 1] != a:
                dec.append(w[i + 1])
                i += 2
            else:
                dec.append(a)
                i += 1
        out.append("".join(dec))
    return tuple(out)


def _strip_barred(images: tuple[str, ...], a: str) -> tuple[str, ...] | None:
    rev = _strip_plain(tuple(w[::-1] for w in images), a)
    return None if rev is None else tuple(w[::-1] for w in rev)


def decompose_episturmian(sigma: Morphism, prefer: str = "plain", plain_only: bool = False) -> EpiDecomposition:
    """Write ``sigma`` as ``psi_v o pi`` by repeatedly stripping elementary morphisms.

    At every step all images must share a first letter ``a`` (strip
    ``psi_a``) or a last letter ``a`` (strip ``psibar_a``).  When both
    apply, ``prefer`` decides which is tried first; the other is tried if
    the first branch dead-ends.  With ``plain_only`` only ``psi_a`` is
    stripped, so success means ``sigma`` is standard.
    """
    if prefer not in ("plain", "barred"):
        raise ValueError("prefer must be 'plain' or 'barred'")
    alphabet = sigma.alphabet
    dead: set[tuple[str, ...]] = set()
    deepest = [0, "no common first or last letter"]

    def options(images):
        firsts = {w[0] for w in images}
        lasts = {w[-1] for w in images}
        opts = []
        if len(firsts) == 1:
            opts.append((False, next(iter(firsts))))
        if len(lasts) == 1 and not plain_only:
            opts.append((True, next(iter(lasts))))
        if prefer == "barred":
            opts.reverse()
        return opts

    # iterative depth-first search with backtracking
    stack = [(sigma.images, (), ())]
    while stack:
        images, path, choices = stack.pop()
        if images in dead:
            continue
        if all(len(w) == 1 for w in images):
            if len(set(images)) == len(images):
                return EpiDecomposition(tuple(path), Permutation(alphabet, images), tuple(choices))
            dead.add(images)
            if len(path) >= deepest[0]:
                deepest[:] = [len(path), "images are single letters but not a bijection"]
            continue
        children = []
        for barred, a in options(images):
            stripped = (_strip_barred if barred else _strip_plain)(images, a)
            if stripped is None:
                continue
            step = SpinnedLetter(a, barred)
            children.append((stripped, path + (step,), choices + (("barred" if barred else "plain"),)))
        if not children:
            dead.add(images)
            if len(path) >= deepest[0]:
                deepest[:] = [len(path), "no common first or last letter allows stripping"]
            continue
        # push in reverse so the preferred option is explored first
        stack.extend(reversed(children))
    raise NotEpisturmian(f"{sigma} is not episturmian: stuck after {deepest[0]} steps ({deepest[1]})",
                         step=deepest[0])


def is_episturmian(sigma: Morphism) -> bool:
    try:
        decompose_episturmian(sigma)
    except NotEpisturmian:
        return False
    return True


def is_standard(sigma: Morphism) -> bool:
    try:
        decompose_episturmian(sigma, plain_only=True)
    except NotEpisturmian:
        return False
    return True


# --------------------------------------------------------------------------
# periodic points


def fixed_point_prefix(sigma: Morphism, letter: str, length: int, power: int = 1) -> str:
    """Prefix of the fixed point of ``sigma**power`` starting with ``letter``.

    Requires the image of ``letter`` to start with it and to be longer than
    one letter; primitivity is not required.
    """
    tau = sigma.power(power)
    seed = tau[letter]
    if not seed.startswith(letter) or len(seed) < 2:
        raise MorphismError(f"{letter!r} does not seed a fixed point of {tau}")
    w = letter
    while len(w) < length:
        grown = tau(w[:length])
        if len(grown) == len(w):
            raise MorphismError(f"fixed point of {tau} from {letter!r} stops growing at {len(w)} letters")
        w = grown
    return w[:length]


def periodic_point_prefix(sigma: Morphism, length: int) -> str:
    """Prefix of a periodic point of a primitive morphism.

    The seed is the first pair ``(p, a)`` in the order ``p = 1..2|A|``,
    alphabet order for ``a``, such that ``sigma^p(a)`` starts with ``a``
    and is longer than ``a``.
    """
    if not sigma.is_primitive:
        raise NotPrimitiveError(f"{sigma} is not primitive")
    tau = Morphism.identity(sigma.alphabet)
    for p in range(1, 2 * len(sigma.alphabet) + 1):
        tau = compose(sigma, tau)
        for a in sigma.alphabet:
            img = tau[a]
            if img.startswith(a) and len(img) > 1:
                return fixed_point_prefix(tau, a, length)
    raise MorphismError(f"no growing seed found for {sigma} within {2 * len(sigma.alphabet)} powers")


def d_bonacci(d: int) -> Morphism:
    """``psi_{a_1} o (a_1 a_2 ... a_d)``."""
    alphabet = Alphabet.first(d)
    cycle = Permutation.from_cycles(alphabet, "(" + " ".join(alphabet.letters) + ")")
    return compose(elementary_psi(alphabet, alphabet.letters[0]), cycle)


def parse_epi(text: str, alphabet: Alphabet | None = None) -> Morphism:
    """Parse ``psi:<spinned>[:<cycles>[:<letters>]]``, e.g. ``psi:abb:(a c b)``."""
    parts = text.split(":")
    if parts[0] != "psi" or not 2 <= len(parts) <= 4:
        raise MorphismParseError(f"expected psi:<word>[:<cycles>[:<letters>]], got {text!r}")
    u = parse_spinned(parts[1])
    cycles = parts[2] if len(parts) > 2 else ""
    if len(parts) > 3 and parts[3]:
        alphabet = Alphabet.of(parts[3])
    if alphabet is None:
        used = {x.letter for x in u} | set(re.sub(r"[^\w]", "", cycles))
        top = max(used) if used else "b"
        alphabet = Alphabet.of("".join(chr(c) for c in range(ord("a"), max(ord(top), ord("b")) + 1)))
    perm = Permutation.from_cycles(alphabet, cycles)
    return compose(apply_spinned(alphabet, u), perm)


def parse_any(text: str, alphabet: Alphabet | None = None) -> Morphism:
    """Rule text, ``psi:`` shorthand, or a JSON object."""
    text = text.strip()
    if text.startswith("{"):
        return Morphism.from_json(text)
    if text.startswith("psi:"):
        return parse_epi(text, alphabet)
    return Morphism.parse(text, alphabet)

