"""Return sets: brute force from a periodic point, and in closed form from the directive word."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .language import (
    LanguageError,
    compute_language,
    directive_word,
    locate_in_directive,
    require_factor,
)
from .morphism import Morphism, conjugate_left, conjugate_right, periodic_point_prefix, psi, psi_bar
from .palindromic import DirectiveWord, pal, pal_inverse
from .words import Alphabet, gcp, gcs

ORACLE_START = 64
ORACLE_CAP = 1 << 22


class ReturnsError(RuntimeError):
    pass


@dataclass(frozen=True)
class ReturnComputation:
    u: str
    left_returns: tuple[str, ...]
    right_returns: tuple[str, ...]
    d: str | None
    ell: int | None
    ell_prime: int | None
    method: str

    def returns(self, side: str) -> tuple[str, ...]:
        return self.left_returns if side == "left" else self.right_returns

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "method": self.method,
            "d": self.d,
            "ell": self.ell,
            "ell_prime": self.ell_prime,
            "left_returns": list(self.left_returns),
            "right_returns": list(self.right_returns),
        }


def canonical(words) -> tuple[str, ...]:
    """Return words in canonical order: shortest first, then lexicographic."""
    return tuple(sorted(set(words), key=lambda w: (len(w), w)))


# --------------------------------------------------------------------------
# oracle


@lru_cache(maxsize=64)
def _orbit_prefix(sigma: Morphism, length: int) -> str:
    return periodic_point_prefix(sigma, length)


def _gaps(text: str, u: str) -> tuple[set[str], set[str]]:
    pos = [m.start() for m in re.finditer(f"(?={re.escape(u)})", text)]
    k = len(u)
    left = {text[i:j] for i, j in zip(pos, pos[1:])}
    right = {text[i + k:j + k] for i, j in zip(pos, pos[1:])}
    return left, right


def _certified_length(sigma: Morphism, prefixes_of, start: int, cap: int) -> tuple[int, frozenset[str]]:
    """Least doubling ``M`` such that every length-``M`` factor ``f`` contains a
    second occurrence of each word in ``prefixes_of(f)``.

    Every complete return word ``ru`` is then at most ``M`` letters long.
    """
    m = start
    while True:
        window = compute_language(sigma, m).factors
        if all(f.find(u, 1) >= 0 for f in window for u in prefixes_of(f)):
            return m, window
        m *= 2
        if m > cap:
            raise ReturnsError(f"no return bound for {sigma} within windows of {cap} letters")


def _scan_until_covered(sigma: Morphism, m: int, window: frozenset[str], start: int, cap: int) -> str:
    """A periodic-point prefix in which every factor of ``window`` occurs."""
    length = max(start, 4 * m)
    while True:
        text = _orbit_prefix(sigma, length)
        if len(window) <= len(text) - m + 1 and window <= {text[i:i + m] for i in range(len(text) - m + 1)}:
            return text
        length *= 2
        if length > cap:
            raise ReturnsError(f"periodic point of {sigma} misses length-{m} factors within {cap} symbols")


def returns_oracle_both(sigma: Morphism, u: str, start: int = ORACLE_START,
                        cap: int = ORACLE_CAP) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Left and right return sets of ``u`` scanned off a periodic point.

    Return words are read off as gaps between consecutive occurrences of
    ``u`` in a prefix of a periodic point.  The prefix is long enough when
    it contains every factor of some length ``M`` such that each such
    factor starting with ``u`` holds a second occurrence of ``u``: every
    return word is then witnessed.  Both facts are checked against the
    language window, so the result is exact rather than a stabilization
    guess.
    """
    require_factor(sigma, u)
    m, window = _certified_length(sigma, lambda f: (u,) if f.startswith(u) else (),
                                  max(2 * len(u), 8), cap)
    left, right = _gaps(_scan_until_covered(sigma, m, window, start, cap), u)
    return canonical(left), canonical(right)


def _all_gaps(text: str, n_max: int) -> dict[str, tuple[frozenset[str], frozenset[str]]]:
    out: dict[str, tuple[frozenset[str], frozenset[str]]] = {}
    for n in range(1, n_max + 1):
        last: dict[str, int] = {}
        left: dict[str, set[str]] = {}
        right: dict[str, set[str]] = {}
        for i in range(len(text) - n + 1):
            w = text[i:i + n]
            p = last.get(w)
            if p is not None:
                left.setdefault(w, set()).add(text[p:i])
                right.setdefault(w, set()).add(text[p + n:i + n])
            last[w] = i
        for w in last:
            out[w] = (frozenset(left.get(w, ())), frozenset(right.get(w, ())))
    return out


def all_returns_oracle(sigma: Morphism, n_max: int, start: int = 256,
                       cap: int = ORACLE_CAP) -> dict[str, tuple[tuple[str, ...], tuple[str, ...]]]:
    """Left and right return sets of every factor of length ``1..n_max``, from one periodic point.

    Same certificate as :func:`returns_oracle_both`, applied to all
    factors of length at most ``n_max`` at once.
    """
    m, window = _certified_length(sigma, lambda f: (f[:k] for k in range(1, n_max + 1)),
                                  2 * n_max, cap)
    gaps = _all_gaps(_scan_until_covered(sigma, m, window, start, cap), n_max)
    return {w: (canonical(a), canonical(b)) for w, (a, b) in gaps.items()}


def returns_oracle(sigma: Morphism, u: str, side: str = "left") -> tuple[str, ...]:
    left, right = returns_oracle_both(sigma, u)
    return left if side == "left" else right


def oracle_computation(sigma: Morphism, u: str) -> ReturnComputation:
    left, right = returns_oracle_both(sigma, u)
    d = ell = ell_prime = None
    if len(left) >= 2:
        d, ell, ell_prime = dll_from_pair(left[0], left[1], u)
    return ReturnComputation(u, left, right, d, ell, ell_prime, "oracle")


# --------------------------------------------------------------------------
# closed form


def conjugate_psi(alphabet: Alphabet, u: str, i: int, side: str = "right") -> Morphism:
    """``psi_u^{(i)}`` (right) or ``psibar_u^{(i)}`` (left).

    The right version conjugates ``psi_u`` by the length-``i`` prefix of
    ``Pal(u)``; the left version conjugates ``psibar_u`` by its
    length-``i`` suffix.
    """
    p = pal(u)
    if not 0 <= i <= len(p):
        raise ValueError(f"conjugate index {i} outside 0..{len(p)}")
    if side == "right":
        out = conjugate_right(psi(alphabet, u), p[:i])
    elif side == "left":
        out = conjugate_left(psi_bar(alphabet, u), p[len(p) - i:])
    else:
        raise ValueError("side must be 'right' or 'left'")
    if out is None:
        raise ReturnsError(f"conjugate {i} of psi_{u} is undefined")
    return out


def returns_closed_form(sigma: Morphism, u: str, verify_factor: bool = True) -> ReturnComputation:
    """Both return sets of ``u`` from the shortest ``Pal(d[:n])`` containing it.

    With ``verify_factor=False`` the language window check is skipped; a
    successful location in ``Pal(d[:n])`` already proves membership.
    """
    if not u:
        raise ValueError("return sets of the empty word are not covered")
    if verify_factor:
        require_factor(sigma, u)
    return _closed_form(sigma.alphabet, directive_word(sigma), u)


@lru_cache(maxsize=1 << 17)
def _closed_form(alphabet: Alphabet, directive: DirectiveWord, u: str) -> ReturnComputation:
    try:
        loc = locate_in_directive(directive, u)
    except LanguageError as exc:
        raise ReturnsError(str(exc)) from exc
    left = conjugate_psi(alphabet, loc.d, loc.ell, "right").images
    right = conjugate_psi(alphabet, loc.d, loc.ell_prime, "left").images
    return ReturnComputation(u, canonical(left), canonical(right), loc.d, loc.ell, loc.ell_prime, "closed_form")


def dll_from_pair(r: str, s: str, u: str, side: str = "left") -> tuple[str, int, int]:
    """``(d(u), l(u), l'(u))`` from two distinct return words of ``u``.

    ``x = gcs(rs, sr)`` and ``y = gcp(rs, sr)`` satisfy ``xy = Pal(d(u))``.
    For left returns ``l = |x|``; for right returns ``l' = |y|``; the other
    offset follows from ``l + |u| + l' = |Pal(d(u))|``.
    """
    if r == s:
        raise ValueError("dll_from_pair needs two distinct return words")
    x, y = gcs(r + s, s + r), gcp(r + s, s + r)
    d = pal_inverse(x + y)
    total = len(x) + len(y)
    if side == "left":
        ell = len(x)
        return d, ell, total - ell - len(u)
    if side == "right":
        ell_prime = len(y)
        return d, total - ell_prime - len(u), ell_prime
    raise ValueError("side must be 'left' or 'right'")


def dll_all_pairs(returns: tuple[str, ...], u: str, side: str = "left") -> set[tuple[str, int, int]]:
    return {dll_from_pair(r, s, u, side) for r, s in combinations(returns, 2)}


def return_relation_holds(u: str, left: tuple[str, ...], right: tuple[str, ...]) -> bool:
    """``R(u) = u Rbar(u) u^{-1}``."""
    conj = set()
    for r in right:
        t = u + r
        if not t.endswith(u):
            return False
        conj.add(t[:len(t) - len(u)])
    return conj == set(left)


def compare(sigma: Morphism, u: str) -> tuple[ReturnComputation, ReturnComputation, bool]:
    closed = returns_closed_form(sigma, u)
    oracle = oracle_computation(sigma, u)
    match = closed.left_returns == oracle.left_returns and closed.right_returns == oracle.right_returns
    return closed, oracle, match
