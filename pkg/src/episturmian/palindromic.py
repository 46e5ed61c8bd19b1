"""Palindromic closure, iterated palindromic closure and Justin's formulas."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .morphism import apply_spinned, psi, psi_bar
from .words import Alphabet, longest_palindromic_suffix

DEFAULT_DIRECTIVE_CAP = 10**5


class NotInImage(ValueError):
    """The word is not of the form ``Pal(u)``."""


class DirectiveCapError(RuntimeError):
    pass


def pal_closure(x: str) -> str:
    """Shortest palindrome having ``x`` as a prefix."""
    k = longest_palindromic_suffix(x)
    head = x[:len(x) - k]
    return x + head[::-1]


def pal(u: str) -> str:
    """Iterated palindromic closure ``Pal(u)``."""
    p = ""
    for a in u:
        p = pal_closure(p + a)
    return p


def pal_prefixes(u: str) -> Iterator[str]:
    """Yield ``Pal(u[:k])`` for ``k = 0, 1, ..., len(u)``."""
    p = ""
    yield p
    for a in u:
        p = pal_closure(p + a)
        yield p


def pal_inverse(p: str) -> str:
    """The unique ``u`` with ``Pal(u) == p``.

    Each directive letter is read off ``p`` right after the palindromic
    prefix built so far; every closure step must reproduce a prefix of
    ``p``.  Raises :class:`NotInImage` otherwise.
    """
    u = []
    cur = ""
    while len(cur) < len(p):
        a = p[len(cur)]
        cur = pal_closure(cur + a)
        if len(cur) > len(p) or p[:len(cur)] != cur:
            raise NotInImage(f"{p!r} is not an iterated palindromic closure (fails after {''.join(u) + a!r})")
        u.append(a)
    return "".join(u)


def justin_left(alphabet: Alphabet, u: str, v: str) -> tuple[str, str]:
    """Both sides of ``Pal(uv) = psi_u(Pal(v)) Pal(u)``."""
    return pal(u + v), psi(alphabet, u)(pal(v)) + pal(u)


def justin_right(alphabet: Alphabet, u: str, v: str) -> tuple[str, str]:
    """Both sides of ``Pal(uv) = Pal(u) psibar_u(Pal(v))``."""
    return pal(u + v), pal(u) + psi_bar(alphabet, u)(pal(v))


def pal_length(alphabet: Alphabet, u: str) -> int:
    """``|Pal(u)|`` computed from the norm of ``psi_u`` alone."""
    num = psi(alphabet, u).norm - 1
    den = len(alphabet) - 1
    if num % den:
        raise ArithmeticError(f"norm of psi_{u} minus one is not divisible by {den}")
    return num // den - 1


@dataclass(frozen=True)
class TreeNode:
    word: str
    images: tuple[str, ...]


def standard_tree(alphabet: Alphabet, depth: int) -> list[TreeNode]:
    """Standard tuples ``(psi_u(a))_a`` for every ``u`` with ``|u| <= depth``.

    Nodes come breadth-first, children in alphabet order.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return [TreeNode(u, apply_spinned(alphabet, u).images) for u in alphabet.words_upto(depth)]


def standard_tree_dot(alphabet: Alphabet, depth: int) -> str:
    lines = ["digraph standard_tree {", "  node [shape=box];"]
    for node in standard_tree(alphabet, depth):
        label = "\\n".join(node.images)
        lines.append(f'  "{node.word or "ε"}" [label="{label}"];')
        if node.word:
            parent = node.word[:-1] or "ε"
            lines.append(f'  "{parent}" -> "{node.word}" [label="{node.word[-1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DirectiveWord:
    """An eventually periodic directive word ``preperiod . period^oo``."""

    preperiod: str
    period: str
    cap: int = DEFAULT_DIRECTIVE_CAP

    def __post_init__(self):
        if not self.period:
            raise ValueError("the period of a directive word must be nonempty")

    @property
    def is_nondegenerate(self) -> bool:
        return len(set(self.period)) >= 2

    def prefix(self, n: int) -> str:
        if n > self.cap:
            raise DirectiveCapError(f"directive prefix of length {n} exceeds the cap {self.cap}")
        if n <= len(self.preperiod):
            return self.preperiod[:n]
        rest = n - len(self.preperiod)
        reps = -(-rest // len(self.period))
        return self.preperiod + (self.period * reps)[:rest]

    def __getitem__(self, i: int) -> str:
        return self.prefix(i + 1)[i]

    def pal_prefixes(self) -> Iterator[tuple[int, str]]:
        """Yield ``(n, Pal(d[:n]))`` for ``n = 0, 1, ...`` up to the cap."""
        p = ""
        yield 0, p
        for n in range(1, self.cap + 1):
            p = pal_closure(p + self[n - 1])
            yield n, p
        raise DirectiveCapError(f"directive word exhausted its cap of {self.cap} letters")

    def __str__(self) -> str:
        return f"{self.preperiod}({self.period})^oo" if self.preperiod else f"({self.period})^oo"
