"""Finite windows of the language of ``X_sigma``, special factors and Rauzy graphs."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .conjugacy import standard_conjugate
from .morphism import (
    Morphism,
    NotPrimitiveError,
    compose,
    decompose_episturmian,
)
from .palindromic import DirectiveWord, pal_closure

ITERATION_CAP = 50
SYMBOL_CAP = 10**7
PAL_CAP = 10**6


class LanguageError(RuntimeError):
    pass


class NotInLanguage(LanguageError):
    pass


class ShapeError(LanguageError):
    """The Rauzy graph does not split into one inner and several outer branches."""


@dataclass(frozen=True)
class LanguageWindow:
    n: int
    factors: frozenset[str]
    iterations: int

    def __contains__(self, w: object) -> bool:
        return w in self.factors

    def __len__(self) -> int:
        return len(self.factors)

    def sorted(self) -> list[str]:
        return sorted(self.factors)


@lru_cache(maxsize=256)
def two_letter_factors(sigma: Morphism) -> frozenset[str]:
    """Length-2 factors of ``X_sigma`` as the closure of ``{cd in sigma(a)}`` under ``sigma``."""
    found: set[str] = set()
    todo = []
    for img in sigma.images:
        for i in range(len(img) - 1):
            todo.append(img[i:i + 2])
    while todo:
        xy = todo.pop()
        if xy in found:
            continue
        found.add(xy)
        img = sigma(xy)
        for i in range(len(img) - 1):
            f = img[i:i + 2]
            if f not in found:
                todo.append(f)
    return frozenset(found)


def compute_language(sigma: Morphism, n: int) -> LanguageWindow:
    """Length-``n`` factors of ``X_sigma`` for a primitive ``sigma``.

    With ``k`` the least power such that every ``sigma^k(a)`` has at least
    ``n - 1`` letters, the window is the set of length-``n`` factors of the
    words ``sigma^k(xy)`` for ``xy`` a two-letter factor.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not sigma.is_primitive:
        raise NotPrimitiveError(f"{sigma} is not primitive")
    if n == 0:
        return LanguageWindow(0, frozenset({""}), 0)
    pairs = two_letter_factors(sigma)
    if n == 1:
        return LanguageWindow(1, frozenset("".join(pairs)), 0)
    powers = {a: a for a in sigma.alphabet}
    k = 0
    while min(len(w) for w in powers.values()) < n - 1:
        k += 1
        powers = {a: sigma(w) for a, w in powers.items()}
        if k > ITERATION_CAP or sum(len(w) for w in powers.values()) > SYMBOL_CAP:
            raise LanguageError(f"language window n={n} of {sigma} exceeds the iteration cap")
    out: set[str] = set()
    for w in powers.values():
        out.update(w[i:i + n] for i in range(len(w) - n + 1))
    for xy in pairs:
        w = powers[xy[0]][-(n - 1):] + powers[xy[1]][:n - 1]
        out.update(w[i:i + n] for i in range(len(w) - n + 1))
    return LanguageWindow(n, frozenset(out), k)


# Memoized for the small windows used everywhere; long one-off windows should
# call compute_language directly.
language = lru_cache(maxsize=4096)(compute_language)


def in_language(sigma: Morphism, w: str) -> bool:
    return w in language(sigma, len(w))


def require_factor(sigma: Morphism, w: str) -> None:
    if not in_language(sigma, w):
        raise NotInLanguage(f"{w!r} is not a factor of the shift of {sigma}")


def left_extensions(sigma: Morphism, w: str) -> list[str]:
    nxt = language(sigma, len(w) + 1)
    return [a for a in sigma.alphabet if a + w in nxt]


def right_extensions(sigma: Morphism, w: str) -> list[str]:
    nxt = language(sigma, len(w) + 1)
    return [a for a in sigma.alphabet if w + a in nxt]


def is_left_special(sigma: Morphism, w: str) -> bool:
    return len(left_extensions(sigma, w)) >= 2


def is_right_special(sigma: Morphism, w: str) -> bool:
    return len(right_extensions(sigma, w)) >= 2


@lru_cache(maxsize=4096)
def special_factors(sigma: Morphism, n: int) -> tuple[str | None, str | None, bool]:
    """``(L_n, R_n, L_n == R_n)``; more than one special factor of either kind is an error."""
    cur = language(sigma, n)
    nxt = language(sigma, n + 1)
    left: dict[str, set[str]] = defaultdict(set)
    right: dict[str, set[str]] = defaultdict(set)
    for f in nxt.factors:
        left[f[1:]].add(f[0])
        right[f[:-1]].add(f[-1])
    ls = sorted(w for w in cur.factors if len(left[w]) >= 2)
    rs = sorted(w for w in cur.factors if len(right[w]) >= 2)
    if len(ls) > 1 or len(rs) > 1:
        raise ShapeError(f"{sigma}, n={n}: several special factors (left {ls}, right {rs})")
    lw = ls[0] if ls else None
    rw = rs[0] if rs else None
    return lw, rw, lw is not None and lw == rw


def factor_complexity(sigma: Morphism, n: int) -> int:
    return len(language(sigma, n))


# --------------------------------------------------------------------------
# Rauzy graphs


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    left: str
    right: str


@dataclass(frozen=True)
class OuterBranch:
    vertices: tuple[str, ...]
    left_label: str
    right_label: str


@dataclass(frozen=True)
class RauzyGraph:
    n: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    left_special: str
    right_special: str
    inner: tuple[str, ...]
    inner_left: str
    inner_right: str
    outer: tuple[OuterBranch, ...]
    V: dict[str, str] = field(hash=False)
    Vbar: dict[str, str] = field(hash=False)

    @property
    def U(self) -> str:
        return self.inner_left

    @property
    def Ubar(self) -> str:
        return self.inner_right

    def inner_index(self, w: str) -> int | None:
        try:
            return self.inner.index(w)
        except ValueError:
            return None

    def to_dot(self, labels: dict[str, str] | None = None) -> str:
        inner_edges = set(zip(self.inner, self.inner[1:]))
        lines = [f"digraph rauzy_{self.n} {{"]
        for v in self.vertices:
            label = v if not labels or v not in labels else f"{v}\\n{labels[v]}"
            style = ",style=bold" if v in self.inner else ""
            lines.append(f'  "{v}" [label="{label}"{style}];')
        for e in self.edges:
            style = ",style=bold" if (e.source, e.target) in inner_edges else ""
            lines.append(
                f'  "{e.source}" -> "{e.target}" [label="{e.left}",left="{e.left}",right="{e.right}"{style}];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": list(self.vertices),
            "edges": [[e.source, e.target, e.left, e.right] for e in self.edges],
            "left_special": self.left_special,
            "right_special": self.right_special,
            "inner": list(self.inner),
            "U": self.U,
            "Ubar": self.Ubar,
            "V": dict(sorted(self.V.items())),
            "Vbar": dict(sorted(self.Vbar.items())),
        }


@lru_cache(maxsize=1024)
def rauzy_graph(sigma: Morphism, n: int) -> RauzyGraph:
    lw, rw, _ = special_factors(sigma, n)
    if lw is None or rw is None:
        raise ShapeError(f"{sigma}, n={n}: no left or right special factor")
    vertices = tuple(language(sigma, n).sorted())
    edges = tuple(
        Edge(f[:-1], f[1:], f[0], f[-1]) for f in language(sigma, n + 1).sorted()
    )
    out: dict[str, list[Edge]] = defaultdict(list)
    for e in edges:
        out[e.source].append(e)

    def walk(first: Edge, stop: str) -> tuple[list[str], str, str]:
        path, lefts, rights = [first.source], [], []
        e = first
        while True:
            lefts.append(e.left)
            rights.append(e.right)
            path.append(e.target)
            if e.target == stop:
                return path, "".join(lefts), "".join(rights)
            if len(path) > len(vertices) + 1:
                raise ShapeError(f"{sigma}, n={n}: walk from {first.source} never reaches {stop}")
            succ = out[e.target]
            if len(succ) != 1:
                raise ShapeError(f"{sigma}, n={n}: vertex {e.target} has {len(succ)} successors")
            e = succ[0]

    if lw == rw:
        inner, ul, ur = [lw], "", ""
    else:
        if len(out[lw]) != 1:
            raise ShapeError(f"{sigma}, n={n}: {lw} has {len(out[lw])} successors")
        inner, ul, ur = walk(out[lw][0], rw)
    outer = []
    V: dict[str, str] = {}
    Vbar: dict[str, str] = {}
    for e in sorted(out[rw], key=lambda e: e.right):
        path, vl, vr = walk(e, lw)
        outer.append(OuterBranch(tuple(path), vl, vr))
        if vl[-1] in V or vr[0] in Vbar:
            raise ShapeError(f"{sigma}, n={n}: two outer branches share an end letter")
        V[vl[-1]] = vl
        Vbar[vr[0]] = vr
    seen = list(inner)
    for b in outer:
        seen.extend(b.vertices[1:-1])
    if sorted(seen) != sorted(vertices):
        raise ShapeError(f"{sigma}, n={n}: branches do not partition the vertex set")
    return RauzyGraph(n, vertices, edges, lw, rw, tuple(inner), ul, ur, tuple(outer), V, Vbar)


@dataclass
class EvolutionReport:
    n: int
    case: str
    letter: str
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def evolution_check(sigma: Morphism, n: int) -> EvolutionReport:
    """Check how branch labels of ``Gamma_n`` become those of ``Gamma_{n+1}``."""
    g0 = rauzy_graph(sigma, n)
    g1 = rauzy_graph(sigma, n + 1)
    bad: list[str] = []
    a = g1.left_special[-1]
    if g1.left_special != g0.left_special + a:
        bad.append(f"L_{n+1}={g1.left_special} does not extend L_{n}={g0.left_special}")
    if g1.right_special != a + g0.right_special:
        bad.append(f"R_{n+1}={g1.right_special} != {a}+R_{n}={g0.right_special}")

    def expect(name, got, want):
        if got != want:
            bad.append(f"{name}: got {got!r}, expected {want!r}")

    if g0.left_special != g0.right_special:
        case = "split"
        expect("U_{n+1}a = U_n", g1.U + a, g0.U)
        expect("aUbar_{n+1} = Ubar_n", a + g1.Ubar, g0.Ubar)
        for b in sigma.alphabet:
            expect(f"V_{b},n+1", g1.V.get(b), a + g0.V[b] if b in g0.V else None)
            expect(f"Vbar_{b},n+1", g1.Vbar.get(b), g0.Vbar[b] + a if b in g0.Vbar else None)
    else:
        case = "bispecial"
        expect("U_{n+1}a = V_{a,n}", g1.U + a, g0.V.get(a))
        expect("aUbar_{n+1} = Vbar_{a,n}", a + g1.Ubar, g0.Vbar.get(a))
        expect(f"V_{a},n+1", g1.V.get(a), a)
        expect(f"Vbar_{a},n+1", g1.Vbar.get(a), a)
        for b in sigma.alphabet:
            if b == a:
                continue
            expect(f"V_{b},n+1", g1.V.get(b), a + g0.V[b] if b in g0.V else None)
            expect(f"Vbar_{b},n+1", g1.Vbar.get(b), g0.Vbar[b] + a if b in g0.Vbar else None)
    return EvolutionReport(n, case, a, bad)


# --------------------------------------------------------------------------
# directive words


@lru_cache(maxsize=1024)
def directive_word(sigma: Morphism) -> DirectiveWord:
    """Periodic directive word ``(u pi(u) ... pi^{k-1}(u))^oo`` from the standard conjugate ``psi_u o pi``."""
    if not sigma.is_primitive:
        raise NotPrimitiveError(f"{sigma} is not primitive")
    std, _ = standard_conjugate(sigma)
    dec = decompose_episturmian(std, plain_only=True)
    u, perm = dec.directive, dec.perm
    period = "".join(perm.power(i)(u) for i in range(perm.order))
    return DirectiveWord("", period)


def standard_power(sigma: Morphism) -> Morphism:
    """``(psi_u o pi)^k = psi_{u pi(u) ...}`` for the standard conjugate; used as a cross-check."""
    std, _ = standard_conjugate(sigma)
    dec = decompose_episturmian(std, plain_only=True)
    result = Morphism.identity(sigma.alphabet)
    for _ in range(dec.perm.order):
        result = compose(std, result)
    return result


@dataclass(frozen=True)
class Location:
    """Position of ``w`` inside the shortest ``Pal(d[:n])`` containing it."""

    n: int
    d: str
    ell: int
    ell_prime: int
    palindrome: str


def locate_in_directive(directive: DirectiveWord, w: str, pal_cap: int = PAL_CAP) -> Location:
    if not w:
        raise ValueError("the empty word has no location")
    p = ""
    n = 0
    while True:
        n += 1
        p = pal_closure(p + directive[n - 1])
        i = p.find(w)
        if i >= 0:
            if p.find(w, i + 1) >= 0:
                raise LanguageError(f"{w!r} occurs twice in Pal({directive.prefix(n)})")
            return Location(n, directive.prefix(n), i, len(p) - i - len(w), p)
        if len(p) > pal_cap:
            raise LanguageError(f"{w!r} not found in Pal(d[:n]) within {pal_cap} symbols")


@dataclass(frozen=True)
class InnerWordData:
    is_inner: bool
    i: int | None
    d: str
    ell: int
    ell_prime: int


def bispecial_prefix_count(sigma: Morphism, p: int) -> int:
    """Number of bispecial proper prefixes of ``L_p``, the empty word included."""
    return sum(1 for k in range(p) if special_factors(sigma, k)[2])


def inner_word_data(sigma: Morphism, w: str) -> InnerWordData:
    require_factor(sigma, w)
    g = rauzy_graph(sigma, len(w))
    i = g.inner_index(w)
    if i is None:
        loc = locate_in_directive(directive_word(sigma), w)
        return InnerWordData(False, None, loc.d, loc.ell, loc.ell_prime)
    n = bispecial_prefix_count(sigma, len(w))
    d = directive_word(sigma).prefix(n)
    return InnerWordData(True, i, d, i, len(g.U) - i)


def dl_annotations(sigma: Morphism, n: int) -> dict[str, tuple[str, int]]:
    """``(d(w), l(w))`` for every vertex of ``Gamma_n``."""
    out = {}
    for v in rauzy_graph(sigma, n).vertices:
        data = inner_word_data(sigma, v)
        out[v] = (data.d, data.ell)
    return out
