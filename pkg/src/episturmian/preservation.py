"""The return preservation property and the words that break it."""

from __future__ import annotations

from dataclasses import dataclass, field

from .conjugacy import MinLetterReport, class_span, conjugacy_index, minimal_letter
from .language import (
    in_language,
    is_left_special,
    is_right_special,
    language,
    rauzy_graph,
    require_factor,
    special_factors,
)
from .morphism import Morphism, NotPrimitiveError
from .returns import ReturnsError, canonical, returns_closed_form, returns_oracle_both
from .words import gcp, gcs


class TheoryViolation(RuntimeError):
    """A computed object contradicts a statement that must hold for primitive episturmian morphisms."""


@dataclass(frozen=True)
class PreservationVerdict:
    """``sigma(R(u)) == R(sigma(u))`` (P) and its right-return dual (P')."""

    u: str
    image: str
    holds_P: bool
    holds_P_prime: bool
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    lhs_prime: tuple[str, ...]
    rhs_prime: tuple[str, ...]
    witness: str | None

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "image": self.image,
            "holds_P": self.holds_P,
            "holds_P_prime": self.holds_P_prime,
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
            "lhs_prime": list(self.lhs_prime),
            "rhs_prime": list(self.rhs_prime),
            "witness": self.witness,
        }


def _require_primitive(sigma: Morphism) -> None:
    if not sigma.is_primitive:
        raise NotPrimitiveError(f"{sigma} is not primitive")


def check_preservation(sigma: Morphism, u: str, cross_check: bool = False) -> PreservationVerdict:
    """Compare ``sigma(R(u))`` with ``R(sigma(u))`` on both sides.

    Return sets come from the closed form.  With ``cross_check`` they are
    recomputed by the oracle, and any disagreement raises
    :class:`ReturnsError`.
    """
    _require_primitive(sigma)
    require_factor(sigma, u)
    image = sigma(u)
    src = returns_closed_form(sigma, u, verify_factor=False)
    dst = returns_closed_form(sigma, image, verify_factor=False)
    if cross_check:
        for word, comp in ((u, src), (image, dst)):
            left, right = returns_oracle_both(sigma, word)
            if (left, right) != (comp.left_returns, comp.right_returns):
                raise ReturnsError(f"closed form and oracle disagree on the return sets of {word!r}")
    lhs = canonical(sigma(r) for r in src.left_returns)
    lhs_prime = canonical(sigma(r) for r in src.right_returns)
    rhs, rhs_prime = dst.left_returns, dst.right_returns
    holds_p, holds_pp = lhs == rhs, lhs_prime == rhs_prime
    if holds_p != holds_pp:
        raise TheoryViolation(f"(P) and (P') disagree for {u!r} under {sigma}")
    diff = canonical(set(lhs) ^ set(rhs))
    return PreservationVerdict(u, image, holds_p, holds_pp, lhs, rhs, lhs_prime, rhs_prime,
                               diff[0] if diff else None)


# --------------------------------------------------------------------------
# obstruction words


@dataclass(frozen=True)
class ObstructionWord:
    n: int
    family: int  # 1: a_min L_n, 2: R_n a_min
    word: str


def obstruction_cases(report: MinLetterReport) -> str:
    first = report.ind >= report.j
    second = report.ind <= report.m - report.j
    if first and second:
        return "both"
    if first:
        return "1"
    if second:
        return "2"
    return "neither"


def obstruction_words(sigma: Morphism, n_max: int) -> list[ObstructionWord]:
    """``a_min L_n`` and/or ``R_n a_min`` for every ``n <= n_max`` with ``L_n = R_n``."""
    _require_primitive(sigma)
    report = minimal_letter(sigma)
    case = obstruction_cases(report)
    if case == "neither":
        raise TheoryViolation(f"{sigma}: neither obstruction family applies (ind={report.ind}, j={report.j}, m={report.m})")
    out = []
    for n in range(n_max + 1):
        left, right, bispecial = special_factors(sigma, n)
        if not bispecial:
            continue
        if case in ("1", "both"):
            out.append(ObstructionWord(n, 1, report.a_min + left))
        if case in ("2", "both"):
            out.append(ObstructionWord(n, 2, right + report.a_min))
    return out


@dataclass(frozen=True)
class ObstructionReport:
    sigma: Morphism
    a_min: str
    j: int
    ind: int
    m: int
    case: str
    tested: tuple[tuple[ObstructionWord, PreservationVerdict], ...]
    onset: int | None

    @property
    def exceptions(self) -> list[ObstructionWord]:
        """Obstruction words for which (P) nevertheless holds."""
        return [w for w, v in self.tested if v.holds_P]

    def rows(self) -> list[tuple[int, int, str, bool]]:
        return [(w.n, w.family, w.word, v.holds_P) for w, v in self.tested]

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_text(),
            "a_min": self.a_min,
            "j": self.j,
            "ind": self.ind,
            "m": self.m,
            "case": self.case,
            "onset": self.onset,
            "tested": [
                {"n": w.n, "family": w.family, "word": w.word, "holds_P": v.holds_P, "witness": v.witness}
                for w, v in self.tested
            ],
        }


def onset_of(tested) -> int | None:
    """Least tested ``n`` from which every verdict fails; ``None`` if the last one holds."""
    ns = sorted({w.n for w, _ in tested})
    holding = {w.n for w, v in tested if v.holds_P}
    onset = None
    for n in reversed(ns):
        if n in holding:
            break
        onset = n
    return onset


def run_obstruction_suite(sigma: Morphism, n_max: int, cross_check: bool = False) -> ObstructionReport:
    report = minimal_letter(sigma)
    words = obstruction_words(sigma, n_max)
    tested = tuple((w, check_preservation(sigma, w.word, cross_check)) for w in words)
    return ObstructionReport(sigma, report.a_min, report.j, report.ind, report.m,
                             obstruction_cases(report), tested, onset_of(tested))


# --------------------------------------------------------------------------
# the lemmas behind the obstruction


@dataclass
class LemmaReport:
    n: int
    checked: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def expect(self, name: str, condition: bool) -> None:
        self.checked.append(name)
        if not condition:
            self.violations.append(name)


def _special_image_claims(sigma: Morphism, n: int, rep: MinLetterReport, out: LemmaReport) -> None:
    """Images of ``a_min L_n``, ``a_min R_n``, ``R_n a_min``, ``L_n a_min`` at the four critical indices."""
    left, right, _ = special_factors(sigma, n)
    a = rep.a_min
    claims = (
        (rep.j, "sigma(a_min L_n) left special", a + left, is_left_special),
        (rep.m, "sigma(a_min R_n) right special", a + right, is_right_special),
        (rep.m - rep.j, "sigma(R_n a_min) right special", right + a, is_right_special),
        (0, "sigma(L_n a_min) left special", left + a, is_left_special),
    )
    for index, name, word, special in claims:
        if rep.ind != index:
            continue
        image = sigma(word)
        out.expect(f"{name} (n={n})", in_language(sigma, image) and special(sigma, image))


def _placement_claims(sigma: Morphism, n: int, rep: MinLetterReport, out: LemmaReport) -> None:
    """Position of ``sigma(a_min L_n)`` / ``sigma(R_n a_min)`` on the inner branch of ``Gamma_k``."""
    left, right, bispecial = special_factors(sigma, n)
    if not bispecial:
        return
    a = rep.a_min
    k = len(sigma(a + left))
    graph = rauzy_graph(sigma, k)
    gap = rep.m - rep.j
    families = []
    if rep.ind >= rep.j:
        families.append(("sigma(a_min L_n)", sigma(a + left), rep.ind - rep.j, graph.left_special, "left"))
    if rep.ind <= gap:
        families.append(("sigma(R_n a_min)", sigma(right + a), rep.ind, graph.right_special, "right"))
    for name, image, index, anchor, side in families:
        rets = returns_closed_form(sigma, anchor, verify_factor=False).returns(side)
        sufficient = min(len(r) for r in rets) > gap
        placed = graph.inner_index(image) == index
        if sufficient:
            out.expect(f"{name} is inner word {index} of Gamma_{k} (n={n})", placed)
        else:
            out.notes.append(f"n={n}: return words to the special factor of length {k} are not all longer "
                             f"than {gap}; placement of {name} {'holds' if placed else 'fails'}")


def _gcs_gcp_bounds(sigma: Morphism, rep: MinLetterReport, out: LemmaReport, max_len: int) -> None:
    """Lower bounds on ``gcs``/``gcp`` of images of return pairs, tight exactly at special factors."""
    for length in range(1, max_len + 1):
        for u in language(sigma, length).sorted():
            comp = returns_closed_form(sigma, u, verify_factor=False)
            lefts, rights = comp.left_returns, comp.right_returns
            lspecial, rspecial = is_left_special(sigma, u), is_right_special(sigma, u)
            for i, r in enumerate(lefts):
                for s in lefts[i + 1:]:
                    x = len(gcs(sigma(r + s), sigma(s + r)))
                    out.expect(f"gcs bound for {u}", x >= rep.ind and (x == rep.ind) == lspecial)
            for i, r in enumerate(rights):
                for s in rights[i + 1:]:
                    y = len(gcp(sigma(r + s), sigma(s + r)))
                    bound = rep.m - rep.ind
                    out.expect(f"gcp bound for {u}", y >= bound and (y == bound) == rspecial)


def lemma_checks(sigma: Morphism, n: int, max_len: int = 10) -> LemmaReport:
    """Verify the special-image, inner-branch placement and gcs/gcp claims at ``n``."""
    _require_primitive(sigma)
    rep = minimal_letter(sigma)
    if class_span(sigma) != rep.m or conjugacy_index(sigma) != rep.ind:
        raise TheoryViolation(f"{sigma}: inconsistent minimal-letter report")
    out = LemmaReport(n)
    _special_image_claims(sigma, n, rep, out)
    _placement_claims(sigma, n, rep, out)
    if max_len:
        _gcs_gcp_bounds(sigma, rep, out, max_len)
    return out
