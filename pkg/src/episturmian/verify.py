"""Corpus-wide checks of the identities and theorems implemented by the library.

Each check returns a :class:`CheckResult`; ``run_all`` drives them in quick
(sampled) or full mode.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .conjugacy import (
    conjugacy_index,
    enumerate_class,
    gcs_gcp_factorization,
    minimal_letter,
    standard_conjugate,
)
from .corpus import conjugate_corpus, sample, standard_morphisms
from .language import directive_word, evolution_check, language, special_factors
from .morphism import d_bonacci, parse_epi, psi
from .palindromic import justin_left, justin_right, pal, pal_inverse, pal_length
from .preservation import run_obstruction_suite
from .returns import all_returns_oracle, return_relation_holds, returns_closed_form
from .words import Alphabet

QUICK_SAMPLE = 60
MAX_FAILURES_KEPT = 20


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(message)
        else:
            self.data["dropped_failures"] = self.data.get("dropped_failures", 0) + 1

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}\t{self.name}\t{self.cases} cases\t{self.seconds:.1f}s"


def _timed(fn: Callable[..., CheckResult]) -> Callable[..., CheckResult]:
    def run(*args, **kwargs) -> CheckResult:
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def check_pal(max_len: int = 7) -> CheckResult:
    """Pal is a palindrome, inverts, and has the length predicted by the norm of psi_u."""
    res = CheckResult("pal round trip and length identity")
    for k in (2, 3):
        alphabet = Alphabet.first(k)
        for u in alphabet.words_upto(max_len):
            res.cases += 1
            p = pal(u)
            if p != p[::-1] or pal_inverse(p) != u or pal_length(alphabet, u) != len(p):
                res.fail(f"u={u!r}")
    return res


@_timed
def check_justin(max_len: int = 7) -> CheckResult:
    res = CheckResult("Justin formulas")
    for k in (2, 3):
        alphabet = Alphabet.first(k)
        for w in alphabet.words_upto(max_len):
            for i in range(len(w) + 1):
                u, v = w[:i], w[i:]
                res.cases += 1
                a, b = justin_left(alphabet, u, v)
                c, d = justin_right(alphabet, u, v)
                if a != b or c != d:
                    res.fail(f"u={u!r} v={v!r}")
    return res


@_timed
def check_conjugacy_index(max_len: int = 5) -> CheckResult:
    """Both index formulas agree and gcs.gcp = Pal(u) on every member of every class."""
    res = CheckResult("conjugacy index and gcs/gcp factorization")
    for u, perm, sigma in standard_morphisms((2, 3), max_len, primitive_only=False):
        cls = enumerate_class(sigma)
        target = pal(u)
        for i, member in enumerate(cls.members):
            res.cases += 1
            try:
                ind = conjugacy_index(member)
                x, y = gcs_gcp_factorization(member)
                std, w = standard_conjugate(member)
            except Exception as exc:  # noqa: BLE001 - every failure is reported
                res.fail(f"psi_{u} o {perm} #{i}: {exc}")
                continue
            if ind != i or x + y != target or std != sigma or w != target[:i]:
                res.fail(f"psi_{u} o {perm} #{i}: ind={ind} x={x!r} y={y!r}")
    return res


@_timed
def check_minimal_letter(max_len: int = 5) -> CheckResult:
    """Suffix/prefix closure at the minimal letter matches the index thresholds."""
    res = CheckResult("minimal letter predicates")
    overlaps = {}
    for u, perm, sigma in standard_morphisms((2, 3), max_len, primitive_only=False):
        cls = enumerate_class(sigma)
        expected = perm.inverse()(u[-1])
        letters = set()
        for i, member in enumerate(cls.members):
            res.cases += 1
            rep = minimal_letter(member)
            letters.add(rep.a_min)
            if not rep.consistent or rep.a_min != expected:
                res.fail(f"psi_{u} o {perm} #{i}: {rep}")
            if rep.suffix_closed and rep.prefix_closed:
                overlaps.setdefault(f"psi_{u} o {perm}", []).append(i)
        if len(letters) != 1:
            res.fail(f"psi_{u} o {perm}: members disagree on the minimal letter")
    res.data["overlapping_classes"] = len(overlaps)
    return res


def rauzy_examples() -> dict[str, object]:
    return {
        "fibonacci": d_bonacci(2),
        "tribonacci": d_bonacci(3),
        "tetrabonacci": d_bonacci(4),
        "psi_abb o (a c b)": parse_epi("psi:abb:(a c b)"),
    }


@_timed
def check_rauzy_evolution(n_max: int = 25) -> CheckResult:
    res = CheckResult("Rauzy graph label evolution")
    for name, sigma in rauzy_examples().items():
        for n in range(1, n_max + 1):
            res.cases += 1
            rep = evolution_check(sigma, n)
            if not rep.ok:
                res.fail(f"{name} n={n}: {rep.violations}")
    return res


@_timed
def check_returns(entries, n_max: int = 12) -> CheckResult:
    """Closed-form return sets equal the oracle's, satisfy the conjugation relation, and have |A| elements."""
    res = CheckResult("return sets: closed form vs oracle")
    for e in entries:
        sigma = e.sigma
        k = len(sigma.alphabet)
        oracle = all_returns_oracle(sigma, n_max)
        for n in range(1, n_max + 1):
            window = language(sigma, n).factors
            seen = {w for w in oracle if len(w) == n}
            if seen != window:
                res.fail(f"{e.label} n={n}: oracle saw {len(seen)} factors, language has {len(window)}")
            for u in sorted(window):
                res.cases += 1
                comp = returns_closed_form(sigma, u, verify_factor=False)
                left, right = comp.left_returns, comp.right_returns
                if (left, right) != oracle.get(u):
                    res.fail(f"{e.label} u={u}: closed form {left}/{right} vs oracle {oracle.get(u)}")
                elif len(left) != k or len(right) != k or not return_relation_holds(u, left, right):
                    res.fail(f"{e.label} u={u}: cardinality or conjugation relation fails")
    return res


@_timed
def check_obstructions(entries, n_max: int = 30, onset_bound: int = 10) -> CheckResult:
    """Every obstruction word from the onset on fails (P); onsets stay below the bound."""
    res = CheckResult("obstruction words fail return preservation")
    onsets = {}
    for e in entries:
        try:
            report = run_obstruction_suite(e.sigma, n_max)
        except Exception as exc:  # noqa: BLE001 - theory violations are reported per morphism
            res.fail(f"{e.label}: {exc}")
            continue
        res.cases += len(report.tested)
        onsets[e.label] = report.onset
        if report.onset is None or report.onset > onset_bound:
            res.fail(f"{e.label}: onset {report.onset}")
    res.data["onsets"] = onsets
    return res


@_timed
def check_special_factors(entries, n_max: int = 20) -> CheckResult:
    """Bispecial factors of each shift are exactly the palindromes Pal(d[:k])."""
    res = CheckResult("bispecial factors are palindromic prefixes")
    for e in entries:
        res.cases += 1
        pals = set()
        p_lengths = []
        d = directive_word(e.sigma)
        for _, p in d.pal_prefixes():
            if len(p) > n_max:
                break
            pals.add(p)
            p_lengths.append(len(p))
        for n in range(n_max + 1):
            left, right, bispecial = special_factors(e.sigma, n)
            if bispecial != (n in p_lengths) or (bispecial and left not in pals):
                res.fail(f"{e.label} n={n}")
    return res


def corpus(mode: str, seed: int | None):
    entries = conjugate_corpus()
    if mode == "quick":
        return sample(entries, QUICK_SAMPLE, seed)
    return list(entries)


def run_all(mode: str = "quick", seed: int | None = 0, progress: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    entries = corpus(mode, seed)
    quick = mode == "quick"
    jobs = [
        lambda: check_pal(6 if quick else 7),
        lambda: check_justin(6 if quick else 7),
        lambda: check_conjugacy_index(4 if quick else 5),
        lambda: check_minimal_letter(4 if quick else 5),
        lambda: check_rauzy_evolution(12 if quick else 25),
        lambda: check_special_factors(entries),
        lambda: check_returns(entries),
        lambda: check_obstructions(entries),
    ]
    out = []
    for job in jobs:
        res = job()
        out.append(res)
        if progress:
            progress(res)
    return out


def psi_abca_overlap() -> list[int]:
    """Indices in the class of psi_abca where both closure predicates hold."""
    alphabet = Alphabet.of("abc")
    cls = enumerate_class(psi(alphabet, "abca"))
    return [i for i, m in enumerate(cls.members)
            if (r := minimal_letter(m)).suffix_closed and r.prefix_closed]


def d_bonacci_overlaps(ds=(2, 3, 4)) -> dict[int, list[int]]:
    out = {}
    for d in ds:
        cls = enumerate_class(d_bonacci(d))
        out[d] = [i for i, m in enumerate(cls.members)
                  if (r := minimal_letter(m)).suffix_closed and r.prefix_closed]
    return out
