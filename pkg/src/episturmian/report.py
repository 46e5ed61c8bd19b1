"""Tables (TSV) and figures (PNG) summarizing a morphism's class, shift and obstructions."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .conjugacy import enumerate_class, minimal_letter  # noqa: E402
from .language import dl_annotations, factor_complexity, rauzy_graph  # noqa: E402
from .morphism import Morphism  # noqa: E402
from .preservation import run_obstruction_suite  # noqa: E402
from .returns import returns_closed_form  # noqa: E402
from .words import gcp, gcs, render  # noqa: E402


def _write_tsv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def class_rows(sigma: Morphism) -> list[list]:
    cls = enumerate_class(sigma)
    rows = []
    for member, prefix, i in cls.rows():
        rep = minimal_letter(member)
        rows.append([member.to_text(), render(prefix), i, rep.a_min, rep.j,
                     int(rep.suffix_closed), int(rep.prefix_closed)])
    return rows


def _separation(member: Morphism, word: str, family: int) -> tuple[int, int]:
    """Pair statistic on ``sigma(R(u))`` versus ``R(sigma(u))`` for the two shortest return words.

    Family 1 compares ``|gcs(rs, sr)|`` on left returns, family 2
    ``|gcp(rs, sr)|`` on right returns.
    """
    side = "left" if family == 1 else "right"
    stat = gcs if family == 1 else gcp
    src = returns_closed_form(member, word, verify_factor=False).returns(side)
    dst = returns_closed_form(member, member(word), verify_factor=False).returns(side)
    r, s = member(src[0]), member(src[1])
    return len(stat(r + s, s + r)), len(stat(dst[0] + dst[1], dst[1] + dst[0]))


def plot_class(sigma: Morphism, path: Path) -> None:
    """Suffix/prefix closure of each class member against its conjugacy index."""
    rows = class_rows(sigma)
    idx = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 2.6))
    ax.scatter(idx, [1] * len(idx), c=["tab:blue" if r[5] else "lightgray" for r in rows], s=80, label="suffix closed")
    ax.scatter(idx, [0] * len(idx), c=["tab:orange" if r[6] else "lightgray" for r in rows], s=80, label="prefix closed")
    rep = minimal_letter(sigma)
    ax.axvline(rep.j - 0.5, color="tab:blue", ls="--", lw=1)
    ax.axvline(rep.m - rep.j + 0.5, color="tab:orange", ls="--", lw=1)
    ax.set_yticks([0, 1], ["prefix", "suffix"])
    ax.set_xticks(idx)
    ax.set_xlabel("conjugacy index")
    ax.set_ylim(-0.7, 1.7)
    ax.set_title(f"closure at a_min = {rep.a_min}, j = {rep.j}, m = {rep.m}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_complexity(sigma: Morphism, n_max: int, path: Path) -> list[list]:
    ns = list(range(1, n_max + 1))
    counts = [factor_complexity(sigma, n) for n in ns]
    k = len(sigma.alphabet)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(ns, counts, "o", ms=4, label="factors of length n")
    ax.plot(ns, [(k - 1) * n + 1 for n in ns], "-", lw=1, label=f"{k - 1}n + 1")
    ax.set_xlabel("n")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [[n, c] for n, c in zip(ns, counts)]


def plot_obstructions(sigma: Morphism, n_max: int, path: Path) -> list[list]:
    """For each class member and obstruction word, the statistic separating sigma(R(u)) from R(sigma(u))."""
    cls = enumerate_class(sigma)
    rows = []
    for i, member in enumerate(cls.members):
        for w, verdict in run_obstruction_suite(member, n_max).tested:
            image_side, target_side = _separation(member, w.word, w.family)
            rows.append([i, w.n, w.family, w.word, int(verdict.holds_P), image_side, target_side])
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.4), sharex=True)
    for ax, family, name in ((axes[0], 1, "gcs, a_min L_n"), (axes[1], 2, "gcp, R_n a_min")):
        sel = [r for r in rows if r[2] == family]
        ax.scatter([r[0] - 0.1 for r in sel], [r[5] for r in sel], marker="o", color="tab:blue", s=18,
                   label="images of return words")
        ax.scatter([r[0] + 0.1 for r in sel], [r[6] for r in sel], marker="x", color="tab:red", s=18,
                   label="return words of the image")
        ax.set_title(name)
        ax.set_yscale("symlog", linthresh=10)
        ax.set_xlabel("conjugacy index")
        ax.set_xticks(range(len(cls.members)))
    axes[0].set_ylabel("length")
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return rows


def write_report(sigma: Morphism, out: Path, n_max: int = 30, rauzy_n: int | None = None) -> list[Path]:
    """Write TSV tables and PNG figures for ``sigma`` into ``out``; return the paths written."""
    out.mkdir(parents=True, exist_ok=True)
    written = []

    path = out / "class.tsv"
    _write_tsv(path, ["member", "pal_prefix", "index", "a_min", "j", "suffix_closed", "prefix_closed"],
               class_rows(sigma))
    written.append(path)
    path = out / "class.png"
    plot_class(sigma, path)
    written.append(path)

    path = out / "complexity.png"
    rows = plot_complexity(sigma, n_max, path)
    written.append(path)
    path = out / "complexity.tsv"
    _write_tsv(path, ["n", "factors"], rows)
    written.append(path)

    path = out / "obstructions.png"
    rows = plot_obstructions(sigma, n_max, path)
    written.append(path)
    path = out / "obstructions.tsv"
    _write_tsv(path, ["index", "n", "family", "word", "holds_P", "stat_image_returns", "stat_returns_of_image"], rows)
    written.append(path)

    n = rauzy_n if rauzy_n is not None else 2 * len(sigma.alphabet) + 2
    graph = rauzy_graph(sigma, n)
    ann = dl_annotations(sigma, n)
    path = out / f"rauzy_{n}.dot"
    path.write_text(graph.to_dot({v: f"{render(d)},{ell}" for v, (d, ell) in ann.items()}))
    written.append(path)
    path = out / f"rauzy_{n}.tsv"
    rows = []
    for v in graph.vertices:
        i = graph.inner_index(v)
        rows.append([v, render(ann[v][0]), ann[v][1], "" if i is None else i])
    _write_tsv(path, ["vertex", "d", "ell", "inner_index"], rows)
    written.append(path)
    return written
