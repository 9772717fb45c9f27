"""Tokenization, frequency ranks, and integer word equations."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .cluster import Dendrogram
from .errors import EmptyCorpus, InputError, NonIntegerTransform, TooLong, UnknownTerm
from .wavelet import DendroWavelet, HaarScheme

# letters only: digits, apostrophes, punctuation and whitespace all separate
_WORD = re.compile(r"[^\W\d_]+")


def tokenize(text: str) -> list:
    """Lowercase alphabetic tokens; no stemming.

    >>> tokenize("The cat, the CAT.")
    ['the', 'cat', 'the', 'cat']
    >>> tokenize("don't stop")
    ['don', 't', 'stop']
    """
    return _WORD.findall(text.lower())


@dataclass(frozen=True)
class RankTable:
    """Terms ordered by decreasing frequency, ties broken lexicographically.

    Rank 1 is the most frequent term; ranks run to ``m``.
    """

    terms: tuple
    frequencies: tuple = ()

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise InputError("rank table terms must be unique")
        if not self.frequencies:
            object.__setattr__(self, "frequencies", (0,) * len(self.terms))
        object.__setattr__(self, "_index", {t: r for r, t in enumerate(self.terms, 1)})

    @property
    def m(self) -> int:
        return len(self.terms)

    def rank(self, term: str) -> int:
        try:
            return self._index[term]
        except KeyError:
            raise UnknownTerm(term) from None

    def term(self, rank: int) -> str:
        if not 1 <= rank <= self.m:
            raise InputError(f"rank {rank} outside 1..{self.m}")
        return self.terms[rank - 1]

    def __contains__(self, term):
        return term in self._index

    def to_tsv(self) -> str:
        lines = [f"{t}\t{r}\t{f}" for r, (t, f) in enumerate(zip(self.terms, self.frequencies), 1)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "RankTable":
        rows = [line.split("\t") for line in text.splitlines() if line.strip()]
        rows.sort(key=lambda r: int(r[1]))
        if [int(r[1]) for r in rows] != list(range(1, len(rows) + 1)):
            raise InputError("rank column must run 1..m without gaps")
        return cls(tuple(r[0] for r in rows), tuple(int(r[2]) if len(r) > 2 else 0 for r in rows))


def rank_terms(corpus: Iterable[Sequence[str]]) -> RankTable:
    """Rank terms by corpus-wide frequency (lexicographic tie-break)."""
    counts = Counter()
    for doc in corpus:
        counts.update(doc)
    if not counts:
        raise EmptyCorpus("corpus contains no tokens")
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return RankTable(tuple(t for t, _ in ordered), tuple(c for _, c in ordered))


def encode_ranks(tokens: Sequence[str], rt: RankTable) -> list:
    return [rt.rank(t) for t in tokens]


def decode_ranks(ranks: Sequence[int], rt: RankTable) -> list:
    return [rt.term(int(r)) for r in ranks]


def normalize_length(seq: Sequence[int], L: int) -> list:
    """Stretch a sequence to length ``L`` by repeating each term in place.

    Each term is repeated ``L // len`` times and the first ``L % len`` terms
    once more, so the final term's run is the one that gets trimmed.

    >>> normalize_length([1, 2, 3], 4)
    [1, 1, 2, 3]
    """
    k = len(seq)
    if k > L:
        raise TooLong(f"sequence of length {k} exceeds target {L}")
    if k == 0:
        raise InputError("cannot stretch an empty sequence")
    base, extra = divmod(L, k)
    out = []
    for i, v in enumerate(seq):
        out.extend([v] * (base + (i < extra)))
    return out


def collapse_runs(seq: Sequence[int]) -> list:
    """Inverse of :func:`normalize_length` when no two adjacent input terms
    were equal; adjacent repeats in the original are merged and lost."""
    out = []
    for v in seq:
        if not out or out[-1] != v:
            out.append(v)
    return out


def boolean_encoding_size(L: int, m: int) -> int:
    """Bits in the presence/absence positional encoding: ``L * m``."""
    if L < 1 or m < 1:
        raise InputError("L and m must be positive")
    return L * m


@dataclass(frozen=True)
class RankDecomposition:
    rank: int
    multiplier: int
    remainder: int
    word: str
    top_word: str
    sign: int = 1

    def render(self) -> str:
        parts = []
        if self.multiplier == 1:
            parts.append(self.top_word)
        elif self.multiplier > 1:
            parts.append(f"{self.multiplier}*{self.top_word}")
        parts.append(self.word)
        return " + ".join(parts)


def rank_decompose(r: int, rt: RankTable) -> RankDecomposition:
    """Write ``|r|`` as ``k*m + rho`` with ``1 <= rho <= m`` and ``k`` minimal.

    ``rho`` names a word of the table; multiples of ``m`` are spelled with
    the word of rank ``m``.
    """
    r = int(r)
    if r == 0:
        raise InputError("rank 0 has no decomposition")
    sign = 1 if r > 0 else -1
    a = abs(r)
    k, rho = divmod(a - 1, rt.m)
    rho += 1
    return RankDecomposition(a, k, rho, rt.term(rho), rt.term(rt.m), sign)


@dataclass(frozen=True)
class WordEquation:
    """Nested top-down reconstruction of one leaf under ``lifting2``.

    ``root`` is the root smooth; ``steps`` holds ``(sign, detail)`` pairs from
    the root downward, each followed by a halving.
    """

    leaf: int
    root: int
    steps: tuple
    rank_table: RankTable | None = None

    def evaluate(self) -> int:
        acc = self.root
        for sign, d in self.steps:
            total = acc + sign * d
            if total % 2:
                raise NonIntegerTransform(f"odd intermediate value {total}")
            acc = total // 2
        return acc

    def numeric(self) -> str:
        expr = str(self.root)
        for k, (sign, d) in enumerate(self.steps):
            op = "+" if sign * d >= 0 else "-"
            inner = f"{expr} {op} {abs(d)}"
            expr = f"({inner})/2"
        return expr

    def _word(self, value):
        if value == 0:
            return "0"
        dec = rank_decompose(value, self.rank_table)
        return dec.render()

    def verbal(self) -> str:
        if self.rank_table is None:
            raise InputError("a rank table is needed to render words")
        expr = self._word(self.root)
        for sign, d in self.steps:
            op = "+" if sign * d >= 0 else "-"
            word = self._word(abs(d))
            if op == "-" and " + " in word:
                word = f"({word})"
            expr = f"({expr} {op} {word})/2"
        return expr

    def terms(self) -> set:
        words = set()
        for value in [self.root] + [d for _, d in self.steps]:
            if value:
                dec = rank_decompose(value, self.rank_table)
                words.add(dec.word)
                if dec.multiplier:
                    words.add(dec.top_word)
        return words

    def __str__(self):
        return f"{self.numeric()} = {self.evaluate()}"


def word_equation(wav: DendroWavelet, leaf: int, rt: RankTable | None = None, column: int = 0) -> WordEquation:
    """Express a leaf's rank as a nested sum of the root smooth and the
    signed details on its chain, each level halved (``lifting2``)."""
    if wav.scheme is not HaarScheme.LIFTING2:
        raise NonIntegerTransform(f"word equations need lifting2, not {wav.scheme.value}")
    root = wav.smooth[column]
    dets = wav.details[:, column] if wav.details.size else np.array([])
    if not _integral(root) or not all(_integral(d) for d in dets):
        raise NonIntegerTransform("transform has non-integer coefficients")
    steps = tuple(
        (sign, int(round(float(wav.details[q - 1, column]))))
        for q, sign in wav.dendrogram.path(leaf)
    )
    return WordEquation(leaf, int(round(float(root))), steps, rt)


def _integral(v):
    return float(v).is_integer()


@dataclass(frozen=True)
class NodeSetLabel:
    leaf: int
    parent: int  # merge rank of the leaf's parent
    sibling: int  # node reference of the leaf's sibling

    def render(self, dend: Dendrogram, labels=None) -> str:
        if dend.is_leaf(self.sibling):
            name = labels[self.sibling] if labels else str(self.sibling + 1)
            return f"n{self.parent} - {{{name}}}"
        return f"n{self.parent} - n{dend.rank(self.sibling)}"


def node_set_labels(dend: Dendrogram, labels=None) -> dict:
    """Name every leaf as the difference of two nested node sets.

    The leaf equals its parent node's member set minus its sibling's: a
    sibling that is itself a node gives ``n_p - n_s``, a sibling leaf gives
    ``n_p - {label}``. Returns ``{label: expression}``.
    """
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(dend.n_leaves)]
    out = {}
    for leaf in range(dend.n_leaves):
        if leaf == dend.root:
            out[labels[leaf]] = labels[leaf]
            continue
        par = dend.parent[leaf]
        left, right = dend.children(par)
        sib = right if leaf == left else left
        out[labels[leaf]] = NodeSetLabel(leaf, dend.rank(par), sib).render(dend, labels)
    return out


def read_corpus(path, segments: int | None = None):
    """Load documents as ``(names, texts)``.

    ``path`` is a directory of ``.txt`` files (sorted by name) or a single
    file; with ``segments`` a single file is cut into that many consecutive
    pieces of near-equal token count.
    """
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.txt"))
        names = [f.stem for f in files]
        texts = [f.read_text(encoding="utf-8") for f in files]
    else:
        names, texts = [path.stem], [path.read_text(encoding="utf-8")]
    if not texts or not any(tokenize(t) for t in texts):
        raise EmptyCorpus(f"no tokens found in {path}")
    if segments:
        if len(texts) != 1:
            raise InputError("segmenting needs a single input file")
        tokens = tokenize(texts[0])
        cuts = np.linspace(0, len(tokens), segments + 1).round().astype(int)
        docs = [tokens[a:b] for a, b in zip(cuts[:-1], cuts[1:])]
        return [f"seg{i + 1:02d}" for i in range(segments)], docs
    return names, [tokenize(t) for t in texts]


def term_counts(docs, rt: RankTable, terms=None) -> np.ndarray:
    """Terms x documents frequency table for the given (or all) terms."""
    terms = list(terms) if terms is not None else list(rt.terms)
    idx = {t: i for i, t in enumerate(terms)}
    out = np.zeros((len(terms), len(docs)), dtype=np.int64)
    for j, doc in enumerate(docs):
        for tok in doc:
            i = idx.get(tok)
            if i is not None:
                out[i, j] += 1
    return out
