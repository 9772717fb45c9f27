"""Ranks as integers: a word expressed through other words.

Run:  python3 demos/word_equations.py
"""
import numpy as np

from dendrohaar import Dendrogram, RankTable, forward, node_set_labels, rank_decompose, word_equation
from dendrohaar import encode_ranks, rank_terms, tokenize

# %% A tiny corpus, ranked by frequency with alphabetical tie-break.
corpus = [
    tokenize("The cat sat on the mat. The dog sat on the cat."),
    tokenize("A dog and a cat; the cat ran."),
]
rt = rank_terms(corpus)
print(list(zip(rt.terms, rt.frequencies)))
print(encode_ranks(corpus[1], rt))

# %% Large ranks wrap around the table: r = k*m + rho.
for r in (3, rt.m, rt.m + 2, 3 * rt.m + 1):
    print(r, "=", rank_decompose(r, rt).render())

# %% Six words on a small tree. Under lifting2 every coefficient stays an integer.
words = ["cat", "dog", "sat", "on", "ran", "mat"]
x = np.array([[rt.rank(w)] for w in words])
n = len(words)
dend = Dendrogram.from_pairs(n, [(0, 1), (2, 3), (n, 4), (n + 1, 5), (n + 2, n + 3)])
wav = forward(dend, x, "lifting2")
print("root smooth (sum of ranks):", wav.smooth[0])

# %% Every word is the root smooth, walked down with halvings.
for leaf, w in enumerate(words):
    eq = word_equation(wav, leaf, rt)
    print(f"{w:>4}: {eq}")
    print(f"      {eq.verbal()}")

# %% And as a difference of nested node sets.
print(node_set_labels(dend, words))
