"""Eight iris flowers: normalize, cluster, transform, and rebuild.

Run from the repository root:  python3 demos/iris_walkthrough.py
"""
from pathlib import Path

import numpy as np

from dendrohaar import Dendrogram, chain, chain_stats, forward, inverse, partial_reconstruct
from dendrohaar import range_normalize, read_csv, ward_cluster

here = Path(__file__).parent
np.set_printoptions(precision=4, suppress=True)

# %% Load and range-normalize. Every column lands on [0, 1].
raw = read_csv(here / "data" / "iris8.csv")
x = range_normalize(raw)
print(x.values)

# %% Ward clustering. Heights are the merge costs m_a m_b / (m_a + m_b) |c_a - c_b|^2.
ward = ward_cluster(x)
for mg in ward.merges:
    print(f"q{mg.q}: {ward.ref(mg.left):>3} + {ward.ref(mg.right):>3}  height {mg.height:.4f}")

# %% Haar transform on the Ward tree. n*m values in all: one smooth, n-1 details.
wav = forward(ward, x, "basic")
print("smooth", wav.smooth)
print("rebuilt exactly:", np.allclose(inverse(wav).values, x.values, atol=1e-12))

# %% Each flower is the smooth plus a signed walk down the tree.
for leaf in (0, 7):
    c = chain(wav, leaf)
    print(f"x{leaf + 1} = {c}   (length {len(c)})")

# %% The same data on a hand-built tree with a 4|4 root split.
tree = Dendrogram.from_json((here / "data" / "table_tree.json").read_text())
wav2 = forward(tree, x, "basic")
print("smooth", wav2.smooth)
print(f"x1 = {chain(wav2, 0)}")
print(f"x8 = {chain(wav2, 7)}")

# %% Partial reconstruction: stopping part way down gives an ancestor's smooth.
for depth in range(len(chain(wav2, 0)) + 1):
    print(depth, partial_reconstruct(wav2, 0, depth))

# %% How long are the chains?
print(chain_stats(ward).to_dict())
