"""Chi-squared embedding of a term-by-segment table, with doubling.

Run:  python3 demos/correspondence.py
"""
import numpy as np

from dendrohaar import ContingencyTable, chain_stats, chi2_distance, correspondence_analysis, double, ward_cluster
from dendrohaar.corranal import doubled_shape

rng = np.random.default_rng(8)

# %% Eight terms counted over 24 segments; one segment happens to contain none of them.
counts = rng.poisson(4, size=(8, 24))
counts[:, 10] = 0

# %% Doubling pairs each column with its complement, so every row gets equal mass.
print(doubled_shape(counts))
d = double(counts)
print("row totals:", d.values.sum(axis=1))

# %% Embed. Euclidean distance between rows is the chi-squared profile distance.
emb = correspondence_analysis(d)
print("eigenvalues:", np.round(emb.eigenvalues, 5))
t = ContingencyTable(d.values)
print(np.linalg.norm(emb.rows[0] - emb.rows[1]), chi2_distance(t, 0, 1))

# %% Cluster the factor coordinates.
dend = ward_cluster(emb.as_matrix())
print(chain_stats(dend).to_dict())
