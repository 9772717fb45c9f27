"""Random faces, their hierarchy, and the faces of the transform.

Writes SVGs into demos/out/faces. Run:  python3 demos/faces.py
"""
from pathlib import Path

import numpy as np

from dendrohaar import forward, inverse, ward_cluster
from dendrohaar.glyphs import generate_faces, render_dendrogram_svg, render_face_svg

out = Path(__file__).parent / "out" / "faces"
out.mkdir(parents=True, exist_ok=True)

# %% Five faces, 15 attributes each, uniform on [0, 1). The seed fixes them.
faces = generate_faces(5, seed=2024)
print(np.round(faces.values, 2))

# %% Cluster, then transform with the integer-friendly scheme: the smooth is the plain sum.
dend = ward_cluster(faces)
wav = forward(dend, faces, "lifting2")
print("smooth equals column sums:", np.allclose(wav.smooth, faces.values.sum(axis=0)))
print("round trip:", np.allclose(inverse(wav).values, faces.values))

# %% Draw everything. Details can be negative, so they are remapped onto [0, 1] first.
(out / "dendrogram.svg").write_text(render_dendrogram_svg(dend, faces.row_labels))
for i, label in enumerate(faces.row_labels):
    (out / f"{label}.svg").write_text(render_face_svg(faces.values[i], title=label))
(out / "smooth.svg").write_text(render_face_svg(wav.smooth, title="smooth", remap=True))
for q in range(1, 5):
    (out / f"d{q}.svg").write_text(render_face_svg(wav.detail(q), title=f"d{q}", remap=True))
print("wrote", len(list(out.iterdir())), "files to", out)
