"""Command line entry point: ``dendrohaar <command> [options]``.

Each command runs one stage and writes its artifacts into ``--out-dir``.
Exit status is 0 on success, 2 for bad input and 3 for numeric or
degeneracy failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cluster import Dendrogram, ward_cluster
from .core import DataMatrix, range_normalize, read_csv
from .corranal import correspondence_analysis, double
from .errors import InputError, NumericError
from .glyphs import generate_faces, render_dendrogram_svg, render_face_svg
from .infometrics import (
    BagOfWords,
    BooleanPositional,
    DiscretizedReal,
    Hierarchical,
    RankSequence,
    report,
)
from .serialize import dumps
from .textcodec import (
    RankTable,
    encode_ranks,
    node_set_labels,
    normalize_length,
    rank_terms,
    read_corpus,
    term_counts,
    word_equation,
)
from .wavelet import DendroWavelet, HaarScheme, chain, chain_stats, forward, inverse

EXIT_INPUT = 2
EXIT_NUMERIC = 3
ROUNDTRIP_TOL = 1e-10


class StageError(Exception):
    def __init__(self, stage, cause):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


def _write(args, name, text):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text, encoding="utf-8")
    return path


def _load_matrix(args):
    mat = read_csv(Path(args.input), row_labels=args.row_labels)
    if getattr(args, "normalize", False):
        mat = range_normalize(mat)
    return mat


def _load_dendrogram(path):
    return Dendrogram.from_json(Path(path).read_text(encoding="utf-8"))


def _rounded(values, precision):
    if precision is None:
        return values
    return np.round(np.asarray(values, dtype=np.float64), precision)


def _transform_dict(wav, precision):
    data = wav.to_dict()
    if precision is not None and wav.details.dtype.kind == "f":
        data["smooth"] = _rounded(wav.smooth, precision).tolist()
        data["details"] = {k: _rounded(v, precision).tolist() for k, v in data["details"].items()}
    return data


def _check_roundtrip(wav, mat):
    back = np.asarray(inverse(wav).values)
    orig = np.asarray(mat.values)
    if wav.scheme is HaarScheme.LIFTING2 and orig.dtype.kind in "iu":
        ok = np.array_equal(back, orig)
    else:
        ok = np.allclose(back, orig, rtol=0, atol=ROUNDTRIP_TOL)
    if not ok:
        raise NumericError("reconstruction does not reproduce the input")
    return back


def _chains_dict(dend, labels, wav=None):
    stats = chain_stats(dend)
    rows = []
    for leaf in range(dend.n_leaves):
        steps = dend.path(leaf)
        rec = {
            "leaf": labels[leaf],
            "length": len(steps),
            "steps": [f"{'+' if s > 0 else '-'}d{q}" for q, s in steps],
        }
        if wav is not None:
            rec["expression"] = str(chain(wav, leaf))
        rows.append(rec)
    return {"chains": rows, "stats": stats.to_dict()}


# -- commands ---------------------------------------------------------------

def cmd_normalize(args):
    mat = range_normalize(read_csv(Path(args.input), row_labels=args.row_labels))
    _write(args, "normalized.csv", mat.to_csv(args.precision))


def cmd_cluster(args):
    mat = _load_matrix(args)
    dend = ward_cluster(mat)
    _write(args, "dendrogram.json", dend.to_json())
    if args.format == "svg":
        _write(args, "dendrogram.svg", render_dendrogram_svg(dend, mat.row_labels))


def cmd_transform(args):
    mat = _load_matrix(args)
    if args.dendrogram:
        dend = _load_dendrogram(args.dendrogram)
    else:
        dend = ward_cluster(mat)
        _write(args, "dendrogram.json", dend.to_json())
    wav = forward(dend, mat, args.scheme)
    _write(args, "transform.json", dumps(_transform_dict(wav, args.precision)))


def cmd_reconstruct(args):
    dend = _load_dendrogram(args.dendrogram)
    wav = DendroWavelet.from_json(Path(args.transform).read_text(encoding="utf-8"), dend)
    _write(args, "reconstructed.csv", inverse(wav).to_csv(args.precision))


def cmd_chains(args):
    dend = _load_dendrogram(args.dendrogram)
    labels = [str(i + 1) for i in range(dend.n_leaves)]
    _write(args, "chains.json", dumps(_chains_dict(dend, labels)))


def cmd_ca(args):
    mat = read_csv(Path(args.input), row_labels=args.row_labels)
    if args.doubling != "none":
        mat = double(mat, args.doubling)
    emb = correspondence_analysis(mat)
    if args.format == "csv":
        _write(args, "embedding.csv", emb.to_csv())
    else:
        _write(args, "embedding.json", emb.to_json())


def cmd_text_encode(args):
    names, docs = read_corpus(args.input, args.segments)
    rt = rank_terms(docs)
    _write(args, "rank_table.tsv", rt.to_tsv())
    L = args.length or max(len(d) for d in docs)
    seqs = {}
    for name, doc in zip(names, docs):
        ranks = encode_ranks(doc, rt)
        seqs[name] = normalize_length(ranks, L) if ranks else []
    _write(args, "ranks.json", dumps({"m": rt.m, "L": L, "sequences": seqs}))
    counts = DataMatrix(term_counts(docs, rt).T, tuple(names), rt.terms)
    _write(args, "counts.csv", counts.to_csv())


def cmd_word_equation(args):
    mat = read_csv(Path(args.input), row_labels=args.row_labels)
    if np.asarray(mat.values).dtype.kind not in "iu":
        raise InputError("word equations need integer rank data")
    dend = _load_dendrogram(args.dendrogram) if args.dendrogram else ward_cluster(mat)
    rt = RankTable.from_tsv(Path(args.rank_table).read_text(encoding="utf-8")) if args.rank_table else None
    wav = forward(dend, mat, HaarScheme.LIFTING2)
    leaves = range(dend.n_leaves) if args.leaf is None else [mat.row_labels.index(args.leaf)]
    sets = node_set_labels(dend, mat.row_labels)
    out = []
    for leaf in leaves:
        eq = word_equation(wav, leaf, rt)
        rec = {"leaf": mat.row_labels[leaf], "value": eq.evaluate(), "numeric": eq.numeric(),
               "node_sets": sets[mat.row_labels[leaf]]}
        if rt is not None:
            rec["verbal"] = eq.verbal()
        out.append(rec)
    _write(args, "word_equations.json", dumps({"root": int(wav.smooth[0]), "equations": out}))


def cmd_faces(args):
    faces = generate_faces(args.n, args.seed)
    _write(args, "faces.csv", faces.to_csv())
    dend = ward_cluster(faces)
    wav = forward(dend, faces, args.scheme)
    _check_roundtrip(wav, faces)
    _write(args, "dendrogram.json", dend.to_json())
    _write(args, "dendrogram.svg", render_dendrogram_svg(dend, faces.row_labels))
    _write(args, "transform.json", dumps(_transform_dict(wav, args.precision)))
    for i, label in enumerate(faces.row_labels):
        _write(args, f"{label}.svg", render_face_svg(faces.values[i], title=label, remap=False))
    _write(args, "smooth.svg", render_face_svg(wav.smooth, title=f"smooth s{args.n - 1}", remap=True))
    for q in range(1, args.n):
        _write(args, f"detail_d{q}.svg", render_face_svg(wav.detail(q), title=f"detail d{q}", remap=True))


def cmd_info(args):
    dend = _load_dendrogram(args.dendrogram) if args.dendrogram else None
    n = args.n or (dend.n_leaves if dend else None)
    encodings = []
    if args.m:
        encodings.append(BagOfWords(args.m))
        if args.L:
            encodings.append(BooleanPositional(args.L, args.m))
        if args.P:
            encodings.append(DiscretizedReal(args.P, args.m))
    if args.L and args.R:
        encodings.append(RankSequence(args.L, args.R))
    if n:
        encodings.append(Hierarchical(n))
    if not encodings:
        raise InputError("give at least one of --m, --n, --dendrogram, or --L with --R")
    out = [report(e, dend if isinstance(e, Hierarchical) else None) for e in encodings]
    text = dumps({"reports": out})
    if args.out_dir:
        _write(args, "info.json", text)
    else:
        sys.stdout.write(text)


def cmd_pipeline(args):
    stage = "load"
    try:
        mat = read_csv(Path(args.input), row_labels=args.row_labels)
        stage = "normalize"
        if args.normalize:
            mat = range_normalize(mat)
            _write(args, "normalized.csv", mat.to_csv())
        stage = "cluster"
        dend = _load_dendrogram(args.dendrogram) if args.dendrogram else ward_cluster(mat)
        _write(args, "dendrogram.json", dend.to_json())
        _write(args, "dendrogram.svg", render_dendrogram_svg(dend, mat.row_labels))
        stage = "transform"
        wav = forward(dend, mat, args.scheme)
        stage = "reconstruct"
        _check_roundtrip(wav, mat)
        _write(args, "transform.json", dumps(_transform_dict(wav, args.precision)))
        stage = "chains"
        _write(args, "chains.json", dumps(_chains_dict(dend, list(mat.row_labels), wav)))
        stage = "info"
        _write(args, "info.json", dumps(report(Hierarchical(dend.n_leaves), dend)))
    except (InputError, NumericError, OSError) as exc:
        raise StageError(stage, exc) from exc


# -- parser -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default="out", help="directory for artifacts (default: out)")
    common.add_argument("--precision", type=int, default=None,
                        help="round displayed reals to this many decimals")
    common.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    common.add_argument("--row-labels", action=argparse.BooleanOptionalAction, default=True,
                        help="first CSV column holds row labels (default: yes)")

    parser = argparse.ArgumentParser(prog="dendrohaar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    def scheme(p, default="basic"):
        p.add_argument("--scheme", choices=[s.value for s in HaarScheme], default=default)

    def normalize(p, default=False):
        p.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=default,
                       help="range-normalize columns first")

    p = add("normalize", cmd_normalize, "range-normalize a CSV table")
    p.add_argument("--input", required=True)

    p = add("cluster", cmd_cluster, "Ward clustering to dendrogram JSON")
    p.add_argument("--input", required=True)
    normalize(p)

    p = add("transform", cmd_transform, "Haar transform over a dendrogram")
    p.add_argument("--input", required=True)
    p.add_argument("--dendrogram", help="dendrogram JSON (default: cluster the input)")
    scheme(p)
    normalize(p)

    p = add("reconstruct", cmd_reconstruct, "invert a transform")
    p.add_argument("--transform", required=True)
    p.add_argument("--dendrogram", required=True)

    p = add("chains", cmd_chains, "approximation chains and their length statistics")
    p.add_argument("--dendrogram", required=True)

    p = add("ca", cmd_ca, "correspondence analysis embedding")
    p.add_argument("--input", required=True)
    p.add_argument("--doubling", choices=("none", "column-max", "table-max"), default="none")

    p = add("text-encode", cmd_text_encode, "rank-encode a corpus")
    p.add_argument("--input", required=True, help="directory of .txt files or a single file")
    p.add_argument("--segments", type=int, default=None, help="split a single file into N segments")
    p.add_argument("--length", type=int, default=None, help="common length L (default: longest)")

    p = add("word-equation", cmd_word_equation, "integer word equations under lifting2")
    p.add_argument("--input", required=True, help="CSV of integer ranks, one row per word")
    p.add_argument("--rank-table", help="TSV term, rank, frequency")
    p.add_argument("--dendrogram")
    p.add_argument("--leaf", help="row label (default: all rows)")

    p = add("faces", cmd_faces, "random faces, their transform, and SVG glyphs")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)
    scheme(p, "lifting2")

    p = add("info", cmd_info, "information accounting for encodings")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--R", type=int)
    p.add_argument("--P", type=int)
    p.add_argument("--dendrogram")
    p.set_defaults(out_dir=None)

    p = add("pipeline", cmd_pipeline, "normalize, cluster, transform, verify, report")
    p.add_argument("--input", required=True)
    p.add_argument("--dendrogram", help="use this dendrogram JSON instead of clustering")
    scheme(p)
    normalize(p, default=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except StageError as exc:
        print(f"dendrohaar: stage {exc.stage} failed: {exc.cause}", file=sys.stderr)
        return EXIT_NUMERIC if isinstance(exc.cause, NumericError) else EXIT_INPUT
    except NumericError as exc:
        print(f"dendrohaar: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"dendrohaar: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
