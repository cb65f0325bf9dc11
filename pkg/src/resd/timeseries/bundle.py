"""Preprocessing artifact bundle: one JSON document holding the
normalization model, scenario set, PCA model, generator set, and provenance."""
from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .cluster import ScenarioSet
from .hull import GeneratorSet
from .normalize import NormalizationModel
from .pca import PcaModel


def _tolist(a):
    return np.asarray(a, dtype=float).tolist()


def bundle_to_dict(norm: NormalizationModel, scenarios: ScenarioSet,
                   pca: PcaModel, gens: GeneratorSet,
                   provenance: dict) -> dict:
    return {
        "provenance": provenance,
        "normalization": {"mean": _tolist(norm.mean),
                          "std": _tolist(norm.std)},
        "scenarios": {
            "blocks": _tolist(scenarios.blocks),
            "weights": _tolist(scenarios.weights),
            "cluster_sizes": [int(s) for s in scenarios.cluster_sizes],
            "assignments": [int(a) for a in scenarios.assignments],
            "inertia": float(scenarios.inertia),
        },
        "pca": {
            "mean": _tolist(pca.mean),
            "components": _tolist(pca.components),
            "explained_variance_ratio": _tolist(pca.explained_variance_ratio),
            "eigenvalues": _tolist(pca.eigenvalues),
        },
        "generators": {
            "points": _tolist(gens.points),
            "pruned_points": _tolist(gens.pruned_points),
            "certificates": [_tolist(c) for c in gens.certificates],
            "original_count": int(gens.original_count),
        },
    }


def bundle_from_dict(doc: dict):
    norm = NormalizationModel(np.asarray(doc["normalization"]["mean"]),
                              np.asarray(doc["normalization"]["std"]))
    s = doc["scenarios"]
    scenarios = ScenarioSet(np.asarray(s["blocks"]), np.asarray(s["weights"]),
                            np.asarray(s["cluster_sizes"], dtype=int),
                            np.asarray(s["assignments"], dtype=int),
                            float(s["inertia"]))
    p = doc["pca"]
    pca = PcaModel(np.asarray(p["mean"]), np.asarray(p["components"]),
                   np.asarray(p["explained_variance_ratio"]),
                   np.asarray(p["eigenvalues"]))
    g = doc["generators"]
    pruned = np.asarray(g["pruned_points"])
    if pruned.size == 0:
        pruned = pruned.reshape(0, np.asarray(g["points"]).shape[1])
    gens = GeneratorSet(np.asarray(g["points"]), pruned,
                        [np.asarray(c) for c in g["certificates"]],
                        int(g["original_count"]))
    return norm, scenarios, pca, gens, doc["provenance"]


def write_json_atomic(path, doc: dict) -> None:
    """Serialize deterministically and rename into place."""
    text = json.dumps(doc, sort_keys=True, indent=1)
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_bundle(path, norm, scenarios, pca, gens, provenance) -> None:
    write_json_atomic(path, bundle_to_dict(norm, scenarios, pca, gens,
                                           provenance))


def load_bundle(path):
    with open(path, encoding="utf-8") as fh:
        return bundle_from_dict(json.load(fh))
