"""JSON and CSV formats.

Rank vector:    {"n": 3, "values": ["0", "1", "1", "2", ...]}     (2^n entries, bitmask index)
Entropy vector: {"n": 3, "values": [0.0, 0.693..., ...]}          (numbers, nats)
Matroid:        {"n": 3, "circuits": [[1, 2, 3]]} and/or {"n": 3, "ranks": [0, 1, ...]}
Distribution:   {"alphabets": [2, 2], "pmf": [{"x": [0, 1], "p": "1/4"}, ...]}
Certificate:    distribution + face + point + residual (see certificate_to_dict)
Region CSV:     label,kind,x1,y1,x2,y2
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

from .entropy import Certificate, JointDistribution, entropy_vector
from .matroid import Matroid, MatroidError, rank_from_circuits
from .setfn import EntropyVector, RankVector, elements_of, mask_of


class FormatError(ValueError):
    """Malformed input file or field."""


def _load(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return data


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False, allow_nan=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def _field(data: dict, name: str, where: str):
    if name not in data:
        raise FormatError(f"{where}: missing field {name!r}")
    return data[name]


# --- rank / entropy vectors -------------------------------------------------------

def rank_vector_to_dict(h: RankVector) -> dict:
    return {"n": h.n, "values": [str(x) for x in h.values]}


def entropy_vector_to_dict(h: EntropyVector) -> dict:
    return {"n": h.n, "values": [float(x) for x in h.values]}


def vector_from_dict(data: dict, where: str = "vector"):
    n = _field(data, "n", where)
    values = _field(data, "values", where)
    if not isinstance(values, list):
        raise FormatError(f"{where}: field 'values' must be a list")
    try:
        if all(isinstance(x, str) or isinstance(x, int) for x in values):
            return RankVector(n, [Fraction(x) if isinstance(x, str) else x for x in values])
        return EntropyVector(n, [float(x) for x in values])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: field 'values': {exc}") from None


# --- matroids ----------------------------------------------------------------------

def matroid_to_dict(M: Matroid) -> dict:
    return {"n": M.n, "circuits": [elements_of(c) for c in M.circuits], "ranks": list(M.ranks)}


def matroid_from_dict(data: dict, where: str = "matroid") -> Matroid:
    n = _field(data, "n", where)
    if "circuits" not in data and "ranks" not in data:
        raise FormatError(f"{where}: need field 'circuits' or 'ranks'")
    try:
        M = None
        if "ranks" in data:
            M = Matroid(n, data["ranks"], data.get("name", ""))
        if "circuits" in data:
            circ = [mask_of(c) for c in data["circuits"]]
            Mc = rank_from_circuits(n, circ)
            if M is not None and Mc != M:
                raise FormatError(f"{where}: fields 'circuits' and 'ranks' disagree")
            M = M or Matroid(n, Mc.ranks, data.get("name", ""))
    except (MatroidError, TypeError) as exc:
        raise FormatError(f"{where}: {exc}") from None
    return M


def load_vector(path):
    """Rank/entropy vector file, or a matroid file (returns its rank vector)."""
    data = _load(path)
    if "values" in data:
        return vector_from_dict(data, str(path))
    return matroid_from_dict(data, str(path)).rank_vector


def load_matroid(path) -> Matroid:
    data = _load(path)
    if "values" in data:
        from .matroid import from_rank_vector

        h = vector_from_dict(data, str(path))
        if not isinstance(h, RankVector):
            raise FormatError(f"{path}: matroid ranks must be exact")
        try:
            return from_rank_vector(h)
        except MatroidError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return matroid_from_dict(data, str(path))


# --- distributions and certificates --------------------------------------------------

def distribution_to_dict(D: JointDistribution) -> dict:
    return {
        "alphabets": list(D.alphabets),
        "pmf": [{"x": list(x), "p": str(p)} for x, p in D.pmf.items()],
    }


def distribution_from_dict(data: dict, where: str = "distribution") -> JointDistribution:
    alph = _field(data, "alphabets", where)
    pmf = _field(data, "pmf", where)
    try:
        masses = {}
        for entry in pmf:
            x = tuple(entry["x"])
            masses[x] = masses.get(x, 0) + Fraction(entry["p"])
        return JointDistribution(tuple(alph), masses)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: field 'pmf': {exc}") from None


def load_distribution(path) -> JointDistribution:
    return distribution_from_dict(_load(path), str(path))


def certificate_to_dict(c: Certificate) -> dict:
    return {
        "distribution": distribution_to_dict(c.distribution),
        "face": {
            "n": c.n,
            "matroid_ranks": list(c.matroid.ranks),
            "alpha": elements_of(c.alpha),
        },
        "point": {"a": c.a, "b": c.b},
        "v": c.v,
        "construction": c.construction,
        "entropy_vector": [float(x) for x in entropy_vector(c.distribution).values],
        "residual": c.residual,
        "notes": list(c.notes),
    }


def certificate_from_dict(data: dict, where: str = "certificate") -> Certificate:
    """Load a certificate and recompute its residual from the distribution."""
    D = distribution_from_dict(_field(data, "distribution", where), where)
    face = _field(data, "face", where)
    point = _field(data, "point", where)
    try:
        M = Matroid(face["n"], face["matroid_ranks"])
        alpha = mask_of(face["alpha"])
        a, b = float(point["a"]), float(point["b"])
    except (KeyError, TypeError, MatroidError) as exc:
        raise FormatError(f"{where}: {exc}") from None
    if D.n != M.n:
        raise FormatError(f"{where}: distribution has {D.n} coordinates, face has n={M.n}")
    cert = Certificate(D, M, alpha, a, b, math.nan, data.get("v"),
                       data.get("construction", ""), list(data.get("notes", [])))
    residual = cert.recompute_residual()
    return Certificate(D, M, alpha, a, b, residual, cert.v, cert.construction, cert.notes)


def load_certificate(path) -> Certificate:
    return certificate_from_dict(_load(path), str(path))


# --- region CSV ------------------------------------------------------------------------

def region_csv(pieces) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "kind", "x1", "y1", "x2", "y2"])
    for p in pieces:
        w.writerow([p.label, p.kind] + [repr(float(x)) for x in (p.x1, p.y1, p.x2, p.y2)])
    return buf.getvalue()
