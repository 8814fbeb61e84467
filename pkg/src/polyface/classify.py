"""Four-type classification of faces ``(M, U_{1,n'}^{alpha,n})`` and region membership.

Face coordinates: ``(a, b)`` stands for ``a*r_M + b*r_U`` with ``a, b`` in nats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from . import entropy
from .cone import NotExtremeRayError, ProportionalRaysError, is_two_face
from .matroid import (
    Matroid,
    as_uniform,
    circuits,
    is_connected_after_loop_deletion,
    loops,
    simplification,
    uniform,
)
from .setfn import TOL, elements_of, format_set, full_mask, popcount, restrict

PROBE_RANGE = range(2, 17)

Chi = Callable[[int], Optional[bool]]


class FaceType(str, enum.Enum):
    ALL_ENTROPIC = "AllEntropic"
    MATUS = "Matus"
    CHEN_YEUNG = "ChenYeung"
    NON_ENTROPIC = "NonEntropic"
    UNCOVERED = "Uncovered"


class Membership(str, enum.Enum):
    ENTROPIC = "Entropic"
    NON_ENTROPIC = "NonEntropic"
    UNKNOWN = "Unknown"


# --- characteristic sets --------------------------------------------------------

def _table(k: int, m: int, v: int) -> Optional[bool]:
    if k == 1 or k == m or k == m - 1:
        return True
    if (k, m) == (2, 4):
        return v >= 3 and v != 6
    return None


@lru_cache(maxsize=4096)
def _constructible(M: Matroid, v: int) -> bool:
    try:
        D = entropy.matroid_dist(M, v)
    except entropy.NoConstructionError:
        return False
    h = entropy.entropy_vector(D)
    return h.max_abs_diff(math.log(v) * M.rank_vector.as_float()) < TOL


class ChiOracle:
    """Which ``v >= 2`` make ``ln(v) * r_M`` entropic.

    Answers come from a small table keyed by the simplification ``U_{k,m}`` of
    ``M`` and, failing that, from building a distribution and checking its
    entropy vector.  ``True`` is always backed by one of the two; ``None``
    means undecided.  ``extra`` entries ``{(k, m): rule}`` take precedence.
    """

    def __init__(self, certify: bool = True, extra: dict | None = None):
        self.certify = certify
        self.extra = dict(extra or {})

    def _lookup(self, M: Matroid, v: int) -> tuple[Optional[bool], str]:
        if v < 2:
            raise ValueError("v must be at least 2")
        if M.rank <= 1:
            return True, "rank <= 1"
        simple, _ = simplification(M)
        ku = as_uniform(simple)
        if ku is not None:
            if ku in self.extra:
                ans = self.extra[ku](v)
                if ans is not None:
                    return ans, "user table"
            ans = _table(ku[0], ku[1], v)
            if ans is not None:
                return ans, "table"
        if self.certify and _constructible(M, v):
            return True, "construction"
        return None, "undecided"

    def membership(self, M: Matroid, v: int) -> Optional[bool]:
        return self._lookup(M, v)[0]

    __call__ = membership

    def evidence(self, M: Matroid, v: int) -> str:
        return self._lookup(M, v)[1]

    def for_matroid(self, M: Matroid) -> Chi:
        return lambda v: self.membership(M, v)


DEFAULT_CHI = ChiOracle()


def chi_membership(M: Matroid, v: int, chi: ChiOracle | None = None) -> Optional[bool]:
    return (chi or DEFAULT_CHI).membership(M, v)


# --- restricted pairs and faces -------------------------------------------------

def restricted_pair_type(m: int, t: int) -> FaceType:
    """Type of ``(U_{m-1,m}, U_{1,t})`` restricted to a circuit of size ``m``
    meeting ``alpha`` in ``t`` elements."""
    if m < 2 or not 0 <= t <= m:
        raise ValueError(f"invalid circuit data m={m}, t={t}")
    if m == 2 or t == m:
        return FaceType.ALL_ENTROPIC
    if m == 3 and t == 2:
        return FaceType.MATUS
    return FaceType.CHEN_YEUNG


@dataclass
class CircuitEntry:
    circuit: int
    m: int
    t: int
    restricted_type: FaceType
    restricted_is_face: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "circuit": elements_of(self.circuit),
            "m": self.m,
            "t": self.t,
            "restricted_type": self.restricted_type.value,
            "restricted_is_face": self.restricted_is_face,
        }


@dataclass
class FaceReport:
    face_type: FaceType
    matroid: Matroid
    alpha: int
    two_face: bool
    circuit_analysis: list[CircuitEntry]
    m_loops_in_u_loops: bool
    u_loops_in_m_loops: bool
    chi_probe: dict[int, Optional[bool]]
    notes: list[str] = field(default_factory=list)
    certificates: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.matroid.n

    def to_dict(self) -> dict:
        from .files import certificate_to_dict

        return {
            "face_type": self.face_type.value,
            "n": self.n,
            "matroid_ranks": list(self.matroid.ranks),
            "alpha": elements_of(self.alpha),
            "two_face": self.two_face,
            "circuit_analysis": [c.to_dict() for c in self.circuit_analysis],
            "loop_conditions": {
                "m_loops_in_u_loops": self.m_loops_in_u_loops,
                "u_loops_in_m_loops": self.u_loops_in_m_loops,
            },
            "chi_probe": {str(v): ans for v, ans in self.chi_probe.items()},
            "notes": list(self.notes),
            "certificates": [certificate_to_dict(c) for c in self.certificates],
        }


def _restricted_is_face(M: Matroid, U: Matroid, C: int) -> Optional[bool]:
    rM, rU = restrict(M.rank_vector, C), restrict(U.rank_vector, C)
    if rU.is_zero():
        return None
    try:
        return is_two_face(rM, rU)
    except (NotExtremeRayError, ProportionalRaysError):
        return False


def classify_face(M: Matroid, alpha: int, chi: ChiOracle | None = None,
                  with_certificates: bool = False) -> FaceReport:
    """Classify the face spanned by ``M`` and ``U_{1,|alpha|}^{alpha,n}``.

    The per-circuit rule: a Chen-Yeung restriction anywhere makes the face
    Chen-Yeung; otherwise a Matus restriction makes it Matus when no loop of
    ``M`` lies in ``alpha`` and Chen-Yeung when one does; otherwise the face
    is all-entropic.  Rank-1 ``M`` is all-entropic, and ``M`` with no
    ``v`` in the probe range (all answers ``False``) is reported non-entropic.
    """
    chi = chi or DEFAULT_CHI
    n = M.n
    if not 0 < alpha <= full_mask(n):
        raise ValueError(f"alpha must be a nonempty subset of N_{n}")
    if M.rank == 0 or not is_connected_after_loop_deletion(M):
        raise ValueError(f"{M!r} does not span an extreme ray")
    U = uniform(1, alpha, n)
    notes: list[str] = []
    try:
        face = is_two_face(M.rank_vector, U.rank_vector)
    except ProportionalRaysError:
        face = False
        notes.append("M and U lie on the same ray")
    if not face:
        notes.append("(M, U) is not a 2-dimensional face of the Shannon cone")

    m_loops = loops(M)
    u_loops = full_mask(n) & ~alpha
    analysis = []
    for C in circuits(M):
        if popcount(C) < 2:
            continue
        m, t = popcount(C), popcount(C & alpha)
        analysis.append(CircuitEntry(C, m, t, restricted_pair_type(m, t),
                                     _restricted_is_face(M, U, C)))
    probe = {v: chi.membership(M, v) for v in PROBE_RANGE}

    report = FaceReport(FaceType.UNCOVERED, M, alpha, face, analysis,
                        m_loops & ~u_loops == 0, u_loops & ~m_loops == 0, probe, notes)
    if not face:
        return report
    if all(ans is False for ans in probe.values()):
        report.face_type = FaceType.NON_ENTROPIC
        notes.append(f"NonEntropic given chi_M is empty over v in "
                     f"[{PROBE_RANGE.start}, {PROBE_RANGE.stop - 1}]")
        return report
    if not any(probe.values()):
        notes.append("no v in the probe range is certified for chi_M")

    if M.rank == 1:
        report.face_type = FaceType.ALL_ENTROPIC
    else:
        types = [c.restricted_type for c in analysis]
        matus = [c for c in analysis if c.restricted_type is FaceType.MATUS]
        if FaceType.CHEN_YEUNG in types:
            report.face_type = FaceType.CHEN_YEUNG
        elif matus:
            if m_loops & alpha:
                report.face_type = FaceType.CHEN_YEUNG
                notes.append("Matus circuit present but a loop of M lies in alpha: "
                             f"{format_set(m_loops & alpha)}")
            else:
                report.face_type = FaceType.MATUS
            if len(matus) > 1:
                notes.append(f"{len(matus)} Matus circuits; classified as if one "
                             "(several Matus restrictions, none Chen-Yeung)")
        else:
            report.face_type = FaceType.ALL_ENTROPIC
    for c in analysis:
        if c.restricted_is_face is False:
            notes.append(f"restriction to circuit {format_set(c.circuit)} "
                         f"(m={c.m}, t={c.t}) is a pair, not a 2-face of its cone")

    if with_certificates:
        report.certificates = sample_certificates(report, chi)
    return report


def sample_certificates(report: FaceReport, chi: ChiOracle | None = None) -> list:
    """A few constructed points on the face, for the report."""
    chi = chi or DEFAULT_CHI
    M, alpha = report.matroid, report.alpha
    out = []
    certified = [v for v, ans in report.chi_probe.items() if ans]
    points = []
    if report.face_type is FaceType.ALL_ENTROPIC and M.rank == 1:
        points.append((0.5, 0.5))
    if certified:
        v = certified[0]
        points.append((math.log(v), 1.0))
        if report.face_type is FaceType.MATUS:
            lo = math.log(v - 1)
            points.append(((lo + math.log(v)) / 2, math.log(v) - (lo + math.log(v)) / 2))
    for a, b in points:
        try:
            out.append(entropy.certify_point(M, alpha, a, b))
        except entropy.NoConstructionError:
            report.notes.append(f"no certificate for ({a:.6g}, {b:.6g})")
    return out


# --- region membership ------------------------------------------------------------

def _snap(a: float) -> tuple[float, Optional[int]]:
    v = entropy.lattice_value(a, TOL)
    return (math.log(v), v) if v is not None else (a, None)


def region_membership(face_type: FaceType, chi: Chi, a: float, b: float) -> Membership:
    """Entropic / NonEntropic / Unknown status of the point ``(a, b)`` on a face.

    Matus faces: entropic when ``a <= ln v <= a + b`` for some ``v`` with
    ``chi(v)`` true (the boundary construction covers the whole segment
    ``a + b = ln v``, and ``b`` can then grow along the rank-1 ray);
    non-entropic below the staircase ``a + b < ln ceil(e^a)``.
    Chen-Yeung faces: entropic on ``a = ln v`` with ``chi(v)`` true,
    non-entropic off the lattice ``{ln v}``.  Values within ``TOL`` of a
    lattice point snap to it.
    """
    face_type = FaceType(face_type)
    if a < 0 or b < 0:
        raise ValueError(f"face coordinates must be nonnegative, got ({a}, {b})")
    if a <= TOL:
        return Membership.ENTROPIC  # the rank-1 ray itself
    if face_type is FaceType.ALL_ENTROPIC:
        return Membership.ENTROPIC
    if face_type is FaceType.NON_ENTROPIC:
        return Membership.NON_ENTROPIC
    if face_type is FaceType.UNCOVERED:
        return Membership.UNKNOWN

    a, lattice = _snap(a)
    if face_type is FaceType.CHEN_YEUNG or b <= TOL:
        if lattice is None:
            return Membership.NON_ENTROPIC
        ans = chi(lattice)
        if ans:
            return Membership.ENTROPIC
        if ans is False and b <= TOL:
            return Membership.NON_ENTROPIC
        if face_type is FaceType.CHEN_YEUNG:
            return Membership.UNKNOWN

    # Matus
    v0 = lattice if lattice is not None else math.ceil(math.exp(a))
    if a + b < math.log(v0) - TOL:
        return Membership.NON_ENTROPIC
    v = v0
    while math.log(v) <= a + b + TOL:
        if chi(v):
            return Membership.ENTROPIC
        v += 1
    return Membership.UNKNOWN


@dataclass(frozen=True)
class RegionPiece:
    """One labelled piece of a face diagram.

    ``staircase``: the segment of ``a + b = ln v`` over ``ln(v-1) <= a <= ln v``.
    ``strip``/``gap``: the region ``ln(v-1) < a <= ln v`` above that segment,
    given by the segment's endpoints; ``gap`` when ``v`` is not certified.
    ``ray``/``gap`` on Chen-Yeung faces: the vertical half-line ``a = ln v``.
    """

    label: str
    kind: str
    x1: float
    y1: float
    x2: float
    y2: float

    def row(self) -> list:
        return [self.label, self.kind, self.x1, self.y1, self.x2, self.y2]


def region_boundary_data(face_type: FaceType, chi: Chi, a_max: float) -> list[RegionPiece]:
    face_type = FaceType(face_type)
    if a_max <= 0:
        raise ValueError("a_max must be positive")
    inf = math.inf
    pieces: list[RegionPiece] = []
    if face_type is FaceType.ALL_ENTROPIC:
        return [RegionPiece("all entropic", "strip", 0.0, 0.0, a_max, inf)]
    if face_type in (FaceType.NON_ENTROPIC, FaceType.UNCOVERED):
        return [RegionPiece(face_type.value, "gap", 0.0, 0.0, a_max, inf)]
    a_top = a_max + TOL
    if face_type is FaceType.CHEN_YEUNG:
        v = 2
        while math.log(v) <= a_top:
            x = math.log(v)
            ans = chi(v)
            if ans:
                pieces.append(RegionPiece(f"v={v} entropic", "ray", x, 0.0, x, inf))
            else:
                status = "not in chi" if ans is False else "Unknown"
                pieces.append(RegionPiece(f"v={v} {status}", "gap", x, 0.0, x, inf))
            v += 1
        return pieces
    v = 2
    while math.log(v - 1) < a_max - TOL:
        lo, hi = math.log(v - 1), math.log(v)
        x2 = min(hi, a_max)
        pieces.append(RegionPiece(f"a+b=ln {v}", "staircase", lo, hi - lo, x2, hi - x2))
        ans = chi(v)
        if ans:
            pieces.append(RegionPiece(f"v={v} entropic", "strip", lo, hi - lo, x2, hi - x2))
        else:
            w = v + 1
            while w <= v + 64 and not chi(w):
                w += 1
            cover = f"Unknown below a+b=ln {w}" if chi(w) else "Unknown"
            pieces.append(RegionPiece(f"v={v} {cover}", "gap", lo, hi - lo, x2, hi - x2))
        v += 1
    return pieces
