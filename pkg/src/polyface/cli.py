"""Command line front end.

Exit codes: 0 success, 1 domain failure (not a polymatroid, not a face, no
construction, ...), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import cone, entropy, files
from .classify import DEFAULT_CHI, FaceType, classify_face, region_boundary_data, region_membership
from .matroid import (
    MatroidError,
    is_connected_after_loop_deletion,
    loops,
    parallel_pairs,
)
from .setfn import elements_of, is_polymatroid, mask_of, polymatroid_violation
from .sweep import run_all


class DomainFailure(Exception):
    pass


def parse_nats(text: str) -> float:
    """A decimal number of nats, or ``ln:v`` for the natural log of integer ``v``."""
    text = text.strip()
    if text.startswith("ln:"):
        v = int(text[3:])
        if v < 1:
            raise ValueError("ln:v needs v >= 1")
        return math.log(v)
    return float(text)


def parse_alpha(text: str) -> int:
    els = [int(x) for x in text.replace(" ", "").split(",") if x]
    if not els:
        raise ValueError("alpha must list at least one element")
    return mask_of(els)


def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "json" or text is None:
        out = files.dump_json(payload)
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_check_polymatroid(args) -> int:
    h = files.load_vector(args.h)
    bad = polymatroid_violation(h)
    _emit(args, {"polymatroid": bad is None, "violated": str(bad) if bad else None},
          "polymatroid" if bad is None else f"not a polymatroid: violates {bad}")
    return 0 if bad is None else 1


def _input_vector(args):
    if args.h:
        return files.load_vector(args.h)
    if args.h1 and args.h2:
        return files.load_vector(args.h1) + files.load_vector(args.h2)
    raise files.FormatError("give --h, or both --h1 and --h2")


def cmd_face_dim(args) -> int:
    h = _input_vector(args)
    if not is_polymatroid(h):
        raise DomainFailure(f"not a polymatroid: violates {polymatroid_violation(h)}")
    d = cone.minimal_face_dim(h)
    tight = cone.tight_set(h)
    _emit(args, {"dim": d, "tight": [str(f) for f in tight]}, str(d))
    return 0


def cmd_is_extreme(args) -> int:
    h = _input_vector(args)
    if not is_polymatroid(h):
        raise DomainFailure(f"not a polymatroid: violates {polymatroid_violation(h)}")
    ok = cone.is_extreme_ray(h)
    _emit(args, {"extreme": ok, "dim": cone.minimal_face_dim(h)}, str(ok).lower())
    return 0 if ok else 1


def cmd_is_two_face(args) -> int:
    h1, h2 = files.load_vector(args.h1), files.load_vector(args.h2)
    try:
        ok = cone.is_two_face(h1, h2)
    except (cone.NotExtremeRayError, cone.ProportionalRaysError, cone.NotPolymatroidError) as exc:
        raise DomainFailure(str(exc)) from None
    _emit(args, {"two_face": ok, "dim": cone.minimal_face_dim(h1 + h2)}, str(ok).lower())
    return 0 if ok else 1


def cmd_circuits(args) -> int:
    M = files.load_matroid(args.matroid)
    payload = {
        "n": M.n,
        "rank": M.rank,
        "circuits": [elements_of(c) for c in M.circuits],
        "loops": elements_of(loops(M)),
        "parallel_pairs": [list(p) for p in parallel_pairs(M)],
        "connected_after_loop_deletion": is_connected_after_loop_deletion(M),
    }
    text = "\n".join(" ".join(map(str, c)) for c in payload["circuits"])
    _emit(args, payload, text)
    return 0


def cmd_classify(args) -> int:
    M = files.load_matroid(args.matroid)
    alpha = parse_alpha(args.alpha)
    try:
        report = classify_face(M, alpha, with_certificates=args.certify)
    except ValueError as exc:
        raise DomainFailure(str(exc)) from None
    _emit(args, report.to_dict(), report.face_type.value)
    return 1 if report.face_type is FaceType.UNCOVERED else 0


def cmd_region(args) -> int:
    M = files.load_matroid(args.matroid)
    alpha = parse_alpha(args.alpha)
    try:
        report = classify_face(M, alpha)
    except ValueError as exc:
        raise DomainFailure(str(exc)) from None
    chi = DEFAULT_CHI.for_matroid(M)
    if args.point:
        a, b = (parse_nats(x) for x in args.point.split(","))
        status = region_membership(report.face_type, chi, a, b)
        _emit(args, {"face_type": report.face_type.value, "a": a, "b": b,
                     "membership": status.value}, status.value)
        return 0
    pieces = region_boundary_data(report.face_type, chi, parse_nats(args.a_max))
    if args.format == "json":
        _emit(args, {"face_type": report.face_type.value,
                     "pieces": [dict(zip(["label", "kind", "x1", "y1", "x2", "y2"], p.row()))
                                for p in pieces]})
    else:
        _emit(args, None, files.region_csv(pieces))
    return 0


def cmd_certify(args) -> int:
    if args.verify:
        cert = files.load_certificate(args.verify)
        ok = cert.valid
        _emit(args, {"valid": ok, "residual": cert.residual},
              f"{'valid' if ok else 'INVALID'} residual={cert.residual:.3g}")
        return 0 if ok else 1
    if not (args.matroid and args.alpha and args.a):
        raise files.FormatError("certify needs --matroid, --alpha and --a (or --verify)")
    M = files.load_matroid(args.matroid)
    alpha = parse_alpha(args.alpha)
    a = parse_nats(args.a)
    try:
        if args.b is not None:
            cert = entropy.certify_point(M, alpha, a, parse_nats(args.b))
        elif args.v is not None:
            cert = entropy.matus_boundary_dist(M, alpha, args.v, a)
        else:
            raise files.FormatError("certify needs --v or --b")
    except entropy.NoConstructionError as exc:
        raise DomainFailure(str(exc)) from None
    except files.FormatError:
        raise
    except ValueError as exc:
        raise DomainFailure(str(exc)) from None
    payload = files.certificate_to_dict(cert)
    _emit(args, payload, f"point=({cert.a:.12g}, {cert.b:.12g}) residual={cert.residual:.3g}")
    return 0 if cert.valid else 1


def cmd_sweep_catalog(args) -> int:
    results = run_all(args.max_n)
    lines = [r.line() for r in sorted(results, key=lambda r: r.name)]
    payload = {r.name: {"passed": r.passed, "checked": r.checked, "failures": len(r.failures)}
               for r in results}
    _emit(args, payload, "\n".join(lines))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyface", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, fmt="text"):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=["json", "csv", "text"], default=fmt)
        sp.add_argument("--output", "-o")
        return sp

    sp = add("check-polymatroid", cmd_check_polymatroid, "test the elemental inequalities")
    sp.add_argument("--h", required=True)
    for name, func, help_ in [("face-dim", cmd_face_dim, "dimension of the minimal face"),
                              ("is-extreme", cmd_is_extreme, "extreme-ray test")]:
        sp = add(name, func, help_)
        sp.add_argument("--h")
        sp.add_argument("--h1")
        sp.add_argument("--h2")
    sp = add("is-two-face", cmd_is_two_face, "do two extreme rays span a 2-face")
    sp.add_argument("--h1", required=True)
    sp.add_argument("--h2", required=True)
    sp = add("circuits", cmd_circuits, "circuits, loops and parallel pairs of a matroid")
    sp.add_argument("--matroid", required=True)
    sp = add("classify", cmd_classify, "classify the face (M, U_1,|alpha|)", "json")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--certify", action="store_true", help="attach sample certificates")
    sp = add("region", cmd_region, "face diagram pieces, or membership of one point", "csv")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--a-max", default="ln:8")
    sp.add_argument("--point", help="a,b (each a decimal or ln:v)")
    sp = add("certify", cmd_certify, "build a distribution certificate", "json")
    sp.add_argument("--matroid")
    sp.add_argument("--alpha")
    sp.add_argument("--v", type=int)
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--verify", help="re-validate a certificate file")
    sp = add("sweep-catalog", cmd_sweep_catalog, "run the catalog property suites")
    sp.add_argument("--max-n", type=int, default=5)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (files.FormatError, MatroidError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
