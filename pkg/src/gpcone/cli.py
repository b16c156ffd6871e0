"""Command-line front end.

Each command reads a JSON problem file, validates it against the command's
input schema, runs the library and writes JSON (or CSV for ``tightness``) to
stdout or ``--output``. Exit codes: 0 success, 2 invalid input, 3 a search or
iteration gave up.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Optional, Sequence

import jsonschema
import numpy as np

from . import __version__
from .automorphisms import classify, exp_check, is_automorphism, LieElement, sample_automorphism
from .cone import ConeParams, DEFAULT_TOL, dual_membership, membership, moreau_check, project_onto_cone
from .error_bounds import DEFAULT_EPSILONS, exponent_for_face, witness_curve_orthant, witness_curve_ray
from .errors import GPConeError, NoAdmissibleSamples, NonConvergence, SearchExhausted
from .faces import expose_face, face_to_json
from .facial_reduction import AffineSet, certify

COMMANDS = ("membership", "project", "face", "certify", "tightness", "classify", "aut-check")
SCHEMA_VERSION = "1"
EXIT_OK, EXIT_INVALID, EXIT_GAVE_UP = 0, 2, 3


class InputError(Exception):
    pass


def load_schema(name: str) -> dict:
    return json.loads(resources.files("gpcone").joinpath("schemas", f"{name}.json").read_text())


def _floats(v) -> list:
    return [float(x) for x in np.asarray(v, dtype=float).ravel()]


def _params(doc: dict) -> ConeParams:
    p = ConeParams(doc["m"], doc["n"], tuple(doc["alpha"]))
    return p


def _vec(p: ConeParams, doc: dict, key: str) -> np.ndarray:
    v = np.asarray(doc[key], dtype=float)
    if v.size != p.dim:
        raise InputError(f"{key} has length {v.size}, expected m + n = {p.dim}")
    return v


def run_membership(p, doc, args):
    x = _vec(p, doc, "x")
    dual = bool(doc.get("dual", False))
    rep = (dual_membership if dual else membership)(p, x, args.tol)
    return {"status": rep.status.value, "slack": rep.slack, "min_coord": rep.min_coord, "dual": dual}


def run_project(p, doc, args):
    x = _vec(p, doc, "x")
    px = project_onto_cone(p, x)
    chk = moreau_check(p, x[None, :], px[None, :])[0]
    return {"projection": _floats(px), "distance": float(np.linalg.norm(x - px)),
            "moreau": {"polar_ok": chk.polar_ok, "primal_ok": chk.primal_ok, "orthogonality": chk.orthogonality}}


def run_face(p, doc, args):
    face = expose_face(p, _vec(p, doc, "z"), args.tol, strict=not doc.get("lenient", False))
    return {"face": face_to_json(face), "dim": face.dim(p), "exponent": exponent_for_face(p, face)}


def run_certify(p, doc, args):
    basis = np.asarray(doc["L_basis"], dtype=float).reshape(-1, p.dim) if doc["L_basis"] else np.zeros((0, p.dim))
    if np.asarray(doc["L_basis"], dtype=float).size != basis.size:
        raise InputError("every L_basis row must have length m + n")
    aff = AffineSet(basis, _vec(p, doc, "a"))
    z = _vec(p, doc, "z") if "z" in doc else None
    c = certify(p, aff, eta=args.eta, budget=doc.get("budget", 500), seed=args.seed, z=z,
                gamma_samples=args.samples, tol=args.tol)
    g = c.gamma
    return {
        "d_pps": c.d_pps,
        "face": face_to_json(c.face),
        "exposing_z": None if c.exposing_z is None else _floats(c.exposing_z),
        "exponent": c.exponent,
        "constant": c.constant,
        "eta": c.eta,
        "provenance": c.provenance.value,
        "interior_point": None if c.interior_point is None else _floats(c.interior_point),
        "interior_radius": c.interior_radius,
        "dual_radius": c.dual_radius,
        "gamma": None if g is None else {"value": g.value, "sampled": g.sampled_value, "analytic_lower": g.analytic_lower,
                                         "samples": g.sample_count, "eta": g.eta},
        "hoffman": c.hoffman,
        "hoffman_method": c.hoffman_method,
        "conservative": c.conservative,
        "instance": {"m": p.m, "n": p.n, "alpha": _floats(p.alpha), "L_basis": basis.tolist(), "a": _floats(aff.offset)},
    }


def run_tightness(p, doc, args):
    z = _vec(p, doc, "z")
    eps = doc.get("epsilons", list(DEFAULT_EPSILONS))
    if args.kind == "ray":
        curve = witness_curve_ray(p, z, eps)
    else:
        u = np.asarray(doc.get("u", [1.0] + [0.0] * (p.m - 1)), dtype=float)
        curve = witness_curve_orthant(p, z, u, eps)
    return curve.to_csv()


def run_classify(p, doc, args):
    return classify(p).to_json()


def run_aut_check(p, doc, args):
    if "A" in doc:
        A = np.asarray(doc["A"], dtype=float)
        if A.shape != (p.dim, p.dim):
            raise InputError(f"A must be {p.dim}x{p.dim}")
        return {"check": "matrix", "is_automorphism": is_automorphism(p, A, args.tol), "matrix": A.tolist(),
                "ts": None, "soc_sampled": p.is_soc}
    if "G" in doc:
        G, h = np.asarray(doc["G"], dtype=float), np.asarray(doc["h"], dtype=float)
        if G.shape != (p.m, p.m) or h.shape != (p.n,):
            raise InputError(f"G must be {p.m}x{p.m} and h must have length {p.n}")
        ts = [float(t) for t in doc.get("ts", [1.0, -1.0, 0.1, -0.1])]
        ok = exp_check(p, LieElement(G, h), ts, max(args.tol, 1e-8), seed=args.seed)
        return {"check": "exponential", "is_automorphism": ok, "matrix": None, "ts": ts, "soc_sampled": p.is_soc}
    A = sample_automorphism(p, args.seed).matrix()
    return {"check": "sampled", "is_automorphism": is_automorphism(p, A, args.tol), "matrix": A.tolist(),
            "ts": None, "soc_sampled": p.is_soc}


RUNNERS = {
    "membership": run_membership,
    "project": run_project,
    "face": run_face,
    "certify": run_certify,
    "tightness": run_tightness,
    "classify": run_classify,
    "aut-check": run_aut_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="JSON problem file ('-' for stdin)")
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help=f"tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--eta", type=float, default=1.0, help="radius of the ball for error bounds (default 1.0)")
    common.add_argument("--samples", type=int, default=10000, help="sample count for gamma estimates (default 10000)")
    parser = argparse.ArgumentParser(prog="gpcone", description="Generalized power cone toolkit")
    parser.add_argument("--version", action="version", version=f"gpcone {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "membership": "classify x as interior, boundary or exterior (dual cone with \"dual\": true)",
        "project": "Euclidean projection onto the cone with Moreau checks",
        "face": "face exposed by a dual boundary vector z",
        "certify": "error-bound certificate for (L + a) cap K",
        "tightness": "witness curve as CSV: epsilon, dist_cone, dist_face, ratio",
        "classify": "irreducible, homogeneous, perfect, self-dual, automorphism dimension",
        "aut-check": "check a matrix A, an exponential exp(tU) or a sampled automorphism",
    }
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd, parents=[common], help=helps[cmd])
        if cmd == "tightness":
            sp.add_argument("--kind", choices=("ray", "orthant"), required=True, help="which witness curve")
    return parser


def _read(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.tol <= 0 or args.eta <= 0 or args.samples <= 0:
            raise InputError("--tol, --eta and --samples must be positive")
        doc = _read(args.input)
        try:
            jsonschema.validate(doc, load_schema(f"input_{args.command}"))
        except jsonschema.ValidationError as exc:
            where = "/".join(str(k) for k in exc.absolute_path) or "<root>"
            raise InputError(f"input schema violation at {where}: {exc.message}") from None
        p = _params(doc)
        result = RUNNERS[args.command](p, doc, args)
        if isinstance(result, dict):
            result = {"schema_version": SCHEMA_VERSION, "tool": "gpcone", "version": __version__,
                      "command": args.command, "seed": args.seed, **result}
            jsonschema.validate(result, load_schema(f"output_{args.command}"))
            text = json.dumps(result, indent=2, sort_keys=True) + "\n"
        else:
            text = result
    except (InputError, GPConeError, ValueError, TypeError) as exc:
        if isinstance(exc, (SearchExhausted, NonConvergence, NoAdmissibleSamples)):
            print(f"gpcone {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_GAVE_UP
        print(f"gpcone {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
