"""Command line surface: build and export operators, run verification
campaigns, list the registries.

Exit codes: 0 success/pass, 1 verification or construction failure, 2
usage error (argparse, unknown check name, or a dense request beyond the
register ceiling)."""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import operators as op_families
from . import verify
from .gates import CCZ, CZ, SWAP, n_toffoli, reference_gate
from .su2 import AxisAngle, DegenerateEigenvaluesError, fixed_gate
from .tensor import DEFAULT_TOL, arity_of, frobenius_distance, identity, is_unitary, save_operator

_PI_RE = re.compile(
    r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$", re.IGNORECASE
)
_NAMED_AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}


def parse_angle(text: str) -> float:
    """Decimal radians or a pi fraction: '0.5', 'pi', '-pi/2', '3pi/4'."""
    m = _PI_RE.match(text)
    if m:
        coeff_s, den_s = m.groups()
        coeff = float(coeff_s + "1") if coeff_s in ("", "+", "-") else float(coeff_s)
        value = coeff * math.pi
        if den_s:
            value /= float(den_s)
        return value
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def parse_axis(text: str) -> tuple[float, float, float]:
    """'x'/'y'/'z' or three comma-separated components; vectors within 1e-6
    of unit length are normalized, anything farther is rejected."""
    t = text.strip().lower()
    if t in _NAMED_AXES:
        return _NAMED_AXES[t]
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"axis must be x|y|z or three components, got {text!r}")
    try:
        v = np.array([float(p) for p in parts])
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse axis {text!r}") from None
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-6:
        raise argparse.ArgumentTypeError(
            f"axis {text!r} has norm {norm:.8f}, not within 1e-6 of unit length")
    v = v / norm
    return (float(v[0]), float(v[1]), float(v[2]))


def parse_complex(text: str) -> complex:
    """Python complex syntax: '1', '-0.5', '1+0.5j', '2j'."""
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def _axis_angle(args: argparse.Namespace, label: str) -> AxisAngle:
    return AxisAngle(getattr(args, f"axis_{label}"), getattr(args, f"theta_{label}"))


def _add_axis_angle(parser, label: str, axis_default: str, theta_default: str) -> None:
    parser.add_argument(f"--axis-{label}", type=parse_axis, default=parse_axis(axis_default),
                        metavar="AXIS", help=f"site {label} axis (default {axis_default})")
    parser.add_argument(f"--theta-{label}", type=parse_angle, default=parse_angle(theta_default),
                        metavar="ANGLE", help=f"site {label} angle (default {theta_default})")


# ---------------------------------------------------------------------------
# family registry


@dataclass(frozen=True)
class Family:
    name: str
    description: str
    constructor: Callable
    add_arguments: Callable[[argparse.ArgumentParser], None]
    build: Callable[[argparse.Namespace], np.ndarray]
    reference: Callable[[argparse.Namespace], tuple[str, np.ndarray]] | None = None


FAMILIES: dict[str, Family] = {}


def _family(name, description, constructor, reference=None):
    def deco(cls_or_fns):
        add_args, build = cls_or_fns
        FAMILIES[name] = Family(name=name, description=description,
                                constructor=constructor, add_arguments=add_args,
                                build=build, reference=reference)
        return cls_or_fns

    return deco


def _no_arguments(parser):  # families with no parameters
    pass


_family("toffoli-family", "phased Toffoli gate family (CCNOT at alpha 0)",
        op_families.toffoli_family,
        reference=lambda args: ("CCNOT", reference_gate("CCNOT")))((
    lambda p: p.add_argument("--alpha", type=parse_angle, default=0.0),
    lambda args: op_families.toffoli_family(args.alpha),
))

_family("su2-tetrahedron", "three-site rotation family (Toffoli family at its special point)",
        op_families.su2_tetrahedron,
        reference=lambda args: (f"toffoli-family(alpha={args.alpha:g})",
                                op_families.toffoli_family(args.alpha)))((
    lambda p: (_add_axis_angle(p, "i", "z", "pi/2"), _add_axis_angle(p, "j", "z", "pi/2"),
               _add_axis_angle(p, "k", "x", "pi/2"),
               p.add_argument("--alpha", type=parse_angle, default=0.0)),
    lambda args: op_families.su2_tetrahedron(
        _axis_angle(args, "i"), _axis_angle(args, "j"), _axis_angle(args, "k"),
        alpha=args.alpha),
))

_family("general-toffoli", "Toffoli with rotated control bases and rotated target flip",
        op_families.general_toffoli,
        reference=lambda args: ("CCNOT", reference_gate("CCNOT")))((
    lambda p: (_add_axis_angle(p, "i", "z", "pi/2"), _add_axis_angle(p, "j", "z", "pi/2"),
               _add_axis_angle(p, "k", "z", "0")),
    lambda args: op_families.general_toffoli(
        _axis_angle(args, "i"), _axis_angle(args, "j"), _axis_angle(args, "k")),
))


def _generic_args(p):
    p.add_argument("--family-kind", choices=("pauli-exp", "seeded-random"),
                   default="seeded-random")
    p.add_argument("--family-seed", type=int, default=0)
    p.add_argument("--mu-i", type=parse_complex, default=complex(0.4, 0.2))
    p.add_argument("--mu-j", type=parse_complex, default=complex(-0.8, 0.5))
    p.add_argument("--mu-k", type=parse_complex, default=complex(1.1, -0.3))
    p.add_argument("--couplings", default="1,1,1,1,1,1,1", metavar="C1,...,C7",
                   help="alpha1,alpha2,alpha3,beta1,beta2,beta3,gamma")


def _generic_build(args):
    vals = [parse_complex(v) for v in args.couplings.split(",")]
    if len(vals) != 7:
        raise ValueError(f"--couplings needs 7 comma-separated values, got {len(vals)}")
    family = (op_families.SiteOperatorFamily.pauli_exp()
              if args.family_kind == "pauli-exp"
              else op_families.SiteOperatorFamily.seeded_random(args.family_seed))
    return op_families.generic_tetrahedron(
        family, (args.mu_i, args.mu_j, args.mu_k), op_families.CouplingConstants(*vals))


_family("generic-tetrahedron", "coupled products of per-site operators from a chosen family",
        op_families.generic_tetrahedron)((_generic_args, _generic_build))

_family("constant-ccz", "sign flip on |111>: the constant solution equal to CCZ",
        op_families.constant_ccz,
        reference=lambda args: ("CCZ", CCZ.copy()))((
    _no_arguments, lambda args: op_families.constant_ccz(),
))

_family("constant-alpha", "constant solution with a phased last factor",
        op_families.constant_alpha)((
    lambda p: p.add_argument("--alpha", type=parse_angle, default=0.0),
    lambda args: op_families.constant_alpha(args.alpha),
))

_family("constant-alpha-beta", "unitary constant solution with a two-phase last factor",
        op_families.constant_alpha_beta)((
    lambda p: (p.add_argument("--alpha", type=parse_angle, default=0.0),
               p.add_argument("--beta", type=parse_angle, default=0.0)),
    lambda args: op_families.constant_alpha_beta(args.alpha, args.beta),
))

_family("constant-linear", "a*identity + b*|111><111| (constant solution, rarely unitary)",
        op_families.constant_linear)((
    lambda p: (p.add_argument("--a", type=parse_complex, default=complex(1.0)),
               p.add_argument("--b", type=parse_complex, default=complex(-2.0))),
    lambda args: op_families.constant_linear(args.a, args.b),
))

_family("cz-yangbaxter", "two-site sign flip on |11> solving the Yang-Baxter equation",
        op_families.cz_yangbaxter,
        reference=lambda args: ("CZ", CZ.copy()))((
    _no_arguments, lambda args: op_families.cz_yangbaxter(),
))


def _4simplex_args(p):
    p.add_argument("--variant", choices=("two-control", "three-control"),
                   default="three-control")
    for label, axis, theta in (("i", "z", "pi/2"), ("j", "z", "pi/2"),
                               ("k", "z", "pi/2"), ("l", "x", "pi/2")):
        _add_axis_angle(p, label, axis, theta)
    p.add_argument("--alpha", type=parse_angle, default=0.0)
    p.add_argument("--special-point", action="store_true",
                   help="force the 4-Toffoli reduction point (z,z,z axes, x target, all pi/2, alpha 0)")


def _4simplex_build(args):
    if args.special_point:
        z, x = _NAMED_AXES["z"], _NAMED_AXES["x"]
        ps = [AxisAngle(z, math.pi / 2)] * 3 + [AxisAngle(x, math.pi / 2)]
        alpha = 0.0
    else:
        ps = [_axis_angle(args, lbl) for lbl in "ijkl"]
        alpha = args.alpha
    return op_families.su2_4simplex(*ps, alpha=alpha,
                                    variant=args.variant.replace("-", "_"))


_family("su2-4simplex", "four-site rotation family (two flip-control variants)",
        op_families.su2_4simplex,
        reference=lambda args: ("NTOFFOLI(4)", n_toffoli(4)))((
    _4simplex_args, _4simplex_build,
))

_family("nsimplex-constant", "diagonal constant n-site solution",
        op_families.n_simplex_constant)((
    lambda p: (p.add_argument("--n", type=int, default=3),
               p.add_argument("--alpha", type=parse_angle, default=0.0)),
    lambda args: op_families.n_simplex_constant(args.n, args.alpha),
))


def _ntoffoli_args(p):
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--control-axis", type=parse_axis, default=_NAMED_AXES["z"])
    p.add_argument("--control-theta", type=parse_angle, default=math.pi / 2)
    p.add_argument("--target-axis", type=parse_axis, default=_NAMED_AXES["z"])
    p.add_argument("--target-theta", type=parse_angle, default=0.0)


def _ntoffoli_build(args):
    params = [AxisAngle(args.control_axis, args.control_theta)] * (args.n - 1)
    params.append(AxisAngle(args.target_axis, args.target_theta))
    return op_families.n_simplex_su2_toffoli(params)


_family("nsimplex-su2toffoli", "n-site Toffoli family with rotated control bases",
        op_families.n_simplex_su2_toffoli,
        reference=lambda args: (f"NTOFFOLI({args.n})", n_toffoli(args.n)))((
    _ntoffoli_args, _ntoffoli_build,
))

_family("twisted-permutation", "SWAP conjugated by the two site rotations",
        op_families.twisted_permutation,
        reference=lambda args: ("SWAP", SWAP.copy()))((
    lambda p: (_add_axis_angle(p, "1", "z", "0"), _add_axis_angle(p, "2", "z", "0")),
    lambda args: op_families.twisted_permutation(_axis_angle(args, "1"), _axis_angle(args, "2")),
))

_family("conjugated-site", "single-site conjugation of a fixed gate into a rotated frame",
        op_families.conjugated_site_operator)((
    lambda p: (_add_axis_angle(p, "1", "z", "0"),
               p.add_argument("--gate", default="X", choices=("I", "X", "Y", "Z", "H"))),
    lambda args: op_families.conjugated_site_operator(_axis_angle(args, "1"),
                                                      fixed_gate(args.gate)),
))


# ---------------------------------------------------------------------------
# commands


def cmd_build(args: argparse.Namespace) -> int:
    fam = FAMILIES[args.family]
    try:
        op = fam.build(args)
    except DegenerateEigenvaluesError as exc:
        print(f"error: DegenerateEigenvalues: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    k = arity_of(op)
    deviation = float(np.linalg.norm(op @ op.conj().T - identity(k)))
    print(f"family: {args.family}")
    print(f"arity: {k}  dim: {2 ** k}")
    print(f"unitary: {'yes' if is_unitary(op, DEFAULT_TOL) else 'no'} "
          f"(deviation {deviation:.3e})")
    if fam.reference is not None:
        ref_name, ref = fam.reference(args)
        print(f"distance to {ref_name}: {frobenius_distance(op, ref):.6e}")
    if args.out:
        save_operator(op, args.out)
        print(f"wrote: {args.out}")
    return 0


def _run_config(args: argparse.Namespace) -> dict:
    return {
        "command": "verify",
        "checks": list(args.checks),
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "mode": args.mode,
        "vectors": args.vectors,
        "out": args.out,
    }


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        report = verify.campaign(
            args.checks, trials=args.trials, seed=args.seed, tol=args.tol,
            n=args.n, mode=args.mode, vectors=args.vectors, config=_run_config(args),
        )
    except verify.UnknownCheckError as exc:
        print(f"error: unknown check {exc.args[0]!r}; see 'simplexgates list --checks'",
              file=sys.stderr)
        return 2
    except verify.DenseDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0 if report.verdict == "pass" else 1


def cmd_list(args: argparse.Namespace) -> int:
    if args.json:
        payload = {
            "families": {name: f.description for name, f in FAMILIES.items()},
            "checks": {name: c.description for name, c in verify.CHECKS.items()},
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
        return 0
    if not args.checks:
        print("operator families:")
        for name, fam in FAMILIES.items():
            print(f"  {name:24s} {fam.description}")
        print()
    print("verification checks:")
    for name, spec in verify.CHECKS.items():
        print(f"  {name:24s} {spec.description}")
    return 0


def _default_seed() -> int:
    return int(os.environ.get("SIMPLEX_SEED", "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexgates",
        description="Build simplex operator families and verify their equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="construct an operator and report its properties")
    fam_sub = build.add_subparsers(dest="family", required=True, metavar="FAMILY")
    for name, fam in FAMILIES.items():
        fp = fam_sub.add_parser(name, help=fam.description)
        fam.add_arguments(fp)
        fp.add_argument("--out", default=None, metavar="PATH",
                        help="write the operator as a JSON file")
        fp.set_defaults(func=cmd_build)

    ver = sub.add_parser("verify", help="run named verification checks")
    ver.add_argument("checks", nargs="+", metavar="CHECK")
    ver.add_argument("--n", type=int, default=None, help="simplex order for n-aware checks")
    ver.add_argument("--trials", type=int, default=20)
    ver.add_argument("--seed", type=int, default=_default_seed(),
                     help="base seed (default from SIMPLEX_SEED, else 0)")
    ver.add_argument("--tol", type=float, default=None,
                     help="override the absolute tolerance on normalized residuals")
    ver.add_argument("--mode", choices=("dense", "matrixfree"), default=None)
    ver.add_argument("--vectors", type=int, default=verify.DEFAULT_VECTORS,
                     help="random unit vectors per matrix-free trial")
    ver.add_argument("--out", default=None, metavar="PATH", help="write the JSON report here")
    ver.set_defaults(func=cmd_verify)

    lst = sub.add_parser("list", help="list operator families and checks")
    lst.add_argument("--checks", action="store_true", help="only the verification checks")
    lst.add_argument("--json", action="store_true", help="machine-readable catalog")
    lst.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
