"""Command-line surface: analyze, bound, lattice, verify, inequalities.

All structured output is JSON with sorted keys (byte-identical across runs for
identical inputs).  Working precision defaults to 128 bits and can be set with
the SCHINZEL_BITS environment variable or --bits.

Exit codes: 0 success; 1 verification failure (hypotheses unmet or the bound
check did not certify); 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exactnum import DEFAULT_BITS, CertifiedInterval, PrecisionError, interval_log
from .heights import BoundInputs, complement_bound, htilde, main_bound
from .inequalities import ALL_IDS, check_harmonic_bound, check_inequality
from .lattice import (
    EnumerationCapError,
    lll_reduce,
    orthogonal_lattice,
    successive_minima,
    torus_degree_interval,
    volume_profile,
)
from .laurent import D_of, LaurentPolynomial, degree, difference_set, h1_of, norm_l1
from .verifier import Instance, filtration_report, verify_instance


class InputError(Exception):
    pass


def _emit(obj, pretty: bool) -> None:
    if pretty:
        s = json.dumps(obj, sort_keys=True, indent=2)
    else:
        s = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    sys.stdout.write(s + "\n")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _polys_from_obj(obj) -> list[LaurentPolynomial]:
    if isinstance(obj, dict) and "polys" in obj:
        items = obj["polys"]
    elif isinstance(obj, dict) and "terms" in obj:
        items = [obj]
    elif isinstance(obj, list):
        items = obj
    else:
        raise InputError("expected a polynomial object, a list, or {'polys': [...]}")
    try:
        polys = [LaurentPolynomial.from_json_dict(p) for p in items]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed polynomial JSON: {exc}") from exc
    if not polys:
        raise InputError("no polynomials given")
    if len({p.nvars for p in polys}) != 1:
        raise InputError("polynomials must share the variable count")
    return polys


def _parse_h1(text: str, bits: int) -> CertifiedInterval:
    text = text.strip()
    if text.startswith("log(") and text.endswith(")"):
        return interval_log(Fraction(text[4:-1]), bits)
    try:
        return CertifiedInterval.point(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse h1 value {text!r}") from exc


def _cmd_analyze(args, bits: int) -> int:
    polys = _polys_from_obj(_load_json(args.poly_file))
    n = polys[0].nvars
    per_poly = []
    warnings = []
    for idx, p in enumerate(polys):
        d = degree(p)
        if d == 0:
            warnings.append(f"polynomial {idx} is constant (degree 0)")
        per_poly.append({"degree": d, "l1_norm": str(norm_l1(p))})
    d_max = D_of(polys)
    h1 = h1_of(polys, bits)
    out = {
        "n": n,
        "polynomials": per_poly,
        "D": d_max,
        "h1": h1.to_json(),
        "difference_set_size": len(difference_set(polys)),
        "warnings": warnings,
    }
    if d_max >= 1:
        out["htilde"] = htilde(n, d_max, h1, bits).to_json()
    _emit(out, args.pretty)
    return 0


def _cmd_bound(args, bits: int) -> int:
    if args.poly_file:
        polys = _polys_from_obj(_load_json(args.poly_file))
        n = polys[0].nvars
        d_max = D_of(polys)
        h1 = h1_of(polys, bits)
    else:
        if args.n is None or args.D is None or args.h1 is None:
            raise InputError("bound needs either a polynomial file or --n --D --h1")
        n, d_max = args.n, args.D
        h1 = _parse_h1(args.h1, bits)
    if args.k is None:
        raise InputError("bound needs --k")
    try:
        inputs = BoundInputs(n=n, D=d_max, h1=h1, k=args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = {
        "n": n,
        "D": d_max,
        "k": args.k,
        "h1": h1.to_json(),
        "htilde": htilde(n, d_max, h1, bits).to_json(),
        "main_bound": main_bound(inputs, bits).to_json(),
        "complement_bound": complement_bound(inputs, bits).to_json(),
    }
    _emit(out, args.pretty)
    return 0


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        vec = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError(f"cannot parse integer vector {text!r}") from exc
    if not vec or all(c == 0 for c in vec):
        raise InputError("vector must be nonzero")
    return vec


def _cmd_lattice(args, bits: int) -> int:
    a = _parse_vector(args.a)
    if len(a) < 2:
        raise InputError("need at least two coordinates")
    perp = orthogonal_lattice(a)
    prof = volume_profile(perp)
    out = {
        "a": list(a),
        "orthogonal_basis": [list(r) for r in perp.basis],
        "volume_profile": {"vol_sq": prof.vol_sq, "vol_1": prof.vol_1,
                           "vol_inf": prof.vol_inf},
        "degree_interval": list(torus_degree_interval(perp)),
    }
    if args.lll:
        out["lll_basis"] = [list(r) for r in lll_reduce(perp).basis]
    if args.minima:
        out["minima_sq"] = successive_minima(perp, perp.rank)
    if args.filtration:
        out["filtration"] = filtration_report(a, bits=bits).to_json_dict()
    _emit(out, args.pretty)
    return 0


def _cmd_verify(args, bits: int) -> int:
    obj = _load_json(args.instance_file)
    try:
        inst = Instance.from_json_dict(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed instance: {exc}") from exc
    report = verify_instance(inst, bits)
    _emit(report.to_json_dict(), args.pretty)
    return 0 if (report.hypotheses_met and report.within_bound) else 1


def _cmd_inequalities(args, bits: int) -> int:
    if args.ids:
        try:
            ids = [int(t) for t in args.ids.split(",")]
        except ValueError as exc:
            raise InputError(f"cannot parse ids {args.ids!r}") from exc
        include_harmonic = False
    else:
        ids = list(ALL_IDS)
        include_harmonic = True
    for i in ids:
        if i not in ALL_IDS:
            raise InputError(f"unknown inequality id {i}")
    all_pass = True
    suite_bits = max(bits, 256)
    for i in ids:
        check = check_inequality(i, n_max=args.n_max, bits=suite_bits)
        all_pass &= check.passed
        sys.stdout.write(json.dumps(check.to_json_dict(), sort_keys=True,
                                    separators=(",", ":")) + "\n")
    if include_harmonic:
        check = check_harmonic_bound(args.n_max, bits=suite_bits)
        all_pass &= check.passed
        sys.stdout.write(json.dumps(check.to_json_dict(), sort_keys=True,
                                    separators=(",", ":")) + "\n")
    return 0 if all_pass else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schinzel",
        description="exact lattice geometry, heights and certified bounds "
                    "on powers of the multiplicative group")
    parser.add_argument("--bits", type=int, default=None,
                        help="working precision in bits (default: SCHINZEL_BITS or 128)")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="degrees, norms and height data of polynomials")
    p.add_argument("poly_file")

    p = sub.add_parser("bound", help="evaluate the explicit bounds")
    p.add_argument("--poly-file")
    p.add_argument("--n", type=int)
    p.add_argument("--D", type=int)
    p.add_argument("--h1", help="rational, or log(R) for an exact log of a rational")
    p.add_argument("--k", type=int)

    p = sub.add_parser("lattice", help="orthogonal lattice data for a direction vector")
    p.add_argument("--a", required=True, help="comma-separated integers")
    p.add_argument("--lll", action="store_true")
    p.add_argument("--minima", action="store_true")
    p.add_argument("--filtration", action="store_true")

    p = sub.add_parser("verify", help="end-to-end instance verification")
    p.add_argument("instance_file")

    p = sub.add_parser("inequalities", help="run the numerical inequality suite")
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--ids", help="comma-separated subset of 1..10 (default: all)")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    bits = args.bits
    if bits is None:
        try:
            bits = int(os.environ.get("SCHINZEL_BITS", DEFAULT_BITS))
        except ValueError:
            print("SCHINZEL_BITS must be an integer", file=sys.stderr)
            return 2
    if bits < 8:
        print("precision must be at least 8 bits", file=sys.stderr)
        return 2
    handlers = {
        "analyze": _cmd_analyze,
        "bound": _cmd_bound,
        "lattice": _cmd_lattice,
        "verify": _cmd_verify,
        "inequalities": _cmd_inequalities,
    }
    try:
        return handlers[args.command](args, bits)
    except (InputError, ValueError, EnumerationCapError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
