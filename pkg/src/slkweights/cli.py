"""Command-line interface: ``slkweights {mult,complex,regions,verify}``."""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from fractions import Fraction

from . import _accel
from .gt import build_spf_system, count_gt, multiplicity_spf
from .kostant import multiplicity_kmf
from .typea import Weight, is_generic, normalize_pair, partition_permutahedron, regions_csv, svg_k3

SCHEMA = 1
ALLOWED_K4_COUNTS = (213, 229, 261, 277, 325, 337)

log = logging.getLogger("slkweights")


class UsageError(ValueError):
    pass


def parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse vector {text!r}: {exc}") from None


def parse_lambda(text: str, k: int | None) -> list[Fraction]:
    lam = parse_vector(text)
    if k is not None and len(lam) != k:
        raise UsageError(f"--lambda has {len(lam)} entries, expected {k}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise UsageError("--lambda must be weakly decreasing (dominant)")
    w = Weight.of(lam)
    if not w.is_integral():
        raise UsageError("--lambda is not an integral weight")
    return lam


def _fmt(v):
    return [str(x) for x in v]


def emit(payload: dict, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, indent=1, default=str))
    else:
        print(text if text is not None else json.dumps(payload, default=str))


# ---------------------------------------------------------------------------

def cmd_mult(args) -> int:
    lam = parse_lambda(args.lam, args.k)
    if args.beta is None:
        raise UsageError("--beta is required")
    beta = parse_vector(args.beta)
    if len(beta) != len(lam):
        raise UsageError("--beta and --lambda differ in length")
    lam_gl, beta_gl, shift = normalize_pair(lam, beta)
    methods = ["gt", "kmf", "spf"] if args.method == "all" else [args.method]
    values = {}
    for m in methods:
        if m == "gt":
            values[m] = count_gt(lam, beta)
        elif m == "kmf":
            values[m] = multiplicity_kmf(lam, beta)
        else:
            values[m] = multiplicity_spf(build_spf_system(len(lam)), lam, beta)
    agree = len(set(values.values())) == 1
    note = None if beta_gl is not None else "beta - lambda is not in the root lattice"
    payload = {"command": "mult", "lambda": _fmt(lam), "beta": _fmt(beta),
               "normalized": {"lambda": list(lam_gl), "beta": None if beta_gl is None else list(beta_gl),
                              "shift": str(shift)},
               "values": values, "agree": agree, "note": note}
    text = " ".join(f"{m}={v}" for m, v in values.items())
    if note:
        text += f"  ({note})"
    if not agree:
        text += "  DISAGREEMENT"
    emit(payload, args.format, text)
    return 0 if agree else 1


def cmd_complex(args) -> int:
    from .multcomplex import (beta_orbits, derive_walls, facet_normal_directions, lambda_complex,
                              lambda_complex_svg)
    if args.k not in (3, 4):
        raise UsageError("complex supports --k 3 or --k 4")
    if args.format == "svg" and not (args.lambda_complex and args.k == 4):
        raise UsageError("SVG output of complex needs --k 4 --lambda-complex")
    stage = "glued" if args.glue or args.walls or args.lambda_complex else "raw"
    t0 = time.time()
    mc = _complex(args, args.k, stage)
    out = {"command": "complex", "k": args.k, "stage": stage, "info": mc.info, "cells": len(mc.cells)}
    if mc.glued:
        out["orbits"] = len(beta_orbits(mc))
    if args.lambda_complex:
        lc = lambda_complex(mc, seed=args.seed)
        if args.format == "svg":
            print(lambda_complex_svg(lc), end="")
            return 0
        out["lambda_projections"] = len(lc.projections)
        out["lambda_generator_sets"] = len(lc.generator_sets)
        out["lambda_regions"] = len(lc.cells)
        out["lambda_regions_mod_symmetry"] = len(lc.symmetric_classes())
    if args.walls:
        walls = derive_walls(mc)
        out["normal_directions"] = len(facet_normal_directions(mc))
        out["walls"] = [{"normal": list(w.normal), "kind": w.kind, "U": list(w.U), "V": list(w.V)} for w in walls]
    out["seconds"] = round(time.time() - t0, 2)
    lines = [f"k={args.k} {stage}: {len(mc.cells)} cells"]
    for key in ("orbits", "lambda_projections", "lambda_generator_sets", "lambda_regions",
                "lambda_regions_mod_symmetry", "normal_directions"):
        if key in out:
            lines.append(f"{key}: {out[key]}")
    emit(out, args.format, "\n".join(lines))
    return 0


def _complex(args, k, stage):
    from .multcomplex import cached_complex
    return cached_complex(k, stage, directory=args.cache_dir, workers=args.workers, scale_cap=args.scale_cap)


def cmd_regions(args) -> int:
    lam = parse_lambda(args.lam, args.k)
    k = len(lam)
    part = partition_permutahedron(lam, stretch=k > 4)
    ok = True
    generic = is_generic(lam)
    if k == 4 and generic:
        ok = part.count in ALLOWED_K4_COUNTS
    if args.format == "svg":
        if k != 3:
            raise UsageError("SVG output is available for k = 3")
        print(svg_k3(lam))
    elif args.format == "csv":
        print(regions_csv([(lam, part.count)]), end="")
    else:
        payload = {"command": "regions", "lambda": _fmt(lam), "count": part.count, "ok": ok,
                   "regions": [[_fmt(v) for v in r.vertices] for r in part.regions]}
        noun = "region" if part.count == 1 else "regions"
        emit(payload, args.format, f"{part.count} {noun}" + ("" if ok else " (unexpected count)"))
    return 0 if ok else 1


def _random_pair(rng: random.Random, k: int, top: int = 8):
    lam = sorted((rng.randint(0, top) for _ in range(k)), reverse=True)
    beta = [rng.randint(0, top) for _ in range(k - 1)]
    beta.append(sum(lam) - sum(beta))
    return lam, beta


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    k = args.k
    deadline = time.time() + args.budget_seconds if args.budget_seconds else None
    result = {"command": "verify", "suite": args.suite, "k": k, "seed": args.seed}
    failures = []
    checked = 0
    complete = True
    if args.suite == "oracle":
        sys_ = build_spf_system(k)
        for _ in range(args.budget):
            if deadline and time.time() > deadline:
                complete = False
                break
            lam, beta = _random_pair(rng, k)
            vals = (count_gt(lam, beta), multiplicity_kmf(lam, beta), multiplicity_spf(sys_, lam, beta))
            checked += 1
            if len(set(vals)) != 1:
                failures.append({"lambda": lam, "beta": beta, "values": vals})
    elif args.suite == "scaling":
        from .multcomplex import scaling_polynomial
        for _ in range(args.budget):
            if deadline and time.time() > deadline:
                complete = False
                break
            lam, beta = _random_pair(rng, k)
            checked += 1
            try:
                scaling_polynomial(lam, beta)
            except ValueError as exc:
                failures.append({"lambda": lam, "beta": beta, "error": str(exc)})
    elif args.suite in ("factorization", "gluing", "walls"):
        from .multcomplex import beta_orbits, compare_with_dh_walls, derive_walls
        mc = _complex(args, k, "glued")
        if args.suite == "factorization":
            from .arrangements import verify_factorizations
            boundary, jumps = verify_factorizations(mc)
            checked = len(boundary) + len(jumps)
            failures = [r.to_json() for r in boundary + jumps if not r.ok]
            result["boundary_factor_counts"] = sorted({len(r.factors) for r in boundary})
        elif args.suite == "gluing":
            orbits = beta_orbits(mc)
            checked = len(mc.cells)
            result["cells"], result["orbits"] = len(mc.cells), len(orbits)
        else:
            walls = derive_walls(mc)
            for _ in range(args.budget):
                if deadline and time.time() > deadline:
                    complete = False
                    break
                lam = _generic_weight(rng, k)
                ok, extra, missing = compare_with_dh_walls(walls, lam)
                checked += 1
                if not ok:
                    failures.append({"lambda": _fmt(lam), "extra": len(extra), "missing": len(missing)})
    result.update(checked=checked, failures=failures, complete=complete, passed=not failures)
    status = "PASS" if not failures else "FAIL"
    if not complete:
        status += " (incomplete: budget exceeded)"
    emit(result, args.format, f"{args.suite}: {checked} checked, {len(failures)} failures: {status}")
    return 0 if not failures else 1


def _generic_weight(rng: random.Random, k: int) -> list[int]:
    while True:
        lam = sorted(rng.sample(range(-30, 31), k), reverse=True)
        lam = [x * k - sum(lam) for x in lam]
        if is_generic(lam):
            return lam


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv", "svg", "text"), default="text")
    common.add_argument("--cache-dir", default=None, help="cache directory (default: $SLKWEIGHTS_CACHE)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1, help="processes for polynomial fitting")
    common.add_argument("--scale-cap", type=int, default=1 << 12,
                        help="largest lattice scale tried when fitting a cell")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="slkweights", description="Weight multiplicities of sl_k.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mult", parents=[common], help="multiplicity of one weight")
    m.add_argument("--lambda", dest="lam", required=True)
    m.add_argument("--beta", required=True)
    m.add_argument("--method", choices=("gt", "kmf", "spf", "all"), default="gt")
    m.set_defaults(func=cmd_mult)

    c = sub.add_parser("complex", parents=[common], help="build the multiplicity chamber complex")
    c.add_argument("--glue", action="store_true")
    c.add_argument("--lambda-complex", action="store_true")
    c.add_argument("--walls", action="store_true")
    c.set_defaults(func=cmd_complex)

    r = sub.add_parser("regions", parents=[common], help="partition a permutahedron")
    r.add_argument("--lambda", dest="lam", required=True)
    r.set_defaults(func=cmd_regions)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=("factorization", "scaling", "oracle", "gluing", "walls"))
    v.add_argument("--budget", type=int, default=100, help="number of random samples")
    v.add_argument("--budget-seconds", type=float, default=None)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    if args.scale_cap < 1:
        print("error: --scale-cap must be >= 1", file=sys.stderr)
        return 2
    if args.command in ("complex", "verify") and args.k is None:
        args.k = 4 if args.command == "complex" else 3
    log.info("kernel backend: %s", _accel.backend())
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:  # scale cap exceeded, gluing refuted
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
