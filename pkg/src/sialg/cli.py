"""Command-line surface: generate, analyze, comul, verify.

All reports are deterministic functions of (input bytes, flags): JSON is
emitted with sorted keys and no timestamps, and every randomized search
derives from the --seed flag (default fixed).

Exit codes: 0 all requested checks hold; 1 operational error (bad input,
unsupported field, rejected algebra); 2 a verification check found an
exact counterexample to one of the monitored statements.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import FinDimAlgebra
from .amplify import PRESETS, SpreadSpec
from .errors import AlgebraError, BadParams, InvalidAlgebra
from .families import (
    field_product_algebra,
    group_algebra,
    matrix_algebra,
    nakayama_algebra,
    nsy_algebra,
)
from .fields import Field
from .pipeline import (
    analyze,
    comultiplication_pipeline,
    prepare,
    run_spec,
    validate_algebra,
)
from .structure import DEFAULT_SEED
from .verify import run_verification


def _dump(obj, path: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_algebra(path: str) -> FinDimAlgebra:
    with open(path) as fh:
        data = json.load(fh)
    return FinDimAlgebra.from_json(data, validate=True)


def _field_from_args(args) -> Field:
    return Field(args.prime) if args.prime is not None else Field()


def _parse_ints(text: str):
    return [int(v) for v in text.split(",") if v.strip() != ""]


def cmd_generate(args) -> int:
    field = _field_from_args(args)
    family = args.family
    if family == "nsy":
        if args.n is None or args.l is None or args.m is None:
            raise BadParams("--family nsy needs --n, --l and --m")
        nsy = nsy_algebra(args.n, args.l, _parse_ints(args.m), field)
        alg = nsy.algebra
        prov = {"family": "nsy", "n": args.n, "l": args.l, "m": list(nsy.m)}
    elif family == "nakayama":
        if args.n is None or args.l is None:
            raise BadParams("--family nakayama needs --n and --l")
        alg = nakayama_algebra(args.n, args.l, field)
        prov = {"family": "nakayama", "n": args.n, "l": args.l}
    elif family == "matrix":
        if args.m is None:
            raise BadParams("--family matrix needs --m SIZE")
        (size,) = _parse_ints(args.m)
        alg = matrix_algebra(size, field)
        prov = {"family": "matrix", "size": size}
    elif family == "product":
        if args.m is None:
            raise BadParams("--family product needs --m COPIES")
        (copies,) = _parse_ints(args.m)
        alg = field_product_algebra(copies, field)
        prov = {"family": "product", "copies": copies}
    elif family == "group":
        if args.factors is None:
            raise BadParams("--family group needs --factors")
        alg = group_algebra(_parse_ints(args.factors), field)
        prov = {"family": "group", "factors": _parse_ints(args.factors)}
    else:
        raise BadParams(f"unknown family {family!r}")
    prov["field"] = field.to_json()
    data = alg.to_json()
    data["provenance"] = prov
    _dump(data, args.output)
    return 0


def cmd_analyze(args) -> int:
    alg = _load_algebra(args.input)
    result = analyze(alg, args.seed)
    _dump(result.to_json(), args.report or args.output)
    return 0


def _resolve_spec(args):
    if args.spec:
        with open(args.spec) as fh:
            return json.load(fh)
    return args.preset


def cmd_comul(args) -> int:
    alg = _load_algebra(args.input)
    spec = _resolve_spec(args)
    if isinstance(spec, dict):
        # subset-data JSON needs the class count, so analyze first
        ctx = prepare(alg, args.seed)
        run = run_spec(ctx, SpreadSpec.from_json(spec, ctx.analysis.dec.n))
    else:
        run = comultiplication_pipeline(alg, spec, args.seed)
    _dump(run.to_json(), args.report or args.output)
    return 0


def cmd_verify(args) -> int:
    if args.input:
        alg = _load_algebra(args.input)
        validate_algebra(alg)
        run = comultiplication_pipeline(alg, args.preset, args.seed)
        _dump(run.report.to_json(), args.report or args.output)
        r = run.report
        ok = r.invariant and r.coassociative
        print("PASS" if ok else "FAIL", "single-input verification")
        return 0 if ok else 2
    results = run_verification(args.profile, args.seed)
    for r in results:
        print(r.line())
        for f in r.failures[:5]:
            print("    witness:", f)
    if args.report:
        _dump(
            {
                "profile": args.profile,
                "seed": args.seed,
                "checks": [
                    {
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                        "failures": r.failures,
                    }
                    for r in results
                ],
            },
            args.report,
        )
    return 0 if all(r.passed for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sialg",
        description="Exact computations with self-injective algebras: "
        "canonical decompositions, Frobenius pairs, spread comultiplications.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a generated algebra as JSON")
    gen.add_argument("--family", required=True,
                     choices=["nsy", "nakayama", "matrix", "product", "group"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--l", type=int)
    gen.add_argument("--m", help="comma-separated multiplicities (or a size)")
    gen.add_argument("--factors", help="comma-separated cyclic group factor sizes")
    gen.add_argument("--prime", type=int, help="work over GF(p) instead of the rationals")
    gen.add_argument("--rational", action="store_true", help="work over the rationals (default)")
    gen.add_argument("--output", "-o")

    ana = sub.add_parser("analyze", help="canonical decomposition and Nakayama data")
    ana.add_argument("--input", required=True)
    ana.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ana.add_argument("--output", "-o")
    ana.add_argument("--report")

    com = sub.add_parser("comul", help="build and verify a spread comultiplication")
    com.add_argument("--input", required=True)
    com.add_argument("--preset", default="singleton", choices=list(PRESETS))
    com.add_argument("--spec", help="path to subset-data JSON (overrides --preset)")
    com.add_argument("--seed", type=int, default=DEFAULT_SEED)
    com.add_argument("--output", "-o")
    com.add_argument("--report")

    ver = sub.add_parser("verify", help="run the verification battery")
    ver.add_argument("--profile", default="small", choices=["small", "standard"])
    ver.add_argument("--input", help="verify one algebra file instead of the corpus")
    ver.add_argument("--preset", default="singleton", choices=list(PRESETS))
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--output", "-o")
    ver.add_argument("--report")
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "generate": cmd_generate,
        "analyze": cmd_analyze,
        "comul": cmd_comul,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except InvalidAlgebra as exc:
        print(f"error: invalid algebra: {exc} (witness: {exc.witness})", file=sys.stderr)
        return 1
    except (AlgebraError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
