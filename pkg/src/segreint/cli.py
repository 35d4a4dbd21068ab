"""Command-line front end.

Every command builds one JSON envelope (schema ``v1``). ``--json`` prints it
verbatim; otherwise a short text view of the same envelope is printed.
Exit codes: 0 ok, 2 parse, 3 genericity failure, 4 not stabilized,
5 precondition.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import ParseError, SegreintError
from .groebner import Ideal
from .idealfile import parse_ideal_file
from .integral import IntegralConfig, decide_integral
from .segre import segre_degrees, snapper_fit, zeta
from .vogel import projective_degrees, vogel_degrees

SCHEMA = "v1"


def _load(path: str, char: int | None):
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8 ({exc.reason})", source=path) from None
    try:
        ideal, meta = parse_ideal_file(text, char)
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, exc.column, source=path) from None
    return ideal, meta, {"path": path, "sha256": hashlib.sha256(raw).hexdigest()}


def _chain(chain) -> list[list[str]] | None:
    if chain is None:
        return None
    return [[str(g) for g in B.gb] for B in chain]


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _zeta_payload(z) -> dict:
    return {
        "numerator": list(z.numerator),
        "numerator_str": z.numerator_str(),
        "denominator_degrees": list(z.denominator_degrees),
        "stabilized": z.stabilized,
        "N": z.truncation_order,
        "segre_in_PN": list(z.coefficients),
    }


def _cmd_degrees(I: Ideal, args) -> tuple[dict, dict]:
    pd, chain = projective_degrees(I, args.trials, args.seed, trace=True)
    payload = {"g": list(pd.g), "section_degree": pd.section_degree, "agreed": pd.agreed, "runs": [list(r) for r in pd.runs]}
    if args.trace:
        payload["chain"] = _chain(chain)
    return payload, {"N": I.ring.nvars - 1}


def _cmd_vogel(I: Ideal, args):
    v = vogel_degrees(I, args.trials, args.seed, trace=args.trace)
    payload = {"nu": v.nu.to_list(), "g": list(v.g.g), "section_degree": v.section_degree, "agreed": v.g.agreed}
    if args.trace:
        payload["chain"] = _chain(v.chain)
    return payload, {"N": I.ring.nvars - 1}


def _cmd_segre(I: Ideal, args):
    r = segre_degrees(I, args.trials, args.seed, trace=args.trace)
    payload = {
        "s": r.s.to_list(),
        "nu": list(r.nu),
        "g": list(r.g),
        "section_degree": r.section_degree,
        "source_degrees": list(r.source_degrees),
        "agreed": r.agreed,
    }
    if args.trace:
        payload["chain"] = _chain(r.chain)
    return payload, {"N": I.ring.nvars - 1}


def _cmd_zeta(I: Ideal, args):
    z = zeta(I, args.trials, args.seed)
    return _zeta_payload(z), {"N": z.truncation_order}


def _cmd_snapper(I: Ideal, args):
    fit = snapper_fit(I, seed=args.seed)
    g = projective_degrees(I, args.trials, args.seed).g
    payload = {
        "grid": [[m, n, v] for (m, n), v in sorted(fit.grid.items())],
        "top": [_frac(c) for c in fit.top],
        "implied_degrees": [_frac(c) for c in fit.implied_degrees],
        "section_degree": fit.section_degree,
        "g": list(g),
        "matches": fit.matches(g),
    }
    return payload, {"N": I.ring.nvars - 1}


def _cmd_integral(I: Ideal, J: Ideal, args):
    verdict = decide_integral(I, J, IntegralConfig(args.trials, args.seed, args.n_max))
    payload = {
        "status": verdict.status.value,
        "certificate": verdict.certificate,
        "by_zeta": verdict.by_zeta,
        "witness": verdict.witness,
        "reason": verdict.reason,
    }
    if verdict.zetas is not None:
        payload["zeta_I"] = _zeta_payload(verdict.zetas[0])
        payload["zeta_J"] = _zeta_payload(verdict.zetas[1])
    N = verdict.zetas[0].truncation_order if verdict.zetas else None
    return payload, {"N": N}


_SINGLE = {
    "degrees": (_cmd_degrees, "projective degrees g of the residual chain"),
    "vogel": (_cmd_vogel, "Vogel degrees nu"),
    "segre": (_cmd_segre, "degrees of the Segre class pushforward"),
    "zeta": (_cmd_zeta, "Segre zeta function"),
    "snapper": (_cmd_snapper, "bigraded Snapper polynomial fit"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--char", type=int, default=None, help="prime characteristic (overrides the file header)")
    common.add_argument("--n-max", type=int, default=6, dest="n_max")
    common.add_argument("--json", action="store_true")
    common.add_argument("--trace", action="store_true", help="include residual-chain ideals")
    parser = argparse.ArgumentParser(prog="segreint", description="Segre classes and integral dependence.")
    parser.add_argument("--version", action="version", version=f"segreint {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _SINGLE.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("ideal")
    p = sub.add_parser("integral", parents=[common], help="decide whether J is integral over I")
    p.add_argument("ideal")
    p.add_argument("over")
    return parser


def run(args) -> dict:
    """Execute one parsed command and return its envelope."""
    paths = [args.ideal] + ([args.over] if args.command == "integral" else [])
    loaded = [_load(p, args.char) for p in paths]
    ideals = [x[0] for x in loaded]
    if args.command == "integral":
        payload, extra = _cmd_integral(ideals[0], ideals[1], args)
    else:
        payload, extra = _SINGLE[args.command][0](ideals[0], args)
    params = {
        "p": ideals[0].ring.modulus,
        "seed": args.seed,
        "trials": args.trials,
        "n_max": args.n_max,
        **extra,
    }
    return {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": [x[2] for x in loaded],
        "parameters": params,
        "payload": payload,
        "engine": {"name": "segreint", "version": __version__},
    }


def _error_envelope(command: str, exc: SegreintError) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
    if isinstance(exc, ParseError):
        err["line"], err["column"] = exc.line, exc.column
    candidates = getattr(exc, "candidates", None)
    if candidates is not None:
        err["candidates"] = [list(c) for c in candidates]
    return {"schema": SCHEMA, "command": command, "error": err, "engine": {"name": "segreint", "version": __version__}}


def _render(env: dict) -> str:
    lines = [f"{env['command']} ({', '.join(i['path'] for i in env['inputs'])})"]
    params = env["parameters"]
    lines.append("  " + "  ".join(f"{k}={v}" for k, v in params.items() if v is not None))
    for key, value in env["payload"].items():
        if key == "chain":
            lines.append("  chain:")
            lines += [f"    B{i} = ({', '.join(gens) or '0'})" for i, gens in enumerate(value)]
        elif isinstance(value, dict):
            lines.append(f"  {key}: " + ", ".join(f"{k}={v}" for k, v in value.items()))
        else:
            lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env = run(args)
    except SegreintError as exc:
        if args.json:
            print(json.dumps(_error_envelope(args.command, exc), indent=2, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        err = ParseError(f"cannot read input: {exc.strerror} ({exc.filename})")
        if args.json:
            print(json.dumps(_error_envelope(args.command, err), indent=2, sort_keys=True))
        else:
            print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    print(json.dumps(env, indent=2, sort_keys=True) if args.json else _render(env))
    return 0


if __name__ == "__main__":
    sys.exit(main())
