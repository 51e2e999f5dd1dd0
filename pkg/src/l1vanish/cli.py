"""Command-line interface: ``l1vanish <command> ...``.

Exit codes: 0 decided, 1 parse/validation error, 2 divergent input (nonzero
period sum), 3 invalid generator parameters, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .decision import (
    GeneratorError,
    decide,
    example_paper,
    gen_character,
    gen_even_vanishing,
    gen_odd_vanishing,
)
from .numeric import DEFAULT_BITS, ROUTES, evaluate
from .odd import InvariantError
from .periodic import DivergentSeriesError, DomainError, dft, parity_decompose

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DIVERGENT = 2
EXIT_GENERATOR = 3
EXIT_INTERNAL = 4

# worst status wins in batch mode
_SEVERITY = {EXIT_OK: 0, EXIT_DIVERGENT: 1, EXIT_INPUT: 2, EXIT_GENERATOR: 2, EXIT_INTERNAL: 3}

BITS_ENV = "L1VANISH_BITS"


def default_bits() -> int:
    raw = os.environ.get(BITS_ENV)
    if not raw:
        return DEFAULT_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise SystemExit(f"{BITS_ENV} must be an integer, got {raw!r}")
    return bits


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(path: str):
    return io.load_function(_read(path))


def _emit(doc) -> None:
    sys.stdout.write(io.dumps(doc))


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def check_text(text: str, bits: int, routes: tuple[str, ...], periods: int) -> tuple[int, dict]:
    """Run the decision on one document; returns (exit code, output document)."""
    try:
        f = io.load_function(text)
    except (io.DocumentError, ValueError) as exc:
        return EXIT_INPUT, {"v": io.SCHEMA_VERSION, "error": str(exc)}
    try:
        verdict = decide(f, bits, routes, periods)
    except DivergentSeriesError as exc:
        return EXIT_DIVERGENT, {"v": io.SCHEMA_VERSION, "error": f"series diverges: {exc}"}
    except InvariantError as exc:
        return EXIT_INTERNAL, {"v": io.SCHEMA_VERSION, "error": f"internal invariant failure: {exc}"}
    return EXIT_OK, io.encode_verdict(verdict)


def _check_file(args: tuple[str, int, tuple[str, ...], int]) -> tuple[str, int, dict]:
    path, bits, routes, periods = args
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return path, EXIT_INPUT, {"v": io.SCHEMA_VERSION, "error": str(exc)}
    code, doc = check_text(text, bits, routes, periods)
    return path, code, doc


def _write_atomic(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run_batch(directory: Path, bits: int, routes, periods: int, jobs: int, out: Path | None) -> int:
    files = sorted(str(p) for p in directory.glob("*.json"))
    tasks = [(p, bits, routes, periods) for p in files]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_file, tasks))
    else:
        results = [_check_file(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    summary = {"files": len(results), "vanishing": 0, "nonvanishing": 0, "divergent": 0, "errors": 0}
    worst = EXIT_OK
    entries = []
    for path, code, doc in results:
        if code == EXIT_OK:
            summary["vanishing" if doc["vanishes"] else "nonvanishing"] += 1
        elif code == EXIT_DIVERGENT:
            summary["divergent"] += 1
        else:
            summary["errors"] += 1
        if _SEVERITY[code] > _SEVERITY[worst]:
            worst = code
        name = Path(path).name
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
            _write_atomic(out / f"{Path(path).stem}.verdict.json", io.dumps(doc))
        entries.append({"file": name, "exit": code, "result": doc})
    _emit({"v": io.SCHEMA_VERSION, "results": entries, "summary": summary})
    return worst


def cmd_check(args) -> int:
    routes = () if args.no_numeric else tuple(args.route or ["fourier"])
    target = Path(args.input)
    if args.input != "-" and target.is_dir():
        return run_batch(target, args.bits, routes, args.periods, args.jobs, args.out)
    try:
        text = _read(args.input)
    except (OSError, UnicodeDecodeError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    code, doc = check_text(text, args.bits, routes, args.periods)
    if code == EXIT_OK:
        _emit(doc)
    else:
        print(f"error: {doc['error']}", file=sys.stderr)
    return code


_EXPECTED = {"paper-example": True, "even-vanishing": True, "odd-vanishing": True, "character": False}


def cmd_generate(args) -> int:
    try:
        if args.kind == "paper-example":
            p = args.p if args.p is not None else args.q
            if p is None:
                raise GeneratorError("paper-example needs --p")
            f = example_paper(p)
        else:
            if args.q is None:
                raise GeneratorError(f"{args.kind} needs --q")
            if args.kind == "even-vanishing":
                f = gen_even_vanishing(args.q, args.seed, args.conductor)
            elif args.kind == "odd-vanishing":
                f = gen_odd_vanishing(args.q, args.seed, args.conductor)
            else:
                f = gen_character(args.q)
    except ValueError as exc:
        return _fail(EXIT_GENERATOR, str(exc))
    doc = io.encode_function(f)
    if args.self_check:
        code, verdict = check_text(io.dumps(doc), args.bits, ("fourier",), 2**12)
        if code != EXIT_OK:
            return _fail(code, verdict["error"])
        if verdict["vanishes"] != _EXPECTED[args.kind]:
            return _fail(EXIT_INTERNAL, f"self-check failed: vanishes={verdict['vanishes']}")
    _emit(doc)
    return EXIT_OK


def cmd_blocks(args) -> int:
    if args.q < 2:
        return _fail(EXIT_INPUT, "q must be at least 2")
    _emit(io.blocks_listing(args.q))
    return EXIT_OK


def cmd_relations(args) -> int:
    if args.q < 2:
        return _fail(EXIT_INPUT, "q must be at least 2")
    _emit(io.relations_listing(args.q))
    return EXIT_OK


def cmd_fourier(args) -> int:
    try:
        f = _load(args.input)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    _emit(io.encode_function(dft(f)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    try:
        f = _load(args.input)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    f_o, f_e = parity_decompose(f)
    _emit({"v": io.SCHEMA_VERSION, "odd": io.encode_function(f_o), "even": io.encode_function(f_e)})
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        f = _load(args.input)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    out = []
    try:
        for route in args.route or ["fourier"]:
            out.append(io.encode_numeric(evaluate(f, route, args.bits, args.periods)))
    except DivergentSeriesError as exc:
        return _fail(EXIT_DIVERGENT, f"series diverges: {exc}")
    except DomainError as exc:
        return _fail(EXIT_INPUT, str(exc))
    _emit({"v": io.SCHEMA_VERSION, "numeric": out})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l1vanish", description="Decide exactly whether L(1, f) = 0 for periodic cyclotomic-valued f."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    bits = default_bits()

    def numeric_flags(p):
        p.add_argument("--bits", type=int, default=bits, help=f"precision in bits (default {bits}, env {BITS_ENV})")
        p.add_argument("--route", action="append", choices=ROUTES, help="numeric route; repeatable")
        p.add_argument("--periods", type=int, default=2**12, help="periods summed by the partial route")

    p = sub.add_parser("check", help="decide L(1,f) = 0 for a function document or a directory of them")
    p.add_argument("input", help="JSON file, '-' for stdin, or a directory for batch mode")
    numeric_flags(p)
    p.add_argument("--no-numeric", action="store_true", help="skip the numeric cross-check")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="batch worker processes")
    p.add_argument("--out", type=Path, help="batch mode: also write one verdict file per input here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="emit a function document")
    p.add_argument("kind", choices=sorted(_EXPECTED))
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--conductor", type=int)
    p.add_argument("--bits", type=int, default=bits)
    p.add_argument("--self-check", action="store_true", help="decide the output and assert the expected verdict")
    p.set_defaults(func=cmd_generate)

    for name, func, text in (
        ("blocks", cmd_blocks, "list the building blocks F_{d,c} and their transforms"),
        ("relations", cmd_relations, "list the R1/R2 relation vectors"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("q", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("fourier", help="emit the finite Fourier transform")
    p.add_argument("input")
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("decompose", help="emit the odd and even parts")
    p.add_argument("input")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("eval", help="evaluate L(1,f) numerically")
    p.add_argument("input")
    numeric_flags(p)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "bits", DEFAULT_BITS) < 64:
        return _fail(EXIT_INPUT, "--bits must be at least 64")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
