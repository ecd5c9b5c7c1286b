"""realset command line: a thin client over the service API.

Each subcommand marshals its files and flags into one POST against the
service.  By default the service runs in-process over an ASGI transport,
so no daemon is needed; ``--server URL`` targets a running instance
instead, and ``realset serve`` starts one.

Exit codes: 0 success, 1 domain error (for example NOT_INTERVAL_FINITE
where intervals were demanded), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from typing import Optional

import httpx

from .numeric import EncodingError, parse_rational


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realset",
        description="sets of real numbers as deterministic omega-automata",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="URL of a running realset service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    compile_p = sub.add_parser("compile", help="compile a formula to an automaton")
    compile_p.add_argument("--base", type=int, required=True)
    compile_p.add_argument("formula")
    compile_p.add_argument("-o", dest="output", default=None)

    member_p = sub.add_parser("member", help="test membership of a rational")
    member_p.add_argument("automaton")
    member_p.add_argument("point", help="rational p/q, comma-separated per track")

    classify_p = sub.add_parser("classify", help="topological classification")
    classify_p.add_argument("automaton")

    boundary_p = sub.add_parser("boundary", help="boundary-point automaton")
    boundary_p.add_argument("automaton")
    boundary_p.add_argument("-o", dest="output", default=None)

    intervals_p = sub.add_parser("intervals", help="interval decomposition")
    intervals_p.add_argument("automaton")

    affine_p = sub.add_parser("affine", help="affine image a*x + b")
    affine_p.add_argument("automaton")
    affine_p.add_argument("a")
    affine_p.add_argument("b")
    affine_p.add_argument("-o", dest="output", default=None)

    clip_p = sub.add_parser("clip", help="intersect with [lo, hi]")
    clip_p.add_argument("automaton")
    clip_p.add_argument("lo")
    clip_p.add_argument("hi")
    clip_p.add_argument("-o", dest="output", default=None)

    basepow_p = sub.add_parser("basepow", help="convert between base r and r^l")
    basepow_p.add_argument("automaton")
    basepow_p.add_argument("direction", choices=("up", "down"))
    basepow_p.add_argument("power", type=int)
    basepow_p.add_argument("-o", dest="output", default=None)

    stab_p = sub.add_parser("stability", help="product-stability test")
    stab_p.add_argument("automaton")
    stab_p.add_argument("factor")
    stab_p.add_argument("--domain", required=True, help="lo..hi")

    sums_p = sub.add_parser("sumstability", help="sum-stability test")
    sums_p.add_argument("automaton")
    sums_p.add_argument("offset")
    sums_p.add_argument("--domain", required=True, help="lo..hi")

    star_p = sub.add_parser("stardelay", help="the set {r^k x}")
    star_p.add_argument("automaton")
    star_p.add_argument("-o", dest="output", default=None)

    pipe_p = sub.add_parser("pipeline", help="product-stability pipeline")
    pipe_p.add_argument("automaton_r")
    pipe_p.add_argument("automaton_s")

    dual_p = sub.add_parser("dualset", help="the dual-encoding counterexample set")
    dual_p.add_argument("--base", type=int, required=True)
    dual_p.add_argument("-o", dest="output", default=None)

    cmp_p = sub.add_parser("compare", help="cross-base membership comparison")
    cmp_p.add_argument("automaton_r")
    cmp_p.add_argument("automaton_s")
    cmp_p.add_argument("--samples", type=int, default=1000)
    cmp_p.add_argument("--seed", type=int, required=True)

    osc_p = sub.add_parser("oscillate", help="search a dense oscillating chain")
    osc_p.add_argument("automaton")
    osc_p.add_argument("--depth", type=int, default=6)

    suite_p = sub.add_parser("suite", help="multi-base recognizability suite")
    suite_p.add_argument("base_r", type=int)
    suite_p.add_argument("base_s", type=int)
    suite_p.add_argument("--seed", type=int, required=True)
    suite_p.add_argument("--csv", dest="csv_path", default=None)

    dot_p = sub.add_parser("dot", help="DOT export for visualization")
    dot_p.add_argument("automaton")

    serve_p = sub.add_parser("serve", help="run the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)

    return parser


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"realset: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _check_rational(text: str) -> str:
    for part in text.split(","):
        try:
            parse_rational(part)
        except EncodingError as exc:
            print(f"realset: {exc}", file=sys.stderr)
            raise SystemExit(2)
    return text


def _domain(text: str) -> tuple[str, str]:
    if ".." not in text:
        print("realset: --domain expects lo..hi", file=sys.stderr)
        raise SystemExit(2)
    lo, hi = text.split("..", 1)
    return _check_rational(lo), _check_rational(hi)


def _post(server: Optional[str], path: str, payload: dict) -> dict:
    async def go() -> httpx.Response:
        if server:
            async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
                return await client.post(path, json=payload)
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://realset.local", timeout=600.0
        ) as client:
            return await client.post(path, json=payload)

    response = asyncio.run(go())
    if response.status_code == 200:
        return response.json()
    if response.status_code == 422:
        print(f"realset: invalid request: {response.text}", file=sys.stderr)
        raise SystemExit(2)
    try:
        detail = response.json().get("detail", {})
    except ValueError:
        detail = {}
    code = detail.get("code", "domain") if isinstance(detail, dict) else "domain"
    message = detail.get("message", response.text) if isinstance(detail, dict) else response.text
    print(f"realset: {message}", file=sys.stderr)
    raise SystemExit(2 if code == "syntax" else 1)


def _emit_automaton(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _bool_line(value: bool) -> None:
    sys.stdout.write("true\n" if value else "false\n")


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    server = args.server

    if args.verb == "serve":
        import uvicorn

        from .service.app import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    if args.verb == "compile":
        data = _post(server, "/compile", {"formula": args.formula, "base": args.base})
        _emit_automaton(data["automaton"], args.output)
        return 0

    if args.verb == "member":
        data = _post(
            server,
            "/member",
            {"automaton": _read_file(args.automaton), "point": _check_rational(args.point)},
        )
        _bool_line(data["result"])
        return 0

    if args.verb == "classify":
        data = _post(server, "/classify", {"automaton": _read_file(args.automaton)})
        print(data["verdict"])
        return 0

    if args.verb == "boundary":
        data = _post(server, "/boundary", {"automaton": _read_file(args.automaton)})
        _emit_automaton(data["automaton"], args.output)
        return 0

    if args.verb == "intervals":
        data = _post(server, "/intervals", {"automaton": _read_file(args.automaton)})
        if data["not_interval_finite"]:
            print("NOT_INTERVAL_FINITE")
            return 1
        sys.stdout.write(data["intervals"] or "")
        return 0

    if args.verb == "affine":
        data = _post(
            server,
            "/affine",
            {
                "automaton": _read_file(args.automaton),
                "a": _check_rational(args.a),
                "b": _check_rational(args.b),
            },
        )
        _emit_automaton(data["automaton"], args.output)
        return 0

    if args.verb == "clip":
        data = _post(
            server,
            "/clip",
            {
                "automaton": _read_file(args.automaton),
                "lo": _check_rational(args.lo),
                "hi": _check_rational(args.hi),
            },
        )
        _emit_automaton(data["automaton"], args.output)
        return 0

    if args.verb == "basepow":
        data = _post(
            server,
            "/basepow",
            {
                "automaton": _read_file(args.automaton),
                "direction": args.direction,
                "power": args.power,
            },
        )
        _emit_automaton(data["automaton"], args.output)
        return 0

    if args.verb == "stability":
        lo, hi = _domain(args.domain)
        data = _post(
            server,
            "/stability",
            {
                "automaton": _read_file(args.automaton),
                "factor": _check_rational(args.factor),
                "lo": lo,
                "hi": hi,
            },
        )
        _bool_line(data["result"])
        return 0

    if args.verb == "sumstability":
        lo, hi = _domain(args.domain)
        data = _post(
            server,
            "/sumstability",
            {
                "automaton": _read_file(args.automaton),
                "offset": _check_rational(args.offset),
                "lo": lo,
                "hi": hi,
            },
        )
        _bool_line(data["result"])
        return 0

    if args.verb == "stardelay":
        data = _post(server, "/stardelay", {"automaton": _read_file(args.automaton)})
        _emit_automaton(data["automaton"], args.output)
        return 0

    if args.verb == "pipeline":
        data = _post(
            server,
            "/pipeline",
            {
                "automaton_r": _read_file(args.automaton_r),
                "automaton_s": _read_file(args.automaton_s),
            },
        )
        for key in ("p", "q", "p2", "q2", "verified_r", "verified_s", "anchor"):
            print(f"{key}: {data[key]}")
        print(f"anchor_sequence: {' '.join(data['anchor_sequence'])}")
        return 0

    if args.verb == "dualset":
        data = _post(server, "/dualset", {"base": args.base})
        _emit_automaton(data["automaton"], args.output)
        return 0

    if args.verb == "compare":
        data = _post(
            server,
            "/compare",
            {
                "automaton_r": _read_file(args.automaton_r),
                "automaton_s": _read_file(args.automaton_s),
                "samples": args.samples,
                "seed": args.seed,
            },
        )
        for key in (
            "base_r",
            "base_s",
            "sample_count",
            "agreements",
            "first_disagreement",
            "classify_r",
            "classify_s",
        ):
            print(f"{key}: {data[key]}")
        return 0

    if args.verb == "oscillate":
        data = _post(
            server,
            "/oscillate",
            {"automaton": _read_file(args.automaton), "depth": args.depth},
        )
        if not data["found"]:
            print("NONE_FOUND")
            return 0
        for point in data["points"]:
            print(f"{point['value']} (eps {point['epsilon']})")
        return 0

    if args.verb == "suite":
        data = _post(
            server,
            "/suite",
            {"base_r": args.base_r, "base_s": args.base_s, "seed": args.seed},
        )
        sys.stdout.write(data["report"])
        if args.csv_path:
            with open(args.csv_path, "w", encoding="utf-8") as handle:
                handle.write(data["csv"])
        return 0 if data["ok"] else 1

    if args.verb == "dot":
        data = _post(server, "/dot", {"automaton": _read_file(args.automaton)})
        sys.stdout.write(data["dot"])
        return 0

    raise AssertionError("unreachable verb")


run_cli = main  # surface alias


if __name__ == "__main__":
    sys.exit(main())
