"""Command-line client for the ti-trees service.

Commands run against an in-process service instance by default, so no server
is needed; pass --server URL to target a running one (see `ti-trees serve`).

Exit codes: 0 = TI / success, 1 = not TI (or certification incomplete),
2 = usage or input error, 3 = cross-check disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

import httpx

from .config import RunConfig

EXIT_OK = 0
EXIT_NOT_TI = 1
EXIT_ERROR = 2
EXIT_DISAGREEMENT = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ti-trees",
        description="Exact TI decisions for starlike (S:A1,...,Ak) and double "
        "starlike (DS:C;A1,...;B1,...) trees.",
    )
    parser.add_argument("--server", metavar="URL", help="base URL of a running service (default: in-process)")
    parser.add_argument("--format", choices=("text", "json"), dest="output_format", help="output format")
    parser.add_argument("--jobs", type=int, help="worker threads for enumeration and certification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a tree is transmission irregular")
    p.add_argument("spec", help="tree spec, e.g. S:7,6,3,1 or DS:1;6,5;2,1")
    p.add_argument("--oracle", action="store_true", help="cross-check against the BFS oracle")
    p.add_argument("--explain", action="store_true", help="list every divisor case and its scan result")

    p = sub.add_parser("transmissions", help="dump the BFS transmission table as JSON")
    p.add_argument("spec")

    p = sub.add_parser("solve-dio", help="solve one box Diophantine instance both ways")
    for name in ("c1", "c2", "c3", "c4", "c5"):
        p.add_argument(name, type=int)

    p = sub.add_parser("enumerate", help="stream every spec of a class up to an order bound")
    p.add_argument("--type", required=True, choices=("starlike", "double"))
    p.add_argument("--max-order", required=True, type=int)
    p.add_argument("--branches", required=True, metavar="K[,M]", help="branch counts, e.g. 3 or 2,3")
    p.add_argument("--max-c", type=int, help="largest hub distance to include (double only)")
    p.add_argument("--verify", action="store_true", help="cross-check every verdict against the oracle")
    p.add_argument("--out", type=Path, help="write NDJSON here instead of stdout")

    p = sub.add_parser("certify", help="certify one-parameter families from a family file")
    p.add_argument("family_file", type=Path)
    p.add_argument("--spot-check", type=int, metavar="T", help="also check members t = 0..T individually")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _client(args: argparse.Namespace, config: RunConfig) -> httpx.Client:
    if args.server:
        return httpx.Client(base_url=args.server, timeout=None)
    # In-process client: drive the ASGI app directly, no network involved.
    import warnings

    with warnings.catch_warnings():
        # starlette warns about the installed httpx generation; harmless here
        warnings.simplefilter("ignore", Warning)
        from starlette.testclient import TestClient

    from .api import build_app

    return TestClient(build_app(config))


def _fail(response: httpx.Response) -> int:
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    print(f"error: {detail}", file=sys.stderr)
    return EXIT_ERROR


def _dump(payload: Any) -> None:
    print(json.dumps(payload, indent=2))


def _witness_line(witness: dict[str, Any] | None) -> str:
    if not witness:
        return ""
    tr = witness.get("transmission")
    tail = f" share transmission {tr}" if tr is not None else " have equal transmissions"
    return f"{witness['label1']['name']} and {witness['label2']['name']}{tail}"


def _cmd_check(args: argparse.Namespace, client: httpx.Client, config: RunConfig) -> int:
    response = client.post(
        "/check", json={"spec": args.spec, "oracle": args.oracle, "explain": args.explain}
    )
    if response.status_code >= 400:
        return _fail(response)
    data = response.json()
    if config.output_format == "json":
        _dump(data)
    else:
        status = "transmission irregular" if data["is_ti"] else "NOT transmission irregular"
        print(f"{data['spec']} (n={data['n']}): {status}")
        if not data["is_ti"]:
            print(f"  reason: {data['reason']['kind']}")
            print(f"  witness: {_witness_line(data.get('witness'))}")
        if data.get("oracle") is not None:
            oracle = data["oracle"]
            agreement = "agrees" if oracle["agrees"] else "DISAGREES"
            print(f"  oracle: {agreement} (is_ti={oracle['is_ti']})")
        for case in data.get("cases") or []:
            line = (
                f"  {case['case']}: value={case['value']}, "
                f"p+v/p in {case['sum_bounds']}, p-v/p in {case['diff_bounds']}"
            )
            if case["solvable"]:
                w = case["witness"]
                line += f" -> divisor p={w['p']}, (x,y)=({w['x']},{w['y']})"
            else:
                line += " -> no divisor"
            print(line)
    if data.get("oracle") is not None and not data["oracle"]["agrees"]:
        return EXIT_DISAGREEMENT
    return EXIT_OK if data["is_ti"] else EXIT_NOT_TI


def _cmd_transmissions(args: argparse.Namespace, client: httpx.Client, config: RunConfig) -> int:
    response = client.post("/transmissions", json={"spec": args.spec})
    if response.status_code >= 400:
        return _fail(response)
    data = response.json()
    if config.output_format == "json":
        _dump(data)
    else:
        print(f"{data['spec']} (n={data['n']})")
        for entry in data["entries"]:
            print(f"  {entry['label']['name']}: {entry['transmission']}")
    return EXIT_OK


def _cmd_solve_dio(args: argparse.Namespace, client: httpx.Client, config: RunConfig) -> int:
    payload = {name: getattr(args, name) for name in ("c1", "c2", "c3", "c4", "c5")}
    response = client.post("/solve-dio", json=payload)
    if response.status_code >= 400:
        return _fail(response)
    data = response.json()
    # always JSON: this command exists for machine cross-checking
    _dump(data)
    if not data["agree"]:
        print("internal error: divisor method and brute force disagree", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _cmd_enumerate(args: argparse.Namespace, client: httpx.Client, config: RunConfig) -> int:
    try:
        parts = [int(x) for x in args.branches.split(",")]
    except ValueError:
        print(f"error: malformed --branches {args.branches!r}", file=sys.stderr)
        return EXIT_ERROR
    payload: dict[str, Any] = {
        "type": args.type,
        "max_order": args.max_order,
        "k": parts[0],
        "m": parts[1] if len(parts) > 1 else None,
        "max_c": args.max_c,
        "verify": args.verify,
    }
    sink = args.out.open("w") if args.out else sys.stdout
    mismatches = 0
    total = 0
    try:
        with client.stream("POST", "/enumerate", json=payload) as response:
            if response.status_code >= 400:
                response.read()
                return _fail(response)
            for line in response.iter_lines():
                if not line:
                    continue
                total += 1
                if args.verify and not json.loads(line).get("oracle_agrees", True):
                    mismatches += 1
                print(line, file=sink)
    finally:
        if args.out:
            sink.close()
    if args.verify:
        print(f"verified {total} specs, {mismatches} oracle mismatches", file=sys.stderr)
    return EXIT_DISAGREEMENT if mismatches else EXIT_OK


def _cmd_certify(args: argparse.Namespace, client: httpx.Client, config: RunConfig) -> int:
    try:
        lines = [
            line.strip()
            for line in args.family_file.read_text().splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    response = client.post("/certify", json={"families": lines, "spot_check": args.spot_check})
    if response.status_code >= 400:
        return _fail(response)
    data = response.json()
    if config.output_format == "json":
        _dump(data)
    else:
        for result in data["results"]:
            if result["status"] == "certified":
                n_cases = len(result["certificate"]["cases"])
                line = f"{result['family']}: certified ({n_cases} cases)"
            else:
                line = f"{result['family']}: inapplicable"
                if result.get("failing_case"):
                    line += f" [{result['failing_case']}]"
                line += f" -- {result.get('reason', '')}"
            if result.get("spot_failures"):
                line += f"; SPOT-CHECK FAILURES: {result['spot_failures']}"
            elif result.get("spot_checked"):
                line += f"; spot-checked {result['spot_checked']} members"
            print(line)
    return EXIT_OK if data["all_ok"] else EXIT_NOT_TI


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = RunConfig.from_env(output_format=args.output_format, jobs=args.jobs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.command == "serve":
        import uvicorn

        from .api import build_app

        uvicorn.run(build_app(config), host=args.host, port=args.port)
        return EXIT_OK

    handlers = {
        "check": _cmd_check,
        "transmissions": _cmd_transmissions,
        "solve-dio": _cmd_solve_dio,
        "enumerate": _cmd_enumerate,
        "certify": _cmd_certify,
    }
    with _client(args, config) as client:
        try:
            return handlers[args.command](args, client, config)
        except httpx.HTTPError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
