"""Command-line client for the verification service.

The client drives the HTTP service in-process (no socket, no running server):
it builds the FastAPI app, sends the request through a test transport, prints
the rendered report, and exits with the code the service computed.

Exit codes: 0 on pass/positive verdict, 1 on a failed check or negative
verdict, 2 on input errors (bad files, unknown names, bad flags).

The ``ITCAT_SEED`` environment variable overrides the default seed (0) for
seeded subcommands; an explicit ``--seed`` flag wins over both.
"""

from __future__ import annotations

import argparse
import os
import sys

from .service import create_app

ENV_SEED = "ITCAT_SEED"


def _default_seed() -> int:
    raw = os.environ.get(ENV_SEED, "0")
    try:
        return int(raw)
    except ValueError:
        print(f"error: {ENV_SEED} must be an integer, got {raw!r}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    """The argument parser for all subcommands."""
    parser = argparse.ArgumentParser(
        prog="itcat",
        description=(
            "Check categorical laws, compare the informativeness of channels, "
            "condition joints, verify decision-making equivalences, and "
            "enumerate informativeness classes."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    laws = sub.add_parser("laws", help="run the law suite for one category")
    laws.add_argument("--category", required=True, help="category tag (e.g. probability, powerset)")
    laws.add_argument("--max-card", type=int, default=3, help="largest space cardinality")
    laws.add_argument("--samples", type=int, default=64, help="sampled rows per space")
    laws.add_argument("--seed", type=int, default=None, help="sampling seed (default 0 or ITCAT_SEED)")
    laws.add_argument("--machine", action="store_true", help="tab-separated output")

    comp = sub.add_parser("compare", help="compare informativeness of two arrows from a file")
    comp.add_argument("file", help="declarations file")
    comp.add_argument("a", help="first arrow name")
    comp.add_argument("b", help="second arrow name")
    comp.add_argument("--accuracy", default="equality", help="equality or pointwise")
    comp.add_argument("--machine", action="store_true", help="tab-separated output")

    cond = sub.add_parser("conditional", help="conditional channel of a probability joint")
    cond.add_argument("file", help="declarations file")
    cond.add_argument("joint", help="name of the joint distribution")
    cond.add_argument("--wrt", default="first", choices=("first", "second"))
    cond.add_argument("--machine", action="store_true", help="tab-separated output")

    bayes = sub.add_parser("bayes", help="prior/posterior optimal-strategy comparison")
    bayes.add_argument("file", help="declarations file")
    bayes.add_argument("--prior", required=True, help="prior distribution name")
    bayes.add_argument("--channel", required=True, help="channel arrow name")
    bayes.add_argument("--utility", required=True, help="utility table name")
    bayes.add_argument("--machine", action="store_true", help="tab-separated output")

    classes = sub.add_parser("classes", help="informativeness classes of the set category")
    classes.add_argument("--category", default="set", help="category tag (set)")
    classes.add_argument("--card", type=int, default=3, help="source cardinality")
    classes.add_argument("--machine", action="store_true", help="tab-separated output")

    serve = sub.add_parser("serve", help="run the HTTP service (requires uvicorn)")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        raise SystemExit(2)


def _post(endpoint: str, payload: dict) -> int:
    import warnings

    with warnings.catch_warnings():
        # The bundled starlette test client warns about its httpx dependency on
        # import; that is environment noise, not something the caller can act on.
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    with TestClient(create_app()) as client:
        response = client.post(endpoint, json=payload)
    if response.status_code == 400:
        detail = response.json().get("detail", {})
        print(f"error: {detail.get('error', 'bad request')}", file=sys.stderr)
        return int(detail.get("exit_code", 2))
    if response.status_code != 200:
        print(f"error: service returned status {response.status_code}", file=sys.stderr)
        return 2
    body = response.json()
    sys.stdout.write(body["report"])
    return int(body["exit_code"])


def main(argv=None) -> int:
    """Run one subcommand and return its exit code (0 ok, 1 negative, 2 error)."""
    args = build_parser().parse_args(argv)

    if args.command == "laws":
        seed = args.seed if args.seed is not None else _default_seed()
        return _post(
            "/laws",
            {
                "category": args.category,
                "max_card": args.max_card,
                "samples": args.samples,
                "seed": seed,
                "machine": args.machine,
            },
        )
    if args.command == "compare":
        return _post(
            "/compare",
            {
                "file_text": _read_file(args.file),
                "a": args.a,
                "b": args.b,
                "accuracy": args.accuracy,
                "machine": args.machine,
            },
        )
    if args.command == "conditional":
        return _post(
            "/conditional",
            {
                "file_text": _read_file(args.file),
                "joint": args.joint,
                "wrt": args.wrt,
                "machine": args.machine,
            },
        )
    if args.command == "bayes":
        return _post(
            "/bayes",
            {
                "file_text": _read_file(args.file),
                "prior": args.prior,
                "channel": args.channel,
                "utility": args.utility,
                "machine": args.machine,
            },
        )
    if args.command == "classes":
        return _post(
            "/classes",
            {"category": args.category, "card": args.card, "machine": args.machine},
        )
    if args.command == "serve":
        try:
            import uvicorn
        except ImportError:
            print(
                "error: the 'serve' subcommand needs uvicorn "
                "(install the 'server' extra)",
                file=sys.stderr,
            )
            return 2
        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
