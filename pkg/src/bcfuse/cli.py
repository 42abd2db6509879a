"""Command-line driver: batch integration, alignment-only, pre-check, serve.

Batch mode decides every conflict with its recommendation (catalog defaults
when the history is empty), so identical inputs, flags and history file
produce byte-identical outputs. Explicit decisions can be supplied as a JSON
file to pin individual conflicts.

Exit codes: 0 success, 1 validation or integration error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .errors import BcfuseError
from .ingest import parse_bcm, read_text, serialize_bcm
from .isocheck import SubComponent, brute_force_isomorphic, non_iso_check, whole
from .pipeline import build_workspace_from_paths, parse_decisions, run_batch


def _add_input_flags(p: argparse.ArgumentParser, components: bool = True) -> None:
    if components:
        p.add_argument(
            "--component",
            action="append",
            required=True,
            metavar="FILE",
            help="component model file (.bcm); repeat for each input",
        )
    p.add_argument("--domain", metavar="FILE", help="domain ontology (.onto)")
    p.add_argument("--lexicon", metavar="FILE", help="synonym lexicon (.syn)")
    p.add_argument("--history", metavar="FILE", help="action history file (read, and "
                   "appended to by the service)")
    p.add_argument("--threshold", type=int, default=3, metavar="N",
                   help="history count needed before a past action is recommended (default 3)")


def _write_or_stdout(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_integrate(args: argparse.Namespace) -> int:
    ws = build_workspace_from_paths(
        args.component, args.domain, args.lexicon, args.history, args.threshold
    )
    decisions = parse_decisions(read_text(args.decisions)) if args.decisions else None
    result = run_batch(ws, decisions)
    _write_or_stdout(serialize_bcm(result.model), args.out)
    if args.report:
        Path(args.report).write_text(result.report.to_tsv(), encoding="utf-8")
    if args.alignment_out:
        Path(args.alignment_out).write_text(ws.alignment_export(), encoding="utf-8")
    return 0


def _cmd_align(args: argparse.Namespace) -> int:
    ws = build_workspace_from_paths(
        args.component, args.domain, args.lexicon, args.history, args.threshold
    )
    _write_or_stdout(ws.alignment_export(), args.out)
    return 0


def _split_members(raw: str | None) -> frozenset[str] | None:
    if raw is None:
        return None
    members = frozenset(part.strip() for part in raw.split(",") if part.strip())
    if not members:
        raise ValueError("member list must name at least one concept")
    return members


def _cmd_precheck(args: argparse.Namespace) -> int:
    if len(args.component) != 2:
        print("error: precheck compares exactly two components", file=sys.stderr)
        return 2
    models = [parse_bcm(read_text(p), source=str(p)) for p in args.component]
    members_a = _split_members(args.members_a)
    members_b = _split_members(args.members_b)
    s1 = SubComponent(models[0], members_a) if members_a else whole(models[0])
    s2 = SubComponent(models[1], members_b) if members_b else whole(models[1])
    verdict = non_iso_check(s1, s2)
    sys.stdout.write(f"verdict\t{verdict.describe()}\n")
    if args.oracle:
        answer = brute_force_isomorphic(s1, s2)
        sys.stdout.write(f"oracle\t{'isomorphic' if answer else 'nonIsomorphic'}\n")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    default_domain = (str(args.domain), read_text(args.domain)) if args.domain else None
    default_lexicon = (str(args.lexicon), read_text(args.lexicon)) if args.lexicon else None
    app = create_app(
        history_path=args.history,
        threshold=args.threshold,
        static_dir=args.static,
        default_domain=default_domain,
        default_lexicon=default_lexicon,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcfuse",
        description="Merge business-component models through ontology alignment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("integrate", help="batch-integrate components into one model")
    _add_input_flags(p_int)
    p_int.add_argument("--decisions", metavar="FILE",
                       help="JSON decisions file pinning actions per conflict index")
    p_int.add_argument("--out", metavar="FILE", help="merged model output (default stdout)")
    p_int.add_argument("--report", metavar="FILE", help="integration report output")
    p_int.add_argument("--alignment-out", metavar="FILE", help="alignment export output")
    p_int.set_defaults(func=_cmd_integrate)

    p_align = sub.add_parser("align", help="stop after alignment, write the export")
    _add_input_flags(p_align)
    p_align.add_argument("--out", metavar="FILE", help="alignment export output (default stdout)")
    p_align.set_defaults(func=_cmd_align)

    p_pre = sub.add_parser("precheck", help="non-isomorphism pre-filter on two (sub-)components")
    p_pre.add_argument("--component", action="append", required=True, metavar="FILE",
                       help="component file; give exactly twice")
    p_pre.add_argument("--members-a", metavar="C1,C2,...",
                       help="sub-component of the first input (default: all concepts)")
    p_pre.add_argument("--members-b", metavar="C1,C2,...",
                       help="sub-component of the second input (default: all concepts)")
    p_pre.add_argument("--oracle", action="store_true",
                       help="also run the brute-force isomorphism search")
    p_pre.set_defaults(func=_cmd_precheck)

    p_srv = sub.add_parser("serve", help="run the local review service")
    _add_input_flags(p_srv, components=False)
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=7341)
    p_srv.add_argument("--static", metavar="DIR",
                       help="directory of built UI assets to mount at /ui")
    p_srv.set_defaults(func=_cmd_serve)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BcfuseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
