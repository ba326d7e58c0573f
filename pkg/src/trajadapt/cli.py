"""Command-line entry points.

Subcommands:
    adapt   one-shot adaptation of a trajectory file per an instruction
    eval    batch-evaluate a corpus and write a report (JSON + CSV, plus
            optional PNG figures)
    serve   run the HTTP service for the review UI
    render  write an SVG overlay of original vs adapted trajectories

Exit codes: 0 success, 1 adaptation/evaluation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .core import load_scene, load_trajectory, save_trajectory
from .dataset import default_corpus_path, load_corpus, run_eval
from .llm import LlmConfig, default_fixtures_dir, make_transport
from .session import APPROVED, FAILED, PROPOSED, SessionConfig, start, submit_verdict

USAGE_ERROR = 2
FAILURE = 1


def _llm_config(args) -> LlmConfig:
    return LlmConfig(
        transport=args.llm,
        endpoint=getattr(args, "endpoint", "") or "",
        model=getattr(args, "model", None) or "gpt-4o",
        temperature=getattr(args, "temperature", 0.1),
        fixtures_dir=getattr(args, "fixtures", None) or str(default_fixtures_dir()),
    )


def _require_file(path: str, what: str) -> Path:
    p = Path(path)
    if not p.is_file():
        print(f"error: {what} file not found: {path}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    return p


def cmd_adapt(args) -> int:
    scene = load_scene(_require_file(args.scene, "scene"))
    traj = load_trajectory(_require_file(args.traj, "trajectory"))
    config = SessionConfig(llm=_llm_config(args), auto_repair_budget=args.auto_repair)
    transport = make_transport(config.llm)
    session = start(
        args.instruction,
        scene,
        traj,
        config,
        transport=transport,
        fixture_id=args.fixture_id,
    )
    while True:
        if session.state == FAILED:
            print(f"adaptation failed: {session.error}", file=sys.stderr)
            return FAILURE
        if session.state == APPROVED:
            break
        assert session.state == PROPOSED
        plan = session.latest_plan() or "(no plan)"
        print("high-level plan:\n" + plan)
        adapted = session.adapted_trajectory()
        print(f"preview: {len(adapted)} waypoints")
        if args.yes or not sys.stdin.isatty():
            submit_verdict(session, approve=True)
            continue
        answer = input("approve? [y = approve / q = abort / anything else = feedback] ").strip()
        if answer.lower() in ("y", "yes"):
            submit_verdict(session, approve=True)
        elif answer.lower() in ("q", "quit"):
            print("aborted by reviewer", file=sys.stderr)
            return FAILURE
        else:
            submit_verdict(session, approve=False, feedback=answer, transport=transport)
    save_trajectory(session.adapted_trajectory(), args.out)
    print(f"approved; adapted trajectory written to {args.out}")
    return 0


def cmd_eval(args) -> int:
    corpus_path = Path(args.corpus) if args.corpus else default_corpus_path()
    if not corpus_path.is_file():
        print(f"error: corpus file not found: {corpus_path}", file=sys.stderr)
        return USAGE_ERROR
    samples = load_corpus(corpus_path)
    report = run_eval(
        samples,
        _llm_config(args),
        parallelism=args.parallelism,
        keep_trajectories=bool(args.figures),
    )

    report_path = Path(args.report)
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")

    csv_path = report_path.with_suffix(".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "category", "passed", "checks_passed", "checks_total", "error"])
        for r in report.results:
            writer.writerow(
                [r.id, r.category, int(r.passed), r.checks_passed, r.checks_total, r.error or ""]
            )

    if args.figures:
        from .render import save_category_chart, save_overlay_png

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        sample_by_id = {s.id: s for s in samples}
        for r in report.results:
            if r.original is None:
                continue
            save_overlay_png(
                r.original,
                r.adapted,
                sample_by_id[r.id].scene,
                fig_dir / f"{r.id}.png",
                title=sample_by_id[r.id].instruction,
            )
        save_category_chart(report.category_rates(), fig_dir / "success_by_category.png")

    rate = 100.0 * report.success_rate
    print(
        f"{len(report.results)} samples, success rate {rate:.1f}%, "
        f"wall clock {report.wall_clock_s:.2f}s -> {report_path}"
    )
    return 0 if report.success_rate == 1.0 else FAILURE


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceSettings, create_app

    settings = ServiceSettings(
        llm=_llm_config(args),
        corpus_path=args.corpus,
        export_dir=args.export_dir,
        static_dir=args.ui,
    )
    app = create_app(settings)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_render(args) -> int:
    from .render import save_svg

    original = load_trajectory(_require_file(args.orig, "original trajectory"))
    adapted = load_trajectory(_require_file(args.adapted, "adapted trajectory"))
    scene = load_scene(_require_file(args.scene, "scene"))
    save_svg(original, adapted, scene, args.out)
    print(f"overlay written to {args.out}")
    return 0


def _add_llm_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--llm", choices=("mock", "live"), default="mock")
    parser.add_argument("--fixtures", help="fixtures directory for the mock transport")
    parser.add_argument("--model", default="gpt-4o")
    parser.add_argument("--temperature", type=float, default=0.1)
    parser.add_argument("--endpoint", default="", help="base URL for the live transport")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trajadapt",
        description="Adapt robot trajectories from natural-language instructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_adapt = sub.add_parser("adapt", help="adapt one trajectory")
    p_adapt.add_argument("--scene", required=True)
    p_adapt.add_argument("--traj", required=True)
    p_adapt.add_argument("--instruction", required=True)
    p_adapt.add_argument("--out", required=True)
    p_adapt.add_argument("--fixture-id", help="mock response key (defaults to session id)")
    p_adapt.add_argument("--auto-repair", type=int, default=1)
    p_adapt.add_argument("--yes", action="store_true", help="auto-approve the first proposal")
    _add_llm_flags(p_adapt)
    p_adapt.set_defaults(func=cmd_adapt)

    p_eval = sub.add_parser("eval", help="batch-evaluate a corpus")
    p_eval.add_argument("--corpus", help="corpus JSONL (defaults to the shipped corpus)")
    p_eval.add_argument("--report", required=True, help="output report JSON path")
    p_eval.add_argument("--figures", help="directory for PNG overlay figures")
    p_eval.add_argument("--parallelism", type=int, default=1)
    _add_llm_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--corpus")
    p_serve.add_argument("--export-dir")
    p_serve.add_argument("--ui", help="directory with the built review UI (served at /)")
    _add_llm_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    p_render = sub.add_parser("render", help="write an SVG overlay")
    p_render.add_argument("--orig", required=True)
    p_render.add_argument("--adapted", required=True)
    p_render.add_argument("--scene", required=True)
    p_render.add_argument("--out", required=True)
    p_render.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
