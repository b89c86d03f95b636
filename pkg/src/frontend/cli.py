"""Command-line interface: validate, cohomology, h0, check-functor, lift, certify."""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, TextIO
from src.ainf.checker import check_ainf_functor
from src.dgcat.homotopy import homotopy_category
from src.dgcat.validator import validate_dg_category
from src.frontend.parser import parse_document, parse_problem
from src.frontend.serializer import parse_certificate
from src.frontend.tables import cohomology_records, h0_records, render_records, transcript_records
from src.lift.certificate import verify_certificate
from src.pipeline.lift_pipeline import LiftPipeline
from src.utils.config import Config
from src.utils.errors import DgLiftError, ParseError
from src.utils.logger import get_logger

logger = get_logger("frontend.cli")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="override the FIELD line: q or f<p>")
    common.add_argument("--verbose", action="store_true", help="print transcripts and residual details")

    parser = argparse.ArgumentParser(prog="dglift", description="Exact lifting of A-infinity natural transformations")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", parents=[common], help="check the dg axioms of every category")
    p.add_argument("file")

    p = commands.add_parser("cohomology", parents=[common], help="cohomology of one hom complex")
    p.add_argument("file")
    p.add_argument("category")
    p.add_argument("source")
    p.add_argument("target")

    p = commands.add_parser("h0", parents=[common], help="the homotopy category H0")
    p.add_argument("file")
    p.add_argument("category")

    p = commands.add_parser("check-functor", parents=[common], help="check the A-infinity functor equations")
    p.add_argument("file")
    p.add_argument("functor")
    p.add_argument("--dmax", type=int, default=Config.DEFAULT_CHECK_DEPTH)

    p = commands.add_parser("lift", parents=[common], help="lift the TRANSFORM section and certify it")
    p.add_argument("file")
    p.add_argument("--out", help="certificate file to write")

    p = commands.add_parser("certify", parents=[common], help="re-verify a certificate against its problem")
    p.add_argument("certificate")
    p.add_argument("file")
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise DgLiftError(f"cannot read {path}: {exc}")


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    document = parse_document(_read(args.file), args.field, validate=False)
    status = Config.EXIT_OK
    for name, p in document.categories.items():
        report = validate_dg_category(p)
        print(f"CATEGORY {name}: {'valid' if report.is_valid else 'INVALID'}", file=out)
        if not report.is_valid:
            print(render_records(report.to_records()), file=out)
            status = Config.EXIT_FAILURE
    if status == Config.EXIT_OK:
        for name, F in document.functors.items():
            report = check_ainf_functor(F, Config.DEFAULT_CHECK_DEPTH)
            print(f"FUNCTOR {name}: {'valid' if report.is_valid else 'INVALID'}", file=out)
            if not report.is_valid:
                print(render_records(report.to_records()), file=out)
                status = Config.EXIT_FAILURE
    return status


def cmd_cohomology(args: argparse.Namespace, out: TextIO) -> int:
    p = parse_document(_read(args.file), args.field).category(args.category)
    print(render_records(cohomology_records(p.hom(args.source, args.target))), file=out)
    return Config.EXIT_OK


def cmd_h0(args: argparse.Namespace, out: TextIO) -> int:
    p = parse_document(_read(args.file), args.field).category(args.category)
    print(render_records(h0_records(homotopy_category(p))), file=out)
    return Config.EXIT_OK


def cmd_check_functor(args: argparse.Namespace, out: TextIO) -> int:
    F = parse_document(_read(args.file), args.field).functor(args.functor)
    report = check_ainf_functor(F, args.dmax)
    print(f"FUNCTOR {F.name} up to degree {args.dmax}: {'OK' if report.is_valid else 'FAILED'}", file=out)
    if not report.is_valid:
        print(render_records(report.to_records()), file=out)
        return Config.EXIT_FAILURE
    return Config.EXIT_OK


def cmd_lift(args: argparse.Namespace, out: TextIO) -> int:
    results = LiftPipeline(args.field).run(args.file, args.out)
    if not results['success']:
        print(f"error: {results['error']}", file=sys.stderr)
        if results.get('report'):
            print(render_records(results['report'], ["degree", "source", "target", "dimension"]), file=out)
        return results['exit_code']
    certificate = results['certificate']
    if args.verbose:
        print(render_records(transcript_records(certificate.transcript)), file=out)
        print(render_records(certificate.component_records()), file=out)
    if args.out:
        print(f"LIFTED d_max={certificate.d_max} iso={str(certificate.iso_flag).lower()} -> {args.out}", file=out)
    else:
        out.write(results['certificate_text'])
    return Config.EXIT_OK


def cmd_certify(args: argparse.Namespace, out: TextIO) -> int:
    problem = parse_problem(_read(args.file), args.field, name=Path(args.file).stem)
    certificate = parse_certificate(_read(args.certificate), problem)
    check = verify_certificate(certificate)
    if not check.is_valid:
        print("REJECTED", file=out)
        for item in check.problems:
            print(f"  {item}", file=out)
        return Config.EXIT_FAILURE
    print("VERIFIED", file=out)
    if certificate.iso_flag is not None:
        print(f"iso: {str(certificate.iso_flag).lower()}", file=out)
    return Config.EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "h0": cmd_h0,
    "check-functor": cmd_check_functor,
    "lift": cmd_lift,
    "certify": cmd_certify,
}


def run_command(argv: List[str], out: Optional[TextIO] = None) -> int:
    """Run one command and return its exit code.

    Results are written to ``out`` (default stdout), errors to stderr.
    """
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return exc.exit_code
    except DgLiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.exit_code == Config.EXIT_INTERNAL:
            logger.error(f"internal invariant violated: {exc}")
        return exc.exit_code
