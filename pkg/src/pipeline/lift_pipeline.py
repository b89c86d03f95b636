"""Main lifting pipeline orchestrator."""
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional
from src.frontend.parser import parse_problem
from src.frontend.serializer import serialize_certificate
from src.lift.certificate import LiftCertificate, certify_isomorphism, verify_certificate
from src.lift.lifter import lift_natural_transformation
from src.lift.problem import LiftProblem
from src.lift.vanishing import check_negative_vanishing
from src.utils.config import Config
from src.utils.errors import DgLiftError, InternalInvariantError, VanishingHypothesisFails
from src.utils.logger import EngineLogger, get_logger

logger = get_logger("pipeline.lift_pipeline")


class LiftPipeline:
    """Orchestrates the lift: Parse, Validate, Lift, Certify, Write."""

    def __init__(self, field_override: Optional[str] = None):
        """Initialize the pipeline.

        Args:
            field_override: Field tag replacing the FIELD line of problem files
        """
        self.field_override = field_override

    def run(self, problem_path: str, out_path: Optional[str] = None) -> Dict[str, Any]:
        """Execute the complete pipeline on one problem file.

        Args:
            problem_path: Problem file to read
            out_path: Where to write the certificate (not written when None)

        Returns:
            Dictionary with stage results, the certificate and the exit code
        """
        start_time = datetime.now()
        EngineLogger.log_stage("PIPELINE", "Starting lift pipeline", problem=problem_path)

        results = {
            'start_time': start_time.isoformat(),
            'stages': {},
            'success': False,
            'error': None,
            'exit_code': Config.EXIT_OK,
            'certificate': None,
            'certificate_text': None,
            'report': None,
        }

        try:
            # PARSE stage
            parse_result = self._parse(problem_path)
            results['stages']['parse'] = parse_result
            if not parse_result['success']:
                raise parse_result['exception']
            problem = parse_result['problem']

            # VALIDATE stage
            validate_result = self._validate(problem)
            results['stages']['validate'] = validate_result
            results['report'] = validate_result.get('report')
            if not validate_result['success']:
                raise validate_result['exception']

            # LIFT stage
            lift_result = self._lift(problem)
            results['stages']['lift'] = lift_result
            if not lift_result['success']:
                raise lift_result['exception']

            # CERTIFY stage
            certify_result = self._certify(lift_result['certificate'])
            results['stages']['certify'] = certify_result
            if not certify_result['success']:
                raise certify_result['exception']
            certificate = certify_result['certificate']

            # WRITE stage
            write_result = self._write(certificate, out_path)
            results['stages']['write'] = write_result
            if not write_result['success']:
                raise write_result['exception']

            end_time = datetime.now()
            duration = (end_time - start_time).total_seconds()
            results.update({
                'success': True,
                'end_time': end_time.isoformat(),
                'duration_seconds': duration,
                'certificate': certificate,
                'certificate_text': write_result['text'],
            })
            EngineLogger.log_stage("PIPELINE", "Lift pipeline completed successfully",
                                   iso=certificate.iso_flag, duration_seconds=duration)

        except Exception as e:
            end_time = datetime.now()
            results.update({
                'success': False,
                'error': str(e),
                'exit_code': e.exit_code if isinstance(e, DgLiftError) else Config.EXIT_INTERNAL,
                'end_time': end_time.isoformat(),
                'duration_seconds': (end_time - start_time).total_seconds(),
            })
            logger.error(f"Lift pipeline failed: {e}")
            EngineLogger.log_stage("PIPELINE", f"Lift pipeline failed: {e}")

        return results

    def _parse(self, problem_path: str) -> Dict[str, Any]:
        """Read and parse the problem file."""
        EngineLogger.log_stage("PARSE", "Reading problem file", path=problem_path)
        try:
            text = Path(problem_path).read_text(encoding="ascii")
            problem = parse_problem(text, self.field_override, name=Path(problem_path).stem)
            EngineLogger.log_stage("PARSE", "Problem parsed", objects=len(problem.E.objects),
                                   field=problem.field.tag)
            return {'success': True, 'problem': problem}
        except (OSError, UnicodeDecodeError) as e:
            logger.error(f"Parse stage error: {e}")
            return {'success': False, 'error': str(e), 'exception': DgLiftError(f"cannot read {problem_path}: {e}")}
        except Exception as e:
            logger.error(f"Parse stage error: {e}")
            return {'success': False, 'error': str(e), 'exception': e}

    def _validate(self, problem: LiftProblem) -> Dict[str, Any]:
        """Check the negative vanishing hypothesis."""
        EngineLogger.log_stage("VALIDATE", "Checking negative vanishing")
        try:
            report = check_negative_vanishing(problem.F, problem.G)
            result = {
                'success': report.holds,
                'report': report.failures,
                'min_degree': report.min_degree,
                'd_max': report.d_max,
            }
            if not report.holds:
                result['error'] = f"{len(report.failures)} nonzero negative cohomology groups"
                result['exception'] = VanishingHypothesisFails(report.failures)
            return result
        except Exception as e:
            logger.error(f"Validate stage error: {e}")
            return {'success': False, 'error': str(e), 'exception': e}

    def _lift(self, problem: LiftProblem) -> Dict[str, Any]:
        """Run the degree-by-degree lift."""
        EngineLogger.log_stage("LIFT", "Lifting transformation")
        try:
            certificate = lift_natural_transformation(problem, certify=False)
            EngineLogger.log_stage("LIFT", "Lift completed", d_max=certificate.d_max,
                                   components=len(certificate.transformation.components))
            return {'success': True, 'certificate': certificate}
        except Exception as e:
            logger.error(f"Lift stage error: {e}")
            return {'success': False, 'error': str(e), 'exception': e}

    def _certify(self, certificate: LiftCertificate) -> Dict[str, Any]:
        """Set the iso flag and re-verify the certificate from scratch."""
        try:
            certificate = certify_isomorphism(certificate)
            check = verify_certificate(certificate)
            if not check.is_valid:
                error = "; ".join(check.problems)
                return {'success': False, 'error': error,
                        'exception': InternalInvariantError(f"certificate does not verify: {error}")}
            return {'success': True, 'certificate': certificate, 'iso': certificate.iso_flag}
        except Exception as e:
            logger.error(f"Certify stage error: {e}")
            return {'success': False, 'error': str(e), 'exception': e}

    def _write(self, certificate: LiftCertificate, out_path: Optional[str]) -> Dict[str, Any]:
        """Serialize the certificate and write it when a path is given."""
        EngineLogger.log_stage("WRITE", "Serializing certificate", path=out_path or "-")
        try:
            text = serialize_certificate(certificate)
            if out_path:
                Path(out_path).write_text(text, encoding="ascii")
            return {'success': True, 'text': text, 'path': out_path}
        except Exception as e:
            logger.error(f"Write stage error: {e}")
            return {'success': False, 'error': str(e), 'exception': e}
