"""Canonical certificate files: compact sorted JSON with a content digest."""
import hashlib
import json
from typing import Any, Dict, List
from src.ainf.functor import PreNatTrans
from src.ainf.tuples import all_tuples
from src.dgcat.element import Element
from src.lift.certificate import LiftCertificate
from src.lift.problem import LiftProblem
from src.utils.config import Config
from src.utils.errors import CertificateError, DgLiftError
from src.utils.logger import get_logger

logger = get_logger("frontend.serializer")


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def compute_digest(body: Dict[str, Any]) -> str:
    return hashlib.new(Config.DIGEST_ALGORITHM, canonical_json(body).encode("ascii")).hexdigest()


def _element_terms(x: Element) -> List[List[str]]:
    return [[label, x.field.format(value)] for label, value in x.items()]


def certificate_body(certificate: LiftCertificate) -> Dict[str, Any]:
    """The digest-free content of a certificate, in canonical order."""
    problem = certificate.problem
    h = certificate.transformation
    E = problem.E
    stored = [fs for fs in all_tuples(E, h.max_degree, include_identities=True) if fs in h.components]
    return {
        "format": Config.CERTIFICATE_FORMAT,
        "problem": problem.name,
        "field": problem.field.tag,
        "source": E.name,
        "target": problem.B.name,
        "functors": [problem.F.name, problem.G.name],
        "d_max": certificate.d_max,
        "min_degree": certificate.min_degree,
        "h0": [{"object": obj, "value": _element_terms(h.at(obj))} for obj in E.objects],
        "components": [{"tuple": list(fs), "value": _element_terms(h.components[fs])} for fs in stored],
        "iso": certificate.iso_flag,
        "inverses": [{"object": obj, "coords": [problem.field.format(c) for c in certificate.inverses[obj].coords]}
                     for obj in E.objects if obj in certificate.inverses],
        "vanishing": certificate.vanishing,
        "transcript": certificate.transcript,
    }


def serialize_certificate(certificate: LiftCertificate) -> str:
    """Canonical text of a certificate; equal certificates serialize identically."""
    body = certificate_body(certificate)
    text = canonical_json({**body, "digest": compute_digest(body)})
    logger.debug(f"certificate serialized: {len(text)} characters")
    return text + "\n"


def _element(problem: LiftProblem, src: str, tgt: str, terms: Any, where: str) -> Element:
    try:
        return problem.B.element(src, tgt, {label: problem.field.parse_scalar(value) for label, value in terms})
    except (DgLiftError, TypeError, ValueError) as exc:
        raise CertificateError(f"invalid value {where}: {exc}")


def parse_certificate(text: str, problem: LiftProblem) -> LiftCertificate:
    """Rebuild a certificate against its problem.

    Raises:
        CertificateError: On malformed JSON, a wrong format tag, a digest
            mismatch or values that do not fit the problem
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"certificate is not valid JSON: {exc}")
    if not isinstance(data, dict) or data.get("format") != Config.CERTIFICATE_FORMAT:
        raise CertificateError(f"expected format {Config.CERTIFICATE_FORMAT}")
    digest = data.pop("digest", None)
    if digest != compute_digest(data):
        raise CertificateError("digest mismatch", [f"recorded {digest}", f"computed {compute_digest(data)}"])

    expected = {"field": problem.field.tag, "source": problem.E.name, "target": problem.B.name,
                "functors": [problem.F.name, problem.G.name]}
    problems = [f"{key}: certificate has {data.get(key)!r}, problem has {value!r}"
                for key, value in expected.items() if data.get(key) != value]
    if problems:
        raise CertificateError("certificate does not belong to this problem", problems)

    F, G, E = problem.F, problem.G, problem.E
    try:
        h0 = {entry["object"]: _element(problem, F.on_object(entry["object"]), G.on_object(entry["object"]),
                                        entry["value"], f"at {entry['object']}")
              for entry in data["h0"]}
        components = {}
        for entry in data["components"]:
            fs = tuple(entry["tuple"])
            x0, xd = E.hom_of(fs[-1])[0], E.hom_of(fs[0])[1]
            components[fs] = _element(problem, F.on_object(x0), G.on_object(xd), entry["value"],
                                      f"on ({', '.join(fs)})")
        h = PreNatTrans(F, G, 0, h0, components, max_degree=data["d_max"])
        inverses = {entry["object"]: problem.h0_B.make_class(G.on_object(entry["object"]),
                                                             F.on_object(entry["object"]),
                                                             [problem.field.parse_scalar(c) for c in entry["coords"]])
                    for entry in data["inverses"]}
        return LiftCertificate(problem, h, int(data["d_max"]), int(data["min_degree"]),
                               list(data["transcript"]), list(data["vanishing"]), data["iso"], inverses)
    except (KeyError, TypeError, IndexError) as exc:
        raise CertificateError(f"certificate is missing data: {exc}")
    except DgLiftError as exc:
        if isinstance(exc, CertificateError):
            raise
        raise CertificateError(f"certificate does not fit the problem: {exc}")
