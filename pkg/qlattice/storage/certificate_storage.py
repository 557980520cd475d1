"""
JSON certificate storage.

Writes the latest search certificate to a JSON file and appends every saved
certificate to a JSONL history next to it. Witnesses are embedded in the
Family text format.
"""

import json
from collections.abc import Iterator
from pathlib import Path

from pydantic import TypeAdapter, ValidationError as PydanticValidationError
from typing_extensions import override

from ..exceptions import CertificateFormatError, QLatticeError
from ..interfaces import CertificateDocument, CertificateStore
from ..logging_config import get_logger
from ..models import SearchCertificate
from ..subspace import Family

# Module-level logger
logger = get_logger("certificate_storage")

_DOCUMENT = TypeAdapter(CertificateDocument)


def certificate_to_document(certificate: SearchCertificate) -> CertificateDocument:
    return {
        "problem": certificate.problem,
        "parameters": dict(certificate.parameters),
        "constraints": list(certificate.constraints),
        "exclusion": certificate.exclusion,
        "maximum": certificate.maximum,
        "complete": certificate.complete,
        "nodes_explored": certificate.nodes_explored,
        "seed": certificate.seed,
        "solver": certificate.solver,
        "verdicts": dict(certificate.verdicts),
        "witnesses": [w.to_text() for w in certificate.witnesses],
    }


def certificate_from_document(data: object) -> SearchCertificate:
    """
    Validate a decoded JSON value and rebuild the certificate.

    Raises:
        CertificateFormatError: If the document does not have the certificate shape
    """
    try:
        document = _DOCUMENT.validate_python(data)
        return SearchCertificate(
            problem=document["problem"],
            parameters=document["parameters"],
            constraints=document["constraints"],
            exclusion=document["exclusion"],
            maximum=document["maximum"],
            witnesses=[Family.from_text(text) for text in document["witnesses"]],
            nodes_explored=document["nodes_explored"],
            complete=document["complete"],
            seed=document["seed"],
            solver=document["solver"],
            verdicts=document["verdicts"],
        )
    except PydanticValidationError as e:
        raise CertificateFormatError(f"invalid certificate document: {e}") from e
    except QLatticeError as e:
        raise CertificateFormatError(f"invalid certificate contents: {e}") from e


class CertificateStorage(CertificateStore):
    """
    File-based certificate store.

    The latest certificate lives in a JSON file; every save is also appended
    to an append-only JSONL history (runs.jsonl beside the JSON file unless
    given explicitly).
    """

    certificate_path: Path
    history_path: Path

    def __init__(self, certificate_path: Path, history_path: Path | None = None):
        """
        Initialize certificate storage.

        Args:
            certificate_path: Path to JSON file for the latest certificate
            history_path: Path to JSONL file for all certificates (optional)
        """
        self.certificate_path = Path(certificate_path)
        if history_path is None:
            self.history_path = self.certificate_path.parent / "runs.jsonl"
        else:
            self.history_path = Path(history_path)

        self.certificate_path.parent.mkdir(parents=True, exist_ok=True)
        self.history_path.parent.mkdir(parents=True, exist_ok=True)

        logger.debug(
            f"Certificate storage initialized: certificate={self.certificate_path}, history={self.history_path}"
        )

    @override
    def save(self, certificate: SearchCertificate) -> None:
        document = certificate_to_document(certificate)
        logger.info(f"Saving {certificate.problem} certificate to {self.certificate_path}")

        # Latest certificate, overwritten
        with open(self.certificate_path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, ensure_ascii=False)
            f.write("\n")

        # History, append-only
        with open(self.history_path, "a", encoding="utf-8") as f:
            json.dump(document, f, ensure_ascii=False)
            f.write("\n")

    @override
    def load(self) -> SearchCertificate | None:
        if not self.certificate_path.exists():
            logger.debug("No certificate file exists")
            return None

        try:
            with open(self.certificate_path, "r", encoding="utf-8") as f:
                data: object = json.load(f)
            return certificate_from_document(data)
        except (json.JSONDecodeError, CertificateFormatError) as e:
            logger.error(f"Failed to load certificate from {self.certificate_path}: {e}")
            return None

    def load_history(self) -> Iterator[SearchCertificate]:
        """Yield every valid certificate in the history, skipping corrupted lines."""
        if not self.history_path.exists():
            return

        with open(self.history_path, "r", encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                try:
                    yield certificate_from_document(json.loads(line))
                except (json.JSONDecodeError, CertificateFormatError) as e:
                    logger.warning(f"Skipping invalid JSON line in {self.history_path}: {e}")
                    continue

    def get_history_count(self) -> int:
        """Number of non-empty lines in the history."""
        if not self.history_path.exists():
            return 0

        with open(self.history_path, "r", encoding="utf-8") as f:
            return sum(1 for line in f if line.strip())
