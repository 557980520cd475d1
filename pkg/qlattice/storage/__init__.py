"""
Storage implementations.

Provides implementations of the CertificateStore interface for persisting
search certificates.

Available implementations:
- CertificateStorage: Latest certificate as JSON plus an append-only JSONL history
"""

from .certificate_storage import (
    CertificateStorage,
    certificate_from_document,
    certificate_to_document,
)

__all__ = ["CertificateStorage", "certificate_from_document", "certificate_to_document"]
