"""Base storage backend interface for flatembed documents."""

from abc import ABC, abstractmethod
from typing import Any, Optional


class StorageBackend(ABC):
    """Abstract base class for document storage.

    Documents are JSON-compatible values (dicts, lists, strings, ints).
    """

    @abstractmethod
    def save(self, key: str, data: Any) -> bool:
        """Save a document.

        Args:
            key: Unique identifier for the document
            data: JSON-compatible document

        Returns:
            True if save was successful, False otherwise
        """
        pass

    @abstractmethod
    def load(self, key: str, default: Optional[Any] = None) -> Any:
        """Load a document.

        Args:
            key: Unique identifier for the document
            default: Returned when the key is missing; if None, a missing key raises

        Returns:
            Loaded document or default value

        Raises:
            DocumentNotFoundError: If the key is missing and no default is given
            InvalidDocumentError: If the stored data cannot be decoded
        """
        pass

    @abstractmethod
    def exists(self, key: str) -> bool:
        """Check if a document exists."""
        pass
