"""Storage backends for flatembed documents.

Supported backends:
- JSONStorage: JSON files on disk (default)

Example:
    >>> from flatembed.storage import create_storage
    >>> storage = create_storage("json", base_dir="out")
    >>> storage.save("H", {"matrix": [[0, 1], [1, 0]]})
    True
"""

from typing import Any

from .base import StorageBackend
from .json import JSONStorage

__all__ = [
    "StorageBackend",
    "JSONStorage",
    "create_storage",
]


def create_storage(backend: str = "json", **kwargs: Any) -> StorageBackend:
    """Factory function to create storage backends.

    Args:
        backend: Storage backend type (only "json")
        **kwargs: Backend-specific options (``base_dir`` and ``indent`` for JSON)

    Raises:
        ValueError: If backend type is not supported
    """
    backend = backend.lower()

    if backend == "json":
        return JSONStorage(**kwargs)
    raise ValueError(
        f"Unsupported storage backend: {backend}. Supported backends: 'json'"
    )
