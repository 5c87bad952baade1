"""JSON file-based storage backend."""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

from ..errors import DocumentNotFoundError, InvalidDocumentError
from .base import StorageBackend

logger = logging.getLogger(__name__)


class JSONStorage(StorageBackend):
    """JSON file-based storage backend.

    Each key is a file path relative to ``base_dir`` (absolute keys are used
    as given). Keys without a suffix get ``.json`` appended.

    Args:
        base_dir: Base directory for documents. If None, uses current directory.
        indent: JSON indentation of written files

    Example:
        >>> storage = JSONStorage(base_dir="data")
        >>> storage.save("H", {"matrix": [[0, 1], [1, 0]]})
        True
        >>> storage.load("H")
        {'matrix': [[0, 1], [1, 0]]}
    """

    def __init__(
        self, base_dir: Optional[Union[str, Path]] = None, indent: int = 2
    ) -> None:
        self.base_dir = Path(base_dir) if base_dir else Path.cwd()
        self.indent = indent
        logger.debug(f"Initialized JSONStorage with base_dir: {self.base_dir}")

    def save(self, key: str, data: Any) -> bool:
        filepath = self._get_filepath(key)
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            with open(filepath, "w", encoding="utf-8") as f:
                json.dump(data, f, ensure_ascii=False, indent=self.indent)
                f.write("\n")
            logger.debug(f"Document saved to {filepath}")
            return True
        except (OSError, TypeError, ValueError) as e:
            logger.error(f"Error saving to {filepath}: {e}")
            return False

    def load(self, key: str, default: Optional[Any] = None) -> Any:
        filepath = self._get_filepath(key)
        if not filepath.exists():
            if default is not None:
                logger.debug(f"File {filepath} not found, using default value")
                return default
            raise DocumentNotFoundError(f"No such document: {filepath}")

        try:
            with open(filepath, encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidDocumentError(f"{filepath} is not valid JSON: {e}") from e
        logger.debug(f"Document loaded from {filepath}")
        return data

    def exists(self, key: str) -> bool:
        return self._get_filepath(key).exists()

    def _get_filepath(self, key: str) -> Path:
        path = Path(key)
        if not path.suffix:
            path = path.with_suffix(".json")
        return self.base_dir / path
