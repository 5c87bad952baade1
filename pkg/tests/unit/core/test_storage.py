"""Tests for the document storage layer."""

from pathlib import Path

import pytest

from flatembed.errors import DocumentNotFoundError, InvalidDocumentError
from flatembed.storage import (
    JSONStorage,
    StorageBackend,
    create_storage,
)

HYPERBOLIC_DOC = {"matrix": [[0, 1], [1, 0]]}
FORM_DOC = {"kind": "skew", "m": 3, "q": 3, "components": {"1,2,3": "1"}}


class TestJSONStorage:
    """Test suite for JSONStorage."""

    def test_save_creates_file(self, tmp_path: Path):
        """save() writes a .json file under base_dir."""
        storage = JSONStorage(tmp_path)

        assert storage.save("H", HYPERBOLIC_DOC) is True
        assert (tmp_path / "H.json").exists()

    def test_save_creates_missing_directories(self, tmp_path: Path):
        storage = JSONStorage(tmp_path / "out")

        assert storage.save("forms/cubic", FORM_DOC) is True
        assert (tmp_path / "out" / "forms" / "cubic.json").exists()

    def test_save_and_load(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)
        storage.save("form", FORM_DOC)

        assert storage.load("form") == FORM_DOC

    def test_persistence_across_instances(self, tmp_path: Path):
        """Documents written by one instance are read by another."""
        JSONStorage(tmp_path).save("H", HYPERBOLIC_DOC)

        assert JSONStorage(tmp_path).load("H") == HYPERBOLIC_DOC

    def test_json_formatting(self, tmp_path: Path):
        """Saved JSON is indented and ends with a newline."""
        storage = JSONStorage(tmp_path)
        storage.save("H", HYPERBOLIC_DOC)

        content = (tmp_path / "H.json").read_text(encoding="utf-8")
        assert content.endswith("\n")
        assert "\n  " in content

    def test_unicode_labels_written_verbatim(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)
        storage.save("double", {"label": "#2 S²×S²"})

        content = (tmp_path / "double.json").read_text(encoding="utf-8")
        assert "S²×S²" in content

    def test_missing_document_raises(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)

        with pytest.raises(DocumentNotFoundError):
            storage.load("nonexistent")

    def test_missing_document_with_default(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)

        assert storage.load("nonexistent", default={"matrix": []}) == {"matrix": []}

    def test_corrupted_json_raises(self, tmp_path: Path):
        """A file that is not JSON is an invalid document, even with a default."""
        (tmp_path / "broken.json").write_text("{ invalid json }", encoding="utf-8")
        storage = JSONStorage(tmp_path)

        with pytest.raises(InvalidDocumentError):
            storage.load("broken", default={"default": True})

    def test_filepath_adds_json_extension(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)

        assert storage._get_filepath("witness").name == "witness.json"

    def test_filepath_preserves_existing_suffix(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)

        assert storage._get_filepath("witness.json").name == "witness.json"
        assert storage._get_filepath("algebra.dump").name == "algebra.dump"

    def test_absolute_key_used_as_given(self, tmp_path: Path):
        storage = JSONStorage(tmp_path / "elsewhere")
        target = tmp_path / "abs.json"

        assert storage._get_filepath(str(target)) == target

    def test_exists(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)
        assert storage.exists("H") is False

        storage.save("H", HYPERBOLIC_DOC)

        assert storage.exists("H") is True
        assert storage.exists("H.json") is True

    def test_save_unserializable_returns_false(self, tmp_path: Path):
        storage = JSONStorage(tmp_path)

        assert storage.save("bad", {"value": object()}) is False


class TestStorageFactory:
    """Test suite for storage factory function."""

    def test_create_json_storage(self, tmp_path: Path):
        storage = create_storage("json", base_dir=tmp_path)
        assert isinstance(storage, JSONStorage)
        assert storage.base_dir == tmp_path

    def test_create_storage_case_insensitive(self, tmp_path: Path):
        assert isinstance(create_storage("JSON", base_dir=tmp_path), JSONStorage)

    def test_create_storage_default_is_json(self, tmp_path: Path):
        storage = create_storage(base_dir=tmp_path)
        assert isinstance(storage, JSONStorage)

    def test_create_json_storage_with_indent(self, tmp_path: Path):
        storage = create_storage("json", base_dir=tmp_path, indent=4)
        assert storage.indent == 4

    def test_create_storage_invalid_backend(self):
        with pytest.raises(ValueError, match="Supported backends: 'json'"):
            create_storage("sqlite")

    def test_implements_backend_interface(self, tmp_path: Path):
        assert isinstance(create_storage(base_dir=tmp_path), StorageBackend)
