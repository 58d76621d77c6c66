"""Content-addressed image store.

Files are named by the sha256 of their bytes, so uploading identical bytes
twice yields the same reference and writes are idempotent. Each session owns
one store directory beside its serialized document; an ``uploads`` index
preserves first-seen order for the UI's reference bar.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import NotFoundError
from .imaging import decode_image, encode_png

ImageRef = str


class ImageStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / "uploads.json"

    @staticmethod
    def digest(data: bytes) -> ImageRef:
        return hashlib.sha256(data).hexdigest()

    def _path(self, ref: ImageRef) -> Path:
        return self.root / ref

    def exists(self, ref: ImageRef) -> bool:
        return self._path(ref).is_file()

    def put(self, data: bytes, track: bool = True) -> ImageRef:
        ref = self.digest(data)
        path = self._path(ref)
        if not path.exists():
            path.write_bytes(data)
        if track:
            self._track(ref)
        return ref

    def put_image(self, image: np.ndarray, track: bool = False) -> ImageRef:
        """Encode a float image to PNG and store it."""
        return self.put(encode_png(image), track=track)

    def get(self, ref: ImageRef) -> bytes:
        path = self._path(ref)
        if not path.is_file():
            raise NotFoundError(f"no stored image {ref!r}", field="image")
        return path.read_bytes()

    def load_image(self, ref: ImageRef) -> np.ndarray:
        return decode_image(self.get(ref))

    def uploads(self) -> list[ImageRef]:
        """Uploaded refs in first-seen order."""
        if not self._index_path.is_file():
            return []
        return json.loads(self._index_path.read_text())

    def _track(self, ref: ImageRef) -> None:
        uploads = self.uploads()
        if ref not in uploads:
            uploads.append(ref)
            self._index_path.write_text(json.dumps(uploads))
