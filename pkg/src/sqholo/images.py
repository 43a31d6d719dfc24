"""Target image ingestion (8-bit grayscale PGM/PNG)."""
from importlib import resources
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ImageError
from .metrics import normalize_target

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
BUILTIN = ("coffee", "camera")


def resolve(path):
    """Map a bundled image name (``coffee``, ``camera``) to its file path."""
    if str(path) in BUILTIN and not Path(path).exists():
        return Path(str(resources.files("sqholo") / "data" / f"{path}.pgm"))
    return Path(path)


def decode_image(path, target_domain="intensity"):
    """Read an 8-bit grayscale image as amplitudes in [0, 1], unnormalised.

    With ``target_domain="intensity"`` a pixel value ``v`` becomes
    ``sqrt(v / 255)`` so displayed intensity is linear in ``v``;
    ``"amplitude"`` uses ``v / 255`` directly.
    """
    path = resolve(path)
    if target_domain not in ("intensity", "amplitude"):
        raise ValueError(f"unknown target domain {target_domain!r}")
    try:
        with open(path, "rb") as fh:
            magic = fh.read(8)
        if not (magic[:2] == b"P5" or magic == PNG_MAGIC):
            raise ImageError(f"{path}: not a binary PGM (P5) or PNG file")
        with Image.open(path) as img:
            if img.mode != "L":
                raise ImageError(f"{path}: expected 8-bit grayscale, got mode {img.mode}")
            values = np.asarray(img, dtype=float)
    except ImageError:
        raise
    except (OSError, UnidentifiedImageError, SyntaxError) as exc:
        raise ImageError(f"{path}: {exc}") from exc
    scaled = values / 255.0
    return np.sqrt(scaled) if target_domain == "intensity" else scaled


def load_image(path, size=None, target_domain="intensity"):
    """Decode, optionally resample to ``size`` x ``size`` (nearest), normalise.

    Odd or all-black images are rejected with :class:`ImageError`.
    """
    amp = decode_image(path, target_domain)
    if size is not None and amp.shape != (size, size):
        img = Image.fromarray(amp.astype(np.float32))
        amp = np.asarray(img.resize((size, size), Image.NEAREST), dtype=float)
    ny, nx = amp.shape
    if nx % 2 or ny % 2 or nx < 2 or ny < 2:
        raise ImageError(f"{resolve(path)}: {nx}x{ny} image; sides must be even")
    try:
        return normalize_target(amp)
    except ValueError as exc:
        raise ImageError(f"{resolve(path)}: {exc}") from exc
