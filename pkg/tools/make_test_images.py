"""Regenerate the bundled 128x128 test targets from scikit-image sample data.

Both source photographs are CC0 (see skimage.data.camera / skimage.data.coffee).
"""
from pathlib import Path

import numpy as np
from PIL import Image
from skimage import data

OUT = Path(__file__).resolve().parents[1] / "src" / "sqholo" / "data"
SIZE = 128


def square_crop(img):
    h, w = img.shape[:2]
    s = min(h, w)
    return img[(h - s) // 2:(h - s) // 2 + s, (w - s) // 2:(w - s) // 2 + s]


def main():
    sources = {
        "camera": data.camera(),
        # natural still life with smooth curved objects and specular highlights
        "coffee": np.asarray(Image.fromarray(data.coffee()).convert("L")),
    }
    for name, img in sources.items():
        small = Image.fromarray(square_crop(img)).resize((SIZE, SIZE), Image.LANCZOS)
        small.save(OUT / f"{name}.pgm")
        print(OUT / f"{name}.pgm")


if __name__ == "__main__":
    main()
