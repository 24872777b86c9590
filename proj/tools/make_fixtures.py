#!/usr/bin/env python3
# Copyright 2026 The Giffel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled PPM test corpus under assets/.

The corpus is deterministic; re-running this script must reproduce the
committed files byte for byte.
"""

import os
import sys

import numpy as np


def write_ppm(path, img):
    """img: float array (H, W, 3) in [0,1]."""
    data = np.clip(np.rint(img * 255.0), 0, 255).astype(np.uint8)
    h, w, _ = data.shape
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h))
        f.write(data.tobytes())


def grid(h, w):
    y, x = np.mgrid[0:h, 0:w].astype(np.float64)
    return y / (h - 1), x / (w - 1)


def ramp_h_64():
    y, x = grid(64, 64)
    r = 0.05 + 0.90 * x
    g = 0.08 + 0.84 * x + 0.04 * y
    b = 0.12 + 0.78 * x + 0.08 * y
    return np.stack([r, g, b], axis=-1)


def ramp_diag_96():
    y, x = grid(96, 96)
    t = (x + y) / 2.0
    c0 = np.array([0.10, 0.15, 0.35])
    c1 = np.array([0.95, 0.80, 0.55])
    img = (1 - t)[..., None] * c0 + t[..., None] * c1
    img[..., 1] += 0.03 * (x - y) / 2.0
    return img


def radial_96():
    y, x = grid(96, 96)
    r2 = (x - 0.5) ** 2 + (y - 0.5) ** 2
    v = 0.95 - 1.45 * r2
    rr = np.sqrt(r2)
    return np.stack([v, v * (0.92 + 0.05 * rr), v * (0.85 + 0.10 * rr)], axis=-1)


def portrait_96():
    y, x = grid(96, 96)
    base = np.array([0.55, 0.42, 0.34])
    img = np.broadcast_to(base, (96, 96, 3)).copy()
    blob1 = 0.32 * np.exp(-(((x - 0.42) ** 2 + (y - 0.38) ** 2) / (2 * 0.22 ** 2)))
    blob2 = -0.22 * np.exp(-(((x - 0.68) ** 2 + (y - 0.66) ** 2) / (2 * 0.16 ** 2)))
    img[..., 0] += blob1 * 1.00 + blob2 * 0.9
    img[..., 1] += blob1 * 0.85 + blob2 * 1.0
    img[..., 2] += blob1 * 0.70 + blob2 * 1.1
    return img


def checker_64():
    y, x = grid(64, 64)
    yi, xi = np.mgrid[0:64, 0:64]
    cell = ((yi // 8 + xi // 8) % 2).astype(np.float64)
    v = 0.25 + 0.50 * cell
    r = v + 0.10 * x
    g = v + 0.06 * y
    b = v + 0.04 * (x + y) / 2.0
    return np.stack([r, g, b], axis=-1)


def noise_64():
    rng = np.random.default_rng(20260809)
    return rng.uniform(0.0, 1.0, size=(64, 64, 3))


def sine_128():
    y, x = grid(64, 128)
    v = 0.5 + 0.38 * np.sin(2 * np.pi * 1.25 * x) * (0.55 + 0.45 * y)
    r = v
    g = 0.5 + 0.34 * np.sin(2 * np.pi * 1.25 * x + 0.4) * (0.55 + 0.45 * y)
    b = 0.5 + 0.30 * np.sin(2 * np.pi * 1.25 * x + 0.8) * (0.55 + 0.45 * y)
    return np.stack([r, g, b], axis=-1)


def edges_64():
    rng = np.random.default_rng(18)
    img = np.empty((64, 64, 3))
    img[...] = [0.20, 0.22, 0.24]
    img[8:28, 8:28] = [0.82, 0.30, 0.28]
    yi, xi = np.mgrid[0:64, 0:64]
    disk = (yi - 20) ** 2 + (xi - 44) ** 2 <= 10 ** 2
    img[disk] = [0.28, 0.70, 0.88]
    img[40:52, 12:56] = [0.92, 0.86, 0.40]
    img += rng.uniform(-0.02, 0.02, size=img.shape)
    return img


def quantramp_256x64():
    """Horizontal ramp hard-quantized to 8 gray levels; a strongly banded input."""
    xi = np.arange(256)
    level = (xi // 32).astype(np.float64) / 7.0
    img = np.broadcast_to(level[None, :, None], (64, 256, 3))
    return img


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..")
    corpus = os.path.join(root, "assets", "corpus")
    golden = os.path.join(root, "assets", "golden")
    os.makedirs(corpus, exist_ok=True)
    os.makedirs(golden, exist_ok=True)

    write_ppm(os.path.join(corpus, "ramp_h_64.ppm"), ramp_h_64())
    write_ppm(os.path.join(corpus, "ramp_diag_96.ppm"), ramp_diag_96())
    write_ppm(os.path.join(corpus, "radial_96.ppm"), radial_96())
    write_ppm(os.path.join(corpus, "portrait_96.ppm"), portrait_96())
    write_ppm(os.path.join(corpus, "checker_64.ppm"), checker_64())
    write_ppm(os.path.join(corpus, "noise_64.ppm"), noise_64())
    write_ppm(os.path.join(corpus, "sine_128.ppm"), sine_128())
    write_ppm(os.path.join(corpus, "edges_64.ppm"), edges_64())
    write_ppm(os.path.join(golden, "quantramp_256x64.ppm"), quantramp_256x64())
    print("fixtures written")


if __name__ == "__main__":
    main()
