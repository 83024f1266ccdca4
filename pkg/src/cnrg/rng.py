"""Named substreams derived from one root seed.

Every randomized component draws from substream(root_seed, name, ...) so
components can be re-seeded independently and runs stay reproducible.
"""

from __future__ import annotations

import hashlib
import random


def substream_seed(root_seed: int, *path: object) -> int:
    text = "/".join([str(root_seed), *(str(p) for p in path)])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def substream(root_seed: int, *path: object) -> random.Random:
    return random.Random(substream_seed(root_seed, *path))
