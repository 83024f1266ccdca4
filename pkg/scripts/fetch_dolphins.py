#!/usr/bin/env python3
"""Download the Doubtful Sound dolphin social network and write data/dolphins.txt.

The dataset (Lusseau et al. 2003; 62 nodes, 159 edges) is distributed as a
GML file from the network-data archive mirrors below. Requires network
access; the package itself never downloads anything.
"""

from __future__ import annotations

import io
import os
import sys
import urllib.request
import zipfile

URLS = [
    "https://websites.umich.edu/~mejn/netdata/dolphins.zip",
    "http://www-personal.umich.edu/~mejn/netdata/dolphins.zip",
]
OUT = os.path.join("data", "dolphins.txt")


def parse_gml_edges(text: str) -> list[tuple[int, int]]:
    """Minimal GML edge parser: collects (source, target) pairs."""
    edges = []
    source = target = None
    in_edge = False
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("edge"):
            in_edge = True
            source = target = None
        elif in_edge and line.startswith("source"):
            source = int(line.split()[1])
        elif in_edge and line.startswith("target"):
            target = int(line.split()[1])
        elif in_edge and line.startswith("]"):
            if source is None or target is None:
                raise ValueError("edge block without source/target")
            edges.append((source, target))
            in_edge = False
    return edges


def main() -> int:
    last_error: Exception | None = None
    payload = None
    for url in URLS:
        try:
            with urllib.request.urlopen(url, timeout=30) as resp:
                payload = resp.read()
            break
        except Exception as exc:  # noqa: BLE001 - report and try the next mirror
            last_error = exc
            print(f"fetch failed from {url}: {exc}", file=sys.stderr)
    if payload is None:
        print(f"could not download the dataset: {last_error}", file=sys.stderr)
        return 1
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        name = next(n for n in zf.namelist() if n.endswith(".gml"))
        text = zf.read(name).decode("utf-8", errors="replace")
    edges = parse_gml_edges(text)
    if len(edges) != 159:
        print(f"warning: expected 159 edges, parsed {len(edges)}", file=sys.stderr)
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        fh.write("# dolphin social network (Lusseau et al. 2003)\n")
        for u, v in sorted(edges):
            fh.write(f"{u} {v}\n")
    print(f"wrote {OUT} ({len(edges)} edges)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
