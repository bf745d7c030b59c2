"""Access to the bundled data sets.

Bundled with the package: the 27-graph and 22-graph conflict collections,
the 11-universal 12-point set, the 17-point set whose prefixes are
universal for 4-connected graphs, and the one-byte seed file holding the
unique order type on 3 points.
"""

from __future__ import annotations

from importlib import resources

from .chirotope import Point, parse_point_list
from .graphs import Graph, parse_edge_list

_NAMES = {
    "g": "conflict_g.txt",
    "h": "conflict_h.txt",
    "listing1": "listing1_points.txt",
    "listing2": "listing2_points.txt",
    "n3": "n3_order_types.bin",
}


def _read_text(name: str) -> str:
    return resources.files("otkit.assets").joinpath(name).read_text()


def read_bytes(name: str) -> bytes:
    return resources.files("otkit.assets").joinpath(_NAMES[name]).read_bytes()


def conflict_graphs(which: str = "g+h") -> list[Graph]:
    """The bundled conflict collections: "g" (27 graphs), "h" (22) or
    "g+h" (all 49, G first)."""
    parts = which.lower().split("+")
    graphs: list[Graph] = []
    for part in parts:
        if part not in ("g", "h"):
            raise KeyError(f"unknown conflict collection {which!r}")
        for line in _read_text(_NAMES[part]).splitlines():
            if line.strip():
                graphs.append(parse_edge_list(line))
    return graphs


def listing1_points() -> list[Point]:
    """The 12 points that are 11-universal."""
    return parse_point_list(_read_text(_NAMES["listing1"]))


def listing2_points() -> list[Point]:
    """17 points whose k-prefixes are universal for 4-connected planar
    k-vertex graphs, 11 <= k <= 17."""
    return parse_point_list(_read_text(_NAMES["listing2"]))


def seed_order_type_path() -> str:
    """Filesystem path of the 3-point seed file (content 0x00)."""
    return str(resources.files("otkit.assets").joinpath(_NAMES["n3"]))
