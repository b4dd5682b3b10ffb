"""State assignment by point-in-polygon over GeoJSON state boundaries.

Geometry is evaluated on raw lon/lat degrees with the even-odd ray-casting
rule; points on a boundary count as inside. Shared borders are resolved by
assigning to the lexicographically first state code that contains the
point.
"""

from __future__ import annotations

import csv
import gzip
import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

import numpy as np

from .ingest import Tweet

#: Bundled simplified 50-state boundary fixture (small, used in CI).
DEFAULT_FIXTURE = "us_states_simplified.geojson"


class SchemaError(ValueError):
    """A GeoJSON feature that does not carry the required properties."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"feature {index}: {reason}")
        self.index = index


class GeometryError(ValueError):
    """An invalid ring: too few vertices, not closed, or self-intersecting."""


@dataclass(frozen=True)
class StatePolygon:
    """One state's boundary: outer ring(s) plus optional holes.

    Under the even-odd rule the ring list needs no outer/hole bookkeeping;
    disjoint outer rings (multi-part states) simply live side by side.
    """

    state_code: str
    rings: tuple[tuple[tuple[float, float], ...], ...]
    bbox: tuple[float, float, float, float]  # (min_lon, min_lat, max_lon, max_lat)

    def __post_init__(self):
        # Flattened edge arrays (ax, ay, bx, by) for the vectorized
        # containment test; derived data, excluded from equality.
        ax, ay, bx, by = [], [], [], []
        for ring in self.rings:
            for i in range(len(ring) - 1):
                ax.append(ring[i][0])
                ay.append(ring[i][1])
                bx.append(ring[i + 1][0])
                by.append(ring[i + 1][1])
        object.__setattr__(self, "_edges", tuple(np.asarray(v, dtype=np.float64) for v in (ax, ay, bx, by)))


@dataclass(frozen=True)
class PopulationTable:
    """Per-state population and gun-ownership fraction, plus the national total."""

    states: dict
    national_population: int

    def population(self, state_code: str) -> int:
        return self.states[state_code]["population"]

    def gun_ownership_pct(self, state_code: str) -> float:
        return self.states[state_code]["gun_ownership_pct"]

    def __contains__(self, state_code: str) -> bool:
        return state_code in self.states


def _orient(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _segments_cross(p1, p2, q1, q2) -> bool:
    """Proper crossing test; touching at shared endpoints does not count."""
    d1 = _orient(*q1, *q2, *p1)
    d2 = _orient(*q1, *q2, *p2)
    d3 = _orient(*p1, *p2, *q1)
    d4 = _orient(*p1, *p2, *q2)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0


def _validate_ring(ring: Sequence[Sequence[float]], where: str) -> tuple[tuple[float, float], ...]:
    if len(ring) < 4:
        raise GeometryError(f"{where}: ring needs at least 4 vertices, got {len(ring)}")
    if tuple(ring[0]) != tuple(ring[-1]):
        raise GeometryError(f"{where}: ring is not closed (first vertex != last)")
    pts = [(float(lon), float(lat)) for lon, lat in ring]
    edges = [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
    n = len(edges)
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue  # first and last edge share the closing vertex
            if _segments_cross(edges[i][0], edges[i][1], edges[j][0], edges[j][1]):
                raise GeometryError(f"{where}: edges {i} and {j} intersect")
    return tuple(pts)


def point_in_polygon(lon: float, lat: float, poly: StatePolygon) -> bool:
    """Even-odd ray-casting across all rings; boundary points are inside."""
    ax, ay, bx, by = poly._edges
    # Boundary test: zero cross product and inside the segment's box.
    cross = (bx - ax) * (lat - ay) - (by - ay) * (lon - ax)
    on_edge = (
        (cross == 0.0)
        & (np.minimum(ax, bx) <= lon)
        & (lon <= np.maximum(ax, bx))
        & (np.minimum(ay, by) <= lat)
        & (lat <= np.maximum(ay, by))
    )
    if on_edge.any():
        return True
    # Half-open crossing test for a ray going in the +lon direction.
    straddles = (ay > lat) != (by > lat)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = ax + (lat - ay) * (bx - ax) / (by - ay)
    crossings = int(np.count_nonzero(straddles & (x_cross > lon)))
    return bool(crossings % 2)


def assign_state(tweet: Tweet, polygons: Sequence[StatePolygon]) -> Optional[str]:
    """First polygon in lexicographic state order containing the tweet's point."""
    if tweet.coordinates is None:
        return None
    lat, lon = tweet.coordinates
    return assign_point(lon, lat, polygons)


def assign_point(lon: float, lat: float, polygons: Sequence[StatePolygon]) -> Optional[str]:
    for poly in sorted(polygons, key=lambda p: p.state_code):
        min_lon, min_lat, max_lon, max_lat = poly.bbox
        if not (min_lon <= lon <= max_lon and min_lat <= lat <= max_lat):
            continue
        if point_in_polygon(lon, lat, poly):
            return poly.state_code
    return None


def _bbox(rings) -> tuple[float, float, float, float]:
    lons = [lon for ring in rings for lon, _ in ring]
    lats = [lat for ring in rings for _, lat in ring]
    return (min(lons), min(lats), max(lons), max(lats))


def load_state_geo(path, population_csv=None) -> tuple[list[StatePolygon], PopulationTable]:
    """Load a GeoJSON FeatureCollection of states plus its population table.

    Features must carry state_code, population and gun_ownership_pct
    properties (the latter two may instead come from `population_csv`, a
    CSV of state_code,population,gun_ownership_pct that overrides feature
    properties). Geometry is validated; .gz files are accepted.
    """
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as fh:
        doc = json.load(fh)
    return parse_state_geo(doc, _read_population_csv(population_csv) if population_csv else None)


def _read_population_csv(path) -> dict:
    overrides = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            overrides[row["state_code"].strip()] = {
                "population": int(row["population"]),
                "gun_ownership_pct": float(row["gun_ownership_pct"]),
            }
    return overrides


def parse_state_geo(doc: dict, overrides: Optional[dict] = None) -> tuple[list[StatePolygon], PopulationTable]:
    if doc.get("type") != "FeatureCollection":
        raise SchemaError(-1, f"expected a FeatureCollection, got {doc.get('type')!r}")
    polygons: list[StatePolygon] = []
    table: dict[str, dict] = {}
    for i, feature in enumerate(doc.get("features", [])):
        props = feature.get("properties") or {}
        code = props.get("state_code")
        if not code:
            raise SchemaError(i, "missing state_code property")
        code = str(code).upper()
        if code in table:
            raise SchemaError(i, f"duplicate state_code {code}")
        merged = dict(props)
        if overrides and code in overrides:
            merged.update(overrides[code])
        if "population" not in merged or "gun_ownership_pct" not in merged:
            raise SchemaError(i, f"{code}: missing population/gun_ownership_pct")
        population = int(merged["population"])
        if population <= 0:
            raise SchemaError(i, f"{code}: population must be positive")
        ownership = float(merged["gun_ownership_pct"])
        if not (0.0 <= ownership <= 1.0):
            raise SchemaError(i, f"{code}: gun_ownership_pct must be a fraction in [0,1]")

        geometry = feature.get("geometry") or {}
        gtype = geometry.get("type")
        coords = geometry.get("coordinates", [])
        if gtype == "Polygon":
            ring_sets = [coords]
        elif gtype == "MultiPolygon":
            ring_sets = coords
        else:
            raise SchemaError(i, f"{code}: unsupported geometry type {gtype!r}")
        rings = tuple(
            _validate_ring(ring, f"{code} part {p} ring {r}")
            for p, part in enumerate(ring_sets)
            for r, ring in enumerate(part)
        )
        if not rings:
            raise SchemaError(i, f"{code}: empty geometry")
        polygons.append(StatePolygon(state_code=code, rings=rings, bbox=_bbox(rings)))
        table[code] = {"population": population, "gun_ownership_pct": ownership}

    polygons.sort(key=lambda p: p.state_code)
    national = sum(v["population"] for v in table.values())
    return polygons, PopulationTable(states=table, national_population=national)


def load_default_fixture() -> tuple[list[StatePolygon], PopulationTable]:
    """Load the bundled simplified 50-state fixture."""
    with resources.files("gunpulse").joinpath(f"data/{DEFAULT_FIXTURE}").open("r", encoding="utf-8") as fh:
        return parse_state_geo(json.load(fh))


def default_fixture_path() -> str:
    return str(resources.files("gunpulse").joinpath(f"data/{DEFAULT_FIXTURE}"))
