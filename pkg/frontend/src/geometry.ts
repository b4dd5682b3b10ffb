/** State outlines for the choropleth: GeoJSON in, SVG path strings out.
 *
 * A plain equirectangular projection is enough for the simplified
 * boundary fixture; the map is informational, not cartographic.
 */

export interface StateShape {
  code: string;
  /** SVG path data in projected pixel coordinates */
  path: string;
}

interface GeoFeature {
  properties: { state_code: string };
  geometry: { type: "Polygon" | "MultiPolygon"; coordinates: number[][][] | number[][][][] };
}

export interface GeoDoc {
  features: GeoFeature[];
}

export interface Projection {
  x(lon: number): number;
  y(lat: number): number;
}

export function fitProjection(doc: GeoDoc, width: number, height: number, pad = 8): Projection {
  let minLon = Infinity, maxLon = -Infinity, minLat = Infinity, maxLat = -Infinity;
  for (const ring of allRings(doc)) {
    for (const [lon, lat] of ring as [number, number][]) {
      minLon = Math.min(minLon, lon);
      maxLon = Math.max(maxLon, lon);
      minLat = Math.min(minLat, lat);
      maxLat = Math.max(maxLat, lat);
    }
  }
  const sx = (width - 2 * pad) / (maxLon - minLon);
  const sy = (height - 2 * pad) / (maxLat - minLat);
  const s = Math.min(sx, sy);
  return {
    x: (lon) => pad + (lon - minLon) * s,
    y: (lat) => pad + (maxLat - lat) * s, // lat grows north, pixels grow down
  };
}

function* allRings(doc: GeoDoc): Generator<number[][]> {
  for (const feature of doc.features) {
    const geom = feature.geometry;
    if (geom.type === "Polygon") {
      yield* geom.coordinates as number[][][];
    } else {
      for (const part of geom.coordinates as number[][][][]) yield* part;
    }
  }
}

export function stateShapes(doc: GeoDoc, projection: Projection): StateShape[] {
  const shapes: StateShape[] = [];
  for (const feature of doc.features) {
    const geom = feature.geometry;
    const rings =
      geom.type === "Polygon"
        ? (geom.coordinates as number[][][])
        : (geom.coordinates as number[][][][]).flat();
    const path = rings
      .map((ring) =>
        ring
          .map(([lon, lat], i) => `${i === 0 ? "M" : "L"}${projection.x(lon!).toFixed(1)},${projection.y(lat!).toFixed(1)}`)
          .join("") + "Z",
      )
      .join("");
    shapes.push({ code: feature.properties.state_code, path });
  }
  return shapes.sort((a, b) => (a.code < b.code ? -1 : 1));
}
