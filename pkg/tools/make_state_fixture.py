"""Generate the simplified 50-state GeoJSON fixture for gunpulse.

Outlines are hand-approximated low-resolution boundaries (5-25 vertices per
state). Adjacent states share border vertices where easy; small gaps or
overlaps are tolerated because state assignment tie-breaks lexicographically
and the corpus generator rejection.samples against the assigner.
"""
import json
import sys

# (lon, lat) outlines, not closed (closing vertex added automatically).
OUTLINES = {
    "AL": [(-88.47, 35.0), (-85.6, 35.0), (-85.0, 32.8), (-85.0, 31.0), (-87.6, 30.98), (-88.4, 30.2), (-88.47, 31.9)],
    "AK": [(-166.0, 68.9), (-156.0, 71.2), (-141.0, 69.6), (-141.0, 59.8), (-135.0, 59.0), (-151.5, 58.8), (-158.0, 55.6), (-165.0, 54.2), (-168.0, 60.0)],
    "AZ": [(-114.75, 37.0), (-109.05, 37.0), (-109.05, 31.33), (-111.05, 31.33), (-114.8, 32.5), (-114.55, 34.8)],
    "AR": [(-94.62, 36.5), (-90.15, 36.5), (-90.3, 36.0), (-91.1, 33.8), (-91.17, 33.0), (-94.04, 33.0), (-94.48, 33.64), (-94.62, 35.0)],
    "CA": [(-124.4, 42.0), (-120.0, 42.0), (-120.0, 39.0), (-114.6, 35.0), (-114.8, 32.5), (-117.1, 32.5), (-118.5, 34.0), (-120.6, 34.55), (-121.9, 36.3), (-122.4, 37.2), (-124.0, 40.0)],
    "CO": [(-109.05, 41.0), (-102.05, 41.0), (-102.05, 37.0), (-109.05, 37.0)],
    "CT": [(-73.72, 42.05), (-71.8, 42.02), (-71.78, 41.33), (-73.65, 41.0)],
    "DE": [(-75.79, 39.84), (-75.4, 39.84), (-75.05, 38.45), (-75.7, 38.45)],
    "FL": [(-87.6, 31.0), (-85.0, 31.0), (-84.9, 30.7), (-82.2, 30.55), (-81.45, 30.72), (-80.0, 26.5), (-80.25, 25.3), (-81.2, 25.2), (-82.7, 27.9), (-83.7, 29.9), (-85.3, 29.7), (-87.5, 30.25)],
    "GA": [(-85.6, 35.0), (-83.1, 35.0), (-81.1, 32.05), (-81.1, 31.7), (-81.45, 30.72), (-82.2, 30.55), (-84.9, 30.7), (-85.0, 31.0), (-85.0, 32.8)],
    "HI": [(-160.3, 22.3), (-154.7, 22.3), (-154.7, 18.85), (-160.3, 18.85)],
    "ID": [(-117.24, 49.0), (-116.05, 49.0), (-116.05, 48.0), (-114.4, 46.6), (-112.8, 45.4), (-111.05, 44.5), (-111.05, 42.0), (-117.03, 42.0), (-117.03, 46.0)],
    "IL": [(-90.64, 42.51), (-87.8, 42.49), (-87.53, 41.76), (-87.53, 39.15), (-88.06, 37.8), (-89.13, 36.98), (-90.35, 38.6), (-91.4, 40.4)],
    "IN": [(-87.53, 41.76), (-84.8, 41.76), (-84.8, 39.1), (-85.4, 38.7), (-86.5, 38.0), (-88.06, 37.8), (-87.53, 39.15)],
    "IA": [(-96.45, 43.5), (-91.2, 43.5), (-90.6, 42.5), (-90.15, 41.5), (-91.0, 40.7), (-91.72, 40.58), (-95.77, 40.58), (-95.92, 41.4), (-96.35, 42.2)],
    "KS": [(-102.05, 40.0), (-94.62, 40.0), (-94.61, 37.0), (-102.05, 37.0)],
    "KY": [(-89.1, 36.95), (-87.85, 37.9), (-86.5, 38.0), (-85.4, 38.7), (-84.8, 39.1), (-83.0, 38.6), (-82.0, 37.55), (-83.68, 36.6), (-88.05, 36.6), (-89.4, 36.5)],
    "LA": [(-94.04, 33.0), (-91.17, 33.0), (-91.0, 31.0), (-89.73, 31.0), (-89.63, 30.2), (-89.2, 29.1), (-90.3, 29.0), (-92.0, 29.55), (-93.85, 29.7), (-93.7, 30.4), (-94.04, 31.0)],
    "ME": [(-71.08, 45.3), (-69.22, 47.46), (-68.2, 47.35), (-67.78, 45.94), (-67.0, 44.8), (-68.8, 44.3), (-70.2, 43.6), (-70.7, 43.08), (-70.82, 43.24)],
    "MD": [(-79.48, 39.72), (-75.79, 39.72), (-75.7, 38.45), (-75.2, 38.03), (-76.1, 37.95), (-76.4, 38.2), (-77.25, 38.6), (-78.35, 39.3), (-79.48, 39.21)],
    "MA": [(-73.26, 42.75), (-71.3, 42.7), (-70.6, 42.65), (-70.0, 41.9), (-70.7, 41.5), (-71.19, 41.46), (-71.38, 41.89), (-71.8, 42.02), (-73.49, 42.05)],
    "MI": [
        [(-86.8, 41.76), (-84.8, 41.76), (-83.45, 41.73), (-82.42, 42.98), (-82.5, 43.6), (-83.9, 43.9), (-83.3, 45.0), (-84.7, 45.8), (-85.6, 45.2), (-86.5, 44.1), (-86.2, 43.0)],
        [(-90.42, 46.57), (-89.0, 46.9), (-87.6, 46.9), (-85.0, 46.77), (-84.1, 46.5), (-84.6, 46.0), (-86.0, 45.97), (-87.17, 45.45), (-87.8, 45.35), (-88.1, 45.92), (-90.12, 46.34)],
    ],
    "MN": [(-97.23, 49.0), (-95.15, 49.0), (-95.15, 49.38), (-94.8, 49.3), (-93.8, 48.6), (-92.0, 48.45), (-89.5, 48.0), (-92.1, 46.8), (-92.29, 46.6), (-92.75, 45.3), (-92.8, 44.75), (-91.2, 43.5), (-96.45, 43.5), (-96.56, 45.9), (-96.77, 46.9), (-97.03, 47.9)],
    "MS": [(-90.31, 35.0), (-88.2, 35.0), (-88.47, 31.9), (-88.4, 30.2), (-89.63, 30.2), (-89.73, 31.0), (-91.0, 31.0), (-91.17, 33.0), (-91.1, 33.8), (-90.3, 36.0)],
    "MO": [(-95.77, 40.58), (-91.72, 40.58), (-91.0, 40.5), (-90.35, 38.6), (-89.13, 36.98), (-89.4, 36.5), (-89.5, 36.0), (-90.3, 36.0), (-90.15, 36.5), (-94.62, 36.5), (-94.61, 39.1), (-95.1, 39.9)],
    "MT": [(-116.05, 49.0), (-104.04, 49.0), (-104.04, 45.0), (-111.05, 45.0), (-111.05, 44.5), (-112.8, 45.4), (-114.4, 46.6), (-116.05, 48.0)],
    "NE": [(-104.05, 43.0), (-98.45, 43.0), (-97.0, 42.8), (-96.35, 42.2), (-95.92, 41.4), (-95.77, 40.58), (-95.31, 40.0), (-102.05, 40.0), (-102.05, 41.0), (-104.05, 41.0)],
    "NV": [(-120.0, 42.0), (-114.04, 42.0), (-114.04, 36.1), (-114.6, 35.0), (-120.0, 39.0)],
    "NH": [(-72.46, 42.7), (-70.82, 42.87), (-70.7, 43.08), (-70.97, 43.8), (-71.08, 45.3), (-71.3, 45.3), (-71.5, 45.01), (-72.05, 44.3), (-72.37, 43.5)],
    "NJ": [(-74.7, 41.36), (-73.92, 40.99), (-74.03, 40.75), (-74.03, 40.5), (-73.95, 40.35), (-74.1, 39.75), (-74.4, 39.35), (-74.8, 38.95), (-75.0, 39.2), (-75.4, 39.35), (-75.53, 39.5), (-75.2, 39.85), (-75.1, 40.0), (-74.73, 40.15), (-75.06, 40.42), (-75.07, 40.85), (-74.98, 41.1)],
    "NM": [(-109.05, 37.0), (-103.0, 37.0), (-103.06, 32.0), (-106.62, 32.0), (-106.5, 31.78), (-108.21, 31.78), (-108.21, 31.33), (-109.05, 31.33)],
    "NY": [(-79.76, 42.27), (-79.06, 42.7), (-79.06, 43.27), (-77.5, 43.35), (-76.2, 43.57), (-76.3, 44.2), (-74.99, 44.98), (-73.35, 45.01), (-73.43, 44.0), (-73.26, 42.75), (-73.49, 42.05), (-73.55, 41.3), (-73.62, 41.05), (-72.35, 41.15), (-71.86, 41.07), (-72.3, 40.85), (-73.2, 40.62), (-73.95, 40.54), (-74.26, 40.47), (-74.26, 40.58), (-74.06, 40.64), (-74.03, 40.7), (-74.03, 40.75), (-73.92, 40.99), (-74.7, 41.36), (-75.07, 41.62), (-75.35, 41.99), (-79.76, 42.0)],
    "NC": [(-81.68, 36.59), (-75.87, 36.59), (-75.46, 35.2), (-76.5, 34.7), (-77.9, 33.8), (-79.67, 34.8), (-80.8, 35.1), (-83.1, 35.0), (-84.32, 35.0), (-84.29, 35.21), (-82.9, 35.8)],
    "ND": [(-104.05, 49.0), (-97.23, 49.0), (-97.03, 47.9), (-96.77, 46.9), (-96.56, 45.93), (-104.05, 45.93)],
    "OH": [(-84.8, 41.7), (-83.45, 41.73), (-82.4, 41.6), (-80.52, 41.98), (-80.52, 40.64), (-81.75, 39.3), (-83.0, 38.6), (-84.8, 39.1)],
    "OK": [(-103.0, 37.0), (-94.61, 37.0), (-94.43, 35.4), (-94.48, 33.64), (-95.5, 33.9), (-96.9, 33.8), (-98.1, 34.1), (-99.2, 34.2), (-100.0, 34.56), (-100.0, 36.5), (-103.0, 36.5)],
    "OR": [(-123.9, 46.25), (-122.7, 45.65), (-119.0, 45.93), (-116.92, 45.99), (-117.03, 44.25), (-117.03, 42.0), (-124.21, 42.0), (-124.56, 43.5)],
    "PA": [(-80.52, 42.33), (-79.76, 42.27), (-79.76, 42.0), (-75.35, 41.99), (-75.07, 41.62), (-74.7, 41.36), (-74.98, 41.1), (-75.07, 40.85), (-75.06, 40.42), (-74.73, 40.15), (-75.1, 40.0), (-75.2, 39.85), (-75.53, 39.5), (-75.79, 39.72), (-80.52, 39.72)],
    "RI": [(-71.8, 42.02), (-71.38, 42.02), (-71.38, 41.89), (-71.19, 41.46), (-71.43, 41.35), (-71.78, 41.33)],
    "SC": [(-83.1, 35.0), (-80.8, 35.1), (-79.67, 34.8), (-78.54, 33.86), (-79.2, 33.2), (-80.8, 32.5), (-81.1, 32.05)],
    "SD": [(-104.05, 45.93), (-96.56, 45.93), (-96.45, 43.5), (-96.6, 42.5), (-98.45, 43.0), (-104.05, 43.0)],
    "TN": [(-89.4, 36.5), (-88.05, 36.6), (-83.68, 36.6), (-81.68, 36.59), (-82.9, 35.8), (-84.29, 35.21), (-84.32, 35.0), (-90.31, 35.0), (-89.65, 36.0)],
    "TX": [(-103.04, 36.5), (-100.0, 36.5), (-100.0, 34.56), (-99.2, 34.2), (-98.1, 34.1), (-96.9, 33.8), (-95.5, 33.9), (-94.48, 33.64), (-94.04, 33.0), (-94.04, 31.0), (-93.7, 30.4), (-93.85, 29.7), (-95.3, 28.9), (-96.4, 28.4), (-97.2, 27.6), (-97.15, 25.95), (-99.1, 26.4), (-99.5, 27.5), (-101.4, 29.77), (-103.1, 28.98), (-104.9, 30.6), (-106.5, 31.78), (-106.62, 32.0), (-103.06, 32.0)],
    "UT": [(-114.04, 42.0), (-111.05, 42.0), (-111.05, 41.0), (-109.05, 41.0), (-109.05, 37.0), (-114.04, 37.0)],
    "VT": [(-73.35, 45.01), (-71.5, 45.01), (-72.05, 44.3), (-72.37, 43.5), (-72.46, 42.7), (-73.26, 42.75), (-73.43, 44.0)],
    "VA": [(-75.87, 36.59), (-83.68, 36.6), (-82.0, 37.55), (-80.3, 37.5), (-79.0, 38.4), (-78.35, 39.3), (-77.25, 38.6), (-76.4, 38.2), (-76.1, 37.95), (-76.0, 37.2)],
    "WA": [(-123.32, 49.0), (-117.03, 49.0), (-117.03, 46.0), (-116.92, 45.99), (-119.0, 45.93), (-122.7, 45.65), (-123.9, 46.25), (-124.73, 48.38)],
    "WV": [(-80.52, 40.64), (-80.52, 39.72), (-79.48, 39.72), (-79.48, 39.21), (-78.35, 39.3), (-79.0, 38.4), (-80.3, 37.5), (-82.0, 37.55), (-82.6, 38.4), (-81.75, 39.3), (-80.87, 40.14)],
    "WI": [(-92.29, 46.6), (-92.1, 46.8), (-90.85, 46.95), (-90.42, 46.57), (-90.12, 46.34), (-88.1, 45.92), (-87.8, 45.35), (-87.0, 44.7), (-87.5, 44.2), (-87.8, 43.4), (-87.8, 42.49), (-90.64, 42.51), (-91.2, 43.5), (-92.8, 44.75), (-92.75, 45.3), (-92.29, 46.0)],
    "WY": [(-111.05, 45.0), (-104.04, 45.0), (-104.05, 41.0), (-111.05, 41.0)],
}

# 2012 census population estimates and 2007 gun-ownership shares (fractions).
DEMOGRAPHICS = {
    "AL": (4822023, 0.517), "AK": (731449, 0.578), "AZ": (6553255, 0.311),
    "AR": (2949131, 0.553), "CA": (38041430, 0.213), "CO": (5187582, 0.347),
    "CT": (3590347, 0.167), "DE": (917092, 0.255), "FL": (19317568, 0.245),
    "GA": (9919945, 0.403), "HI": (1392313, 0.097), "ID": (1595728, 0.553),
    "IL": (12875255, 0.202), "IN": (6537334, 0.391), "IA": (3074186, 0.429),
    "KS": (2885905, 0.421), "KY": (4380415, 0.477), "LA": (4601893, 0.456),
    "ME": (1329192, 0.405), "MD": (5884563, 0.213), "MA": (6646144, 0.128),
    "MI": (9883360, 0.384), "MN": (5379139, 0.417), "MS": (2984926, 0.553),
    "MO": (6021988, 0.417), "MT": (1005141, 0.577), "NE": (1855525, 0.386),
    "NV": (2758931, 0.315), "NH": (1320718, 0.300), "NJ": (8864590, 0.123),
    "NM": (2085538, 0.348), "NY": (19570261, 0.180), "NC": (9752073, 0.413),
    "ND": (699628, 0.507), "OH": (11544225, 0.324), "OK": (3814820, 0.429),
    "OR": (3899353, 0.398), "PA": (12763536, 0.347), "RI": (1050292, 0.128),
    "SC": (4723723, 0.423), "SD": (833354, 0.566), "TN": (6456243, 0.439),
    "TX": (26059203, 0.359), "UT": (2855287, 0.439), "VT": (626011, 0.420),
    "VA": (8185867, 0.351), "WA": (6897012, 0.331), "WV": (1855413, 0.554),
    "WI": (5726398, 0.444), "WY": (576412, 0.597),
}


def close(ring):
    ring = [list(p) for p in ring]
    if ring[0] != ring[-1]:
        ring.append(list(ring[0]))
    return ring


def main(out_path):
    features = []
    for code in sorted(OUTLINES):
        outline = OUTLINES[code]
        multi = isinstance(outline[0], list)
        if multi:
            geometry = {"type": "MultiPolygon", "coordinates": [[close(r)] for r in outline]}
        else:
            geometry = {"type": "Polygon", "coordinates": [close(outline)]}
        pop, own = DEMOGRAPHICS[code]
        features.append({
            "type": "Feature",
            "properties": {"state_code": code, "population": pop, "gun_ownership_pct": own},
            "geometry": geometry,
        })
    doc = {"type": "FeatureCollection", "features": features}
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
    print(f"wrote {len(features)} states to {out_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/gunpulse/data/us_states_simplified.geojson")
