"""Search a validated domain disk for each catalog preset.

Prints one line per preset: the disk found by the crossing-angle grid scan
and the result of the independent validation pass.  The values are frozen
into ``hexweb.catalog.PRESET_DOMAINS``.
"""

import argparse
import math

from hexweb import catalog
from hexweb.config import WebConfig
from hexweb.domains import find_disk, validate_domain
from hexweb.geom import Domain, Point, Predicate

SEARCH = {
    "pappus": ((-1.0, 2.0), (-1.0, 2.0), ()),
    "brianchon": ((-3.0, 5.0), (-4.0, 4.0), ()),
    "blaschke": ((-1.0, 2.0), (-1.5, 1.5), ()),
    "graf-sauer": ((-3.0, 3.0), (-3.0, 3.0), ()),
    "volk-strubecker": ((-3.0, 3.0), (-3.0, 3.0), ()),
    "apollonian": ((0.0, 3.2), (-1.6, 1.6), ()),
    "apollonian-vertex": ((-2.0, 2.0), (-2.0, 2.0), ()),
    "main-a": ((-3.0, 3.0), (-3.0, 3.0), ()),
    "main-b": ((-4.0, 4.0), (-4.0, 4.0), ()),
    "main-b-hyperbola": ((-4.0, 4.0), (-4.0, 4.0), ()),
    "main-c": ((-3.0, 3.0), (-3.0, 3.0), ()),
    "main-d": ((-4.0, 4.0), (-4.0, 4.0), ()),
    "main-e": ((-1.2, 0.2), (-1.2, 1.2), (Predicate("halfplane", (1.0, 0.0, 0.0)),
                                          Predicate("inside_circle", (0.0, 0.0, 1.0)))),
    "problem41": ((-4.0, 4.0), (-4.0, 4.0), ()),
    "cubic-series": ((-3.0, 3.0), (-3.0, 3.0), ()),
    "shelekhov-a": ((-3.0, 3.0), (-3.0, 3.0), ()),
    "shelekhov-d": ((-2.0, 3.0), (-2.5, 2.5), ()),
    "shelekhov-e": ((-2.0, 3.0), (-2.0, 3.0), ()),
    "shelekhov-f": ((-1.0, 2.0), (-1.5, 1.5), ()),
    "shelekhov-g": ((-1.0, 2.0), (-1.5, 1.5), ()),
    "shelekhov-h": ((-2.0, 2.0), (-2.0, 2.0), ()),
    "shelekhov-j": ((-1.0, 2.0), (-1.5, 1.5), ()),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*")
    ap.add_argument("--grid", type=int, default=101)
    ap.add_argument("--min-angle", type=float, default=0.1)
    args = ap.parse_args()
    for name in args.names or SEARCH:
        xlim, ylim, preds = SEARCH[name]
        key, params = catalog.PRESET_PARAMS[name]
        probe = catalog.build(WebConfig(key, params, Domain(Point(0.0, 0.0), 1e6)))
        dom = find_disk(probe, xlim, ylim, n=args.grid, min_angle=args.min_angle, predicates=preds)
        if dom is None:
            print(f"{name}\tnone")
            continue
        w = catalog.build(WebConfig(key, params, dom))
        rep = validate_domain(w, samples=200, leaves=20)
        print(f"{name}\t({dom.center.x!r}, {dom.center.y!r}, {round(dom.radius, 4)!r})\tok={rep.ok}"
              f"\tmin_angle={rep.min_angle:.3g}\tmissing={rep.missing}\tleaf_bad={rep.leaf_violations}")


if __name__ == "__main__":
    main()
