"""geomgen command line: regenerate a geometry database from requests."""

from __future__ import annotations

import argparse
import sys

from .engines import EngineError, make_engine
from .pipeline import RequestError, load_requests, regenerate_fixture


def build_parser():
    p = argparse.ArgumentParser(
        prog="geomgen",
        description="Extract hyperbolic link invariants into a geometry "
                    "database file.")
    p.add_argument("--requests", required=True, metavar="FILE",
                   help="JSON list of link requests")
    p.add_argument("--out", required=True, metavar="FILE",
                   help="output database file")
    p.add_argument("--engine", default="builtin", choices=["builtin", "snappy"],
                   help="geometry engine backend (default: builtin)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        engine = make_engine(args.engine)
        requests = load_requests(args.requests)
        doc = regenerate_fixture(requests, args.out, engine)
    except (EngineError, RequestError, OSError, ValueError) as exc:
        print("geomgen: %s" % exc, file=sys.stderr)
        return 1
    print("geomgen: wrote %d entries to %s" % (len(doc["links"]), args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
