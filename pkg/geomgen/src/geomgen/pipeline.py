"""Request handling and fixture regeneration.

A request file is a JSON list.  Each item either drives the engine:

    {"name": "whitehead_m7",
     "engine_spec": {"link": "whitehead", "markings": {"1": 5}},
     "outermost_component": 0,
     "notes": "..."}

or carries a literal entry that no engine produces (reported values):

    {"name": "pretzel_m2_m77_77", "literal": {...full database entry...}}

The output file follows the geometry-database schema of the primary
package exactly; entries are sorted by name and duplicate names abort.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import mpmath as mp

from .engines import EngineError

CUSP_NOTE = ("meridian lengths on non-outermost cusps expanded equally "
             "to maximality; outermost cusp not expanded")


class RequestError(ValueError):
    """A request file is malformed."""


@dataclass(frozen=True)
class LinkRequest:
    name: str
    engine_spec: dict | None = None
    outermost_component: int = 0
    notes: str | None = None
    literal: dict | None = None

    def __post_init__(self):
        if (self.engine_spec is None) == (self.literal is None):
            raise RequestError(
                "request %r needs exactly one of engine_spec or literal"
                % self.name)


def parse_requests(doc):
    if not isinstance(doc, list):
        raise RequestError("request file must hold a JSON list")
    out = []
    for i, raw in enumerate(doc):
        if not isinstance(raw, dict) or "name" not in raw:
            raise RequestError("request %d is not an object with a name" % i)
        unknown = set(raw) - {"name", "engine_spec", "outermost_component",
                              "notes", "literal"}
        if unknown:
            raise RequestError("request %r has unknown keys %s"
                               % (raw["name"], sorted(unknown)))
        spec = raw.get("engine_spec")
        if spec is not None:
            if not isinstance(spec, dict) or "link" not in spec:
                raise RequestError("engine_spec of %r needs a link" % raw["name"])
            bad = set(spec) - {"link", "markings"}
            if bad:
                raise RequestError("engine_spec of %r has unknown keys %s"
                                   % (raw["name"], sorted(bad)))
        out.append(LinkRequest(
            name=raw["name"],
            engine_spec=spec,
            outermost_component=int(raw.get("outermost_component", 0)),
            notes=raw.get("notes"),
            literal=raw.get("literal"),
        ))
    return out


def load_requests(path):
    with open(path, "rb") as fh:
        return parse_requests(json.loads(fh.read().decode("utf-8")))


def _sig12(x):
    return float(mp.nstr(mp.mpf(x), 12, strip_zeros=False))


def extract(req, engine):
    """Produce one database entry from a request (engine or literal)."""
    if req.literal is not None:
        entry = dict(req.literal)
        entry.setdefault("name", req.name)
        if entry["name"] != req.name:
            raise RequestError("literal entry name disagrees with request name")
        return entry
    spec = req.engine_spec
    markings = {int(k): int(v) for k, v in (spec.get("markings") or {}).items()}
    geo = engine.extract(spec["link"], markings=markings,
                         outermost=req.outermost_component)
    notes = req.notes
    if notes is None:
        notes = CUSP_NOTE if geo.components > 1 else None
    entry = {
        "name": req.name,
        "components": geo.components,
        "systole": _sig12(geo.systole),
        "meridian_lengths": [_sig12(l) for l in geo.meridian_lengths],
        "linking_numbers": list(geo.linking_numbers),
        "source": "derived",
    }
    if notes:
        entry["notes"] = notes
    return entry


def regenerate_fixture(requests, out_path, engine):
    """Extract every request and write the geometry-database JSON file."""
    entries = []
    seen = set()
    for req in requests:
        if req.name in seen:
            raise RequestError("duplicate request name %r" % req.name)
        seen.add(req.name)
        entries.append(extract(req, engine))
    entries.sort(key=lambda e: e["name"])
    doc = {"links": entries}
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return doc
