"""Per-link hyperbolic invariants, the bundled dataset, and the formula kernels.

Each hyperbolic JSJ piece is the exterior of a link with a distinguished
outermost component; the geometry record stores the systole of that
exterior plus, for every non-outermost component, the meridian length on
the maximal cusp cross-section and the linking number with the outermost
component.  The three kernels ``q_frak``, ``r_frak`` and ``s_frak`` turn
those invariants into the integer denominator thresholds consumed by the
bound dispatcher.

All three kernels floor an irrational expression.  The floor is guarded:
a value within 1e-9 below an integer is rounded up and flagged, which
can only enlarge a bound and therefore never makes it unsound (bounds are
always compared with a strict ``|q| > bound``).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from importlib import resources

from .errors import DbFormatError, MissingGeometryError

__all__ = [
    "FPS_OFFSET",
    "FPS_MIN_NORMALIZED",
    "Q_FACTOR",
    "SIX",
    "AREA_MIN",
    "Q_FLOOR",
    "S_FLOOR",
    "LEMMA58_NUM",
    "LEMMA58_OFF",
    "GuardedInt",
    "guarded_floor",
    "HyperbolicGeometry",
    "GeometryDb",
    "load_db",
    "bundled_db",
    "q_frak",
    "r_frak",
    "s_frak",
    "normalized_length_lower_bound",
    "core_length_upper_bound",
    "slope_distance",
    "threshold_problems",
]


# -- constants --------------------------------------------------------------

FPS_OFFSET = 28.78            # offset in the core-length denominator
FPS_MIN_NORMALIZED = 7.823    # validity threshold for the core-length bound
Q_FACTOR = 1.9793             # strengthening factor in the q kernel
SIX = 6.0                     # slope length above which fillings stay hyperbolic
AREA_MIN = 2.0 * math.sqrt(3.0)   # universal lower bound for cusp area
Q_FLOOR = 34
S_FLOOR = 25
LEMMA58_NUM = 12.0 * math.sqrt(3.0) * math.pi
LEMMA58_OFF = 172.68

_AREA6 = 6.0 * math.sqrt(3.0)
_ROOT_AREA6 = math.sqrt(_AREA6)

# The two composite constants are tied to the primitive ones; a mismatch
# here would mean the formulas drifted apart.
assert abs(LEMMA58_OFF - 6.0 * FPS_OFFSET) < 1e-9
assert abs(LEMMA58_NUM - 2.0 * math.pi * _AREA6) < 1e-9


# -- guarded flooring -------------------------------------------------------

_BOUNDARY_EPS = 1e-9


@dataclass(frozen=True)
class GuardedInt:
    """An integer floor plus a flag set when the input sat on the boundary."""

    value: int
    boundary_warning: bool = False


def guarded_floor(v):
    """Floor of ``v >= 0``, rounded up when ``v`` is within 1e-9 of an integer.

    Rounding up keeps downstream thresholds sound: callers only ever test
    denominators strictly against the returned value, so a larger value is
    safe while a floor computed one too low would not be.
    """
    v = float(v)
    if not math.isfinite(v):
        raise ValueError("guarded_floor needs a finite input, got %r" % v)
    if v < 0:
        raise ValueError("guarded_floor needs a nonnegative input, got %r" % v)
    f = math.floor(v)
    if v - f > 1.0 - _BOUNDARY_EPS:
        return GuardedInt(f + 1, True)
    return GuardedInt(f, False)


# -- geometry records -------------------------------------------------------

_SOURCES = ("paper", "derived", "user")


@dataclass(frozen=True)
class HyperbolicGeometry:
    """Geometric invariants of one hyperbolic link exterior.

    ``meridian_lengths[i]`` and ``linking_numbers[i]`` describe component
    ``i + 1`` (the outermost component is index 0 and carries no entry).
    A list may be ``None`` when the data is unknown, e.g. for an inline
    expression that only supplies linking numbers; operations that need
    the missing list raise ``MissingGeometryError``.  A one-component
    exterior has both lists empty, not ``None``.
    """

    components: int
    systole: float
    meridian_lengths: tuple | None = None
    linking_numbers: tuple | None = None
    name: str | None = None
    source: str = "user"
    notes: str | None = None

    def __post_init__(self):
        if self.meridian_lengths is not None:
            object.__setattr__(self, "meridian_lengths", tuple(self.meridian_lengths))
        if self.linking_numbers is not None:
            object.__setattr__(self, "linking_numbers", tuple(self.linking_numbers))

    @classmethod
    def for_knot(cls, systole, **kw):
        """Geometry of a one-cusped (knot) exterior: no non-outermost data."""
        return cls(components=1, systole=systole,
                   meridian_lengths=(), linking_numbers=(), **kw)

    def problems(self):
        """List of invariant violations, empty when the record is consistent."""
        out = []
        if not isinstance(self.components, int) or isinstance(self.components, bool):
            out.append("components must be an integer")
        elif self.components < 1:
            out.append("components must be >= 1")
        if not (isinstance(self.systole, (int, float))
                and math.isfinite(self.systole) and self.systole > 0):
            out.append("systole must be a positive finite number")
        expected = self.components - 1 if isinstance(self.components, int) else None
        if self.meridian_lengths is not None:
            if expected is not None and len(self.meridian_lengths) != expected:
                out.append("meridian_lengths must have components-1 entries")
            for l in self.meridian_lengths:
                if not (isinstance(l, (int, float)) and math.isfinite(l) and l > 0):
                    out.append("meridian lengths must be positive finite numbers")
                    break
        if self.linking_numbers is not None:
            if expected is not None and len(self.linking_numbers) != expected:
                out.append("linking_numbers must have components-1 entries")
            for n in self.linking_numbers:
                if not isinstance(n, int) or isinstance(n, bool):
                    out.append("linking numbers must be integers")
                    break
        if self.source not in _SOURCES:
            out.append("source must be one of %s" % (", ".join(_SOURCES)))
        return out


# -- formula kernels --------------------------------------------------------

def _require_systole(g):
    if not (g.systole > 0 and math.isfinite(g.systole)):
        raise ValueError("geometry needs a positive finite systole")


def q_frak(g):
    """Threshold floor(sqrt(6*sqrt(3) * (1.9793 * 2*pi/systole + 28.78)))."""
    _require_systole(g)
    inner = Q_FACTOR * 2.0 * math.pi / g.systole + FPS_OFFSET
    return guarded_floor(math.sqrt(_AREA6 * inner))


def s_frak(g):
    """Threshold floor(sqrt(6*sqrt(3) * (2*pi/systole + 28.78)))."""
    _require_systole(g)
    inner = 2.0 * math.pi / g.systole + FPS_OFFSET
    return guarded_floor(math.sqrt(_AREA6 * inner))


def r_frak(g):
    """Threshold floor(sqrt(3) * longest non-outermost meridian), 0 if none."""
    if g.meridian_lengths is None:
        raise MissingGeometryError(
            "meridian lengths unknown for %s" % (g.name or "inline geometry"))
    longest = max((0.0, *g.meridian_lengths))
    return guarded_floor(math.sqrt(3.0) * longest)


def normalized_length_lower_bound(b):
    """Lower bound |b| / sqrt(6*sqrt(3)) for the normalised length of a/b."""
    if b == 0:
        raise ValueError("slope denominator must be nonzero")
    return abs(b) / _ROOT_AREA6


def core_length_upper_bound(lhat):
    """Upper bound 2*pi / (lhat^2 - 28.78) for the filling-core length.

    Only valid for normalised slope length ``lhat >= 7.823``.
    """
    if lhat < FPS_MIN_NORMALIZED:
        raise ValueError(
            "core length bound needs normalised length >= %s, got %r"
            % (FPS_MIN_NORMALIZED, lhat))
    return 2.0 * math.pi / (lhat * lhat - FPS_OFFSET)


def _slope_pair(s):
    p, q = (s.p, s.q) if hasattr(s, "p") else tuple(s)
    if math.gcd(abs(p), abs(q)) != 1:
        raise ValueError("slope %r/%r is not in lowest terms" % (p, q))
    return p, q


def slope_distance(first, second):
    """Geometric intersection number |p*q' - p'*q| of two reduced slopes."""
    p, q = _slope_pair(first)
    p2, q2 = _slope_pair(second)
    return abs(p * q2 - p2 * q)


# -- defining threshold properties ------------------------------------------

def threshold_problems(g):
    """Check the defining threshold semantics of the kernels for one entry.

    Returns a list of human-readable failures (empty when the entry is
    consistent).  Minimality checks are skipped when the corresponding
    kernel was rounded up at a floor boundary, since the rounded value is
    deliberately one larger than the true floor.
    """
    out = []
    s = s_frak(g)
    q = q_frak(g)
    if s.value > q.value:
        out.append("s kernel exceeds q kernel")

    # Sufficiency: one past the s threshold the filling core is shorter
    # than every closed geodesic.
    b = max(S_FLOOR, s.value) + 1
    lhat = normalized_length_lower_bound(b)
    if lhat < FPS_MIN_NORMALIZED:
        out.append("s threshold does not reach the core-length regime")
    elif not core_length_upper_bound(lhat) < g.systole:
        out.append("s threshold not sufficient at b=%d" % b)
    # Minimality: at the threshold itself the core-length bound is not
    # yet below the systole.
    if s.value >= 26 and not s.boundary_warning:
        if not (core_length_upper_bound(normalized_length_lower_bound(s.value))
                >= g.systole):
            out.append("s threshold not minimal at b=%d" % s.value)

    if g.meridian_lengths is not None and len(g.meridian_lengths) > 0:
        r = r_frak(g)
        for l in g.meridian_lengths:
            if not AREA_MIN * (r.value + 1) / l > SIX:
                out.append("r threshold not sufficient at meridian %g" % l)
        if r.value >= 1 and not r.boundary_warning:
            lmax = max(g.meridian_lengths)
            if not AREA_MIN * r.value / lmax <= SIX:
                out.append("r threshold not minimal")
    return out


# -- database ---------------------------------------------------------------

class GeometryDb:
    """Immutable mapping from link name to its geometry record."""

    def __init__(self, entries):
        table = {}
        for g in entries:
            if g.name is None:
                raise DbFormatError("database entries need a name")
            if g.name in table:
                raise DbFormatError("duplicate name %r" % g.name)
            probs = g.problems()
            if probs:
                raise DbFormatError("entry %r: %s" % (g.name, "; ".join(probs)))
            table[g.name] = g
        self._table = table

    def get(self, name):
        try:
            return self._table[name]
        except KeyError:
            raise MissingGeometryError("no geometry named %r" % name) from None

    def names(self):
        return sorted(self._table)

    def __contains__(self, name):
        return name in self._table

    def __iter__(self):
        return iter(self.names())

    def __len__(self):
        return len(self._table)


_ENTRY_KEYS = {
    "name", "components", "systole", "meridian_lengths",
    "linking_numbers", "source", "notes",
}
_REQUIRED_KEYS = _ENTRY_KEYS - {"notes"}


def _reject_constant(token):
    raise DbFormatError("non-finite number %r in database" % token)


def _check_number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DbFormatError("%s must be a number" % where)
    return float(value)


def _parse_entry(raw, index):
    if not isinstance(raw, dict):
        raise DbFormatError("entry %d is not an object" % index)
    unknown = set(raw) - _ENTRY_KEYS
    if unknown:
        raise DbFormatError(
            "entry %d has unknown keys: %s" % (index, ", ".join(sorted(unknown))))
    missing = _REQUIRED_KEYS - set(raw)
    if missing:
        raise DbFormatError(
            "entry %d is missing keys: %s" % (index, ", ".join(sorted(missing))))
    name = raw["name"]
    if not isinstance(name, str) or not name:
        raise DbFormatError("entry %d has a bad name" % index)
    components = raw["components"]
    if isinstance(components, bool) or not isinstance(components, int):
        raise DbFormatError("entry %r: components must be an integer" % name)
    systole = _check_number(raw["systole"], "entry %r: systole" % name)
    merids = raw["meridian_lengths"]
    links = raw["linking_numbers"]
    if not isinstance(merids, list) or not isinstance(links, list):
        raise DbFormatError("entry %r: lists expected" % name)
    merids = tuple(_check_number(x, "entry %r: meridian length" % name)
                   for x in merids)
    for x in links:
        if isinstance(x, bool) or not isinstance(x, int):
            raise DbFormatError("entry %r: linking numbers must be integers" % name)
    notes = raw.get("notes")
    if notes is not None and not isinstance(notes, str):
        raise DbFormatError("entry %r: notes must be a string" % name)
    return HyperbolicGeometry(
        components=components,
        systole=systole,
        meridian_lengths=merids,
        linking_numbers=tuple(links),
        name=name,
        source=raw["source"] if isinstance(raw["source"], str) else "?",
        notes=notes,
    )


def load_db(source):
    """Load a geometry database from a file path or raw bytes.

    The file is strict UTF-8 JSON: a top-level object with the single key
    ``links`` holding the entry list.  Unknown keys, duplicate names,
    non-finite numbers and invariant violations are all rejected.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            text = fh.read().decode("utf-8")
    else:
        raise TypeError("load_db expects a path or bytes")
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DbFormatError("database is not valid JSON: %s" % exc) from None
    if not isinstance(doc, dict) or set(doc) != {"links"}:
        raise DbFormatError('database must be an object with the single key "links"')
    if not isinstance(doc["links"], list):
        raise DbFormatError('"links" must hold a list')
    entries = [_parse_entry(raw, i) for i, raw in enumerate(doc["links"])]
    try:
        return GeometryDb(entries)
    except DbFormatError:
        raise


_bundled = None


def bundled_db():
    """The dataset shipped with the package (loaded once, then cached)."""
    global _bundled
    if _bundled is None:
        data = resources.files(__package__).joinpath("data/links.json").read_bytes()
        _bundled = load_db(data)
    return _bundled
