"""Hyperbolic-geometry engines behind the extraction pipeline.

Two backends share one interface:

``BuiltinEngine``
    Exact parabolic matrix groups for a small table of links, evaluated
    with the machinery in :mod:`geomgen.kleinian`.  Systoles come from
    enumerating short loxodromics; meridian lengths from maximal cusp
    cross-sections, where all non-outermost cusps are expanded with a
    common factor until the neighborhood system stops embedding and the
    outermost cusp is left alone.  Twisted link variants are peripheral
    re-markings ``mu -> mu + k*lambda`` on selected cusps.

``SnappyEngine``
    Thin bridge to the external SnapPy engine, used when that package is
    installed.  It follows the same cusp convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath as mp

from . import kleinian as kl


class EngineError(RuntimeError):
    """The engine could not produce invariants for a request."""


@dataclass(frozen=True)
class CuspSpec:
    meridian: str          # generator word whose conjugacy class is the meridian
    fix: complex | None    # parabolic fixed point (None = infinity)


@dataclass(frozen=True)
class LinkSpec:
    generators: dict       # letter -> SL(2,C) matrix
    cusps: tuple           # CuspSpec per component, outermost first
    depth: int
    norm_cap: float


def _two_bridge_gens(eta):
    return {"a": ((1 + 0j, 1 + 0j), (0j, 1 + 0j)),
            "b": ((1 + 0j, 0j), (eta, 1 + 0j))}


def _stevedore_root():
    # geometric root of the S(9,5) trace-field quartic
    with mp.workdps(60):
        roots = mp.polyroots([1, -1, 3, -2, 1], maxsteps=400, extraprec=200)
        root = [r for r in roots if mp.im(r) > 1][0]
        return complex(root)


def builtin_links():
    """The built-in link table.  All entries have vanishing linking numbers."""
    omega = complex(0.5, math.sqrt(3.0) / 2.0)
    table = {
        "fig8": LinkSpec(
            generators=_two_bridge_gens(omega),
            cusps=(CuspSpec("a", None),),
            depth=11, norm_cap=30.0),
        "stevedore": LinkSpec(
            generators=_two_bridge_gens(_stevedore_root()),
            cusps=(CuspSpec("a", None),),
            depth=12, norm_cap=30.0),
        "whitehead": LinkSpec(
            generators=_two_bridge_gens(complex(-1, 1)),
            cusps=(CuspSpec("a", None), CuspSpec("b", 0j)),
            depth=10, norm_cap=30.0),
        "borromean": LinkSpec(
            generators={"x": ((1 + 0j, 1 + 0j), (0j, 1 + 0j)),
                        "y": ((1 + 0j, 0j), (2j, 1 + 0j)),
                        "z": ((1j, 1 + 0j), (2j, 2 - 1j))},
            cusps=(CuspSpec("x", None), CuspSpec("y", 0j),
                   CuspSpec("z", (1 + 1j) / 2)),
            depth=8, norm_cap=30.0),
    }
    return table


@dataclass(frozen=True)
class ExtractedGeometry:
    components: int
    systole: mp.mpf
    meridian_lengths: tuple
    linking_numbers: tuple


class BuiltinEngine:
    """Engine over the built-in exact representations."""

    name = "builtin"

    def __init__(self, extra_depth=0):
        self._table = builtin_links()
        self._extra_depth = extra_depth

    def known_links(self):
        return sorted(self._table)

    def extract(self, link, markings=None, outermost=0):
        """Invariants of ``link`` with optional peripheral re-markings.

        ``markings`` maps component index (1-based over the non-outermost
        components in table order) to the integer k of the re-marking
        mu -> mu + k*lambda realising a twisted variant.
        """
        if link not in self._table:
            raise EngineError("engine does not know the link %r" % link)
        spec = self._table[link]
        if outermost != 0:
            raise EngineError("built-in table fixes the outermost component at 0")
        markings = dict(markings or {})
        for idx in markings:
            if not 1 <= idx < len(spec.cusps):
                raise EngineError("marking index %r out of range" % idx)

        elements = kl.ball(spec.generators, spec.depth + self._extra_depth,
                           spec.norm_cap)
        mp_gens = {ch: kl.mp_matrix(m) for ch, m in spec.generators.items()}

        _l, sys_word = kl.shortest_geodesic_word(elements)
        systole = kl.mp_real_length(sys_word, mp_gens)

        frames = [kl.to_infinity(c.fix) for c in spec.cusps]
        mp_frames = [kl.mp_matrix(u) for u in frames]

        # self-maximal heights of the non-outermost cusps
        data = {}
        for i in range(1, len(spec.cusps)):
            _c, c_word = kl.min_c_word(elements, frames[i], frames[i])
            min_c = kl.mp_c_entry(c_word, mp_gens, mp_frames[i], mp_frames[i])
            lon, lon_word = kl.longitude_word(elements, frames[i])
            alpha = kl.mp_translation(spec.cusps[i].meridian, mp_gens,
                                      mp_frames[i])
            beta = kl.mp_translation(lon_word, mp_gens, mp_frames[i])
            data[i] = {"min_c": min_c, "alpha": alpha, "beta": beta}

        # common shrink factor from mutual tangency between expanded cusps
        sigma_sq = mp.mpf(1)
        idxs = sorted(data)
        for i in idxs:
            for j in idxs:
                if i >= j:
                    continue
                _c, w = kl.min_c_word(elements, frames[i], frames[j])
                cross = kl.mp_c_entry(w, mp_gens, mp_frames[i], mp_frames[j])
                h_i = 1 / data[i]["min_c"]
                h_j = 1 / data[j]["min_c"]
                need = 1 / (cross ** 2 * h_i * h_j)
                if need > sigma_sq:
                    sigma_sq = need
        sigma = mp.sqrt(sigma_sq)

        lengths = []
        for i in idxs:
            k = markings.get(i, 0)
            tau = data[i]["alpha"] + k * data[i]["beta"]
            lengths.append(abs(tau) * data[i]["min_c"] / sigma)
        # the zero-exponent longitudes certify zero linking with everything
        links = tuple(0 for _ in idxs)
        return ExtractedGeometry(components=len(spec.cusps), systole=systole,
                                 meridian_lengths=tuple(lengths),
                                 linking_numbers=links)


class SnappyEngine:
    """Bridge to the external SnapPy engine (optional dependency)."""

    name = "snappy"

    CENSUS = {"fig8": "4_1", "stevedore": "6_1",
              "whitehead": "L5a1", "borromean": "L6a4"}

    def __init__(self):
        try:
            import snappy
        except ImportError as exc:
            raise EngineError(
                "the snappy engine is not installed in this environment") from exc
        self._snappy = snappy

    def known_links(self):
        return sorted(self.CENSUS)

    def extract(self, link, markings=None, outermost=0):
        snappy = self._snappy
        name = self.CENSUS.get(link, link)
        m = snappy.Manifold(name)
        if m.solution_type() != "all tetrahedra positively oriented":
            raise EngineError("%r is not certifiably hyperbolic here" % link)
        markings = dict(markings or {})
        if markings:
            # mu -> mu + k*lambda on the marked cusps, identity elsewhere
            mats = []
            for i in range(m.num_cusps()):
                k = markings.get(i, 0)
                mats.append([[1, k], [0, 1]])
            m.set_peripheral_curves(mats)
        spec = m.length_spectrum(0.9, include_words=False)
        if not spec:
            spec = m.length_spectrum(2.5, include_words=False)
        systole = mp.mpf(str(min(s.length.real for s in spec)))
        # expand the non-outermost cusps together, outermost kept small
        nbhd = m.cusp_neighborhood()
        for i in range(m.num_cusps()):
            nbhd.set_displacement(0.0, i)
        grow = [i for i in range(m.num_cusps()) if i != outermost]
        step = 1e-3
        while True:
            stopped = True
            for i in grow:
                reach = nbhd.stopping_displacement(i)
                d = nbhd.get_displacement(i)
                if d + step < reach:
                    nbhd.set_displacement(d + step, i)
                    stopped = False
            if stopped:
                break
        lengths = []
        for i in grow:
            mer, _lon = nbhd.translations(i)
            lengths.append(mp.mpf(str(abs(mer))))
        links = []
        matrix = m.linking_matrix() if hasattr(m, "linking_matrix") else None
        for i in grow:
            links.append(int(matrix[outermost][i]) if matrix else 0)
        return ExtractedGeometry(components=m.num_cusps(), systole=systole,
                                 meridian_lengths=tuple(lengths),
                                 linking_numbers=tuple(links))


def make_engine(name, **kw):
    if name == "builtin":
        return BuiltinEngine(**kw)
    if name == "snappy":
        return SnappyEngine()
    raise EngineError("unknown engine %r" % name)
