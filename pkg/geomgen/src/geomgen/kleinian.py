"""Minimal Kleinian-group computations for cusped link exteriors.

Works on explicit matrix groups in SL(2, C) given by parabolic
generators.  Discovery (element enumeration, shortest words) runs in
machine precision; the handful of winning words are then re-evaluated
with mpmath so the published digits do not inherit enumeration noise.
"""

from __future__ import annotations

import cmath
import math

import mpmath as mp

I2 = ((1 + 0j, 0j), (0j, 1 + 0j))


def mul(g, h):
    (a, b), (c, d) = g
    (e, f), (x, y) = h
    return ((a * e + b * x, a * f + b * y), (c * e + d * x, c * f + d * y))


def inv(g):
    (a, b), (c, d) = g
    return ((d, -b), (-c, a))


def word_matrix(word, gens):
    m = I2
    for ch in word:
        g = gens[ch.lower()]
        if ch.isupper():
            g = inv(g)
        m = mul(m, g)
    return m


def fnorm(g):
    (a, b), (c, d) = g
    return math.sqrt(abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2)


def _canonical_key(g, digits=8):
    (a, b), (c, d) = g
    ent = (a, b, c, d)
    for z in ent:
        if abs(z) > 1e-6:
            if z.real < -1e-9 or (abs(z.real) <= 1e-9 and z.imag < 0):
                ent = (-a, -b, -c, -d)
            break
    return tuple((round(z.real, digits), round(z.imag, digits)) for z in ent)


def ball(gens, depth, norm_cap):
    """Reduced-word BFS; returns (matrix, word, exponent dict) triples.

    Elements are deduplicated up to sign and pruned by Frobenius norm.
    The quantities read off later (short geodesics, smallest horoball
    constants, peripheral translations) all come from words whose matrix
    norms are far below any reasonable cap.
    """
    letters = []
    for ch, m in gens.items():
        letters.append((ch, m))
        letters.append((ch.upper(), inv(m)))
    zero = {ch: 0 for ch in gens}
    seen = {_canonical_key(I2)}
    out = [(I2, "", zero)]
    frontier = out[:]
    for _ in range(depth):
        nxt = []
        for m, w, e in frontier:
            for ch, g in letters:
                if w and w[-1] == ch.swapcase():
                    continue
                m2 = mul(m, g)
                if fnorm(m2) > norm_cap:
                    continue
                key = _canonical_key(m2)
                if key in seen:
                    continue
                seen.add(key)
                e2 = dict(e)
                e2[ch.lower()] += 1 if ch.islower() else -1
                rec = (m2, w + ch, e2)
                out.append(rec)
                nxt.append(rec)
        frontier = nxt
    return out


def trace(g):
    return g[0][0] + g[1][1]


def real_length(tr):
    return 2.0 * cmath.acosh(tr / 2.0).real


def shortest_geodesic_word(elements):
    """Word of the shortest loxodromic element found, with its length."""
    best = None
    for m, w, _e in elements:
        tr = trace(m)
        if abs(tr.imag) < 1e-9 and abs(tr.real) <= 2.0 + 1e-9:
            continue
        l = real_length(tr)
        if l < 1e-6:
            continue
        if best is None or l < best[0]:
            best = (l, w)
    if best is None:
        raise RuntimeError("no loxodromic element found; enumeration too shallow")
    return best


def to_infinity(fix):
    if fix is None:
        return I2
    return ((0j, -1 + 0j), (1 + 0j, -fix))


def conj(u, g):
    return mul(mul(u, g), inv(u))


def min_c_word(elements, u_left, u_right):
    """Word minimising |lower-left| of u_left * g * u_right^-1, g != stab."""
    ur = inv(u_right)
    best = None
    for m, w, _e in elements:
        h = mul(mul(u_left, m), ur)
        c = abs(h[1][0])
        if c > 1e-8 and (best is None or c < best[0]):
            best = (c, w)
    if best is None:
        raise RuntimeError("no off-stabilizer element found")
    return best


def stabilizer_translations(elements, u):
    """(translation, exponents, word) for parabolics fixing infinity in frame u."""
    out = []
    for m, w, e in elements:
        h = conj(u, m)
        if abs(h[1][0]) < 1e-8:
            a = h[0][0]
            if abs(abs(a) - 1.0) > 1e-8:
                continue
            tau = h[0][1] * h[1][1]
            if abs(tau) > 1e-9:
                out.append((tau, e, w))
    return out


def longitude_word(elements, u):
    """Shortest zero-exponent peripheral translation: the homological longitude.

    Exists as a bounded translation only when the component links the
    others trivially; returns (translation, word).  The orientation is
    normalised so the translation has positive real part (ties broken by
    positive imaginary part), which pins down the sign of the marking
    coefficients used for twisted variants.
    """
    zero = [(tau, w) for tau, e, w in stabilizer_translations(elements, u)
            if all(v == 0 for v in e.values())]
    if not zero:
        raise RuntimeError("no nullhomologous peripheral element found; "
                           "deepen the enumeration or check linking numbers")
    zero.sort(key=lambda rec: abs(rec[0]))
    tau, word = zero[0]
    if tau.real < -1e-9 or (abs(tau.real) <= 1e-9 and tau.imag < 0):
        tau = -tau
        word = word[::-1].swapcase()
    return tau, word


# -- high-precision re-evaluation ------------------------------------------------

def mp_matrix(g):
    (a, b), (c, d) = g
    return ((mp.mpc(a), mp.mpc(b)), (mp.mpc(c), mp.mpc(d)))


def mp_mul(g, h):
    (a, b), (c, d) = g
    (e, f), (x, y) = h
    return ((a * e + b * x, a * f + b * y), (c * e + d * x, c * f + d * y))


def mp_inv(g):
    (a, b), (c, d) = g
    return ((d, -b), (-c, a))


def mp_word_matrix(word, gens):
    m = ((mp.mpc(1), mp.mpc(0)), (mp.mpc(0), mp.mpc(1)))
    for ch in word:
        g = gens[ch.lower()]
        if ch.isupper():
            g = mp_inv(g)
        m = mp_mul(m, g)
    return m


def mp_real_length(word, gens):
    m = mp_word_matrix(word, gens)
    return 2 * mp.re(mp.acosh((m[0][0] + m[1][1]) / 2))


def mp_conj(u, g):
    return mp_mul(mp_mul(u, g), mp_inv(u))


def mp_translation(word, gens, u):
    h = mp_conj(u, mp_word_matrix(word, gens))
    return h[0][1] * h[1][1]


def mp_c_entry(word, gens, u_left, u_right):
    h = mp_mul(mp_mul(u_left, mp_word_matrix(word, gens)), mp_inv(u_right))
    return abs(h[1][0])
