"""Pure-Python twin of the compiled kernel (same API, same outputs, much slower)."""
from __future__ import annotations

import itertools
from math import isqrt

_PERMS = list(itertools.permutations(range(3)))
_SLOT = ((0, 3, 4), (3, 1, 5), (4, 5, 2))
_II = (0, 1, 2, 0, 0, 1)
_JJ = (0, 1, 2, 1, 2, 2)


def _signed_perms():
    out = []
    for p in _PERMS:
        for sm in range(8):
            e = [-1 if sm >> b & 1 else 1 for b in range(3)]
            src = tuple(_SLOT[p[_II[k]]][p[_JJ[k]]] for k in range(6))
            sgn = tuple(e[_II[k]] * e[_JJ[k]] for k in range(6))
            out.append((src, sgn))
    return out


_SP = _signed_perms()


def _doubled(c, o):
    return [2 * c[o], c[o + 3], c[o + 4],
            c[o + 3], 2 * c[o + 1], c[o + 5],
            c[o + 4], c[o + 5], 2 * c[o + 2]]


def _det3(m):
    return (m[0] * (m[4] * m[8] - m[5] * m[7])
            - m[1] * (m[3] * m[8] - m[5] * m[6])
            + m[2] * (m[3] * m[7] - m[4] * m[6]))


def _adj3(m):
    return [m[4] * m[8] - m[5] * m[7], m[2] * m[7] - m[1] * m[8], m[1] * m[5] - m[2] * m[4],
            m[5] * m[6] - m[3] * m[8], m[0] * m[8] - m[2] * m[6], m[2] * m[3] - m[0] * m[5],
            m[3] * m[7] - m[4] * m[6], m[1] * m[6] - m[0] * m[7], m[0] * m[4] - m[1] * m[3]]


def disc_of(c):
    p = _doubled(c, 0)
    q = _doubled(c, 6)
    ap, aq = _adj3(p), _adj3(q)
    trpq = sum(ap[3 * i + k] * q[3 * k + i] for i in range(3) for k in range(3))
    trpq2 = sum(p[3 * i + k] * aq[3 * k + i] for i in range(3) for k in range(3))
    a, b, cc, d = _det3(p) // 2, -trpq // 2, trpq2 // 2, -_det3(q) // 2
    return b * b * cc * cc - 4 * a * cc ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * cc * d


def _transvect3(c, i, j, s):
    out = [0] * 12
    for h in (0, 6):
        m = _doubled(c, h)
        for t in range(3):
            m[3 * i + t] += s * m[3 * j + t]
        for t in range(3):
            m[3 * t + i] += s * m[3 * t + j]
        out[h:h + 6] = [m[0] // 2, m[4] // 2, m[8] // 2, m[1], m[2], m[5]]
    return out


def _norm(c):
    return sum(v * v for v in c)


def _move(c, mv):
    s = 1 if mv & 1 else -1
    if mv < 12:
        k = mv >> 1
        i = k // 2
        return _transvect3(c, i, (i + 1 + k % 2) % 3, s)
    if mv < 14:
        return [c[k] + s * c[6 + k] for k in range(6)] + list(c[6:])
    return list(c[:6]) + [c[6 + k] + s * c[k] for k in range(6)]


def is_locally_minimal(c):
    n0 = _norm(c)
    return all(_norm(_move(c, mv)) >= n0 for mv in range(16))


def scan_ball(norm_bound, disc_bound, local_min=True):
    """Same contract and cuts as the compiled scan."""
    R = isqrt(norm_bound)
    out = []
    visited = 0
    rng = range(-R, R + 1)
    for a11 in range(R + 1):
        for a22 in range(-a11, a11 + 1):
            for a33 in range(-abs(a22), abs(a22) + 1):
                s3 = a11 * a11 + a22 * a22 + a33 * a33
                if s3 > norm_bound:
                    continue
                for a12, a13, a23 in itertools.product(range(R + 1), range(R + 1), rng):
                    na = s3 + a12 * a12 + a13 * a13 + a23 * a23
                    if na > norm_bound:
                        continue
                    nbmax = min(na, norm_bound - na)
                    A = (a11, a22, a33, a12, a13, a23)
                    rb = isqrt(nbmax)
                    rr = range(-rb, rb + 1)
                    for b in itertools.product(range(rb + 1), rr, rr, rr, rr, rr):
                        nb = _norm(b)
                        if nb > nbmax:
                            continue
                        visited += 1
                        c = A + b
                        d = disc_of(c)
                        if d == 0 or abs(d) > disc_bound:
                            continue
                        if local_min and not is_locally_minimal(c):
                            continue
                        out.append(c)
    return out, visited


def sp_min(c):
    best = tuple(c)
    for src, sgn in _SP:
        t = [sgn[k] * c[src[k]] for k in range(6)]
        t2 = [sgn[k] * c[6 + src[k]] for k in range(6)]
        for a, b in ((t, t2), (t2, t)):
            for sa in (1, -1):
                for sb in (1, -1):
                    u = tuple(sa * v for v in a) + tuple(sb * v for v in b)
                    if u < best:
                        best = u
    return best


def _descend(c, max_steps):
    n0 = _norm(c)
    steps = 0
    while True:
        best = None
        nb = n0
        for mv in range(16):
            t = _move(c, mv)
            n1 = _norm(t)
            if n1 < nb:
                nb, best = n1, t
        if best is None:
            return c, steps
        c, n0 = best, nb
        steps += 1
        if steps > max_steps:
            return c, -1


def canonical(coeffs, plateau_budget=4096, max_steps=100000, kick=1):
    """Norm descent, plateau closure and signed-permutation minimum; see the compiled twin."""
    c = list(coeffs)
    status = 0
    while True:
        c, steps = _descend(c, max_steps)
        if steps < 0:
            return tuple(c), 2
        n0 = _norm(c)
        start = sp_min(c)
        seen = {start}
        frontier = [start]
        improved = None
        while frontier and improved is None:
            cur = frontier.pop()
            for mv in range(16):
                t = _move(cur, mv)
                n1 = _norm(t)
                if n1 < n0:
                    improved = t
                    break
                if kick and n1 > n0:
                    for mv2 in range(16):
                        t2 = _move(t, mv2)
                        if _norm(t2) < n0:
                            improved = t2
                            break
                    if improved is not None:
                        break
                    continue
                if n1 == n0:
                    key = sp_min(t)
                    if key not in seen:
                        seen.add(key)
                        frontier.append(key)
                        if len(seen) > plateau_budget:
                            status = 1
                            frontier = []
                            break
        if improved is not None:
            c = improved
            continue
        return min(seen), status
