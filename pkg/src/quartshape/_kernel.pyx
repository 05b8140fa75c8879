# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan of the coefficient ball for pairs with small discriminant."""

cdef extern from *:
    """
    typedef __int128 i128;
    static inline i128 qs_mul(i128 a, i128 b) { return a * b; }
    static inline double qs_to_double(i128 a) { return (double)a; }
    """
    ctypedef long long i128
    double qs_to_double(i128 a)

ctypedef long long i64


cdef inline i64 det3(i64 *m):
    return (m[0] * (m[4] * m[8] - m[5] * m[7])
            - m[1] * (m[3] * m[8] - m[5] * m[6])
            + m[2] * (m[3] * m[7] - m[4] * m[6]))


cdef inline void doubled(const i64 *c, i64 *m):
    m[0] = 2 * c[0]; m[4] = 2 * c[1]; m[8] = 2 * c[2]
    m[1] = c[3]; m[3] = c[3]
    m[2] = c[4]; m[6] = c[4]
    m[5] = c[5]; m[7] = c[5]


cdef inline void adj3(i64 *m, i64 *a):
    a[0] = m[4] * m[8] - m[5] * m[7]
    a[1] = m[2] * m[7] - m[1] * m[8]
    a[2] = m[1] * m[5] - m[2] * m[4]
    a[3] = m[5] * m[6] - m[3] * m[8]
    a[4] = m[0] * m[8] - m[2] * m[6]
    a[5] = m[2] * m[3] - m[0] * m[5]
    a[6] = m[3] * m[7] - m[4] * m[6]
    a[7] = m[1] * m[6] - m[0] * m[7]
    a[8] = m[0] * m[4] - m[1] * m[3]


cdef i128 disc12(const i64 *c):
    cdef i64 p[9]
    cdef i64 q[9]
    cdef i64 ap[9]
    cdef i64 aq[9]
    cdef i64 trpq = 0, trpq2 = 0
    cdef int i, k
    doubled(c, p)
    doubled(c + 6, q)
    adj3(p, ap)
    adj3(q, aq)
    for i in range(3):
        for k in range(3):
            trpq += ap[3 * i + k] * q[3 * k + i]
            trpq2 += p[3 * i + k] * aq[3 * k + i]
    cdef i128 a = det3(p) // 2
    cdef i128 b = -trpq // 2
    cdef i128 cc = trpq2 // 2
    cdef i128 d = -det3(q) // 2
    return b * b * cc * cc - 4 * a * cc * cc * cc - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * cc * d


cdef inline void transvect3(const i64 *c, i64 *out, int i, int j, int s):
    # substitute variables so that the doubled matrix becomes g P g^t, g = I + s E_ij
    cdef i64 m[9]
    cdef int h, t
    cdef i64 r[9]
    for h in range(2):
        doubled(c + 6 * h, m)
        for t in range(3):
            m[3 * i + t] += s * m[3 * j + t]
        for t in range(3):
            m[3 * t + i] += s * m[3 * t + j]
        out[6 * h + 0] = m[0] // 2
        out[6 * h + 1] = m[4] // 2
        out[6 * h + 2] = m[8] // 2
        out[6 * h + 3] = m[1]
        out[6 * h + 4] = m[2]
        out[6 * h + 5] = m[5]


cdef inline i64 norm12(const i64 *c):
    cdef i64 s = 0
    cdef int k
    for k in range(12):
        s += c[k] * c[k]
    return s


cdef int locally_minimal(const i64 *c, i64 n0):
    cdef i64 t[12]
    cdef int i, j, s, k
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for s in (-1, 1):
                transvect3(c, t, i, j, s)
                if norm12(t) < n0:
                    return 0
    for s in (-1, 1):
        for k in range(6):
            t[k] = c[k] + s * c[6 + k]
            t[6 + k] = c[6 + k]
        if norm12(t) < n0:
            return 0
        for k in range(6):
            t[k] = c[k]
            t[6 + k] = c[6 + k] + s * c[k]
        if norm12(t) < n0:
            return 0
    return 1


def scan_ball(long long norm_bound, long long disc_bound, bint local_min=True):
    """Coefficient tuples with sum of squares <= norm_bound, 0 < |disc| <= disc_bound.

    Only one representative of each orbit of the signed permutations of variables and
    of (A, B) is guaranteed to be visited; the cuts are
    |A|^2 >= |B|^2, |a11| >= |a22| >= |a33|, a11 >= 0, a12 >= 0, a13 >= 0, b11 >= 0.
    Returns (list of 12-tuples, number of ball points visited).
    """
    cdef i64 c[12]
    cdef i64 R = 0
    while (R + 1) * (R + 1) <= norm_bound:
        R += 1
    cdef i64 na, nb, rem
    cdef long long visited = 0
    cdef i128 d
    cdef i64 a11, a22, a33, a12, a13, a23, b11, b22, b33, b12, b13, b23
    cdef i64 s1, s2, s3, s4, s5, t1, t2, t3, t4, t5, nbmax
    out = []
    for a11 in range(0, R + 1):
        s1 = a11 * a11
        for a22 in range(-a11, a11 + 1):
            s2 = s1 + a22 * a22
            if s2 > norm_bound:
                continue
            for a33 in range(-abs(a22), abs(a22) + 1):
                s3 = s2 + a33 * a33
                if s3 > norm_bound:
                    continue
                for a12 in range(0, R + 1):
                    s4 = s3 + a12 * a12
                    if s4 > norm_bound:
                        break
                    for a13 in range(0, R + 1):
                        s5 = s4 + a13 * a13
                        if s5 > norm_bound:
                            break
                        for a23 in range(-R, R + 1):
                            na = s5 + a23 * a23
                            if na > norm_bound:
                                continue
                            nbmax = norm_bound - na
                            if na < nbmax:
                                nbmax = na
                            c[0] = a11; c[1] = a22; c[2] = a33; c[3] = a12; c[4] = a13; c[5] = a23
                            for b11 in range(0, R + 1):
                                t1 = b11 * b11
                                if t1 > nbmax:
                                    break
                                for b22 in range(-R, R + 1):
                                    t2 = t1 + b22 * b22
                                    if t2 > nbmax:
                                        continue
                                    for b33 in range(-R, R + 1):
                                        t3 = t2 + b33 * b33
                                        if t3 > nbmax:
                                            continue
                                        for b12 in range(-R, R + 1):
                                            t4 = t3 + b12 * b12
                                            if t4 > nbmax:
                                                continue
                                            for b13 in range(-R, R + 1):
                                                t5 = t4 + b13 * b13
                                                if t5 > nbmax:
                                                    continue
                                                for b23 in range(-R, R + 1):
                                                    if t5 + b23 * b23 > nbmax:
                                                        continue
                                                    visited += 1
                                                    c[6] = b11; c[7] = b22; c[8] = b33
                                                    c[9] = b12; c[10] = b13; c[11] = b23
                                                    d = disc12(c)
                                                    if d == 0 or d > disc_bound or d < -disc_bound:
                                                        continue
                                                    if local_min and not locally_minimal(c, na + t5 + b23 * b23):
                                                        continue
                                                    out.append((a11, a22, a33, a12, a13, a23,
                                                                b11, b22, b33, b12, b13, b23))
    return out, visited


def disc_of(coeffs):
    cdef i64 c[12]
    cdef int k
    for k in range(12):
        c[k] = coeffs[k]
    cdef i128 d = disc12(c)
    cdef i128 base = 1000000000000000000
    cdef long long hi = <long long>(d // base)
    cdef long long lo = <long long>(d % base)
    return int(hi) * 1000000000000000000 + int(lo)


def is_locally_minimal(coeffs):
    cdef i64 c[12]
    cdef int k
    for k in range(12):
        c[k] = coeffs[k]
    return bool(locally_minimal(c, norm12(c)))


# ------------------------------------------------------------------ canonical forms

cdef int SP_SRC[48][6]
cdef int SP_SGN[48][6]
cdef int _sp_ready = 0
cdef int SLOT[3][3]


cdef void _init_signed_perms():
    global _sp_ready
    cdef int perms[6][3]
    cdef int idx = 0, pi, sm, k, i, j
    cdef int pr[6][3]
    pr[0][:] = [0, 1, 2]; pr[1][:] = [0, 2, 1]; pr[2][:] = [1, 0, 2]
    pr[3][:] = [1, 2, 0]; pr[4][:] = [2, 0, 1]; pr[5][:] = [2, 1, 0]
    SLOT[0][:] = [0, 3, 4]; SLOT[1][:] = [3, 1, 5]; SLOT[2][:] = [4, 5, 2]
    cdef int ii[6]
    cdef int jj[6]
    ii[:] = [0, 1, 2, 0, 0, 1]
    jj[:] = [0, 1, 2, 1, 2, 2]
    cdef int e[3]
    for pi in range(6):
        for sm in range(8):
            e[0] = -1 if sm & 1 else 1
            e[1] = -1 if sm & 2 else 1
            e[2] = -1 if sm & 4 else 1
            for k in range(6):
                i = ii[k]; j = jj[k]
                # new coefficient (i, j) comes from old (pi(i), pi(j)) times signs
                SP_SRC[idx][k] = SLOT[pr[pi][i]][pr[pi][j]]
                SP_SGN[idx][k] = e[i] * e[j]
            idx += 1
    _sp_ready = 1


cdef inline int lex_less(const i64 *a, const i64 *b):
    cdef int k
    for k in range(12):
        if a[k] != b[k]:
            return a[k] < b[k]
    return 0


cdef void sp_min_c(const i64 *c, i64 *best):
    """Lexicographically least image under signed permutations of variables and of (A, B)."""
    cdef i64 t[12]
    cdef i64 u[12]
    cdef int s, k, sw, sa, sb
    for k in range(12):
        best[k] = c[k]
    for s in range(48):
        for k in range(6):
            t[k] = SP_SGN[s][k] * c[SP_SRC[s][k]]
            t[6 + k] = SP_SGN[s][k] * c[6 + SP_SRC[s][k]]
        for sw in range(2):
            for sa in (-1, 1):
                for sb in (-1, 1):
                    for k in range(6):
                        if sw:
                            u[k] = sa * t[6 + k]
                            u[6 + k] = sb * t[k]
                        else:
                            u[k] = sa * t[k]
                            u[6 + k] = sb * t[6 + k]
                    if lex_less(u, best):
                        for k in range(12):
                            best[k] = u[k]


cdef inline void apply_move(const i64 *c, i64 *t, int mv):
    """Moves 0..11: GL3 transvections; 12..15: GL2 transvections."""
    cdef int k, i, j, s
    if mv < 12:
        s = 1 if mv & 1 else -1
        k = mv >> 1
        i = k // 2
        j = (i + 1 + (k % 2)) % 3
        transvect3(c, t, i, j, s)
    else:
        s = 1 if mv & 1 else -1
        if mv < 14:
            for k in range(6):
                t[k] = c[k] + s * c[6 + k]
                t[6 + k] = c[6 + k]
        else:
            for k in range(6):
                t[k] = c[k]
                t[6 + k] = c[6 + k] + s * c[k]


cdef int descend(i64 *c, int max_steps):
    """Greedy steepest descent in place; returns steps taken or -1 on budget exhaustion."""
    cdef i64 t[12]
    cdef i64 bestt[12]
    cdef i64 n0, nb, n1
    cdef int mv, k, steps = 0, found
    n0 = norm12(c)
    while True:
        found = 0
        nb = n0
        for mv in range(16):
            apply_move(c, t, mv)
            n1 = norm12(t)
            if n1 < nb:
                nb = n1
                found = 1
                for k in range(12):
                    bestt[k] = t[k]
        if not found:
            return steps
        for k in range(12):
            c[k] = bestt[k]
        n0 = nb
        steps += 1
        if steps > max_steps:
            return -1


def canonical(coeffs, int plateau_budget=4096, int max_steps=100000, int kick=1):
    """Norm descent, plateau closure and signed-permutation minimum.

    Returns (tuple, status) with status 0 = ok, 1 = plateau budget exceeded,
    2 = descent budget exceeded.
    """
    if not _sp_ready:
        _init_signed_perms()
    cdef i64 c[12]
    cdef i64 t[12]
    cdef i64 t2[12]
    cdef i64 m[12]
    cdef i64 best[12]
    cdef i64 n0, n1
    cdef int k, mv, mv2, status = 0, improved
    for k in range(12):
        c[k] = coeffs[k]
    while True:
        if descend(c, max_steps) < 0:
            return tuple(c[k] for k in range(12)), 2
        n0 = norm12(c)
        sp_min_c(c, m)
        start = tuple(m[k] for k in range(12))
        seen = {start}
        frontier = [start]
        improved = 0
        while frontier and not improved:
            cur = frontier.pop()
            for k in range(12):
                c[k] = cur[k]
            for mv in range(16):
                apply_move(c, t, mv)
                n1 = norm12(t)
                if n1 < n0:
                    improved = 1
                    break
                if kick and n1 > n0:
                    # two-step escape over a one-move ridge
                    for mv2 in range(16):
                        apply_move(t, t2, mv2)
                        if norm12(t2) < n0:
                            for k in range(12):
                                t[k] = t2[k]
                            improved = 1
                            break
                    if improved:
                        break
                    continue
                if n1 == n0:
                    sp_min_c(t, m)
                    key = tuple(m[k] for k in range(12))
                    if key not in seen:
                        seen.add(key)
                        frontier.append(key)
                        if len(seen) > plateau_budget:
                            status = 1
                            frontier = []
                            break
        if improved:
            for k in range(12):
                c[k] = t[k]
            continue
        return min(seen), status


def sp_min(coeffs):
    """Least image of a 12-tuple under the signed permutations."""
    if not _sp_ready:
        _init_signed_perms()
    cdef i64 c[12]
    cdef i64 m[12]
    cdef int k
    for k in range(12):
        c[k] = coeffs[k]
    sp_min_c(c, m)
    return tuple(m[k] for k in range(12))
