# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled monodromy-tuple counter.

Enumerates tuples (a_1, b_1, ..., a_h, b_h, t_1, ..., t_r) in S_d with
every t_k a transposition, forms

    s = t_r ... t_1 [a_1, b_1] ... [a_h, b_h]

and histograms the cycle type of s, optionally only over tuples that
generate a transitive subgroup.  Mirrors ``basehurwitz._oracle_py.histogram``.
"""
from libc.stdlib cimport calloc, malloc, free
from libc.string cimport memcpy

cdef enum:
    MAXD = 8
    MAXL = 40


cdef struct State:
    int d
    int h
    int r
    int nperm
    int ntrans
    int *perms       # nperm x d
    int *inverses    # nperm x d
    int *trans       # ntrans x d
    long long *hist  # indexed by the cycle-type code
    long long base_pow[MAXD + 1]
    bint connected
    int prod[MAXL + 1][MAXD]
    int comp[MAXL + 1][MAXD]
    int alpha_idx


cdef inline void _merge(int *comp, const int *p, int d) noexcept nogil:
    cdef int i, j, a, b
    for i in range(d):
        a = comp[i]
        b = comp[p[i]]
        if a != b:
            for j in range(d):
                if comp[j] == b:
                    comp[j] = a


cdef inline bint _transitive(const int *comp, int d) noexcept nogil:
    cdef int i
    for i in range(1, d):
        if comp[i] != comp[0]:
            return False
    return True


cdef inline long long _code(const int *s, int d, const long long *base_pow) noexcept nogil:
    # sum over cycles of (d+1)^(length-1)
    cdef int seen[MAXD]
    cdef int i, j, n
    cdef long long code = 0
    for i in range(d):
        seen[i] = 0
    for i in range(d):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                j = s[j]
                n += 1
            code += base_pow[n - 1]
    return code


cdef void _record(State *st, int level) noexcept nogil:
    if st.connected and not _transitive(st.comp[level], st.d):
        return
    st.hist[_code(st.prod[level], st.d, st.base_pow)] += 1


cdef void _last_transposition(State *st, int level) noexcept nogil:
    cdef int d = st.d
    cdef int k, i
    cdef int *p
    cdef int *src = st.prod[level]
    cdef int *dst = st.prod[level + 1]
    for k in range(st.ntrans):
        p = st.trans + k * d
        if st.connected:
            memcpy(st.comp[level + 1], st.comp[level], d * sizeof(int))
            _merge(st.comp[level + 1], p, d)
            if not _transitive(st.comp[level + 1], d):
                continue
        for i in range(d):
            dst[i] = p[src[i]]
        st.hist[_code(dst, d, st.base_pow)] += 1


cdef void _descend(State *st, int level) noexcept nogil:
    cdef int d = st.d
    cdef int L = 2 * st.h + st.r
    cdef int k, i, a
    cdef int *p
    cdef int *ainv
    cdef int *binv
    cdef int *alpha
    cdef int c[MAXD]
    if level == L:
        _record(st, level)
        return
    if level == L - 1 and level >= 2 * st.h:
        _last_transposition(st, level)
        return
    if level < 2 * st.h:
        for k in range(st.nperm):
            p = st.perms + k * d
            if st.connected:
                memcpy(st.comp[level + 1], st.comp[level], d * sizeof(int))
                _merge(st.comp[level + 1], p, d)
            if level % 2 == 0:
                memcpy(st.prod[level + 1], st.prod[level], d * sizeof(int))
                a = st.alpha_idx
                st.alpha_idx = k
                _descend(st, level + 1)
                st.alpha_idx = a
            else:
                alpha = st.perms + st.alpha_idx * d
                ainv = st.inverses + st.alpha_idx * d
                binv = st.inverses + k * d
                # [a, b] = a b a^-1 b^-1 ; prod <- prod o [a, b]
                for i in range(d):
                    c[i] = alpha[p[ainv[binv[i]]]]
                for i in range(d):
                    st.prod[level + 1][i] = st.prod[level][c[i]]
                _descend(st, level + 1)
    else:
        for k in range(st.ntrans):
            p = st.trans + k * d
            if st.connected:
                memcpy(st.comp[level + 1], st.comp[level], d * sizeof(int))
                _merge(st.comp[level + 1], p, d)
            for i in range(d):
                st.prod[level + 1][i] = p[st.prod[level][i]]
            _descend(st, level + 1)


def _decode(code, d):
    lengths = []
    for n in range(d, 0, -1):
        count, code = divmod(code, (d + 1) ** (n - 1))
        lengths.extend([n] * count)
    return tuple(lengths)


def histogram(int d, int h, int r, bint connected, perms, transpositions):
    """Map cycle type of s -> number of tuples.

    ``perms`` lists all of S_d and ``transpositions`` all 2-cycles, as
    sequences of images.
    """
    if d < 1 or d >= MAXD or 2 * h + r > MAXL:
        raise ValueError("problem outside the compiled kernel's limits")
    cdef State st
    cdef int i, k
    cdef long long size
    st.d = d
    st.h = h
    st.r = r
    st.connected = connected
    st.alpha_idx = 0
    st.nperm = len(perms)
    st.ntrans = len(transpositions)
    st.base_pow[0] = 1
    for i in range(1, MAXD + 1):
        st.base_pow[i] = st.base_pow[i - 1] * (d + 1)
    # largest code: one d-cycle, (d+1)^(d-1), or d fixed points
    size = max(st.base_pow[d - 1], d) + 1
    st.perms = <int *> malloc(max(1, st.nperm * d) * sizeof(int))
    st.inverses = <int *> malloc(max(1, st.nperm * d) * sizeof(int))
    st.trans = <int *> malloc(max(1, st.ntrans * d) * sizeof(int))
    st.hist = <long long *> calloc(size, sizeof(long long))
    try:
        if not (st.perms and st.inverses and st.trans and st.hist):
            raise MemoryError()
        for k, p in enumerate(perms):
            for i in range(d):
                st.perms[k * d + i] = p[i]
                st.inverses[k * d + p[i]] = i
        for k, p in enumerate(transpositions):
            for i in range(d):
                st.trans[k * d + i] = p[i]
        for i in range(d):
            st.prod[0][i] = i
            st.comp[0][i] = i
        with nogil:
            _descend(&st, 0)
        return {_decode(code, d): st.hist[code] for code in range(size) if st.hist[code]}
    finally:
        free(st.perms)
        free(st.inverses)
        free(st.trans)
        free(st.hist)
