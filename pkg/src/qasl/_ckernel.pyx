# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW normal-ordering kernel; mirrors ``_pykernel``."""

cdef dict _insert_cache = {}


def clear_cache():
    _insert_cache.clear()


def cache_size():
    return len(_insert_cache)


cpdef tuple insert(tuple word, long g):
    cdef tuple key = (word, g)
    cdef object res = _insert_cache.get(key)
    if res is not None:
        return <tuple>res
    cdef Py_ssize_t n = len(word)
    if n == 0 or <long>word[n - 1] <= g:
        res = ((word + (g,), 0, 1),)
        _insert_cache[key] = res
        return <tuple>res
    cdef long h = word[n - 1]
    cdef tuple prefix = word[:n - 1]
    cdef long hr = h >> 8, hc = h & 255, gr = g >> 8, gc = g & 255
    cdef long shift = -1 if (hr == gr or hc == gc) else 0
    cdef dict acc = {}
    cdef long e, e1, e2
    cdef object c, c1, c2, k
    cdef tuple w, w1, w2, t1, t2
    cdef long lo, hi
    cdef tuple hsuf = (h,)
    for t1 in insert(prefix, g):
        w = t1[0]
        e = t1[1]
        k = (w + hsuf, e + shift)
        acc[k] = acc.get(k, 0) + t1[2]
    if hr > gr and hc > gc:
        lo = (gr << 8) | hc
        hi = (hr << 8) | gc
        for t1 in insert(prefix, lo):
            w1 = t1[0]
            e1 = t1[1]
            c1 = t1[2]
            for t2 in insert(w1, hi):
                w2 = t2[0]
                e2 = t2[1]
                c = c1 * t2[2]
                e = e1 + e2
                k = (w2, e + 1)
                acc[k] = acc.get(k, 0) - c
                k = (w2, e - 1)
                acc[k] = acc.get(k, 0) + c
    res = tuple([(kk[0], kk[1], v) for kk, v in acc.items() if v])
    _insert_cache[key] = res
    return <tuple>res


cpdef dict mul_word(dict left, tuple word):
    cdef dict cur = left, nxt
    cdef object g, c, v, k
    cdef tuple wk, t2
    cdef long e
    for g in word:
        nxt = {}
        for wk, c in cur.items():
            e = wk[1]
            for t2 in insert(<tuple>wk[0], g):
                k = (t2[0], e + <long>t2[1])
                v = nxt.get(k, 0) + c * t2[2]
                if v:
                    nxt[k] = v
                else:
                    nxt.pop(k, None)
        cur = nxt
    return cur


def normal_form(tuple word):
    return mul_word({((), 0): 1}, word)


cpdef dict multiply(dict a, dict b):
    cdef dict out = {}, part
    cdef tuple wkb, wk
    cdef object cb, c, v, k
    cdef long eb
    for wkb, cb in b.items():
        eb = wkb[1]
        part = mul_word(a, <tuple>wkb[0])
        for wk, c in part.items():
            k = (wk[0], <long>wk[1] + eb)
            v = out.get(k, 0) + c * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out
