"""Pure-Python PBW normal-ordering kernel.

Generators X_ij are encoded as ``(i << 8) | j`` so that integer order is the
row-major order.  An element is a flat dict ``{(word, q_exponent): int}``
where ``word`` is a non-decreasing tuple of codes.  ``_ckernel.pyx`` is a
line-for-line typed copy of this module; keep them in sync.
"""

_insert_cache = {}


def clear_cache():
    _insert_cache.clear()


def cache_size():
    return len(_insert_cache)


def insert(word, g):
    """Normal form of ``word * g`` for a normal word; tuple of (word, exp, coeff)."""
    key = (word, g)
    res = _insert_cache.get(key)
    if res is not None:
        return res
    if not word or word[-1] <= g:
        res = ((word + (g,), 0, 1),)
        _insert_cache[key] = res
        return res
    h = word[-1]
    prefix = word[:-1]
    hr = h >> 8
    hc = h & 255
    gr = g >> 8
    gc = g & 255
    acc = {}
    # X_h X_g = q^shift X_g X_h (+ correction when h is strictly south-east of g)
    shift = -1 if (hr == gr or hc == gc) else 0
    for w, e, c in insert(prefix, g):
        k = (w + (h,), e + shift)
        acc[k] = acc.get(k, 0) + c
    if hr > gr and hc > gc:
        lo = (gr << 8) | hc
        hi = (hr << 8) | gc
        # -(q - q^-1) X_{i,l} X_{k,j}
        for w1, e1, c1 in insert(prefix, lo):
            for w2, e2, c2 in insert(w1, hi):
                c = c1 * c2
                e = e1 + e2
                k = (w2, e + 1)
                acc[k] = acc.get(k, 0) - c
                k = (w2, e - 1)
                acc[k] = acc.get(k, 0) + c
    res = tuple((w, e, c) for (w, e), c in acc.items() if c)
    _insert_cache[key] = res
    return res


def mul_word(left, word):
    """Right-multiply a flat element by a (not necessarily normal) word."""
    cur = left
    for g in word:
        nxt = {}
        for (w, e), c in cur.items():
            for w2, e2, c2 in insert(w, g):
                k = (w2, e + e2)
                v = nxt.get(k, 0) + c * c2
                if v:
                    nxt[k] = v
                else:
                    nxt.pop(k, None)
        cur = nxt
    return cur


def normal_form(word):
    return mul_word({((), 0): 1}, word)


def multiply(a, b):
    """Product of two flat elements."""
    out = {}
    for (wb, eb), cb in b.items():
        part = mul_word(a, wb)
        for (w, e), c in part.items():
            k = (w, e + eb)
            v = out.get(k, 0) + c * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out
