# cython: language_level=3
"""Compiled twin of _kernels_py.  Same contract, C-level loops.

The values stay Fraction objects; the win is in dict traversal and tuple
assembly, which dominate the pure-Python profile.
"""

BACKEND = "cython"


def add_terms(dict a, dict b):
    cdef dict out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            s = w + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if w is None:
            out[k] = -v
        else:
            s = w - v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def scale_terms(dict a, c):
    cdef dict out = {}
    if not c:
        return out
    for k, v in a.items():
        out[k] = v * c
    return out


def mul_terms(dict a, dict b, Py_ssize_t arity):
    cdef dict out = {}
    cdef Py_ssize_t i
    cdef tuple ka, kb
    cdef list ebuf
    if len(a) > len(b):
        a, b = b, a
    for ka, va in a.items():
        for kb, vb in b.items():
            ebuf = [0] * arity
            for i in range(arity):
                ebuf[i] = ka[i] + kb[i]
            key = tuple(ebuf)
            w = out.get(key)
            if w is None:
                out[key] = va * vb
            else:
                s = w + va * vb
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out
