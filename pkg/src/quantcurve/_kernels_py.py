"""Pure-Python kernel for sparse exponent-dict arithmetic.

Terms are dicts mapping exponent tuples (ints, possibly negative) to nonzero
Fractions.  These four functions are the hot path of every polynomial ring
in the package; `_kernels_cy.pyx` is the compiled twin with the same
contract, and `kernels.py` picks one at import.
"""

from __future__ import annotations

BACKEND = "python"


def add_terms(a: dict, b: dict) -> dict:
    out = dict(a)
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


def sub_terms(a: dict, b: dict) -> dict:
    out = dict(a)
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


def scale_terms(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def mul_terms(a: dict, b: dict, arity: int) -> dict:
    out: dict = {}
    if len(a) > len(b):
        a, b = b, a
    rng = range(arity)
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple([ka[i] + kb[i] for i in rng])
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
