"""Sparse vectors: dicts mapping basis state -> exact scalar, zeros never stored."""

from fractions import Fraction


def add_into(acc, vec, coeff=1):
    """acc += coeff * vec (in place); returns acc."""
    if not coeff:
        return acc
    for k, v in vec.items():
        c = acc.get(k)
        new = v * coeff if c is None else c + v * coeff
        if new:
            acc[k] = new
        elif c is not None:
            del acc[k]
    return acc


def add_term(acc, key, coeff):
    if not coeff:
        return acc
    c = acc.get(key)
    new = coeff if c is None else c + coeff
    if new:
        acc[key] = new
    elif c is not None:
        del acc[key]
    return acc


def scale(vec, coeff):
    if not coeff:
        return {}
    return {k: v * coeff for k, v in vec.items()}


def lincomb(*pairs):
    """lincomb((c1, v1), (c2, v2), ...) -> c1*v1 + c2*v2 + ..."""
    acc = {}
    for c, v in pairs:
        add_into(acc, v, c)
    return acc


def sub(a, b):
    return add_into(dict(a), b, -1)


def basis_vec(state, coeff=Fraction(1)):
    return {state: coeff}


def is_zero(vec):
    return not vec
