"""Independent expansions used as test oracles (generator modes only)."""

from fractions import Fraction

from twisted_zhu import fock
from twisted_zhu.fock import T
from twisted_zhu.scalar import binomial
from twisted_zhu.verify import vacuum_energy
from twisted_zhu.vec import add_into

ONE = Fraction(1)


def virasoro(module, n, w):
    """L(n) w = (1/2) sum_k :a_{n-k} a_k: w (+ vacuum energy when n = 0); n in units."""
    d = fock.deg_units(w)
    out = {}
    k = -d - abs(n) - 2 * T
    k += (module.offset - k) % T
    while k <= d + abs(n) + 2 * T:
        lo, hi = sorted((n - k, k))
        add_into(out, module.generator_mode(lo, module.generator_mode(hi, {w: ONE})), Fraction(1, 2))
        k += T
    if n == 0:
        add_into(out, {w: ONE}, vacuum_energy(module))
    return out


def virasoro_vec(module, n, vec):
    out = {}
    for s, c in vec.items():
        add_into(out, virasoro(module, n, s), c)
    return out


def a_residue(module, alpha, beta_units, vec, terms=12):
    """sum_i C(alpha, i) a_{i - beta} vec for the generator a."""
    out = {}
    for i in range(terms):
        q = i * T - beta_units
        if (q - module.offset) % T:
            continue
        add_into(out, module.generator_mode(q, vec), binomial(alpha, i))
    return out
