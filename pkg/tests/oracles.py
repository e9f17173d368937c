"""Independent sympy-side references used by the tests."""
import sympy
from gmpy2 import mpq

from hdqva.fdcalc import Poly

t = sympy.Symbol("t")


def sym(name):
    return sympy.Symbol(name)


def poly_to_sympy(p: Poly):
    out = sympy.Integer(0)
    for exps, c in p.to_dict().items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for v, e in zip(p.vars, exps):
            term *= sym(v) ** e
        out += term
    return sympy.expand(out)


def tseries_to_sympy(s):
    """Sum of t^k * (coefficient RatFun) as a sympy expression, truncation dropped."""
    out = sympy.Integer(0)
    if s is None:
        return out
    for k, rf in s.coeffs.items():
        out += t ** k * ratfun_to_sympy(rf)
    return out


def ratfun_to_sympy(rf):
    num = poly_to_sympy(rf.num)
    den = sympy.Integer(1)
    for form, e in rf.den:
        den *= sum(c * sym(v) for v, c in form) ** e
    return num / den


def geometric_expansion(expr, big, small, order):
    """expr expanded in |big| > |small| up to small^(order-1), by substituting
    small = x*big and taking a plain series in x."""
    x = sympy.Symbol("x")
    e = sympy.together(expr.subs(sym(small), x * sym(big)))
    ser = sympy.series(e, x, 0, order).removeO()
    return sympy.expand(ser.subs(x, sym(small) / sym(big)))


def in_window(expr, window):
    """Keep the monomials of a Laurent polynomial whose exponents lie in the window."""
    out = sympy.Integer(0)
    gens = [sym(v) for v in window]
    for term in sympy.Add.make_args(sympy.expand(expr)):
        powers = term.as_powers_dict()
        if all(lo <= powers.get(g, 0) <= hi for g, (lo, hi) in zip(gens, window.values())):
            out += term
    return out


def q(c) -> sympy.Rational:
    c = mpq(c)
    return sympy.Rational(int(c.numerator), int(c.denominator))


def lattice_x3_residue(ma, mb, mc, n, weight, T, sigma=None):
    """Res_{z1 = z2} (z1 - z2)^n X_{z1,z2,0}(E(ma) (x) E(mb) (x) E(mc)) for the main example, by sympy.

    X = exp(sum_k (ma z1^{k+1} + mb z2^{k+1}) g_k / (k+1)) sigma(z1,z2)^{ma mb} z1^{ma mc} z2^{mb mc},
    expanded in the g_k up to the given weight.  Returns {g exponent tuple: expr in z2, t}."""
    z1, z2, w, s = sym("z1"), sym("z2"), sym("w"), sym("s")
    gs = [sym("g%d" % k) for k in range(weight)]
    if sigma is None:
        sigma = (z1 - z2) / (1 - t * z2 / z1)
    expo = sum((ma * z1 ** (k + 1) + mb * z2 ** (k + 1)) * gs[k] * s ** (k + 1) / (k + 1) for k in range(weight))
    ex = sympy.series(sympy.exp(expo), s, 0, weight + 1).removeO()
    f = sympy.expand(ex) * sigma ** (ma * mb) * z1 ** (ma * mc) * z2 ** (mb * mc) * (z1 - z2) ** n
    f = f.subs(z1, z2 + w)
    order = max(0, -(ma * mb + n))
    lau = sympy.series(f, w, 0, 0 if order == 0 else 1).removeO() if order else 0
    res = lau.coeff(w, -1) if order else sympy.Integer(0)
    res = sympy.expand(sympy.series(sympy.expand(res), t, 0, T + 1).removeO())
    out = {}
    for term in sympy.Add.make_args(sympy.expand(res.subs(s, 1))):
        if term == 0:
            continue
        powers = term.as_powers_dict()
        key = tuple(int(powers.get(g, 0)) for g in gs)
        while key and not key[-1]:
            key = key[:-1]
        out[key] = out.get(key, 0) + term / sympy.Mul(*[g ** e for g, e in zip(gs, key)])
    return {k: sympy.simplify(v) for k, v in out.items() if sympy.simplify(v) != 0}
