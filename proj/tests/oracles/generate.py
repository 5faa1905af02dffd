"""Reference values for the unit and acceptance tests.

Independent mpmath implementation written directly from the product and
series definitions; run with `python3 generate.py` to reproduce the
constants frozen into the C++ tests.
"""
import itertools

import mpmath as mp

from oracle_lib import cplus, hat, mac_term, normMq, qp, rhsM

mp.mp.dps = 60
q = mp.mpf("0.5")
g = mp.mpf("0.35")
gr = [mp.mpf(s) for s in ("0.1", "0.2", "0.3", "0.4")]


def show(name, value):
    print(f"{name} = {mp.nstr(value, 45)}")


def theta(zeta):
    return qp(q, q) * qp(zeta, q) * qp(q / zeta, q)


# n=2 Macdonald term at lambda=(1,0), z=(0.37,0.11)
z2 = [mp.mpf("0.37"), mp.mpf("0.11")]
show("macdonald_term_n2_l10", mac_term(z2, [1, 0], q, g, gr))
show("macdonald_term_n2_l00", mac_term(z2, [0, 0], q, g, gr))

# n=1 Aomoto-Ito summand of the displayed one-variable sum at z=0.37, lambda=2,
# multiplied back by q^{(1+sum g)z}.
z = mp.mpf("0.37")
lam = 2
x = z + lam
s = sum(gr)
summand = q ** ((1 + s) * lam) * (1 - q ** (2 * x))
for c in gr:
    summand *= qp(q ** (1 + c + x), q) / qp(q ** (-c + x), q)
show("aomoto_term_n1_l2", summand * q ** ((1 + s) * z))

# Aomoto factor, n=2 (theta form)
h = hat(gr)
rh = [(2 - j) * g + h[0] for j in (1, 2)]
F = q ** sum((1 + 2 * rh[j]) * z2[j] for j in range(2))
F *= theta(q ** (z2[0] + z2[1])) * theta(q ** (z2[0] - z2[1]))
F /= theta(q ** (-g + z2[0] + z2[1])) * theta(q ** (-g + z2[0] - z2[1]))
for j in range(2):
    den = 1
    for c in gr:
        den *= theta(q ** (-c + z2[j]))
    F *= qp(q, q) ** 3 * theta(q ** (2 * z2[j])) / den
show("aomoto_factor_n2", F)

# Theorem 1 right-hand side, n=2 and n=3
show("macdonald_rhs_n2", rhsM(2, q, g, gr))
show("macdonald_rhs_n2_hat_form", normMq(2, q, g, gr))
show("macdonald_rhs_n3", rhsM(3, q, g, gr))
show("bailey_rhs_n1", rhsM(1, q, 0, gr))


# Gustafson weight at n=2
def gterm(x, gs):
    n = len(x)
    r = mp.mpf(1)
    for j in range(n):
        for k in range(j + 1, n):
            for y in (x[j] + x[k], x[j] - x[k]):
                r /= qp(q ** (1 + y), q) * qp(q ** (1 - y), q)
        num = 1
        for c in gs:
            num *= qp(q ** (1 + c + x[j]), q) * qp(q ** (1 + c - x[j]), q)
        r *= num / (qp(q ** (1 + 2 * x[j]), q) * qp(q ** (1 - 2 * x[j]), q))
    return r


gs = [mp.mpf(v) for v in ("0.1", "0.2", "0.3", "0.4", "0.15", "0.25")]
show("gustafson_term_n2", gterm([z2[0] + 1, z2[1] - 2], gs))
gus_rhs = qp(q, q) ** 2 * mp.fprod(qp(q ** (1 + gs[a] + gs[b]), q) for a, b in itertools.combinations(range(6), 2))
show("gustafson_rhs_n2", gus_rhs / qp(q ** (1 + sum(gs)), q))


# Rogers weight, n=2, reflected couplings
def delta(lam, gg, cs):
    n = len(lam)
    hh = hat(cs)
    rho = [(n - j) * gg + cs[0] for j in range(1, n + 1)]
    rhh = [(n - j) * gg + hh[0] for j in range(1, n + 1)]
    r = q ** sum((1 - 2 * rhh[j]) * lam[j] for j in range(n))
    for j in range(n):
        for k in range(j + 1, n):
            for b, m in ((rho[j] + rho[k], lam[j] + lam[k]), (rho[j] - rho[k], lam[j] - lam[k])):
                r *= (1 - q ** (b + m)) / (1 - q ** b)
                r *= qp(q ** (gg + b), q, m) / qp(q ** (1 - gg + b), q, m)
        r *= (1 - q ** (2 * rho[j] + 2 * lam[j])) / (1 - q ** (2 * rho[j]))
        for c in cs:
            r *= qp(q ** (c + rho[j]), q, lam[j]) / qp(q ** (1 - c + rho[j]), q, lam[j])
    return r


rg = mp.mpf("-0.15")
rgr = [-c for c in gr]
show("rogers_term_n2_l21", delta([2, 1], rg, rgr))
show("rogers_norm_n2", mp.mpf("0.6740095755639012560565774646781037004525"))
show("rogers_norm_n1", mp.mpf("0.9380604515961106906915099378493987229878"))

# q=1 values: (q^w;q)_inf -> 1/Gamma(w)
G = mp.gamma
dgr = [mp.mpf(v) for v in ("2", "1.5", "1.8", "1.7")]


def rhs_q1(n, gg, cs):
    r = mp.mpf(1)
    for j in range(1, n + 1):
        num = G(1 + gg) * G(1 + (2 * n - j - 1) * gg + sum(cs))
        den = G(1 + j * gg)
        for a, b in itertools.combinations(range(4), 2):
            den *= G(1 + (n - j) * gg + cs[a] + cs[b])
        r *= num / den
    return r


show("dougall_rhs_q1", rhs_q1(1, 0, dgr))
show("macdonald_rhs_q1_n2_g1", rhs_q1(2, 1, dgr))
show("recurrence_factor_q1_n2_g1", rhs_q1(2, 1, dgr) / rhs_q1(1, 0, [c + mp.mpf(1) / 2 for c in dgr]))
