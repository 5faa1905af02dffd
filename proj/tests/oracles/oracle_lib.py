# Shared mpmath helpers for the reference-value generator.
import itertools, mpmath as mp
mp.mp.dps = 50

def qp(a, q, m=None):
    if m is None:
        return mp.qp(a, q)
    if m >= 0:
        r = mp.mpf(1)
        for k in range(m): r *= (1 - a*q**k)
        return r
    r = mp.mpf(1)
    for k in range(1, -m+1): r *= (1 - a*q**(-k))
    return 1/r

def hat(g):
    a,b,c,d = g
    return [(a+b+c+d)/2,(a+b-c-d)/2,(a-b+c-d)/2,(a-b-c+d)/2]

def cplus(x, q, g, gr):
    n=len(x); r=mp.mpf(1)
    for j in range(n):
        for k in range(j+1,n):
            r *= qp(q**(1+x[j]+x[k]),q)*qp(q**(1+x[j]-x[k]),q)/(qp(q**(1+g+x[j]+x[k]),q)*qp(q**(1+g+x[j]-x[k]),q))
        den = 1
        for s in gr: den *= qp(q**(1+s+x[j]),q)
        r *= qp(q**(1+2*x[j]),q)/den
    return r

def mac_term(z, lam, q, g, gr):
    x=[z[i]+lam[i] for i in range(len(z))]
    return 1/(cplus(x,q,g,gr)*cplus([-v for v in x],q,g,gr))

def rhsM(n,q,g,gr):
    r=1
    for j in range(1,n+1):
        num = qp(q,q)*qp(q**(1+j*g),q)
        for a,b in itertools.combinations(range(4),2): num*=qp(q**(1+(n-j)*g+gr[a]+gr[b]),q)
        r *= num/(qp(q**(1+g),q)*qp(q**(1+(2*n-j-1)*g+sum(gr)),q))
    return r

def normMq(n,q,g,gr,use_rho_typo=False):
    h=hat(gr); rh=[(n-j)*g+h[0] for j in range(1,n+1)]; rho=[(n-j)*g+gr[0] for j in range(1,n+1)]
    r=1
    for j in range(n):
        for k in range(j+1,n):
            r*= qp(q**(1+g+rh[j]+rh[k]),q)*qp(q**(1+g+rh[j]-rh[k]),q)/(qp(q**(1+rh[j]+rh[k]),q)*qp(q**(1+rh[j]-rh[k]),q))
            p = rho if use_rho_typo else rh
            r*= qp(q**(1-g+rh[j]+rh[k]),q)*qp(q**(1-g+rh[j]-rh[k]),q)/(qp(q**(1+p[j]+p[k]),q)*qp(q**(1+rh[j]-rh[k]),q))
        num=1
        for s in h: num*=qp(q**(1+s+rh[j]),q)*qp(q**(1-s+rh[j]),q)
        r*=num/qp(q**(1+2*rh[j]),q)**2
    return r

