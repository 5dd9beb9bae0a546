#!/usr/bin/env python3
"""Regenerates the JSON fixture catalog.

Hand-built lattices are written out directly; toric surfaces are converted
from their fans (minimal resolution Y, contracted rays, boundary characters).

    python3 catalog/generate.py [outdir]
"""
import json
import math
import os
import sys
from fractions import Fraction as F

OUT = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))


def q(x):
    x = F(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qv(v):
    return [q(x) for x in v]


def affine(const, slope):
    return {"const": q(const), "slope": q(slope)}


def det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dotp(m, u):
    return m[0] * u[0] + m[1] * u[1]


# ---------------------------------------------------------------- surfaces

class Lattice:
    def __init__(self, name, basis, gram, canonical, mori, contracted=(), disc=None, doc=""):
        self.name, self.basis, self.gram = name, basis, [[F(x) for x in r] for r in gram]
        self.canonical = [F(x) for x in canonical]
        self.mori = [(n, [F(x) for x in c]) for n, c in mori]
        self.contracted = list(contracted)
        self.disc = {k: F(v) for k, v in (disc or {}).items()}
        self.doc = doc

    def cls(self, name):
        return dict(self.mori)[name]

    def doc_json(self):
        return {
            "description": self.doc,
            "basis": self.basis,
            "gram": [qv(r) for r in self.gram],
            "canonical": qv(self.canonical),
            "mori": [{"name": n, "class": qv(c)} for n, c in self.mori],
            "contracted": self.contracted,
            "k_discrepancies": {k: q(v) for k, v in self.disc.items()},
            "degree": "9" if self.name == "P2" else "5",
        }


def unit(n, i, s=1):
    v = [0] * n
    v[i] = s
    return v


def vadd(*vs):
    return [sum(x) for x in zip(*vs)]


def vscale(s, v):
    return [s * x for x in v]


def blowup_p2(n, doc, name, extra_mori=(), roots=(), minus1=None):
    basis = ["H"] + [f"E{i}" for i in range(1, n + 1)]
    gram = [[1 if i == j == 0 else (-1 if i == j else 0) for j in range(n + 1)] for i in range(n + 1)]
    canonical = [-3] + [1] * n
    mori = list(minus1 or []) + list(extra_mori)
    return Lattice(name, basis, gram, canonical, mori, [r for r in roots], {r: 0 for r in roots}, doc)


def sigma5():
    H = unit(5, 0)
    E = [unit(5, i) for i in range(1, 5)]
    mori = [(f"E{i+1}", E[i]) for i in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            mori.append((f"L{i+1}{j+1}", vadd(H, vscale(-1, E[i]), vscale(-1, E[j]))))
    mori.append(("Q", vadd(vscale(2, H), *[vscale(-1, e) for e in E])))
    return Lattice("Sigma5", ["H", "E1", "E2", "E3", "E4"],
                   [[1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, 0, -1, 0, 0], [0, 0, 0, -1, 0], [0, 0, 0, 0, -1]],
                   [-3, 1, 1, 1, 1], mori, doc="Smooth quintic del Pezzo surface: P2 blown up at four general points; ten lines.")


def ade(kind):
    # P2 blown up at four points in special position; roots are contracted with discrepancy 0
    roots = {
        "A1": [("R34", [0, 0, 0, 1, -1])],
        "A2": [("R12", [0, 1, -1, 0, 0]), ("R23", [0, 0, 1, -1, 0])],
        "A3": [("R12", [0, 1, -1, 0, 0]), ("R23", [0, 0, 1, -1, 0]), ("R34", [0, 0, 0, 1, -1])],
        "A4": [("R12", [0, 1, -1, 0, 0]), ("R23", [0, 0, 1, -1, 0]), ("R34", [0, 0, 0, 1, -1]),
               ("R0", [1, -1, -1, -1, 0])],
    }[kind]
    G = [[1, 0, 0, 0, 0]] + [[0] * (i + 1) + [-1] + [0] * (3 - i) for i in range(4)]
    K = [-3, 1, 1, 1, 1]

    def pr(a, b):
        return sum(a[i] * G[i][j] * b[j] for i in range(5) for j in range(5))

    minus1 = []
    for d in range(0, 3):
        for ms in __import__("itertools").product(range(-1, 3), repeat=4):
            c = [d] + [-m for m in ms]
            if pr(c, c) == -1 and pr(K, c) == -1 and all(pr(c, r) >= 0 for _, r in roots):
                minus1.append(c)

    def nm(c):
        s = ("%dH" % c[0] if c[0] > 1 else ("H" if c[0] == 1 else ""))
        for i in range(4):
            if c[i + 1]:
                s += ("+" if c[i + 1] > 0 else "-") + ("" if abs(c[i + 1]) == 1 else str(abs(c[i + 1]))) + "E%d" % (i + 1)
        return s.lstrip("+")

    mori = [(nm(c), c) for c in minus1] + roots
    names = {"A1": "X1", "A2": "X2", "A3": "X3", "A4": "X4"}
    return Lattice(names[kind], ["H", "E1", "E2", "E3", "E4"], G, K, mori,
                   [n for n, _ in roots], {n: 0 for n, _ in roots},
                   doc=f"Quintic del Pezzo surface with one {kind} point, as P2 blown up at four points "
                       f"in special position with the (-2)-curves contracted.")


def xt_lattice():
    G = [[-4, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]] + [[0, 0] + [-1 if j == i else 0 for j in range(4)] for i in range(4)]
    e = lambda i: unit(6, 2 + i)
    f = unit(6, 1)
    mori = [("sigma", unit(6, 0))] + [(f"F{i+1}", e(i)) for i in range(4)] + \
           [(f"r{i+1}", vadd(f, vscale(-1, e(i)))) for i in range(4)] + [("Cprime", [1, 4, -1, -1, -1, -1])]
    return Lattice("Xt", ["sigma", "f", "E1", "E2", "E3", "E4"], G, [-2, -6, 1, 1, 1, 1], mori,
                   ["sigma"], {"sigma": F(-1, 2)},
                   doc="F4 blown up at four points on distinct fibres; the (-4)-section sigma is contracted "
                       "to a 1/4(1,1) point. Cprime is the section sigma+4f-E1-..-E4.")


def xprime_lattice():
    G = [[-2, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]] + [[0, 0] + [-1 if j == i else 0 for j in range(4)] for i in range(4)]
    mori = [("F1", unit(6, 2)), ("F2", unit(6, 3)), ("F3", unit(6, 4)), ("G", unit(6, 5)),
            ("Lprime", [0, 1, 0, 0, 0, -1]), ("sigma", [1, 0, 0, 0, 0, -1]), ("l", [0, 1, -1, -1, -1, 0])]
    return Lattice("Xprime", ["s", "f", "E1", "E2", "E3", "G"], G, [-2, -4, 1, 1, 1, 1], mori,
                   ["sigma", "l"], {"sigma": F(-1, 2), "l": F(-1, 2)},
                   doc="F2 blown up at three points of one fibre and one point of the (-2)-section; the two "
                       "(-3)-curves sigma and l form a 1/8(1,3) point. Lprime is the fibre through G.")


def xq_lattice():
    n = 5
    H = unit(6, 0)
    E = [unit(6, i) for i in range(1, 6)]
    mori = [("l", vadd(H, *[vscale(-1, e) for e in E]))] + [(f"E{i+1}", E[i]) for i in range(n)] + \
           [(f"M{i+1}", vadd(H, vscale(-1, E[i]))) for i in range(n)]
    return Lattice("Xq", ["H", "E1", "E2", "E3", "E4", "E5"],
                   [[1 if i == j == 0 else (-1 if i == j else 0) for j in range(6)] for i in range(6)],
                   [-3, 1, 1, 1, 1, 1], mori, ["l"], {"l": F(-1, 2)},
                   doc="P2 blown up at five points r1..r5 of a line l; the (-4)-curve l is contracted to a "
                       "1/4(1,1) point R. M_i is the line through r_i and a fixed point r off l.")


def index3_lattice():
    G = [[-2, 1] + [0] * 5, [1, 0] + [0] * 5] + [[0, 0] + [-1 if j == i else 0 for j in range(5)] for i in range(5)]
    mori = [("sigma", unit(7, 0)), ("l", [0, 1, -1, -1, -1, -1, -1])] + [(f"F{i+1}", unit(7, 2 + i)) for i in range(5)]
    return Lattice("Index3", ["s", "f", "E1", "E2", "E3", "E4", "E5"], G, [-2, -4, 1, 1, 1, 1, 1], mori,
                   ["sigma", "l"], {"sigma": F(-1, 3), "l": F(-2, 3)},
                   doc="F2 blown up at five points of one fibre; sigma and l are contracted to a 1/9(1,2) point.")


def p2_lattice():
    return Lattice("P2", ["H"], [[1]], [-3], [("line", [1])],
                   doc="The projective plane; rank one, the line is the only curve class.")


class Toric:
    """Smooth toric surface Y (rays in cyclic order) with a subset of rays kept on X."""

    def __init__(self, name, yrays, xrays, names=None, doc=""):
        ang = lambda r: math.atan2(r[1], r[0]) % (2 * math.pi)
        self.rays = sorted(yrays, key=ang)
        self.xrays = sorted(xrays, key=ang)
        self.name, self.doc = name, doc
        n = len(self.rays)
        for i in range(n):
            assert det(self.rays[i], self.rays[(i + 1) % n]) == 1, ("not smooth", self.rays[i])
        self.names = {r: (names or {}).get(r, f"D({r[0]},{r[1]})") for r in self.rays}
        # b_i with u_{i-1}+u_{i+1} = b_i u_i
        self.selfint = {}
        for i, u in enumerate(self.rays):
            a, c = self.rays[i - 1], self.rays[(i + 1) % n]
            s = (a[0] + c[0], a[1] + c[1])
            b = s[0] // u[0] if u[0] else s[1] // u[1]
            assert (b * u[0], b * u[1]) == s
            self.selfint[u] = -b
        # basis: all rays except the first two (which form a Z-basis of N)
        u0, u1 = self.rays[0], self.rays[1]
        d = det(u0, u1)
        # dual basis m0, m1 with <m0,u0>=1, <m0,u1>=0 ...
        self.m0 = (F(u1[1], d), F(-u1[0], d))
        self.m1 = (F(-u0[1], d), F(u0[0], d))
        self.basis_rays = self.rays[2:]
        # contracted rays and discrepancies
        self.disc = {}
        for u in self.rays:
            if u in self.xrays:
                continue
            al, be = self.x_cone(u)
            self.disc[u] = al + be - 1
        assert all(self.disc[u] <= 0 for u in self.disc)

    def x_cone(self, xi):
        n = len(self.xrays)
        for i in range(n):
            u, v = self.xrays[i], self.xrays[(i + 1) % n]
            d = det(u, v)
            a, b = F(det(xi, v), d), F(det(u, xi), d)
            if a >= 0 and b >= 0:
                return a, b
        raise ValueError("no cone")

    def y_cone(self, xi):
        n = len(self.rays)
        for i in range(n):
            u, v = self.rays[i], self.rays[(i + 1) % n]
            a, b = det(xi, v), det(u, xi)
            if a >= 0 and b >= 0:
                return u, v, a, b
        raise ValueError("no cone")

    def A(self, u):
        return 1 + self.disc.get(u, 0)

    def inter(self, u, v):
        if u == v:
            return self.selfint[u]
        n = len(self.rays)
        i, j = self.rays.index(u), self.rays.index(v)
        return 1 if (i - j) % n in (1, n - 1) else 0

    def coords(self, div):
        """div: {ray: coefficient} -> coordinates in the basis D_2..D_{n-1}."""
        a0, a1 = F(div.get(self.rays[0], 0)), F(div.get(self.rays[1], 0))
        return [F(div.get(u, 0)) - a0 * dotp(self.m0, u) - a1 * dotp(self.m1, u) for u in self.basis_rays]

    def lattice(self):
        basis = [self.names[u] for u in self.basis_rays]
        gram = [[self.inter(u, v) for v in self.basis_rays] for u in self.basis_rays]
        K = self.coords({u: -1 for u in self.rays})
        mori = [(self.names[u], self.coords({u: 1})) for u in self.rays if self.selfint[u] <= 0]
        contracted = [self.names[u] for u in self.rays if u in self.disc]
        disc = {self.names[u]: self.disc[u] for u in self.disc}
        return Lattice(self.name, basis, gram, K, mori, contracted, disc, self.doc)


# ---------------------------------------------------------------- boundaries on toric surfaces

def shift_chars(T, ms, known):
    """Translate characters so that the X-multiplicity along two rays matches `known`."""
    (u, ku), (v, kv) = list(known.items())
    # min<m+s,u>+2 = ku  ->  <s,u> = ku-2-min<m,u>
    ru = ku - 2 - min(dotp(m, u) for m in ms)
    rv = kv - 2 - min(dotp(m, v) for m in ms)
    d = det(u, v)
    s = (F(ru * v[1] - rv * u[1], d), F(u[0] * rv - v[0] * ru, d))
    return [(m[0] + s[0], m[1] + s[1]) for m in ms]


def toric_boundary(T, ms, zname):
    """Components: toric curves of X with positive multiplicity plus the residual non-toric part."""
    comps = []
    for u in T.xrays:
        mult = min(dotp(m, u) for m in ms) + 2
        assert mult >= 0 and mult == int(mult), (u, mult)
        if mult:
            comps.append({"name": T.names[u], "class": qv(T.coords({u: 1})), "mult": q(mult)})
    zdiv = {u: -min(dotp(m, u) for m in ms) for u in T.rays}
    zc = T.coords(zdiv)
    if any(zc):
        comps.append({"name": zname, "class": qv(zc), "mult": "1"})
    return comps


def toric_valuation(T, ms, ray, zname, tag="plain"):
    """Valuation along the primitive vector `ray`: a curve of Y or a weighted blow-up of a Y-fixed point."""
    if ray in T.rays:
        name = T.names[ray]
        ordb = min(dotp(m, ray) for m in ms) + 2 * T.A(ray)
        return {"name": name, "kind": "curve", "curve": name, "a_x": q(T.A(ray)), "ord_b": q(ordb), "tag": tag}
    u, v, a, b = T.y_cone(ray)
    ords = {T.names[u]: q(a), T.names[v]: q(b)}
    zo = min(dotp(m, ray) for m in ms) - a * min(dotp(m, u) for m in ms) - b * min(dotp(m, v) for m in ms)
    if zo:
        ords[zname] = q(zo)
    A = a * T.A(u) + b * T.A(v)
    ordb = min(dotp(m, ray) for m in ms) + 2 * A
    return {"name": f"E({ray[0]},{ray[1]})", "kind": "blowup", "weights": [a, b], "ord": ords, "extra": [],
            "a_x": q(A), "ord_b": q(ordb), "tag": tag}


# ---------------------------------------------------------------- fixtures

SURFACES = {}
FIXTURES = {}
POLY = []


def surface(L):
    SURFACES[L.name] = L
    return L


def pub(what):
    return "published: " + what


DER = "derived-by-oracle"


def fixture(family, fid, surf, boundary, val, A=None, S=None, beta=None, wall=None, prov=None, profile=None,
            desc=""):
    prov = prov or {}
    fx = {
        "id": fid,
        "description": desc,
        "surface": surf.name,
        "boundary": boundary,
        "valuation": val,
        "expected": {
            "A": affine(*A) if A else "derived",
            "S": affine(S, -2 * S if boundary["components"] else 0) if S is not None else "derived",
            "beta": affine(*beta) if beta else "derived",
            "wall": q(wall) if wall is not None else None,
        },
        "provenance": {
            "A": prov.get("A", DER),
            "S": prov.get("S", DER),
            "beta": prov.get("beta", DER),
            "wall": prov.get("wall", DER),
        },
    }
    if profile:
        fx["expected"]["profile"] = [{"t_lo": q(a), "t_hi": q(b), "q0": q(c0), "q1": q(c1), "q2": q(c2)}
                                     for a, b, c0, c1, c2 in profile]
        fx["provenance"]["profile"] = prov.get("profile", DER)
    FIXTURES.setdefault(family, []).append(fx)


def comp(name, cls, mult):
    return {"name": name, "class": qv(cls), "mult": q(mult)}


def curve_val(name, a_x, ord_b, tag="plain", cls=None):
    v = {"name": name, "kind": "curve", "a_x": q(a_x), "ord_b": q(ord_b), "tag": tag}
    if cls is None:
        v["curve"] = name
    else:
        v["class"] = qv(cls)
    return v


def blowup_val(name, weights, ords, a_x, ord_b, extra=(), tag="plain"):
    return {"name": name, "kind": "blowup", "weights": list(weights), "ord": {k: q(x) for k, x in ords.items()},
            "extra": [{"name": n, "class": qv(c), "ord": q(o)} for n, c, o in extra],
            "a_x": q(a_x), "ord_b": q(ord_b), "tag": tag}


def build():
    # ---- Sigma5
    S5 = surface(sigma5())
    c = S5.cls
    H = [1, 0, 0, 0, 0]
    D117 = {"name": "D_1_17", "components": [comp("L12", c("L12"), 4), comp("L34", c("L34"), 2),
                                             comp("E1", c("E1"), 2), comp("E2", c("E2"), 2)]}
    fixture("Sigma5", "Sigma5/D_1_17/L1", S5, D117, curve_val("L12", 1, 4),
            A=(1, -4), S=F(13, 15), wall=F(1, 17),
            prov={"A": pub("A(L1) = 1-4c for the first wall"), "S": pub("S(L1) = 13(1-2c)/15"),
                  "wall": pub("first wall 1/17"), "profile": pub("vol(-K-tL1) = 5-2t-t^2, 2(2-t)^2")},
            profile=[(0, 1, 5, -2, -1), (1, 2, 8, -8, 2)],
            desc="D = 4L1+2L2+2E1+2E2 with L1 = line p1p2, L2 = line p3p4; valuation ord_L1.")
    lines_q = [(f"Lq{i}", vadd(H, vscale(-1, unit(5, i))), 1) for i in range(1, 5)]
    Qq = ("Qq", [2, -1, -1, -1, -1], 1)
    D14 = {"name": "D_1_4", "components": [comp(n, cl, 1) for n, cl, _ in lines_q] + [comp("Qq", Qq[1], 1)]}
    fixture("Sigma5", "Sigma5/D_1_4/E", S5, D14,
            blowup_val("E_q", (1, 1), {n: o for n, _, o in lines_q + [Qq]}, 2, 5, extra=lines_q + [Qq]),
            A=(2, -5), S=F(3, 2), wall=F(1, 4),
            prov={"A": pub("A(E) = 2-5c"), "S": pub("S(E) = 3(1-2c)/2"), "wall": pub("wall 1/4"),
                  "profile": pub("vol = 5-t^2, (5-2t)^2")},
            profile=[(0, 2, 5, 0, -1), (2, F(5, 2), 25, -20, 4)],
            desc="D = four lines through q and p_i plus the conic through q,p1..p4; E = blow-up of q.")

    # ---- (1,2) blow-up of Sigma5 at p, the degeneration to X'
    L1 = H
    C1 = [2, -1, -1, -1, 0]
    C2 = [2, -1, -1, 0, -1]
    D1341 = {"name": "D_13_41", "components": [comp("Lp", L1, 1), comp("L34", c("L34"), 1),
                                               comp("C1", C1, 1), comp("C2", C2, 1)]}
    extra = [("Lp1", [1, -1, 0, 0, 0], 1), ("Lp2", [1, 0, -1, 0, 0], 1), ("Lp", L1, 2), ("C1", C1, 2), ("C2", C2, 2)]
    fixture("Xprime", "Xprime/D_13_41/E", S5, D1341,
            blowup_val("E_p", (1, 2), {"L34": 1, "Lp1": 1, "Lp2": 1, "Lp": 2, "C1": 2, "C2": 2}, 3, 7, extra=extra),
            A=(3, -7), S=F(32, 15), wall=F(13, 41),
            prov={"A": pub("A(E) = 3-7c for the (1,2) blow-up at p"), "S": pub("S(E) = 32(1-2c)/15"),
                  "wall": pub("wall 13/41"),
                  "profile": pub("vol = 5-t^2/2, 3-(t-2)^2/3, (8t^2-32t+50)/3")},
            profile=[(0, 2, 5, 0, F(-1, 2)), (2, 3, F(5, 3), F(4, 3), F(-1, 3)), (3, F(7, 2), F(50, 3), F(-32, 3), F(8, 3))],
            desc="Sigma5 with D = Lp + L34 + C1 + C2 (Lp a general line through p = L1 cap L34, C_i conics tangent "
                 "to Lp at p); E is the weight (1,2) blow-up of p, weight 2 along Lp.")

    XP = surface(xprime_lattice())
    cp = XP.cls
    Cp = [[1, 2, -1, 0, 0, 0], [1, 2, 0, -1, 0, 0], [1, 2, 0, 0, -1, 0]]
    DXP = {"name": "Dprime_13_41", "components": [comp(f"Cprime{i+1}", Cp[i], 1) for i in range(3)] +
                                                  [comp("Lprime", cp("Lprime"), 1)]}
    fixture("Xprime", "Xprime/D_13_41/l", XP, DXP, curve_val("l", F(1, 2), 0),
            A=(F(1, 2), 0), S=F(41, 30), wall=F(13, 41),
            prov={"A": pub("A(l) = 1/2"), "S": pub("S(l) = 41(1-2c)/30"), "wall": pub("wall 13/41"),
                  "profile": pub("vol = 5-8t^2/3, (t^2-9t+69/4)/3, (7-2t)^2/8")},
            profile=[(0, F(1, 2), 5, 0, F(-8, 3)), (F(1, 2), F(3, 2), F(23, 4), -3, F(1, 3)),
                     (F(3, 2), F(7, 2), F(49, 8), F(-7, 2), F(1, 2))],
            desc="D' = C'1+C'2+C'3+L' with C'_i = s+2f-E_i and L' = f-G; valuation ord_l over the 1/8(1,3) point.")
    POLY.append({
        "id": "Xprime/D_13_41", "surface": "Xprime", "boundary": DXP, "wall": q(F(13, 41)),
        "description": "Complexity-one pair; l is the only horizontal divisor.",
        "valuations": [
            curve_val("l", F(1, 2), 0, "horizontal"),
            curve_val("Cprime1", 1, 1, "vertical", Cp[0]),
            curve_val("Cprime2", 1, 1, "vertical", Cp[1]),
            curve_val("Cprime3", 1, 1, "vertical", Cp[2]),
            curve_val("Lprime", 1, 1, "vertical"),
            curve_val("sigma", F(1, 2), 0, "vertical"),
            curve_val("G", 1, 0, "vertical"),
            curve_val("F1", 1, 0, "vertical"),
            curve_val("section", 1, 0, "vertical", [1, 2, 0, 0, 0, 0]),
        ]})

    # toric model with an extra A2 point (three points of the fibre collide)
    Tp = Toric("XprimeA2", [(0, 1), (-1, 0), (-2, -1), (-3, -2), (-1, -1), (0, -1), (1, -2), (1, -1)],
               [(0, 1), (-3, -2), (1, -2), (1, -1)],
               {(0, 1): "z", (-3, -2): "F", (-1, -1): "l", (0, -1): "sigma", (1, -2): "G", (1, -1): "x"},
               doc="Toric model of X' when the three fibre points collide curvilinearly: P(1,1,2) with "
                   "coordinates x,y,z; adds an A2 point Q.")
    surface(Tp.lattice())

    def p112(mons):
        return [(a + cc, cc) for a, b, cc in mons]

    for fid, poly, mons, known_z, ray, wall, weight in [
        ("Xprime/D_16_47/F", "x(z^3-yx^5)", [(1, 0, 3), (6, 1, 0)], 0, (-3, -2), F(16, 47), "(0,3,1)"),
        ("Xprime/D_19_53/E", "xz(z^2-yx^3)", [(1, 0, 3), (4, 1, 1)], 1, (-2, -1), F(19, 53), "(0,2,1)"),
    ]:
        ms = shift_chars(Tp, p112(mons), {(1, -1): 1, (0, 1): known_z})
        bnd = {"name": poly, "components": toric_boundary(Tp, ms, "Z")}
        fixture("Xprime", fid, Tp, bnd, toric_valuation(Tp, ms, ray, "Z"), wall=wall,
                prov={"wall": pub(f"wall {q(wall)}")},
                desc=f"Curve {poly} in P(1,1,2); Gm weight {weight}.")

    # ---- Xn (one A1 point) and the ADE complexity-one surfaces
    X1 = surface(ade("A1"))
    c1 = X1.cls
    Dn = {"name": "D_n", "components": [comp("l1", [1, -1, -1, 0, 0], 4), comp("l2", [1, 0, 0, -1, -1], 2),
                                        comp("F1", [0, 1, 0, 0, 0], 2), comp("F2", [0, 0, 1, 0, 0], 2)]}
    fixture("Xn", "Xn/D_1_17/l1", X1, Dn, curve_val("l1", 1, 4, cls=[1, -1, -1, 0, 0]),
            A=(1, -4), S=F(13, 15), beta=(F(2, 15), F(-34, 15)), wall=F(1, 17),
            prov={"A": pub("A(l1) = 1-4c"), "S": pub("S(l1) = 13(1-2c)/15"), "beta": pub("beta(l1) = 2(1-17c)/15"),
                  "wall": pub("wall 1/17")},
            desc="D_n = 4l1+2l2+2F1+2F2; l1 the line q1q2, horizontal for the Gm-action.")
    fixture("Xn", "Xn/D_1_17/E", X1, Dn, curve_val("R34", 1, 0),
            A=(1, 0), S=F(17, 15), beta=(F(-2, 15), F(34, 15)), wall=F(1, 17),
            prov={"A": pub("A(E) = 1"), "S": pub("S(E) = 17(1-2c)/15"), "beta": pub("beta(E) = 2(17c-1)/15"),
                  "wall": pub("wall 1/17")},
            desc="Exceptional (-2)-curve over the A1 point, which D_n avoids.")
    POLY.append({
        "id": "Xn/D_1_17", "surface": "X1", "boundary": Dn, "wall": q(F(1, 17)),
        "description": "Gm scaling between q3 and the line l1.",
        "valuations": [
            curve_val("l1", 1, 4, "horizontal", [1, -1, -1, 0, 0]),
            curve_val("R34", 1, 0, "horizontal"),
            curve_val("l2", 1, 2, "vertical", [1, 0, 0, -1, -1]),
            curve_val("F1", 1, 2, "vertical", [0, 1, 0, 0, 0]),
            curve_val("F2", 1, 2, "vertical", [0, 0, 1, 0, 0]),
            curve_val("F4", 1, 0, "vertical", [0, 0, 0, 0, 1]),
            curve_val("line_q3", 1, 0, "vertical", [1, 0, 0, -1, 0]),
        ]})

    # ADE rows: valuation = crepant curve of largest S over the singular point
    chain_max = {"A1": "R34", "A2": "R23", "A3": "R23", "A4": "R34"}
    rows = [("A1", 0, F(1, 17)), ("A1", 1, F(2, 19)), ("A2", 0, F(1, 7)), ("A2", 1, F(2, 9)),
            ("A3", 0, F(2, 9)), ("A4", 0, F(2, 7)), ("A3", 1, F(4, 13)), ("A4", 1, F(4, 11))]
    for kind, through, wall in rows:
        X = surface(ade(kind))
        K2 = vscale(-2, X.canonical)
        if kind == "A1" and through:
            bnd = {"name": "Dprime_2_19",
                   "components": [comp("l1", [1, -1, -1, 0, 0], 3), comp("l2", [1, 0, 0, -1, -1], 1),
                                  comp("F1", [0, 1, 0, 0, 0], 1), comp("F2", [0, 0, 1, 0, 0], 1),
                                  comp("l3", [1, 0, 0, -1, 0], 1), comp("l4", [1, 0, 0, -1, 0], 1)]}
        elif through:
            Z = vadd(*[X.cls(n) for n in X.contracted])
            bnd = {"name": "C_through_P", "components": [comp("C", vadd(K2, vscale(-1, Z)), 1)]}
        else:
            bnd = {"name": "C_avoiding_P", "components": [comp("C", K2, 1)]}
        tag = "mult1" if through else "P_notin_C"
        fixture("ADE", f"ADE/table1/{X.name}_{tag}", X, bnd, curve_val(chain_max[kind], 1, through), wall=wall,
                prov={"wall": pub(f"ADE wall table, {X.name}, wall {q(wall)}")},
                desc=f"{X.name} ({kind}); boundary {'through P with mult 1' if through else 'avoiding P'}; "
                     f"valuation ord of the exceptional curve {chain_max[kind]}.")

    # ---- X_{1,1}: two A1 points, P2 coordinates x,y,z
    T11 = Toric("X11", [(1, 0), (2, 1), (1, 1), (0, 1), (-1, 0), (-2, -1), (-1, -1)],
                [(1, 0), (2, 1), (0, 1), (-2, -1), (-1, -1)],
                {(1, 0): "lx", (0, 1): "l", (-1, -1): "ly", (2, 1): "F2", (-2, -1): "F1", (1, 1): "Q", (-1, 0): "P"},
                doc="Toric quintic del Pezzo surface with two A1 points: weighted (2,1) blow-ups of P2 at "
                    "(0:1:0) and (1:0:0).")
    surface(T11.lattice())

    def p2m(mons):
        return [(a - 2, cc - 2) for a, b, cc in mons]

    for poly, mons, w, ray, beta, wall in [
        ("x2y2(x-ay)(y-bx)", [(3, 3, 0), (4, 2, 0), (2, 4, 0)], "(1,1,0)", (0, 1), (F(-4, 15), F(38, 15)), F(2, 19)),
        ("x2y2(x2-yz)", [(4, 2, 0), (2, 3, 1)], "(1,2,0)", (1, 2), (F(-1, 5), F(7, 5)), F(1, 7)),
        ("xy2(z2y-x3)", [(1, 3, 2), (4, 2, 0)], "(1,3,0)", (2, 3), (F(-8, 15), F(46, 15)), F(4, 23)),
        ("xy2z(x2-yz)", [(3, 2, 1), (1, 3, 2)], "(1,2,0)", (1, 2), (F(-2, 5), F(9, 5)), F(2, 9)),
    ]:
        ms = p2m(mons)
        bnd = {"name": poly, "components": toric_boundary(T11, ms, "Z")}
        fixture("X11", f"X11/table2/{poly}", T11, bnd, toric_valuation(T11, ms, ray, "Z"), beta=beta, wall=wall,
                prov={"beta": pub(f"X11 wall table, curve {poly}"), "wall": pub(f"X11 wall table, wall {q(wall)}")},
                desc=f"Curve {poly}, Gm weight {w}.")

    # ---- X_{1,2}: A1 + A2
    T12 = Toric("X12", [(2, 1), (1, 1), (0, 1), (-1, -1), (-1, -2), (0, -1), (1, 0)],
                [(2, 1), (0, 1), (-1, -1), (-1, -2)],
                {(2, 1): "F4", (1, 1): "F1", (0, 1): "Lz", (-1, -1): "Ly", (-1, -2): "F2", (0, -1): "F3",
                 (1, 0): "Lx"},
                doc="Toric quintic del Pezzo surface with an A1 point P and an A2 point Q.")
    surface(T12.lattice())
    X12rows = [
        ("y2(xy-z2)(axy-z2)", [(1, 3, 2), (2, 4, 0), (0, 2, 4)], "(0,2,1)", (2, 1), (F(-8, 15), F(46, 15)), F(4, 23)),
        ("y2z(z3-x2y)", [(0, 2, 4), (2, 3, 1)], "(0,3,1)", (3, 2), (F(-2, 3), F(10, 3)), F(1, 5)),
        ("y2(yx3-z4)", [(3, 3, 0), (0, 2, 4)], "(0,4,1)", (4, 3), (F(-4, 5), F(18, 5)), F(2, 9)),
        ("xy2z2(y-z)", [(1, 3, 2), (1, 2, 3)], "(0,1,1)", (1, 0), (F(-4, 15), F(23, 15)), F(2, 9)),
        ("y2xz(xy-z2)", [(2, 3, 1), (1, 2, 3)], "(0,2,1)", (2, 1), (F(-14, 15), F(58, 15)), F(7, 29)),
        ("y2x(xy2-z3)", [(2, 4, 0), (1, 2, 3)], "(0,3,2)", (3, 1), (F(-8, 15), F(31, 15)), F(8, 31)),
        ("yxz2(y2-xz)", [(1, 3, 2), (2, 1, 3)], "(0,1,2)", (1, -1), (F(-2, 3), F(7, 3)), F(2, 7)),
        ("xy2(z3-yx2)", [(1, 2, 3), (3, 3, 0)], "(0,3,1)", (3, 2), (F(-2, 3), F(7, 3)), F(2, 7)),
    ]
    for poly, mons, w, ray, beta, wall in X12rows:
        ms = p2m(mons)
        bnd = {"name": poly, "components": toric_boundary(T12, ms, "Z")}
        fixture("X12", f"X12/table3/{poly}", T12, bnd, toric_valuation(T12, ms, ray, "Z"), beta=beta, wall=wall,
                prov={"beta": pub(f"X12 wall table, curve {poly}"), "wall": pub(f"X12 wall table, wall {q(wall)}")},
                desc=f"Curve {poly}, Gm weight {w}.")
    ms = p2m(X12rows[0][1])
    fixture("X12", "X12/D_4_23/F3", T12, {"name": "Dprime_4_23", "components": toric_boundary(T12, ms, "Z")},
            toric_valuation(T12, ms, (2, 1), "Z"),
            A=(1, 0), S=F(23, 15), beta=(F(-8, 15), F(46, 15)), wall=F(4, 23),
            prov={"A": pub("A(F3) = 1"), "S": pub("S(F3) = 23(1-2c)/15"), "beta": pub("beta(F3) = 2(23c-4)/15"),
                  "wall": pub("wall 4/23"), "profile": pub("vol = 5-2t+t^2/6, 2(2-t/2)^2")},
            profile=[(0, 3, 5, -2, F(1, 6)), (3, 4, 8, -4, F(1, 2))],
            desc="D'_{4/23} = C'1+C'2+2L'; the divisor called F3 is the toric curve of ray (2,1), the one "
                 "whose volume profile is 5-2t+t^2/6, 2(2-t/2)^2.")

    # ---- X_t
    XT = surface(xt_lattice())
    ct = XT.cls
    Dt = {"name": "Dprime_11_52", "components": [comp("Cprime", ct("Cprime"), 3)] +
                                                [comp(f"F{i}", ct(f"F{i}"), 1) for i in range(1, 5)]}
    fixture("Xt", "Xt/D_11_52/Cprime", XT, Dt, curve_val("Cprime", 1, 3),
            A=(1, -3), S=F(19, 30), wall=F(11, 52),
            prov={"A": pub("A(C') = 1-3c"), "S": pub("S(C') = 19(1-2c)/30"), "wall": pub("wall 11/52"),
                  "profile": pub("vol = 5-4t, (3-2t)^2")},
            profile=[(0, 1, 5, -4, 0), (1, F(3, 2), 9, -12, 4)],
            desc="D' = 3C' + F1+F2+F3+F4; C' horizontal.")
    fixture("Xt", "Xt/D_11_52/E", XT, Dt, curve_val("sigma", F(1, 2), 0),
            A=(F(1, 2), 0), S=F(13, 15), wall=F(11, 52),
            prov={"A": pub("A(E) = 1/2 over the 1/4(1,1) point"), "S": pub("S(E) = 13(1-2c)/15"),
                  "wall": pub("wall 11/52")},
            desc="Exceptional curve over the 1/4(1,1) point P, which D' avoids.")
    POLY.append({
        "id": "Xt/D_11_52", "surface": "Xt", "boundary": Dt, "wall": q(F(11, 52)),
        "description": "Gm acting on the fibres; C' and the curve over P are fixed.",
        "valuations": [
            curve_val("Cprime", 1, 3, "horizontal"),
            curve_val("sigma", F(1, 2), 0, "horizontal"),
            curve_val("F1", 1, 1, "vertical"),
            curve_val("F2", 1, 1, "vertical"),
            curve_val("r1", 1, 0, "vertical"),
            curve_val("r2", 1, 0, "vertical"),
            curve_val("fibre", 1, 0, "vertical", [0, 1, 0, 0, 0, 0]),
        ]})

    Tt3 = Toric("Xt_u3v", [(1, 0), (0, 1), (-1, 4), (-1, 3), (0, -1), (1, -3), (1, -2), (1, -1)],
                [(1, 0), (-1, 4), (-1, 3), (0, -1), (1, -3)],
                {(1, 0): "l", (0, 1): "sigma", (0, -1): "Cprime", (-1, 3): "Dv", (-1, 4): "Dv2"},
                doc="Toric degeneration of X_t (three of the four points collide), leading form u^3v.")
    Tt4 = Toric("Xt_u4", [(1, 0), (0, 1), (-1, 4), (0, -1), (1, -4), (1, -3), (1, -2), (1, -1)],
                [(1, 0), (-1, 4), (0, -1), (1, -4)],
                {(1, 0): "l", (0, 1): "sigma", (0, -1): "Cprime", (-1, 4): "Dv"},
                doc="Toric degeneration of X_t (three of the four points collide), leading form u^4.")
    surface(Tt3.lattice())
    surface(Tt4.lattice())
    for poly, T, k, mons, w, beta, wall, note in [
        ("y2v(yu3-xv3)", Tt3, 3, [(0, 3), (1, 0)], (-3, 3, -1, 1), (F(-17, 15), F(64, 15)), F(17, 64), ""),
        ("y2uv(yu2-xv2)", Tt3, 3, [(0, 3), (1, 1)], (-2, 2, -1, 1), (F(-23, 15), F(76, 15)), F(23, 76), ""),
        ("y2(yu4-xv4)", Tt4, 4, [(0, 4), (1, 0)], (-4, 4, -1, 1), (F(-23, 15), F(76, 15)), F(23, 76), ""),
        ("yv(y2u3-x2v3)", Tt3, 3, [(0, 3), (2, 0)], (-3, 3, -2, 2), (F(-7, 3), F(20, 3)), F(7, 20),
         " The printed curve yuv(y2u3-x2v3) has bidegree (3,5); the uv factor is read as v."),
        ("y2u(yu3-xv3)", Tt4, 4, [(0, 4), (1, 1)], (-3, 3, -1, 1), (F(-7, 3), F(20, 3)), F(7, 20), ""),
    ]:
        ms = [(k * a + b, a) for a, b in mons]
        vray = (-1, k)
        ms = shift_chars(T, ms, {(0, -1): min(3 - a for a, b in mons), vray: min(4 - b for a, b in mons)})
        xi1 = w[2] - w[3]
        xi2 = (w[0] - w[1]) - k * xi1
        g = math.gcd(xi1, xi2)
        ray = (-xi1 // g, -xi2 // g)
        bnd = {"name": poly, "components": toric_boundary(T, ms, "Z")}
        fixture("Xt", f"Xt/table4/{poly}", T, bnd, toric_valuation(T, ms, ray, "Z"), beta=beta, wall=wall,
                prov={"beta": pub(f"X_t wall table, curve {poly}"), "wall": pub(f"X_t wall table, wall {q(wall)}")},
                desc=f"Curve {poly} on P1xP1 coordinates (x,y;u,v), Gm weight {w}.{note}")

    # ---- X_q
    XQ = surface(xq_lattice())
    cq = XQ.cls
    Dq = {"name": "D_q", "components": [comp(f"M{i}", cq(f"M{i}"), 1) for i in range(1, 6)]}
    Eq = blowup_val("E_r", (1, 1), {f"M{i}": 1 for i in range(1, 6)}, 2, 5)
    fixture("Xq", "Xq/D_1_4/E", XQ, Dq, Eq, A=(2, -5), S=F(3, 2), wall=F(1, 4),
            prov={"A": pub("A(E) = 2-5c"), "S": pub("S(E) = 3(1-2c)/2, same computation as on Sigma5"),
                  "wall": pub("wall 1/4")},
            desc="D_q = sum of the lines r r_i; E the blow-up of r.")
    fixture("Xq", "Xq/D_1_4/R", XQ, Dq, curve_val("l", F(1, 2), 0), A=(F(1, 2), 0), wall=F(1, 4),
            prov={"A": pub("A = 1/2 over the 1/4(1,1) point R"), "wall": pub("wall 1/4")},
            desc="Exceptional curve over R.")
    POLY.append({
        "id": "Xq/D_1_4", "surface": "Xq", "boundary": Dq, "wall": q(F(1, 4)),
        "description": "Gm scaling between r and l; the blow-up of r and the curve over R are fixed.",
        "valuations": [
            dict(Eq, tag="horizontal"),
            curve_val("l", F(1, 2), 0, "horizontal"),
            curve_val("E1", 1, 0, "vertical"),
            curve_val("E2", 1, 0, "vertical"),
            curve_val("M1", 1, 1, "vertical"),
            curve_val("M2", 1, 1, "vertical"),
            curve_val("line_r", 1, 0, "vertical", [1, 0, 0, 0, 0, 0]),
        ]})

    def xq_toric(k1, k2):
        ys = [(i, -1) for i in range(k1)]
        zs = [(i, 1) for i in range(1, k2 + 1)]
        xr = [(0, 1), (-1, -1)] + ([ys[-1]] if k1 else []) + ([zs[-1]] if k2 else [])
        names = {(1, 0): "l", (0, 1): "Lz", (-1, -1): "Ly"}
        return Toric(f"Xq_{k1}_{k2}", [(1, 0), (0, 1), (-1, -1)] + ys + zs, xr, names,
                     doc=f"P2 blown up at five points of the line x=0, {k1} infinitely near at (0:0:1) and {k2} "
                         f"at (0:1:0), with l and the (-2)-chains contracted.")

    for poly, mons, w, (k1, k2), wall in [
        ("xz4+y3z2", [(1, 0, 4), (0, 3, 2)], (3, 1, 0), (3, 2), F(19, 68)),
        ("xyz3+y3z2", [(1, 1, 3), (0, 3, 2)], (2, 1, 0), (3, 2), F(23, 76)),
        ("xz4+y4z", [(1, 0, 4), (0, 4, 1)], (4, 1, 0), (4, 1), F(9, 28)),
        ("x2z3+y3z2", [(2, 0, 3), (0, 3, 2)], (3, 2, 0), (3, 2), F(31, 92)),
        ("xz4+y5", [(1, 0, 4), (0, 5, 0)], (5, 1, 0), (5, 0), F(7, 20)),
        ("xyz3+y4z", [(1, 1, 3), (0, 4, 1)], (3, 1, 0), (4, 1), F(13, 36)),
        ("xyz3+y5", [(1, 1, 3), (0, 5, 0)], (4, 1, 0), (5, 0), F(11, 28)),
    ]:
        T = xq_toric(k1, k2)
        if T.name not in SURFACES:
            surface(T.lattice())
        ms = [(a, cc) for a, b, cc in mons]
        ms = shift_chars(T, ms, {(0, 1): min(cc for a, b, cc in mons), (-1, -1): min(b for a, b, cc in mons)})
        xi = (w[0] - w[1], w[2] - w[1])
        g = math.gcd(*xi)
        ray = (xi[0] // g, xi[1] // g)
        bnd = {"name": poly, "components": toric_boundary(T, ms, "Z")}
        fixture("Xq", f"Xq/table5/{poly}", T, bnd, toric_valuation(T, ms, ray, "Z"), wall=wall,
                prov={"wall": pub(f"X_q wall table, wall {q(wall)}")},
                desc=f"Plane quintic {poly} with the five points on x=0; Gm weight {w}; valuation reconstructed "
                     f"from the weight.")

    # ---- index 3 exclusion
    X3 = surface(index3_lattice())
    D3 = {"name": "2sigma'+2l'", "components": [comp("sigma'", [1, 2, 0, 0, 0, 0, 0], 2),
                                                 comp("l'", [0, 1, 0, 0, 0, 0, 0], 2)]}
    fixture("Index3", "Index3/exclusion/l", X3, D3, curve_val("l", F(1, 3), F(2, 3)),
            A=(F(1, 3), F(-2, 3)), S=F(11, 9), wall=None,
            prov={"A": pub("A(l) <= (1-2c)/3, equality for D = 2sigma'+2l'"), "S": pub("S(l) = 11(1-2c)/9"),
                  "wall": pub("never K-semistable for 0<c<1/2"),
                  "profile": pub("vol = 5-9t^2/2, (10/3-t)^2/2")},
            profile=[(0, F(1, 3), 5, 0, F(-9, 2)), (F(1, 3), F(10, 3), F(50, 9), F(-10, 3), F(1, 2))],
            desc="Index-3 surface with a 1/9(1,2) point; beta(l) < 0 on all of (0,1/2).")

    # ---- P2 sanity
    P2 = surface(p2_lattice())
    fixture("P2", "P2/sanity/line", P2, {"name": "empty", "components": []}, curve_val("line", 1, 0),
            A=(1, 0), S=F(1), beta=(0, 0), wall=None,
            prov={"A": DER, "S": DER, "beta": DER, "wall": DER},
            desc="Line on P2 with empty boundary: A = S = 1.")


WALLS = [
    ("1/17", True, "Sigma5 degenerating to X1 (A1)"), ("2/19", False, "X1 and X11"), ("1/7", False, "X2 and X11"),
    ("4/23", False, "X11 and X12"), ("1/5", False, "X12"), ("11/52", True, "X_t, 1/4(1,1) point"),
    ("2/9", False, "X2, X3, X11, X12"), ("7/29", False, "X12"), ("1/4", True, "X_q, 1/4(1,1) point"),
    ("8/31", False, "X12"), ("17/64", False, "X_t degenerate"), ("19/68", False, "X_q degenerate"),
    ("2/7", False, "X4, X12"), ("23/76", False, "X_t degenerate, X_q degenerate"), ("4/13", False, "X3"),
    ("13/41", False, "X', 1/8(1,3) point"), ("9/28", False, "X_q degenerate"), ("31/92", False, "X_q degenerate"),
    ("16/47", False, "X' with an A2 point"), ("7/20", False, "X_t degenerate, X_q degenerate"),
    ("19/53", False, "X' with an A2 point"), ("13/36", False, "X_q degenerate"), ("4/11", False, "X4"),
    ("11/28", False, "X_q degenerate"),
]


def main():
    build()
    os.makedirs(os.path.join(OUT, "surfaces"), exist_ok=True)
    os.makedirs(os.path.join(OUT, "fixtures"), exist_ok=True)
    os.makedirs(os.path.join(OUT, "polystability"), exist_ok=True)

    def dump(path, obj):
        with open(os.path.join(OUT, path), "w") as fh:
            json.dump(obj, fh, indent=1)
            fh.write("\n")

    for name, L in sorted(SURFACES.items()):
        dump(f"surfaces/{name}.json", L.doc_json())
    for fam, fxs in sorted(FIXTURES.items()):
        dump(f"fixtures/{fam}.json", {"family": fam, "fixtures": fxs})
    for p in POLY:
        dump(f"polystability/{p['id'].replace('/', '_')}.json", p)
    dump("walls.json", {"walls": [{"wall": w, "divisorial": d, "description": s} for w, d, s in WALLS]})
    dump("manifest.json", {
        "version": 1,
        "surfaces": {n: f"surfaces/{n}.json" for n in sorted(SURFACES)},
        "fixtures": [f"fixtures/{f}.json" for f in sorted(FIXTURES)],
        "polystability": [f"polystability/{p['id'].replace('/', '_')}.json" for p in POLY],
        "walls": "walls.json",
    })
    print(f"{len(SURFACES)} surfaces, {sum(len(v) for v in FIXTURES.values())} fixtures, {len(POLY)} polystability sets")


if __name__ == "__main__":
    main()
