#!/usr/bin/env python3
"""Independent reference values computed with fractions.

Writes tests/oracle_values.inc: C++ initializers of the form
{basis index, monomial bitmask, "p/q"} for module elements and
{mask, "p/q"} for algebra elements.
"""
from fractions import Fraction as F
from itertools import permutations, product
import os
import sys


class Lie:
    def __init__(self, basis, brackets):
        self.basis = basis
        self.n = len(basis)
        self.c = {}
        for x, y, v in brackets:
            i, j = basis.index(x), basis.index(y)
            for z, coef in v.items():
                k = basis.index(z)
                self.c[(i, j, k)] = F(coef)
                self.c[(j, i, k)] = -F(coef)

    def const(self, i, j, k):
        return self.c.get((i, j, k), F(0))

    def bracket(self, u, v):
        out = [F(0)] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if u[i] and v[j]:
                    for k in range(self.n):
                        out[k] += u[i] * v[j] * self.const(i, j, k)
        return out

    def unit(self, i):
        v = [F(0)] * self.n
        v[i] = F(1)
        return v


def ce_differential(g, gens):
    """d xi^k = -sum_{i<j} c^k_ij xi^i xi^j on the generators listed (indices into g)."""
    out = []
    for k in gens:
        terms = {}
        for a, i in enumerate(gens):
            for b, j in enumerate(gens):
                if a < b and g.const(i, j, k):
                    terms[(1 << a) | (1 << b)] = terms.get((1 << a) | (1 << b), F(0)) - g.const(i, j, k)
        out.append({m: c for m, c in terms.items() if c})
    return out


class Pair:
    def __init__(self, g, sub, splitting):
        self.g = g
        self.sub = sub
        self.quot = [i for i in range(g.n) if i not in sub]
        self.j = [[F(x) for x in row] for row in splitting]

    def pr_b(self, x):
        return [x[q] for q in self.quot]

    def lift(self, bcoords):
        out = [F(0)] * self.g.n
        for beta, c in enumerate(bcoords):
            for k in range(self.g.n):
                out[k] += c * self.j[beta][k]
        return out

    def pr_a(self, x):
        rest = self.lift(self.pr_b(x))
        return [x[a] - rest[a] for a in self.sub]

    def bott(self, a, beta):
        return self.pr_b(self.g.bracket(self.g.unit(self.sub[a]), self.j[beta]))

    def b_boundary(self):
        # d b_i = sum_a a* (Bott_a b_i)
        out = []
        for i in range(len(self.quot)):
            el = {}
            for a in range(len(self.sub)):
                v = self.bott(a, i)
                for k, c in enumerate(v):
                    if c:
                        el[(k, 1 << a)] = el.get((k, 1 << a), F(0)) + c
            out.append(el)
        return out

    def omega_boundary(self):
        # contragredient: d b_k* = -sum_a a* sum_i (Bott_a b_i)_k b_i*
        out = []
        nb = len(self.quot)
        for k in range(nb):
            el = {}
            for a in range(len(self.sub)):
                for i in range(nb):
                    c = -self.bott(a, i)[k]
                    if c:
                        el[(i, 1 << a)] = el.get((i, 1 << a), F(0)) + c
            out.append(el)
        return out

    def delta(self):
        # delta(a*)(a_alpha, b_beta) = -a*(pr_A [a_alpha, j b_beta])
        out = []
        for a in range(len(self.sub)):
            el = {}
            for alpha in range(len(self.sub)):
                for beta in range(len(self.quot)):
                    c = -self.pr_a(self.g.bracket(self.g.unit(self.sub[alpha]), self.j[beta]))[a]
                    if c:
                        el[(beta, 1 << alpha)] = c
            out.append(el)
        return out

    def nabla(self, x, v, choice):
        """L-connection: Bott along pr_A x, choice along the j-part."""
        nb = len(self.quot)
        out = [F(0)] * nb
        pa = self.pr_a(x)
        pb = self.pr_b(x)
        for i in range(nb):
            if not v[i]:
                continue
            for a in range(len(self.sub)):
                if pa[a]:
                    bv = self.bott(a, i)
                    for k in range(nb):
                        out[k] += pa[a] * v[i] * bv[k]
            for beta in range(nb):
                if pb[beta]:
                    for k in range(nb):
                        out[k] += pb[beta] * v[i] * F(choice[beta][i][k])
        return out

    def atiyah(self, choice):
        """(b_beta, b_i) -> sum_a a* (nabla_a nabla_jb - nabla_jb nabla_a - nabla_[a,jb]) b_i."""
        nb = len(self.quot)
        table = {}
        for beta in range(nb):
            for i in range(nb):
                el = {}
                for a in range(len(self.sub)):
                    xa = self.g.unit(self.sub[a])
                    xb = self.j[beta]
                    e = [F(1) if k == i else F(0) for k in range(nb)]
                    t1 = self.nabla(xa, self.nabla(xb, e, choice), choice)
                    t2 = self.nabla(xb, self.nabla(xa, e, choice), choice)
                    t3 = self.nabla(self.g.bracket(xa, xb), e, choice)
                    for k in range(nb):
                        c = t1[k] - t2[k] - t3[k]
                        if c:
                            el[(k, 1 << a)] = c
                if el:
                    table[(beta, i)] = el
        return table


def homotopy(pair, j1, j2):
    """h(a*) = sum_beta a*((j1 - j2) b_beta) b_beta*."""
    out = []
    for a in range(len(pair.sub)):
        el = {}
        for beta in range(len(pair.quot)):
            c = F(j1[beta][pair.sub[a]]) - F(j2[beta][pair.sub[a]])
            if c:
                el[(beta, 0)] = c
        out.append(el)
    return out


def rank(rows):
    m = [list(r) for r in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def ce_cohomology_dims(g, action):
    """dim H^p(g, V) with the standard Chevalley-Eilenberg complex, by brute force."""
    n = g.n
    dimv = len(action[0]) if n else 0

    def cochains(p):
        return [s for s in product(range(n), repeat=p) if list(s) == sorted(set(s))]

    def d_matrix(p):
        src = cochains(p)
        tgt = cochains(p + 1)
        rows = []
        for s in src:
            for v in range(dimv):
                # image of the cochain phi = e_s (x) v
                col = [F(0)] * (len(tgt) * dimv)
                for ti, t in enumerate(tgt):
                    # (d phi)(x_t0..x_tp) = sum_i (-1)^i x_ti . phi(..^i..) + sum_{i<j} (-1)^{i+j} phi([x_ti,x_tj], ..)
                    for i in range(p + 1):
                        rest = t[:i] + t[i + 1:]
                        if rest == s:
                            sign = -1 if i % 2 else 1
                            for w in range(dimv):
                                col[ti * dimv + w] += sign * F(action[t[i]][v][w])
                    for i in range(p + 1):
                        for j in range(i + 1, p + 1):
                            sign = -1 if (i + j) % 2 else 1
                            others = t[:i] + t[i + 1:j] + t[j + 1:]
                            for k in range(n):
                                c = g.const(t[i], t[j], k)
                                if not c or k in others:
                                    continue
                                args = (k,) + others
                                perm_sorted = tuple(sorted(args))
                                if perm_sorted != s:
                                    continue
                                inv = sum(1 for a in range(len(args)) for b in range(a + 1, len(args)) if args[a] > args[b])
                                col[ti * dimv + v] += sign * c * (-1 if inv % 2 else 1)
                rows.append(col)
        return rows, len(src) * dimv, len(tgt) * dimv

    dims = []
    ranks = {}
    for p in range(n + 1):
        rows, ns, nt = d_matrix(p)
        ranks[p] = rank(rows) if rows and nt else 0
    for p in range(n + 1):
        size = len(cochains(p)) * dimv
        dims.append(size - ranks[p] - (ranks[p - 1] if p > 0 else 0))
    return dims


def koszul_brute(sigma, degs):
    """Sign of moving v_0..v_{n-1} into v_sigma(0)..: bubble sort with graded swaps."""
    arr = list(sigma)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                if degs[arr[i]] % 2 and degs[arr[i + 1]] % 2:
                    sign = -sign
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                changed = True
    return sign


def cxx_module(el):
    items = sorted(el.items())
    return "{" + ", ".join('{%d, %d, "%s"}' % (k[0], k[1], v) for k, v in items) + "}"


def cxx_algebra(el):
    return "{" + ", ".join('{%d, "%s"}' % (m, c) for m, c in sorted(el.items())) + "}"


def main():
    sl2 = Lie(["h", "e", "f"], [("h", "e", {"e": 2}), ("h", "f", {"f": -2}), ("e", "f", {"h": 1})])
    nonab = Lie(["x", "y"], [("x", "y", {"y": 1})])
    abelian = Lie(["x", "y"], [])
    borel = Pair(sl2, [0, 1], [[0, 0, 1]])
    borel2 = Pair(sl2, [0, 1], [[0, 1, 1]])
    xy = Pair(nonab, [0], [[0, 1]])
    xy2 = Pair(nonab, [0], [[1, 1]])

    lines = ["// Generated by tests/oracle/lie_oracle.py; do not edit.", "#pragma once", "",
             "namespace oracle {", ""]

    def emit_alg(name, els):
        lines.append("inline const std::vector<AlgTerms> %s = {%s};" % (name, ", ".join(cxx_algebra(e) for e in els)))

    def emit_mod(name, els):
        lines.append("inline const std::vector<ModTerms> %s = {%s};" % (name, ", ".join(cxx_module(e) for e in els)))

    def emit_table(name, table):
        body = ", ".join("{{%d, %d}, %s}" % (k[0], k[1], cxx_module(v)) for k, v in sorted(table.items()))
        lines.append("inline const std::vector<TableEntry> %s = {%s};" % (name, body))

    emit_alg("sl2_borel_ce", ce_differential(sl2, [0, 1]))
    emit_alg("sl2_full_ce", ce_differential(sl2, [0, 1, 2]))
    emit_alg("nonabelian_ce", ce_differential(nonab, [0, 1]))
    emit_mod("sl2_borel_b_boundary", borel.b_boundary())
    emit_mod("sl2_borel_omega_boundary", borel.omega_boundary())
    emit_mod("sl2_borel_delta", borel.delta())
    emit_mod("sl2_borel_delta2", borel2.delta())
    emit_mod("sl2_borel_homotopy", homotopy(borel, borel.j, borel2.j))
    emit_mod("xy_delta", xy.delta())
    emit_mod("xy_delta2", xy2.delta())
    emit_mod("xy_homotopy", homotopy(xy, xy.j, xy2.j))
    emit_table("sl2_borel_atiyah_zero", borel.atiyah([[[0]]]))
    emit_table("sl2_borel_atiyah_half", borel.atiyah([[[F(1, 2)]]]))
    emit_table("sl2_borel2_atiyah_zero", borel2.atiyah([[[0]]]))
    emit_table("xy_atiyah_zero", xy.atiyah([[[0]]]))
    emit_table("xy2_atiyah_zero", xy2.atiyah([[[0]]]))

    # Linear maps over the 2-dim nonabelian algebra, E = adjoint, psi = id:
    # R_2(b, e) = -psi(b) . e on E[1].
    adj = [[nonab.bracket(nonab.unit(x), nonab.unit(e)) for e in range(2)] for x in range(2)]
    psi = [[1, 0], [0, 1]]
    r2 = {}
    for b in range(2):
        for e in range(2):
            el = {}
            for x in range(2):
                for k in range(2):
                    c = -F(psi[b][x]) * adj[x][e][k]
                    if c:
                        el[(k, 0)] = el.get((k, 0), F(0)) + c
            if el:
                r2[(b, e)] = el
    emit_table("linear_maps_r2", r2)

    # Cohomology dimensions H^p(A, B) of the Bott representations, and H^p(g, g).
    def bott_action(pair):
        return [[pair.bott(a, i) for i in range(len(pair.quot))] for a in range(len(pair.sub))]

    def sub_lie(pair):
        names = [pair.g.basis[i] for i in pair.sub]
        br = []
        for a, i in enumerate(pair.sub):
            for b, j in enumerate(pair.sub):
                if a < b:
                    v = pair.g.bracket(pair.g.unit(i), pair.g.unit(j))
                    br.append((names[a], names[b], {names[c]: v[k] for c, k in enumerate(pair.sub) if v[k]}))
        return Lie(names, br)

    triv = Pair(abelian, [0], [[0, 1]])
    dims = {
        "sl2_borel": ce_cohomology_dims(sub_lie(borel), bott_action(borel)),
        "xy": ce_cohomology_dims(sub_lie(xy), bott_action(xy)),
        "trivial": ce_cohomology_dims(sub_lie(triv), bott_action(triv)),
        "nonabelian_adjoint": ce_cohomology_dims(nonab, adj),
    }
    for k, v in dims.items():
        lines.append("inline const std::vector<int> dims_%s = {%s};" % (k, ", ".join(map(str, v))))

    # Koszul signs by bubble sort, all permutations of 4 letters, two degree patterns.
    ks = []
    for degs in ([1, 1, 1, 1], [1, 0, 1, 1], [0, 1, 1, 0], [-1, 2, 1, 3]):
        for sigma in permutations(range(4)):
            ks.append("{{%s}, {%s}, %d}" % (", ".join(map(str, sigma)), ", ".join(map(str, degs)), koszul_brute(sigma, degs)))
    lines.append("inline const std::vector<KoszulCase> koszul_cases = {%s};" % ", ".join(ks))
    lines += ["", "}  // namespace oracle", ""]

    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "oracle_values.inc")
    with open(out, "w") as f:
        f.write("\n".join(lines))


if __name__ == "__main__":
    main()
