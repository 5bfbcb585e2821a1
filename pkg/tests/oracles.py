"""Brute-force reference implementations used to cross-check the library.

Everything here works on a plain ``leq`` relation given as a list of lists
of bools and does the dumbest possible exhaustive scan.  No numpy, no
caching, no shared code with ``locale_lab``: when a test compares the two,
agreement actually means something.
"""

from __future__ import annotations

from itertools import product


# --- order scans -----------------------------------------------------------


def is_partial_order(leq) -> bool:
    n = len(leq)
    for i in range(n):
        if not leq[i][i]:
            return False
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                return False
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    return False
    return True


def lower_bounds(leq, a, b):
    return [c for c in range(len(leq)) if leq[c][a] and leq[c][b]]


def upper_bounds(leq, a, b):
    return [c for c in range(len(leq)) if leq[a][c] and leq[b][c]]


def o_meet(leq, a, b):
    'Greatest common lower bound by scan, or None.'
    cands = lower_bounds(leq, a, b)
    for m in cands:
        if all(leq[c][m] for c in cands):
            return m
    return None


def o_join(leq, a, b):
    cands = upper_bounds(leq, a, b)
    for j in cands:
        if all(leq[j][c] for c in cands):
            return j
    return None


def o_bottom(leq):
    for i in range(len(leq)):
        if all(leq[i][j] for j in range(len(leq))):
            return i
    return None


def o_top(leq):
    for i in range(len(leq)):
        if all(leq[j][i] for j in range(len(leq))):
            return i
    return None


def o_meet_all(leq, elems):
    m = o_top(leq)
    for x in elems:
        m = o_meet(leq, m, x)
    return m


def o_join_all(leq, elems):
    j = o_bottom(leq)
    for x in elems:
        j = o_join(leq, j, x)
    return j


def o_is_distributive(leq):
    'Returns the first failing (a, b, c) or None.'
    n = len(leq)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = o_meet(leq, a, o_join(leq, b, c))
                rhs = o_join(leq, o_meet(leq, a, b), o_meet(leq, a, c))
                if lhs != rhs:
                    return (a, b, c)
    return None


def o_arrow(leq, a, b):
    'Largest c with c meet a below b, by scan.'
    cands = [c for c in range(len(leq)) if leq[o_meet(leq, c, a)][b]]
    for m in cands:
        if all(leq[c][m] for c in cands):
            return m
    return None


def o_pseudocomplement(leq, a):
    return o_arrow(leq, a, o_bottom(leq))


def o_primes(leq):
    n = len(leq)
    top = o_top(leq)
    out = []
    for p in range(n):
        if p == top:
            continue
        if all(not leq[o_meet(leq, x, y)][p] or leq[x][p] or leq[y][p]
               for x in range(n) for y in range(n)):
            out.append(p)
    return out


def o_booleanization(leq):
    'Both defining scans; asserts they agree.'
    n = len(leq)
    via_psc = {o_pseudocomplement(leq, a) for a in range(n)}
    via_fix = {a for a in range(n)
               if o_pseudocomplement(leq, o_pseudocomplement(leq, a)) == a}
    assert via_psc == via_fix
    return frozenset(via_psc)


# --- sublocale scans -------------------------------------------------------


def o_is_sublocale(leq, members) -> bool:
    members = frozenset(members)
    if o_top(leq) not in members:
        return False
    for s in members:
        for t in members:
            if o_meet(leq, s, t) not in members:
                return False
    for a in range(len(leq)):
        for s in members:
            if o_arrow(leq, a, s) not in members:
                return False
    return True


def o_sublocales(leq):
    'All sublocales by scanning every subset.  Exponential, keep n small.'
    n = len(leq)
    out = []
    for bits in range(1 << n):
        members = frozenset(i for i in range(n) if bits >> i & 1)
        if o_is_sublocale(leq, members):
            out.append(members)
    return out


def o_open(leq, a):
    return frozenset(o_arrow(leq, a, b) for b in range(len(leq)))


def o_closed(leq, a):
    return frozenset(b for b in range(len(leq)) if leq[a][b])


def o_closure(leq, members):
    return o_closed(leq, o_meet_all(leq, members))


def o_fitting(leq, members):
    members = frozenset(members)
    out = frozenset(range(len(leq)))
    for a in range(len(leq)):
        o = o_open(leq, a)
        if members <= o:
            out &= o
    return out


def o_sublocale_join(leq, families):
    'Join of sublocales: close the union under all meets, by scan.'
    union = frozenset().union(*families) | {o_top(leq)}
    out = set()
    for bits in range(1 << len(leq)):
        sub = [i for i in range(len(leq)) if bits >> i & 1 and i in union]
        if len(sub) == bits.bit_count():
            out.add(o_meet_all(leq, sub))
    return frozenset(out)


# --- coproduct scans -------------------------------------------------------


def o_cp_ideals(leq_l, leq_m):
    """All coproduct ideals of the two lattices, as frozensets of pairs.

    Scans every subset of the cell grid.  A subset qualifies when it is a
    downset for the componentwise order and, in each row and column, the
    join of the present elements is itself present (the empty join forces
    every (0, b) and (a, 0) in).  Joins of arbitrary sub-families follow
    from the full-family case by downward closure.
    """
    nl, nm = len(leq_l), len(leq_m)
    cells = [(a, b) for a in range(nl) for b in range(nm)]
    out = []
    for bits in range(1 << len(cells)):
        d = frozenset(cells[i] for i in range(len(cells)) if bits >> i & 1)
        if _is_cp_ideal(leq_l, leq_m, d):
            out.append(d)
    return out


def _is_cp_ideal(leq_l, leq_m, d) -> bool:
    nl, nm = len(leq_l), len(leq_m)
    for (a, b) in d:
        for x in range(nl):
            for y in range(nm):
                if leq_l[x][a] and leq_m[y][b] and (x, y) not in d:
                    return False
    for b in range(nm):
        col = [a for a in range(nl) if (a, b) in d]
        if (o_join_all(leq_l, col), b) not in d:
            return False
    for a in range(nl):
        row = [b for b in range(nm) if (a, b) in d]
        if (a, o_join_all(leq_m, row)) not in d:
            return False
    return True


def o_downsets_of_pairs(leq_l, leq_m):
    'Plain downsets of the componentwise order, same scan as o_cp_ideals.'
    nl, nm = len(leq_l), len(leq_m)
    cells = [(a, b) for a in range(nl) for b in range(nm)]
    out = []
    for bits in range(1 << len(cells)):
        d = frozenset(cells[i] for i in range(len(cells)) if bits >> i & 1)
        ok = all((x, y) in d
                 for (a, b) in d
                 for x in range(nl) if leq_l[x][a]
                 for y in range(nm) if leq_m[y][b])
        if ok:
            out.append(d)
    return out


def o_tensor_leq(ideals):
    'Inclusion order on the ideals returned by o_cp_ideals.'
    return [[a <= b for b in ideals] for a in ideals]


# --- frame homomorphism scan ----------------------------------------------


def o_homs(leq_l, leq_m):
    'Every map preserving bottom, top, binary meets and joins.  |M|^|L| scan.'
    nl, nm = len(leq_l), len(leq_m)
    out = []
    for f in product(range(nm), repeat=nl):
        if f[o_bottom(leq_l)] != o_bottom(leq_m):
            continue
        if f[o_top(leq_l)] != o_top(leq_m):
            continue
        ok = all(f[o_meet(leq_l, x, y)] == o_meet(leq_m, f[x], f[y])
                 and f[o_join(leq_l, x, y)] == o_join(leq_m, f[x], f[y])
                 for x in range(nl) for y in range(nl))
        if ok:
            out.append(f)
    return out


def o_isomorphic(leq_a, leq_b) -> bool:
    'Order isomorphism by permutation scan.  Factorial, keep n tiny.'
    from itertools import permutations
    n = len(leq_a)
    if n != len(leq_b):
        return False
    for perm in permutations(range(n)):
        if all(leq_a[i][j] == leq_b[perm[i]][perm[j]]
               for i in range(n) for j in range(n)):
            return True
    return False


# --- separation scans ------------------------------------------------------


def o_regular(leq):
    n = len(leq)
    top = o_top(leq)
    for a in range(n):
        below = [b for b in range(n)
                 if o_join(leq, o_pseudocomplement(leq, b), a) == top]
        if o_join_all(leq, below) != a:
            return False
    return True


def o_fit(leq):
    n, top = len(leq), o_top(leq)
    for a in range(n):
        for b in range(n):
            if leq[a][b]:
                continue
            if not any(o_join(leq, a, c) == top
                       and not leq[o_arrow(leq, c, b)][b]
                       for c in range(n)):
                return False
    return True


def o_subfit(leq):
    n, top = len(leq), o_top(leq)
    for a in range(n):
        for b in range(n):
            if leq[a][b]:
                continue
            if not any(o_join(leq, a, c) == top and o_join(leq, b, c) != top
                       for c in range(n)):
                return False
    return True


def o_weakly_subfit(leq):
    n, bot, top = len(leq), o_bottom(leq), o_top(leq)
    for a in range(n):
        if a == bot:
            continue
        if not any(c != top and o_join(leq, a, c) == top for c in range(n)):
            return False
    return True


def o_prefit(leq):
    n, bot, top = len(leq), o_bottom(leq), o_top(leq)
    for a in range(n):
        if a == bot:
            continue
        if not any(c != bot
                   and o_join(leq, o_pseudocomplement(leq, c), a) == top
                   for c in range(n)):
            return False
    return True


def o_T1(leq):
    top = o_top(leq)
    for p in o_primes(leq):
        for a in range(len(leq)):
            if leq[p][a] and a != p and a != top:
                return False
    return True


def o_hausdorff(leq):
    n, bot, top = len(leq), o_bottom(leq), o_top(leq)
    for a in range(n):
        if a == top:
            continue
        for b in range(n):
            if leq[a][b]:
                continue
            if not any(not leq[u][a] and not leq[v][b]
                       and o_meet(leq, u, v) == bot
                       for u in range(n) for v in range(n)):
                return False
    return True


def o_F_conditions(leq):
    'The six exists-(u,v) variants, each scanned literally.  Returns a tuple.'
    n, top = len(leq), o_top(leq)

    def lt(x, y):
        return leq[x][y] and x != y

    def cov(u, a, v, b):
        return o_join(leq, o_arrow(leq, u, a), o_arrow(leq, v, b)) == top

    def moved(u, a):
        return o_arrow(leq, u, a) != a

    conds = (
        lambda a, b, u, v: (not leq[u][a] and not leq[v][b]
                            and cov(u, a, v, b)),
        lambda a, b, u, v: lt(a, u) and lt(b, v) and cov(u, a, v, b),
        lambda a, b, u, v: (leq[v][a] and lt(a, u) and not leq[v][b]
                            and cov(u, a, v, b)),
        lambda a, b, u, v: (moved(u, a) and moved(v, b)
                            and o_join(leq, u, v) == top),
        lambda a, b, u, v: (leq[a][u] and leq[b][v] and moved(u, a)
                            and moved(v, b) and o_join(leq, u, v) == top),
        lambda a, b, u, v: (leq[a][u] and moved(u, a)
                            and not leq[o_meet(leq, a, o_arrow(leq, v, b))][b]
                            and o_join(leq, u, v) == top),
    )

    results = []
    for cond in conds:
        ok = True
        for a in range(n):
            if a == top:
                continue
            for b in range(n):
                if leq[a][b]:
                    continue
                if not any(cond(a, b, u, v)
                           for u in range(n) for v in range(n)):
                    ok = False
        results.append(ok)
    return tuple(results)


def o_F(leq):
    return o_F_conditions(leq)[3]


def o_anti_urysohn(leq):
    n, bot, top = len(leq), o_bottom(leq), o_top(leq)
    for a in range(n):
        for b in range(n):
            if a == bot or b == bot:
                continue
            if o_join(leq, o_pseudocomplement(leq, a),
                      o_pseudocomplement(leq, b)) == top:
                return False
    return True


def o_irreducible(leq):
    return (o_booleanization(leq) == {o_bottom(leq), o_top(leq)}
            and o_bottom(leq) != o_top(leq))


def o_pt_fit(leq):
    top = o_top(leq)
    for p in o_primes(leq):
        if o_fitting(leq, {top, p}) != {top, p}:
            return False
    return True


# --- tiny lattice builders -------------------------------------------------


def downset_lattice(poset_leq):
    'Downsets of a poset ordered by inclusion: (leq matrix, downsets).'
    k = len(poset_leq)
    downs = []
    for bits in range(1 << k):
        sub = {i for i in range(k) if bits >> i & 1}
        if all(j in sub for i in sub for j in range(k) if poset_leq[j][i]):
            downs.append(frozenset(sub))
    downs.sort(key=lambda s: (len(s), sorted(s)))
    leq = [[a <= b for b in downs] for a in downs]
    return leq, downs


def chain_poset(k):
    return [[i <= j for j in range(k)] for i in range(k)]


def antichain_poset(k):
    return [[i == j for j in range(k)] for i in range(k)]


CHAIN2 = downset_lattice(chain_poset(1))[0]          # two-element frame
CHAIN3 = downset_lattice(chain_poset(2))[0]          # 0 < m < 1
CHAIN4 = downset_lattice(chain_poset(3))[0]
BOOL4 = downset_lattice(antichain_poset(2))[0]       # four-element Boolean
BOOL8 = downset_lattice(antichain_poset(3))[0]
TRIVIAL = [[True]]
