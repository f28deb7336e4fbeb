"""Shape recovery: exact polynomial interpolation from a scattering record
and branched reconstruction of the tree from (psi, psihat).

The reconstruction enumerates multisets of annotated branch subtrees from the
catalog whose determinant polynomials multiply exactly to psihat, accepts a
multiset iff the partial-fraction identity
    psi + d0 z psihat = -sum_k Q_k prod_{j != k} P_j
holds as an exact polynomial identity, and post-verifies every assembled tree
against both input polynomials.
"""

import itertools
import json
from fractions import Fraction

from . import polynomials as pc
from . import trees as tc


def _vandermonde_solve(nodes, rhs):
    """Exact solve of sum_i x_i * node^i = rhs over Fractions."""
    n = len(nodes)
    a = [[nodes[k] ** i for i in range(n)] + [rhs[k]] for k in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _round_to_integers(coeffs, margin=Fraction(1, 4)):
    out = []
    for c in coeffs:
        nearest = round(c)  # Fraction -> int, exact
        if abs(c - nearest) > margin:
            raise ValueError("rounding margin exceeded -- increase n_schedule")
        out.append(Fraction(nearest))
    return pc.poly(out)


def interpolate_polynomials(rec):
    """(psi, psihat) from a scattering record via exact Vandermonde solves at
    z_k = k/p and k/(p-1), with integer rounding and consistency checks."""
    p = rec.p
    if len(rec.f) != p + 1 or len(rec.f_hat) != p:
        raise ValueError("record lengths inconsistent with p")
    nodes = [Fraction(k, p) for k in range(p + 1)]
    coeffs = _vandermonde_solve(nodes, [Fraction(v) for v in rec.f])
    psi = _round_to_integers(coeffs)
    nodes_hat = [Fraction(k, p - 1) for k in range(p)]
    coeffs_hat = _vandermonde_solve(nodes_hat, [Fraction(v) for v in rec.f_hat])
    psihat = _round_to_integers(coeffs_hat)
    if (pc.poly_eval(psi, Fraction(1)) != 0
            or pc.poly_eval(psi, Fraction(-1)) != 0):
        raise ValueError("consistency check failed (psi(+-1) != 0)")
    return psi, psihat


def recover_d0(psi, psihat):
    """Root degree from the exact leading-coefficient ratio."""
    if pc.poly_deg(psi) != pc.poly_deg(psihat) + 1:
        raise ValueError("non-integer degree ratio -- inconsistent input")
    ratio = pc.poly_lead(psi) / (-pc.poly_lead(psihat))
    if ratio.denominator != 1 or ratio <= 0:
        raise ValueError("non-integer degree ratio -- inconsistent input")
    return int(ratio)


def reciprocal_degree_sum(psi, psihat, d0=None):
    """Exact sum of reciprocals of the root's neighbor degrees: the leading
    coefficient of psi + d0 z psihat relative to psihat's."""
    if d0 is None:
        d0 = recover_d0(psi, psihat)
    num = pc.poly_add(psi, pc.poly_mul(pc.poly([0, d0]), psihat))
    p = pc.poly_deg(psi)
    return pc.poly_coeff(num, p - 2) / pc.poly_lead(psihat)


def diophantine_reciprocals(q, m):
    """All multisets {d_1 <= ... <= d_m} of positive integers with
    sum 1/d_i = q, by bounded recursive descent."""
    q = Fraction(q)
    out = []

    def descend(remaining, count, minimum, acc):
        if count == 0:
            if remaining == 0:
                out.append(tuple(acc))
            return
        if remaining <= 0:
            return
        lo = max(minimum, int(1 / remaining) + (0 if 1 / remaining ==
                                                int(1 / remaining) else 1))
        lo = max(lo, 1)
        hi = int(count / remaining)
        for d in range(lo, hi + 1):
            descend(remaining - Fraction(1, d), count - 1, d, acc + [d])

    descend(q, m, 1, [])
    return out


def split_psihat(psihat, d0, catalog):
    """All multisets of d0 catalog polynomials whose exact product is psihat."""
    entries = sorted({key for key in catalog}, key=lambda k: (len(k), k))
    polys = [pc.poly(k) for k in entries]
    results = []

    def descend(remaining, start, count, acc):
        deg = pc.poly_deg(remaining)
        if count == 0:
            if remaining == pc.ONE:
                results.append(tuple(acc))
            return
        if deg < count:  # every factor has degree >= 1
            return
        for i in range(start, len(polys)):
            f = polys[i]
            if pc.poly_deg(f) > deg - (count - 1):
                break
            q, r = pc.poly_divmod(remaining, f)
            if r == pc.ZERO:
                descend(q, i, count - 1, acc + [f])

    descend(psihat, 0, d0, [])
    if not results:
        raise ValueError("no admissible splitting")
    return results


def undetermined_coefficients(psi, psihat, factors):
    """Numerators psihat_k (deg = deg psi_k - 1) solving the exact identity
    psi + d0 z psihat = -sum_k psihat_k prod_{j != k} psi_k.

    Repeated factors make individual numerators non-unique (only their sum is
    determined); the symmetric solution assigning equal numerators to equal
    factors is returned."""
    factors = [pc.poly(f) for f in factors]
    prod = pc.ONE
    for f in factors:
        prod = pc.poly_mul(prod, f)
    if prod != pc.poly(psihat):
        raise ValueError("singular system")
    d0 = recover_d0(psi, psihat)
    if len(factors) != d0:
        raise ValueError("singular system")
    rhs = pc.poly_neg(pc.poly_add(psi, pc.poly_mul(pc.poly([0, d0]), psihat)))
    structured = _catalog_numerators(rhs, factors)
    if structured is not None:
        return structured
    # group equal factors; unknowns are the shared numerator coefficients
    groups = []
    for f in factors:
        for grp in groups:
            if grp[0] == f:
                grp[1] += 1
                break
        else:
            groups.append([f, 1])
    cols = []  # (group index, power) -> polynomial multiplying the unknown
    for gi, (f, count) in enumerate(groups):
        cof = pc.ONE  # prod over all other factors, counting repetitions
        for gj, (f2, count2) in enumerate(groups):
            reps = count2 - (1 if gi == gj else 0)
            for _ in range(reps):
                cof = pc.poly_mul(cof, f2)
        cof = pc.poly_scale(cof, count)  # equal split over the repetitions
        for power in range(pc.poly_deg(f)):
            cols.append((gi, power, pc.poly_mul(cof, pc.poly([0] * power + [1]))))
    n_rows = max([pc.poly_deg(rhs)] + [pc.poly_deg(c[2]) for c in cols]) + 1
    mat = [[pc.poly_coeff(c[2], r) for c in cols] + [pc.poly_coeff(rhs, r)]
           for r in range(n_rows)]
    sol = _solve_exact(mat, len(cols))
    if sol is None:
        raise ValueError("singular system")
    per_group = {}
    for (gi, power, _cof), x in zip(cols, sol):
        per_group.setdefault(gi, {})[power] = x
    out = []
    for f in factors:
        gi = next(i for i, (g, _c) in enumerate(groups) if g == f)
        coeffs = [per_group[gi].get(pw, Fraction(0))
                  for pw in range(pc.poly_deg(f))]
        cand = pc.poly(coeffs)
        if pc.poly_deg(cand) != pc.poly_deg(f) - 1:
            raise ValueError("degree overflow")
        out.append(cand)
    return out


def _catalog_numerators(rhs, factors):
    """Structured numerators: when every factor is the determinant polynomial
    of a catalog branch, try its companion polynomials first.  The linear
    system alone does not pin the numerators when factors share a root (mass
    can shift between branches at the common root), but the branch companions
    are exact and canonical when they satisfy the identity."""
    max_edges = max(pc.poly_deg(f) - 1 for f in factors)
    if max_edges > 11:
        return None
    cat = pc.subtree_catalog(max_edges)
    per_factor = []
    for f in factors:
        cands = []
        for _ann, _p, q in cat.get(pc.catalog_key(f), []):
            if q not in cands:
                cands.append(q)
        if not cands:
            return None
        cands.sort(key=pc.catalog_key)
        per_factor.append(cands)
    combos = 1
    for c in per_factor:
        combos *= len(c)
    if combos > 4096:
        return None
    for choice in itertools.product(*per_factor):
        total = pc.ZERO
        for k, q in enumerate(choice):
            term = q
            for j, f in enumerate(factors):
                if j != k:
                    term = pc.poly_mul(term, f)
            total = pc.poly_add(total, term)
        if total == rhs:
            return list(choice)
    return None


def _solve_exact(mat, n_unknowns):
    """Gauss elimination over Fractions for an (m x n+1) augmented system;
    returns None if inconsistent, the unique/least solution otherwise."""
    m = len(mat)
    a = [row[:] for row in mat]
    pivots = []
    row = 0
    for col in range(n_unknowns):
        piv = next((r for r in range(row, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [v * inv for v in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if a[r][n_unknowns] != 0:
            return None
    sol = [Fraction(0)] * n_unknowns
    for r, col in enumerate(pivots):
        sol[col] = a[r][n_unknowns]
    return sol


class RecoveryResult:
    """Recovered shapes plus a per-branch search trace."""

    def __init__(self, shapes, trace):
        self.shapes = shapes
        self.trace = trace

    def to_json(self):
        return json.dumps(
            {"shapes": [json.loads(tc.tree_to_json(t)) for t in self.shapes],
             "trace": self.trace}, separators=(", ", ": "))


def recover_shape(psi, psihat):
    """All tree shapes whose characteristic pair is exactly (psi, psihat)."""
    psi = pc.poly(psi)
    psihat = pc.poly(psihat)
    d0 = recover_d0(psi, psihat)
    q = reciprocal_degree_sum(psi, psihat, d0)
    dio = [list(s) for s in diophantine_reciprocals(q, d0)]
    max_edges = max(pc.poly_deg(psihat) - (d0 - 1) - 1, 0)
    catalog = pc.subtree_catalog(min(max_edges, 11))
    # candidate branches: (P, Q, tree), ordered by degree then coefficients
    candidates = []
    for key, entries in catalog.items():
        for ann, p_poly, q_poly in entries:
            candidates.append((p_poly, q_poly, ann))
    candidates.sort(key=lambda c: (pc.poly_deg(c[0]), pc.catalog_key(c[0]),
                                   pc.catalog_key(c[1])))
    rhs = pc.poly_neg(pc.poly_add(psi, pc.poly_mul(pc.poly([0, d0]), psihat)))

    shapes = []
    seen = set()
    trace = []
    branch_no = [0]

    def fr_sum(chosen):
        total = pc.ZERO
        for k in range(len(chosen)):
            term = chosen[k][1]
            for j in range(len(chosen)):
                if j != k:
                    term = pc.poly_mul(term, chosen[j][0])
            total = pc.poly_add(total, term)
        return total

    def descend(remaining, start, count, chosen):
        deg = pc.poly_deg(remaining)
        if count == 0:
            if remaining != pc.ONE:
                return
            branch_no[0] += 1
            sizes = sorted(pc.poly_deg(c[0]) for c in chosen)
            compatible = [s for s in dio
                          if all(d <= m for d, m in zip(sorted(s), sizes))]
            entry = {"branch": branch_no[0], "d0": d0,
                     "splitting": [pc.poly_str(c[0]) for c in chosen],
                     "diophantine": compatible}
            if fr_sum(chosen) != rhs:
                entry["status"] = "rejected"
                entry["reason"] = "partial-fraction identity failed"
                trace.append(entry)
                return
            degs = sorted(tc.degree(c[2], c[2].root) for c in chosen)
            if degs not in [sorted(s) for s in dio]:
                entry["status"] = "rejected"
                entry["reason"] = "neighbor degrees not a reciprocal solution"
                trace.append(entry)
                return
            tree = tc.attach_branches([c[2] for c in chosen])
            if pc.psi(tree) != psi or pc.psi_hat(tree) != psihat:
                entry["status"] = "rejected"
                entry["reason"] = "post-verification failed"
                trace.append(entry)
                return
            entry["status"] = "accepted"
            trace.append(entry)
            code = tc.canonical_code(tree)
            if code not in seen:
                seen.add(code)
                shapes.append(tree)
            return
        if deg < count:
            return
        for i in range(start, len(candidates)):
            f = candidates[i][0]
            if pc.poly_deg(f) > deg - (count - 1):
                break
            quot, rem = pc.poly_divmod(remaining, f)
            if rem == pc.ZERO:
                descend(quot, i, count - 1, chosen + [candidates[i]])

    descend(psihat, 0, d0, [])
    if not shapes:
        raise ValueError("no shape found")
    shapes.sort(key=tc.canonical_code)
    return RecoveryResult(shapes, trace)


def recover_snowflake(psi, psihat):
    """Closed-form recovery for trees of combinatorial depth <= 2 from the
    root; returns None when no snowflake matches exactly."""
    psi = pc.poly(psi)
    psihat = pc.poly(psihat)
    try:
        d0 = recover_d0(psi, psihat)
        q = reciprocal_degree_sum(psi, psihat, d0)
    except ValueError:
        return None
    for degs in diophantine_reciprocals(q, d0):
        branches = []
        for d in degs:
            leaves = [tc.RootedTree(p=1, root=0, edges=())] * (d - 1)
            branches.append(tc.attach_branches(leaves) if leaves
                            else tc.RootedTree(p=1, root=0, edges=()))
        tree = tc.attach_branches(branches)
        if pc.psi(tree) == psi and pc.psi_hat(tree) == psihat:
            return tree
    return None
