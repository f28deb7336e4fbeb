"""Sturm-Liouville machinery on the compact equilateral tree: fundamental
solutions, characteristic matrices, characteristic functions, and eigenvalue
location.

Conventions.  On each edge, oriented away from the root, solutions are written
y = a*c(sqrt(lambda), x) + b*s(sqrt(lambda), x) with c(0)=1, c'(0)=0, s(0)=0,
s'(0)=1.  The characteristic matrices are 2g x 2g with columns (a_e then b_e)
in BFS edge order and per-vertex condition rows in BFS vertex order; the root
contributes the first d(root) rows (Dirichlet or standard, depending on the
problem).

char_functions returns determinants normalized so that, under the equal
symmetric potential hypothesis, phi_N = psi(c)/s and phi_D = psihat(c); the
raw determinant differs from these by a shape-dependent sign which is computed
once per shape and cached.
"""

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, minimize_scalar

from . import polynomials as pc
from . import trees as tc


# ---------------------------------------------------------------------------
# potentials

@dataclass(frozen=True)
class Potential:
    """Edge potential: zero, constant q, or a symmetric sampled profile.

    The same potential acts on every edge; sampled values live on a uniform
    grid over [0, ell] and must be symmetric about the midpoint.
    """
    kind: str  # "zero" | "constant" | "sampled"
    ell: float = 1.0
    q: float = 0.0
    values: tuple = ()

    def __post_init__(self):
        if self.kind not in ("zero", "constant", "sampled"):
            raise ValueError("unknown potential kind %r" % (self.kind,))
        if not self.ell > 0:
            raise ValueError("edge length must be positive")
        if self.kind == "sampled":
            vals = self.values
            if len(vals) < 16:
                raise ValueError("sampled potential needs at least 16 values")
            for i in range(len(vals)):
                if abs(vals[i] - vals[len(vals) - 1 - i]) > 1e-12:
                    raise ValueError("sampled potential is not symmetric")

    @staticmethod
    def zero(ell=1.0):
        return Potential(kind="zero", ell=float(ell))

    @staticmethod
    def constant(q, ell=1.0):
        return Potential(kind="constant", ell=float(ell), q=float(q))

    @staticmethod
    def sampled(values, ell=1.0):
        return Potential(kind="sampled", ell=float(ell),
                         values=tuple(float(v) for v in values))

    def min_value(self):
        if self.kind == "zero":
            return 0.0
        if self.kind == "constant":
            return self.q
        return min(self.values)

    def to_json(self):
        if self.kind == "zero":
            obj = {"kind": "zero", "ell": self.ell}
        elif self.kind == "constant":
            obj = {"kind": "constant", "q": self.q, "ell": self.ell}
        else:
            obj = {"kind": "sampled", "ell": self.ell,
                   "values": list(self.values)}
        return json.dumps(obj, separators=(", ", ": "))

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        kind = obj["kind"]
        if kind == "zero":
            return Potential.zero(obj["ell"])
        if kind == "constant":
            return Potential.constant(obj["q"], obj["ell"])
        if kind == "sampled":
            return Potential.sampled(obj["values"], obj["ell"])
        raise ValueError("unknown potential kind %r" % (kind,))


@dataclass(frozen=True)
class FundamentalValues:
    """Values of the fundamental system at x = ell."""
    c: complex
    s: complex
    cp: complex
    sp: complex

    def wronskian(self):
        return self.c * self.sp - self.cp * self.s


def _closed_form(mu, ell):
    """c, s, c', s' at ell for -y'' = mu*y (zero effective potential shift)."""
    w = cmath.sqrt(complex(mu))
    if abs(w) < 1e-12:
        # series around mu = 0, exact limits at mu = 0
        c = cmath.cos(w * ell)
        s = ell if w == 0 else cmath.sin(w * ell) / w
        cp = -w * cmath.sin(w * ell)
        sp = cmath.cos(w * ell)
        return c, s, cp, sp
    return (cmath.cos(w * ell), cmath.sin(w * ell) / w,
            -w * cmath.sin(w * ell), cmath.cos(w * ell))


def fundamental_values(pot, lam):
    """Fundamental solution data c, s, c', s' at x = ell."""
    if pot.kind == "zero":
        return FundamentalValues(*_closed_form(lam, pot.ell))
    if pot.kind == "constant":
        return FundamentalValues(*_closed_form(complex(lam) - pot.q, pot.ell))
    # sampled: integrate y'' = (q(x) - lambda) y for both initial conditions
    grid = np.linspace(0.0, pot.ell, len(pot.values))
    vals = np.asarray(pot.values)

    def rhs(x, y):
        qx = np.interp(x, grid, vals)
        return [y[1], (qx - lam) * y[0], y[3], (qx - lam) * y[2]]

    sol = solve_ivp(rhs, (0.0, pot.ell), [1.0, 0.0, 0.0, 1.0],
                    rtol=1e-10, atol=1e-12, dense_output=False, method="DOP853")
    if not sol.success:
        raise RuntimeError("integration tolerance not met")
    c, cp, s, sp = sol.y[0][-1], sol.y[1][-1], sol.y[2][-1], sol.y[3][-1]
    fv = FundamentalValues(complex(c), complex(s), complex(cp), complex(sp))
    if abs(fv.wronskian() - 1) > 1e-8:
        raise RuntimeError("integration tolerance not met")
    return fv


# ---------------------------------------------------------------------------
# characteristic matrices

def _edge_layout(tree):
    """BFS vertex order and edge order; edge k ends at its child vertex."""
    order = tree.bfs_order()
    kids = tree.children()
    edges = []  # (parent, child)
    for v in order:
        for c in kids[v]:
            edges.append((v, c))
    edge_index = {e: i for i, e in enumerate(edges)}
    return order, kids, edges, edge_index


def assemble_phi_matrices(tree, pot, lam):
    """The 2g x 2g characteristic matrices (Phi_D, Phi_N).

    Rows: first d(root) root-condition rows (Dirichlet for Phi_D; continuity
    differences plus the derivative sum for Phi_N), then per BFS vertex the
    continuity rows towards each child followed by the Kirchhoff row (a single
    Neumann row for pendant vertices).
    """
    if tree.p < 2:
        raise ValueError("single vertex")
    fv = fundamental_values(pot, lam)
    order, kids, edges, eidx = _edge_layout(tree)
    g = len(edges)
    n = 2 * g
    phi_d = np.zeros((n, n), dtype=complex)
    phi_n = np.zeros((n, n), dtype=complex)

    def acol(e):
        return eidx[e]

    def bcol(e):
        return g + eidx[e]

    root_edges = [(tree.root, c) for c in kids[tree.root]]
    d0 = len(root_edges)
    row = 0
    # root rows
    if d0 == 1:
        phi_d[0, acol(root_edges[0])] = 1.0
        phi_n[0, bcol(root_edges[0])] = 1.0
        row = 1
    else:
        for j in range(d0):
            phi_d[row + j, acol(root_edges[j])] = 1.0
        for j in range(1, d0):
            phi_n[row + j - 1, acol(root_edges[0])] = 1.0
            phi_n[row + j - 1, acol(root_edges[j])] = -1.0
        for e in root_edges:
            phi_n[row + d0 - 1, bcol(e)] = 1.0
        row = d0
    # non-root vertices in BFS order; these rows are shared by both problems
    for v in order[1:]:
        e_in = next(e for e in edges if e[1] == v)
        child_edges = [(v, c) for c in kids[v]]
        for ce in child_edges:
            for m in (phi_d, phi_n):
                m[row, acol(e_in)] = fv.c
                m[row, bcol(e_in)] = fv.s
                m[row, acol(ce)] = -1.0
            row += 1
        for m in (phi_d, phi_n):
            m[row, acol(e_in)] = fv.cp
            m[row, bcol(e_in)] = fv.sp
            for ce in child_edges:
                m[row, bcol(ce)] = -1.0
        row += 1
    return phi_d, phi_n


def _require_symmetric(pot):
    if pot.kind == "sampled":
        vals = pot.values
        for i in range(len(vals)):
            if abs(vals[i] - vals[len(vals) - 1 - i]) > 1e-12:
                raise ValueError("hypothesis violated: potential not symmetric")


_SHAPE_DATA = {}


def _shape_data(tree):
    """Per-shape cache: psi, psihat, psi0 = psi/(z^2-1), det sign factors."""
    code = tc.canonical_code(tree)
    if code in _SHAPE_DATA:
        return _SHAPE_DATA[code]
    psi = pc.psi(tree)
    psihat = pc.psi_hat(tree)
    psi0 = pc.poly_divexact(psi, pc.poly([-1, 0, 1]))
    # reference point: zero potential, ell = 1, lambda = -1, where neither
    # function vanishes (cosh 1 > 1 is outside the pencil spectrum [-1, 1])
    pot0 = Potential.zero(1.0)
    lam0 = -1.0
    fv = fundamental_values(pot0, lam0)
    phi_d_mat, phi_n_mat = assemble_phi_matrices(tree, pot0, lam0)
    raw_d = np.linalg.det(phi_d_mat)
    raw_n = np.linalg.det(phi_n_mat)
    fast_d = pc.poly_eval(psihat, fv.c)
    fast_n = fv.cp * pc.poly_eval(psi0, fv.c)
    sig_d = raw_d.real / fast_d.real
    sig_n = raw_n.real / fast_n.real
    if abs(abs(sig_d) - 1) > 1e-6 or abs(abs(sig_n) - 1) > 1e-6:
        raise AssertionError("sign normalization failed for shape %s" % code)
    data = {"psi": psi, "psihat": psihat, "psi0": psi0,
            "sig_d": 1.0 if sig_d > 0 else -1.0,
            "sig_n": 1.0 if sig_n > 0 else -1.0}
    _SHAPE_DATA[code] = data
    return data


def char_functions(tree, pot, lam):
    """(phi_D, phi_N) via matrix determinants, sign-normalized so that the
    values agree with the polynomial representation of char_functions_fast."""
    data = _shape_data(tree)
    phi_d_mat, phi_n_mat = assemble_phi_matrices(tree, pot, lam)
    phi_d = data["sig_d"] * np.linalg.det(phi_d_mat)
    phi_n = data["sig_n"] * np.linalg.det(phi_n_mat)
    if (pot.kind in ("zero", "constant")
            and abs(complex(lam).imag) < 1e-300):
        for val in (phi_d, phi_n):
            if abs(val.imag) > 1e-10 * (1 + abs(val)):
                raise AssertionError("nonreal characteristic value")
    return phi_d, phi_n


def char_functions_fast(tree, pot, lam):
    """(phi_D, phi_N) = (psihat(c), c' * psi0(c)) where psi = (z^2-1) psi0.

    Valid under the equal-symmetric-potential hypothesis; the c' form removes
    the apparent singularity of psi(c)/s at zeros of s.
    """
    _require_symmetric(pot)
    data = _shape_data(tree)
    fv = fundamental_values(pot, lam)
    phi_d = pc.poly_eval(data["psihat"], complex(fv.c))
    phi_n = complex(fv.cp) * pc.poly_eval(data["psi0"], complex(fv.c))
    return phi_d, phi_n


def _phi_real(tree, pot, which):
    key = "psihat" if which == "D" else "psi0"

    def f(lam):
        fv = fundamental_values(pot, lam)
        val = pc.poly_eval(_shape_data(tree)[key], complex(fv.c))
        if which == "N":
            val = complex(fv.cp) * val
        return val.real
    return f


def _poly_root_multiplicity(p, z0, tol=1e-6):
    """Multiplicity of z0 as a root of the integer polynomial p, decided by
    successive derivatives with a coefficient-norm scale."""
    m = 0
    cur = p
    while cur:
        scale = max(abs(float(c)) for c in cur) * max(1.0, abs(z0)) ** pc.poly_deg(cur)
        if abs(pc.poly_eval(cur, complex(z0))) > tol * scale:
            return m
        m += 1
        cur = pc.poly_derivative(cur)
    return m


def _multiplicity(tree, pot, which, lam):
    """Exact multiplicity of lam as a zero of phi via polynomial root
    multiplicity (fast path only)."""
    data = _shape_data(tree)
    fv = fundamental_values(pot, lam)
    z0 = fv.c.real
    if which == "D":
        return _poly_root_multiplicity(data["psihat"], z0)
    m = _poly_root_multiplicity(data["psi0"], z0)
    scale = max(1.0, abs(lam))
    if abs(fv.cp) < 1e-6 * math.sqrt(scale):
        m += 1  # zeros of c' in lambda are simple
    return m


def eigenvalues_in_interval(tree, pot, which, interval, tol=1e-8):
    """All zeros of phi_D or phi_N in [a, b] with multiplicity estimates.

    Scan step pi/(8 ell) in the sqrt(lambda) variable (shifted by the
    potential minimum for negative lambda), bisection on sign changes, and a
    local-minimum probe for even-order zeros.
    """
    a, b = interval
    if not a < b:
        raise ValueError("empty interval")
    if which not in ("D", "N"):
        raise ValueError("which must be 'D' or 'N'")
    _require_symmetric(pot)
    f = _phi_real(tree, pot, which)
    ell = pot.ell
    qmin = pot.min_value()
    step = math.pi / (8 * ell)

    # scan grid: uniform in sqrt(lambda - qmin) where phi oscillates, plus a
    # linear grid below the potential minimum where it does not
    pts = [a, b]
    if b > qmin:
        lo = math.sqrt(max(a - qmin, 0.0))
        hi = math.sqrt(b - qmin)
        t = lo
        while t < hi:
            pts.append(t * t + qmin)
            t += step / 2
    if a < qmin:
        top = min(b, qmin)
        pts.extend(a + (top - a) * i / 64.0 for i in range(65))
    grid = sorted(set(x for x in pts if a <= x <= b))

    vals = [f(x) for x in grid]
    scale = max(1.0, max(abs(v) for v in vals))
    roots = []
    for i in range(len(grid) - 1):
        x0, x1, v0, v1 = grid[i], grid[i + 1], vals[i], vals[i + 1]
        if v0 == 0.0:
            roots.append(x0)
        elif v0 * v1 < 0:
            roots.append(brentq(f, x0, x1, xtol=tol, rtol=8.9e-16))
    if vals[-1] == 0.0:
        roots.append(grid[-1])
    # even-order zeros: local minima of |phi| that touch zero
    for i in range(1, len(grid) - 1):
        if abs(vals[i]) < abs(vals[i - 1]) and abs(vals[i]) < abs(vals[i + 1]):
            if vals[i - 1] * vals[i] > 0 and vals[i] * vals[i + 1] > 0:
                res = minimize_scalar(lambda x: abs(f(x)),
                                      bracket=None,
                                      bounds=(grid[i - 1], grid[i + 1]),
                                      method="bounded",
                                      options={"xatol": tol * 1e-3})
                local = max(abs(vals[i - 1]), abs(vals[i + 1]))
                if abs(res.fun) < 1e-7 * max(local, 1e-30):
                    if pot.kind == "sampled":
                        raise ValueError("cannot certify multiplicity")
                    roots.append(res.x)
    # dedupe and attach multiplicities
    roots.sort()
    out = []
    for r in roots:
        if out and abs(r - out[-1][0]) < 1e-7 * (1 + abs(r)):
            continue
        if pot.kind == "sampled":
            out.append((r, 1))
        else:
            out.append((r, max(1, _multiplicity(tree, pot, which, r))))
    return out


# ---------------------------------------------------------------------------
# reduction identities

def _branch_phi(that, pot, lam):
    """(phi_D, phi_N) of one annotated branch: (P(c), psi_branch(c)/s) with
    the latter evaluated as c' * psi0(c)."""
    fv = fundamental_values(pot, lam)
    p_poly = pc.psi(that)
    q_poly = pc.ONE if that.p == 1 else pc.psi_hat(that)
    # psi of the branch as a tree rooted at the original root: -z*P - Q
    psi_t = pc.poly_sub(pc.poly_neg(pc.poly_mul(pc.Z, p_poly)), q_poly)
    psi0_t = pc.poly_divexact(psi_t, pc.poly([-1, 0, 1]))
    phi_d = pc.poly_eval(p_poly, complex(fv.c))
    phi_n = complex(fv.cp) * pc.poly_eval(psi0_t, complex(fv.c))
    return phi_d, phi_n


def reduction_identities_check(tree, pot, lam):
    """Residuals of the branch-sum formula for phi_N and of the two
    root-split product formulas.  All three are exact identities; residuals
    are relative."""
    _require_symmetric(pot)
    phi_d, phi_n = char_functions_fast(tree, pot, lam)
    pairs = tc.root_subtrees(tree)
    branch = [_branch_phi(that, pot, lam) for _t, that in pairs]

    # phi_N = sum_k phi_{N,k} prod_{j!=k} phi_{D,j}
    total = 0j
    for k in range(len(branch)):
        term = branch[k][1]
        for j in range(len(branch)):
            if j != k:
                term *= branch[j][0]
        total += term
    res_sum = abs(total - phi_n) / (1 + abs(phi_n))

    # root split: T1 = root + first branch, T2 = root + remaining branches
    if len(branch) >= 2:
        d1, n1 = _split_phi(branch[:1], pot, lam)
        d2, n2 = _split_phi(branch[1:], pot, lam)
        res_n = abs(d1 * n2 + n1 * d2 - phi_n) / (1 + abs(phi_n))
        res_d = abs(d1 * d2 - phi_d) / (1 + abs(phi_d))
    else:
        # degenerate split: T2 a single vertex with phi_D = 1, phi_N = 0
        res_n = abs(branch[0][1] * 1 + 0 * branch[0][0] - phi_n) / (1 + abs(phi_n))
        res_d = abs(branch[0][0] - phi_d) / (1 + abs(phi_d))
    return {"branch_sum": res_sum, "split_phi_n": res_n, "split_phi_d": res_d}


def _split_phi(branches, pot, lam):
    """phi_D, phi_N of the subtree formed by the root and the given branches."""
    phi_d = 1 + 0j
    phi_n = 0j
    for k in range(len(branches)):
        term = branches[k][1]
        for j in range(len(branches)):
            if j != k:
                term *= branches[j][0]
        phi_n += term
        phi_d *= branches[k][0]
    return phi_d, phi_n


def spectrum_csv(rows):
    """Spectrum CSV: lambda, multiplicity, problem (12 significant digits)."""
    lines = ["lambda,multiplicity,problem"]
    for lam, mult, which in rows:
        lines.append("%s,%d,%s" % (format(lam, ".12g"), mult, which))
    return "\n".join(lines) + "\n"
