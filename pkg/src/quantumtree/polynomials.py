"""Exact rational polynomial arithmetic, characteristic polynomials of rooted
trees, branched continued fractions, and the annotated-subtree catalog.

Polynomials are tuples of Fractions in ascending powers with no trailing
zeros; () is the zero polynomial.  Determinants of matrices over Z[z] are
computed with fraction-free (Bareiss) elimination, which keeps every
intermediate value a polynomial with integer coefficients.
"""

import json
from fractions import Fraction

from . import trees as tc

ZERO = ()
ONE = (Fraction(1),)
Z = (Fraction(0), Fraction(1))  # the monomial z


def poly(coeffs):
    """Normalize a coefficient sequence (ascending) to a trimmed tuple."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_deg(a):
    return len(a) - 1  # -1 for the zero polynomial


def poly_lead(a):
    return a[-1] if a else Fraction(0)


def poly_coeff(a, i):
    return a[i] if 0 <= i < len(a) else Fraction(0)


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly([poly_coeff(a, i) + poly_coeff(b, i) for i in range(n)])


def poly_sub(a, b):
    n = max(len(a), len(b))
    return poly([poly_coeff(a, i) - poly_coeff(b, i) for i in range(n)])


def poly_neg(a):
    return tuple(-c for c in a)


def poly_scale(a, k):
    k = Fraction(k)
    if k == 0:
        return ZERO
    return tuple(c * k for c in a)


def poly_mul(a, b):
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return poly(out)


def poly_eval(a, z):
    """Horner evaluation; exact for int/Fraction arguments."""
    if isinstance(z, (Fraction, int)):
        acc, conv = Fraction(0), Fraction
    elif isinstance(z, complex):
        acc, conv = 0j, complex
    else:
        acc, conv = 0.0, float
    for c in reversed(a):
        acc = acc * z + conv(c)
    return acc


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        k = len(r) - len(b)
        f = r[-1] / b[-1]
        q[k] = f
        for i, cb in enumerate(b):
            r[i + k] -= f * cb
        r.pop()
    return poly(q), poly(r)


def poly_divexact(a, b):
    q, r = poly_divmod(a, b)
    if r != ZERO:
        raise ValueError("inexact division")
    return q


def poly_gcd(a, b):
    """Monic gcd via the Euclidean algorithm."""
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ZERO
    return poly_scale(a, 1 / a[-1])


def poly_derivative(a):
    return poly([i * c for i, c in enumerate(a)][1:])


def poly_to_json(a):
    """Exact decimal strings, ascending powers (integers stay integers)."""
    def fmt(c):
        return str(c.numerator) if c.denominator == 1 else "%d/%d" % (
            c.numerator, c.denominator)
    return json.dumps({"coeffs": [fmt(c) for c in a]}, separators=(", ", ": "))


def poly_from_json(text):
    obj = json.loads(text)
    return poly([Fraction(s) for s in obj["coeffs"]])


def poly_str(a, var="z"):
    """Human-readable form, highest power first."""
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            term = "%s%s" % (mag, var) + ("^%d" % i if i > 1 else "")
            term = ("-" if c < 0 else "") + term
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


# ---------------------------------------------------------------------------
# determinants over Z[z]

def det_poly_matrix(m):
    """Fraction-free (Bareiss) determinant of a square matrix of polynomials."""
    n = len(m)
    if n == 0:
        return ONE
    a = [row[:] for row in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k] == ZERO:
            for r in range(k + 1, n):
                if a[r][k] != ZERO:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(poly_mul(a[k][k], a[i][j]),
                               poly_mul(a[i][k], a[k][j]))
                a[i][j] = poly_divexact(num, prev)
            a[i][k] = ZERO
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return poly_neg(d) if sign < 0 else d


def _pencil_matrix(tree, vertices):
    """-zD+A restricted to the given vertex list, degrees incl. annotations."""
    idx = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    m = [[ZERO] * n for _ in range(n)]
    for v in vertices:
        d = tc.degree(tree, v)
        m[idx[v]][idx[v]] = poly([0, -d])
    for u, v in tree.edges:
        if u in idx and v in idx:
            m[idx[u]][idx[v]] = ONE
            m[idx[v]][idx[u]] = ONE
    return m


_PSI_CACHE = {}


def psi(tree):
    """det(-zD+A) over all vertices, an integer polynomial of degree p."""
    key = ("psi", tc.canonical_code(tree))
    if key not in _PSI_CACHE:
        _PSI_CACHE[key] = det_poly_matrix(
            _pencil_matrix(tree, list(range(tree.p))))
    return _PSI_CACHE[key]


def psi_hat(tree):
    """Root-deleted determinant; deleted row/column but original degrees."""
    if tree.p < 2:
        raise ValueError("single vertex")
    key = ("psi_hat", tc.canonical_code(tree))
    if key not in _PSI_CACHE:
        vs = [v for v in range(tree.p) if v != tree.root]
        _PSI_CACHE[key] = det_poly_matrix(_pencil_matrix(tree, vs))
    return _PSI_CACHE[key]


def branch_polynomials(tree):
    """Per root branch: (P_k, Q_k) = (psi of the annotated hat-subtree,
    its root-deleted determinant, 1 for a single-vertex branch)."""
    out = []
    for _t_k, that in tc.root_subtrees(tree):
        p_k = psi(that)
        q_k = ONE if that.p == 1 else psi_hat(that)
        out.append((p_k, q_k, that))
    return out


# ---------------------------------------------------------------------------
# branched continued fractions

class BranchedFraction:
    """Recursive degree-annotated mirror of the tree.

    value(z) = -d*z - sum over children of 1/value(child); a childless node
    has d = 1 and value -z.
    """

    def __init__(self, d, children=()):
        self.d = int(d)
        self.children = tuple(children)

    def __eq__(self, other):
        return (isinstance(other, BranchedFraction)
                and bcf_text(self) == bcf_text(other))

    def __repr__(self):
        return "BranchedFraction(%r)" % bcf_text(self)


def bcf_expand(tree):
    """Mirror the tree's vertices into a BranchedFraction."""
    if tree.p < 2:
        raise ValueError("single vertex")
    kids = tree.children()

    def build(v):
        return BranchedFraction(tc.degree(tree, v),
                                [build(c) for c in kids[v]])

    return build(tree.root)


def bcf_eval(f, z):
    """Exact rational value; raises on a vanishing inner denominator."""
    z = Fraction(z)
    total = -f.d * z
    for child in f.children:
        val = bcf_eval(child, z)
        if val == 0:
            raise ZeroDivisionError("pole at %s" % z)
        total -= Fraction(1) / val
    return total


def _bcf_sort_key(node):
    return bcf_text(node)


def bcf_text(f):
    """Canonical text: pendant children aggregate to "+m/z", other children
    render as "-1/(...)" sorted by their own canonical text."""
    head = "-z" if f.d == 1 else "-%dz" % f.d
    pend = sum(1 for c in f.children if not c.children)
    inner = sorted((c for c in f.children if c.children), key=_bcf_sort_key)
    out = head
    if pend:
        out += "+%d/z" % pend
    for c in inner:
        out += "-1/(%s)" % bcf_text(c)
    return out


# ---------------------------------------------------------------------------
# annotated-subtree catalog

def catalog_key(p):
    """Deterministic key for a catalog polynomial: exact integer coefficient
    tuple, ascending powers."""
    return tuple(int(c) for c in p)


_CATALOG_CACHE = {}


def subtree_catalog(max_edges):
    """All annotated hat-subtrees with at most `max_edges` edges, keyed by
    their exact determinant polynomial.

    Every catalog entry is a rooted tree whose root carries a +1 degree
    annotation (the deleted edge towards the original root).  Values are
    lists of (tree, P, Q) with P the determinant polynomial of the annotated
    tree and Q its root-deleted companion.
    """
    if not (0 <= max_edges <= 11):
        raise ValueError("p out of range")
    if max_edges in _CATALOG_CACHE:
        return _CATALOG_CACHE[max_edges]
    cat = {}
    for n_edges in range(0, max_edges + 1):
        for plain in tc.enumerate_rooted_trees(n_edges + 1):
            ann = tc.RootedTree(p=plain.p, root=plain.root, edges=plain.edges,
                                degree_bonus=((plain.root, 1),))
            p_poly = psi(ann)
            q_poly = ONE if ann.p == 1 else psi_hat(ann)
            cat.setdefault(catalog_key(p_poly), []).append((ann, p_poly, q_poly))
    _CATALOG_CACHE[max_edges] = cat
    return cat
