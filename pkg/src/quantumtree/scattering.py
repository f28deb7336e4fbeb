"""Lead-attached scattering: Jost function, S-function, common spectrum,
eigenvalue counting, and forward simulation of the scattering record.

The lead carries zero potential; the Jost function is
E(sqrt(lambda)) = phi_N(lambda) + i sqrt(lambda) phi_D(lambda) with the
characteristic functions in the polynomial normalization of sturm.
"""

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import polynomials as pc
from . import sturm as st
from . import trees as tc


@dataclass(frozen=True)
class JostSample:
    sqrt_lambda: complex
    e_plus: complex
    e_minus: complex


@dataclass
class ScatteringRecord:
    """Forward-simulated scattering information."""
    p: int
    ell: float
    f: list
    f_hat: list
    m: int
    common_eigenvalues: list
    n_used: int
    meta: dict = field(default_factory=dict)

    def to_json(self):
        def fmt(x):
            return float(format(float(x), ".17g"))
        obj = {"p": self.p, "ell": fmt(self.ell),
               "f": [fmt(x) for x in self.f],
               "f_hat": [fmt(x) for x in self.f_hat],
               "m": self.m,
               "common_eigenvalues": [fmt(x) for x in self.common_eigenvalues],
               "n_used": self.n_used,
               "meta": self.meta}
        return json.dumps(obj, separators=(", ", ": "))

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        return ScatteringRecord(p=obj["p"], ell=obj["ell"], f=list(obj["f"]),
                                f_hat=list(obj["f_hat"]), m=obj["m"],
                                common_eigenvalues=list(obj["common_eigenvalues"]),
                                n_used=obj["n_used"], meta=obj.get("meta", {}))


def absorb_pendant_root(tree):
    """Rewrite a pendant-root tree by deleting the root and re-rooting at its
    child (merging the root edge into the lead).  Only meaningful when the
    potential on the absorbed edge is zero."""
    kids = tree.children()
    if len(kids[tree.root]) != 1:
        raise ValueError("root is not pendant")
    child = kids[tree.root][0]
    vs = [v for v in range(tree.p) if v != tree.root]
    index = {v: i for i, v in enumerate(sorted(vs))}
    edges = [(index[u], index[v]) for u, v in tree.edges
             if u != tree.root and v != tree.root]
    return tc.RootedTree(p=tree.p - 1, root=index[child],
                         edges=tuple(sorted((min(e), max(e)) for e in edges)))


def jost(tree, pot, sqrt_lambda):
    """Jost samples E(+sqrt(lambda)) and E(-sqrt(lambda))."""
    sl = complex(sqrt_lambda)
    lam = sl * sl
    phi_d, phi_n = st.char_functions_fast(tree, pot, lam)
    return JostSample(sqrt_lambda=sl,
                      e_plus=phi_n + 1j * sl * phi_d,
                      e_minus=phi_n - 1j * sl * phi_d)


def s_function(tree, pot, sqrt_lambda):
    """Reflection coefficient S = E(-sqrt(lambda)) / E(sqrt(lambda))."""
    sample = jost(tree, pot, sqrt_lambda)
    if abs(sample.e_plus) < 1e-280:
        raise ZeroDivisionError("pole of S at sqrt_lambda=%s" % (sqrt_lambda,))
    return sample.e_minus / sample.e_plus


def common_spectrum(tree, pot, window):
    """(m, [lambda_j]) -- common zeros of phi_D and phi_N in the window and
    the multiplicity of lambda = 0 as a common zero."""
    lo, hi = window
    eigs_d = st.eigenvalues_in_interval(tree, pot, "D", (lo, hi))
    eigs_n = st.eigenvalues_in_interval(tree, pot, "N", (lo, hi))
    common = []
    for lam_d, _m in eigs_d:
        for lam_n, _mn in eigs_n:
            if abs(lam_d - lam_n) < 1e-7 * (1 + abs(lam_d)):
                common.append(0.5 * (lam_d + lam_n))
                break
    if pot.kind == "sampled":
        raise_flag = False  # multiplicity of 0 not certifiable; report 0/err
        phi_d0, phi_n0 = st.char_functions_fast(tree, pot, 0.0)
        if abs(phi_d0) < 1e-9 and abs(phi_n0) < 1e-9:
            raise ValueError("cannot certify")
        m = 0
    else:
        m_d = st._multiplicity(tree, pot, "D", 0.0)
        m_n = st._multiplicity(tree, pot, "N", 0.0)
        m = min(m_d, m_n)
    common = [lam for lam in common if abs(lam) > 1e-9]
    return m, sorted(common)


def scattering_info(tree, pot, n_schedule=(16, 32, 64, 128), tol=1e-6,
                    window=(0.0, 100.0)):
    """Forward-simulate the scattering record.

    F(sqrt(lambda)) = sin(sqrt(lambda) ell) phi_N(lambda) / sqrt(lambda) and
    F_hat = phi_D are evaluated along sqrt(lambda) = (arccos z + 2 pi n)/ell
    and the n -> infinity limit is Richardson-extrapolated (exact at every n
    for zero potential)."""
    p = tree.p
    ell = pot.ell

    def f_value(z, hat, n):
        sl = (math.acos(z) + 2 * math.pi * n) / ell
        lam = sl * sl
        phi_d, phi_n = st.char_functions_fast(tree, pot, lam)
        if hat:
            return phi_d.real
        return (math.sin(sl * ell) / sl) * phi_n.real

    def limit(z, hat):
        # two Richardson levels: the leading error is ~a/n with an ~b/n^2
        # tail, so both are eliminated and the remainder is O(1/n^3).  The
        # error of the finer extrapolant is then estimated by the successive
        # difference divided by 2^3 - 1.
        prev = None
        n_used = 0
        for n1 in n_schedule:
            f1 = f_value(z, hat, n1)
            f2 = f_value(z, hat, 2 * n1)
            f4 = f_value(z, hat, 4 * n1)
            extrap = (4 * (2 * f4 - f2) - (2 * f2 - f1)) / 3
            n_used = 4 * n1
            if prev is not None and abs(extrap - prev) / 7.0 <= tol:
                return extrap, n_used
            prev = extrap
        if len(n_schedule) == 1:
            return prev, n_used
        raise RuntimeError("limit not converged")

    f = []
    n_max = 0
    for k in range(p + 1):
        val, n_used = limit(k / p, False)
        f.append(val)
        n_max = max(n_max, n_used)
    f_hat = []
    for k in range(p):
        val, n_used = limit(k / (p - 1), True) if p > 1 else (0.0, 0)
        f_hat.append(val)
        n_max = max(n_max, n_used)
    m, common = common_spectrum(tree, pot, window)
    return ScatteringRecord(p=p, ell=ell, f=f, f_hat=f_hat, m=m,
                            common_eigenvalues=common, n_used=n_max,
                            meta={"potential": json.loads(pot.to_json())})


def _jost_zero_multiplicity(tree, pot, t0):
    """Multiplicity of t0 > 0 as a zero of t -> E(it), decided through the
    factor structure E(it) = c' psi0(c) - t psihat(c): a common root of the
    two polynomial factors at c(lambda_0) contributes its smaller
    multiplicity; other zeros are simple."""
    data = st._shape_data(tree)
    lam = -t0 * t0
    fv = st.fundamental_values(pot, lam)
    c0 = fv.c.real
    a = st._poly_root_multiplicity(data["psi0"], c0)
    if abs(fv.cp) < 1e-6 * math.sqrt(max(1.0, abs(lam))):
        a += 1
    b = st._poly_root_multiplicity(data["psihat"], c0)
    if a >= 1 and b >= 1:
        return max(1, min(a, b))
    return 1


def count_negative_eigenvalues(tree, pot, samples=4000):
    """Counts, with multiplicity, of the zeros of t -> E(it) on (0, T] and of
    the negative zeros of phi_N; T = sqrt(|min q|) + 1 from the lower
    spectral bound.  Zeros of E(it) are located by sign changes plus a
    local-minimum probe for even-order touches."""
    if pot.kind == "sampled":
        st._require_symmetric(pot)
    qmin = min(pot.min_value(), 0.0)
    t_top = math.sqrt(abs(qmin)) + 1.0

    def e_imag_axis(t):
        lam = -t * t
        phi_d, phi_n = st.char_functions_fast(tree, pot, lam)
        return phi_n.real - t * phi_d.real

    ts = np.linspace(t_top / samples, t_top, samples)
    vals = [e_imag_axis(t) for t in ts]
    scale = max(abs(v) for v in vals)
    if abs(vals[-1]) < 1e-9 * scale:
        raise RuntimeError("root near axis endpoint -- enlarge T")
    zeros = []
    for i in range(len(vals) - 1):
        if vals[i] == 0.0:
            zeros.append(ts[i])
        elif vals[i] * vals[i + 1] < 0:
            from scipy.optimize import brentq
            zeros.append(brentq(e_imag_axis, ts[i], ts[i + 1], xtol=1e-12))
    for i in range(1, len(vals) - 1):
        if (abs(vals[i]) < abs(vals[i - 1]) and abs(vals[i]) < abs(vals[i + 1])
                and vals[i - 1] * vals[i] > 0 and vals[i] * vals[i + 1] > 0):
            from scipy.optimize import minimize_scalar
            res = minimize_scalar(lambda t: abs(e_imag_axis(t)),
                                  bounds=(ts[i - 1], ts[i + 1]),
                                  method="bounded",
                                  options={"xatol": 1e-12})
            local = max(abs(vals[i - 1]), abs(vals[i + 1]))
            if abs(res.fun) < 1e-7 * max(local, 1e-30):
                zeros.append(res.x)
    zeros.sort()
    via_jost = 0
    last = None
    for t0 in zeros:
        if last is not None and abs(t0 - last) < 1e-9 * (1 + t0):
            continue
        last = t0
        via_jost += _jost_zero_multiplicity(tree, pot, t0)

    neg = st.eigenvalues_in_interval(tree, pot, "N",
                                     (-t_top * t_top, -1e-9))
    via_phi_n = sum(mult for _lam, mult in neg)
    return via_jost, via_phi_n


def emat_residual(tree, pot, lam):
    """Relative residual of det(-zD + i sqrt(lambda) s E_root + A) = s E."""
    fv = st.fundamental_values(pot, lam)
    if abs(fv.s) < 1e-12:
        raise ValueError("s vanishes at lambda")
    sl = cmath.sqrt(complex(lam))
    n = tree.p
    m = np.zeros((n, n), dtype=complex)
    for v in range(n):
        m[v, v] = -fv.c * tc.degree(tree, v)
    m[tree.root, tree.root] += 1j * sl * fv.s
    for u, v in tree.edges:
        m[u, v] = 1.0
        m[v, u] = 1.0
    lhs = np.linalg.det(m)
    phi_d, phi_n = st.char_functions_fast(tree, pot, lam)
    rhs = fv.s * (phi_n + 1j * sl * phi_d)
    return abs(lhs - rhs) / (1 + abs(rhs))


def s_ratio_diagnostic(tree, pot, sqrt_lambda):
    """S-only route to F/F_hat: i sin(sqrt(lambda) ell) (1+S)/(1-S).

    Returns (ratio_from_s, ratio_direct); the two agree wherever S != 1."""
    sl = complex(sqrt_lambda)
    s_val = s_function(tree, pot, sl)
    if abs(1 - s_val) < 1e-12:
        raise ZeroDivisionError("S = 1 at sqrt_lambda=%s" % (sqrt_lambda,))
    from_s = 1j * cmath.sin(sl * pot.ell) * (1 + s_val) / (1 - s_val)
    phi_d, phi_n = st.char_functions_fast(tree, pot, sl * sl)
    direct = (cmath.sin(sl * pot.ell) / sl) * phi_n / phi_d
    return from_s, direct


def s_trace_csv(tree, pot, sqrt_lambdas):
    """CSV trace of the S-function: sqrt_lambda, re_S, im_S, abs_S."""
    lines = ["sqrt_lambda,re_S,im_S,abs_S"]
    for sl in sqrt_lambdas:
        s_val = s_function(tree, pot, sl)
        lines.append(",".join(format(x, ".12g") for x in
                              (float(sl), s_val.real, s_val.imag, abs(s_val))))
    return "\n".join(lines) + "\n"
