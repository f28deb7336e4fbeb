"""Command-line surface: enumeration, forward simulation, spectra,
scattering, inversion, round-trip audits, and identity checks.

All numeric output uses fixed formatting (17 significant digits in JSON,
12 in CSV) so identical invocations produce byte-identical files.  Errors
exit nonzero with a machine-readable JSON object on stderr.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import polynomials as pc
from . import recover as rc
from . import scattering as sc
from . import sturm as st
from . import trees as tc


def _fail(message, code=1):
    sys.stderr.write(json.dumps({"error": message}) + "\n")
    return code


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_tree(path):
    with open(path) as fh:
        return tc.tree_from_json(fh.read())


def _parse_potential(spec, ell):
    if spec == "zero":
        return st.Potential.zero(ell)
    if spec.startswith("const:"):
        return st.Potential.constant(float(spec[len("const:"):]), ell)
    if spec.startswith("sampled:"):
        path = spec[len("sampled:"):]
        with open(path) as fh:
            values = [float(line) for line in fh.read().split() if line]
        return st.Potential.sampled(values, ell)
    raise ValueError("bad potential spec %r (zero | const:Q | sampled:FILE)"
                     % spec)


def _parse_range(text):
    a, b = text.split(":")
    lo, hi = float(a), float(b)
    if not lo < hi:
        raise ValueError("bad range %r" % text)
    return lo, hi


def _parse_p_range(text):
    if ".." in text:
        a, b = text.split("..")
    else:
        a = b = text
    lo, hi = int(a), int(b)
    if not 1 <= lo <= hi:
        raise ValueError("bad p range %r" % text)
    return lo, hi


def cmd_enum(args):
    lo, hi = _parse_p_range(args.p)
    lines = []
    for p in range(lo, hi + 1):
        for tree in tc.enumerate_rooted_trees(p):
            lines.append(tc.tree_to_json(tree))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_forward(args):
    tree = _load_tree(args.tree)
    psi = pc.psi(tree)
    psihat = pc.psi_hat(tree)
    obj = {"p": tree.p,
           "psi": json.loads(pc.poly_to_json(psi)),
           "psi_hat": json.loads(pc.poly_to_json(psihat)),
           "bcf": pc.bcf_text(pc.bcf_expand(tree)),
           "row": {"psi": pc.poly_str(psi), "psi_hat": pc.poly_str(psihat)}}
    _emit(json.dumps(obj, separators=(", ", ": ")) + "\n", args.out)
    return 0


def cmd_spectrum(args):
    tree = _load_tree(args.tree)
    pot = _parse_potential(args.potential, args.ell)
    interval = _parse_range(args.range)
    rows = []
    for which in ("D", "N"):
        for lam, mult in st.eigenvalues_in_interval(tree, pot, which,
                                                    interval, tol=args.tol):
            rows.append((lam, mult, which))
    _emit(st.spectrum_csv(rows), args.out)
    return 0


def cmd_scatter(args):
    tree = _load_tree(args.tree)
    pot = _parse_potential(args.potential, args.ell)
    schedule = tuple(int(x) for x in args.n.split(","))
    window = _parse_range(args.range) if args.range else (0.0, 100.0)
    rec = sc.scattering_info(tree, pot, n_schedule=schedule, tol=args.tol,
                             window=window)
    _emit(rec.to_json() + "\n", args.out)
    return 0


def cmd_invert(args):
    with open(args.record) as fh:
        rec = sc.ScatteringRecord.from_json(fh.read())
    psi, psihat = rc.interpolate_polynomials(rec)
    result = rc.recover_shape(psi, psihat)
    _emit(result.to_json() + "\n", args.out)
    return 0


def _roundtrip_one(tree, pot_spec, ell):
    pot = _parse_potential(pot_spec, ell)
    start = time.perf_counter()
    try:
        rec = sc.scattering_info(tree, pot)
        psi, psihat = rc.interpolate_polynomials(rec)
        result = rc.recover_shape(psi, psihat)
        codes = [tc.canonical_code(s) for s in result.shapes]
        ok = tc.canonical_code(tree) in codes
        count = len(result.shapes)
    except (ValueError, RuntimeError):
        ok, count = False, 0
    return (tc.canonical_code(tree), count, ok, time.perf_counter() - start)


def cmd_roundtrip(args):
    lo, hi = _parse_p_range(args.p)
    trees = [t for p in range(lo, hi + 1)
             for t in tc.enumerate_rooted_trees(p)]
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        rows = list(pool.map(
            lambda t: _roundtrip_one(t, args.potential, args.ell), trees))
    lines = ["tree_code,recovered_count,match,wall_time"]
    for code, count, ok, wall in rows:
        lines.append("%s,%d,%s,%s" % (code, count, str(ok).lower(),
                                      format(wall, ".12g")))
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(r[2] for r in rows) else 1


def cmd_check(args):
    lines = []
    worst = 0.0
    failed = False

    def report(name, residual, tol=1e-8):
        nonlocal worst, failed
        worst = max(worst, residual)
        ok = residual <= tol
        failed = failed or not ok
        lines.append("%s,%s,%s" % (name, format(residual, ".12g"),
                                   "pass" if ok else "FAIL"))

    trees = [t for p in range(2, 6) for t in tc.enumerate_rooted_trees(p)]
    pots = [st.Potential.zero(1.0), st.Potential.constant(-3.0, 1.0)]
    for tree in trees:
        code = tc.canonical_code(tree)
        # exact polynomial identities
        prod = pc.ONE
        total = pc.ZERO
        branches = pc.branch_polynomials(tree)
        for p_k, _q, _t in branches:
            prod = pc.poly_mul(prod, p_k)
        for k, (_p, q_k, _t) in enumerate(branches):
            term = q_k
            for j, (p_j, _qj, _tj) in enumerate(branches):
                if j != k:
                    term = pc.poly_mul(term, p_j)
            total = pc.poly_add(total, term)
        d0 = tc.degree(tree, tree.root)
        lhs = pc.poly_add(pc.psi(tree),
                          pc.poly_mul(pc.poly([0, d0]), pc.psi_hat(tree)))
        report("branch_product:%s" % code,
               0.0 if prod == pc.psi_hat(tree) else 1.0, 0.0)
        report("branch_sum:%s" % code,
               0.0 if lhs == pc.poly_neg(total) else 1.0, 0.0)
        from fractions import Fraction
        z0 = Fraction(3, 7)
        try:
            val = pc.bcf_eval(pc.bcf_expand(tree), z0)
            want = pc.poly_eval(pc.psi(tree), z0) / pc.poly_eval(
                pc.psi_hat(tree), z0)
            report("bcf_value:%s" % code, 0.0 if val == want else 1.0, 0.0)
        except ZeroDivisionError:
            pass
        for pot in pots:
            for lam in (0.7, 2.3):
                res = st.reduction_identities_check(tree, pot, lam)
                for key, r in res.items():
                    report("%s:%s:q=%g" % (key, code, pot.q), r)
                phi = st.char_functions(tree, pot, lam)
                fast = st.char_functions_fast(tree, pot, lam)
                rel = max(abs(phi[0] - fast[0]), abs(phi[1] - fast[1])) / (
                    1 + max(abs(fast[0]), abs(fast[1])))
                report("char_agreement:%s:q=%g" % (code, pot.q), rel)
                report("jost_matrix:%s:q=%g" % (code, pot.q),
                       sc.emat_residual(tree, pot, lam))
                s_val = sc.s_function(tree, pot, complex(lam) ** 0.5)
                report("unitarity:%s:q=%g" % (code, pot.q),
                       abs(abs(s_val) - 1.0))
    header = "identity,residual,status"
    _emit(header + "\n" + "\n".join(lines) + "\n", args.out)
    sys.stderr.write("worst residual %.3g\n" % worst)
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qtree",
        description="Forward and inverse scattering on equilateral "
                    "metric trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        sp = sub.add_parser(name)
        for flag, spec in flags.items():
            sp.add_argument("--" + flag.replace("_", "-"), **spec)
        sp.set_defaults(func=func)
        return sp

    add("enum", cmd_enum,
        p={"required": True, "help": "vertex count or range A..B"},
        out={"default": None})
    add("forward", cmd_forward,
        tree={"required": True}, out={"default": None})
    add("spectrum", cmd_spectrum,
        tree={"required": True},
        potential={"default": "zero"},
        ell={"type": float, "default": 1.0},
        range={"required": True, "help": "lambda window A:B"},
        tol={"type": float, "default": 1e-8},
        out={"default": None})
    add("scatter", cmd_scatter,
        tree={"required": True},
        potential={"default": "zero"},
        ell={"type": float, "default": 1.0},
        n={"default": "16,32,64,128"},
        tol={"type": float, "default": 1e-6},
        range={"default": None, "help": "common-spectrum window A:B"},
        out={"default": None})
    add("invert", cmd_invert,
        record={"required": True}, out={"default": None})
    add("roundtrip", cmd_roundtrip,
        p={"required": True},
        potential={"default": "zero"},
        ell={"type": float, "default": 1.0},
        workers={"type": int, "default": 4},
        out={"default": None})
    add("check", cmd_check, out={"default": None})
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("tol", "ell"):
        if getattr(args, name, None) is not None and getattr(args, name) <= 0:
            return _fail("%s must be positive" % name, 2)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        return _fail("file not found: %s" % exc.filename, 2)
    except (ValueError, RuntimeError, ZeroDivisionError) as exc:
        return _fail(str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
