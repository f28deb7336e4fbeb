"""Catalog of small rooted trees: characteristic polynomials and the
branched-continued-fraction text that mirrors each shape.

The ratio psi/psi_hat expands into a branched continued fraction whose
coefficients are the vertex degrees, so the printed expansion *is* the shape:
two trees print the same text exactly when they are rooted-isomorphic.
"""

from quantumtree import (bcf_expand, bcf_text, canonical_code,
                         enumerate_rooted_trees, psi, psi_hat)
from quantumtree.polynomials import poly_str


def main():
    for p in range(2, 6):
        trees = enumerate_rooted_trees(p)
        print("p = %d  (%d rooted shapes)" % (p, len(trees)))
        for tree in trees:
            row = (canonical_code(tree), poly_str(psi(tree)),
                   poly_str(psi_hat(tree)), bcf_text(bcf_expand(tree)))
            print("  %-18s psi = %-22s psi_hat = %-14s %s" % row)
        print()


if __name__ == "__main__":
    main()
