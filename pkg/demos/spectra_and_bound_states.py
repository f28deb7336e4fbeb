"""Spectra and bound states: how the Dirichlet and standard spectra of a
star overlap while those of a chain interlace, and how an attractive
potential creates bound states countable from either side of the
Jost-function identity.
"""

import math

from quantumtree import (Potential, common_spectrum,
                         count_negative_eigenvalues, eigenvalues_in_interval,
                         from_edge_list, s_function)


def main():
    pot = Potential.zero(1.0)
    star = from_edge_list(4, 0, [(0, 1), (0, 2), (0, 3)])
    chain = from_edge_list(3, 0, [(0, 1), (1, 2)])

    print("star, Dirichlet spectrum on [0, 12]:")
    for lam, mult in eigenvalues_in_interval(star, pot, "D", (0.0, 12.0)):
        print("  lambda = %10.6f  multiplicity %d" % (lam, mult))
    print("star, standard spectrum on [-0.5, 12]:")
    for lam, mult in eigenvalues_in_interval(star, pot, "N", (-0.5, 12.0)):
        print("  lambda = %10.6f  multiplicity %d" % (lam, mult))

    m, common = common_spectrum(star, pot, (0.0, 120.0))
    print("star common eigenvalues on [0, 120]:",
          ["%.4f" % x for x in common])
    print("  expected family (pi/2 + pi n)^2:",
          ["%.4f" % (math.pi / 2 + math.pi * n) ** 2 for n in range(3)])

    m, common = common_spectrum(chain, pot, (0.0, 200.0))
    print("chain common eigenvalues on [0, 200]:", common, "(interlacing)")

    print("\nbound states under a deepening constant well (chain):")
    for q in (-1.0, -5.0, -10.0, -20.0):
        well = Potential.constant(q, 1.0)
        via_jost, via_phi = count_negative_eigenvalues(chain, well)
        print("  q = %6.1f  Jost-side count %d  characteristic-side count %d"
              % (q, via_jost, via_phi))

    print("\nreflection coefficient stays unimodular (chain, q = -5):")
    well = Potential.constant(-5.0, 1.0)
    for sl in (0.5, 1.5, 3.0, 6.0):
        s_val = s_function(chain, well, sl)
        print("  sqrt(lambda) = %4.1f  |S| = %.12f" % (sl, abs(s_val)))


if __name__ == "__main__":
    main()
