"""Walk the deformation family of FIX-PN through several values of t."""

import argparse
from fractions import Fraction

from cubicsheaves.complexes import hilbert_polynomial
from cubicsheaves.deform import family_defect, family_from_json, fiber_at, fiber_ideal, verify_transform_diagram
from cubicsheaves.moduli import classify
from cubicsheaves.reproduce import PN_FAMILY


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", default="0,1,-1,2,7,1/3")
    args = ap.parse_args()
    fam = family_from_json(PN_FAMILY)
    print("B_t A_t vanishes identically:", family_defect(fam) is None)
    for raw in args.t.split(","):
        t0 = Fraction(raw)
        pair = fiber_at(fam, t0)
        line = f"t = {str(t0):>4}: {classify(pair).stratum.value:<18} P(m) = {hilbert_polynomial(pair.A)}"
        if t0:
            verify_transform_diagram(fam, t0)
            line += "  ideal " + ", ".join(str(q) for q in fiber_ideal(fam, t0))
        print(line)


if __name__ == "__main__":
    main()
