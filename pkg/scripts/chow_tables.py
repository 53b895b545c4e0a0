"""Print every Betti table, the M1 ring relation and where it departs from the stored one."""

from cubicsheaves import chow


def main():
    tables = chow.betti_tables()
    for space in chow.SPACES:
        b = tables[space]
        flag = "" if b.is_palindromic() else "  (not palindromic)"
        print(f"{space:<8} {b}{flag}")
    print()
    print("M1 via bundle formulas agrees:", chow.betti("M1") == chow.betti_M1_via_bundles())
    cmp = chow.compare_u_relation()
    print("computed u-relation:")
    print("  " + chow.m1_chow_ideal().relation_string("u"))
    print("coefficients differing from the stored relation (computed, stored):")
    for mono, (a, b) in sorted(cmp.differences().items()):
        print(f"  {mono:<14} {a:>6} {b:>6}")
    print("stored relation equals the unreduced truncated series:",
          chow.truncated_series_relation() == cmp.reference)


if __name__ == "__main__":
    main()
