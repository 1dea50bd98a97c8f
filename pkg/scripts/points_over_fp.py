"""Count F_p-points of the base-changed catalog schemes, two ways."""

import argparse

from monoglue.basechange import coequalizer_instance
from monoglue.catalog import SCHEMES, load


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("primes", nargs="*", type=int, default=[2, 3, 5, 7])
    args = ap.parse_args()
    env = load()
    print(f"{'X':8}" + "".join(f"{'p=' + str(p):>10}" for p in args.primes))
    for name in SCHEMES:
        row = []
        for p in args.primes:
            mono, ring = coequalizer_instance(env[name], p)
            row.append(str(ring) if mono == ring else f"{mono}!={ring}")
        print(f"{name:8}" + "".join(f"{c:>10}" for c in row))


if __name__ == "__main__":
    main()
