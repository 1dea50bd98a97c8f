"""Print |Hom(Spec N, X)| next to the descent count for catalog schemes."""

import argparse

from monoglue.catalog import SCHEMES, load
from monoglue.monoid import free
from monoglue.schemes import evaluate_via_descent, h_functor, hom_schemes, natural_bijection


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=2, help="truncation for F1[t]")
    args = ap.parse_args()
    env = load()
    targets = [env["F1"], env["C2"], env["C3"], env["B"], free(["t"], name="F1[t]")]
    print(f"{'X':8}" + "".join(f"{N.name:>12}" for N in targets))
    for name in SCHEMES:
        X = env[name]
        F = h_functor(X)
        cells = []
        for N in targets:
            A = hom_schemes(N, X, args.degree)
            B = evaluate_via_descent(F, N, args.degree)
            mark = "" if natural_bijection(A, B) is not None else "!"
            cells.append(f"{len(A)}/{len(B)}{mark}{'*' if A.truncated else ''}")
        print(f"{name:8}" + "".join(f"{c:>12}" for c in cells))
    print("geometric/descent; * truncated enumeration, ! no bijection")


if __name__ == "__main__":
    main()
