"""Write the specialization poset of every catalog monoid and scheme as DOT."""

import argparse
import pathlib

from monoglue.catalog import load
from monoglue.monoid import Monoid
from monoglue.schemes import GeomScheme
from monoglue.spectra import spec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=pathlib.Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    n = 0
    for name, obj in load().items():
        if isinstance(obj, Monoid):
            dot = spec(obj).to_dot(name)
        elif isinstance(obj, GeomScheme):
            dot = obj.to_dot()
        else:
            continue
        (args.outdir / f"{name}.dot").write_text(dot + "\n")
        n += 1
    print(f"wrote {n} files to {args.outdir}")


if __name__ == "__main__":
    main()
