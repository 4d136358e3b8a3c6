"""Scan integer Sklyanin parameters and list those whose graded dimensions
differ from the polynomial ring's."""

import argparse
import itertools

from ncsurf.ncalgebra import graded_dims, sklyanin


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=int, default=3, dest="r")
    ap.add_argument("--degree", type=int, default=4)
    args = ap.parse_args()
    expected = graded_dims(sklyanin(1, 2, 3), args.degree)
    vals = range(-args.r, args.r + 1)
    for abc in itertools.product(vals, repeat=3):
        if abc == (0, 0, 0):
            continue
        dims = graded_dims(sklyanin(*abc), args.degree, mode="modular")
        if dims != expected:
            # confirm over Q, the modular screen can only overcount
            print(abc, graded_dims(sklyanin(*abc), args.degree))


if __name__ == "__main__":
    main()
