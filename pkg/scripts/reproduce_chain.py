"""Print every partial word of the chain B'_m -> B_m for a few m."""

import argparse

from ncsurf.builders import gram_family, gram_family_blowup
from ncsurf.mutation import parse_word, trace_word
from ncsurf.selftest import CHAIN_WORD


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("m", type=int, nargs="*", default=[2, 3])
    args = ap.parse_args()
    for m in args.m:
        print(f"== m = {m}")
        start = gram_family_blowup(m)
        print(start, end="\n\n")
        for word, X in trace_word(start, parse_word(CHAIN_WORD, 4)):
            print(f"{word}:\n{X}\n")
        assert X == gram_family(m)


if __name__ == "__main__":
    main()
