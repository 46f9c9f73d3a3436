#!/usr/bin/env python3
"""Print a CHECK-section `CONST gcd = {...}` entry built by Euclid's algorithm."""
import argparse


def euclid(a, b):
    while b:
        a, b = b, a % b
    return a


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--hi", type=int, default=16)
    ap.add_argument("--per-line", type=int, default=6)
    args = ap.parse_args()
    items = [f"{a} |-> {b} |-> {euclid(a, b)}" for a in range(args.hi + 1) for b in range(args.hi + 1)]
    lines = [", ".join(items[i:i + args.per_line]) for i in range(0, len(items), args.per_line)]
    print("  CONST gcd = {")
    print(",\n".join("    " + l for l in lines))
    print("  }")


if __name__ == "__main__":
    main()
