#!/usr/bin/env python3
"""Build the quotient representation for a deformed point evaluation.

Prints the Gram spectrum, the retained rank, and the generator matrices for
the worked two-dimensional example z = (1, 1), hbar = ln 2, then checks the
adjoint relation numerically.

    python scripts/gns_demo.py
    python scripts/gns_demo.py --z 1+1i,1-1i --hbar 0.5 --degree 3
"""

import argparse
import math

import numpy as np

from starprod.states import StateFunctional, WickPoint, gns_build


def parse_point(text):
    return WickPoint(tuple(complex(part.replace("i", "j"))
                           for part in text.split(",")))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--z", default="1+0i,1+0i")
    parser.add_argument("--hbar", type=float, default=math.log(2))
    parser.add_argument("--degree", type=int, default=2)
    args = parser.parse_args()

    state = StateFunctional(parse_point(args.z), args.hbar)
    data = gns_build(state, args.degree)
    print(f"point            {state.point.z}")
    print(f"hbar             {args.hbar:.6f}")
    print(f"basis size       {len(data.basis)}  (monomials of degree <= {args.degree})")
    with np.printoptions(precision=4, suppress=True):
        print(f"gram eigenvalues {data.eigenvalues}")
    print(f"retained rank    {data.rank}")
    if data.rank_gap_warning:
        print("warning: the rank cut is ambiguous at this tolerance")
    for i, op in sorted(data.operators.items()):
        print(f"left multiplication by w{i} (domain {op.shape[1]} -> range {op.shape[0]}):")
        with np.printoptions(precision=4, suppress=True):
            print(op)
    print(f"adjoint residual {data.adjoint_residual:.3e}")


if __name__ == "__main__":
    main()
