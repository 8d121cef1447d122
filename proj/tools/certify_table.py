#!/usr/bin/env python3
"""One-off numeric certification of the zeta-word reduction table.

Reads the *_certify.txt companion written by make_relation_table (full
reductions, including zeta(2) monomials) and checks every identity
numerically to ~40 digits.  Multiple zeta values are evaluated through the
Hoelder convolution at 1/2,

    I(0; w; 1) = sum over splittings w = u.v of I(0; u; 1/2) * I(0; v~; 1/2),

where v~ is v reversed with the letters swapped; every factor is a
one-variable multiple polylogarithm at 1/2 whose series converges
geometrically.

Usage: tools/certify_table.py [certify-file]
"""

import sys
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

mp.mp.dps = 70
NTERMS = 280
TOL = mp.mpf(10) ** -40


def comp_to_bits(parts):
    bits = []
    for s in parts:
        bits.extend([0] * (s - 1))
        bits.append(1)
    return tuple(bits)


@lru_cache(maxsize=None)
def li_half(bits):
    """Iterated integral I(0; bits; 1/2), outermost letter first.

    Coefficients are built innermost letter first: applying dt/t divides the
    n-th coefficient by n; applying dt/(1-t) replaces it by the partial sum of
    earlier coefficients divided by n.
    """
    coeff = [mp.mpf(0)] * (NTERMS + 1)
    coeff[0] = mp.mpf(1)
    for letter in reversed(bits):
        new = [mp.mpf(0)] * (NTERMS + 1)
        if letter == 0:
            for n in range(1, NTERMS + 1):
                new[n] = coeff[n] / n
        else:
            partial = mp.mpf(0)
            for n in range(1, NTERMS + 1):
                partial += coeff[n - 1]
                new[n] = partial / n
        coeff = new
    if not bits:
        return mp.mpf(1)
    half = mp.mpf(1) / 2
    acc = mp.mpf(0)
    zp = mp.mpf(1)
    for n in range(1, NTERMS + 1):
        zp *= half
        acc += coeff[n] * zp
    return acc


def dual_flip(bits):
    return tuple(1 - b for b in reversed(bits))


@lru_cache(maxsize=None)
def mzv(parts):
    # The word's leading letters sit nearest 1; mapping that leg through
    # t -> 1-t turns it into a polylog word evaluated at 1/2 as well.
    bits = comp_to_bits(parts)
    return sum(li_half(dual_flip(bits[:cut])) * li_half(bits[cut:])
               for cut in range(len(bits) + 1))


def parse_comp(text):
    inner = text.strip()[1:-1].strip()
    if not inner:
        return ()
    return tuple(int(x) for x in inner.split(","))


def parse_side(rhs):
    """Parse 'c * (a)*(b) + ...' into [(mpf, [comps])]."""
    rhs = rhs.strip()
    if rhs == "0":
        return []
    terms = []
    for tok in rhs.replace(" - ", " + -").split(" + "):
        tok = tok.strip()
        coeff_txt, _, mono_txt = tok.partition("*")
        comps = []
        for chunk in mono_txt.replace(" ", "").split(")"):
            if chunk.startswith("*"):
                chunk = chunk[1:]
            if chunk.startswith("("):
                comps.append(parse_comp(chunk + ")"))
        coeff = Fraction(coeff_txt.strip())
        terms.append((mp.mpf(coeff.numerator) / coeff.denominator, comps))
    return terms


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else "data/mzv_relations_w8_certify.txt"
    worst = mp.mpf(0)
    checked = 0
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            lhs_txt, _, rhs_txt = line.partition("=")
            lhs = mzv(parse_comp(lhs_txt))
            rhs = mp.mpf(0)
            for coeff, comps in parse_side(rhs_txt):
                prod = coeff
                for comp in comps:
                    prod *= mzv(comp)
                rhs += prod
            err = abs(lhs - rhs)
            worst = max(worst, err)
            checked += 1
            if err > TOL:
                print(f"FAIL {lhs_txt.strip()} residual {mp.nstr(err, 5)}")
                sys.exit(1)
    print(f"certified {checked} entries, worst residual {mp.nstr(worst, 5)}")


if __name__ == "__main__":
    main()
