"""Regenerates the Tate's-algorithm fixtures from PARI/GP (via cypari).

Usage: python3 gen_tate_fixtures.py
Writes tate_regression.jsonl (hand-picked curves) and tate_corpus.jsonl
(random curves, many with high powers of 3 in the coefficients).
"""
import json
import random
from fractions import Fraction

from cypari import pari


def kodaira_symbol(code):
    code = int(code)
    if code == 1:
        return "I0"
    if code > 4:
        return "I%d" % (code - 4)
    if code in (2, 3, 4):
        return {2: "II", 3: "III", 4: "IV"}[code]
    if code == -1:
        return "I0*"
    if code < -4:
        return "I%d*" % (-code - 4)
    return {-2: "II*", -3: "III*", -4: "IV*"}[code]


def local_data(coeffs):
    e = pari.ellinit([pari(str(c)) for c in coeffs])
    if pari.ellinit(e) is None or int(pari.length(e)) == 0:
        return None
    red = pari.elllocalred(e, 3)
    # v_3 of the minimal discriminant = v_3(disc) - 12 * v_3(u)
    u = red[2][0]
    vd = int(pari.valuation(e[11], 3)) - 12 * int(pari.valuation(u, 3))
    return {"kodaira": kodaira_symbol(red[1]), "v_delta_min": vd, "conductor_exponent": int(red[0])}


def record(coeffs, cid=None):
    if pari.ellinit([pari(str(c)) for c in coeffs]).length() == 0:
        return None
    out = {"a_invariants": [str(Fraction(c)) for c in coeffs]}
    if cid:
        out["id"] = cid
    out.update(local_data(coeffs))
    return out


REGRESSION = [
    ("x3+9", [0, 0, 0, 0, 9]),
    ("x3+729", [0, 0, 0, 0, 729]),
    ("x3-x", [0, 0, 0, -1, 0]),
    ("x3+3", [0, 0, 0, 0, 3]),
    ("x3+1", [0, 0, 0, 0, 1]),
    ("x3+243", [0, 0, 0, 0, 243]),
    ("x3+1/3", [0, 0, 0, 0, Fraction(1, 3)]),
    ("x3-3x", [0, 0, 0, -3, 0]),
    ("x3-27x", [0, 0, 0, -27, 0]),
    ("x3+x2+3", [0, 1, 0, 0, 3]),
    ("xy+x3+3", [1, 0, 0, 0, 3]),
    ("x3+3x2+27", [0, 3, 0, 0, 27]),
]


def main():
    with open("tate_regression.jsonl", "w") as fh:
        for cid, c in REGRESSION:
            fh.write(json.dumps(record(c, cid)) + "\n")

    rng = random.Random(20241016)
    seen = 0
    with open("tate_corpus.jsonl", "w") as fh:
        while seen < 3000:
            coeffs = []
            for i in range(5):
                c = rng.randint(-9, 9) * 3 ** rng.choice([0, 0, 1, 1, 2, 3, 4, 5, 6, 7])
                if rng.random() < 0.05:
                    c = Fraction(c, rng.choice([2, 3, 5, 9]))
                coeffs.append(c)
            e = pari.ellinit([pari(str(c)) for c in coeffs])
            if e.length() == 0:
                continue
            fh.write(json.dumps(record(coeffs)) + "\n")
            seen += 1


if __name__ == "__main__":
    main()
