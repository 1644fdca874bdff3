"""Hand table of the closed-form outputs, written to apriori_golden.txt.

Every constraint is stored as left-hand side minus right-hand side. Area
limits are in hectares, surfaces in m2. Positions are flat output indices
(objectives first, 0-based).

Each line: instance, point index, n, x..., then position:value pairs, values
as Python repr (shortest round trip).
"""
import math
import random
import sys

N = {1: 9, 2: 14, 3: 20, 4: 29, 5: 20, 6: 5, 7: 7, 8: 13, 9: 29}
P = {1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 2, 9: 2}

# (kind, constraint number, args); x indices are 1-based as in the paper.
RULES = {
    1: [("area", 2, 195), ("tower", 3), ("order", 4)],
    2: [("area", 1, 400), ("tower", 4), ("order", 5), ("tubes", 10, 11, 14, "x5"), ("less", 11, 13, 14)],
    3: [("area", 1, 80), ("tower", 3), ("order", 4), ("less", 10, 18, 19), ("tubes", 11, 16, 19, "x5")],
    4: [("area", 1, 200), ("tower", 3), ("order", 4), ("less", 10, 18, 19), ("tubes", 11, 16, 19, "x5"),
        ("less", 14, 22, 23), ("less", 15, 23, 20)],
    5: [("less", 6, 9, 10), ("tubes", 7, 7, 10, 6.0), ("less", 10, 13, 14), ("less", 11, 14, 11)],
    6: [],
    7: [("less", 3, 6, 7), ("tubes", 5, 4, 7, "x2")],
    8: [("area", 1, 400), ("tower", 2), ("order", 3), ("less", 6, 12, 13), ("tubes", 7, 10, 13, "x5")],
    9: [("area", 3, 500), ("tower", 4), ("order", 5), ("less", 11, 18, 19), ("tubes", 12, 16, 19, "x5"),
        ("less", 15, 22, 23), ("less", 16, 23, 20)],
}


def surface(x):
    h, th, r0, r1 = x[3], x[7], x[8], x[9]
    return math.pi * h * h * (r1 * r1 - r0 * r0) * th / 180.0


def evaluate(inst, x):
    """x is 1-based (x[0] unused). Returns {flat position: value}."""
    out = {}
    p = P[inst]
    if inst == 2:
        out[0] = surface(x)
    for rule in RULES[inst]:
        kind, c = rule[0], rule[1]
        pos = p + c - 1
        if kind == "area":
            out[pos] = surface(x) / 1.0e4 - rule[2]
        elif kind == "tower":
            out[pos] = 2 * x[1] - x[3]
        elif kind == "order":
            out[pos] = x[8] - x[9]
        elif kind == "less":
            out[pos] = x[rule[2]] - x[rule[3]]
        elif kind == "tubes":
            i, j, a = rule[2], rule[3], rule[4]
            width = x[int(a[1:])] if isinstance(a, str) else a
            out[pos] = x[i] * x[j] - width * math.pi / 2.0
    return out


def main(path):
    rng = random.Random(20240917)
    with open(path, "w") as out:
        out.write("# instance point n x... | pos:value ...\n")
        for inst in sorted(N):
            for k in range(20):
                # Wide positive values; the integer coordinates do not enter these formulas.
                x = [0.0] + [rng.choice([rng.uniform(0.001, 1.0), rng.uniform(1.0, 300.0)]) for _ in range(N[inst])]
                vals = evaluate(inst, x)
                fields = [str(inst), str(k), str(N[inst])] + [repr(v) for v in x[1:]]
                fields.append("|")
                fields += ["%d:%r" % (pos, vals[pos]) for pos in sorted(vals)]
                out.write(" ".join(fields) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "apriori_golden.txt")
