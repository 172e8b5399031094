#!/usr/bin/env python3
"""Independent Hall-Littlewood oracle; writes the golden tables in testdata/hl.

P_lambda comes from the symmetrization formula over S_n and the branching
coefficient from the conjugate-partition form of psi, so nothing here shares
code paths with the C++ chain evaluator.

    python3 tests/oracles/hl_golden.py [--out testdata/hl] [--check]
"""

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path


def multiplicities(parts):
    m = {}
    for x in parts:
        m[x] = m.get(x, 0) + 1
    return m


def v_m(m, t):
    out = Fraction(1)
    for j in range(1, m + 1):
        out *= (1 - t**j) / (1 - t)
    return out


def p_symmetrized(lam, xs, t):
    n = len(lam)
    assert len(xs) == n and len(set(xs)) == n
    total = Fraction(0)
    for w in itertools.permutations(range(n)):
        y = [xs[w[i]] for i in range(n)]
        term = Fraction(1)
        for i in range(n):
            term *= y[i] ** lam[i]
        for i in range(n):
            for j in range(i + 1, n):
                term *= (y[i] - t * y[j]) / (y[i] - y[j])
        total += term
    norm = Fraction(1)
    for m in multiplicities(lam).values():
        norm *= v_m(m, t)
    return total / norm


def conjugate(parts):
    parts = [x for x in parts if x > 0]
    if not parts:
        return []
    return [sum(1 for x in parts if x >= i) for i in range(1, max(parts) + 1)]


def psi(lam, mu, t):
    # psi_{lambda/mu} = prod over j >= 1 with theta'_j = 0, theta'_{j+1} = 1
    # of (1 - t^{m_j(mu)}), after shifting both to nonnegative parts.
    c = min(lam)
    lam = [x - c for x in lam]
    mu = [x - c for x in mu]
    lc, mc = conjugate(lam), conjugate(mu)
    width = max(len(lc), len(mc)) + 2
    lc += [0] * (width - len(lc))
    mc += [0] * (width - len(mc))
    theta = [lc[i] - mc[i] for i in range(width)]  # theta[i] is theta'_{i+1}
    mm = multiplicities([x for x in mu if x > 0])
    out = Fraction(1)
    for i in range(width - 1):
        if theta[i] == 0 and theta[i + 1] == 1:
            out *= 1 - t ** mm.get(i + 1, 0)
    return out


def interlacing_below(lam):
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    for mu in itertools.product(*ranges):
        yield tuple(reversed(sorted(mu)))


def geometric(n, t, start=0):
    return [t ** (start + i) for i in range(n)]


def corner_kernel(lam, t):
    n = len(lam)
    denom = p_symmetrized(lam, geometric(n, t), t)
    out = {}
    for mu in interlacing_below(lam):
        out[mu] = psi(lam, mu, t) * p_symmetrized(list(mu), geometric(n - 1, t, 1), t) / denom
    return out


def kth_corner(lam, k, t):
    dist = {tuple(lam): Fraction(1)}
    for _ in range(k - 1):
        nxt = {}
        for sig, prob in dist.items():
            for mu, q in corner_kernel(sig, t).items():
                nxt[mu] = nxt.get(mu, 0) + prob * q
        dist = nxt
    return dist


def lln_gaps(law, t):
    n = len(law[0][0])
    ew = []
    for j in range(1, n + 1):
        e = Fraction(0)
        for lam, prob in law:
            for sig, q in kth_corner(lam, j, t).items():
                e += prob * q * sum(sig)
        ew.append(e)
    ew.append(Fraction(0))
    return [ew[i] - ew[i + 1] for i in range(n)]


def q_eval(lam, points, t):
    k = len(points)
    parts = list(lam) + [0] * max(0, k - len(lam))
    if sum(1 for x in parts if x > 0) > k:
        return Fraction(0)
    parts = sorted(parts, reverse=True)[:k]
    b = Fraction(1)
    for part, m in multiplicities(parts).items():
        if part > 0:
            for j in range(1, m + 1):
                b *= 1 - t**j
    return b * p_symmetrized(parts, points, t)


def cauchy(a, b, t):
    out = Fraction(1)
    for x in a:
        for y in b:
            out *= (1 - t * x * y) / (1 - x * y)
    return out


def haar_corner(n, m, ambient, t, cutoff):
    qpts = [t**e for e in range(m - n + 1, ambient - n + 1)]
    kernel = cauchy(geometric(n, t), qpts, t)
    out = {}
    for top in range(cutoff + 1):
        for rest in itertools.product(range(top + 1), repeat=n - 1):
            lam = (top,) + tuple(rest)
            if list(lam) != sorted(lam, reverse=True):
                continue
            out[lam] = p_symmetrized(list(lam), geometric(n, t), t) * q_eval(lam, qpts, t) / kernel
    return out


def rat(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dist_json(d):
    return [{"signature": list(sig), "prob": rat(p)} for sig, p in sorted(d.items(), reverse=True) if p != 0]


def goldens():
    files = {}
    for lam, p in [((1, 0), 2), ((1, 0), 3), ((2, 1, 0), 2), ((1, 1, 0), 3), ((1, 0, 0), 2), ((2, 0, -1), 2)]:
        t = Fraction(1, p)
        name = "corner_" + "_".join(str(x).replace("-", "m") for x in lam) + f"_p{p}.json"
        files[name] = {
            "kind": "corner_distribution",
            "signature": list(lam),
            "p": p,
            "levels": [{"level": k, "distribution": dist_json(kth_corner(list(lam), k, t))}
                       for k in range(2, len(lam) + 1)],
        }
    for lam, p in [((1, 0), 2), ((1, 0), 3), ((2, 1, 0), 2), ((2, 1, 0), 3), ((1, 1, 0), 2), ((1, 1, 0), 3)]:
        t = Fraction(1, p)
        name = "gaps_" + "_".join(str(x) for x in lam) + f"_p{p}.json"
        files[name] = {"kind": "lln_gaps", "law": [{"signature": list(lam), "prob": "1"}], "p": p,
                       "gaps": [rat(g) for g in lln_gaps([(list(lam), Fraction(1))], Fraction(1, p))]}
    mix = [((1, 0), Fraction(1, 2)), ((0, 0), Fraction(1, 2))]
    files["gaps_mixture_10_00_p2.json"] = {
        "kind": "lln_gaps",
        "law": [{"signature": list(s), "prob": rat(q)} for s, q in mix],
        "p": 2,
        "gaps": [rat(g) for g in lln_gaps([(list(s), q) for s, q in mix], Fraction(1, 2))],
    }
    points = [Fraction(1), Fraction(2, 3), Fraction(-3, 5)]
    evals = []
    for lam in [(0, 0, 0), (1, 0, 0), (2, 1, 0), (1, 1, 1), (3, -1, -2), (2, 2, -1)]:
        for p in (2, 3):
            evals.append({"signature": list(lam), "p": p,
                          "value": rat(p_symmetrized(list(lam), points, Fraction(1, p)))})
    files["p_eval_3pts.json"] = {"kind": "p_eval", "points": [rat(x) for x in points], "values": evals}
    hc = haar_corner(2, 2, 3, Fraction(1, 2), 6)
    files["haar_corner_n2_m2_N3_p2.json"] = {"kind": "haar_corner", "n": 2, "m": 2, "ambient": 3, "p": 2,
                                            "cutoff": 6, "distribution": dist_json(hc)}
    return files


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[2] / "testdata" / "hl"))
    ap.add_argument("--check", action="store_true", help="compare against files on disk instead of writing")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bad = 0
    for name, content in goldens().items():
        text = json.dumps(content, indent=1) + "\n"
        if args.check:
            path = out / name
            if not path.exists() or path.read_text() != text:
                print(f"mismatch: {name}")
                bad += 1
        else:
            (out / name).write_text(text)
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
