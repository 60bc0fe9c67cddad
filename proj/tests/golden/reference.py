#!/usr/bin/env python3
"""Independent reference for the seeded generator.

Re-implements SplitMix64, xoshiro256**, the bounded draw, partial
Fisher-Yates and the column-by-column generator in plain Python, then
writes the golden corpus the C++ tests compare against byte for byte.

    python3 tests/golden/reference.py            # rewrite goldens
    python3 tests/golden/reference.py --print    # show scalar fixtures
"""

import pathlib
import sys

MASK = (1 << 64) - 1


def splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return state, z ^ (z >> 31)


def derive_seed(master, index):
    return splitmix64((master + index) & MASK)[1]


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK


class Xoshiro:
    def __init__(self, seed):
        st = seed & MASK
        self.s = []
        for _ in range(4):
            st, out = splitmix64(st)
            self.s.append(out)

    def next(self):
        s = self.s
        result = (rotl((s[1] * 5) & MASK, 7) * 9) & MASK
        t = (s[1] << 17) & MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return result

    def below(self, bound):
        threshold = (-bound) % bound  # == (2**64 - bound) % bound
        while True:
            r = self.next()
            if r >= threshold:
                return r % bound


def random_subset(pool, count, rng):
    work = list(pool)
    for i in range(count):
        j = i + rng.below(len(work) - i)
        work[i], work[j] = work[j], work[i]
    return sorted(work[:count])


def generate(m, n, a, b, seed):
    assert a * m == b * n
    rng = Xoshiro(seed)
    s = [0] * m
    rows = [[0] * n for _ in range(m)]
    for t in range(n):
        lower = a + t - n
        a1 = [i for i in range(m) if s[i] == lower]
        a2 = [i for i in range(m) if lower < s[i] < a]
        chosen = random_subset(a2, b - len(a1), rng)
        for i in a1 + chosen:
            rows[i][t] = 1
            s[i] += 1
    return ["".join(map(str, r)) for r in rows]


# (m, n, a, b, seed): squares, rectangles, forced and tiny cases.
CORPUS = [
    (5, 5, 3, 3, 7),
    (5, 5, 3, 3, 8),
    (3, 3, 0, 0, 1),
    (3, 3, 3, 3, 1),
    (3, 3, 1, 1, 42),
    (4, 4, 2, 2, 0),
    (6, 6, 4, 4, 2024),
    (8, 8, 3, 3, 123456789),
    (10, 10, 5, 5, 99),
    (16, 16, 7, 7, 31337),
    (4, 6, 3, 2, 5),
    (6, 4, 2, 3, 5),
    (3, 5, 5, 3, 11),
    (6, 9, 6, 4, 77),
    (12, 8, 2, 3, 18446744073709551615),
    (10, 15, 9, 6, 3),
    (2, 8, 4, 1, 64),
    (9, 3, 1, 3, 13),
    (20, 30, 12, 8, 271828),
    (70, 70, 35, 35, 314159),
]


def golden_name(m, n, a, b, seed):
    return f"gen_m{m}_n{n}_a{a}_b{b}_s{seed}.dense"


def main():
    here = pathlib.Path(__file__).resolve().parent
    if "--print" in sys.argv:
        print("splitmix64(1234567) first 5:",
              [splitmix64_seq(1234567, 5)])
        rng = Xoshiro(42)
        print("xoshiro(42) first 3:", [rng.next() for _ in range(3)])
        print("random_subset({0..4}, 2, seed 42):", random_subset(range(5), 2, Xoshiro(42)))
        print("derive_seed(7, 0..2):", [derive_seed(7, i) for i in range(3)])
        return
    lines = []
    for case in CORPUS:
        name = golden_name(*case)
        (here / name).write_text("\n".join(generate(*case)) + "\n")
        lines.append(" ".join(str(v) for v in case) + " " + name)
    (here / "corpus.txt").write_text("\n".join(lines) + "\n")


def splitmix64_seq(seed, count):
    out = []
    st = seed
    for _ in range(count):
        st, v = splitmix64(st)
        out.append(v)
    return out


if __name__ == "__main__":
    main()
