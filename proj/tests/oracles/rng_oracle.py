"""Reference xoshiro256** streams, written to rng_golden.txt.

Each block: seed, stream, the four state words after seeding, then the first
eight next_u64 outputs, four next_unit values and four next_gaussian values
(doubles as IEEE-754 hex bit patterns) drawn from a fresh stream.
"""
import math
import struct
import sys

M = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SEED_SALT = 0x6A09E667F3BCC908
STREAM_SALT = 0xBB67AE8584CAA73B


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & M


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return z ^ (z >> 31)


class Xoshiro:
    def __init__(self, seed, stream):
        sm = mix64(seed ^ SEED_SALT) ^ rotl(mix64((stream + STREAM_SALT) & M), 32)
        self.s = []
        for _ in range(4):
            sm = (sm + GOLDEN) & M
            self.s.append(mix64(sm))
        if not any(self.s):
            self.s = [GOLDEN, SEED_SALT, STREAM_SALT, 0x3C6EF372FE94F82B]

    def u64(self):
        s = self.s
        result = (rotl((s[1] * 5) & M, 7) * 9) & M
        t = (s[1] << 17) & M
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return result

    def unit(self):
        return (self.u64() >> 11) * 2.0 ** -53

    def gaussian(self):
        while True:
            u = self.unit()
            v = 1.7156 * (self.unit() - 0.5)
            if u <= 0.0:
                continue
            x = u - 0.449871
            y = abs(v) + 0.386595
            q = x * x + y * (0.19600 * y - 0.25472 * x)
            if q < 0.27597:
                return v / u
            if q > 0.27846:
                continue
            if v * v <= -4.0 * u * u * math.log(u):
                return v / u


def hexd(v):
    return "%016x" % struct.unpack("<Q", struct.pack("<d", v))[0]


CASES = [(0, 0), (0, 1), (1, 0), (42, 7), (2**64 - 1, 3), (123456789, 2**40)]


def main(path):
    with open(path, "w") as out:
        out.write("# seed stream | state[4] | u64[8] | unit[4] | gaussian[4]\n")
        for seed, stream in CASES:
            g = Xoshiro(seed, stream)
            state = list(g.s)
            u = [g.u64() for _ in range(8)]
            g = Xoshiro(seed, stream)
            un = [g.unit() for _ in range(4)]
            g = Xoshiro(seed, stream)
            ga = [g.gaussian() for _ in range(4)]
            fields = [str(seed), str(stream)]
            fields += ["%016x" % w for w in state]
            fields += ["%016x" % w for w in u]
            fields += [hexd(v) for v in un]
            fields += [hexd(v) for v in ga]
            out.write(" ".join(fields) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "rng_golden.txt")
