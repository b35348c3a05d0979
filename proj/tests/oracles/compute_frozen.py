"""Independent scalar/brute-force oracle for the frozen values in the unit tests.

Uses mpmath at 50 digits and explicit path enumeration, with no shared code
with the C++ library. Run: python3 tests/oracles/compute_frozen.py
"""
import itertools
import math

from mpmath import mp, mpf, exp, sqrt

mp.dps = 50


def crr(q, sigma, T, N):
    dt = mpf(T) / N
    beta = (exp(-q * dt) + exp((q + sigma ** 2) * dt)) / 2
    u = beta + sqrt(beta ** 2 - 1)
    d = 1 / u
    p = (exp(q * dt) - d) / (u - d)
    return beta, u, d, p


def enumerate_value(S0, K, u, d, probs, q, T, kind):
    N = len(probs)
    total = mpf(0)
    for bits in itertools.product([0, 1], repeat=N):
        s = mpf(S0)
        prices = []
        prob = mpf(1)
        for b, pt in zip(bits, probs):
            s = s * (u if b else d)
            prices.append(s)
            prob *= pt if b else (1 - pt)
        if kind == "euro-call":
            v = max(prices[-1] - K, 0)
        elif kind == "euro-put":
            v = max(K - prices[-1], 0)
        elif kind == "asian-put":
            v = max(K - sum(prices) / N, 0)
        else:
            v = max(K - min(prices), 0)
        total += prob * v
    return exp(-q * T) * total


if __name__ == "__main__":
    b, u, d, p = crr(mpf("0.06"), mpf("0.30"), 1, 2)
    print("crr(q=0.06,sigma=0.30,T=1,N=2): beta=%s u=%s d=%s p=%s" % (
        mp.nstr(b, 17), mp.nstr(u, 17), mp.nstr(d, 17), mp.nstr(p, 17)))

    for kind in ["euro-put", "asian-put", "lookback-put", "euro-call"]:
        v = enumerate_value(4, 5, mpf(2), mpf("0.5"), [mpf("0.5")] * 2, 0, 1, kind)
        print("hand N=2 %s = %s" % (kind, mp.nstr(v, 17)))

    # Round-robin partition N=10, M=3: k = min(N, ceil(log2 M)+4) = 6.
    N, M = 10, 3
    k = min(N, math.ceil(math.log2(M)) + 4)
    owned = [[b for b in range(2 ** k) if b % M == m] for m in range(M)]
    paths = set()
    dup = 0
    for m in range(M):
        for b in owned[m]:
            for s in range(2 ** (N - k)):
                c = (b << (N - k)) | s
                dup += c in paths
                paths.add(c)
    print("partition N=10 M=3: k=%d blocks=%s union=%d dup=%d" % (
        k, [len(o) for o in owned], len(paths), dup))

    # Largest remainder for p1 = 0.9, M=2, R=1024.
    shares = [1024 * 0.1, 1024 * 0.9]
    print("alloc shares", shares)

    # Desk-scale Asian/lookback put at N=12 (K=100, S=20, q=0.06, sigma=3.0, T=1).
    _, u, d, p = crr(mpf("0.06"), mpf("3.0"), 1, 12)
    for kind in ["asian-put", "lookback-put", "euro-put", "euro-call"]:
        v = enumerate_value(20, 100, u, d, [p] * 12, mpf("0.06"), 1, kind)
        print("N=12 K=100 S=20 sigma=3 %s = %s" % (kind, mp.nstr(v, 17)))
