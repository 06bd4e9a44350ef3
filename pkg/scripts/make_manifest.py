"""Regenerate src/hollowlat/data/default.manifest.

    python3 scripts/make_manifest.py > src/hollowlat/data/default.manifest
"""
from itertools import combinations_with_replacement

from hollowlat.core import primes
from hollowlat.families import generate

POOL = ["chain_power k=1", "chain_power k=2", "chain_power k=3", "chain_power k=4", "b4",
        "zmod m=4", "zmod m=6", "zmod m=8", "zmod m=9", "zmod m=12"]
MAX_PRODUCT = 36


def functional(line):
    kind, *kv = line.split()
    return f"{kind}({','.join(kv)})"


def main():
    out = ["# default corpus, generated by scripts/make_manifest.py", "# one family spec per line"]
    out += [f"zmod m={m}" for m in range(2, 61)]
    out += [f"chain_power k={k}" for k in range(1, 7)]
    out += [f"boolean k={k}" for k in range(1, 5)]
    out += ["b4"]
    out += ["frame poset=a<b;a<c", "frame poset=a<b points=c", "frame poset=a<c;b<c"]
    for x, y in combinations_with_replacement(POOL, 2):
        if generate(functional(x)).n * generate(functional(y)).n <= MAX_PRODUCT:
            out.append(f"product factors=[{functional(x)},{functional(y)}]")
    for m in range(2, 61):
        L = generate(f"zmod(m={m})")
        for a in L.elements:
            if a not in (L.bottom, L.top):
                out.append(f"quotient base=zmod(m={m}) element={L.names[a]}")
        for q in sorted(primes(L)):
            out.append(f"localization base=zmod(m={m}) prime={L.names[q]}")
    print("\n".join(out))


if __name__ == "__main__":
    main()
