#!/usr/bin/env python3
"""Independent recount of the bundled fixtures.

Re-derives, without using the C++ code, every count and statistic that the
C++ tests freeze: wordnet record/link counts, corpus sizes, occurrence counts,
log-likelihood-ratio scores and the number of pairs the lexicon extractor keeps
at default settings. Exits non-zero if anything disagrees with the frozen values.
"""
import math
import os
import sys
from collections import defaultdict

HERE = os.path.dirname(os.path.abspath(__file__))
FIX = os.path.join(HERE, "..", "fixtures")
CONTENT_POS = {"n", "v", "a", "r"}

FROZEN = {
    "en.synsets": 20,
    "en.hyp_links": 19,
    "en.dangling": 0,
    "ro.synsets": 19,
    "ro.miscare_synsets": 2,
    "corpus.units": 12,
    "corpus.languages": 4,
    "corpus.target_nouns": 37,
    "corpus.movement_occurrences": 5,
    "corpus.movement_gold": 5,
    "lex_cs.movement_del": 2,
    "extract.ro": 3,
    "extract.cs": 4,
    "extract.bg": 4,
}


def records(path):
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            yield line.split("\t")


def wordnet_counts(path):
    ilis = set()
    links = []
    lemmas = defaultdict(int)
    for cols in records(path):
        ilis.add(cols[0])
        for lit in cols[2].split(","):
            lemmas[lit.rsplit(":", 1)[0]] += 1
        if len(cols) > 3 and cols[3]:
            for link in cols[3].split(","):
                rel, target = link.split(":", 1)
                links.append((rel, target))
    hyp = sum(1 for r, _ in links if r == "hyp")
    dangling = sum(1 for _, t in links if t not in ilis)
    return len(ilis), hyp, dangling, lemmas


def g2(a, b, c, d):
    def xlx(x):
        return x * math.log(x) if x > 0 else 0.0
    n = a + b + c + d
    return 2.0 * (xlx(a) + xlx(b) + xlx(c) + xlx(d)
                  - xlx(a + b) - xlx(a + c) - xlx(b + d) - xlx(c + d) + xlx(n))


def load_units(path):
    units = defaultdict(lambda: defaultdict(list))
    order = []
    for cols in records(path):
        uid, lang = cols[0], cols[1]
        if uid not in units:
            order.append(uid)
        units[uid][lang].append(cols)
    return order, units


def extract_count(order, units, target, source, min_score=9.0, min_cooc=2):
    both = [u for u in order if target in units[u] and source in units[u]]
    n = len(both)
    t_units = defaultdict(set)
    s_units = defaultdict(set)
    for u in both:
        for cols in units[u][target]:
            if cols[5] in CONTENT_POS:
                t_units[(cols[4].lower(), cols[5])].add(u)
        for cols in units[u][source]:
            if cols[5] in CONTENT_POS:
                s_units[(cols[4].lower(), cols[5])].add(u)
    kept = 0
    for (tl, tp), tu in t_units.items():
        for (sl, sp), su in s_units.items():
            if tp != sp:
                continue
            a = len(tu & su)
            if a < min_cooc:
                continue
            b = len(tu) - a
            c = len(su) - a
            d = n - a - b - c
            if a * d <= b * c:
                continue
            if g2(a, b, c, d) >= min_score:
                kept += 1
    return kept


def main():
    got = {}
    n, hyp, dangling, _ = wordnet_counts(os.path.join(FIX, "en.wn"))
    got["en.synsets"], got["en.hyp_links"], got["en.dangling"] = n, hyp, dangling
    n, _, _, ro_lemmas = wordnet_counts(os.path.join(FIX, "ro.wn"))
    got["ro.synsets"] = n
    got["ro.miscare_synsets"] = ro_lemmas["miscare"]

    order, units = load_units(os.path.join(FIX, "corpus.tsv"))
    got["corpus.units"] = len(order)
    got["corpus.languages"] = len({l for u in order for l in units[u]})
    en_tokens = [c for u in order for c in units[u].get("en", [])]
    got["corpus.target_nouns"] = sum(1 for c in en_tokens if c[5] == "n")
    mov = [c for c in en_tokens if c[4] == "movement" and c[5] == "n"]
    got["corpus.movement_occurrences"] = len(mov)
    got["corpus.movement_gold"] = sum(1 for c in mov if len(c) > 6)

    got["lex_cs.movement_del"] = sum(
        1 for c in records(os.path.join(FIX, "lex_cs.tsv")) if c[0] == "movement")

    for lang in ("ro", "cs", "bg"):
        got["extract." + lang] = extract_count(order, units, "en", lang)

    bad = 0
    for key, want in FROZEN.items():
        status = "ok" if got[key] == want else "MISMATCH"
        if got[key] != want:
            bad += 1
        print(f"{key}\t{got[key]}\t(frozen {want})\t{status}")

    # Contingency-table values frozen into the C++ lexicon tests.
    print("g2(50,0,0,50)\t%.15g" % g2(50, 0, 0, 50))
    print("g2(10,10,10,10)\t%.15g" % g2(10, 10, 10, 10))
    print("g2(4,0,0,8)\t%.15g" % g2(4, 0, 0, 8))
    print("g2(3,1,2,14)\t%.15g" % g2(3, 1, 2, 14))
    print("g2(2,0,0,10)\t%.15g" % g2(2, 0, 0, 10))
    print("g2(4,1,0,7)\t%.15g" % g2(4, 1, 0, 7))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
