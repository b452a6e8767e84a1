"""Builds data/lexicon/cmudict-subset.dict and data/lexicon/vectors.txt.

usage: make_lexicon.py CMUDICT_PATH

The pronunciation subset is cut from the CMU dictionary for every word the
fixtures and tests use. Word vectors are synthetic: each word gets a seeded
random direction, and words in a concept group share a common axis so their
cosine similarity sits near the group's target.
"""
import pathlib
import sys

import numpy as np

from fixture_text import normalize, parse_transcript

ROOT = pathlib.Path(__file__).resolve().parents[1]
DIM = 50
SEED = 20210524

# (target cosine, words)
GROUPS = [
    (0.85, ["cop", "cops", "police", "officer"]),
    (0.97, ["italy", "italian", "italians", "rome"]),
    (0.92, ["germany", "german", "germans", "berlin"]),
    (0.85, ["evil", "wicked", "bad"]),
    (0.90, ["have", "has", "had", "having"]),
    (0.60, ["people", "community", "guys", "folks"]),
    (0.70, ["email", "emails", "spam", "mail", "mailbox", "inbox", "letters"]),
    (0.80, ["recommend", "suggest", "advise"]),
    (0.70, ["money", "bank", "cash", "sum", "transfer"]),
    (0.70, ["lawyer", "law", "attorney"]),
    (0.90, ["cat", "kitten", "cats"]),
    (0.80, ["food", "pizza", "pasta", "dinner"]),
    (0.85, ["think", "thinks", "thought"]),
    # nationality words sit near the words for groups of people
    (0.30, ["italy", "italian", "italians", "germany", "german", "germans", "people", "community", "folks"]),
]

# Pairs pushed apart: (a, b, target cosine).
OPPOSED = [("evil", "stigma", -0.30)]

EXTRA = """
cat hat bat big bad bear kitten tomato potato table round chair house dog car
tree water sun moon book run walk talk happy sad red blue green city country
music dance song phone computer garden river mountain bread coffee tea window
door street school teacher student doctor nurse king queen river ocean island
summer winter morning evening friend family mother father brother sister baby
horse bird fish apple orange banana sugar salt paper pencil letter market shop
train plane ship road bridge castle forest desert storm rain snow wind fire
stone gold silver iron glass wood cloud sky star planet light dark fast slow
loud quiet old young new hot cold big small long short funny serious joke
laugh smile cry sing play work sleep dream write read cook eat drink buy sell
wicked awful wonderful brilliant stupid love hate pizza pasta dinner berlin rome
police officer cops cash transfer attorney suggest advise mail inbox folks
italians germans german had having kitten cats fucking
""".split()


def fixture_words():
    words = set()
    for transcript in (ROOT / "fixtures").glob("*/transcript.txt"):
        sentences, _ = parse_transcript(transcript.read_text(encoding="utf-8"))
        for s in sentences:
            words.update(normalize(w) for w in s)
    return words


def stopwords():
    src = (ROOT.parent / "src" / "lexicon.cpp").read_text(encoding="utf-8")
    body = src.split("kStopwords = {", 1)[1].split("};", 1)[0]
    return {w.strip().strip('"') for w in body.split(",") if w.strip()}


def unit(v):
    return v / np.linalg.norm(v)


def build_vectors(vocab):
    rng = np.random.default_rng(SEED)
    vecs = {w: unit(rng.standard_normal(DIM)) for w in sorted(vocab)}
    for target, words in GROUPS:
        axis = unit(rng.standard_normal(DIM))
        for w in words:
            if w in vecs:
                vecs[w] = unit(np.sqrt(target) * axis + np.sqrt(1 - target) * vecs[w])
    for a, b, target in OPPOSED:
        axis = unit(rng.standard_normal(DIM))
        s = np.sqrt(-target)
        vecs[a] = unit(-s * axis + np.sqrt(1 - s * s) * vecs[a])
        vecs[b] = unit(s * axis + np.sqrt(1 - s * s) * vecs[b])
    return vecs


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    vocab = fixture_words() | set(EXTRA) | stopwords()
    for _, words in GROUPS:
        vocab.update(words)

    cmu = {}
    for line in open(sys.argv[1], encoding="utf-8", errors="replace"):
        if line.startswith(";;;"):
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        word, *phones = line.split()
        if "(" in word:
            continue
        cmu.setdefault(word.lower(), phones)

    out = ROOT / "lexicon"
    with open(out / "cmudict-subset.dict", "w", encoding="utf-8") as f:
        f.write(";;; Subset of the CMU Pronouncing Dictionary for the bundled fixtures.\n")
        for w in sorted(vocab):
            if w in cmu:
                f.write(f"{w.upper()}  {' '.join(cmu[w])}\n")

    vecs = build_vectors(vocab)
    with open(out / "vectors.txt", "w", encoding="utf-8") as f:
        f.write(f"{len(vecs)} {DIM}\n")
        for w in sorted(vecs):
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vecs[w]) + "\n")

    missing = sorted(w for w in vocab if w not in cmu)
    print(f"{len(vocab)} words, {len(vocab) - len(missing)} pronunciations; heuristic for: {' '.join(missing)}")


if __name__ == "__main__":
    main()
