"""Tokenization shared by the data generators; mirrors the C++ ingest rules."""
import re
import string

PUNCT = set(string.punctuation)


def normalize(surface):
    s = surface
    while s and s[0] in PUNCT:
        s = s[1:]
    while s and s[-1] in PUNCT:
        s = s[:-1]
    return s.lower()


def parse_transcript(text):
    """Returns (sentences, laughter_after): sentences are lists of surface
    words, laughter_after holds the index of the sentence each laughter
    marker follows."""
    sentences, laughter = [], []

    def add(chunk):
        words = [w for w in chunk.split() if normalize(w)]
        if words:
            sentences.append(words)

    for line in text.splitlines():
        pending = ""
        pos = 0
        for m in re.finditer(r"\[([^\]]*)\]", line):
            pending += line[pos:m.start()]
            if m.group(1).strip().lower() == "laughter":
                add(pending)
                pending = ""
                after = len(sentences) - 1
                if not laughter or laughter[-1] != after:
                    laughter.append(after)
            else:
                pending += " "
            pos = m.end()
        pending += line[pos:]
        add(pending)
    return sentences, laughter


def heuristic_syllables(word):
    letters = [c.lower() for c in word if c.isalpha()]
    vowels = set("aeiouy")
    groups, in_group = 0, False
    for c in letters:
        v = c in vowels
        if v and not in_group:
            groups += 1
        in_group = v
    n = len(letters)
    if n > 3 and letters[-1] == "e" and letters[-2] not in vowels and \
            not (letters[-2] == "l" and letters[-3] not in vowels):
        groups -= 1
    return max(groups, 1)


def load_dict(path):
    entries = {}
    for line in open(path, encoding="utf-8"):
        if line.startswith(";;;") or not line.strip():
            continue
        word, *phones = line.split()
        entries.setdefault(word.lower(), phones)
    return entries


def syllables(word, entries):
    phones = entries.get(word)
    if phones:
        n = sum(1 for p in phones if p[-1].isdigit())
        if n:
            return n
    return heuristic_syllables(word)
