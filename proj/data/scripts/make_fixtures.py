"""Synthesizes alignment.csv, audio.wav and meta.txt for each fixture bundle.

Each word is a voiced tone (fundamental plus a weaker second harmonic)
lasting 0.2 s per syllable, separated by short silences. The PROSODY table
below marks the words whose delivery differs: longer gaps before them,
louder amplitude, higher pitch or slower speech.
"""
import pathlib
import wave

import numpy as np

from fixture_text import load_dict, normalize, parse_transcript, syllables

ROOT = pathlib.Path(__file__).resolve().parents[1]
SR = 16000
SECONDS_PER_SYLLABLE = 0.2
WORD_GAP = 0.06
SENTENCE_GAP = 0.30
LAUGH_GAP = 2.50
AMPLITUDE = 0.25
FADE = 0.010

FIXTURES = {
    "cop-demo": {
        "meta": {
            "title": "Apparently You Can't Pretend You're a Cop",
            "speaker": "Stand-up comedian",
            "category": "comedy, personal experience",
            "views": 1800000,
        },
        "f0": 110.0,
        # (sentence, word) -> delivery override
        "prosody": {
            (3, "so"): {"gap": 0.80},
            (4, "i'll"): {"gap": 0.75},
            (4, "okay"): {"amp": 0.55},
            (10, "you"): {"amp": 0.50},
        },
    },
    "italy": {
        "meta": {
            "title": "Italy, Germany and Fantastic Food",
            "speaker": "Stand-up comedian",
            "category": "comedy, history",
            "views": 640000,
        },
        "f0": 130.0,
        "prosody": {
            (4, "no"): {"amp": 0.50},
            (5, "fantastic"): {"f0": 210.0},
        },
    },
    "ted-spam": {
        "meta": {
            "title": "This Is What Happens When You Reply to Spam Email",
            "speaker": "TED speaker",
            "category": "talk, technology, personal experience",
            "views": 25000000,
        },
        "f0": 120.0,
        "prosody": {
            (2, "guy"): {"stretch": 3.0},
            (2, "solomon"): {"gap": 0.60},
            (5, "so"): {"gap": 0.90},
            (7, "he"): {"gap": 2.0},
            (8, "he"): {"gap": 2.0},
            (9, "i"): {"gap": 2.0},
            (10, "over"): {"gap": 2.0},
            (11, "most"): {"gap": 2.0},
            (12, "he"): {"gap": 2.0},
            (17, "the"): {"gap": 0.80},
            (17, "thousand"): {"f0": 200.0},
            (18, "and"): {"gap": 0.70},
            (18, "only"): {"gap": 0.60, "f0": 200.0},
        },
    },
}


def ms(x):
    return round(x, 3)


def synthesize(name, spec, entries):
    bundle = ROOT / "fixtures" / name
    sentences, laughter = parse_transcript((bundle / "transcript.txt").read_text(encoding="utf-8"))
    prosody = dict(spec["prosody"])
    used = set()

    rows = []  # (word, start, end, amp, f0)
    t = 0.5
    for s, words in enumerate(sentences):
        for w, surface in enumerate(words):
            norm = normalize(surface)
            mark = prosody.get((s, norm), {}) if (s, norm) not in used else {}
            if mark:
                used.add((s, norm))
            if w == 0 and s > 0:
                gap = LAUGH_GAP if (s - 1) in laughter else SENTENCE_GAP
            else:
                gap = WORD_GAP if w > 0 else 0.0
            gap = mark.get("gap", gap)
            start = ms(t + gap)
            dur = syllables(norm, entries) * SECONDS_PER_SYLLABLE * mark.get("stretch", 1.0)
            end = ms(start + dur)
            rows.append((norm, start, end, mark.get("amp", AMPLITUDE), mark.get("f0", spec["f0"])))
            t = end
    unused = set(prosody) - used
    if unused:
        raise SystemExit(f"{name}: prosody marks never matched: {sorted(unused)}")

    duration = ms(t + 1.0)
    audio = np.zeros(int(round(duration * SR)), dtype=np.float64)
    for _, start, end, amp, f0 in rows:
        i0, i1 = int(round(start * SR)), int(round(end * SR))
        n = i1 - i0
        k = np.arange(n) / SR
        tone = (np.sin(2 * np.pi * f0 * k) + 0.5 * np.sin(2 * np.pi * 2 * f0 * k)) / 1.5
        env = np.minimum(1.0, np.minimum(k, (n - 1) / SR - k) / FADE).clip(0.0, 1.0)
        audio[i0:i1] = amp * tone * env

    pcm = np.clip(np.round(audio * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(str(bundle / "audio.wav"), "wb") as f:
        f.setnchannels(1)
        f.setsampwidth(2)
        f.setframerate(SR)
        f.writeframes(pcm.tobytes())

    with open(bundle / "alignment.csv", "w", encoding="utf-8") as f:
        f.write("word,start_s,end_s\n")
        for word, start, end, *_ in rows:
            f.write(f"{word.upper()},{start:.3f},{end:.3f}\n")

    meta = spec["meta"]
    with open(bundle / "meta.txt", "w", encoding="utf-8") as f:
        f.write(f"id: {name}\n")
        for key in ("title", "speaker", "category", "views"):
            f.write(f"{key}: {meta[key]}\n")
        f.write(f"duration_s: {duration:.3f}\n")
    print(f"{name}: {len(sentences)} sentences, {len(laughter)} laughter markers, {duration:.1f} s")


def main():
    entries = load_dict(ROOT / "lexicon" / "cmudict-subset.dict")
    for name, spec in FIXTURES.items():
        synthesize(name, spec, entries)


if __name__ == "__main__":
    main()
