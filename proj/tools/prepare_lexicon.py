#!/usr/bin/env python3
"""Regenerate data/lexicon/ from upstream resource packages.

Inputs (extracted from PyPI distributions):
  --brill     textblob/en/en-lexicon.txt      (Brill v1.14 lexicon, MIT)
  --morph     textblob/en/en-morphology.txt   (Brill lexical rules)
  --web2      english_words/data/web2_lower.pickle
  --wordnet   directory holding WordNet 3.0 index.{noun,verb,adj,adv}
"""
import argparse
import hashlib
import os
import pickle
import re
import shutil

STOPWORDS = """i me my myself we our ours ourselves you you're you've you'll you'd your
yours yourself yourselves he him his himself she she's her hers herself it it's its itself
they them their theirs themselves what which who whom this that that'll these those am is
are was were be been being have has had having do does did doing a an the and but if or
because as until while of at by for with about against between into through during before
after above below to from up down in out on off over under again further then once here
there when where why how all any both each few more most other some such no nor not only
own same so than too very s t can will just don should should've now d ll m o re ve y ain
aren aren't couldn couldn't didn didn't doesn doesn't hadn hadn't hasn hasn't haven haven't
isn isn't ma mightn mightn't mustn mustn't needn needn't shan shan't shouldn shouldn't wasn
wasn't weren weren't won won't wouldn wouldn't""".split()

CONTRACTIONS = """ain't aren't can't could've couldn't couldn't've didn't doesn't don't
hadn't hasn't haven't he'd he'll he's how'd how'll how's i'd i'll i'm i've isn't it'd
it'll it's let's ma'am mightn't might've mustn't must've needn't o'clock shan't she'd
she'll she's should've shouldn't that'd that'll that's there'd there'll there's they'd
they'll they're they've wasn't we'd we'll we're we've weren't what'll what're what's
what've where'd where's who'd who'll who're who's who've why's won't would've wouldn't
y'all you'd you'll you're you've""".split()

WORD = re.compile(r"^[a-z]+(?:['-][a-z]+)*$")
OPEN_CLASS_SKIP = {"NNP", "NNPS", "FW", "SYM", "UH", "LS"}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--brill", required=True)
    ap.add_argument("--morph", required=True)
    ap.add_argument("--web2", required=True)
    ap.add_argument("--wordnet", required=True)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "lexicon"))
    a = ap.parse_args()
    os.makedirs(os.path.join(a.out, "wordnet"), exist_ok=True)

    tags = []
    inflected = set()
    with open(a.brill, encoding="utf-8") as f:
        for line in f:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) != 2 or "|" in parts[1] or not parts[1]:
                continue
            word, tag = parts
            if word.startswith("-") and len(word) > 1 and word[1].isalpha():
                continue  # reserved for suffix rules
            tags.append((word, tag))
            lw = word.lower()
            if tag not in OPEN_CLASS_SKIP and WORD.match(lw):
                inflected.add(lw)

    rules = []
    seen = set()
    with open(a.morph, encoding="utf-8") as f:
        for line in f:
            p = line.split()
            if len(p) >= 5 and p[2] == "fhassuf" and p[0] == "NN":
                suffix, tag = p[1], p[4]
            elif len(p) >= 4 and p[1] == "hassuf":
                suffix, tag = p[0], p[3]
            else:
                continue
            if not re.fullmatch(r"[a-z']+", suffix) or suffix in seen:
                continue
            seen.add(suffix)
            rules.append((suffix, tag))
    rules.sort(key=lambda r: -len(r[0]))

    with open(os.path.join(a.out, "tags.tsv"), "w", encoding="utf-8") as f:
        for word, tag in tags:
            f.write(f"{word}\t{tag}\n")
        for suffix, tag in rules:
            f.write(f"-{suffix}\t{tag}\n")

    with open(a.web2, "rb") as f:
        web2 = pickle.load(f)
    words = sorted(w for w in (set(web2) | inflected) if w)
    with open(os.path.join(a.out, "words.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(words) + "\n")
    with open(os.path.join(a.out, "stopwords.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(STOPWORDS) + "\n")
    with open(os.path.join(a.out, "contractions.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(CONTRACTIONS) + "\n")
    for pos in ("noun", "verb", "adj", "adv"):
        shutil.copy(os.path.join(a.wordnet, f"index.{pos}"), os.path.join(a.out, "wordnet", f"index.{pos}"))
    shutil.copy(os.path.join(a.wordnet, "LICENSE"), os.path.join(a.out, "wordnet", "LICENSE"))

    def sha(paths):
        h = hashlib.sha256()
        for p in paths:
            with open(os.path.join(a.out, p), "rb") as f:
                h.update(f.read())
        return h.hexdigest()

    wn = " ".join(f"wordnet/index.{p}" for p in ("noun", "verb", "adj", "adv"))
    entries = [("wordlist", "words.txt"), ("stopwords", "stopwords.txt"),
               ("wordnet_index", wn), ("contractions", "contractions.txt"), ("tag_lexicon", "tags.tsv")]
    with open(os.path.join(a.out, "manifest.ini"), "w", encoding="utf-8") as f:
        f.write("# Lexicon manifest: resource paths are relative to this file.\n")
        for key, val in entries:
            f.write(f"{key} = {val}\n")
            f.write(f"{key}.sha256 = {sha(val.split())}\n")


if __name__ == "__main__":
    main()
