"""Regenerate data/lang/udhr.tsv from the `udhr` npm package contents.

The Universal Declaration of Human Rights has official translations in
hundreds of languages; this script takes the Latin-script European
translations, transliterates diacritics onto a-z, normalizes to the
27-symbol alphabet, and re-chunks the running text into 8-word lines.
Output format is `language<TAB>text`, one line per sample.

Usage:  python3 tools/make_lang_corpus.py /path/to/udhr-package
        (expects <src>/declaration/<code>.html files)
"""

import html
import os
import re
import sys
import unicodedata

# Stage-4 Latin-script translations with a single canonical file each.
LANGS = [
    ("afr", "afrikaans"), ("cat", "catalan"), ("ces", "czech"),
    ("dan", "danish"), ("deu_1996", "german"), ("eng", "english"),
    ("est", "estonian"), ("eus", "basque"), ("fin", "finnish"),
    ("fra", "french"), ("gle", "irish"), ("glg", "galician"),
    ("hrv", "croatian"), ("hun", "hungarian"), ("isl", "icelandic"),
    ("ita", "italian"), ("lav", "latvian"), ("lit", "lithuanian"),
    ("mlt", "maltese"), ("nld", "dutch"), ("nno", "norwegian-nynorsk"),
    ("nob", "norwegian-bokmal"), ("pol", "polish"), ("por_PT", "portuguese"),
    ("ron_2006", "romanian"), ("slk", "slovak"), ("slv", "slovenian"),
    ("spa", "spanish"), ("swe", "swedish"), ("tur", "turkish"),
]

WORDS_PER_LINE = 8

# Letters NFKD cannot reduce to a-z on its own.
EXTRA = {"ß": "ss", "æ": "ae", "œ": "oe", "ø": "o", "đ": "d", "ð": "d",
         "þ": "th", "ł": "l", "ı": "i", "ŋ": "ng"}


def transliterate(s):
    s = s.lower()
    s = "".join(EXTRA.get(ch, ch) for ch in s)
    s = unicodedata.normalize("NFKD", s)
    return "".join(c for c in s if not unicodedata.combining(c))


def normalize(s):
    return re.sub(r"[^a-z]+", " ", s.lower()).strip()


def extract_text(path):
    doc = open(path, encoding="utf-8").read()
    doc = re.sub(r"<(style|script)[^>]*>.*?</\1>", " ", doc, flags=re.S)
    doc = re.sub(r"</(p|h\d|li|td|div)>", "\n", doc)
    txt = html.unescape(re.sub(r"<[^>]+>", " ", doc))
    parts = []
    for p in re.split(r"(?<=[.;:!?])\s+|\n", txt):
        t = normalize(transliterate(p))
        if len(t) >= 30:    # drop boilerplate fragments and navigation
            parts.append(t)
    return " ".join(parts)


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    src = os.path.join(sys.argv[1], "declaration")
    out_path = os.path.join(os.path.dirname(__file__), "..", "data", "lang",
                            "udhr.tsv")
    n_lines = 0
    with open(out_path, "w", encoding="utf-8") as out:
        for code, name in LANGS:
            words = extract_text(os.path.join(src, f"{code}.html")).split()
            for i in range(0, len(words) - WORDS_PER_LINE + 1,
                           WORDS_PER_LINE):
                chunk = " ".join(words[i:i + WORDS_PER_LINE])
                out.write(f"{name}\t{chunk}\n")
                n_lines += 1
    print(f"wrote {os.path.normpath(out_path)}: {len(LANGS)} languages, "
          f"{n_lines} lines")


if __name__ == "__main__":
    main()
