#!/usr/bin/env python3
"""Convert WordNet database files into the dictionary jsonl format.

Reads index.{noun,verb,adj,adv} and data.{noun,verb,adj,adv} from a WordNet
dict directory and writes one JSON object per line with the fields headword,
pos, sense_id and definition. Only single-word, purely alphabetic lemmas are
kept, and quoted usage examples are cut from each gloss so the definition
text is what feeds the graph.
"""

import argparse
import json
import re
import sys
from pathlib import Path

POS_NAMES = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}
LEMMA_RE = re.compile(r"^[a-z]+$")


def load_glosses(dict_dir: Path, name: str) -> dict[int, str]:
    glosses: dict[int, str] = {}
    with open(dict_dir / f"data.{name}", encoding="latin-1") as fh:
        for line in fh:
            if line.startswith("  "):  # license header
                continue
            head, sep, gloss = line.partition("|")
            if not sep:
                continue
            offset = int(head.split(None, 1)[0])
            gloss = gloss.strip()
            # Usage examples follow the definition as ; "..." segments.
            cut = gloss.find('; "')
            if cut != -1:
                gloss = gloss[:cut]
            if gloss.startswith('"'):
                gloss = ""  # example-only gloss, no definition text
            glosses[offset] = gloss.strip()
    return glosses


def convert(dict_dir: Path) -> list[dict]:
    entries = []
    for name, pos in POS_NAMES.items():
        glosses = load_glosses(dict_dir, name)
        with open(dict_dir / f"index.{name}", encoding="latin-1") as fh:
            for line in fh:
                if line.startswith("  "):
                    continue
                fields = line.split()
                if len(fields) < 6:
                    continue
                lemma = fields[0]
                if not LEMMA_RE.match(lemma):
                    continue
                synset_cnt = int(fields[2])
                p_cnt = int(fields[3])
                offsets = [int(x) for x in fields[6 + p_cnt:]]
                if len(offsets) != synset_cnt:
                    raise SystemExit(f"index.{name}: bad offset count for '{lemma}'")
                sense_id = 0
                for off in offsets:
                    gloss = glosses.get(off, "")
                    if not gloss:
                        continue
                    sense_id += 1
                    entries.append({"headword": lemma, "pos": pos,
                                    "sense_id": sense_id, "definition": gloss})
    entries.sort(key=lambda e: (e["headword"], e["pos"], e["sense_id"]))
    return entries


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("dict_dir", type=Path, help="WordNet dict directory")
    ap.add_argument("output", type=Path, help="jsonl file to write")
    args = ap.parse_args()

    entries = convert(args.dict_dir)
    with open(args.output, "w", encoding="utf-8") as out:
        for e in entries:
            out.write(json.dumps(e, ensure_ascii=False) + "\n")
    lemmas = {e["headword"] for e in entries}
    print(f"{len(entries)} entries, {len(lemmas)} distinct headwords", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
