#!/usr/bin/env python3
"""Fetch the freely available corpora into the repo's data/ directory.

* OneStopEnglish: the corpus authors' repository
  (github.com/nishkalavallabhi/OneStopEnglishCorpus, CC BY-SA 4.0);
  only the Texts-SeparatedByReadingLevel tree is kept.
* Cambridge exams readability texts: the UniversalCEFR transformation
  (huggingface.co/datasets/UniversalCEFR/cambridge_exams_en,
  CC BY-NC-SA 4.0; original distribution at ilexir.co.uk/datasets),
  converted here to the generic-rows interchange format.

Newsela is licensed and is NOT fetched: request access at
newsela.com/data and place the release under data/newsela/ so that
articles_metadata.csv sits at data/newsela/articles_metadata.csv.
A Common Core Appendix B scrape is likewise user-provided, as
generic-rows at data/ccsb/ccsb.jsonl.

Corporate mirrors can be pointed at with --github-base / --hf-base.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import urllib.request
import zipfile
from pathlib import Path

OSEN_ARCHIVE = "{base}/nishkalavallabhi/OneStopEnglishCorpus/archive/refs/heads/master.zip"
OSEN_SUBTREE = "OneStopEnglishCorpus-master/Texts-SeparatedByReadingLevel/"
CAMB_JSON = "{base}/datasets/UniversalCEFR/cambridge_exams_en/resolve/main/cambridge_exams.json"


def fetch(url: str) -> bytes:
    print(f"fetching {url}")
    request = urllib.request.Request(url, headers={"User-Agent": "readpair-fetch/0.1"})
    with urllib.request.urlopen(request) as response:
        return response.read()


def fetch_osen(dest: Path, base: str) -> None:
    out = dest / "onestopenglish"
    if out.exists() and any(out.rglob("*.txt")):
        print(f"{out} already populated, skipping")
        return
    payload = fetch(OSEN_ARCHIVE.format(base=base))
    archive = zipfile.ZipFile(io.BytesIO(payload))
    count = 0
    for name in archive.namelist():
        if not (name.startswith(OSEN_SUBTREE) and name.endswith(".txt")):
            continue
        relative = name[len(OSEN_SUBTREE):]
        if len(relative.split("/")) != 2:
            continue  # skip the corpus's stray nested Int-Txt/Int-Txt copy
        target = out / relative
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(archive.read(name))
        count += 1
    print(f"wrote {count} OneStopEnglish texts under {out}")


def fetch_camb(dest: Path, base: str) -> None:
    out = dest / "camb" / "cambridge_exams.jsonl"
    if out.exists():
        print(f"{out} already present, skipping")
        return
    records = json.loads(fetch(CAMB_JSON.format(base=base)))
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="\n") as fh:
        for i, record in enumerate(records):
            title = record["title"].replace(".txt", "")
            row = {
                "id": f"camb-{i:03d}-{record['cefr_level'].lower()}-{title}",
                "body": record["text"],
                "level": record["cefr_level"],
            }
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    print(f"wrote {len(records)} Cambridge exam texts to {out}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dest", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--github-base", default="https://github.com")
    parser.add_argument("--hf-base", default="https://huggingface.co")
    parser.add_argument("--only", choices=("osen", "camb"), default=None)
    args = parser.parse_args()

    args.dest.mkdir(parents=True, exist_ok=True)
    if args.only in (None, "osen"):
        fetch_osen(args.dest, args.github_base.rstrip("/"))
    if args.only in (None, "camb"):
        fetch_camb(args.dest, args.hf_base.rstrip("/"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
