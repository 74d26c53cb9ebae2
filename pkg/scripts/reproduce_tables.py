#!/usr/bin/env python3
"""Print rays, exchangeable pairs and facets for a few decorations, and write a counts table."""

import argparse
from pathlib import Path

from removahedra import formats, typecone
from removahedra.decoration import Decoration


def show(word):
    d = Decoration(word)
    print(f"{word}: rho={typecone.rho(d)} chi={typecone.chi(d)} phi={typecone.phi(d)}"
          f" simplicial={typecone.is_simplicial(d)}")
    print("  rays:   ", ", ".join(typecone.permutree_rays(d).labels()))
    print("  pairs:  ", ", ".join(typecone.sorted_labels(typecone.exchangeable_pairs(d))))
    print("  facets: ", ", ".join(typecone.sorted_labels(typecone.typecone_facets(d))))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("decorations", nargs="*", default=["oodo", "oxuo"])
    ap.add_argument("--n", type=int, default=4, help="size of the counts sweep")
    ap.add_argument("--csv", type=Path, help="write the counts table here")
    args = ap.parse_args()
    for word in args.decorations:
        show(word)
    rows = [typecone.counts_row(d) for d in Decoration.all(args.n)]
    text = formats.counts_csv(rows)
    if args.csv:
        args.csv.write_text(text, encoding="utf-8")
        print(f"wrote {len(rows)} rows to {args.csv}")


if __name__ == "__main__":
    main()
