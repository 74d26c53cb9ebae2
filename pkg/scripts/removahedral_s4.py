#!/usr/bin/env python3
"""Sweep the essential congruences of S_4 and list which ones are removahedral."""

from removahedra import realizations, shards


def main():
    rows = []
    for ideal in shards.upper_ideals(4):
        if not ideal.essential:
            continue
        cong = shards.congruence_classes(ideal)
        verdict = realizations.is_removahedral(cong)
        dec = shards.ideal_decoration(ideal)
        missing = " ".join(repr(s) for s in sorted(ideal.missing(), key=shards.Shard.sort_key)) or "-"
        tag = str(dec) if not isinstance(dec, shards.NotPermutree) else f"not permutree ({dec.witness!r})"
        rows.append((bool(verdict), len(cong.classes), tag, missing))
    for ok, size, tag, missing in sorted(rows, key=lambda r: (not r[0], r[1], r[2])):
        print(f"{'removahedral' if ok else '-':<13} classes={size:<3} {tag:<32} missing: {missing}")
    print(f"{sum(r[0] for r in rows)} of {len(rows)} essential congruences are removahedral")


if __name__ == "__main__":
    main()
