"""Star construction over every truncated block of a given size.

Prints the number of barriers and the closure sizes, then lists every
block whose closure is not a barrier or whose two closure descriptions
disagree.
"""
import argparse
from collections import Counter
from dataclasses import dataclass

from deskbqo.barriers import all_blocks, is_barrier, star_construction


@dataclass
class StarConfig:
    base: int = 4
    maxlen: int = 2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base", type=int, default=StarConfig.base)
    ap.add_argument("--maxlen", type=int, default=StarConfig.maxlen)
    cfg = StarConfig(**vars(ap.parse_args()))
    blocks = list(all_blocks(cfg.base, cfg.maxlen))
    sizes, odd = Counter(), []
    barriers = 0
    for B in blocks:
        r = star_construction(B)
        barriers += is_barrier(B)
        sizes[len(r.B_star)] += 1
        if not (r.agree and is_barrier(r.B_star)):
            odd.append(sorted(B.elements))
    print(f"base {cfg.base}, max length {cfg.maxlen}: {len(blocks)} blocks, {barriers} barriers")
    print("closure sizes: " + ", ".join(f"{k}:{v}" for k, v in sorted(sizes.items())))
    print(f"blocks with a bad closure: {len(odd)}")
    for b in odd[:10]:
        print("  ", b)


if __name__ == "__main__":
    main()
