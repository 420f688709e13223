"""Order preservation of the embeddings, recorded without being asserted.

Reflection (image below image implies below) is what the suites check; this
report counts the pairs where the converse also holds.
"""
import argparse
import itertools
from dataclasses import dataclass

from deskbqo.embeddings import embed_h, embed_j, embed_prod, h_target, j_base, prod_target
from deskbqo.hset import leq_h
from deskbqo.notations import enumerate_eps, enumerate_omega, preceq_eps


@dataclass
class ReportConfig:
    alpha: int = 3
    length: int = 3
    omega: int = 2
    lh: int = 4


def _count(xs, leq, img_leq):
    pairs = list(itertools.product(xs, repeat=2))
    below = [(a, b) for a, b in pairs if leq(a, b)]
    kept = sum(img_leq(a, b) for a, b in below)
    broken = sum(img_leq(a, b) and not leq(a, b) for a, b in pairs)
    return len(below), kept, broken


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(ReportConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    cfg = ReportConfig(**vars(ap.parse_args()))

    T = h_target(cfg.alpha)
    xs = enumerate_omega(cfg.alpha, cfg.length)
    imgs = {s: embed_h(cfg.alpha, s) for s in xs}
    rows = [("h", _count(xs, lambda a, b: a <= b, lambda a, b: T.leq(imgs[a], imgs[b])))]

    P = prod_target(cfg.omega)
    ps = list(itertools.product(range(cfg.omega), repeat=2))
    rows.append(("prod", _count(ps, lambda a, b: a[0] <= b[0] and a[1] <= b[1],
                                lambda a, b: P.leq(embed_prod(cfg.omega, a), embed_prod(cfg.omega, b)))))

    es = enumerate_eps(cfg.omega, cfg.lh, 2)
    for shifted in (False, True):
        Q = j_base(cfg.omega, shifted)
        jm = {t: embed_j(cfg.omega, t, shifted) for t in es}
        rows.append((f"j{' shifted' if shifted else ''}",
                     _count(es, preceq_eps, lambda a, b: leq_h(Q, jm[a], jm[b]))))

    print(f"{'map':<12}{'pairs below':>12}{'preserved':>11}{'reflection failures':>21}")
    for name, (below, kept, broken) in rows:
        print(f"{name:<12}{below:>12}{kept:>11}{broken:>21}")


if __name__ == "__main__":
    main()
