"""Probe signatures |[X, BZ/p]| for small SSet_3 objects, and the weak pushout witness."""
import time

from finmodel import fincat, hocat, model, sset


def main():
    ho = hocat.HoCategory(model.sset_instance(3))
    zs = sset.probes(3)
    t = time.time()
    objs = {
        "point": sset.bare_point(),
        "loop": sset.loop(3, 1),
        "two loops": sset.loop(3, 2),
        "circle": sset.cell_complex(3, 2, [(0, 1), (1, 0)]),
        "disk": sset.cell_complex(3, 3, [(0, 1), (1, 2), (0, 2)], [(1, 2, 0)]),
        "point + loop": sset.disjoint_union([sset.bare_point(), sset.loop(3, 1)]),
    }
    for name, x in objs.items():
        sig = hocat.probe_signature(ho, x, zs)
        print(f"{name:14s} cells={sset.cell_count(x):2d} signature={sig} forest={sset.forest_invariant(x, ho)}")
    f = fincat.to_terminal(sset.discrete(3, 2))
    hp = hocat.homotopy_pushout(ho, f, f)
    rep = hocat.check_weak_pushout(ho, hp, zs)
    print(f"pt <- 2pt -> pt: factorization counts {rep.counts} into {[z.sizes for z in zs]}")
    print(f"{time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
