"""Classify the multigraph corpus in Ho(SSet_2) and compare with pi0."""
import argparse
import time
from collections import Counter

from finmodel import hocat, model, sset


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vertices", type=int, default=3)
    ap.add_argument("--edges", type=int, default=3)
    args = ap.parse_args()
    t = time.time()
    corpus = sset.multigraph_corpus(args.vertices, args.edges)
    objs = [sset.graph(nv, list(es)) for nv, es in corpus]
    cl = hocat.classify(hocat.HoCategory(model.sset_instance(2)), objs)
    pi = [sset.pi0(x)[0] for x in objs]
    for c, r in enumerate(cl.reps):
        members = [i for i, lab in enumerate(cl.labels) if lab == c]
        print(f"class {c}: pi0={pi[r]} size={len(members)} forest={sset.forest_invariant(objs[r])}")
    mixed = [c for c in range(len(cl.reps)) if len({pi[i] for i, lab in enumerate(cl.labels) if lab == c}) > 1]
    print(f"{len(objs)} graphs, {len(cl.reps)} classes, pi0 histogram {sorted(Counter(pi).items())}, "
          f"mixed classes {mixed}, {time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
