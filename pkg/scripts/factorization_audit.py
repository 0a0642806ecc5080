"""Run both factorizations on every corpus map and audit the traces."""
import argparse
import time
from collections import Counter

from finmodel import fincat, model, sset
from finmodel.fincat import compose


def corpus_maps(n, size):
    if n == 1:
        return sset.all_set_maps(size)
    objs = [sset.graph(nv, list(es)) for nv, es in sset.multigraph_corpus(size, size)]
    return [f for x in objs for y in objs for f in fincat.enumerate_maps(x, y)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2, choices=[1, 2])
    ap.add_argument("--size", type=int, default=2)
    ap.add_argument("--mode", default="marked", choices=["marked", "naive"])
    ap.add_argument("--cap", type=int, default=64)
    args = ap.parse_args()
    m = model.sset_instance(args.n)
    steps, failures = Counter(), []
    t = time.time()
    maps = corpus_maps(args.n, args.size)
    for f in maps:
        for kind in (model.COF_TRIVFIB, model.TRIVCOF_FIB):
            tr = model.factorize(f, kind, m, mode=args.mode, cap=args.cap)
            steps[kind, tr.steps_used] += 1
            ok = (tr.terminated and compose(tr.beta, tr.alpha) == f and fincat.is_mono(tr.alpha)
                  and fincat.has_rlp(tr.beta, m.gens(kind)))
            if not ok:
                failures.append((f.source.sizes, f.target.sizes, kind))
    for (kind, s), c in sorted(steps.items()):
        print(f"{kind:12s} steps={s}: {c}")
    print(f"{len(maps)} maps, {2 * len(maps)} factorizations, {len(failures)} failures, {time.time() - t:.1f}s")
    for fl in failures[:10]:
        print("  failed", fl)


if __name__ == "__main__":
    main()
