"""Toy run logs and their data/performance profiles by linear scan.

Writes profile_logs.csv (3 problems x 2 solvers x 2 start points, in the
run-log CSV layout) and profile_golden.txt with the expected curves.
"""
import random
import sys

PROBLEMS = {1: 2, 2: 3, 3: 5}  # id -> dimension
SOLVERS = ["alpha", "beta"]
STARTS = [1, 2]
TAUS = [0.1, 0.01]
DATA_ALPHAS = [i * 0.5 for i in range(0, 41)]
PERF_ALPHAS = [1.0 + i * 0.25 for i in range(0, 33)]


def fmt(v):
    if v == float("inf"):
        return "inf"
    r = repr(v)
    return r[:-2] if r.endswith(".0") else r


def make_logs(rng):
    logs = []
    for prob, n in PROBLEMS.items():
        for solver in SOLVERS:
            for start in STARTS:
                speed = 0.9 if solver == "alpha" else 0.93
                entries = []
                best = float("inf")
                f = 100.0 + 10 * start + prob
                for idx in range(1, 61):
                    cnt = rng.random() > 0.1
                    f = f * (speed + 0.05 * rng.random()) if rng.random() < 0.7 else f * 1.02
                    c = rng.uniform(-1.0, 0.4)
                    feasible = cnt and c <= 0.0
                    if feasible:
                        best = min(best, f)
                    entries.append((idx, cnt, feasible, best, f, c))
                logs.append((prob, n, solver, start, entries))
    return logs


def solved_at(entries, target):
    counted = 0
    for idx, cnt, feasible, best, f, c in entries:
        if cnt:
            counted += 1
        if best <= target:
            return counted
    return None


def profiles(logs, tau, f_low):
    pairs = sorted({(p, s) for p, _, _, s, _ in logs})
    first = {}
    for p, n, solver, s, entries in logs:
        fb = next((e[3] for e in entries if e[3] != float("inf")), None)
        if fb is not None:
            first[(p, s)] = max(first.get((p, s), -float("inf")), fb)
    t = {}
    for p, n, solver, s, entries in logs:
        key = (p, s)
        if key not in first:
            t[(solver, key)] = None
            continue
        target = f_low[p] + tau * (first[key] - f_low[p])
        t[(solver, key)] = solved_at(entries, target)
    data, perf = {}, {}
    for solver in SOLVERS:
        dv = []
        for a in DATA_ALPHAS:
            hits = sum(1 for key in pairs
                       if t[(solver, key)] is not None and t[(solver, key)] <= a * (PROBLEMS[key[0]] + 1))
            dv.append(hits / len(pairs))
        data[solver] = dv
        pv = []
        for a in PERF_ALPHAS:
            hits = 0
            for key in pairs:
                ts = t[(solver, key)]
                best = [t[(o, key)] for o in SOLVERS if t[(o, key)] is not None]
                if ts is not None and ts / min(best) <= a:
                    hits += 1
            pv.append(hits / len(pairs))
        perf[solver] = pv
    return data, perf


def main(log_path, golden_path):
    rng = random.Random(77)
    logs = make_logs(rng)
    with open(log_path, "w") as out:
        out.write("problem,n,solver,start,aborted,index,cnt_eval,feasible,best,p,y\n")
        for p, n, solver, s, entries in logs:
            for idx, cnt, feasible, best, f, c in entries:
                out.write("%d,%d,%s,%d,0,%d,%d,%d,%s,1,%s %s\n" %
                          (p, n, solver, s, idx, int(cnt), int(feasible), fmt(best), fmt(f), fmt(c)))
    f_low = {}
    for p, n, solver, s, entries in logs:
        for e in entries:
            f_low[p] = min(f_low.get(p, float("inf")), e[3])
    with open(golden_path, "w") as out:
        out.write("# f_low problem value | data tau solver values... | perf tau solver values...\n")
        for p in sorted(f_low):
            out.write("f_low %d %r\n" % (p, f_low[p]))
        out.write("data_alphas " + " ".join(repr(a) for a in DATA_ALPHAS) + "\n")
        out.write("perf_alphas " + " ".join(repr(a) for a in PERF_ALPHAS) + "\n")
        for tau in TAUS:
            data, perf = profiles(logs, tau, f_low)
            for solver in SOLVERS:
                out.write("data %r %s %s\n" % (tau, solver, " ".join(repr(v) for v in data[solver])))
                out.write("perf %r %s %s\n" % (tau, solver, " ".join(repr(v) for v in perf[solver])))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "profile_logs.csv",
         sys.argv[2] if len(sys.argv) > 2 else "profile_golden.txt")
