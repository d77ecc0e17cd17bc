"""Benchmark matrix with multiplicative noise, written to ./noisy_bench.

The same run from the command line:
    fle-bench run --problems hs21,hs35,hs76,lsqfit --transform noisy:1e-3 \
        --tau 1e-1,1e-3 --seed 0 --out noisy_bench

Run: python3 demos/03_noisy_benchmark.py
"""

from fle.bench import BenchConfig, run_matrix, summary_text

config = BenchConfig(problems=("hs21", "hs35", "hs76", "lsqfit"), taus=(1e-1, 1e-3),
                     transform="noisy:1e-3", seed=0)
output = run_matrix(config, out_dir="noisy_bench")
print(summary_text(output, config))
print("artifacts:", ", ".join(sorted(output.artifacts)))
