"""Compare the pure-Python and compiled kernels on the hot operations.

Usage:
    python benchmarks/bench_backends.py [--quick] [--repeat N]

Each workload runs on both kernels (when the compiled one is built) and
reports nanoseconds per operation plus the speedup.  Results from the
two kernels are cross-checked before timing, so a reported speedup is
always for bit-identical output.
"""

from __future__ import annotations

import argparse
import random
import time

from wlab import backend

pure = backend.load("pure")
try:
    compiled = backend.load("c")
except ImportError:
    compiled = None


def _time(fn, args_list, repeat: int) -> float:
    """Best-of-``repeat`` nanoseconds per call of fn over args_list."""
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best * 1e9 / len(args_list)


def _workloads(quick: bool):
    rng = random.Random(0xBE)
    scale = 10 if quick else 1

    mod_pow_args = [(rng.randrange(2, 1 << 62), rng.randrange(1 << 60, 1 << 62),
                     rng.randrange(3, 1 << 62) | 1)
                    for _ in range(2000 // scale)]
    prime_args = [(rng.randrange(1 << 61, 1 << 62) | 1,)
                  for _ in range(2000 // scale)]
    factor_args = [(rng.randrange(10**11, 10**12),) for _ in range(100 // scale)]
    carry_args = [(rng.randrange(0, 1 << 62), rng.randrange(0, 1 << 62), 3)
                  for _ in range(20_000 // scale)]
    n_binom = 500_000 // scale
    binom_odd_args = [(n_binom, n_binom // 2, 101, 3)]
    binom_even_args = [(n_binom, n_binom // 2, 2, 20)]
    n_w = 200_000 // scale
    w_args = [(n_w + 1, [(1_000_003, 3)])]

    return [
        ("mod_pow (62-bit)", "mod_pow", mod_pow_args),
        ("is_prime (62-bit)", "is_prime", prime_args),
        ("factorize (~10^12)", "factorize", factor_args),
        ("carry_count (base 3)", "carry_count", carry_args),
        (f"binom mod 101^3, N={n_binom}", "binom_mod_pp", binom_odd_args),
        (f"binom mod 2^20, N={n_binom}", "binom_mod_pp", binom_even_args),
        (f"w mod p^3, n={n_w + 1}", "w_mod_parts", w_args),
    ]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true",
                        help="smaller workloads for a fast sanity pass")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best one wins (default 3)")
    args = parser.parse_args(argv)

    if compiled is None:
        print("compiled kernel not built; timing the pure kernel only")

    name_w = 34
    header = f"{'workload':<{name_w}} {'pure ns/op':>14} {'c ns/op':>14} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, fn_name, args_list in _workloads(args.quick):
        pure_fn = getattr(pure, fn_name)
        if compiled is not None:
            compiled_fn = getattr(compiled, fn_name)
            for call in args_list:
                if pure_fn(*call) != compiled_fn(*call):
                    raise SystemExit(f"kernel mismatch on {label} args {call}")
            pure_ns = _time(pure_fn, args_list, args.repeat)
            c_ns = _time(compiled_fn, args_list, args.repeat)
            print(f"{label:<{name_w}} {pure_ns:>14,.0f} {c_ns:>14,.0f} "
                  f"{pure_ns / c_ns:>8.1f}x")
        else:
            pure_ns = _time(pure_fn, args_list, args.repeat)
            print(f"{label:<{name_w}} {pure_ns:>14,.0f} {'-':>14} {'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
