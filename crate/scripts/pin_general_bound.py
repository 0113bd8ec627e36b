"""Evaluates the general-mode kernel size bound for given r and k with
Python integers, independently of the Rust implementation. The printed
value is pinned in crates/core/tests/data/general_bound_r3_k1.txt."""

import sys


def general_bound(r: int, k: int) -> int:
    chi = max(r, 6300) + 3
    n2 = 2 ** (5 * r + 13) * (r + 3) ** (2 * r + 5) * k
    x = 2 * k
    c1_c3 = k * (max(r, 6300) + 3 + (r - 1) * (2 ** (5 * r + 13) * (r + 3) ** (2 * r + 5)))
    c2 = chi * (n2 * (4 * r - 1) + k)
    return x + c1_c3 + c2


if __name__ == "__main__":
    r = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    k = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    print(general_bound(r, k))
