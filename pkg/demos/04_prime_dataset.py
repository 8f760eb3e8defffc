"""Building and saving prime-counting datasets.

Two shapes of training data for the same target function pi(x): one
point per prime (x = p_i, y = i), or one point per integer in a range.
"""

import tempfile
from pathlib import Path

from gramevo import (
    DatasetMode,
    build_dataset,
    prime_pi,
    read_dataset,
    sieve,
    write_dataset,
)


def main() -> None:
    table = sieve(8000)
    print(f"sieve(8000): {len(table.primes)} primes, "
          f"first {table.primes[:5].tolist()}, last {table.primes[-1]}")

    # pi(x) by binary search over the table
    for x in (1, 2, 100, 7919, 8000):
        print(f"  pi({x}) = {prime_pi(x, table)}")

    # prime-indexed: the classic 1000-point regression target
    data = build_dataset(DatasetMode.PRIME_INDEXED, 1000, table)
    print(f"\nprime-indexed n=1000: first {data.points[0]}, "
          f"last {data.points[-1]}")

    # integer-range: denser, includes composites
    small = build_dataset(DatasetMode.INTEGER_RANGE, 9, table)
    print("integer-range n=9:", small.points)

    # files are two tab-separated columns under an 'x y' header and
    # survive a write/read round-trip exactly
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "pi1000.txt"
        write_dataset(data, path)
        lines = path.read_text().splitlines()
        print(f"\nwrote {path.name}: header {lines[0]!r}, "
              f"row 1 {lines[1]!r}, {len(lines) - 1} rows")
        back = read_dataset(path)    # named after the file stem
        assert back.points == data.points
        print("read back equal: ok")


if __name__ == "__main__":
    main()
