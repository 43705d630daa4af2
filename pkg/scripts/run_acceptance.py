"""Run the acceptance criteria outside pytest and print one line per criterion.

    python3 scripts/run_acceptance.py [NUMBER ...]
"""

import sys
from pathlib import Path

TESTS = Path(__file__).resolve().parent.parent / "tests"
sys.path.insert(0, str(TESTS))

import test_acceptance as acc  # noqa: E402


def main(argv: list[str]) -> int:
    wanted = {int(a) for a in argv}
    fns = [(int(name.split("_")[2]), fn) for name, fn in vars(acc).items() if name.startswith("test_criterion_")]
    failed = 0
    for num, fn in sorted(fns, key=lambda t: t[0]):
        if wanted and num not in wanted:
            continue
        try:
            fn()
        except AssertionError:
            failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
