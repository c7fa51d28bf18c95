"""Script-mode runner shared by the test modules: `python tests/test_kernel.py`."""
import traceback

PASS = 0
FAIL = 0


def run_module(namespace: dict, title: str) -> int:
    global PASS, FAIL
    tests = [(name, fn) for name, fn in namespace.items() if name.startswith("test_") and callable(fn)]
    print("=" * 60)
    print(f"  {title}")
    print("=" * 60)
    for i, (name, fn) in enumerate(tests, 1):
        try:
            fn()
        except Exception as exc:
            FAIL += 1
            print(f"  FAIL  [{i}/{len(tests)}] {name}: {exc!r}")
            traceback.print_exc(limit=3)
        else:
            PASS += 1
            print(f"  PASS  [{i}/{len(tests)}] {name}")
    total = PASS + FAIL
    print("=" * 60)
    print(f"  RESULTS: {PASS}/{total} passed, {FAIL} failed")
    print(f"  {'ALL TESTS PASSED!' if FAIL == 0 else f'{FAIL} TESTS FAILED'}")
    print("=" * 60)
    return 0 if FAIL == 0 else 1
