"""Regenerates the trial manifests under manifests/. Deterministic."""

import itertools
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "manifests"


def general() -> list[str]:
    rng = random.Random(1)
    lines = ["# general mode, K3,3-minor-free declared, n <= 24"]
    for i in range(240):
        n = rng.randint(10, 24)
        k = (2, 3, 4)[i % 3]
        keep = rng.choice((0.4, 0.55, 0.7, 0.85, 1.0))
        lines.append(f"random n={n} k={k} keep={keep} seed={1000 + i} mode=general r=3")
    # single fans with k = 2; sizes 19 and up exceed the C2 threshold and cut
    seeds = itertools.count(1)
    for size, wiring, targets in itertools.product(
        (8, 14, 19, 20), ("independent", "path", "cycle"), ("pendant", "member", "mixed")
    ):
        lines.append(f"gadget sizes={size} wiring={wiring} targets={targets} seed={next(seeds)} mode=general r=3")
    for sizes, targets in itertools.product(("5,5", "6,7", "9,9"), ("pendant", "member", "mixed")):
        for s in range(3):
            lines.append(f"gadget sizes={sizes} wiring=shared targets={targets} seed={next(seeds) + s} mode=general r=3")
    for sizes, targets in itertools.product(("4,4,4", "5,6,5", "2,7,3"), ("pendant", "member", "mixed")):
        lines.append(f"gadget sizes={sizes} wiring=triangle targets={targets} seed={next(seeds)} mode=general r=3")
    return lines


def general_5b() -> list[str]:
    lines = ["# general mode, two big classes; the pool fills the first and 5b cuts the second"]
    seeds = itertools.count(1)
    for sizes, targets in itertools.product(("20,20", "22,18", "18,24", "25,25"), ("pendant", "member", "mixed")):
        for _ in range(2):
            lines.append(f"gadget sizes={sizes} wiring=shared targets={targets} seed={next(seeds)} mode=general r=3")
    return lines


def planar() -> list[str]:
    rng = random.Random(2)
    lines = ["# planar mode"]
    for i in range(150):
        n = rng.randint(10, 24)
        k = (2, 3, 4)[i % 3]
        keep = rng.choice((0.4, 0.55, 0.7, 0.85, 1.0))
        col = " coloring=supplied" if i % 2 else ""
        lines.append(f"random n={n} k={k} keep={keep} seed={2000 + i} mode=planar{col}")
    lines.append("# single fans, k = 2, above the 28k threshold")
    seeds = itertools.count(1)
    for size, wiring, targets, context in itertools.product(
        (57, 64), ("independent", "path", "cycle"), ("pendant", "member", "mixed"), (0, 1)
    ):
        col = " coloring=supplied" if size == 64 else ""
        lines.append(
            f"gadget sizes={size} wiring={wiring} targets={targets} context={context} seed={next(seeds)} mode=planar{col}"
        )
    lines.append("# two fans sharing a key, k = 3")
    for sizes, targets, context in itertools.product(("43,43", "45,50", "60,30"), ("pendant", "member", "mixed"), (0, 1)):
        for _ in range(2):
            lines.append(
                f"gadget sizes={sizes} wiring=shared targets={targets} context={context} seed={next(seeds)} mode=planar"
            )
    lines.append("# three keys, one class per pair, k = 3; drives rules 1 and 3")
    for sizes, targets, context in itertools.product(
        ("30,30,30", "40,40,10", "6,6,80", "5,6,80", "6,80,5", "25,35,30", "7,7,75"),
        ("pendant", "member", "mixed"),
        (0, 1),
    ):
        for s in range(2):
            col = " coloring=supplied" if s else ""
            lines.append(
                f"gadget sizes={sizes} wiring=triangle targets={targets} context={context} seed={next(seeds)} mode=planar{col}"
            )
    lines.append("# fans below the threshold")
    for size, wiring, targets in itertools.product((10, 30), ("independent", "cycle"), ("pendant", "member", "mixed")):
        lines.append(f"gadget sizes={size} wiring={wiring} targets={targets} seed={next(seeds)} mode=planar")
    return lines


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, fn in (("general", general), ("general_5b", general_5b), ("planar", planar)):
        lines = fn()
        (OUT / f"{name}.txt").write_text("\n".join(lines) + "\n")
        print(name, sum(1 for l in lines if not l.startswith("#")))
