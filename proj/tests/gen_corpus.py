#!/usr/bin/env python3
"""Regenerate the random part of tests/corpus.

Usage: gen_corpus.py MCN_BINARY CORPUS_DIR [COUNT]

Descriptions are drawn with a fixed seed and kept only when `mcn synth`
accepts them, so the corpus contains valid functions only.
"""
import json
import os
import random
import subprocess
import sys
import tempfile


def affine(rng, n):
    return {"affine": {"constant": rng.randint(-3, 3), "coeffs": [rng.randint(-3, 3) for _ in range(n)]}}


def const(n, c):
    return {"affine": {"constant": c, "coeffs": [0] * n}}


def lattice(rng, leaves):
    if len(leaves) == 1:
        return leaves[0]
    cut = rng.randint(1, len(leaves) - 1)
    op = rng.choice(["min", "max"])
    return {op: [lattice(rng, leaves[:cut]), lattice(rng, leaves[cut:])]}


def leaf_key(node):
    a = node["affine"]
    return (a["constant"], tuple(a["coeffs"]))


def constituents(node, out):
    if "affine" in node:
        out.add(leaf_key(node))
    else:
        for c in next(iter(node.values())):
            constituents(c, out)
    return out


def bounded_affine(rng, n):
    # A form whose range on the cube stays within [-1, 2].
    while True:
        a = affine(rng, n)
        c, cs = a["affine"]["constant"], a["affine"]["coeffs"]
        lo = c + sum(min(0, k) for k in cs)
        hi = c + sum(max(0, k) for k in cs)
        if lo >= -1 and hi <= 2 and lo < 1 and hi > 0:
            return a


def draw(rng, clamped):
    n = rng.choice([1, 2])
    if not clamped:
        return {"vars": n, "expr": lattice(rng, [bounded_affine(rng, n) for _ in range(rng.choice([2, 3, 4]))])}
    # Clamped lattice of one or two forms.
    inner = lattice(rng, [affine(rng, n) for _ in range(rng.choice([1, 2]))])
    return {"vars": n, "expr": {"min": [{"max": [inner, const(n, 0)]}, const(n, 1)]}}


def accepted(binary, desc):
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
        json.dump(desc, f)
        path = f.name
    try:
        r = subprocess.run([binary, "synth", "--input", path, "--stats"], capture_output=True, text=True,
                           timeout=60)
    except subprocess.TimeoutExpired:
        return False
    finally:
        os.unlink(path)
    if r.returncode != 0:
        return False
    stats = dict(line.split(": ") for line in r.stderr.splitlines() if ": " in line)
    return int(stats["regions"]) >= 2


def main():
    binary, out_dir = sys.argv[1], sys.argv[2]
    count = int(sys.argv[3]) if len(sys.argv) > 3 else 30
    rng = random.Random(20240601)
    seen = set()
    kept = 0
    while kept < count:
        desc = draw(rng, kept % 2 == 0)
        if len(constituents(desc["expr"], set())) > 4:
            continue
        text = json.dumps(desc, separators=(",", ":"))
        if text in seen or not accepted(binary, desc):
            continue
        seen.add(text)
        kept += 1
        with open(os.path.join(out_dir, f"random_{kept:02d}.json"), "w") as f:
            f.write(text + "\n")


if __name__ == "__main__":
    main()
