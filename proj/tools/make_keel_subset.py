#!/usr/bin/env python3
"""Rebuild the multi-class KEEL files used by the smoke benchmark.

The keel_ds wheel (PyPI) ships the original multi-class wine rows and the
binary "X_vs_Y" KEEL derivatives of glass and ecoli. The multi-class labels
are recovered from the positive and negative sides of the binary variants.
balance-scale is generated (it is the full 5^4 grid) and zoo comes from the
copy bundled with the orange3 wheel.

usage: make_keel_subset.py <keel_ds wheel> <orange3 wheel> <output dir>
"""
import collections
import itertools
import os
import sys
import zipfile

RAW = "keel_ds/data/{}/raw/{}.dat"


def rows(zf, group, name):
    out = []
    for line in zf.read(RAW.format(group, name)).decode().splitlines():
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        parts = [p.strip() for p in line.split(",")]
        out.append((tuple(parts[:-1]), parts[-1]))
    return out


def key(feats):
    return tuple(float(v) for v in feats)


def side(zf, name, cls):
    data = rows(zf, "imbalanced", name)
    if name.startswith("ecoli"):
        return collections.Counter(ecoli_key(f, data) for f, c in data if c == cls)
    return collections.Counter(key(f) for f, c in data if c == cls)


def ecoli_key(feats, data=None):
    # some ecoli variants store hundredths as integers with trailing zeros
    # dropped (0.40 -> "4"), so compare on that lossy form
    scale = 100.0
    if data is not None and max(max(key(f)) for f, _ in data) > 1.5:
        scale = 1.0
    return tuple(str(int(round(v * scale))).rstrip("0") for v in key(feats))


def pos(zf, name):
    return side(zf, name, "positive")


def neg(zf, name):
    return side(zf, name, "negative")


def label(base, rules, keyfn=key):
    """rules: ordered (class label, Counter of feature keys)."""
    labels = []
    for feats in base:
        k = keyfn(feats)
        for cls, bag in rules:
            if bag[k] > 0:
                bag[k] -= 1
                labels.append(cls)
                break
        else:
            labels.append(None)
    return labels


def write(path, relation, names, feats, labels, classes):
    assert None not in labels, relation
    cols = list(zip(*feats))
    with open(path, "w") as fh:
        fh.write(f"@relation {relation}\n")
        for n, col in zip(names, cols):
            vals = [float(v) for v in col]
            kind = "integer" if all(v.is_integer() for v in vals) else "real"
            lo, hi = min(vals), max(vals)
            fmt = (lambda v: str(int(v))) if kind == "integer" else repr
            fh.write(f"@attribute {n} {kind} [{fmt(lo)}, {fmt(hi)}]\n")
        fh.write("@attribute Class {" + ", ".join(classes) + "}\n")
        fh.write("@inputs " + ", ".join(names) + "\n@outputs Class\n@data\n")
        for f, c in zip(feats, labels):
            fh.write(", ".join(f) + ", " + c + "\n")
    counts = collections.Counter(labels)
    print(f"{relation}: {len(feats)} rows, {len(names)} attrs, " +
          " ".join(f"{c}:{counts[c]}" for c in classes))


def main():
    zf = zipfile.ZipFile(sys.argv[1])
    orange = zipfile.ZipFile(sys.argv[2])
    out = sys.argv[3]
    os.makedirs(out, exist_ok=True)

    wine = rows(zf, "balanced", "wine")
    write(os.path.join(out, "wine.dat"), "wine",
          ["Alcohol", "MalicAcid", "Ash", "AlcalinityOfAsh", "Magnesium", "TotalPhenols",
           "Flavanoids", "NonflavanoidsPhenols", "Proanthocyanins", "ColorIntensity", "Hue",
           "OD280/OD315", "Proline"],
          [f for f, _ in wine], [c for _, c in wine], ["1", "2", "3"])

    # the binary glass files carry slightly different renderings of the same
    # rows, so each class is taken from the file where it is the positive one
    base, lab = [], []
    for cls, name in [("1", "glass0"), ("2", "glass1"), ("3", "glass2"),
                      ("5", "glass4"), ("6", "glass5"), ("7", "glass6")]:
        for f, c in rows(zf, "imbalanced", name):
            if c == "positive":
                base.append(f)
                lab.append(cls)
    write(os.path.join(out, "glass.dat"), "glass",
          ["RI", "Na", "Mg", "Al", "Si", "K", "Ca", "Ba", "Fe"], base, lab,
          ["1", "2", "3", "5", "6", "7"])

    # the binary ecoli files number classes alphabetically:
    # 0 cp, 1 im, 2 imL, 3 imS, 4 imU, 5 om, 6 omL, 7 pp
    base = [f for f, _ in rows(zf, "imbalanced", "ecoli1")]
    cp, im = pos(zf, "ecoli-0_vs_1"), neg(zf, "ecoli-0_vs_1")
    pp, imu, om = pos(zf, "ecoli2"), pos(zf, "ecoli3"), pos(zf, "ecoli4")
    ims = pos(zf, "ecoli-0-2-6-7_vs_3-5") - om
    iml = pos(zf, "ecoli-0-1_vs_2-3-5") - ims - om
    oml = pos(zf, "ecoli-0-1-3-7_vs_2-6") - iml
    lab = label(base, [("cp", cp), ("im", im), ("pp", pp), ("imU", imu), ("om", om),
                       ("omL", oml), ("imL", iml), ("imS", ims)], ecoli_key)
    write(os.path.join(out, "ecoli.dat"), "ecoli",
          ["Mcg", "Gvh", "Lip", "Chg", "Aac", "Alm1", "Alm2"], base, lab,
          ["cp", "im", "pp", "imU", "om", "omL", "imL", "imS"])

    feats, lab = [], []
    for lw, ld, rw, rd in itertools.product(range(1, 6), repeat=4):
        left, right = lw * ld, rw * rd
        feats.append(tuple(str(v) for v in (lw, ld, rw, rd)))
        lab.append("L" if left > right else "R" if left < right else "B")
    write(os.path.join(out, "balance.dat"), "balance",
          ["Left-weight", "Left-distance", "Right-weight", "Right-distance"], feats, lab,
          ["L", "B", "R"])

    lines = orange.read("Orange/datasets/zoo.tab").decode().splitlines()
    header = lines[0].split("\t")
    feats, lab = [], []
    for line in lines[3:]:
        if not line.strip():
            continue
        cells = line.split("\t")
        feats.append(tuple(cells[1:-1]))
        lab.append(cells[-1])
    order = ["mammal", "bird", "reptile", "fish", "amphibian", "insect", "invertebrate"]
    write(os.path.join(out, "zoo.dat"), "zoo", header[1:-1], feats, lab, order)


if __name__ == "__main__":
    main()
