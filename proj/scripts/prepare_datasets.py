#!/usr/bin/env python3
"""Rebuild data/*.csv from UCI copies redistributed inside public PyPI packages.

The UCI archive itself is not always reachable, so each benchmark is pulled
from a wheel/sdist that ships an unmodified copy:

  iris, wine      scikit-learn (installed)      sklearn/datasets/data
  housing         mlxtend                       mlxtend/data/data/boston_housing.csv
  machine_cpu     rdatasets                     MASS::cpus (UCI cpu-performance)
  abalone         weka (sdist)                  weka/fixtures/abalone.arff
  diabetes        keel-ds                       balanced/raw/pima.dat
  segment         keel-ds                       balanced/raw/segment.dat

Delta Ailerons is not redistributed by any package we know of; drop a
delta_ailerons.csv (5 features, target last, header row) into data/ to enable it.

Usage: scripts/prepare_datasets.py [--out data] [--cache /tmp/ocrep-wheels]
"""

import argparse
import csv
import io
import lzma
import os
import pickle
import subprocess
import sys
import tarfile
import zipfile
from pathlib import Path


def fetch(package, cache):
    cache.mkdir(parents=True, exist_ok=True)
    found = [p for p in cache.iterdir() if p.name.lower().replace("-", "_").startswith(package.replace("-", "_"))]
    if not found:
        subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "-d", str(cache), package],
                       check=True, stdout=subprocess.DEVNULL)
        found = [p for p in cache.iterdir() if p.name.lower().replace("-", "_").startswith(package.replace("-", "_"))]
    return found[0]


def read_member(archive, suffix):
    if archive.suffix == ".whl":
        with zipfile.ZipFile(archive) as z:
            name = next(n for n in z.namelist() if n.endswith(suffix))
            return z.read(name)
    with tarfile.open(archive) as t:
        member = next(m for m in t.getmembers() if m.name.endswith(suffix))
        return t.extractfile(member).read()


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def sklearn_bundled(name):
    import sklearn
    return Path(sklearn.__file__).parent / "datasets" / "data" / name


def iris(out, _):
    lines = sklearn_bundled("iris.csv").read_text().splitlines()
    names = lines[0].split(",")[2:]
    rows = [l.split(",")[:4] + [names[int(l.split(",")[4])]] for l in lines[1:] if l]
    write_csv(out / "iris.csv", ["sepal_length", "sepal_width", "petal_length", "petal_width", "species"], rows)


def wine(out, _):
    lines = sklearn_bundled("wine_data.csv").read_text().splitlines()
    rows = []
    for l in lines[1:]:
        if l:
            f = l.split(",")
            rows.append(f[:13] + [str(int(f[13]) + 1)])
    header = ["alcohol", "malic_acid", "ash", "alcalinity", "magnesium", "total_phenols", "flavanoids",
              "nonflavanoid_phenols", "proanthocyanins", "color_intensity", "hue", "od280_od315", "proline", "class"]
    write_csv(out / "wine.csv", header, rows)


def housing(out, cache):
    raw = read_member(fetch("mlxtend", cache), "boston_housing.csv").decode()
    rows = [[repr(float(v)) for v in l.split(",")] for l in raw.splitlines() if l]
    header = ["CRIM", "ZN", "INDUS", "CHAS", "NOX", "RM", "AGE", "DIS", "RAD", "TAX", "PTRATIO", "B", "LSTAT", "MEDV"]
    write_csv(out / "housing.csv", header, rows)


def machine_cpu(out, cache):
    import pandas as pd
    raw = read_member(fetch("rdatasets", cache), "MASS/cpus.pkl.compress")
    df = pd.read_pickle(io.BytesIO(lzma.decompress(raw)))
    cols = ["syct", "mmin", "mmax", "cach", "chmin", "chmax", "perf"]
    rows = [[str(int(v)) for v in r] for r in df[cols].itertuples(index=False)]
    write_csv(out / "machine_cpu.csv", cols, rows)


def abalone(out, cache):
    raw = read_member(fetch("weka", cache), "fixtures/abalone.arff").decode()
    rows = [l.split(",") for l in raw.splitlines() if l and not l.startswith(("@", "%"))]
    header = ["sex", "length", "diameter", "height", "whole_weight", "shucked_weight", "viscera_weight",
              "shell_weight", "rings"]
    write_csv(out / "abalone.csv", header, rows)


def keel(name, filename, header, out, cache):
    raw = read_member(fetch("keel-ds", cache), f"balanced/raw/{name}.dat").decode()
    rows = [[v.strip() for v in l.split(",")] for l in raw.splitlines() if l.strip() and not l.startswith("@")]
    write_csv(out / filename, header, rows)


def diabetes(out, cache):
    keel("pima", "diabetes.csv", ["preg", "plas", "pres", "skin", "insu", "mass", "pedi", "age", "class"], out, cache)


def segment(out, cache):
    header = ["region_centroid_col", "region_centroid_row", "region_pixel_count", "short_line_density_5",
              "short_line_density_2", "vedge_mean", "vedge_sd", "hedge_mean", "hedge_sd", "intensity_mean",
              "rawred_mean", "rawblue_mean", "rawgreen_mean", "exred_mean", "exblue_mean", "exgreen_mean",
              "value_mean", "saturation_mean", "hue_mean", "class"]
    keel("segment", "segment.csv", header, out, cache)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--cache", default="/tmp/ocrep-wheels")
    args = ap.parse_args()
    out, cache = Path(args.out), Path(args.cache)
    out.mkdir(parents=True, exist_ok=True)
    for build in (iris, wine, housing, machine_cpu, abalone, diabetes, segment):
        build(out, cache)


if __name__ == "__main__":
    main()
