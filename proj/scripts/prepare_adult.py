#!/usr/bin/env python3
#
# Copyright 2026 The dpboot Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Exports census income data as the normalized CSV read by load_adult_csv.

Requires the folktables and pandas packages. Output columns are
age, school, hours, sex, label with the four features min-max scaled to
[0, 1] and label = 1 when income exceeds --threshold.
"""

import argparse
import pathlib

import folktables
import pandas as pd


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/adult.csv")
    parser.add_argument("--year", default="2018")
    parser.add_argument("--threshold", type=float, default=25000.0)
    parser.add_argument("--cache", default="data/raw")
    args = parser.parse_args()

    source = folktables.ACSDataSource(
        survey_year=args.year, horizon="1-Year", survey="person",
        root_dir=args.cache)
    raw = source.get_data(download=True)
    raw = folktables.adult_filter(raw)
    frame = pd.DataFrame({
        "age": raw["AGEP"],
        "school": raw["SCHL"],
        "hours": raw["WKHP"],
        "sex": raw["SEX"],
        "label": (raw["PINCP"] > args.threshold).astype(int),
    }).dropna()
    for col in ("age", "school", "hours", "sex"):
        lo, hi = frame[col].min(), frame[col].max()
        frame[col] = (frame[col] - lo) / (hi - lo)

    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False, float_format="%.6f")
    print(f"wrote {len(frame)} rows to {out}; "
          f"positive fraction {frame['label'].mean():.4f}")


if __name__ == "__main__":
    main()
