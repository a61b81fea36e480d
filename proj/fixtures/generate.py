#!/usr/bin/env python3
"""Regenerates the synthetic fixture corpus in this directory.

The corpus is synthetic: institution names match the league-table fixture
(league_tables_2013.csv) so concordance runs have something to join on, but the
publication data is random and carries no claim about real institutions.
"""
import csv
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
rng = random.Random(20131)

INSTITUTIONS = {
    "Barcelona": 10.0, "Aut Barcelona": 8.0, "Aut Madrid": 7.5, "Complutense": 9.0,
    "Valencia": 7.0, "Granada": 6.5, "Pol Valencia": 5.5, "Pompeu Fabra": 3.5,
    "Zaragoza": 5.0, "País Vasco": 5.0, "Santiago": 4.5, "Sevilla": 5.0,
    "Pol Cataluña": 5.0, "Oviedo": 3.5, "Murcia": 3.5, "Pol Madrid": 4.5,
    "Navarra": 2.5, "Carlos III": 2.5, "Salamanca": 3.0, "Alcalá": 2.0,
    "Cádiz": 1.5, "La Laguna": 1.8, "Jaén": 1.2, "Almería": 1.0,
}
QUALITY = {name: rng.uniform(0.6, 1.6) for name in INSTITUTIONS}

CATEGORIES = [
    "MATHEMATICS", "MATHEMATICS, APPLIED", "STATISTICS & PROBABILITY",
    "PHYSICS, MULTIDISCIPLINARY", "ASTRONOMY & ASTROPHYSICS", "CHEMISTRY, PHYSICAL",
    "CHEMISTRY, ORGANIC", "COMPUTER SCIENCE, THEORY & METHODS", "COMPUTER SCIENCE, ARTIFICIAL INTELLIGENCE",
    "ENGINEERING, ELECTRICAL & ELECTRONIC", "ENGINEERING, CIVIL", "ENGINEERING, CHEMICAL",
    "BIOLOGY", "ECOLOGY", "MEDICINE, GENERAL & INTERNAL", "PHARMACOLOGY & PHARMACY",
    "AGRONOMY", "ECONOMICS", "PSYCHOLOGY", "EDUCATION & EDUCATIONAL RESEARCH",
    "GEOSCIENCES, MULTIDISCIPLINARY", "HISTORY",  # HISTORY belongs to no field
]

TAXONOMY = [
    ("Mathematics", "field", ["MATHEMATICS", "MATHEMATICS, APPLIED", "STATISTICS & PROBABILITY"]),
    ("Statistics", "subfield", ["STATISTICS & PROBABILITY"]),
    ("Physics", "field", ["PHYSICS, MULTIDISCIPLINARY", "ASTRONOMY & ASTROPHYSICS"]),
    ("Chemistry", "field", ["CHEMISTRY, PHYSICAL", "CHEMISTRY, ORGANIC"]),
    ("Computer Science", "field", ["COMPUTER SCIENCE, THEORY & METHODS", "COMPUTER SCIENCE, ARTIFICIAL INTELLIGENCE"]),
    ("Information & Communication Technology", "field",
     ["COMPUTER SCIENCE, THEORY & METHODS", "ENGINEERING, ELECTRICAL & ELECTRONIC"]),
    ("Engineering", "field", ["ENGINEERING, ELECTRICAL & ELECTRONIC", "ENGINEERING, CIVIL", "ENGINEERING, CHEMICAL"]),
    ("Chemical Engineering", "subfield", ["ENGINEERING, CHEMICAL"]),
    ("Biological Sciences", "field", ["BIOLOGY", "ECOLOGY"]),
    ("Medicine & Pharmacy", "field", ["MEDICINE, GENERAL & INTERNAL", "PHARMACOLOGY & PHARMACY"]),
    ("Agricultural Sciences", "field", ["AGRONOMY"]),
    ("Economics, Finance & Business", "field", ["ECONOMICS"]),
    ("Psychology & Education", "field", ["PSYCHOLOGY", "EDUCATION & EDUCATIONAL RESEARCH"]),
    ("Earth & Environmental Sciences", "field", ["GEOSCIENCES, MULTIDISCIPLINARY", "ECOLOGY"]),
]

YEARS = list(range(2003, 2015))


def main():
    # J000/J001 sit only in HISTORY. Every other category gets at least two
    # journals, the first of them first-quartile, so no field is Q1-free.
    fielded = CATEGORIES[:-1]
    journals = [("J000", ["HISTORY"], {"HISTORY": 3}), ("J001", ["HISTORY"], {"HISTORY": 2})]
    for j in range(2, 50):
        jid = f"J{j:03d}"
        primary = fielded[(j - 2) % len(fielded)]
        cats = [primary]
        if rng.random() < 0.4:
            cats.append(rng.choice([c for c in fielded if c != primary]))
        base = {c: rng.randint(1, 4) for c in cats}
        if j - 2 < len(fielded):
            base[primary] = 1
        journals.append((jid, cats, base))

    with open(HERE / "journals.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["journal_id", "category", "year", "quartile"])
        for jid, cats, base in journals:
            for c in cats:
                for y in YEARS:
                    q = base[c] if base[c] == 1 else min(4, max(1, base[c] + rng.choice([-1, 0, 0, 0, 1])))
                    w.writerow([jid, c, y, q])

    with open(HERE / "taxonomy.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["field_name", "level", "category"])
        for name, level, cats in TAXONOMY:
            for c in cats:
                w.writerow([name, level, c])

    rows = []
    n = 0
    names = list(INSTITUTIONS)
    weights = [INSTITUTIONS[k] for k in names]
    for _ in range(3600):
        inst = rng.choices(names, weights)[0]
        jid, cats, base = journals[rng.randrange(2, len(journals))]
        year = rng.choice(YEARS)
        mean = 6.0 * QUALITY[inst] * (1.6 if min(base.values()) == 1 else 1.0)
        cites = int(rng.expovariate(1.0 / mean))
        rows.append([f"P{n:05d}", inst, year, jid, cites])
        n += 1
    # Three papers in a journal whose only category belongs to no field.
    for inst in ["Granada", "Sevilla", "Jaén"]:
        rows.append([f"P{n:05d}", inst, 2010, "J000", rng.randint(0, 5)])
        n += 1

    with open(HERE / "publications.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["record_id", "institution_id", "year", "journal_id", "citations"])
        w.writerows(rows)

    config = {
        "publications": "publications.csv",
        "journals": "journals.csv",
        "taxonomy": "taxonomy.csv",
        "external_rankings": ["league_tables_2013.csv"],
        "crosswalk": "crosswalk.csv",
        "system_institutions": "spanish_universities.txt",
        "national_system": "national",
        "windows": ["2008:2012", "2003:2012"],
        "q1_policy": "any-relevant",
        "missing_quartile": "warn",
        "missing_national": "warn",
        "min_n": 3,
        "out": "out",
    }
    (HERE / "config.json").write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
