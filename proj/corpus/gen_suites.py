#!/usr/bin/env python3
"""Regenerates the *.suite files next to this script.

Each suite line is ATTACK or LEGIT followed by URL-encoded parameters.
"""

import itertools
import pathlib
from urllib.parse import urlencode

STRING_ATTACKS = [
    "';DROP TABLE BOOKS;--",
    "' OR '1'='1",
    "x' OR 1=1 --",
    "admin'--",
    "' UNION SELECT login, password FROM USERS --",
    "\\' OR 1=1 --",
    "\\\\'; DELETE FROM USERS; --",
    "\" OR \"\"=\"",
    "'); DROP TABLE EVENTS; --",
    "abc\\",
]

NUMERIC_ATTACKS = [
    "1 OR 1=1",
    "0; DROP TABLE ADS",
    "-1 OR price > 0",
    "5'",
    "1, 'x'); DROP TABLE EVENTS; --",
    "10 UNION SELECT * FROM USERS",
    "1=1",
    "2 --",
]

LEGIT_STRINGS = ["John Doe", "Mark Twain", "O'Brien", "alice", "Main Hall", "sales", "r2-d2", "Zoe"]
LEGIT_NUMBERS = ["12", "3.5", "-4", "100", " 7 ", "0"]


def line(label, params):
    return f"{label} {urlencode(params)}"


def cycle(values, n):
    return list(itertools.islice(itertools.cycle(values), n))


def bookstore():
    rows = []
    for a in STRING_ATTACKS:
        rows.append(line("ATTACK", {"action": "author", "author": a}))
    for a in NUMERIC_ATTACKS[:4]:
        rows.append(line("ATTACK", {"action": "price", "price": a}))
    for s in LEGIT_STRINGS:
        rows.append(line("LEGIT", {"action": "author", "author": s}))
    for n in LEGIT_NUMBERS:
        rows.append(line("LEGIT", {"action": "price", "price": n}))
    rows.append(line("LEGIT", {"action": "title"}))
    return rows


def login():
    rows = []
    for a, n in zip(STRING_ATTACKS[:6], cycle(LEGIT_NUMBERS, 6)):
        rows.append(line("ATTACK", {"login": a, "password": "secret", "uid": n}))
    for a in STRING_ATTACKS[6:9]:
        rows.append(line("ATTACK", {"login": "bob", "password": a, "uid": "1"}))
    for a in NUMERIC_ATTACKS[:3]:
        rows.append(line("ATTACK", {"login": "bob", "password": "pw", "uid": a}))
    for s, n in zip(LEGIT_STRINGS, cycle(LEGIT_NUMBERS, 8)):
        rows.append(line("LEGIT", {"login": s, "password": "pa55 word", "uid": n}))
    return rows


def classifieds():
    rows = []
    for a in NUMERIC_ATTACKS[:4]:
        rows.append(line("ATTACK", {"category": a, "keywords": ""}))
    for a, k in zip(STRING_ATTACKS[:6], cycle(["x", "xx"], 6)):
        rows.append(line("ATTACK", {"category": "3", "keywords": k, "kw": a}))
    for s, n, k in zip(LEGIT_STRINGS, cycle(LEGIT_NUMBERS, 8), cycle(["", "x", "xx"], 8)):
        rows.append(line("LEGIT", {"category": n, "keywords": k, "kw": s}))
    return rows


def events():
    rows = []
    for a in STRING_ATTACKS[:5]:
        rows.append(line("ATTACK", {"name": a, "day": "14", "place": "Main Hall"}))
    for a in NUMERIC_ATTACKS[3:6]:
        rows.append(line("ATTACK", {"name": "Expo", "day": a, "place": "Annex"}))
    for a in STRING_ATTACKS[8:10]:
        rows.append(line("ATTACK", {"name": "Expo", "day": "2", "place": a}))
    for s, n in zip(LEGIT_STRINGS, cycle(LEGIT_NUMBERS, 8)):
        rows.append(line("LEGIT", {"name": s, "day": n, "place": "Room 101"}))
    return rows


def portal():
    rows = []
    for a in STRING_ATTACKS[:4]:
        rows.append(line("ATTACK", {"me": a, "role": "user", "id": ""}))
    for a in STRING_ATTACKS[4:8]:
        rows.append(line("ATTACK", {"me": "mod", "role": "moderator", "author": a, "id": ""}))
    for a in NUMERIC_ATTACKS[:3]:
        rows.append(line("ATTACK", {"me": "bob", "role": "user", "id": a}))
    for s, n in zip(LEGIT_STRINGS[:4], LEGIT_NUMBERS):
        rows.append(line("LEGIT", {"me": s, "role": "user", "id": n}))
    for s in LEGIT_STRINGS[4:7]:
        rows.append(line("LEGIT", {"me": "mod", "role": "moderator", "author": s, "id": ""}))
    return rows


def payroll():
    rows = []
    for a in NUMERIC_ATTACKS[:4]:
        rows.append(line("ATTACK", {"salary": a, "dept": "", "id": "7"}))
    for a in NUMERIC_ATTACKS[4:8]:
        rows.append(line("ATTACK", {"salary": "5000", "dept": "", "id": a}))
    for a in STRING_ATTACKS[:4]:
        rows.append(line("ATTACK", {"salary": "5000", "dept": a, "id": "7"}))
    for s, n in zip(LEGIT_STRINGS, cycle(LEGIT_NUMBERS, 8)):
        rows.append(line("LEGIT", {"salary": n, "dept": s, "id": "42"}))
    rows.append(line("LEGIT", {"salary": "1200", "dept": "", "id": "3"}))
    return rows


SUITES = {
    "bookstore_mini": bookstore,
    "login": login,
    "classifieds": classifieds,
    "events": events,
    "portal": portal,
    "payroll": payroll,
}


def main():
    here = pathlib.Path(__file__).resolve().parent
    for name, build in SUITES.items():
        rows = build()
        header = f"# {name}: generated by gen_suites.py\n"
        (here / f"{name}.suite").write_text(header + "\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
