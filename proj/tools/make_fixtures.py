#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The mwpgen Authors
"""Writes the corpora and fixtures under tests/data. Deterministic."""

import argparse
import pathlib
import random

NAMES = ["Nimal", "Kamal", "Sunil", "Amal", "Ravi", "Saman", "Mala", "Dina", "Ruwan", "Chamari",
         "Nila", "Kasun", "Tharu", "Anu", "Harry", "Mary", "Vimal", "Kumari"]
FRUITS = ["oranges", "apples", "mangoes"]
OBJECTS = ["marbles", "books", "pencils"]
SOLIDS = {"flour": "kg", "sugar": "kg", "butter": "kg", "rice": "kg", "cement": "kg", "sand": "kg"}
LIQUIDS = {"water": "l", "milk": "l"}
GROUPS = {
    "baking": ["flour", "sugar", "butter", "water", "milk"],
    "construction": ["cement", "sand", "water"],
    "cooking": ["rice", "water", "milk"],
}
COUNT_WORDS = {2: "Two", 3: "Three", 4: "Four", 5: "Five"}

TOY = [
    "Harry has 9 oranges and Mary has 3 less oranges than Harry, how many oranges does Mary have?",
    "Nimal bought 2 kg flour and 1 kg sugar, how much more flour than sugar did Nimal buy?",
    "Kamal used 7 kg cement and 6 l water to build a wall, how much cement and water did he use?",
    "Three consecutive integers have the sum of 153, what are the integers?",
    "Dina has 12 marbles and gave 5 marbles to Sunil, how many marbles does Dina have now?",
    "A baker used 0.625 kg flour and 0.25 kg butter for a cake, how much flour and butter did the baker use?",
    "Amal has 15 books and Ravi has 4 fewer books than Amal, how many books does Ravi have?",
    "Saman walked 3 km in the morning and 5 km in the evening, how far did Saman walk?",
    "Mala bought 4 l milk and drank 1 l milk, how much milk is left?",
    "Two consecutive integers have the sum of 47, what are the two integers?",
    "Ruwan has 8 apples and Chamari has 6 more apples than Ruwan, how many apples does Chamari have?",
    "A rope is 10 m long and 3 m is cut off, how long is the rope now?",
    "Sunil paid 150 rs for 3 pencils, how much does one pencil cost?",
    "Nila used 3 kg sand and 1 kg cement, how much more sand than cement did Nila use?",
    "Kasun has 20 mangoes and sold 8 mangoes, how many mangoes are left?",
    "Mother cooked 2 kg rice with 3 l water, how much rice and water did she use?",
    "Tharu has 7 pencils and Anu has 2 less pencils than Tharu, how many pencils does Anu have?",
    "Four consecutive integers have the sum of 26, what is the largest integer?",
    "A shop sold 9 kg sugar on Monday and 5 kg sugar on Tuesday, how much more sugar was sold on Monday?",
    "Nimal has 30 rs and spent 12 rs on a book, how much money does Nimal have left?",
]

# Penn Treebank tags for TOY, annotated by hand (token/TAG, space separated).
TOY_PENN = [
    "Harry/NNP has/VBZ 9/CD oranges/NNS and/CC Mary/NNP has/VBZ 3/CD less/JJR oranges/NNS than/IN Harry/NNP ,/, how/WRB many/JJ oranges/NNS does/VBZ Mary/NNP have/VB ?/.",
    "Nimal/NNP bought/VBD 2/CD kg/NN flour/NN and/CC 1/CD kg/NN sugar/NN ,/, how/WRB much/JJ more/JJR flour/NN than/IN sugar/NN did/VBD Nimal/NNP buy/VB ?/.",
    "Kamal/NNP used/VBD 7/CD kg/NN cement/NN and/CC 6/CD l/NN water/NN to/TO build/VB a/DT wall/NN ,/, how/WRB much/JJ cement/NN and/CC water/NN did/VBD he/PRP use/VB ?/.",
    "Three/CD consecutive/JJ integers/NNS have/VBP the/DT sum/NN of/IN 153/CD ,/, what/WP are/VBP the/DT integers/NNS ?/.",
    "Dina/NNP has/VBZ 12/CD marbles/NNS and/CC gave/VBD 5/CD marbles/NNS to/TO Sunil/NNP ,/, how/WRB many/JJ marbles/NNS does/VBZ Dina/NNP have/VB now/RB ?/.",
    "A/DT baker/NN used/VBD 0.625/CD kg/NN flour/NN and/CC 0.25/CD kg/NN butter/NN for/IN a/DT cake/NN ,/, how/WRB much/JJ flour/NN and/CC butter/NN did/VBD the/DT baker/NN use/VB ?/.",
    "Amal/NNP has/VBZ 15/CD books/NNS and/CC Ravi/NNP has/VBZ 4/CD fewer/JJR books/NNS than/IN Amal/NNP ,/, how/WRB many/JJ books/NNS does/VBZ Ravi/NNP have/VB ?/.",
    "Saman/NNP walked/VBD 3/CD km/NN in/IN the/DT morning/NN and/CC 5/CD km/NN in/IN the/DT evening/NN ,/, how/WRB far/RB did/VBD Saman/NNP walk/VB ?/.",
    "Mala/NNP bought/VBD 4/CD l/NN milk/NN and/CC drank/VBD 1/CD l/NN milk/NN ,/, how/WRB much/JJ milk/NN is/VBZ left/VBN ?/.",
    "Two/CD consecutive/JJ integers/NNS have/VBP the/DT sum/NN of/IN 47/CD ,/, what/WP are/VBP the/DT two/CD integers/NNS ?/.",
    "Ruwan/NNP has/VBZ 8/CD apples/NNS and/CC Chamari/NNP has/VBZ 6/CD more/JJR apples/NNS than/IN Ruwan/NNP ,/, how/WRB many/JJ apples/NNS does/VBZ Chamari/NNP have/VB ?/.",
    "A/DT rope/NN is/VBZ 10/CD m/NN long/JJ and/CC 3/CD m/NN is/VBZ cut/VBN off/RP ,/, how/WRB long/JJ is/VBZ the/DT rope/NN now/RB ?/.",
    "Sunil/NNP paid/VBD 150/CD rs/NN for/IN 3/CD pencils/NNS ,/, how/WRB much/JJ does/VBZ one/CD pencil/NN cost/VB ?/.",
    "Nila/NNP used/VBD 3/CD kg/NN sand/NN and/CC 1/CD kg/NN cement/NN ,/, how/WRB much/JJ more/JJR sand/NN than/IN cement/NN did/VBD Nila/NNP use/VB ?/.",
    "Kasun/NNP has/VBZ 20/CD mangoes/NNS and/CC sold/VBD 8/CD mangoes/NNS ,/, how/WRB many/JJ mangoes/NNS are/VBP left/VBN ?/.",
    "Mother/NNP cooked/VBD 2/CD kg/NN rice/NN with/IN 3/CD l/NN water/NN ,/, how/WRB much/JJ rice/NN and/CC water/NN did/VBD she/PRP use/VB ?/.",
    "Tharu/NNP has/VBZ 7/CD pencils/NNS and/CC Anu/NNP has/VBZ 2/CD less/JJR pencils/NNS than/IN Tharu/NNP ,/, how/WRB many/JJ pencils/NNS does/VBZ Anu/NNP have/VB ?/.",
    "Four/CD consecutive/JJ integers/NNS have/VBP the/DT sum/NN of/IN 26/CD ,/, what/WP is/VBZ the/DT largest/JJS integer/NN ?/.",
    "A/DT shop/NN sold/VBD 9/CD kg/NN sugar/NN on/IN Monday/NNP and/CC 5/CD kg/NN sugar/NN on/IN Tuesday/NNP ,/, how/WRB much/JJ more/JJR sugar/NN was/VBD sold/VBN on/IN Monday/NNP ?/.",
    "Nimal/NNP has/VBZ 30/CD rs/NN and/CC spent/VBD 12/CD rs/NN on/IN a/DT book/NN ,/, how/WRB much/JJ money/NN does/VBZ Nimal/NNP have/VB left/VBN ?/.",
]

UNITS_TSV = """# item<TAB>units<TAB>groups
flour\tkg,g\tbaking
sugar\tkg,g\tbaking
butter\tkg,g\tbaking
rice\tkg,g\tcooking
water\tl,ml\tbaking,construction,cooking
milk\tl,ml\tbaking,cooking
cement\tkg\tconstruction
sand\tkg\tconstruction
rope\tm,cm
road\tkm,m
orange\t-\tfruit
apple\t-\tfruit
mango\t-\tfruit
marble\t-\ttoys
pencil\t-\tstationery
book\t-\tstationery
"""


def pick(rng, seq):
    return seq[rng.randrange(len(seq))]


def two_names(rng):
    a = pick(rng, NAMES)
    b = pick(rng, [n for n in NAMES if n != a])
    return a, b


def same_group_pair(rng):
    group = pick(rng, sorted(GROUPS))
    a = pick(rng, GROUPS[group])
    b = pick(rng, [i for i in GROUPS[group] if i != a])
    return a, b


def unit_of(item):
    return SOLIDS.get(item) or LIQUIDS[item]


def valid_sum(rng, k):
    first = rng.randint(1, 60)
    return sum(first + i for i in range(k))


def synthetic_english(rng, n):
    out = []
    while len(out) < n:
        t = rng.randrange(10)
        if t == 0:
            a, b = two_names(rng)
            f = pick(rng, FRUITS + OBJECTS)
            x = rng.randint(5, 30)
            d = rng.randint(1, x - 1)
            cmp = pick(rng, ["less", "fewer"])
            q = f"{a} has {x} {f} and {b} has {d} {cmp} {f} than {a}, how many {f} does {b} have?"
        elif t == 1:
            a, b = two_names(rng)
            f = pick(rng, FRUITS + OBJECTS)
            q = (f"{a} has {rng.randint(2, 30)} {f} and {b} has {rng.randint(1, 15)} more {f} than {a}, "
                 f"how many {f} does {b} have?")
        elif t == 2:
            name = pick(rng, NAMES)
            i1, i2 = same_group_pair(rng)
            y = rng.randint(1, 20)
            x = rng.randint(y + 1, 30)
            verb, pres = pick(rng, [("bought", "buy"), ("used", "use")])
            q = (f"{name} {verb} {x} {unit_of(i1)} {i1} and {y} {unit_of(i2)} {i2}, "
                 f"how much more {i1} than {i2} did {name} {pres}?")
        elif t == 3:
            name = pick(rng, NAMES)
            i1, i2 = same_group_pair(rng)
            task = pick(rng, ["build a wall", "bake a cake", "cook lunch", "make a meal"])
            q = (f"{name} used {rng.randint(1, 30)} {unit_of(i1)} {i1} and {rng.randint(1, 30)} {unit_of(i2)} "
                 f"{i2} to {task}, how much {i1} and {i2} did {name} use?")
        elif t == 4:
            k = pick(rng, sorted(COUNT_WORDS))
            q = f"{COUNT_WORDS[k]} consecutive integers have the sum of {valid_sum(rng, k)}, what are the integers?"
        elif t == 5:
            a, b = two_names(rng)
            o = pick(rng, FRUITS + OBJECTS)
            x = rng.randint(5, 30)
            q = f"{a} has {x} {o} and gave {rng.randint(1, x - 1)} {o} to {b}, how many {o} does {a} have now?"
        elif t == 6:
            name = pick(rng, NAMES)
            q = (f"{name} walked {rng.randint(1, 12)} km in the morning and {rng.randint(1, 12)} km "
                 f"in the evening, how far did {name} walk?")
        elif t == 7:
            name = pick(rng, NAMES)
            liq = pick(rng, sorted(LIQUIDS))
            x = rng.randint(2, 20)
            q = f"{name} bought {x} l {liq} and drank {rng.randint(1, x - 1)} l {liq}, how much {liq} is left?"
        elif t == 8:
            name = pick(rng, NAMES)
            o = pick(rng, OBJECTS)
            c = rng.randint(2, 9)
            q = f"{name} paid {c * rng.randint(5, 60)} rs for {c} {o}, how much does one {o[:-1]} cost?"
        else:
            x = rng.randint(5, 30)
            q = f"A rope is {x} m long and {rng.randint(1, x - 1)} m is cut off, how long is the rope now?"
        if q not in out:
            out.append(q)
    return out


SI_NAMES = ["නිමල්", "කමල්", "සුනිල්", "අමාලි", "රුවන්", "සිතුමිණි", "කසුන්", "මාලා"]
SI_ITEMS = ["ඇපල්", "දොඩම්", "අඹ", "පොත්", "පැන්සල්", "බෝල"]


def sinhala(rng, n):
    out = []
    while len(out) < n:
        t = rng.randrange(4)
        a = pick(rng, SI_NAMES)
        b = pick(rng, [x for x in SI_NAMES if x != a])
        item = pick(rng, SI_ITEMS)
        x = rng.randint(5, 40)
        y = rng.randint(1, x - 1)
        if t == 0:
            q = f"{a} ළඟ {item} {x} ක් ඇත, ඔහු තවත් {item} {y} ක් මිලදී ගත්තේය, දැන් ඔහු ළඟ ඇති {item} ගණන කීයද?"
        elif t == 1:
            q = f"{a} ළඟ {item} {x} ක් ඇත, ඔහු {b}ට {item} {y} ක් දුන්නේය, ඉතිරි {item} ගණන කීයද?"
        elif t == 2:
            q = f"{a} ළඟ {item} {x} ක් ඇත, {b} ළඟ {item} {y} ක් ඇත, ඔවුන් ළඟ ඇති මුළු {item} ගණන කීයද?"
        else:
            q = f"එක් {item} එකක මිල රුපියල් {y} ක් නම්, {item} {x} ක මිල කීයද?"
        if q not in out:
            out.append(q)
    return out


def bump_until_greater(v, w):
    # Brute force: whole steps while not strictly greater.
    while v <= w:
        v += 1
    return v


def fmt(v, scale):
    return f"{v:.{scale}f}" if scale else str(int(v))


def constraint_fixture(rng):
    rows = []

    def add(question, kinds, repaired):
        rows.append((question, ",".join(sorted(kinds)) if kinds else "-", repaired))

    # ordering, "more X than Y" with X <= Y
    cases = [(2, 6), (5, 5), (1, 9), (3, 4), (10, 12), (7, 7), (0.5, 2.0), (1.25, 3.0), (4, 20), (8, 11)]
    for x, y in cases:
        name = pick(rng, NAMES)
        i1, i2 = same_group_pair(rng)
        scale = 2 if isinstance(x, float) and x * 100 % 10 else (1 if isinstance(x, float) else 0)
        ys = fmt(y, 1 if isinstance(y, float) else 0)
        tpl = f"{name} used {{}} {unit_of(i1)} {i1} and {ys} {unit_of(i2)} {i2}, how much more {i1} than {i2} did {name} use?"
        add(tpl.format(fmt(x, scale)), ["ordering"], tpl.format(fmt(bump_until_greater(x, y), scale)))

    # ordering, "N less X than NAME": anchor must exceed N
    for x, d in [(3, 5), (4, 4), (2, 9), (6, 8), (1, 3), (7, 7)]:
        a, b = two_names(rng)
        f = pick(rng, FRUITS)
        cmp = pick(rng, ["less", "fewer"])
        tpl = f"{a} has {{}} {f} and {b} has {d} {cmp} {f} than {a}, how many {f} does {b} have?"
        add(tpl.format(x), ["ordering"], tpl.format(bump_until_greater(x, d)))

    # unit mismatch, repairable to the first listed unit
    for item, wrong in [("water", "kg"), ("milk", "g"), ("flour", "l"), ("sugar", "ml"), ("rice", "l"),
                        ("cement", "l"), ("sand", "g"), ("butter", "ml")]:
        name = pick(rng, NAMES)
        x = rng.randint(1, 20)
        tpl = f"{name} bought {x} {{}} {item}, how much {item} did {name} buy?"
        add(tpl.format(wrong), ["unit_mismatch"], tpl.format(unit_of(item)))

    # unit on an item missing from the dictionary: flagged only
    for item in ["plasma", "gravel", "honey"]:
        name = pick(rng, NAMES)
        q = f"{name} bought {rng.randint(1, 20)} kg {item}, how much {item} did {name} buy?"
        add(q, ["unit_mismatch"], q)

    # items sharing no compatibility group: flagged only
    for i1, i2 in [("cement", "flour"), ("sand", "sugar"), ("cement", "rice"), ("sand", "butter")]:
        name = pick(rng, NAMES)
        q = (f"{name} used {rng.randint(1, 20)} kg {i1} and {rng.randint(1, 20)} kg {i2}, "
             f"how much {i1} and {i2} did {name} use?")
        add(q, ["incompatible_items"], q)

    # consecutive integers with an impossible sum
    for k, s, word in [(3, 152, True), (3, 100, False), (2, 8, True), (4, 25, True), (5, 51, False),
                       (4, 31, False), (3, 1000, True)]:
        assert s % k != (k * (k - 1) // 2) % k, (k, s)
        target = s
        while target % k != (k * (k - 1) // 2) % k:
            target += 1
        count = COUNT_WORDS[k] if word else str(k)
        tpl = f"{count} consecutive integers have the sum of {{}}, what are the integers?"
        add(tpl.format(s), ["math_validity"], tpl.format(target))

    # ordering and unit together, including the published example
    add("vimal built house and he used 2 kg cement and 6 kg water, how much more cement than water did vimal use",
        ["ordering", "unit_mismatch"],
        "vimal built house and he used 7 kg cement and 6 l water, how much more cement than water did vimal use")
    for x, y in [(3, 8), (1, 1), (4, 10)]:
        name = pick(rng, NAMES)
        tpl = f"{name} used {{}} kg sand and {y} {{}} water, how much more sand than water did {name} use?"
        add(tpl.format(x, "kg"), ["ordering", "unit_mismatch"], tpl.format(bump_until_greater(x, y), "l"))

    # clean questions
    for q in TOY[:4] + TOY[6:10]:
        add(q, [], q)

    assert len(rows) == 50, len(rows)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "tests" / "data")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    def write(name, lines):
        (args.out / name).write_text("".join(line + "\n" for line in lines), encoding="utf-8")

    write("toy_english.txt", TOY)
    write("synthetic_english_300.txt", synthetic_english(random.Random(300), 300))
    write("sinhala_100.txt", sinhala(random.Random(100), 100))
    write("tagger_fixture.txt", TOY_PENN)
    (args.out / "units.tsv").write_text(UNITS_TSV, encoding="utf-8")
    write("constraint_fixture.tsv", ["\t".join(r) for r in constraint_fixture(random.Random(50))])


if __name__ == "__main__":
    main()
