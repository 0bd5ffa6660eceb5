#!/usr/bin/env python3
"""Straight-line reimplementation of `issr generate` for the golden fixture.

Reads the fixture corpus, wordlist, masked predictions and rule mock script,
replays the selection/validation loop, and writes (or checks) the expected
output file. Shares no code with the C++ implementation.
"""
import argparse
import json
import os
import re
import sys

MASK64 = (1 << 64) - 1

POOL_CAP = 50
K_PER_ROUND = 3
TARGET_COUNT = 30
MAX_ROUNDS = 20
FETCH = 4 * POOL_CAP
LENGTH_DELTA_MAX = 2
DIFFICULTY_DELTA_MAX = 1


def fnv1a64(text):
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & MASK64
    return h


def splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    fixtures = os.path.join(here, "..", "fixtures")
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default=os.path.join(fixtures, "golden", "expected_output.jsonl"))
    ap.add_argument("--check", action="store_true", help="compare against --out instead of writing it")
    args = ap.parse_args()

    wordlist = {}
    with open(os.path.join(fixtures, "wordlist.tsv"), encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            word, pos, level = line.split("\t")
            entry = wordlist.setdefault(word, {"pos": set(), "level": int(level)})
            entry["pos"].add(pos)
            entry["level"] = min(entry["level"], int(level))

    def lemma(word):
        if word in wordlist:
            return word
        if word.endswith("s") and word[:-1] in wordlist:
            return word[:-1]
        return word

    with open(os.path.join(fixtures, "golden", "masked.json"), encoding="utf-8") as f:
        masked = json.load(f)
    with open(os.path.join(fixtures, "golden", "mock_script.json"), encoding="utf-8") as f:
        script = json.load(f)
    items = []
    with open(os.path.join(fixtures, "golden", "items.jsonl"), encoding="utf-8") as f:
        for line in f:
            if line.strip():
                items.append(json.loads(line))

    single_word = re.compile(r"^[A-Za-z'-]*[A-Za-z][A-Za-z'-]*$")
    seed = script.get("seed", args.seed)
    lines = []
    for item in items:
        answer = item["answer"]
        behavior = dict(script)
        behavior.update(script.get("items", {}).get(item["id"], {}))

        # Candidate generation.
        query = item["stem"].replace("_____", "[MASK]")
        preds = masked.get(query, masked.get("*"))
        preds = sorted(preds, key=lambda p: (-p["score"], p["token"]))[:FETCH]
        answer_info = wordlist[answer]
        kept = []
        seen = set()
        for p in preds:
            word = p["token"].strip().lower()
            if not single_word.match(word):
                continue
            if word in seen:
                continue
            seen.add(word)
            if word == answer or lemma(word) == lemma(answer):
                continue
            info = wordlist.get(lemma(word))
            if info is None:
                continue
            if abs(len(word) - len(answer)) > LENGTH_DELTA_MAX:
                continue
            if not (info["pos"] & answer_info["pos"]):
                continue
            if abs(info["level"] - answer_info["level"]) > DIFFICULTY_DELTA_MAX:
                continue
            kept.append((p["score"], word))
        kept.sort(key=lambda c: (-c[0], c[1]))
        pool = [w for _, w in kept[:POOL_CAP]]

        # Selection and validation rounds.
        rng = seed ^ fnv1a64(item["id"])
        validator_calls = 0
        distractors = []
        rounds = 0
        for round_no in range(1, MAX_ROUNDS + 1):
            if len(distractors) >= TARGET_COUNT or not pool:
                break
            k = min(K_PER_ROUND, TARGET_COUNT - len(distractors), len(pool))
            idx = list(range(len(pool)))
            picks = []
            for i in range(k):
                rng, r = splitmix64(rng)
                j = i + r % (len(idx) - i)
                idx[i], idx[j] = idx[j], idx[i]
                picks.append(pool[idx[i]])
            for word in picks:
                validator_calls += 1
                reject = behavior.get("validator") == "reject_all" or (
                    behavior.get("validator") == "reject_every"
                    and validator_calls % behavior.get("reject_every", 3) == 0)
                pool.remove(word)
                if not reject and len(distractors) < TARGET_COUNT:
                    distractors.append(word)
            rounds = round_no

        if len(distractors) >= TARGET_COUNT:
            status = "target_reached"
        elif not pool:
            status = "pool_exhausted"
        else:
            status = "max_rounds"
        lines.append(json.dumps({"id": item["id"], "distractors": distractors, "rounds_used": rounds,
                                 "status": status}, sort_keys=True, separators=(",", ":")))

    text = "".join(line + "\n" for line in lines)
    if args.check:
        with open(args.out, encoding="utf-8") as f:
            expected = f.read()
        if expected != text:
            sys.stderr.write("reference output differs from " + args.out + "\n")
            sys.stderr.write(text)
            return 1
        print("reference output matches " + args.out)
        return 0
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
