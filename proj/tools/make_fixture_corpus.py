# Copyright 2026 The motif2vec Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/fixture_corpus/synthetic.

Melodies are stitched from short interval figures. Each figure family holds
a few interval-wise similar variants; each genre walks a Markov chain over
families and picks a uniform variant, so variants of one family occur in
interchangeable contexts while families keep genre-specific surroundings.
Deterministic: fixed seed, no filesystem-order dependence.

Usage: python3 tools/make_fixture_corpus.py [out_dir]
"""

import random
import sys
from fractions import Fraction
from pathlib import Path

SEED = 20260401
SONGS_PER_GENRE = 150

# Families are exclusive to one genre each, so motifs from different genres
# never share a context and their embeddings stay unrelated.
FAMILIES = {
    # g0: stepwise world
    "step_up": [(2, 2), (2, 1), (1, 2)],
    "step_down": [(-2, -2), (-2, -1), (-1, -2)],
    "repeat": [(0, 0), (0, 1), (0, -1)],
    # g1: arpeggio world
    "arp_up": [(4, 3), (3, 4), (3, 5)],
    "arp_down": [(-4, -3), (-3, -4), (-5, -3)],
    "pedal_up": [(0, 3), (0, 4), (1, 3)],
    "pedal_down": [(0, -3), (0, -4), (-1, -3)],
    # g2: three-note runs
    "run_up3": [(1, 2, 2), (2, 1, 2), (2, 2, 1)],
    "run_down3": [(-1, -2, -2), (-2, -1, -2), (-2, -2, -1)],
    "cadence3": [(-2, -2, 0), (-2, -1, 0), (-1, -2, 0)],
    # g3: waves and held leaps
    "wave_up": [(3, -1), (4, -1), (4, -2)],
    "wave_down": [(-3, 1), (-4, 1), (-4, 2)],
    "leap_up": [(5, 0), (6, 0), (5, 1)],
    "leap_down": [(-5, 0), (-6, 0), (-5, -1)],
}

# in-genre substitute when a figure would leave the comfortable range
MIRROR = {
    "step_up": "step_down",
    "step_down": "step_up",
    "repeat": "repeat",
    "arp_up": "arp_down",
    "arp_down": "arp_up",
    "pedal_up": "pedal_down",
    "pedal_down": "pedal_up",
    "run_up3": "run_down3",
    "run_down3": "run_up3",
    "cadence3": "run_up3",
    "wave_up": "wave_down",
    "wave_down": "wave_up",
    "leap_up": "leap_down",
    "leap_down": "leap_up",
}

# genre -> (ascent chain, descent chain). Melodies follow an arch contour:
# they climb with the ascent chain, turn at an apex, and come back down, so
# a context window almost always sees figures of one direction and context
# similarity tracks interval similarity.
GENRES = {
    "g0": (
        {"step_up": [("step_up", 0.7), ("repeat", 0.3)],
         "repeat": [("step_up", 0.75), ("repeat", 0.25)]},
        {"step_down": [("step_down", 0.7), ("repeat", 0.3)],
         "repeat": [("step_down", 0.75), ("repeat", 0.25)]},
    ),
    "g1": (
        {"arp_up": [("arp_up", 0.6), ("pedal_up", 0.4)],
         "pedal_up": [("arp_up", 0.7), ("pedal_up", 0.3)]},
        {"arp_down": [("arp_down", 0.6), ("pedal_down", 0.4)],
         "pedal_down": [("arp_down", 0.7), ("pedal_down", 0.3)]},
    ),
    "g2": (
        {"run_up3": [("run_up3", 1.0)]},
        {"run_down3": [("run_down3", 0.7), ("cadence3", 0.3)],
         "cadence3": [("run_down3", 0.6), ("cadence3", 0.4)]},
    ),
    "g3": (
        {"wave_up": [("wave_up", 0.65), ("leap_up", 0.35)],
         "leap_up": [("wave_up", 0.7), ("leap_up", 0.3)]},
        {"wave_down": [("wave_down", 0.65), ("leap_down", 0.35)],
         "leap_down": [("wave_down", 0.7), ("leap_down", 0.3)]},
    ),
}

# duration cycles in quarter-note units; everything sits on the 1/4 grid
RHYTHMS = {
    "g0": [Fraction(1, 2), Fraction(1, 2), Fraction(1)],
    "g1": [Fraction(1), Fraction(1, 2), Fraction(1, 2), Fraction(1),
           Fraction(2)],
    "g2": [Fraction(3, 2), Fraction(1, 2), Fraction(1)],
    "g3": [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2),
           Fraction(3, 4), Fraction(1, 4)],
}

METERS = {"g0": 4, "g1": 4, "g2": 3, "g3": 4}

PITCH_NAMES = ["c", "c#", "d", "d#", "e", "f", "f#", "g", "g#", "a", "a#",
               "b"]

KERN_RECIP = {
    Fraction(1, 4): "16",
    Fraction(1, 2): "8",
    Fraction(3, 4): "8.",
    Fraction(1): "4",
    Fraction(3, 2): "4.",
    Fraction(2): "2",
    Fraction(3): "2.",
    Fraction(4): "1",
}


def kern_pitch(midi):
    octave = midi // 12 - 1
    name = PITCH_NAMES[midi % 12]
    letter, sharp = name[0], name[1:]
    if octave >= 4:
        letters = letter * (octave - 3)
    else:
        letters = letter.upper() * (4 - octave)
    return letters + ("#" if sharp else "")


def weighted_choice(rng, options):
    x = rng.random()
    acc = 0.0
    for value, weight in options:
        acc += weight
        if x < acc:
            return value
    return options[-1][0]


def make_intervals(rng, genre, n_figures):
    ascent, descent = GENRES[genre]
    start = rng.choice([53, 55, 57, 60])
    pitch = start
    intervals = []
    apex = n_figures // 2 + rng.randint(-1, 1)
    for step in range(n_figures):
        chain = ascent if step < apex else descent
        if step == 0 or step == apex:
            family = next(iter(chain))
        figure = rng.choice(FAMILIES[family])
        lowest = min(pitch + sum(figure[:k + 1]) for k in range(len(figure)))
        highest = max(pitch + sum(figure[:k + 1]) for k in range(len(figure)))
        if lowest < 45 or highest > 89:
            family = MIRROR[family]
            figure = rng.choice(FAMILIES[family])
        intervals.extend(figure)
        pitch += sum(figure)
        family = weighted_choice(rng, chain.get(family,
                                                list(chain.items())[0][1]))
    return start, intervals


def song_lines(rng, genre, index):
    n_figures = rng.randint(12, 18)
    start, intervals = make_intervals(rng, genre, n_figures)
    pitches = [start]
    for delta in intervals:
        pitches.append(pitches[-1] + delta)

    rhythm = RHYTHMS[genre]
    meter = METERS[genre]
    lines = [f"!!!OTL: Fixture tune {genre}-{index:03d}",
             "**kern", "*clefG2", f"*M{meter}/4"]
    bar = 1
    lines.append(f"={bar}")
    in_bar = Fraction(0)
    # roughly every eighth song carries one tie across a barline
    tie_song = index % 8 == 3
    tie_done = False
    for i, midi in enumerate(pitches):
        dur = rhythm[i % len(rhythm)]
        name = kern_pitch(midi)
        room = Fraction(meter) - in_bar
        if dur > room > 0 and tie_song and not tie_done and room in KERN_RECIP \
                and (dur - room) in KERN_RECIP:
            lines.append(f"[{KERN_RECIP[room]}{name}")
            bar += 1
            lines.append(f"={bar}")
            lines.append(f"{KERN_RECIP[dur - room]}{name}]")
            in_bar = dur - room
            tie_done = True
            continue
        if room <= 0 or dur > room:
            bar += 1
            lines.append(f"={bar}")
            in_bar = Fraction(0)
        lines.append(f"{KERN_RECIP[dur]}{name}")
        in_bar += dur
        if in_bar == meter:
            bar += 1
            lines.append(f"={bar}")
            in_bar = Fraction(0)
    # avoid a dangling barline before the terminator
    if lines[-1].startswith("="):
        lines.pop()
    lines.append("*-")
    return "\n".join(lines) + "\n"


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else \
        Path(__file__).resolve().parent.parent / "data" / "fixture_corpus" / \
        "synthetic"
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    count = 0
    for genre in sorted(GENRES):
        for index in range(SONGS_PER_GENRE):
            text = song_lines(rng, genre, index)
            (out_dir / f"{genre}_{index:03d}.krn").write_text(text)
            count += 1
    print(f"wrote {count} songs to {out_dir}")


if __name__ == "__main__":
    main()
