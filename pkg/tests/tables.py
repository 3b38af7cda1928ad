"""Intersection tables for the fake-plane special fibres, transcribed by hand.

Upstream tables map (row, column) -> point label, rows 1..7 and columns 8..14.
The downstream table maps an unordered component pair (i <= j) to the labels in
that cell; a diagonal cell records a node.
"""

MUMFORD_UPSTREAM = {
    (1, 8): "a", (1, 9): "b", (1, 10): "a",
    (2, 10): "d", (2, 11): "b", (2, 13): "g",
    (3, 8): "a", (3, 11): "c", (3, 14): "d",
    (4, 8): "b", (4, 12): "e", (4, 13): "c",
    (5, 9): "g", (5, 13): "f", (5, 14): "e",
    (6, 10): "c", (6, 12): "g", (6, 14): "f",
    (7, 9): "d", (7, 11): "e", (7, 12): "f",
}

MUMFORD_NAMES = {
    1: "E(001)", 2: "E(100)", 3: "E(110)", 4: "E(111)", 5: "E(011)", 6: "E(101)", 7: "E(010)",
    8: "C(110)", 9: "C(100)", 10: "C(010)", 11: "C(001)", 12: "C(101)", 13: "C(011)", 14: "C(111)",
}

MUMFORD_DOWNSTREAM = {
    (1, 3): "e", (1, 4): "g", (1, 5): "fg", (1, 6): "ef",
    (2, 3): "c", (2, 4): "d", (2, 5): "c", (2, 6): "d", (2, 7): "aa",
    (3, 4): "b", (3, 5): "c", (3, 6): "e", (3, 7): "b",
    (4, 5): "g", (4, 6): "d", (4, 7): "b",
    (5, 6): "f",
    (7, 7): "a",
}

KATO_ISHIDA_1 = {
    (1, 10): "f", (1, 12): "e", (1, 14): "g",
    (2, 11): "d", (2, 13): "c", (2, 14): "b",
    (3, 8): "g", (3, 11): "a", (3, 12): "f",
    (4, 9): "c", (4, 12): "a", (4, 14): "d",
    (5, 8): "f", (5, 10): "a", (5, 13): "e",
    (6, 8): "e", (6, 9): "b", (6, 11): "c",
    (7, 9): "d", (7, 10): "g", (7, 13): "b",
}

KATO_ISHIDA_2 = {
    (1, 10): "e", (1, 12): "g", (1, 14): "f",
    (2, 9): "b", (2, 10): "b", (2, 13): "c",
    (3, 9): "b", (3, 11): "a", (3, 12): "e",
    (4, 8): "g", (4, 12): "a", (4, 13): "d",
    (5, 8): "e", (5, 10): "a", (5, 11): "g",
    (6, 11): "d", (6, 13): "d", (6, 14): "c",
    (7, 8): "f", (7, 9): "c", (7, 14): "f",
}
