"""Reference extremal volumes (Vol Z_min, Vol Z_max) for selected rows, frozen as data."""

VOLUMES = {
    "II-1-1.1": (9, 9), "II-1-1.2": (16, 4), "II-1-1.3": (25, 1),
    "II-1-2.1": (8, 8), "II-1-2.2": (12, 4), "II-1-2.3": (18, 2), "II-1-2.4": (6, 6),
    "II-1-3.1": (8, 8), "II-1-3.2": (15, 3),
    "II-2-1.1": (9, 4), "II-2-1.2": (16, 1), "II-2-1.3": (4, 4),
    "II-2-1.4": (9, 1), "II-2-1.5": (4, 1), "II-2-1.6": (1, 1),
    "II-2-2.1": (2, 2), "II-2-2.2": (4, 2), "II-2-2.3": (4, 4), "II-2-2.4": (4, 4), "II-2-2.5": (6, 2),
    "II-2-2.6": (6, 4), "II-2-2.7": (8, 2), "II-2-2.8": (8, 4), "II-2-2.9": (12, 2),
    "II-2-3.1": (3, 3), "II-2-3.2": (5, 3), "II-2-3.3": (8, 3), "II-2-3.4": (12, 3), "II-2-3.5": (8, 5),
    "I-1-1.1": (1, 15),
}
