"""Pinned end-to-end cases for the reproduce suite.

Each case bundles the input data of one fully worked example (h-vector or
degree sequences, the cancellation schedule, and reference generator lists
for cross-checking the constructed ideals).  Expected outputs live as
frozen JSON fixtures next to this module and are only rewritten by an
explicit bless.
"""

from __future__ import annotations

EX14 = {
    "h": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 10, 9, 8, 8, 5, 3, 3, 2],
    "schedule": [[13, 13], [16, 16], [16, 16], [19, 19],
                 [14, 15], [16, 18], [17, 19]],
    # reference homogeneous generators of the 7-generated leading ideal
    "reference_star_gens": [
        "x^10 - 2x^8y^2 - x^6y^4 + 4x^4y^6 - 2x^2y^8",
        "-x^9y^3 + x^7y^5 + 2x^5y^7 - 2x^3y^9",
        "-x^7y^8 + x^5y^10 + x^3y^12 - xy^14",
        "x^6y^9 - x^4y^11",
        "-x^5y^10 + x^3y^12",
        "x^2y^16",
        "y^19",
    ],
}

EX25 = {
    "c": [4, 5, 8, 11],
    "e": [0, 6, 9, 13],
    "schedule": [[12, 12], [6, 8], [9, 11]],
    "reference_star_gens": [
        "-xy^10", "x^2y^6 - y^8", "-x^3y^2 + xy^4", "x^4 - x^2y^2",
    ],
    "reference_local_gens": [
        "xy^6 - x^3y^2 + xy^4", "-2x^2y^4 + y^6 + x^4 - x^2y^2",
    ],
}

EX27 = {
    "c": [4, 5, 8, 11],
    "choices": {
        "6,9,13": {},   # same data as the EX25 case
        "6,10,12": {
            "reference_star_gens": [
                "x^4 - x^2y^2", "-x^3y^2 + xy^4", "x^2y^6", "y^11",
            ],
            "reference_local_gens": [
                "xy^5 - x^3y^2 + xy^4",
                "y^7 - x^2y^4 - x^2y^3 + x^4 - x^2y^2",
            ],
        },
        "7,9,12": {
            "reference_star_gens": [
                "x^4 - x^2y^2", "-x^3y^2", "-xy^7", "y^11",
            ],
            "reference_local_gens": [
                "xy^6 + xy^5 - x^3y^2",
                "-x^2y^4 + y^6 - x^2y^3 + x^4 - x^2y^2",
            ],
        },
    },
}
