"""Embedded 2x3 class table: the 60 canonical arrangements with cycle labels.

Shipped as versioned data (not regenerated at runtime) so a test failure
distinguishes an enumeration bug from a data transcription bug.  ``word``
is the row-major flattening of the canonical arrangement with letter 'a'
for the largest entry through 'f' for the smallest; ``label`` gives the
permutation of the fiducial arrangement [[a,b,c],[d,e,f]] in cycle
notation (chosen up to row and column swaps) that produces it.
"""
from __future__ import annotations

TABLE_VERSION = 1

# (index, word, cycle label)
ENTRIES: tuple[tuple[int, str, str], ...] = (
    (1, "abcdef", "()"),
    (2, "abcdfe", "(56)"),
    (3, "abcedf", "(45)"),
    (4, "abcefd", "(465)"),
    (5, "abcfde", "(456)"),
    (6, "abcfed", "(46)"),
    (7, "abdcef", "(34)"),
    (8, "abdcfe", "(34)(56)"),
    (9, "abdecf", "(354)"),
    (10, "abdefc", "(3654)"),
    (11, "abdfce", "(3564)"),
    (12, "abdfec", "(364)"),
    (13, "abecdf", "(345)"),
    (14, "abecfd", "(3465)"),
    (15, "abedcf", "(35)"),
    (16, "abedfc", "(365)"),
    (17, "abefcd", "(35)(46)"),
    (18, "abefdc", "(3645)"),
    (19, "abfcde", "(3456)"),
    (20, "abfced", "(346)"),
    (21, "abfdce", "(356)"),
    (22, "abfdec", "(36)"),
    (23, "abfecd", "(3546)"),
    (24, "abfedc", "(36)(45)"),
    (25, "acdbef", "(243)"),
    (26, "acdbfe", "(243)(56)"),
    (27, "acdebf", "(2543)"),
    (28, "acdefb", "(26543)"),
    (29, "acdfbe", "(25643)"),
    (30, "acdfeb", "(2643)"),
    (31, "acebdf", "(2453)"),
    (32, "acebfd", "(24653)"),
    (33, "acedbf", "(253)"),
    (34, "acedfb", "(2653)"),
    (35, "acefbd", "(253)(46)"),
    (36, "acefdb", "(26453)"),
    (37, "acfbde", "(24563)"),
    (38, "acfbed", "(2463)"),
    (39, "acfdbe", "(2563)"),
    (40, "acfdeb", "(263)"),
    (41, "acfebd", "(25463)"),
    (42, "acfedb", "(263)(45)"),
    (43, "adebcf", "(24)(35)"),
    (44, "adebfc", "(24)(365)"),
    (45, "adecbf", "(2534)"),
    (46, "adecfb", "(26534)"),
    (47, "adefbc", "(25364)"),
    (48, "adefcb", "(264)(35)"),
    (49, "adfbce", "(24)(356)"),
    (50, "adfbec", "(24)(36)"),
    (51, "adfcbe", "(25634)"),
    (52, "adfceb", "(2634)"),
    (53, "adfebc", "(254)(36)"),
    (54, "adfecb", "(26354)"),
    (55, "aefbcd", "(24635)"),
    (56, "aefbdc", "(245)(36)"),
    (57, "aefcbd", "(25)(346)"),
    (58, "aefcdb", "(26345)"),
    (59, "aefdbc", "(25)(36)"),
    (60, "aefdcb", "(2635)"),
)
