"""Hand-computed expected outputs for the annotation fixtures.

Combined text follows from the rule: sort cells by id_box_line, move
Page-header cells to the front and Page-footer cells to the back, join
same-category neighbours with a space and category changes with a newline.
"""

from docxeval.types import BoxPascal

GOLDEN_TEXT = {
    "g01_sort_same_category": "hello world",
    "g02_category_transition": "Intro\nBody",
    "g03_header_footer": "Ch.1\nBody\np.1",
    "g04_multi_header_footer": "H1 H2\nBody\nF1 F2",
    "g05_empty_cell_transition": "alpha\n\nbeta",
    "g06_empty_same_category": "alpha  beta",
    "g07_single_table": "Intro\na b c",
    "g08_two_tables": "T\nx y\nmid\nz w",
    "g09_all_categories": "Head\nTitle\nSec\nBody\nCap\nFoot\nE=mc2\nitem\npic\nt1 t2\nBot",
    "g10_unicode_nfc": "café à la carte",
}

GOLDEN_TABLES = {
    "g01_sort_same_category": [],
    "g02_category_transition": [],
    "g03_header_footer": [],
    "g04_multi_header_footer": [],
    "g05_empty_cell_transition": [],
    "g06_empty_same_category": [],
    "g07_single_table": [(("a", "b", "c"), BoxPascal(10, 20, 14, 22))],
    "g08_two_tables": [
        (("x", "y"), BoxPascal(0, 0, 10, 5)),
        (("z", "w"), BoxPascal(5, 50, 25, 60)),
    ],
    "g09_all_categories": [(("t1", "t2"), BoxPascal(1, 2, 4, 6))],
    "g10_unicode_nfc": [],
}
