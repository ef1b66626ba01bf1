# Default moduli for GF(p^m), coefficients lowest degree first.
#
# Conway polynomials for the small fields used day to day. Any (p, m) that is
# missing here gets the first primitive polynomial in lexicographic order,
# see core.gf_core.default_field.

DEFAULT_MODULI = {
    # characteristic 2
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),

    # characteristic 3
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),

    # characteristic 5
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),

    # characteristic 7
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
}

# Fields above 2^16 elements are refused: irreducibility and the log tables
# are computed exhaustively.
MAX_FIELD_SIZE = 2 ** 16
