//! Canonical moduli for the tower GF(2^m), 1 <= m <= 16.
//!
//! Entry `m` is the Conway polynomial of degree `m` over GF(2), encoded with
//! bit `i` holding the coefficient of `x^i`. Each modulus is primitive, and for
//! every `d | m` the image of the degree-`d` generator under
//! `x -> x^((2^m - 1)/(2^d - 1))` is a root of the degree-`d` modulus, which is
//! what makes the subfield embeddings compose.
//!
//! | m  | modulus                                   | hex     |
//! |----|-------------------------------------------|---------|
//! | 1  | x + 1                                     | 0x3     |
//! | 2  | x^2 + x + 1                               | 0x7     |
//! | 3  | x^3 + x + 1                               | 0xb     |
//! | 4  | x^4 + x + 1                               | 0x13    |
//! | 5  | x^5 + x^2 + 1                             | 0x25    |
//! | 6  | x^6 + x^4 + x^3 + x + 1                   | 0x5b    |
//! | 7  | x^7 + x + 1                               | 0x83    |
//! | 8  | x^8 + x^4 + x^3 + x^2 + 1                 | 0x11d   |
//! | 9  | x^9 + x^4 + 1                             | 0x211   |
//! | 10 | x^10 + x^6 + x^5 + x^3 + x^2 + x + 1      | 0x46f   |
//! | 11 | x^11 + x^2 + 1                            | 0x805   |
//! | 12 | x^12 + x^7 + x^6 + x^5 + x^3 + x + 1      | 0x10eb  |
//! | 13 | x^13 + x^4 + x^3 + x + 1                  | 0x201b  |
//! | 14 | x^14 + x^7 + x^5 + x^3 + 1                | 0x40a9  |
//! | 15 | x^15 + x^5 + x^4 + x^2 + 1                | 0x8035  |
//! | 16 | x^16 + x^5 + x^3 + x^2 + 1                | 0x1002d |

/// Largest extension degree with a tabulated modulus.
pub const MAX_DEGREE: u32 = 16;

/// `CONWAY_MODULI[m]` is the modulus of GF(2^m); index 0 is unused.
pub const CONWAY_MODULI: [u32; 17] = [
    0x0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x5b, 0x83, 0x11d, 0x211, 0x46f, 0x805, 0x10eb, 0x201b,
    0x40a9, 0x8035, 0x1002d,
];
