//! Reference matrix sections.

/// `<x | x^2/(1-x)>`, rows 0..=12, columns 0..=3.
pub const COLUMN_GEOM2: [[i64; 4]; 13] = [
    [0, 0, 0, 0],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 1, 0, 0],
    [0, 1, 1, 0],
    [0, 1, 0, 0],
    [0, 1, 2, 0],
    [0, 1, 0, 0],
    [0, 1, 2, 1],
    [0, 1, 1, 0],
    [0, 1, 2, 0],
    [0, 1, 0, 0],
    [0, 1, 4, 3],
];

/// `<x | a>` with generic `a_2, a_3, ...`, rows 0..=16, columns 0..=4.
pub const COLUMN_SYMBOLIC: [[&str; 5]; 17] = [
    ["0", "0", "0", "0", "0"],
    ["1", "0", "0", "0", "0"],
    ["0", "a2", "0", "0", "0"],
    ["0", "a3", "0", "0", "0"],
    ["0", "a4", "a2^2", "0", "0"],
    ["0", "a5", "0", "0", "0"],
    ["0", "a6", "2*a2*a3", "0", "0"],
    ["0", "a7", "0", "0", "0"],
    ["0", "a8", "2*a2*a4", "a2^3", "0"],
    ["0", "a9", "a3^2", "0", "0"],
    ["0", "a10", "2*a2*a5", "0", "0"],
    ["0", "a11", "0", "0", "0"],
    ["0", "a12", "2*a2*a6 + 2*a4*a3", "3*a2^2*a3", "0"],
    ["0", "a13", "0", "0", "0"],
    ["0", "a14", "2*a2*a7", "0", "0"],
    ["0", "a15", "2*a3*a5", "0", "0"],
    ["0", "a16", "2*a2*a8 + a4^2", "3*a2^2*a4", "a2^4"],
];

/// Ordinary Riordan array `(1, a)` with generic `a_1, a_2, ...`, rows
/// 0..=6, columns 0..=5.
pub const RIORDAN_SYMBOLIC: [[&str; 6]; 7] = [
    ["1", "0", "0", "0", "0", "0"],
    ["0", "a1", "0", "0", "0", "0"],
    ["0", "a2", "a1^2", "0", "0", "0"],
    ["0", "a3", "2*a1*a2", "a1^3", "0", "0"],
    ["0", "a4", "2*a1*a3 + a2^2", "3*a1^2*a2", "a1^4", "0"],
    ["0", "a5", "2*a1*a4 + 2*a2*a3", "3*a1^2*a3 + 3*a1*a2^2", "4*a1^3*a2", "a1^5"],
    ["0", "a6", "2*a1*a5 + 2*a2*a4 + a3^2", "3*a1^2*a4 + 6*a1*a2*a3 + a2^3", "4*a1^3*a3 + 6*a1^2*a2^2", "5*a1^4*a2"],
];
