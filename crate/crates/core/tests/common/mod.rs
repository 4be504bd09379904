#![allow(dead_code)]

use k3cm::counting::EulerFactor;
use num_bigint::BigInt;

/// Table prime for case `i`.
pub fn table_prime(i: u32) -> u64 {
    [17, 13, 37, 29][i as usize - 1]
}

/// Weight-2 surface characters: conductor norm and factor at the table prime.
pub fn weight_two_row(i: u32) -> (u64, [i64; 7]) {
    match i {
        1 => (64, [1, -6, 15 * 17, 12 * 17 * 17, 15 * 17i64.pow(3), -6 * 17i64.pow(4), 17i64.pow(6)]),
        2 => (3136, [1, -2, 19 * 13, 4 * 13 * 13, 19 * 13i64.pow(3), -2 * 13i64.pow(4), 13i64.pow(6)]),
        3 => (23104, [1, 14, -5 * 37, -28 * 37 * 37, -5 * 37i64.pow(3), 14 * 37i64.pow(4), 37i64.pow(6)]),
        4 => (61504, [1, -38, -9 * 29, 52 * 29 * 29, -9 * 29i64.pow(3), -38 * 29i64.pow(4), 29i64.pow(6)]),
        _ => unreachable!(),
    }
}

/// Weight-1 curve characters.
pub fn curve_row(i: u32) -> (u64, [i64; 7]) {
    match i {
        1 => (4096, [1, -6, 15, -52, 15 * 17, -6 * 17 * 17, 17i64.pow(3)]),
        2 => (25088, [1, 4, 7, 40, 7 * 13, 4 * 13 * 13, 13i64.pow(3)]),
        3 => (184832, [1, 4, 15, -152, 15 * 37, 4 * 37 * 37, 37i64.pow(3)]),
        4 => (3936256, [1, 4, 51, 216, 51 * 29, 4 * 29 * 29, 29i64.pow(3)]),
        _ => unreachable!(),
    }
}

/// Conductor-one weight-2 characters.
pub fn psi_prime_row(i: u32) -> (u64, [i64; 7]) {
    match i {
        1 => (1, [1, 42, 1023, 1132 * 17, 1023 * 17 * 17, 42 * 17i64.pow(4), 17i64.pow(6)]),
        2 => (1, [1, 34, 631, 652 * 13, 631 * 13 * 13, 34 * 13i64.pow(4), 13i64.pow(6)]),
        3 => (1, [1, 82, 4423, 5452 * 37, 4423 * 37 * 37, 82 * 37i64.pow(4), 37i64.pow(6)]),
        4 => (1, [1, 74, 3067, 3268 * 29, 3067 * 29 * 29, 74 * 29i64.pow(4), 29i64.pow(6)]),
        _ => unreachable!(),
    }
}

pub fn factor(p: u64, weight: u32, c: &[i64]) -> EulerFactor {
    EulerFactor::new(p, weight, c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn strings(c: &[i64]) -> Vec<String> {
    c.iter().map(|x| x.to_string()).collect()
}
