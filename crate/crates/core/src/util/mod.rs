//! Arithmetic helpers shared by the number-theoretic modules.

pub mod hp;
pub mod intmat;
pub mod poly;
pub mod primes;
pub mod roots;
