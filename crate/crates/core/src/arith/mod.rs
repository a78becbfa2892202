//! Exact arithmetic: rings, polynomials, quotients, factorization and
//! Hensel lifting.

pub mod crt;
pub mod factor_fp;
pub mod factor_q;
pub mod hensel;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod quotient;
pub mod ratfun;
pub mod ring;
