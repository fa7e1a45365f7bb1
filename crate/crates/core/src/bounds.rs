//! Closed-form colour bounds for avoiding fair splittings of cubes.

use crate::error::{Error, Result};

fn pow(base: i128, exp: u32, what: &'static str) -> Result<i128> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Number of colours sufficient for a colouring of `R^d` in which no cube has
/// a fair splitting of size at most `t`:
/// `(t+4)^d - (t+3)^d + (t+2)^d - 2^d + d(t+2) + 3`.
pub fn f_bound(d: u32, t: u32) -> Result<i128> {
    const WHAT: &str = "f_bound";
    let t = t as i128;
    let terms = [
        pow(t + 4, d, WHAT)?,
        -pow(t + 3, d, WHAT)?,
        pow(t + 2, d, WHAT)?,
        -pow(2, d, WHAT)?,
        (d as i128) * (t + 2),
        3,
    ];
    terms
        .iter()
        .try_fold(0i128, |acc, &x| acc.checked_add(x))
        .ok_or(Error::Overflow(WHAT))
}

/// `sum_{i=1}^{d} C(d,i) (t+2)^i (2^(d-i) - 1)`, summed term by term.
pub fn d_value(d: u32, t: u32) -> Result<i128> {
    const WHAT: &str = "d_value";
    let mut sum = 0i128;
    for i in 1..=d {
        let term = binomial(d, i)
            .checked_mul(pow(t as i128 + 2, i, WHAT)?)
            .and_then(|x| x.checked_mul(pow(2, d - i, WHAT).ok()? - 1))
            .ok_or(Error::Overflow(WHAT))?;
        sum = sum.checked_add(term).ok_or(Error::Overflow(WHAT))?;
    }
    Ok(sum)
}

/// `(t+4)^d + 1 - (t+3)^d - 2^d`; equal to [`d_value`].
pub fn d_closed_form(d: u32, t: u32) -> Result<i128> {
    const WHAT: &str = "d_closed_form";
    let t = t as i128;
    let a = pow(t + 4, d, WHAT)?;
    let b = pow(t + 3, d, WHAT)?;
    let c = pow(2, d, WHAT)?;
    Ok(a + 1 - b - c)
}
