//! Exact integer and rational helpers shared by the lattice and height code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

/// Reduces `r` into `[0, m)` for a positive integer modulus `m`.
pub fn reduce_mod(r: &Rat, m: i64) -> Rat {
    let m = rat_int(m);
    let q = (r / &m).floor();
    r - q * m
}

pub fn mod1(r: &Rat) -> Rat {
    reduce_mod(r, 1)
}

pub fn mod2(r: &Rat) -> Rat {
    reduce_mod(r, 2)
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

pub fn is_even_integer(r: &Rat) -> bool {
    r.is_integer() && r.to_integer().is_even()
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn to_i64(v: &Int) -> Option<i64> {
    v.to_i64()
}

/// Least common multiple of the denominators of a rational vector.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, r| acc.lcm(r.denom()))
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_lands_in_range() {
        assert_eq!(mod2(&rat(-1, 2)), rat(3, 2));
        assert_eq!(mod2(&rat(9, 2)), rat(1, 2));
        assert_eq!(mod1(&rat(-3, 4)), rat(1, 4));
        assert_eq!(mod2(&rat_int(4)), rat_int(0));
    }

    #[test]
    fn rational_text_roundtrip() {
        for r in [rat(3, 2), rat(-7, 12), rat_int(5), rat_int(0)] {
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&int(64)), Some(int(8)));
        assert_eq!(exact_sqrt(&int(8)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }
}
