//! Exact rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// `r^n` for an integer exponent; `None` when `r = 0` and `n < 0`.
pub fn pow_int(r: &Rat, n: i64) -> Option<Rat> {
    if n < 0 {
        if r.is_zero() {
            return None;
        }
        return pow_int(&r.recip(), -n);
    }
    let mut acc = Rat::one();
    let mut base = r.clone();
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    Some(acc)
}

fn exact_int_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if n.is_negative() {
        if q % 2 == 0 {
            return None;
        }
        return exact_int_root(&-n, q).map(|r| -r);
    }
    let r = n.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// `r^(p/q)` when the result is rational.
pub fn pow_rat_exact(r: &Rat, e: &Rat) -> Option<Rat> {
    if is_integer(e) {
        return pow_int(r, e.to_integer().to_i64()?);
    }
    let q = e.denom().to_u32()?;
    let p = e.numer().to_i64()?;
    let num = exact_int_root(r.numer(), q)?;
    let den = exact_int_root(r.denom(), q)?;
    pow_int(&Rat::new(num, den), p)
}

pub fn floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Formats a rational in the `p/q` form used by the text grammar and JSON dumps.
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
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive_integer(v: &[Rat]) -> Vec<Rat> {
    let l = lcm_denoms(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|r| (r * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g * &sign))
        .collect()
}
