//! Exact rational arithmetic, places of Q, p-adic valuations and the
//! prime-to-S part of an integer.

mod factor;
mod logexpr;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use factor::{factorize, is_prime, is_prime_u64, prime_divisors, Factorization};
pub use logexpr::LogExpr;

pub type Rat = BigRational;

/// A place of Q: the real absolute value or a p-adic one.
///
/// Ordering puts the archimedean place first, then finite places by prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Archimedean,
    Finite(BigInt),
}

impl Place {
    /// Finite place at `p`, rejecting non-primes.
    pub fn finite(p: impl Into<BigInt>) -> Result<Place> {
        let p = p.into();
        if is_prime(&p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            Place::Archimedean => None,
            Place::Finite(p) => Some(p),
        }
    }

    /// Parses `inf` / `oo` / `archimedean` or a prime.
    pub fn parse(s: &str) -> Result<Place> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "oo" | "infinity" | "archimedean" | "∞" => Ok(Place::Archimedean),
            _ => {
                let p: BigInt = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad place `{t}`")))?;
                Place::finite(p)
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An extended non-negative value: a p-adic count, an archimedean real, or +∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtValue {
    Count(u64),
    Real(f64),
    Infinite,
}

impl ExtValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinite)
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            ExtValue::Count(c) => c as f64,
            ExtValue::Real(r) => r,
            ExtValue::Infinite => f64::INFINITY,
        }
    }
}

/// Multiplicity of `p` in a nonzero integer.
pub fn ord_int(n: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val(r: &Rat, p: &BigInt) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(ord_int(r.numer(), p) as i64 - ord_int(r.denom(), p) as i64)
}

/// `max(ν(r), 0)`: a multiplicity at finite places, `max(-log|r|, 0)` at the
/// archimedean place; `+∞` for `r = 0`.
pub fn val_plus(r: &Rat, place: &Place) -> ExtValue {
    if r.is_zero() {
        return ExtValue::Infinite;
    }
    match place {
        Place::Finite(p) => {
            ExtValue::Count(ord_int(r.numer(), p).saturating_sub(ord_int(r.denom(), p)))
        }
        Place::Archimedean => ExtValue::Real((-ln_abs(r)).max(0.0)),
    }
}

/// Prime-to-S part of a nonzero integer: |n| with every prime of `s` removed.
pub fn s_part(n: &BigInt, s: &BTreeSet<BigInt>) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = n.abs();
    for p in s {
        if p <= &BigInt::one() {
            continue;
        }
        while (&out % p).is_zero() {
            out /= p;
        }
    }
    Ok(out)
}

/// The archimedean place followed by every prime at which some value has
/// nonzero valuation, ascending.
pub fn relevant_places(values: &[Rat]) -> Result<Vec<Place>> {
    let mut primes = BTreeSet::new();
    for v in values {
        if v.is_zero() {
            return Err(Error::ZeroInput);
        }
        collect_primes(v, &mut primes);
    }
    let mut out = vec![Place::Archimedean];
    out.extend(primes.into_iter().map(Place::Finite));
    Ok(out)
}

/// Adds the primes of numerator and denominator of a nonzero rational.
pub(crate) fn collect_primes(v: &Rat, acc: &mut BTreeSet<BigInt>) {
    for part in [v.numer(), v.denom()] {
        if !part.abs().is_one() {
            acc.extend(prime_divisors(part).expect("nonzero"));
        }
    }
}

/// Natural log of |n| for a nonzero big integer, in double precision.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 1000 {
        if let Some(f) = mag.to_f64() {
            return f.ln();
        }
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_f64().expect("64 bits fit");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of |r| for a nonzero rational.
pub fn ln_abs(r: &Rat) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// |r|_p = p^{-ν_p(r)} as an exact rational; 0 for r = 0.
pub fn abs_p(r: &Rat, p: &BigInt) -> Rat {
    if r.is_zero() {
        return Rat::zero();
    }
    let v = val(r, p).expect("nonzero");
    pow_rat(&Rat::from_integer(p.clone()), -v)
}

/// Integer power of a rational, negative exponents allowed (base nonzero then).
pub fn pow_rat(base: &Rat, e: i64) -> Rat {
    let mag = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// Compare `a^(1/qa)` with `b^(1/qb)` for non-negative rationals exactly.
pub fn cmp_roots(a: &Rat, qa: u64, b: &Rat, qb: u64) -> Ordering {
    let lhs = num_traits::pow(a.clone(), qb as usize);
    let rhs = num_traits::pow(b.clone(), qa as usize);
    lhs.cmp(&rhs)
}

/// Render a rational as `p/q`, or `p` when integral.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `-p`, `p/q` (whitespace tolerated).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let valid = |part: &str| {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
    };
    match t.split_once('/') {
        Some((n, d)) => {
            if !valid(n) || !d.chars().all(|c| c.is_ascii_digit()) || d.is_empty() {
                return Err(bad());
            }
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            if !valid(&t) {
                return Err(bad());
            }
            Ok(Rat::from_integer(t.parse().map_err(|_| bad())?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn set(ps: &[i64]) -> BTreeSet<BigInt> {
        ps.iter().map(|&p| BigInt::from(p)).collect()
    }

    #[test]
    fn valuations() {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        assert_eq!(val(&q(8, 3), &two), Ok(3));
        assert_eq!(val(&q(8, 3), &three), Ok(-1));
        assert_eq!(val(&q(48, 1), &two), Ok(4));
        assert_eq!(val(&q(0, 1), &two), Err(Error::ZeroInput));
    }

    #[test]
    fn val_plus_cases() {
        let p2 = Place::finite(2).unwrap();
        assert_eq!(val_plus(&q(8, 3), &p2), ExtValue::Count(3));
        assert_eq!(val_plus(&q(8, 3), &Place::Archimedean), ExtValue::Real(0.0));
        match val_plus(&q(1, 5), &Place::Archimedean) {
            ExtValue::Real(r) => assert!((r - 5f64.ln()).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(val_plus(&q(3, 8), &p2), ExtValue::Count(0));
        assert!(val_plus(&q(0, 1), &p2).is_infinite());
    }

    #[test]
    fn s_part_cases() {
        assert_eq!(s_part(&720.into(), &set(&[2, 3])), Ok(BigInt::from(5)));
        assert_eq!(s_part(&7.into(), &set(&[2, 3])), Ok(BigInt::from(7)));
        assert_eq!(s_part(&(-8).into(), &set(&[2])), Ok(BigInt::from(1)));
        assert_eq!(s_part(&0.into(), &set(&[2])), Err(Error::ZeroInput));
    }

    #[test]
    fn relevant_place_lists() {
        assert_eq!(
            relevant_places(&[q(1, 1), q(1, 1)]).unwrap(),
            vec![Place::Archimedean]
        );
        let expect = vec![
            Place::Archimedean,
            Place::Finite(2.into()),
            Place::Finite(3.into()),
        ];
        assert_eq!(relevant_places(&[q(3, 1), q(4, 1)]).unwrap(), expect);
        assert_eq!(relevant_places(&[q(8, 3)]).unwrap(), expect);
        assert_eq!(relevant_places(&[q(0, 1)]), Err(Error::ZeroInput));
    }

    #[test]
    fn place_parsing() {
        assert_eq!(Place::parse("inf"), Ok(Place::Archimedean));
        assert_eq!(Place::parse(" 7 "), Ok(Place::Finite(7.into())));
        assert!(matches!(Place::parse("9"), Err(Error::NotPrime(_))));
        assert!(matches!(Place::parse("x"), Err(Error::Parse(_))));
        assert!(Place::Archimedean < Place::Finite(2.into()));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rat(" 42 ").unwrap(), q(42, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("abc").is_err());
        assert_eq!(rat_to_string(&q(6, 4)), "3/2");
        assert_eq!(rat_to_string(&q(-4, 2)), "-2");
    }

    #[test]
    fn ln_of_huge_integer() {
        let n = num_traits::pow(BigInt::from(10), 400);
        assert!((ln_bigint(&n) - 400.0 * 10f64.ln()).abs() < 1e-9);
    }

    fn nonzero_rat() -> impl Strategy<Value = Rat> {
        (1i64..5000, 1i64..5000, any::<bool>())
            .prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
    }

    proptest! {
        #[test]
        fn val_is_a_homomorphism(a in nonzero_rat(), b in nonzero_rat(), pi in 0usize..5) {
            let p = BigInt::from([2, 3, 5, 7, 11][pi]);
            prop_assert_eq!(val(&(&a * &b), &p).unwrap(), val(&a, &p).unwrap() + val(&b, &p).unwrap());
        }

        #[test]
        fn s_part_times_s_only_part(n in 1i64..1_000_000, neg in any::<bool>()) {
            let n = BigInt::from(if neg { -n } else { n });
            let s = set(&[2, 5, 7]);
            let prime_to_s = s_part(&n, &s).unwrap();
            prop_assert!((n.abs() % &prime_to_s).is_zero());
            let s_only = n.abs() / &prime_to_s;
            prop_assert_eq!(&prime_to_s * &s_only, n.abs());
            for p in &s {
                prop_assert!(!(&prime_to_s % p).is_zero());
            }
        }

        #[test]
        fn product_formula(r in nonzero_rat()) {
            // additive form: sum over places of log|r|_v is 0
            let places = relevant_places(std::slice::from_ref(&r)).unwrap();
            let mut total = 0.0;
            let mut exact = LogExpr::zero();
            for place in &places {
                match place {
                    Place::Archimedean => {
                        total += ln_abs(&r);
                        exact = exact.add(&LogExpr::ln_rat(&r.abs()));
                    }
                    Place::Finite(p) => {
                        let v = val(&r, p).unwrap();
                        total -= v as f64 * ln_bigint(p);
                        exact = exact.add(&LogExpr::prime_term(p.clone(), Rat::from_integer((-v).into())));
                    }
                }
            }
            prop_assert!(total.abs() < 1e-12);
            prop_assert!(exact.is_zero());
        }
    }
}
