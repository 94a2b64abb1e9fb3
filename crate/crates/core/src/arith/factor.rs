//! Integer factorization: trial division for small cofactors, Miller-Rabin
//! primality and a seeded Pollard-Brent splitter for the rest.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Trial division runs over every candidate below this bound.
const TRIAL_LIMIT: u64 = 1 << 16;

const MR_BASES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    sign: i8,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }
}

/// Factor a nonzero integer into sign and prime powers.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut acc = BTreeMap::new();
    factor_into(n.magnitude().clone(), &mut acc);
    Ok(Factorization {
        sign,
        factors: acc
            .into_iter()
            .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e))
            .collect(),
    })
}

/// Distinct primes dividing a nonzero integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factorize(n)?.factors.into_iter().map(|(p, _)| p).collect())
}

fn factor_into(mut n: BigUint, acc: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut tmp = BTreeMap::new();
        factor_u64(small, &mut tmp);
        for (p, e) in tmp {
            *acc.entry(BigUint::from(p)).or_insert(0) += e;
        }
        return;
    }
    // strip small factors by trial division
    let mut d = 2u64;
    while d < TRIAL_LIMIT {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut e = 0;
        while (&n % &dd).is_zero() {
            n /= &dd;
            e += 1;
        }
        if e > 0 {
            *acc.entry(dd).or_insert(0) += e;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    split_big(n, acc);
}

fn split_big(n: BigUint, acc: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut tmp = BTreeMap::new();
        factor_u64(small, &mut tmp);
        for (p, e) in tmp {
            *acc.entry(BigUint::from(p)).or_insert(0) += e;
        }
        return;
    }
    if is_probable_prime_big(&n) {
        *acc.entry(n).or_insert(0) += 1;
        return;
    }
    let root = n.sqrt();
    if &root * &root == n {
        split_big(root.clone(), acc);
        split_big(root, acc);
        return;
    }
    let d = brent_big(&n);
    let other = &n / &d;
    split_big(d, acc);
    split_big(other, acc);
}

fn factor_u64(mut n: u64, acc: &mut BTreeMap<u64, u32>) {
    if n <= 1 {
        return;
    }
    let mut d = 2u64;
    while d < TRIAL_LIMIT && d.saturating_mul(d) <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            *acc.entry(d).or_insert(0) += e;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    split_u64(n, acc);
}

fn split_u64(n: u64, acc: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *acc.entry(n).or_insert(0) += 1;
        return;
    }
    let d = brent_u64(n);
    split_u64(d, acc);
    split_u64(n / d, acc);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES[..12] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Strong-probable-prime test on 20 fixed bases; deterministic below 3.3e24.
pub fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality of a signed integer (negative values and 0, 1 are not prime).
pub fn is_prime(n: &BigInt) -> bool {
    n.sign() == Sign::Plus && is_probable_prime_big(n.magnitude())
}

fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15 ^ seed)
}

fn brent_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut rng = seeded_rng(n);
    loop {
        let c = rng.gen_range(1..n);
        let mut y = rng.gen_range(0..n);
        let step = |v: u64| (mul_mod(v, v, n) + c) % n;
        let block = 128u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let mut x = 0;
        let mut ys = 0;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..block.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += block;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

fn brent_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let seed = n.iter_u64_digits().next().unwrap_or(0);
    let mut rng = seeded_rng(seed);
    let one = BigUint::one();
    let bound = n.to_u64().unwrap_or(u64::MAX);
    loop {
        let c = BigUint::from(rng.gen_range(1..bound));
        let mut y = BigUint::from(rng.gen_range(0..bound)) % n;
        let step = |v: &BigUint| (v * v + &c) % n;
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        let block = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..block.min(r - k) {
                    y = step(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += block;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = step(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn one_has_empty_factorization() {
        let f = factorize(&BigInt::from(1)).unwrap();
        assert_eq!(f.sign(), 1);
        assert!(f.factors().is_empty());
    }

    #[test]
    fn negative_twelve() {
        let f = factorize(&BigInt::from(-12)).unwrap();
        assert_eq!(f.sign(), -1);
        assert_eq!(f.factors(), &[(BigInt::from(2), 2), (BigInt::from(3), 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(factorize(&BigInt::from(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn matches_trial_division_near_1e12() {
        let n = 1_000_000_000_039u64;
        let f = factorize(&BigInt::from(n)).unwrap();
        let expect: Vec<(BigInt, u32)> = trial_oracle(n)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
        assert_eq!(f.factors(), expect.as_slice());
        assert_eq!(f.product(), BigInt::from(n));
    }

    #[test]
    fn splits_semiprime_beyond_u64() {
        // two primes near 2^40
        let p = BigInt::from(1_099_511_627_791u64);
        let q = BigInt::from(1_099_511_627_803u64);
        assert!(is_prime(&p) && is_prime(&q));
        let n = &p * &q * BigInt::from(6);
        let f = factorize(&n).unwrap();
        assert_eq!(f.product(), n);
        assert!(f.primes().all(is_prime));
        assert_eq!(f.factors().len(), 4);
    }

    #[test]
    fn prime_power_beyond_u64() {
        let p = BigInt::from(4_294_967_311u64);
        let n = num_traits::pow(p.clone(), 3);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors(), &[(p, 3)]);
    }

    #[test]
    fn deterministic_primality_small_range() {
        for n in 0u64..2000 {
            let brute = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), brute, "n = {n}");
        }
        // strong pseudoprime to several small bases
        assert!(!is_prime_u64(3_215_031_751));
    }
}
