//! Singular locus of weighted projective space: the gcd test and the
//! decomposition into the strata `S_w(p)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{is_prime_u64, Place};
use crate::error::{Error, Result};
use crate::points::WPoint;
use crate::weights::{gcd_all, Weights};

/// `gcd(q_i : x_i ≠ 0) > 1`.
pub fn is_singular(x: &WPoint) -> bool {
    support_gcd(x) > 1
}

/// gcd of the weights on the support of `x`.
pub fn support_gcd(x: &WPoint) -> u64 {
    gcd_all(x.support().into_iter().map(|i| x.weights().get(i)))
}

/// `S_w(p)` for a prime `p | m`: index set `J(p) = {i : p | q_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularComponent {
    pub prime: u64,
    pub indices: Vec<usize>,
    /// `#J(p) - 1`
    pub dimension: usize,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn j_set(w: &Weights, p: u64) -> Vec<usize> {
    (0..w.len()).filter(|&i| w.get(i) % p == 0).collect()
}

/// Components of the singular locus, one per prime `p | m`, keeping only
/// the maximal index sets. Primes with identical `J(p)` are all listed.
pub fn singular_components(w: &Weights) -> Vec<SingularComponent> {
    let all: Vec<(u64, Vec<usize>)> = prime_factors(w.m())
        .into_iter()
        .map(|p| (p, j_set(w, p)))
        .collect();
    all.iter()
        .filter(|(_, j)| {
            !all.iter()
                .any(|(_, k)| k.len() > j.len() && j.iter().all(|i| k.contains(i)))
        })
        .map(|(p, j)| SingularComponent {
            prime: *p,
            indices: j.clone(),
            dimension: j.len() - 1,
        })
        .collect()
}

/// `x ∈ S_w(p)`, read as: the support of `x` lies in `J(p)`.
pub fn component_membership(x: &WPoint, p: u64) -> Result<bool> {
    if p < 2 || !is_prime_u64(p) || x.weights().m() % p != 0 {
        return Err(Error::PrimeNotDividingM(p));
    }
    let w = x.weights();
    Ok(x.support().into_iter().all(|i| w.get(i) % p == 0))
}

/// Membership in some `S_w(p)`.
pub fn in_some_component(x: &WPoint) -> bool {
    prime_factors(x.weights().m())
        .into_iter()
        .any(|p| component_membership(x, p).unwrap_or(false))
}

/// Well-formedness of a degree-`d` hypersurface: every `n`-subset of the
/// weights has gcd 1, and every `(n-1)`-subset has gcd dividing `d`.
/// The second condition is vacuous when there are fewer than three weights.
pub fn hypersurface_well_formed(w: &Weights, d: u64) -> bool {
    let n = w.len();
    let without = |skip: &[usize]| gcd_all((0..n).filter(|i| !skip.contains(i)).map(|i| w.get(i)));
    let first = n == 1 || (0..n).all(|i| without(&[i]) == 1);
    let second = n < 3 || (0..n).all(|i| ((i + 1)..n).all(|j| d % without(&[i, j]) == 0));
    first && second
}

/// Per-prime valuation data for a point: `(p, ord_p x_i)` with `None` for
/// zero coordinates.
pub fn valuation_table(x: &WPoint, places: &[Place]) -> Vec<(BigInt, Vec<Option<i64>>)> {
    places
        .iter()
        .filter_map(|pl| pl.prime())
        .map(|p| {
            let row = x
                .coords()
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        None
                    } else {
                        Some(crate::arith::val(c, p).expect("nonzero"))
                    }
                })
                .collect();
            (p.clone(), row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: &[u64]) -> Weights {
        Weights::new(q.to_vec()).unwrap()
    }

    fn pt(c: &[i64], q: &[u64]) -> WPoint {
        WPoint::from_ints(c, &w(q)).unwrap()
    }

    #[test]
    fn gcd_test_examples() {
        assert!(is_singular(&pt(&[0, 1, 0, 0], &[1, 2, 3, 5])));
        assert!(!is_singular(&pt(&[1, 0, 0, 0], &[1, 2, 3, 5])));
        assert!(!is_singular(&pt(&[0, 1, 1, 0], &[1, 2, 3, 5])));
    }

    #[test]
    fn components_examples() {
        let c = singular_components(&w(&[1, 2, 3, 5]));
        let got: Vec<(u64, Vec<usize>)> = c.iter().map(|c| (c.prime, c.indices.clone())).collect();
        assert_eq!(got, vec![(2, vec![1]), (3, vec![2]), (5, vec![3])]);
        assert!(c.iter().all(|c| c.dimension == 0));
        assert!(singular_components(&w(&[1, 1, 1])).is_empty());
        let c = singular_components(&w(&[1, 2, 2, 3]));
        assert_eq!(c[0].indices, vec![1, 2]);
        assert_eq!(c[0].dimension, 1);
        assert_eq!((c[1].prime, c[1].indices.clone()), (3, vec![3]));
        // J(3) = {0} is contained in J(2) = {0, 1}
        let c = singular_components(&w(&[6, 2, 1]));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].prime, 2);
    }

    #[test]
    fn membership_examples() {
        assert!(component_membership(&pt(&[0, 1, 0, 0], &[1, 2, 3, 5]), 2).unwrap());
        assert!(component_membership(&pt(&[0, 1, 1, 0], &[1, 2, 2, 3]), 2).unwrap());
        assert!(!component_membership(&pt(&[1, 1, 1, 1], &[1, 2, 3, 5]), 3).unwrap());
        assert_eq!(
            component_membership(&pt(&[1, 1], &[1, 2]), 3),
            Err(Error::PrimeNotDividingM(3))
        );
        assert_eq!(
            component_membership(&pt(&[1, 1], &[1, 4]), 4),
            Err(Error::PrimeNotDividingM(4))
        );
    }

    #[test]
    fn gcd_test_equals_union_of_strata() {
        for n in 1..=4usize {
            let mut qs = vec![1u64; n];
            loop {
                let weights = w(&qs);
                for mask in 1u32..(1 << n) {
                    let c: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
                    let x = WPoint::from_ints(&c, &weights).unwrap();
                    assert_eq!(is_singular(&x), in_some_component(&x), "{weights} {x}");
                }
                let mut k = 0;
                while k < n && qs[k] == 6 {
                    qs[k] = 1;
                    k += 1;
                }
                if k == n {
                    break;
                }
                qs[k] += 1;
            }
        }
    }

    #[test]
    fn coprime_weights_singular_at_heavy_vertices() {
        let weights = w(&[1, 2, 3, 5]);
        for i in 0..4 {
            let mut c = vec![0i64; 4];
            c[i] = 1;
            let x = WPoint::from_ints(&c, &weights).unwrap();
            assert_eq!(is_singular(&x), weights.get(i) > 1);
        }
        let x = pt(&[0, 1, 1, 1], &[1, 2, 3, 5]);
        assert!(!is_singular(&x));
    }

    #[test]
    fn hypersurface_conditions() {
        assert!(hypersurface_well_formed(&w(&[1, 1, 1]), 3));
        assert!(!hypersurface_well_formed(&w(&[2, 2, 1]), 3));
        // (1,2,3,5): every pair leaves gcd 1
        assert!(hypersurface_well_formed(&w(&[1, 2, 3, 5]), 7));
        // (1,1,2,2): dropping x0,x1 leaves gcd 2, so d must be even
        assert!(hypersurface_well_formed(&w(&[1, 1, 2, 2]), 4));
        assert!(!hypersurface_well_formed(&w(&[1, 1, 2, 2]), 3));
        assert!(hypersurface_well_formed(&w(&[1, 1]), 5));
    }
}
