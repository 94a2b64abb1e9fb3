use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use wph_core::arith::{LogExpr, Place, Rat};
use wph_core::gcdops::{hwgcd_subscheme, Subscheme};
use wph_core::localheights::{global_sum, DivisorSpec, Metric};
use wph_core::points::WPoint;
use wph_core::scan::{vojta_scan, Domain, ScanConfig};
use wph_core::weights::Weights;
use wph_core::wpoly::WPolynomial;

fn linear(coeffs: &[i64], w: &Weights) -> Option<WPolynomial> {
    let terms = coeffs.iter().enumerate().map(|(i, &c)| {
        let mut e = vec![0u32; coeffs.len()];
        e[i] = 1;
        (Rat::from_integer(c.into()), e)
    });
    let f = WPolynomial::new(terms, w.clone()).ok()?;
    (!f.is_zero()).then_some(f)
}

proptest! {
    /// With unit weights and linear generators, the finite part of the
    /// subscheme height sum is the log gcd of the generator values.
    #[test]
    fn finite_local_heights_sum_to_subscheme_gcd(
        c1 in prop::collection::vec(-5i64..=5, 3),
        c2 in prop::collection::vec(-5i64..=5, 3),
        xs in prop::collection::vec(-40i64..=40, 3),
    ) {
        let w = Weights::ones(3);
        let (Some(f1), Some(f2)) = (linear(&c1, &w), linear(&c2, &w)) else { return Ok(()) };
        let Ok(x) = WPoint::from_ints(&xs, &w) else { return Ok(()) };
        let x = x.normalize();
        let y = Subscheme::new(vec![f1, f2], None).unwrap();
        let Ok(gcd) = hwgcd_subscheme(&x, &y) else { return Ok(()) };
        let g = global_sum(&x, &DivisorSpec::SubschemeMin(y), Metric::Paper).unwrap();
        let finite = g
            .per_place
            .iter()
            .filter(|(p, _)| *p != Place::Archimedean)
            .fold(g.other_places.ratio.clone(), |a, (_, z)| a * &z.ratio);
        prop_assert_eq!(LogExpr::ln_rat(&finite), gcd);
    }
}

#[test]
fn scan_rows_agree_with_subscheme_gcd() {
    let w = Weights::ones(3);
    let y = Subscheme::parse("x1 - x0; x2 - x0", &w, None).unwrap();
    let config = ScanConfig {
        weights: w,
        generators: y.clone(),
        epsilon: Rat::one(),
        delta: Rat::zero(),
        s_primes: [BigInt::from(2)].into_iter().collect(),
        domain: Domain::Box(vec![8, 8, 8]),
        codim: None,
        metric: Metric::Paper,
    };
    let report = vojta_scan(&config).unwrap();
    assert!(!report.rows.is_empty());
    for r in &report.rows {
        let gcd = hwgcd_subscheme(&r.point, &y).unwrap();
        assert_eq!(gcd, LogExpr::ln_int(&r.lhs), "{}", r.point);
    }
}
