//! Randomised invariants of the dimension and typicality computations.

use num_traits::{One, Zero};
use proptest::prelude::*;

use superweyl::enumerate::conjugate_even_labels;
use superweyl::polytools::{is_integer_valued, SampledPolynomial};
use superweyl::rootdata::{build, AlgebraId};
use superweyl::scalar::AffineScalar;
use superweyl::typicality::HighestWeight;

use super::{even_len, hidden_index, hidden_min, q, qq, split};

fn sample_algebras() -> Vec<AlgebraId> {
    vec![
        AlgebraId::sl(2, 1).unwrap(),
        AlgebraId::sl(3, 2).unwrap(),
        AlgebraId::sl(2, 2).unwrap(),
        AlgebraId::osp(2, 2).unwrap(),
        AlgebraId::osp(1, 2).unwrap(),
        AlgebraId::osp(3, 2).unwrap(),
        AlgebraId::osp(4, 2).unwrap(),
        AlgebraId::osp(6, 1).unwrap(),
        AlgebraId::d21a(qq(-2, 5)).unwrap(),
        AlgebraId::d21a_symbolic(),
        AlgebraId::F4,
        AlgebraId::G3,
    ]
}

fn weight_for(id: &AlgebraId, raw: &[u8]) -> Vec<super::Q> {
    let rs = build(id);
    let h = hidden_index(&rs);
    (0..even_len(&rs)).map(|i| q(i64::from(raw[i % raw.len()] % 7))).map(|x| x).enumerate()
        .map(|(i, x)| if Some(i) == h { x + q(hidden_min(&rs)) } else { x })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The shifted Weyl product agrees with the product over even roots of
    /// `(Λ+ρ, α)/(ρ₀, α)`.
    #[test]
    fn weyl_form_equals_root_product(which in 0usize..12, raw in proptest::collection::vec(any::<u8>(), 1..8)) {
        let id = &sample_algebras()[which];
        let rs = build(id);
        let flat = weight_for(id, &raw);
        let hw = HighestWeight::from_even_labels(&rs, &split(&rs, &flat)).unwrap();
        prop_assert_eq!(hw.typical_dim().unwrap(), hw.root_product_dim().unwrap());
    }

    /// Multiplying the invariant form by a nonzero constant changes neither
    /// the labels, the dimension nor the typicality verdict.
    #[test]
    fn form_rescaling_is_invisible(
        which in 0usize..12,
        raw in proptest::collection::vec(any::<u8>(), 1..8),
        num in -9i64..10,
        den in 1i64..7,
    ) {
        prop_assume!(num != 0);
        let id = &sample_algebras()[which];
        let rs = build(id);
        let scaled = rs.with_scaled_form(&qq(num, den));
        let flat = weight_for(id, &raw);
        let even = split(&rs, &flat);
        let a = HighestWeight::from_even_labels(&rs, &even).unwrap();
        let b = HighestWeight::from_even_labels(&scaled, &even).unwrap();
        prop_assert_eq!(&a.g_labels, &b.g_labels);
        prop_assert_eq!(a.typical_dim().unwrap(), b.typical_dim().unwrap());
        prop_assert_eq!(a.is_typical().unwrap(), b.is_typical().unwrap());
    }

    /// Conjugate weights of `sl(p|q)` have equal dimension.
    #[test]
    fn conjugates_have_equal_dimension(p in 1u32..5, qd in 0u32..3, raw in proptest::collection::vec(0u8..6, 1..8)) {
        let id = match AlgebraId::sl(p + qd, p) {
            Ok(id) => id,
            Err(_) => return Ok(()),
        };
        let rs = build(&id);
        let flat: Vec<super::Q> = (0..even_len(&rs)).map(|i| q(i64::from(raw[i % raw.len()]))).collect();
        let even = split(&rs, &flat);
        let conj = conjugate_even_labels(&id, &even);
        let d = HighestWeight::from_even_labels(&rs, &even).unwrap().typical_dim().unwrap();
        let dc = HighestWeight::from_even_labels(&rs, &conj).unwrap().typical_dim().unwrap();
        prop_assert_eq!(d, dc);
    }

    /// Raising any one even label strictly increases the dimension.
    #[test]
    fn dimension_is_strictly_monotone(
        which in 0usize..12,
        raw in proptest::collection::vec(any::<u8>(), 1..8),
        pos in any::<prop::sample::Index>(),
    ) {
        let id = &sample_algebras()[which];
        let rs = build(id);
        let lo = weight_for(id, &raw);
        let mut hi = lo.clone();
        let i = pos.index(hi.len());
        hi[i] += q(1);
        let d = |flat: &[super::Q]| HighestWeight::from_even_labels(&rs, &split(&rs, flat)).unwrap().typical_dim().unwrap();
        let (dl, dh) = (d(&lo), d(&hi));
        prop_assert!(dl > super::Q::zero() && dl < dh, "{} -> {}", dl, dh);
    }
}

/// The even-part dimension along the hidden label of `osp(4|4)` is an
/// integer-valued polynomial.
#[test]
fn osp44_slice_is_integer_valued() {
    let rs = build(&AlgebraId::osp(4, 2).unwrap());
    let h = hidden_index(&rs).unwrap();
    let volume = q(1) * super::Q::from_integer(num_bigint::BigInt::one() << rs.n1());
    let degree = rs.pos_even.len();
    let values: Vec<super::Q> = (0..=degree as i64)
        .map(|l| {
            let mut flat = vec![q(0); even_len(&rs)];
            flat[h] = q(l);
            HighestWeight::from_even_labels(&rs, &split(&rs, &flat)).unwrap().typical_dim().unwrap() / &volume
        })
        .collect();
    let p = SampledPolynomial::new(num_bigint::BigInt::zero(), values);
    assert!(is_integer_valued(&p));
}

/// An `osp(4|2;α)` weight with symbolic α specialises to the concrete
/// algebra at every non-degenerate α.
#[test]
fn symbolic_alpha_specialises() {
    let sym = build(&AlgebraId::d21a_symbolic());
    for (num, den) in [(1, 1), (1, 3), (-2, 5), (2, 1), (7, 3)] {
        let a = qq(num, den);
        let conc = build(&AlgebraId::d21a(a.clone()).unwrap());
        for even in [[5, 0, 0], [3, 1, 0], [2, 1, 1], [4, 2, 3]] {
            let even: Vec<Vec<super::Q>> = even.iter().map(|&x| vec![q(x)]).collect();
            let s = HighestWeight::from_even_labels(&sym, &even).unwrap();
            let c = HighestWeight::from_even_labels(&conc, &even).unwrap();
            let spec: Vec<AffineScalar> = s.g_labels.iter().map(|l| AffineScalar::constant(l.eval(&a))).collect();
            assert_eq!(spec, c.g_labels);
            assert_eq!(s.typical_dim().unwrap(), c.typical_dim().unwrap());
        }
    }
}
