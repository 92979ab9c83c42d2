use num_complex::Complex;
use num_traits::Zero;
use proptest::prelude::*;
use qcliff_core::covariants::fierz_residuals;
use qcliff_core::phi::{phi_inverse, phi_map};
use qcliff_core::{
    classify, compute_covariants, AntisymmetricForm, ArbitraryForm, Blade, BilinearForm, CliffordEngine, ColumnSpinor,
    Exact, Multivector, Real,
};

fn q(n: i64) -> Exact {
    Exact::from_i64(n)
}

fn antisymmetric() -> impl Strategy<Value = AntisymmetricForm<Exact>> {
    prop::array::uniform6(-3i64..=3).prop_map(|u| AntisymmetricForm::from_upper(u.map(q)))
}

/// Up to four terms with small Gaussian-integer coefficients.
fn multivector() -> impl Strategy<Value = Multivector<Exact>> {
    prop::collection::vec((0u8..16, -4i64..=4, -4i64..=4), 0..4).prop_map(|terms| {
        Multivector::from_terms(
            terms.into_iter().map(|(b, re, im)| (Blade::new(b).unwrap(), Complex::new(q(re), q(im)))),
        )
    })
}

fn column() -> impl Strategy<Value = ColumnSpinor<f64>> {
    prop::array::uniform4((-2.0f64..2.0, -2.0f64..2.0))
        .prop_filter("nonzero", |c| c.iter().any(|(re, im)| re.abs() + im.abs() > 1e-3))
        .prop_map(|c| ColumnSpinor::new(c.map(|(re, im)| Complex::new(re, im))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deformed_product_is_associative(a in antisymmetric(), x in multivector(), y in multivector(), z in multivector()) {
        let eng = CliffordEngine::new(ArbitraryForm::minkowski_plus(a));
        let left = eng.product(&eng.product(&x, &y), &z);
        let right = eng.product(&x, &eng.product(&y, &z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn vectors_square_to_the_symmetric_part(a in antisymmetric(), v in prop::array::uniform4(-5i64..=5)) {
        let form = ArbitraryForm::minkowski_plus(a);
        let eng = CliffordEngine::new(form.clone());
        let v = v.map(q);
        let mv = Multivector::vector(v.clone());
        prop_assert_eq!(eng.product(&mv, &mv), Multivector::scalar(Complex::new(form.quadratic(&v), Exact::zero())));
    }

    #[test]
    fn unit_is_neutral(a in antisymmetric(), x in multivector()) {
        let eng = CliffordEngine::new(ArbitraryForm::minkowski_plus(a));
        prop_assert_eq!(eng.product(&Multivector::one(), &x), x.clone());
        prop_assert_eq!(eng.product(&x, &Multivector::one()), x);
    }

    #[test]
    fn phi_round_trip(a in antisymmetric(), x in multivector()) {
        prop_assert_eq!(phi_inverse(&phi_map(&x, &a), &a), x.clone());
        prop_assert_eq!(phi_map(&phi_inverse(&x, &a), &a), x);
    }

    #[test]
    fn zero_form_keeps_the_minkowski_product(x in multivector(), y in multivector()) {
        let plain = CliffordEngine::<Exact>::minkowski();
        let deformed = CliffordEngine::new(ArbitraryForm::minkowski_plus(AntisymmetricForm::zero()));
        prop_assert_eq!(plain.product(&x, &y), deformed.product(&x, &y));
    }

    #[test]
    fn grades_sum_to_the_whole(x in multivector()) {
        let sum = (0..=4).fold(Multivector::zero(), |acc, k| acc + x.grade_project(k).unwrap());
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn fierz_identities_hold(c in column()) {
        let cov = compute_covariants(&c).unwrap();
        let scale = cov.scale().to_f64().max(1.0);
        prop_assert!(fierz_residuals(&cov).max() <= 1e-9 * scale * scale);
    }

    #[test]
    fn class_survives_rescaling(c in column(), re in 0.2f64..3.0, im in -3.0f64..3.0) {
        let base = classify(&compute_covariants(&c).unwrap(), 1e-9);
        let scaled = classify(&compute_covariants(&c.scale(&Complex::new(re, im))).unwrap(), 1e-9);
        prop_assert_eq!(base.ok(), scaled.ok());
    }
}

#[test]
fn generators_anticommute_to_the_form() {
    let a = AntisymmetricForm::from_upper([q(1), q(-2), q(3), q(1), q(0), q(-1)]);
    let form = ArbitraryForm::minkowski_plus(a);
    let eng = CliffordEngine::new(form.clone());
    for i in 0..4 {
        for j in 0..4 {
            let (ei, ej) = (Multivector::basis(i).unwrap(), Multivector::basis(j).unwrap());
            let anti = eng.product(&ei, &ej) + eng.product(&ej, &ei);
            let two_g = form.entry(i, j) + form.entry(j, i);
            assert_eq!(anti, Multivector::scalar(Complex::new(two_g, Exact::zero())));
        }
    }
}
