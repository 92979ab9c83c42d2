use num_complex::Complex;
use qcliff_core::quantum::{admissible, compute_b_covariants, QuantumContext};
use qcliff_core::{b_classify, classify, compute_covariants, AntisymmetricForm, ColumnSpinor, Exact, Real};

fn column(re: [i64; 4], im: [i64; 4]) -> ColumnSpinor<Exact> {
    ColumnSpinor::new(core::array::from_fn(|k| Complex::new(Exact::from_i64(re[k]), Exact::from_i64(im[k]))))
}

fn samples() -> Vec<(u8, ColumnSpinor<Exact>)> {
    vec![
        (1, column([2, 0, 1, 0], [0, 0, 1, 0])),
        (2, column([1, 0, 0, 0], [0; 4])),
        (3, column([1, 0, 0, 0], [0, 0, 1, 0])),
        (4, column([1, 2, 1, -2], [0; 4])),
        (5, column([1, 1, 1, -1], [0; 4])),
        (6, column([1, 0, 1, 0], [0; 4])),
    ]
}

#[test]
fn zero_form_reproduces_the_classical_classes() {
    for (label, c) in samples() {
        assert_eq!(classify(&compute_covariants(&c).unwrap(), 0.0).unwrap().label(), label);
        let q = compute_b_covariants(&c, &AntisymmetricForm::zero()).unwrap();
        assert_eq!(q.total, q.classical);
        assert_eq!(b_classify(&q, 0.0).unwrap().label(), label);
    }
}

#[test]
fn classical_part_does_not_depend_on_the_form() {
    let a = AntisymmetricForm::from_upper([1, -1, 2, 1, 0, 3].map(Exact::from_i64));
    for (_, c) in samples() {
        let flat = compute_b_covariants(&c, &AntisymmetricForm::zero()).unwrap();
        let q = compute_b_covariants(&c, &a).unwrap();
        assert_eq!(q.classical, flat.classical);
    }
}

#[test]
fn exact_pairs_stay_admissible() {
    let a = AntisymmetricForm::from_upper([1, 2, -1, 1, 1, -2].map(Exact::from_i64));
    let ctx = QuantumContext::new(a);
    for (label, c) in samples() {
        let q = ctx.compute(&c).unwrap();
        let classical = classify(&compute_covariants(&c).unwrap(), 0.0).unwrap();
        assert_eq!(classical.label(), label);
        if let Ok(b) = b_classify(&q, 0.0) {
            assert!(admissible(classical, b, false), "{label} -> {b}");
        }
    }
}
