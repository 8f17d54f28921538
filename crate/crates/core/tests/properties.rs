use proptest::prelude::*;

use logiqec::code_builder::{build_coset_code, claimed_coset_distance, CodeSpec};
use logiqec::fp_algebra::{FpMatrix, FpVec, PauliLabel, Prime};
use logiqec::logic_fn::{
    apc_distance, autocorrelation_spectrum, autocorrelation_spectrum_direct, solve_coboundary,
    zset, LogicFunction, ShiftConstraint,
};
use logiqec::projector_codes::{build_projector, operator_matrix};
use logiqec::state_oracle::{gram_matrix, kl_verify};
use logiqec::State;

fn prime() -> impl Strategy<Value = Prime> {
    prop_oneof![
        Just(Prime::TWO),
        Just(Prime::THREE),
        Just(Prime::new(5).unwrap())
    ]
}

fn table(p: Prime, n: usize) -> impl Strategy<Value = LogicFunction> {
    let dim = (p.get() as usize).pow(n as u32);
    prop::collection::vec(0..p.get() as u8, dim)
        .prop_map(move |t| LogicFunction::from_table(p, n, t).unwrap())
}

fn function() -> impl Strategy<Value = LogicFunction> {
    prop_oneof![
        (1usize..=5).prop_flat_map(|n| table(Prime::TWO, n)),
        (1usize..=3).prop_flat_map(|n| table(Prime::THREE, n)),
    ]
}

fn vector(p: Prime, n: usize) -> impl Strategy<Value = FpVec> {
    prop::collection::vec(0..p.get() as i64, n).prop_map(move |v| FpVec::new(p, v).unwrap())
}

/// Symmetric zero-diagonal matrix, as the form `Σ_{i<j} A_ij x_i x_j` plus an affine part.
fn quadratic(p: Prime, n: usize) -> impl Strategy<Value = LogicFunction> {
    let pairs = n * (n - 1) / 2;
    (prop::collection::vec(0..p.get() as u8, pairs), vector(p, n)).prop_map(move |(w, beta)| {
        let mut a = FpMatrix::zeros(p, n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                a.set(i, j, w[k]);
                a.set(j, i, w[k]);
                k += 1;
            }
        }
        LogicFunction::quadratic_form(&a)
            .unwrap()
            .add_affine(&beta, 0)
            .unwrap()
    })
}

fn matrix(p: Prime, rows: usize, cols: usize) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(0..p.get() as i64, rows * cols)
        .prop_map(move |d| FpMatrix::new(p, rows, cols, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anf_roundtrip(f in function()) {
        let again = LogicFunction::from_polynomial(f.anf()).unwrap();
        prop_assert_eq!(&again, &f);
        let reparsed = LogicFunction::parse_anf(&f.anf_string(), f.p(), f.n()).unwrap();
        prop_assert_eq!(reparsed, f);
    }

    #[test]
    fn affine_shift_differs_by_affine(f in function(), seed in any::<u64>()) {
        let (p, n) = (f.p(), f.n());
        let beta = FpVec::new(p, (0..n).map(|i| ((seed >> (3 * i)) % p.get() as u64) as i64)).unwrap();
        let g = f.add_affine(&beta, 1).unwrap();
        prop_assert!(g.difference(&f).unwrap().is_affine());
    }

    #[test]
    fn apc_distance_bounded_and_witnessed(f in function()) {
        let r = apc_distance(&f).unwrap();
        prop_assert!(r.distance >= 1 && r.distance <= f.n());
        prop_assert_eq!(r.witness.symplectic_weight(), r.distance);
        let g = gram_matrix(&[State::from_function(&f)], &r.witness).unwrap();
        prop_assert!(!g[0][0].is_zero());
    }

    #[test]
    fn zset_is_symmetric(f in (2usize..=6).prop_flat_map(|n| table(Prime::TWO, n))) {
        let z = zset(&f).unwrap();
        for a in &z {
            prop_assert!(z.contains(&a.neg()));
        }
    }

    #[test]
    fn spectrum_routes_agree(f in (1usize..=6).prop_flat_map(|n| table(Prime::TWO, n))) {
        prop_assert_eq!(
            autocorrelation_spectrum(&f).unwrap(),
            autocorrelation_spectrum_direct(&f).unwrap()
        );
    }

    #[test]
    fn rank_nullity(
        a in (prime(), 1usize..=5, 1usize..=6).prop_flat_map(|(p, r, c)| matrix(p, r, c))
    ) {
        let cols = a.cols();
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let null = a.nullspace();
        prop_assert_eq!(a.rank() + null.len(), cols);
        for v in &null {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn coboundary_recovers_quadratics(
        f in prop_oneof![
            (2usize..=4).prop_flat_map(|n| quadratic(Prime::TWO, n)),
            (2usize..=3).prop_flat_map(|n| quadratic(Prime::THREE, n)),
        ]
    ) {
        let (p, n) = (f.p(), f.n());
        let constraints: Vec<ShiftConstraint> = (0..n)
            .map(|i| {
                let e = FpVec::unit(p, n, i);
                let d = (0..f.dim())
                    .map(|x| {
                        let y = FpVec::from_index(p, n, x).add(&e).unwrap();
                        p.sub(f.value(y.to_index()), f.value(x))
                    })
                    .collect();
                let d = LogicFunction::from_table(p, n, d).unwrap();
                let t = d.value(0);
                let beta = FpVec::new(
                    p,
                    (0..n).map(|j| p.sub(d.value(FpVec::unit(p, n, j).to_index()), t) as i64),
                )
                .unwrap();
                ShiftConstraint::new(e, beta, t)
            })
            .collect();
        let g = solve_coboundary(&constraints, p, n).unwrap();
        let diff = g.difference(&f).unwrap();
        prop_assert!(diff.table().iter().all(|&v| v == diff.value(0)));
    }

    #[test]
    fn coset_distance_at_most_apc(f in (2usize..=4).prop_flat_map(|n| quadratic(Prime::TWO, n)), seed in any::<u32>()) {
        let n = f.n();
        let a = FpVec::from_index(Prime::TWO, n, 0);
        let b = FpVec::from_index(Prime::TWO, n, 1 + seed as usize % ((1 << n) - 1));
        let betas = [a, b];
        let d = claimed_coset_distance(&f, &betas).unwrap();
        prop_assert!(d <= apc_distance(&f).unwrap().distance);
        let spec = build_coset_code(&f, &betas).unwrap();
        prop_assert!(spec.verify_claimed().unwrap().passed());
    }

    #[test]
    fn codespec_json_roundtrip(f in function(), d in 1usize..4) {
        let spec = CodeSpec::new(vec![f], d, "prop").unwrap();
        prop_assert_eq!(CodeSpec::from_json(&spec.to_json()).unwrap(), spec.clone());
        let report = spec.verify(spec.n().min(1)).unwrap();
        let back = logiqec::state_oracle::VerifyReport::from_json(&report.to_json()).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn operators_are_unitary(p in prime(), n in 1usize..=2, seed in any::<u64>()) {
        let digits = |s: u64| (0..n).map(move |i| ((s >> (4 * i)) % p.get() as u64) as i64);
        let a = FpVec::new(p, digits(seed)).unwrap();
        let b = FpVec::new(p, digits(seed >> 20)).unwrap();
        let m = operator_matrix(&PauliLabel::new(a, b).unwrap()).unwrap();
        let id = logiqec::Operator::identity(p, n).unwrap();
        prop_assert_eq!(m.conj_transpose().mul(&m).unwrap(), id);
    }

    #[test]
    fn x_type_projector_trace_is_weight(f in (1usize..=4).prop_flat_map(|n| table(Prime::TWO, n))) {
        prop_assume!(f.weight() > 0);
        let n = f.n();
        let a = FpMatrix::identity(Prime::TWO, n)
            .hstack(&FpMatrix::zeros(Prime::TWO, n, n))
            .unwrap();
        let proj = build_projector(&f, &a).unwrap();
        prop_assert!(proj.is_idempotent());
        prop_assert_eq!(proj.trace(), Some(f.weight() as i64));
    }

    #[test]
    fn orthogonal_affine_bases_pass_weight_zero(f in (2usize..=4).prop_flat_map(|n| quadratic(Prime::TWO, n))) {
        let n = f.n();
        let basis: Vec<State> = (0..1usize << n)
            .map(|i| State::from_function(&f.add_affine(&FpVec::from_index(Prime::TWO, n, i), 0).unwrap()))
            .collect();
        prop_assert!(kl_verify(&basis, 0).unwrap().passed());
    }
}
