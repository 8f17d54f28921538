//! Character sums of logic functions: APC sums and distance, autocorrelation,
//! Zset, and bentness.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_algebra::{labels_of_weight, CycloInt, FpVec, PauliLabel, PointSpace};
use crate::Cyclo;

use super::LogicFunction;

/// Minimum-weight label with a nonvanishing APC sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApcResult {
    pub distance: usize,
    pub witness: PauliLabel,
}

fn check_label(f: &LogicFunction, e: &PauliLabel) -> Result<()> {
    if e.p() != f.p() {
        return Err(Error::FieldMismatch {
            left: f.p().get(),
            right: e.p().get(),
        });
    }
    if e.n() != f.n() {
        return Err(Error::mismatch(f.n(), e.n()));
    }
    Ok(())
}

/// Histogram of `f(x−a) − f(x) + b·x` over all `x`.
fn apc_histogram(f: &LogicFunction, e: &PauliLabel) -> Vec<u64> {
    let p = f.p();
    let t = f.table();
    if p.is_two() {
        let am = e.a().to_index();
        let bm = e.b().to_index();
        let ones: u64 = (0..t.len())
            .map(|x| (t[x ^ am] ^ t[x] ^ ((x & bm).count_ones() & 1) as u8) as u64)
            .sum();
        return vec![t.len() as u64 - ones, ones];
    }
    let space = PointSpace {
        p,
        n: f.n(),
        dim: t.len(),
    };
    let back = space.shift_map(&e.a().neg());
    let dots = space.dot_table(e.b());
    let mut hist = vec![0u64; p.as_usize()];
    for x in 0..t.len() {
        let ex = p.add(p.sub(t[back[x] as usize], t[x]), dots[x]);
        hist[ex as usize] += 1;
    }
    hist
}

/// `Σ_x ζ^{f(x−a) − f(x) + b·x}`.
///
/// Over `F_2` this is `Σ_x (−1)^{f(x)+f(x+a)+b·x}`. For odd `p` the conjugate on
/// `f(x)` makes the sum equal `⟨ψ_f|X_a Z_b|ψ_f⟩` up to the phase `ζ^{b·a}`, so its
/// vanishing is exactly the state-level condition.
pub fn apc_sum(f: &LogicFunction, e: &PauliLabel) -> Result<Cyclo> {
    check_label(f, e)?;
    Ok(CycloInt::from_histogram(f.p(), &apc_histogram(f, e)))
}

pub(crate) fn apc_sum_vanishes(f: &LogicFunction, e: &PauliLabel) -> bool {
    let h = apc_histogram(f, e);
    h.windows(2).all(|w| w[0] == w[1])
}

/// Smallest symplectic weight of a nonidentity label with a nonvanishing APC sum.
///
/// Labels are searched weight by weight in the order of [`labels_of_weight`], so the
/// witness is the first such label in that order regardless of thread count.
pub fn apc_distance(f: &LogicFunction) -> Result<ApcResult> {
    if f.n() == 0 {
        return Err(Error::Precondition("apc_distance needs n >= 1".into()));
    }
    for w in 1..=f.n() {
        let labels = labels_of_weight(f.p(), f.n(), w);
        if let Some(witness) = labels
            .into_par_iter()
            .find_first(|e| !apc_sum_vanishes(f, e))
        {
            return Ok(ApcResult {
                distance: w,
                witness,
            });
        }
    }
    unreachable!("some nonidentity label always has a nonvanishing sum")
}

/// `Σ_x ζ^{f(x) − f(x+a)}`; for `p = 2` the integer `r_f(a)`.
pub fn autocorrelation(f: &LogicFunction, a: &FpVec) -> Result<Cyclo> {
    if a.len() != f.n() {
        return Err(Error::mismatch(f.n(), a.len()));
    }
    if a.p() != f.p() {
        return Err(Error::FieldMismatch {
            left: f.p().get(),
            right: a.p().get(),
        });
    }
    let p = f.p();
    let t = f.table();
    let space = PointSpace {
        p,
        n: f.n(),
        dim: t.len(),
    };
    let fwd = space.shift_map(a);
    let mut hist = vec![0u64; p.as_usize()];
    for x in 0..t.len() {
        hist[p.sub(t[x], t[fwd[x] as usize]) as usize] += 1;
    }
    Ok(CycloInt::from_histogram(p, &hist))
}

fn require_binary(f: &LogicFunction, what: &str) -> Result<()> {
    if !f.p().is_two() {
        return Err(Error::UnsupportedField(format!(
            "{what} is defined over F_2 only (got F_{})",
            f.p()
        )));
    }
    Ok(())
}

/// In-place Walsh–Hadamard transform.
pub fn fwht(values: &mut [i64]) {
    let mut h = 1;
    while h < values.len() {
        for block in (0..values.len()).step_by(2 * h) {
            for i in block..block + h {
                let (x, y) = (values[i], values[i + h]);
                values[i] = x + y;
                values[i + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// `r_f(a)` for every `a` (index order) by direct summation.
pub fn autocorrelation_spectrum_direct(f: &LogicFunction) -> Result<Vec<i64>> {
    require_binary(f, "the integer autocorrelation spectrum")?;
    let t = f.table();
    Ok((0..t.len())
        .map(|a| {
            t.iter()
                .enumerate()
                .map(|(x, &v)| if v == t[x ^ a] { 1 } else { -1 })
                .sum()
        })
        .collect())
}

/// `r_f(a)` for every `a` via `r_f = WHT(W_f²) / 2^n`.
pub fn autocorrelation_spectrum(f: &LogicFunction) -> Result<Vec<i64>> {
    require_binary(f, "the integer autocorrelation spectrum")?;
    if f.n() > 16 {
        return autocorrelation_spectrum_direct(f);
    }
    let mut w: Vec<i64> = f.table().iter().map(|&v| 1 - 2 * v as i64).collect();
    fwht(&mut w);
    for v in &mut w {
        *v *= *v;
    }
    fwht(&mut w);
    let dim = f.dim() as i64;
    Ok(w.into_iter().map(|v| v / dim).collect())
}

/// `{a : Σ_x f(x) f(x+a) = 0}` over `F_2`, by integer evaluation.
pub fn zset(f: &LogicFunction) -> Result<Vec<FpVec>> {
    require_binary(f, "Zset")?;
    let t = f.table();
    let support: Vec<usize> = (0..t.len()).filter(|&x| t[x] == 1).collect();
    Ok((0..t.len())
        .into_par_iter()
        .filter(|&a| support.iter().all(|&x| t[x ^ a] == 0))
        .map(|a| FpVec::from_index(f.p(), f.n(), a))
        .collect())
}

/// `{a : r_f(a) = 2^n − 4M}`, valid when `M <= 2^(n−1)`.
pub fn zset_via_autocorrelation(f: &LogicFunction) -> Result<Vec<FpVec>> {
    require_binary(f, "Zset")?;
    let m = f.weight() as i64;
    let dim = f.dim() as i64;
    if 2 * m > dim {
        return Err(Error::Precondition(format!(
            "weight {m} exceeds 2^(n-1) = {}",
            dim / 2
        )));
    }
    let target = dim - 4 * m;
    Ok(autocorrelation_spectrum(f)?
        .into_iter()
        .enumerate()
        .filter(|&(_, r)| r == target)
        .map(|(a, _)| FpVec::from_index(f.p(), f.n(), a))
        .collect())
}

/// Whether `r_f(s) = 0` for every `s != 0` (Boolean, even `n`).
pub fn is_bent(f: &LogicFunction) -> Result<bool> {
    require_binary(f, "bentness")?;
    if f.n() % 2 != 0 {
        return Err(Error::Precondition(format!(
            "bent functions need an even number of variables (n = {})",
            f.n()
        )));
    }
    let bent = autocorrelation_spectrum(f)?.iter().skip(1).all(|&r| r == 0);
    if bent {
        let half = 1usize << (f.n() - 1);
        let delta = 1usize << (f.n() / 2 - 1);
        let m = f.weight();
        assert!(
            m == half - delta || m == half + delta,
            "bent function with support size {m}"
        );
    }
    Ok(bent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_algebra::{FpMatrix, Prime};

    fn label(p: Prime, a: &str, b: &str) -> PauliLabel {
        PauliLabel::new(
            FpVec::parse_digits(p, a).unwrap(),
            FpVec::parse_digits(p, b).unwrap(),
        )
        .unwrap()
    }

    fn k4_form() -> LogicFunction {
        LogicFunction::parse_anf(
            "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4",
            Prime::TWO,
            4,
        )
        .unwrap()
    }

    fn product4_g() -> LogicFunction {
        LogicFunction::parse_anf("(y1+y2+y3)*(y1+y2+y4)", Prime::TWO, 4).unwrap()
    }

    /// Brute-force oracle: Σ_x ζ^{f(x−a) − f(x) + b·x} with vector arithmetic.
    fn naive_apc(f: &LogicFunction, e: &PauliLabel) -> Cyclo {
        let p = f.p();
        let mut acc = Cyclo::zero(p);
        for idx in 0..f.dim() {
            let x = FpVec::from_index(p, f.n(), idx);
            let xa = x.sub(e.a()).unwrap();
            let ex = p.add(
                p.sub(f.value_at(&xa).unwrap(), f.value(idx)),
                x.dot(e.b()).unwrap(),
            );
            acc = &acc + &Cyclo::zeta_pow(p, ex as u32);
        }
        acc
    }

    #[test]
    fn apc_sum_examples() {
        let p = Prime::TWO;
        let zero = LogicFunction::zero(p, 4);
        let s = apc_sum(&zero, &label(p, "0000", "0000")).unwrap();
        assert_eq!(s.to_integer(), Some(16));
        assert_eq!(s.coeffs(), &[16, 0]);
        assert!(apc_sum(&zero, &label(p, "0000", "0100")).unwrap().is_zero());
        assert!(apc_sum(&k4_form(), &label(p, "1000", "0000"))
            .unwrap()
            .is_zero());
        assert!(apc_sum(&zero, &label(p, "000", "000")).is_err());
    }

    #[test]
    fn apc_sum_matches_brute_force_for_odd_p() {
        let p = Prime::THREE;
        let f = LogicFunction::parse_anf("x1^2*x2 + 2*x2*x3 + x3^2 + x1", p, 3).unwrap();
        for w in 0..=3 {
            for e in labels_of_weight(p, 3, w) {
                assert_eq!(apc_sum(&f, &e).unwrap(), naive_apc(&f, &e));
            }
        }
    }

    #[test]
    fn apc_distance_examples() {
        let r = apc_distance(&k4_form()).unwrap();
        assert_eq!(r.distance, 2);
        assert!(!apc_sum(&k4_form(), &r.witness).unwrap().is_zero());
        // Z-type labels vanish on the zero function; the first X-type one does not.
        for (p, n, witness) in [(Prime::TWO, 3, "(100|000)"), (Prime::THREE, 2, "(10|00)")] {
            let r = apc_distance(&LogicFunction::zero(p, n)).unwrap();
            assert_eq!(r.distance, 1);
            assert_eq!(r.witness.to_string(), witness);
        }
    }

    #[test]
    fn apc_distance_x1x2_by_exhaustion() {
        // Oracle: every nonzero label of F_2^2, brute-forced.
        let f = LogicFunction::parse_anf("x1*x2", Prime::TWO, 2).unwrap();
        let mut best = usize::MAX;
        for idx in 1..16usize {
            let e = label(
                Prime::TWO,
                &format!("{:02b}", idx >> 2),
                &format!("{:02b}", idx & 3),
            );
            if !naive_apc(&f, &e).is_zero() {
                best = best.min(e.symplectic_weight());
            }
        }
        assert_eq!(best, 2);
        assert_eq!(apc_distance(&f).unwrap().distance, 2);
    }

    #[test]
    fn autocorrelation_examples() {
        let p = Prime::TWO;
        let g = product4_g();
        let r = autocorrelation(&g, &FpVec::parse_digits(p, "1000").unwrap()).unwrap();
        assert!(r.is_zero());
        let r0 = autocorrelation(&g, &FpVec::zeros(p, 4)).unwrap();
        assert_eq!(r0.to_integer(), Some(16));

        let p5 = Prime::new(5).unwrap();
        let lin = LogicFunction::parse_anf("2*x1 + 3*x2 + 1", p5, 2).unwrap();
        for idx in 0..25 {
            let a = FpVec::from_index(p5, 2, idx);
            let r = autocorrelation(&lin, &a).unwrap();
            let (u, _) = r.as_monomial().unwrap();
            assert_eq!(u, 25);
        }
    }

    #[test]
    fn spectra_agree() {
        for text in ["(y1+y2+y3)*(y1+y2+y4)", "x1*x2+x3*x4", "x1*x2*x3 + x4", "0"] {
            let f = LogicFunction::parse_anf(text, Prime::TWO, 4).unwrap();
            let fast = autocorrelation_spectrum(&f).unwrap();
            assert_eq!(fast, autocorrelation_spectrum_direct(&f).unwrap());
            for (a, &r) in fast.iter().enumerate() {
                let a = FpVec::from_index(Prime::TWO, 4, a);
                assert_eq!(autocorrelation(&f, &a).unwrap().to_integer(), Some(r));
            }
        }
    }

    #[test]
    fn zset_examples() {
        let p = Prime::TWO;
        assert_eq!(zset(&LogicFunction::zero(p, 3)).unwrap().len(), 8);
        assert!(zset(&LogicFunction::constant(p, 3, 1)).unwrap().is_empty());

        let g = product4_g();
        let z: Vec<String> = zset(&g).unwrap().iter().map(|v| v.to_string()).collect();
        let ag = FpMatrix::from_digit_rows(p, &["10000011", "01000011", "00101101", "00011110"])
            .unwrap();
        for c in 0..8 {
            assert!(z.contains(&ag.col(c).to_string()), "column {c}");
        }
        let via = zset_via_autocorrelation(&g).unwrap();
        assert_eq!(zset(&g).unwrap(), via);
        // M = 4: r_g(a) = 0 on exactly the Zset
        let r = autocorrelation_spectrum(&g).unwrap();
        for v in via {
            assert_eq!(r[v.to_index()], 0);
        }
        assert!(zset(&LogicFunction::zero(Prime::THREE, 2)).is_err());
        assert!(zset_via_autocorrelation(&LogicFunction::constant(p, 3, 1)).is_err());
    }

    #[test]
    fn bent_examples() {
        let p = Prime::TWO;
        assert!(is_bent(&LogicFunction::parse_anf("x1*x2", p, 2).unwrap()).unwrap());
        assert!(is_bent(&LogicFunction::parse_anf("x1*x2+x3*x4", p, 4).unwrap()).unwrap());
        assert!(!is_bent(&LogicFunction::parse_anf("x1+x3+1", p, 4).unwrap()).unwrap());
        assert!(!is_bent(&product4_g()).unwrap());
        assert!(is_bent(&LogicFunction::zero(p, 3)).is_err());
        assert!(is_bent(&LogicFunction::zero(Prime::THREE, 2)).is_err());
    }
}
