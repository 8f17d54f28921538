use std::fmt;

use crate::error::{Error, Result};
use crate::fp_algebra::{FpMatrix, FpVec, PauliLabel, Prime};
use crate::logic_fn::{is_bent, solve_coboundary, zset, LogicFunction, ShiftConstraint};
use crate::state_oracle::StateVector;

use super::logic::{projector_and, SignedLabel};
use super::OperatorMatrix;

/// A required `Zset` element that is missing, named by its column(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZsetWitness {
    pub columns: Vec<usize>,
    pub vector: FpVec,
}

impl fmt::Display for ZsetWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.columns.iter().map(|c| format!("col{c}")).collect();
        write!(f, "{} = {}", names.join("+"), self.vector)
    }
}

/// The four premises for `(f, A_f)` to determine an `((n, M, 2))` code:
/// (i) `M <= 2^(n−1)`; (ii) `Zset_f` holds every column `α_j` of `A_f` and every
/// `α_i + α_{n+i}`; (iii) rows are pairwise symplectic-orthogonal; (iv) rows are independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma3Premises {
    pub n: usize,
    pub weight: usize,
    pub zset_missing: Vec<ZsetWitness>,
    /// First non-orthogonal row pair, 1-based.
    pub nonorthogonal: Option<(usize, usize)>,
    pub rank: usize,
}

impl Lemma3Premises {
    pub fn weight_ok(&self) -> bool {
        2 * self.weight <= 1 << self.n
    }

    pub fn zset_ok(&self) -> bool {
        self.zset_missing.is_empty()
    }

    pub fn orthogonal_ok(&self) -> bool {
        self.nonorthogonal.is_none()
    }

    pub fn independent_ok(&self) -> bool {
        self.rank == self.n
    }

    pub fn passed(&self) -> bool {
        self.weight_ok() && self.zset_ok() && self.orthogonal_ok() && self.independent_ok()
    }

    /// One `(name, passed, detail)` line per condition.
    pub fn conditions(&self) -> Vec<(&'static str, bool, String)> {
        let missing: Vec<String> = self.zset_missing.iter().map(|w| w.to_string()).collect();
        vec![
            (
                "weight",
                self.weight_ok(),
                format!(
                    "M = {} vs 2^(n-1) = {}",
                    self.weight,
                    1usize << (self.n - 1)
                ),
            ),
            (
                "zset",
                self.zset_ok(),
                if missing.is_empty() {
                    "all required shifts lie in Zset".into()
                } else {
                    format!("missing: {}", missing.join(", "))
                },
            ),
            (
                "symplectic",
                self.orthogonal_ok(),
                match self.nonorthogonal {
                    None => "rows pairwise orthogonal".into(),
                    Some((i, j)) => format!("rows {i} and {j} have nonzero symplectic product"),
                },
            ),
            (
                "independent",
                self.independent_ok(),
                format!("rank {} of {}", self.rank, self.n),
            ),
        ]
    }
}

fn check_shape(f: &LogicFunction, a_f: &FpMatrix) -> Result<usize> {
    if !f.p().is_two() || !a_f.p().is_two() {
        return Err(Error::UnsupportedField(
            "projector codes are built over F_2".into(),
        ));
    }
    let n = f.n();
    if a_f.rows() != n || a_f.cols() != 2 * n {
        return Err(Error::InvalidMatrix(format!(
            "A_f must be {n}x{}, got {}x{}",
            2 * n,
            a_f.rows(),
            a_f.cols()
        )));
    }
    Ok(n)
}

/// Row `i` of `A_f` as the label `(α_i | β_i)`.
fn generators(a_f: &FpMatrix) -> Vec<PauliLabel> {
    let n = a_f.rows();
    let left: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    (0..n)
        .map(|i| {
            let a = a_f.select(&[i], &left).row(0);
            let b = a_f.select(&[i], &right).row(0);
            PauliLabel::new(a, b).expect("same field and length")
        })
        .collect()
}

fn first_nonorthogonal(gens: &[PauliLabel]) -> Option<(usize, usize)> {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if gens[i].symplectic_product(&gens[j]).expect("same shape") != 0 {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

pub fn lemma3_check(f: &LogicFunction, a_f: &FpMatrix) -> Result<Lemma3Premises> {
    let n = check_shape(f, a_f)?;
    let z = zset(f)?;
    let in_zset = |v: &FpVec| {
        z.binary_search_by_key(&v.to_index(), FpVec::to_index)
            .is_ok()
    };
    let mut zset_missing = Vec::new();
    for j in 0..2 * n {
        let col = a_f.col(j);
        if !in_zset(&col) {
            zset_missing.push(ZsetWitness {
                columns: vec![j + 1],
                vector: col,
            });
        }
    }
    for i in 0..n {
        let sum = a_f.col(i).add(&a_f.col(n + i))?;
        if !in_zset(&sum) {
            zset_missing.push(ZsetWitness {
                columns: vec![i + 1, n + i + 1],
                vector: sum,
            });
        }
    }
    Ok(Lemma3Premises {
        n,
        weight: f.weight(),
        zset_missing,
        nonorthogonal: first_nonorthogonal(&generators(a_f)),
        rank: a_f.rank(),
    })
}

/// Rows commute, are independent, and each `X_α Z_β` is Hermitian (`α·β = 0`).
fn structural_generators(f: &LogicFunction, a_f: &FpMatrix) -> Result<Vec<PauliLabel>> {
    let n = check_shape(f, a_f)?;
    let gens = generators(a_f);
    if let Some((i, j)) = first_nonorthogonal(&gens) {
        return Err(Error::Precondition(format!(
            "rows {i} and {j} of A_f have nonzero symplectic product"
        )));
    }
    let rank = a_f.rank();
    if rank < n {
        return Err(Error::Precondition(format!(
            "rows of A_f are dependent (rank {rank} of {n})"
        )));
    }
    for (i, g) in gens.iter().enumerate() {
        if g.a().dot(g.b())? != 0 {
            return Err(Error::Precondition(format!(
                "row {} has α·β = 1, so X_α Z_β is not Hermitian",
                i + 1
            )));
        }
    }
    Ok(gens)
}

/// `P = numerator / denominator` with exact integer-valued entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector {
    pub numerator: OperatorMatrix,
    pub denominator: i64,
}

impl Projector {
    /// `P² = P`, i.e. `N² = D N`.
    pub fn is_idempotent(&self) -> bool {
        let sq = self.numerator.mul(&self.numerator).expect("same shape");
        sq == self.numerator.scale(&self.denominator)
    }

    pub fn is_hermitian(&self) -> bool {
        self.numerator.conj_transpose() == self.numerator
    }

    /// `tr P`, when it is an integer.
    pub fn trace(&self) -> Option<i64> {
        let t = self.numerator.trace().to_integer()?;
        (t % self.denominator == 0).then(|| t / self.denominator)
    }

    pub fn rank(&self) -> Result<usize> {
        self.numerator.rank()
    }
}

/// `P = Σ_{t ∈ Supp f} Π_i P_i^{t_i}` with `P_i = ½(I + E′_{γ_i})`, `P^0 = P`, `P^1 = I − P`.
///
/// Generator `γ_i` (row `i` of `A_f`) pairs with coordinate `t_i`. The product is
/// expanded over subsets `S` of generators: `Π_i (I + (−1)^{t_i} E′_i) =
/// Σ_S (−1)^{Σ_{i∈S} t_i} Π_{i∈S} E′_i`, each ordered product collapsing to one signed label.
pub fn build_projector(f: &LogicFunction, a_f: &FpMatrix) -> Result<Projector> {
    let gens = structural_generators(f, a_f)?;
    let n = gens.len();
    let p = Prime::TWO;
    let support: Vec<usize> = (0..f.dim()).filter(|&x| f.value(x) != 0).collect();
    let mut numerator = OperatorMatrix::zeros(p, n)?;
    for s in 0..1usize << n {
        // bit (n−1−i) of an index is coordinate t_{i+1}
        let mask = (0..n)
            .filter(|i| s >> i & 1 == 1)
            .fold(0usize, |m, i| m | 1 << (n - 1 - i));
        let coeff: i64 = support
            .iter()
            .map(|&t| {
                if (t & mask).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum();
        if coeff == 0 {
            continue;
        }
        let mut term = SignedLabel::positive(PauliLabel::identity(p, n))?;
        for (i, g) in gens.iter().enumerate() {
            if s >> i & 1 == 1 {
                term = projector_and(&term, &SignedLabel::positive(g.clone())?)?;
            }
        }
        let signed = if term.negative { -coeff } else { coeff };
        let m = OperatorMatrix::from_label(&term.label)?.scale(&signed);
        numerator = numerator.add(&m)?;
    }
    Ok(Projector {
        numerator,
        denominator: 1 << n,
    })
}

/// `Π_i (I + (−1)^{t_i} E′_{γ_i})`, which is `2^n Π_i P_i^{t_i}`.
fn signed_product(gens: &[PauliLabel], t: &FpVec) -> Result<OperatorMatrix> {
    let n = gens.len();
    let mut m = OperatorMatrix::identity(Prime::TWO, n)?;
    for (i, g) in gens.iter().enumerate() {
        let moved = m.mul_label(g)?;
        m = if t.get(i) == 0 {
            m.add(&moved)?
        } else {
            m.sub(&moved)?
        };
    }
    Ok(m)
}

/// The quadratic `f̆` with `f̆(x) + f̆(x + α_i) = β_i·x + t_i`, checked against
/// `Π_i P_i^{t_i} = 2^{-n} |ψ_f̆⟩⟨ψ_f̆|` as exact matrices.
pub fn extract_boolean_basis(
    f: &LogicFunction,
    a_f: &FpMatrix,
    t: &FpVec,
) -> Result<LogicFunction> {
    let gens = structural_generators(f, a_f)?;
    let n = gens.len();
    if t.len() != n || t.p() != f.p() {
        return Err(Error::mismatch(n, t.len()));
    }
    if f.value(t.to_index()) == 0 {
        return Err(Error::Precondition(format!(
            "{t} is not in the support of f"
        )));
    }
    let left: Vec<usize> = (0..n).collect();
    let alpha = a_f.select(&left, &left);
    if alpha.rank() < n {
        return Err(Error::Precondition(
            "the left block of A_f is not invertible".into(),
        ));
    }
    let constraints: Vec<ShiftConstraint> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| ShiftConstraint::new(g.a().clone(), g.b().clone(), t.get(i)))
        .collect();
    let fb = solve_coboundary(&constraints, f.p(), n)?;
    let psi = StateVector::<i64>::from_function(&fb);
    let expected = OperatorMatrix::outer(&psi, &psi)?;
    let product = signed_product(&gens, t)?;
    if let Some((r, c)) = product.first_difference(&expected) {
        return Err(Error::VerificationMismatch(format!(
            "projector term for t = {t} differs from |ψ⟩⟨ψ| at ({r}, {c}): {} vs {}",
            product.get(r, c),
            expected.get(r, c)
        )));
    }
    Ok(fb)
}

/// One extracted function per support element, in index order.
pub fn extract_all(f: &LogicFunction, a_f: &FpMatrix) -> Result<Vec<(FpVec, LogicFunction)>> {
    let (_, support) = f.weight_support();
    support
        .into_iter()
        .map(|t| extract_boolean_basis(f, a_f, &t).map(|g| (t, g)))
        .collect()
}

/// Rows `(e_i | β_i)` with `f(x + e_i) − f(x) = β_i·x + c_i`, for `f` of degree ≤ 2.
pub fn shift_generator_matrix(f: &LogicFunction) -> Result<FpMatrix> {
    let (p, n) = (f.p(), f.n());
    let mut m = FpMatrix::zeros(p, n, 2 * n);
    for i in 0..n {
        let e = FpVec::unit(p, n, i);
        let shifted: Vec<u8> = (0..f.dim())
            .map(|x| {
                let y = FpVec::from_index(p, n, x).add(&e).expect("same shape");
                f.value(y.to_index())
            })
            .collect();
        let derivative = LogicFunction::from_table(p, n, shifted)?.difference(f)?;
        let anf = derivative.anf();
        if anf.degree() > 1 {
            return Err(Error::Rejected(format!(
                "derivative along x{} is not affine: {anf}",
                i + 1
            )));
        }
        m.set(i, i, 1);
        for (exps, c) in anf.terms() {
            if let Some(j) = exps.iter().position(|&e| e == 1) {
                m.set(i, n + j, c);
            }
        }
    }
    Ok(m)
}

/// Whether `f` is bent, and so cannot feed the projector construction.
pub fn bent_exclusion(f: &LogicFunction) -> Result<bool> {
    if !f.p().is_two() {
        return Err(Error::UnsupportedField(
            "bentness is defined over F_2".into(),
        ));
    }
    if f.n() <= 2 {
        return Err(Error::Precondition(format!(
            "the exclusion applies for n > 2 (n = {})",
            f.n()
        )));
    }
    if f.n() % 2 == 1 {
        return Ok(false);
    }
    is_bent(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_oracle::kl_verify;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const G: &str = "(y1+y2+y3)*(y1+y2+y4)";

    fn g() -> LogicFunction {
        LogicFunction::parse_anf(G, Prime::TWO, 4).unwrap()
    }

    fn a_g() -> FpMatrix {
        FpMatrix::from_digit_rows(
            Prime::TWO,
            &["10000011", "01000011", "00101101", "00011110"],
        )
        .unwrap()
    }

    #[test]
    fn shift_generators_of_g() {
        assert_eq!(shift_generator_matrix(&g()).unwrap(), a_g());
        let cubic = LogicFunction::parse_anf("x1*x2*x3", Prime::TWO, 3).unwrap();
        assert!(shift_generator_matrix(&cubic).is_err());
    }

    #[test]
    fn product4_premises() {
        let r = lemma3_check(&g(), &a_g()).unwrap();
        assert!(r.weight_ok());
        assert!(r.orthogonal_ok());
        assert!(r.independent_ok());
        // col1 + col5 = 1011 is not a Zset element of g
        assert_eq!(r.zset_missing.len(), 2);
        assert_eq!(r.zset_missing[0].to_string(), "col1+col5 = 1011");

        let one = LogicFunction::constant(Prime::TWO, 4, 1);
        assert!(!lemma3_check(&one, &a_g()).unwrap().weight_ok());
        assert!(lemma3_check(&g(), &FpMatrix::zeros(Prime::TWO, 4, 4)).is_err());
    }

    #[test]
    fn product4_projector() {
        let proj = build_projector(&g(), &a_g()).unwrap();
        assert_eq!(proj.trace(), Some(4));
        assert_eq!(proj.rank().unwrap(), 4);
        assert!(proj.is_idempotent());
        assert!(proj.is_hermitian());
    }

    #[test]
    fn product4_basis() {
        let mut got = extract_all(&g(), &a_g()).unwrap();
        got.sort_by_key(|(t, _)| t.to_index());
        let expected = [
            ("0011", "g+y1+y2+y3+y4"),
            ("0100", "g+y1"),
            ("1000", "g+y2"),
            ("1111", "g+y3+y4"),
        ];
        let mut sum = OperatorMatrix::zeros(Prime::TWO, 4).unwrap();
        for ((t, fb), (te, anf)) in got.iter().zip(expected) {
            assert_eq!(t.to_string(), te);
            let want =
                LogicFunction::parse_anf(&anf.replace('g', &format!("({G})")), Prime::TWO, 4)
                    .unwrap();
            let diff = fb.difference(&want).unwrap();
            assert!(
                diff.table().iter().all(|&v| v == diff.value(0)),
                "{t}: {fb}"
            );
            let psi = StateVector::<i64>::from_function(fb);
            sum = sum
                .add(&OperatorMatrix::outer(&psi, &psi).unwrap())
                .unwrap();
        }
        // Σ_t |ψ_t⟩⟨ψ_t| = 2^n P
        let proj = build_projector(&g(), &a_g()).unwrap();
        assert_eq!(sum, proj.numerator);
        for (_, a) in &got {
            for (_, b) in &got {
                assert!(a.difference(b).unwrap().is_affine());
            }
        }
        let states: Vec<_> = got
            .iter()
            .map(|(_, f)| StateVector::<i64>::from_function(f))
            .collect();
        assert!(kl_verify(&states, 0).unwrap().passed());
    }

    #[test]
    fn single_support_gives_rank_one() {
        let p = Prime::TWO;
        // f = x1 x2 x3 has support {111}; generators X_i (no Z part) commute
        let f = LogicFunction::parse_anf("x1*x2*x3", p, 3).unwrap();
        let a = FpMatrix::from_digit_rows(p, &["100000", "010000", "001000"]).unwrap();
        let proj = build_projector(&f, &a).unwrap();
        assert_eq!(proj.rank().unwrap(), 1);
        assert_eq!(proj.trace(), Some(1));
        assert!(proj.is_idempotent());
    }

    #[test]
    fn projector_preconditions() {
        let p = Prime::TWO;
        let f = LogicFunction::parse_anf("x1*x2", p, 2).unwrap();
        let noncommuting = FpMatrix::from_digit_rows(p, &["1000", "0010"]).unwrap();
        assert!(build_projector(&f, &noncommuting).is_err());
        let dependent = FpMatrix::from_digit_rows(p, &["1000", "1000"]).unwrap();
        assert!(build_projector(&f, &dependent).is_err());
        let y = FpMatrix::from_digit_rows(p, &["1010", "0100"]).unwrap();
        assert!(build_projector(&f, &y).is_err());
        let t = FpVec::parse_digits(p, "00").unwrap();
        let ok = FpMatrix::from_digit_rows(p, &["1001", "0110"]).unwrap();
        assert!(extract_boolean_basis(&f, &ok, &t).is_err());
    }

    #[test]
    fn bent_examples() {
        let p = Prime::TWO;
        let bent = LogicFunction::parse_anf("x1*x2+x3*x4", p, 4).unwrap();
        assert!(bent_exclusion(&bent).unwrap());
        assert!(!bent_exclusion(&g()).unwrap());
        assert!(!bent_exclusion(&LogicFunction::parse_anf("x1+x3", p, 4).unwrap()).unwrap());
        assert!(!bent_exclusion(&LogicFunction::parse_anf("x1*x2", p, 3).unwrap()).unwrap());
        assert!(bent_exclusion(&LogicFunction::parse_anf("x1*x2", p, 2).unwrap()).is_err());
    }

    #[test]
    fn bent_functions_fail_premises() {
        let p = Prime::TWO;
        let bent = LogicFunction::parse_anf("x1*x2+x3*x4", p, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a = FpMatrix::new(p, 4, 8, (0..32).map(|_| rng.gen_range(0..2i64))).unwrap();
            assert!(!lemma3_check(&bent, &a).unwrap().passed());
        }
    }
}
