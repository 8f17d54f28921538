use crate::error::{Error, Result};
use crate::fp_algebra::{CycloCoeff, CycloInt, PauliLabel, PointSpace, Prime};
use crate::logic_fn::LogicFunction;

/// Unnormalized amplitudes over `F_p^n` in index order; the physical state carries
/// an implicit `p^(-n/2)`.
#[derive(Clone, Debug)]
pub struct StateVector<T = i64> {
    p: Prime,
    n: usize,
    amps: Vec<CycloInt<T>>,
}

impl<T: CycloCoeff> PartialEq for StateVector<T> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.amps == other.amps
    }
}

impl<T: CycloCoeff> Eq for StateVector<T> {}

impl<T: CycloCoeff> StateVector<T> {
    pub fn new(p: Prime, n: usize, amps: Vec<CycloInt<T>>) -> Result<Self> {
        let space = PointSpace::new(p, n)?;
        if amps.len() != space.dim {
            return Err(Error::mismatch(space.dim, amps.len()));
        }
        if let Some(bad) = amps.iter().find(|z| z.p() != p) {
            return Err(Error::FieldMismatch {
                left: p.get(),
                right: bad.p().get(),
            });
        }
        if amps.iter().all(CycloInt::is_zero) {
            return Err(Error::Precondition("state vector is all zero".into()));
        }
        Ok(StateVector { p, n, amps })
    }

    /// `amps[idx(x)] = ζ^{f(x)}`.
    pub fn from_function(f: &LogicFunction) -> Self {
        let p = f.p();
        StateVector {
            p,
            n: f.n(),
            amps: f
                .table()
                .iter()
                .map(|&v| CycloInt::zeta_pow(p, v as u32))
                .collect(),
        }
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amps(&self) -> &[CycloInt<T>] {
        &self.amps
    }

    fn check_label(&self, e: &PauliLabel) -> Result<()> {
        if e.p() != self.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: e.p().get(),
            });
        }
        if e.n() != self.n {
            return Err(Error::mismatch(self.n, e.n()));
        }
        Ok(())
    }

    pub(crate) fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        if self.n != other.n {
            return Err(Error::mismatch(self.n, other.n));
        }
        Ok(())
    }

    fn space(&self) -> PointSpace {
        PointSpace {
            p: self.p,
            n: self.n,
            dim: self.amps.len(),
        }
    }

    /// `X_a Z_b` without the global phase: `out[idx(x+a)] = ζ^{b·x} amps[idx(x)]`.
    pub fn apply_error(&self, e: &PauliLabel) -> Result<Self> {
        self.check_label(e)?;
        let space = self.space();
        let shift = space.shift_map(e.a());
        let dots = space.dot_table(e.b());
        let mut amps = vec![CycloInt::zero(self.p); self.dim()];
        for (x, amp) in self.amps.iter().enumerate() {
            amps[shift[x] as usize] = amp.mul_zeta(dots[x] as u32);
        }
        Ok(StateVector {
            p: self.p,
            n: self.n,
            amps,
        })
    }

    /// `Σ_x conj(self[x]) other[x]`.
    pub fn inner_product(&self, other: &Self) -> Result<CycloInt<T>> {
        self.check_same_space(other)?;
        let mut acc = CycloInt::zero(self.p);
        for (u, v) in self.amps.iter().zip(&other.amps) {
            acc.add_conj_product(u, v);
        }
        Ok(acc)
    }

    /// `ζ^k` times the state.
    pub fn with_phase(&self, k: u32) -> Self {
        StateVector {
            p: self.p,
            n: self.n,
            amps: self.amps.iter().map(|z| z.mul_zeta(k)).collect(),
        }
    }

    /// Exponents `k_x` when every amplitude is exactly `ζ^{k_x}`.
    pub(crate) fn phase_exponents(&self) -> Option<Vec<u8>> {
        self.amps
            .iter()
            .map(|z| match z.as_monomial() {
                Some((u, k)) if u.is_one() => Some(k as u8),
                _ => None,
            })
            .collect()
    }
}

pub fn state_from_function(f: &LogicFunction) -> StateVector {
    StateVector::from_function(f)
}

pub fn apply_error<T: CycloCoeff>(s: &StateVector<T>, e: &PauliLabel) -> Result<StateVector<T>> {
    s.apply_error(e)
}

pub fn inner_product<T: CycloCoeff>(s: &StateVector<T>, t: &StateVector<T>) -> Result<CycloInt<T>> {
    s.inner_product(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_algebra::FpVec;
    use crate::Cyclo;
    use num_bigint::BigInt;

    fn ints(s: &StateVector) -> Vec<i64> {
        s.amps().iter().map(|z| z.to_integer().unwrap()).collect()
    }

    #[test]
    fn function_states() {
        let p = Prime::TWO;
        let zero = state_from_function(&LogicFunction::zero(p, 2));
        assert_eq!(ints(&zero), vec![1, 1, 1, 1]);
        let f = LogicFunction::parse_anf("x1*x2", p, 2).unwrap();
        assert_eq!(ints(&state_from_function(&f)), vec![1, 1, 1, -1]);
        let norm = zero.inner_product(&zero).unwrap();
        assert_eq!(norm.to_integer(), Some(4));
    }

    #[test]
    fn error_action() {
        let p = Prime::THREE;
        let zero = state_from_function(&LogicFunction::zero(p, 2));
        assert_eq!(zero.apply_error(&PauliLabel::identity(p, 2)).unwrap(), zero);
        let e = PauliLabel::new(FpVec::zeros(p, 2), FpVec::unit(p, 2, 0)).unwrap();
        let x1 = state_from_function(&LogicFunction::parse_anf("x1", p, 2).unwrap());
        assert_eq!(zero.apply_error(&e).unwrap(), x1);
        assert!(zero.apply_error(&PauliLabel::identity(p, 3)).is_err());
    }

    #[test]
    fn linear_difference_is_orthogonal() {
        let p = Prime::new(5).unwrap();
        let f = LogicFunction::parse_anf("x1*x2 + 3*x1^2", p, 2).unwrap();
        let g = LogicFunction::parse_anf("x1*x2 + 3*x1^2 + 2*x2", p, 2).unwrap();
        let ip = state_from_function(&f)
            .inner_product(&state_from_function(&g))
            .unwrap();
        assert!(ip.is_zero());
    }

    #[test]
    fn bigint_coefficients() {
        let p = Prime::THREE;
        let amps: Vec<CycloInt<BigInt>> = (0..9).map(|k| CycloInt::zeta_pow(p, k)).collect();
        let s = StateVector::new(p, 2, amps).unwrap();
        let ip = s.inner_product(&s).unwrap();
        assert_eq!(ip.to_integer(), Some(BigInt::from(9)));
        assert_eq!(s.phase_exponents().unwrap()[4], 1);
    }

    #[test]
    fn invalid_states() {
        let p = Prime::TWO;
        assert!(StateVector::new(p, 1, vec![Cyclo::zero(p), Cyclo::zero(p)]).is_err());
        assert!(StateVector::new(p, 1, vec![Cyclo::one(p)]).is_err());
    }
}
