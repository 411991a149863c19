//! Three-level Λ atom with collective decay and incoherent driving between
//! the ground levels.
//!
//! Levels are ordered `{|e⟩, |1⟩, |2⟩}` (indices 0, 1, 2), with
//! `L₁ = cos φ |1⟩⟨e| + e^{iη} sin φ |2⟩⟨e|` at rate `γ₁` and
//! `L₂ = cos α |1⟩⟨2| + sin α |2⟩⟨1|` at rate `γ₂`. There is no Hamiltonian.

use std::f64::consts::FRAC_PI_3;

use crate::error::Result;
use crate::lindblad::{from_diagonal, DiagonalGenerator, GksGenerator, LindbladTerm};
use crate::numerics::{real, ComplexMatrix, C64};

pub const EXCITED: usize = 0;
pub const GROUND_1: usize = 1;
pub const GROUND_2: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaAtom {
    pub gamma1: f64,
    pub gamma2: f64,
    pub phi: f64,
    pub eta: f64,
    pub alpha: f64,
}

impl Default for LambdaAtom {
    fn default() -> Self {
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            phi: FRAC_PI_3,
            eta: FRAC_PI_3,
            alpha: FRAC_PI_3,
        }
    }
}

impl LambdaAtom {
    pub fn decay_operator(&self) -> ComplexMatrix {
        let mut l = ComplexMatrix::zeros(3, 3);
        l[(GROUND_1, EXCITED)] = real(self.phi.cos());
        l[(GROUND_2, EXCITED)] = C64::from_polar(self.phi.sin(), self.eta);
        l
    }

    pub fn driving_operator(&self) -> ComplexMatrix {
        let mut l = ComplexMatrix::zeros(3, 3);
        l[(GROUND_1, GROUND_2)] = real(self.alpha.cos());
        l[(GROUND_2, GROUND_1)] = real(self.alpha.sin());
        l
    }

    pub fn diagonal_generator(&self) -> Result<DiagonalGenerator> {
        DiagonalGenerator::new(
            ComplexMatrix::zeros(3, 3),
            vec![
                LindbladTerm {
                    rate: self.gamma1,
                    operator: self.decay_operator(),
                },
                LindbladTerm {
                    rate: self.gamma2,
                    operator: self.driving_operator(),
                },
            ],
        )
    }

    pub fn generator(&self) -> Result<GksGenerator> {
        from_diagonal(&self.diagonal_generator()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_gks_entries() {
        let atom = LambdaAtom {
            gamma1: 1.3,
            gamma2: 0.7,
            ..LambdaAtom::default()
        };
        let a = atom.generator().unwrap();
        let a = a.gks_matrix();
        let (g1, g2) = (atom.gamma1, atom.gamma2);
        let s3 = 3f64.sqrt();
        let at = |i: usize, j: usize| a[(i - 1, j - 1)];
        let want = [
            (at(3, 3), C64::new(g1 / 8.0, 0.0)),
            (at(3, 4), C64::new(s3, -3.0) * (g1 / 16.0)),
            (at(3, 7), C64::new(3.0, s3) * (g1 / 16.0)),
            (at(4, 6), C64::new(-3.0, s3) * (g1 / 16.0)),
            (at(5, 5), real((2.0 + s3) / 4.0 * g2)),
            (at(5, 8), C64::new(0.0, g2 / 4.0)),
            (at(8, 8), real((2.0 - s3) / 4.0 * g2)),
        ];
        for (got, w) in want {
            assert!((got - w).norm() < 1e-12, "{got} vs {w}");
        }
    }

    #[test]
    fn zero_rates_give_zero_generator() {
        let atom = LambdaAtom {
            gamma1: 0.0,
            gamma2: 0.0,
            ..LambdaAtom::default()
        };
        assert!(atom.generator().unwrap().liouvillian().is_zero());
    }
}
