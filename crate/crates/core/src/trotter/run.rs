use crate::decompose::{decompose_generator, ConjugationPlan, Decomposition};
use crate::error::{Error, Result};
use crate::lindblad::{hamiltonian_liouvillian, one_one_norm, GksGenerator, QuantumState, Superoperator};
use crate::numerics::{expm, ComplexMatrix, C64};
use crate::sud::GellMannBasis;

use super::{nexp_report, plan_from_norms, CostReport, TrotterPlan};

#[derive(Debug, Clone)]
pub enum ComponentKind {
    Hamiltonian(ComplexMatrix),
    Dissipative(ConjugationPlan),
}

/// One generator of the product formula with its Liouvillian and norm.
#[derive(Debug, Clone)]
pub struct Component {
    pub kind: ComponentKind,
    pub liouvillian: Superoperator,
    pub norm: f64,
}

impl Component {
    pub fn hamiltonian(h: ComplexMatrix) -> Self {
        let liouvillian = hamiltonian_liouvillian(&h);
        let norm = one_one_norm(&liouvillian);
        Self {
            kind: ComponentKind::Hamiltonian(h),
            liouvillian,
            norm,
        }
    }

    pub fn dissipative(plan: ConjugationPlan, basis: &GellMannBasis) -> Result<Self> {
        let liouvillian = plan.liouvillian(basis)?;
        let norm = one_one_norm(&liouvillian);
        Ok(Self {
            kind: ComponentKind::Dissipative(plan),
            liouvillian,
            norm,
        })
    }

    /// `e^{τ L}` for physical time `τ`.
    ///
    /// Hamiltonian parts are exact unitary conjugations; dissipative parts
    /// run the universal semigroup between `U†` and `U`.
    pub fn channel(&self, tau: f64, basis: &GellMannBasis) -> Result<Superoperator> {
        match &self.kind {
            ComponentKind::Hamiltonian(h) => {
                let u = expm(&h.scale(C64::new(0.0, -tau)))?;
                Ok(Superoperator::conjugation(&u))
            }
            ComponentKind::Dissipative(plan) => {
                let inner = plan.universal_liouvillian(basis)?.exp(plan.lambda * tau)?;
                let u = &plan.unitary;
                Ok(Superoperator::conjugation(u)
                    .after(&inner)
                    .after(&Superoperator::conjugation(&u.adjoint())))
            }
        }
    }
}

/// Trotter components of a decomposition, by descending norm.
///
/// The Hamiltonian is included when non-zero; components of zero norm are
/// dropped.
pub fn components(dec: &Decomposition, basis: &GellMannBasis) -> Result<Vec<Component>> {
    let mut out = Vec::with_capacity(dec.plans.len() + 1);
    if dec.hamiltonian.max_abs() > 0.0 {
        out.push(Component::hamiltonian(dec.hamiltonian.clone()));
    }
    for plan in &dec.plans {
        out.push(Component::dissipative(plan.clone(), basis)?);
    }
    out.retain(|c| c.norm > 0.0);
    // stable, so ties keep Hamiltonian-first order
    out.sort_by(|a, b| b.norm.total_cmp(&a.norm));
    Ok(out)
}

/// Executes `plan` on `rho0`.
pub fn run_plan(
    plan: &TrotterPlan,
    components: &[Component],
    basis: &GellMannBasis,
    rho0: &QuantumState,
) -> Result<QuantumState> {
    if components.len() != plan.m {
        return Err(Error::PlanMismatch(format!(
            "plan has {} components, {} supplied",
            plan.m,
            components.len()
        )));
    }
    if basis.d() != rho0.d() {
        return Err(Error::DimensionMismatch {
            expected: basis.d(),
            found: rho0.d(),
        });
    }
    if let Some(c) = components.iter().find(|c| c.liouvillian.d() != rho0.d()) {
        return Err(Error::DimensionMismatch {
            expected: rho0.d(),
            found: c.liouvillian.d(),
        });
    }
    if plan.n_reps == 0 || plan.t == 0.0 {
        return Ok(rho0.clone());
    }
    let l1 = plan.l1();
    let d = rho0.d();
    let mut cache: Vec<(usize, u64, Superoperator)> = Vec::new();
    let mut step = Superoperator::identity(d);
    for seg in &plan.schedule {
        let c = components.get(seg.index).ok_or_else(|| {
            Error::PlanMismatch(format!("segment refers to component {}", seg.index))
        })?;
        let key = (seg.index, seg.duration.to_bits());
        let pos = match cache.iter().position(|(i, b, _)| (*i, *b) == key) {
            Some(p) => p,
            None => {
                cache.push((key.0, key.1, c.channel(seg.duration / l1, basis)?));
                cache.len() - 1
            }
        };
        step = cache[pos].2.after(&step);
    }
    let mut rho = rho0.matrix().clone();
    for _ in 0..plan.n_reps {
        rho = step.apply(&rho)?;
    }
    QuantumState::new((&rho + &rho.adjoint()).scale_real(0.5))
}

#[derive(Debug, Clone)]
pub struct SimulationOutcome {
    pub state: QuantumState,
    /// `None` when the generator is zero.
    pub plan: Option<TrotterPlan>,
    pub report: CostReport,
}

/// Decomposes `g`, plans for accuracy `epsilon`, and runs the product formula.
pub fn simulate(g: &GksGenerator, rho0: &QuantumState, t: f64, epsilon: f64) -> Result<SimulationOutcome> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let basis = g.basis();
    let dec = decompose_generator(g)?;
    let comps = components(&dec, basis)?;
    if comps.is_empty() {
        if rho0.d() != g.d() {
            return Err(Error::DimensionMismatch {
                expected: g.d(),
                found: rho0.d(),
            });
        }
        return Ok(SimulationOutcome {
            state: rho0.clone(),
            plan: None,
            report: CostReport {
                k: 1,
                r: 0.0,
                n_reps: 0,
                n_exp_actual: 0,
                n_exp_bound_res: 0.0,
                n_exp_bound_closed_form: 0.0,
                negative_segments: false,
            },
        });
    }
    let norms: Vec<f64> = comps.iter().map(|c| c.norm).collect();
    let plan = plan_from_norms(&norms, epsilon, t)?;
    let state = run_plan(&plan, &comps, basis, rho0)?;
    let report = nexp_report(&plan);
    Ok(SimulationOutcome {
        state,
        plan: Some(plan),
        report,
    })
}
