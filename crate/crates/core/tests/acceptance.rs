//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cell::RefCell;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::time::{Duration, Instant};

use lindblad_universal::decompose::{canonical_phase, decompose_generator, reduce_term, spectral_split, verify_plan};
use lindblad_universal::lambda_atom::LambdaAtom;
use lindblad_universal::lindblad::{apply_exact, GksGenerator, QuantumState};
use lindblad_universal::numerics::{expm, hermitian_eigenvalues, trace_distance, ComplexMatrix, C64};
use lindblad_universal::sample;
use lindblad_universal::sud::{adjoint_from_generator, adjoint_matrix, structure_constants, GellMannBasis};
use lindblad_universal::trotter::{components, nexp_report, plan_from_norms, run_plan, s2k_schedule, TrotterPlan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// State statistics gathered by criteria 3 and 4 for criterion 6.
#[derive(Default)]
struct StateLog {
    count: usize,
    worst_trace: f64,
    worst_min_eig: f64,
}

thread_local! {
    static LOG: RefCell<StateLog> = RefCell::new(StateLog {
        worst_min_eig: f64::INFINITY,
        ..Default::default()
    });
}

fn record(rho: &ComplexMatrix) {
    let tr = (rho.trace() - C64::new(1.0, 0.0)).norm();
    let min = hermitian_eigenvalues(rho)
        .expect("hermitian")
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    LOG.with(|l| {
        let mut l = l.borrow_mut();
        l.count += 1;
        l.worst_trace = l.worst_trace.max(tr);
        l.worst_min_eig = l.worst_min_eig.min(min);
    });
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn criterion_1() -> Check {
    let (g1, g2) = (1.3, 0.7);
    let atom = LambdaAtom {
        gamma1: g1,
        gamma2: g2,
        ..LambdaAtom::default()
    };
    let g = atom.generator().map_err(err)?;
    let a = g.gks_matrix();
    let s3 = 3f64.sqrt();
    let want = [
        ((3, 3), c(g1 / 8.0, 0.0)),
        ((3, 4), c(s3, -3.0) * (g1 / 16.0)),
        ((3, 7), c(3.0, s3) * (g1 / 16.0)),
        ((4, 6), c(-3.0, s3) * (g1 / 16.0)),
        ((5, 5), c((2.0 + s3) / 4.0 * g2, 0.0)),
        ((5, 8), c(0.0, g2 / 4.0)),
        ((8, 8), c((2.0 - s3) / 4.0 * g2, 0.0)),
    ];
    let mut worst = 0.0f64;
    for ((i, j), w) in want {
        let got = a[(i - 1, j - 1)];
        worst = worst.max((got - w).norm());
        ensure!((got - w).norm() <= 1e-12, "a_{i},{j} = {got}, expected {w}");
    }
    Ok(format!("7 printed entries, max deviation {worst:.1e}"))
}

fn criterion_2() -> Check {
    let g = LambdaAtom::default().generator().map_err(err)?;
    let basis = g.basis();
    let terms = spectral_split(&g).map_err(err)?;
    ensure!(terms.len() == 2, "expected 2 terms, got {}", terms.len());
    ensure!(
        (terms[0].lambda - 1.0).abs() <= 1e-10 && (terms[1].lambda - 1.0).abs() <= 1e-10,
        "eigenvalues {} {}",
        terms[0].lambda,
        terms[1].lambda
    );
    let k = 2.0 + 3f64.sqrt();
    let n = (1.0 + k * k).sqrt();
    let mut a2 = [c(0.0, 0.0); 8];
    a2[4] = c(0.0, k / n);
    a2[7] = c(1.0 / n, 0.0);
    let overlap: C64 = a2.iter().zip(&terms[1].vector).map(|(w, v)| w.conj() * v).sum();
    ensure!((overlap.norm() - 1.0).abs() <= 1e-10, "a2 overlap {}", overlap.norm());

    let theta2 = (k / n).acos();
    let c1 = canonical_phase(&terms[0].vector).map_err(err)?;
    let c2 = canonical_phase(&terms[1].vector).map_err(err)?;
    ensure!(c1.psi.abs() <= 1e-12, "psi1 = {}", c1.psi);
    ensure!((c1.theta - FRAC_PI_4).abs() <= 1e-12, "theta1 = {}", c1.theta);
    ensure!((c2.psi - FRAC_PI_2).abs() <= 1e-12, "psi2 = {}", c2.psi);
    ensure!((c2.theta - theta2).abs() <= 1e-12, "theta2 = {}", c2.theta);

    let r1 = reduce_term(&terms[0], basis).map_err(err)?;
    let diag = ComplexMatrix::from_diag(&[c(0.0, FRAC_1_SQRT_2), c(0.0, -FRAC_1_SQRT_2), c(0.0, 0.0)]);
    let dev = r1.real_diagonal.max_abs_diff(&diag);
    ensure!(dev <= 1e-10, "reduced real part deviates by {dev:.2e}");
    let want = [FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, 3.0 * FRAC_PI_2];
    let alpha = &r1.plan.params.alpha_i;
    ensure!(alpha.len() == 5, "alpha_I has {} angles", alpha.len());
    for (a, w) in alpha.iter().zip(want) {
        ensure!((a - w).abs() <= 1e-10, "alpha_I = {alpha:?}");
    }
    Ok("eigenvalues, phases, reduced diagonal and angles match".into())
}

fn random_generator(rng: &mut ChaCha8Rng, d: usize, max_rank: usize) -> GksGenerator {
    let rank = rng.gen_range(1..=max_rank);
    let h_scale = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.1..2.0) };
    sample::gks_generator(rng, d, rank, h_scale)
}

fn random_state(rng: &mut ChaCha8Rng, d: usize) -> QuantumState {
    let rho = if rng.gen_bool(0.5) {
        sample::pure_state(rng, d)
    } else {
        sample::density_matrix(rng, d)
    };
    QuantumState::new(rho).expect("sampled state is valid")
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc3);
    let (mut worst_plan, mut worst_total, mut terms) = (0.0f64, 0.0f64, 0usize);
    for d in 2..=4 {
        let n = d * d - 1;
        for _ in 0..200 {
            let g = random_generator(&mut rng, d, n);
            let basis = g.basis();
            let dec = decompose_generator(&g).map_err(err)?;
            for (term, plan) in dec.terms.iter().zip(&dec.plans) {
                let res = verify_plan(plan, term, basis).map_err(err)?;
                worst_plan = worst_plan.max(res);
                ensure!(res <= 1e-8, "d={d}: plan residual {res:.2e}");
                terms += 1;
            }
            let total = dec.reassemble(basis).map_err(err)?.distance(&g.liouvillian());
            worst_total = worst_total.max(total);
            ensure!(total <= 1e-8, "d={d}: reassembly residual {total:.2e}");
            let rho = random_state(&mut rng, d);
            record(apply_exact(&g, &rho, rng.gen_range(0.1..2.0)).map_err(err)?.matrix());
        }
    }
    Ok(format!(
        "600 generators, {terms} terms, worst plan {worst_plan:.1e}, worst reassembly {worst_total:.1e}"
    ))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc4);
    let (mut worst_ratio, mut worst_cost, mut runs) = (0.0f64, 0.0f64, 0usize);
    for (d, count) in [(2usize, 50usize), (3, 20)] {
        for _ in 0..count {
            let g = random_generator(&mut rng, d, 3);
            let basis = g.basis();
            let dec = decompose_generator(&g).map_err(err)?;
            let comps = components(&dec, basis).map_err(err)?;
            ensure!(comps.len() <= 4, "m = {}", comps.len());
            let norms: Vec<f64> = comps.iter().map(|c| c.norm).collect();
            let states = [random_state(&mut rng, d), random_state(&mut rng, d)];
            for t in [0.5, 1.0, 2.0] {
                for eps in [1e-2, 1e-3] {
                    let plan = plan_from_norms(&norms, eps, t).map_err(err)?;
                    let report = nexp_report(&plan);
                    let n = report.n_exp_actual as f64;
                    ensure!(
                        report.within_bounds(),
                        "d={d} t={t} eps={eps}: N_exp {n} vs bounds {:.1} / {:.1}",
                        report.n_exp_bound_res,
                        report.n_exp_bound_closed_form
                    );
                    if plan.m > 1 {
                        worst_cost = worst_cost.max(n / report.n_exp_bound_res.min(report.n_exp_bound_closed_form));
                    }
                    for rho in &states {
                        let out = run_plan(&plan, &comps, basis, rho).map_err(err)?;
                        let exact = apply_exact(&g, rho, t).map_err(err)?;
                        let dist = trace_distance(out.matrix(), exact.matrix()).map_err(err)?;
                        worst_ratio = worst_ratio.max(dist / eps);
                        ensure!(dist <= eps, "d={d} m={} t={t} eps={eps}: distance {dist:.3e}", plan.m);
                        record(out.matrix());
                        record(exact.matrix());
                        runs += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{runs} runs, worst error/eps {worst_ratio:.2e}, worst split N_exp/bound {worst_cost:.3}"
    ))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc5);
    let mut worst = [0.0f64; 4];
    for d in 2..=5 {
        let basis = GellMannBasis::new(d).map_err(err)?;
        let f = structure_constants(&basis);
        let n = d * d - 1;
        let id = ComplexMatrix::identity(n);
        for _ in 0..100 {
            let u = sample::unitary(&mut rng, d);
            let v = sample::unitary(&mut rng, d);
            let gu = adjoint_matrix(&u, &basis).map_err(err)?;
            let gv = adjoint_matrix(&v, &basis).map_err(err)?;
            let m = gu.matrix();
            let orth = (&(&m.transpose() * m) - &id).max_abs();
            let inv = m.transpose().max_abs_diff(adjoint_matrix(&u.adjoint(), &basis).map_err(err)?.matrix());
            let hom = adjoint_matrix(&(&u * &v), &basis)
                .map_err(err)?
                .matrix()
                .max_abs_diff(&(m * gv.matrix()));
            let r = sample::ball_vector(&mut rng, n, 2.0);
            let h = basis.combine(&r.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>()).map_err(err)?;
            let w = expm(&h.scale(c(0.0, 1.0))).map_err(err)?;
            let ad = adjoint_matrix(&w, &basis).map_err(err)?;
            let exp = ad.matrix().max_abs_diff(&adjoint_from_generator(&r, &f).map_err(err)?);
            for (slot, (v, tol, name)) in [(orth, 1e-10, "orthogonality"), (inv, 1e-10, "inverse"), (hom, 1e-10, "homomorphism"), (exp, 1e-8, "exponential")]
                .into_iter()
                .enumerate()
            {
                worst[slot] = worst[slot].max(v);
                ensure!(v <= tol, "d={d}: {name} deviation {v:.2e}");
            }
        }
    }
    Ok(format!(
        "400 unitaries, worst {:.1e} / {:.1e} / {:.1e} / {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

fn criterion_6() -> Check {
    let (count, tr, min) = LOG.with(|l| {
        let l = l.borrow();
        (l.count, l.worst_trace, l.worst_min_eig)
    });
    ensure!(count > 0, "no states recorded");
    ensure!(tr <= 1e-9, "trace deviation {tr:.2e}");
    ensure!(min >= -1e-8, "min eigenvalue {min:.2e}");
    Ok(format!("{count} states, worst |tr-1| {tr:.1e}, min eigenvalue {min:.1e}"))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc7);
    let mut thetas = Vec::new();
    for _ in 0..100 {
        let g = random_generator(&mut rng, 2, 3);
        let dec = decompose_generator(&g).map_err(err)?;
        for plan in &dec.plans {
            let (ar, ai) = plan.params.universal_vectors();
            ensure!(ar == [1.0, 0.0, 0.0] && ai == [0.0, 1.0, 0.0], "vectors {ar:?} {ai:?}");
            ensure!(
                plan.params.alpha_r.is_empty() && plan.params.alpha_i.is_empty(),
                "qubit plan carries angles"
            );
            thetas.push(plan.params.theta);
        }
    }
    let spread = thetas.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - thetas.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(format!("{} qubit terms, theta spread {spread:.3}", thetas.len()))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc8);
    let g = sample::gks_generator(&mut rng, 2, 2, 1.0);
    let basis = g.basis();
    let comps = components(&decompose_generator(&g).map_err(err)?, basis).map_err(err)?;
    ensure!(comps.len() == 3, "m = {}", comps.len());
    let norms: Vec<f64> = comps.iter().map(|c| c.norm).collect();
    let t = 1.0;
    let states: Vec<QuantumState> = (0..4).map(|_| random_state(&mut rng, 2)).collect();
    let exact: Vec<QuantumState> = states.iter().map(|s| apply_exact(&g, s, t)).collect::<Result<_, _>>().map_err(err)?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for n_reps in [4usize, 6, 10, 16, 25, 40] {
        let lambda = t * norms[0] / n_reps as f64;
        let plan = TrotterPlan {
            k: 1,
            r: n_reps as f64 / norms[0],
            n_reps,
            lambda,
            schedule: s2k_schedule(3, 1, lambda).map_err(err)?,
            m: 3,
            norms: norms.clone(),
            t,
            epsilon: 1.0,
            predicted_error: 1.0,
            n_exp: 0,
            x: 0.0,
        };
        let mut e = 0.0f64;
        for (s, x) in states.iter().zip(&exact) {
            let out = run_plan(&plan, &comps, basis, s).map_err(err)?;
            e = e.max(trace_distance(out.matrix(), x.matrix()).map_err(err)?);
        }
        xs.push(lambda.ln());
        ys.push(e.ln());
    }
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    ensure!((slope - 2.0).abs() <= 0.2, "slope {slope:.3}");
    Ok(format!("log-log slope {slope:.3} over one decade of step size"))
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() {
    let criteria: [Criterion; 8] = [
        ("Λ-atom GKS matrix", criterion_1, Duration::from_secs(1)),
        ("Λ-atom decomposition", criterion_2, Duration::from_secs(1)),
        ("universal-form verification", criterion_3, Duration::from_secs(60)),
        ("Trotter error bound and cost", criterion_4, Duration::from_secs(300)),
        ("adjoint representation", criterion_5, Duration::from_secs(30)),
        ("CPTP properties", criterion_6, Duration::from_secs(1)),
        ("qubit specialisation", criterion_7, Duration::from_secs(5)),
        ("second-order convergence", criterion_8, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({elapsed:.2?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({elapsed:.2?}) {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
