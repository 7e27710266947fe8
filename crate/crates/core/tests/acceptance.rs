//! Exit criteria for the library. Each criterion prints one PASS/FAIL line;
//! run with `cargo test -p rotalg-core --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use rand::Rng;
use rotalg::bundle::{
    check_membership, classify_isomorphic, clutching_winding, fourier_coefficients,
    synthesize_section, SectionGrid,
};
use rotalg::matrix::{
    clock_matrix, gram_matrix, identity, shift_matrix, spectral_norm,
};
use rotalg::params::{coprime_pairs, root_of_unity};
use rotalg::reps::{
    commutant_dimension, eigenvalue_signature, rep_evaluate, reps_equivalent, signatures_match,
    Generator,
};
use rotalg::spectral::{
    butterfly, operator_norm, projection_as_polynomial, spectral_decomposition,
    spectrum_selfadjoint, write_butterfly_csv, TorusGrid,
};
use rotalg::{Complex64, ComplexMatrix, NCLaurentPoly, RepPoint};

use common::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    check(elapsed.as_secs_f64() < limit_s, || {
        format!("runtime {:.2}s exceeds {limit_s}s", elapsed.as_secs_f64())
    })
}

fn ac1_commutation_and_basis() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for (p, q) in coprime_pairs(32) {
        let m = params(p as i64, q as i64);
        let u = shift_matrix(&m);
        let v = clock_matrix(&m);
        let comm = (&u * &v - &v * &u * m.omega()).norm();
        check(comm <= 1e-12, || format!("({p},{q}) commutator {comm:e}"))?;

        let qd = q as usize;
        let gram_err = max_abs(&(gram_matrix(&m) - identity(qd * qd) * Complex64::new(q as f64, 0.0)));
        check(gram_err <= 1e-10, || format!("({p},{q}) Gram error {gram_err:e}"))?;

        let id = identity(qd);
        let order = (u.pow(q) - &id).norm().max((v.pow(q) - &id).norm());
        check(order <= 1e-12, || format!("({p},{q}) order defect {order:e}"))?;
        worst = (worst.0.max(comm), worst.1.max(gram_err), worst.2.max(order));
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!(
        "max commutator {:.1e}, Gram {:.1e}, order {:.1e}, {:.2}s",
        worst.0,
        worst.1,
        worst.2,
        start.elapsed().as_secs_f64()
    ))
}

fn ac2_normal_form_oracle() -> Outcome {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    for q in [2i64, 3, 5, 7] {
        for _ in 0..200 {
            let m = random_params(&mut rng, q);
            let a = random_poly(&mut rng, m, 8, 5);
            let b = random_poly(&mut rng, m, 8, 5);
            let prod = a.multiply(&b).unwrap();
            let adj = a.adjoint();
            for _ in 0..5 {
                let pt = random_point(&mut rng);
                let (ma, mb) = (direct_eval(&a, &pt), direct_eval(&b, &pt));
                let e1 = max_abs(&(rep_evaluate(&prod, &pt) - &ma * &mb));
                let e2 = max_abs(&(rep_evaluate(&adj, &pt) - ma.adjoint()));
                let e3 = max_abs(&(rep_evaluate(&a, &pt) - &ma));
                let err = e1.max(e2).max(e3);
                check(err <= 1e-10, || format!("q={q}: error {err:e}"))?;
                worst = worst.max(err);
            }
        }
    }
    Ok(format!("800 polynomials x 5 points, max error {worst:.1e}"))
}

fn ac3_norm_reproduction() -> Outcome {
    let m = params(1, 2);
    let grid = TorusGrid::new(64, 64).unwrap();
    // Harper at q=2: eigenvalues ±2√(cos²φ₁ + cos²φ₂), so the norm is 2√2.
    let harper = operator_norm(&NCLaurentPoly::harper(m), &grid, 3);
    let harper_expected = 2.0 * 2f64.sqrt();
    check((harper - harper_expected).abs() <= 1e-6, || {
        format!("Harper norm {harper} vs {harper_expected}")
    })?;
    // ‖z₁U₀ + z₂V₀‖² = 2 + 2|Im(z₁ z̄₂)|, maximized at 4.
    let upv = operator_norm(&NCLaurentPoly::parse("U+V", m).unwrap(), &grid, 3);
    check((upv - 2.0).abs() <= 1e-6, || format!("‖U+V‖ = {upv} vs 2"))?;
    Ok(format!("‖Harper‖ = {harper:.10}, ‖U+V‖ = {upv:.10}"))
}

fn ac4_spectrum_properties() -> Outcome {
    let start = Instant::now();
    let grid = TorusGrid::default();
    let mut spectra = std::collections::BTreeMap::new();
    for (p, q) in coprime_pairs(10) {
        let m = params(p as i64, q as i64);
        let s = spectrum_selfadjoint(&NCLaurentPoly::harper(m), &grid, None).unwrap();
        check(s.len() <= q as usize, || format!("({p},{q}) has {} bands", s.len()))?;
        let mirrored: Vec<(f64, f64)> =
            s.intervals.iter().rev().map(|&(lo, hi)| (-hi, -lo)).collect();
        check(mirrored.len() == s.len(), || "mirror length".into())?;
        for (a, b) in s.intervals.iter().zip(&mirrored) {
            let d = (a.0 - b.0).abs().max((a.1 - b.1).abs());
            check(d <= 1e-8, || format!("({p},{q}) not symmetric under E -> -E: {d:e}"))?;
        }
        spectra.insert((p, q), s);
    }
    let mut worst = 0.0f64;
    for (&(p, q), s) in &spectra {
        let partner = &spectra[&(q - p, q)];
        check(partner.len() == s.len(), || {
            format!("({p},{q}) and ({},{q}) differ in band count", q - p)
        })?;
        for (a, b) in s.intervals.iter().zip(&partner.intervals) {
            let d = (a.0 - b.0).abs().max((a.1 - b.1).abs());
            worst = worst.max(d);
            check(d <= 1e-8, || format!("({p},{q}) vs ({},{q}): {d:e}", q - p))?;
        }
    }
    within(start.elapsed(), 60.0)?;
    Ok(format!(
        "{} algebras, max partner deviation {worst:.1e}, {:.2}s",
        spectra.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn ac5_rep_equivalence() -> Outcome {
    let mut rng = rng(5);
    let (mut equivalent, mut total) = (0, 0);
    for q in 2..=8i64 {
        let m = random_params(&mut rng, q);
        for i in 0..100 {
            let a = random_point(&mut rng);
            let b = match i % 4 {
                // same class: multiply by q-th roots of unity
                0 | 1 => RepPoint::new(
                    a.z1() * root_of_unity(rng.gen_range(0..q), q as u32),
                    a.z2() * root_of_unity(rng.gen_range(0..q), q as u32),
                )
                .unwrap(),
                // one coordinate matches up to a root, the other is fresh
                2 => RepPoint::new(
                    a.z1() * root_of_unity(rng.gen_range(0..q), q as u32),
                    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU)),
                )
                .unwrap(),
                _ => random_point(&mut rng),
            };
            let claimed = reps_equivalent(&a, &b, q as u32, 1e-9);
            let by_spectrum = [Generator::U, Generator::V].into_iter().all(|g| {
                signatures_match(
                    &eigenvalue_signature(g, &a, &m),
                    &eigenvalue_signature(g, &b, &m),
                    1e-9,
                )
            });
            check(claimed == by_spectrum, || {
                format!("q={q}: reps_equivalent={claimed}, signatures match={by_spectrum}")
            })?;
            equivalent += claimed as usize;
            total += 1;
        }
    }
    Ok(format!("{total} pairs agree ({equivalent} equivalent)"))
}

fn ac6_commutant() -> Outcome {
    for q in 2..=8i64 {
        let m = params(1, q);
        let (u, v) = (shift_matrix(&m), clock_matrix(&m));
        let qd = q as usize;
        let irreducible = commutant_dimension(&[u, v.clone()], 1e-9).unwrap();
        let everything = commutant_dimension(&[identity(qd)], 1e-9).unwrap();
        let diagonal = commutant_dimension(&[v], 1e-9).unwrap();
        check(irreducible == 1, || format!("q={q}: dim C(U0,V0) = {irreducible}"))?;
        check(everything == qd * qd, || format!("q={q}: dim C(I) = {everything}"))?;
        check(diagonal == qd, || format!("q={q}: dim C(V0) = {diagonal}"))?;
    }
    Ok("q = 2..8: dims 1, q², q".into())
}

fn ac7_spectral_decomposition() -> Outcome {
    let mut rng = rng(7);
    let mut worst = [0.0f64; 4];
    for q in 2..=16usize {
        for _ in 0..100 {
            let u = haar_unitary(&mut rng, q);
            let fam = spectral_decomposition(&u, 1e-9).unwrap();
            let recon = (fam.reconstruct() - &u).norm();
            check(recon <= 1e-10, || format!("q={q}: reconstruction {recon:e}"))?;

            let mut axiom = 0.0f64;
            let mut total = ComplexMatrix::zeros(q, q);
            for (i, p) in fam.projections.iter().enumerate() {
                axiom = axiom.max(max_abs(&(p - p.adjoint())));
                axiom = axiom.max(max_abs(&(p * p - p)));
                for other in &fam.projections[i + 1..] {
                    axiom = axiom.max(max_abs(&(p * other)));
                }
                total += p;
            }
            axiom = axiom.max(max_abs(&(total - identity(q))));
            check(fam.cumulative(0.0).iter().all(|z| z.norm() == 0.0), || {
                "E_0 is not zero".into()
            })?;
            for &a in &fam.phases {
                let ea = fam.cumulative(a);
                for &b in fam.phases.iter().filter(|&&b| b >= a) {
                    axiom = axiom.max(max_abs(&(&ea * fam.cumulative(b) - &ea)));
                }
            }
            check(axiom <= 1e-10, || format!("q={q}: projection axioms {axiom:e}"))?;

            let mut interp = 0.0f64;
            for k in 0..fam.phases.len() {
                let poly = projection_as_polynomial(&u, &fam, k).unwrap();
                check(poly.coeffs.len() <= fam.phases.len(), || "degree too high".into())?;
                interp = interp.max((poly.eval_unitary(&u) - &fam.projections[k]).norm());
            }
            check(interp <= 1e-9, || format!("q={q}: interpolation residual {interp:e}"))?;

            let mut rs = 0.0f64;
            for eps in [0.5, 0.1] {
                // uniform partition and a jittered one, both with mesh <= eps
                let cells = (TAU / eps).ceil() as usize;
                let uniform: Vec<f64> = (0..=cells).map(|i| TAU * i as f64 / cells as f64).collect();
                let mut jittered = vec![0.0];
                while *jittered.last().unwrap() < TAU {
                    let next = jittered.last().unwrap() + rng.gen_range(0.2 * eps..eps);
                    jittered.push(next.min(TAU));
                }
                for partition in [uniform, jittered] {
                    let err = spectral_norm(&(fam.riemann_stieltjes_sum(&partition) - &u));
                    check(err <= eps, || format!("q={q}: mesh {eps} sum error {err}"))?;
                    rs = rs.max(err / eps);
                }
            }
            worst = [
                worst[0].max(recon),
                worst[1].max(axiom),
                worst[2].max(interp),
                worst[3].max(rs),
            ];
        }
    }
    Ok(format!(
        "1500 unitaries: reconstruction {:.1e}, axioms {:.1e}, interpolation {:.1e}, RS error/mesh {:.2}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

fn ac8_membership_and_fourier() -> Outcome {
    let mut rng = rng(8);
    let mut worst = (0.0f64, 0.0f64);
    for q in [2i64, 3, 5] {
        let n = 8 * q as usize;
        for _ in 0..20 {
            let m = random_params(&mut rng, q);
            let a = random_poly(&mut rng, m, 8, 5);
            let s = synthesize_section(&a, n).unwrap();
            let report = check_membership(&s, 1e-10).unwrap();
            check(report.holds, || format!("q={q}: synthesized section violates by {:e}", report.max_violation))?;
            let table = fourier_coefficients(&s, 5).unwrap();
            let back = synthesize_section(&table.to_poly(m), n).unwrap();
            let err = s.max_distance(&back);
            check(err <= 1e-8, || format!("q={q}: Fourier roundtrip {err:e}"))?;
            worst = (worst.0.max(report.max_violation), worst.1.max(err));
        }
        let m = params(1, q);
        for _ in 0..50 {
            let c = random_matrix(&mut rng, q as usize);
            let s = SectionGrid::constant(m, n, c).unwrap();
            let report = check_membership(&s, 1e-10).unwrap();
            check(!report.holds, || format!("q={q}: constant non-scalar section accepted"))?;
        }
    }
    Ok(format!(
        "max membership violation {:.1e}, max Fourier roundtrip {:.1e}, 150 constants rejected",
        worst.0, worst.1
    ))
}

fn ac9_winding_classification_domination() -> Outcome {
    for (p, q) in coprime_pairs(12) {
        let m = params(p as i64, q as i64);
        let w = clutching_winding(&m, 16 * q as usize * m.r() as usize).unwrap();
        check(w == m.r() as i64, || format!("({p},{q}): winding {w} vs r = {}", m.r()))?;
    }
    let pairs = coprime_pairs(12);
    for &(p, q) in &pairs {
        let rep = p.min(q - p);
        for &(p2, q2) in &pairs {
            let rule = q == q2 && rep == p2.min(q2 - p2);
            let got = classify_isomorphic(p as i64, q as i64, p2 as i64, q2 as i64).unwrap();
            check(got == rule, || format!("({p},{q}) vs ({p2},{q2})"))?;
        }
    }

    let mut rng = rng(9);
    let grid = TorusGrid::default();
    let mut slack = f64::INFINITY;
    for i in 0..100 {
        let q = [2i64, 3, 4, 5][i % 4];
        let m = random_params(&mut rng, q);
        let a = random_poly(&mut rng, m, 8, 5);
        let norm = operator_norm(&a, &grid, 3);
        let pt = random_point(&mut rng);
        let local = spectral_norm(&rep_evaluate(&a, &pt));
        check(local <= norm + 1e-8, || {
            format!("q={q}: ‖ρ(a)‖ = {local} exceeds universal estimate {norm}")
        })?;
        slack = slack.min(norm - local);
    }
    Ok(format!(
        "windings = r for q <= 12, {} classification pairs, domination slack >= {slack:.1e}",
        pairs.len() * pairs.len()
    ))
}

fn butterfly_bytes(threads: usize) -> Vec<u8> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| {
        let rows = butterfly(5, "U+U'+V+V'", &TorusGrid::default()).unwrap();
        let mut buf = Vec::new();
        write_butterfly_csv(&rows, &mut buf).unwrap();
        buf
    })
}

fn ac10_determinism() -> Outcome {
    let first = butterfly_bytes(4);
    let second = butterfly_bytes(4);
    let single = butterfly_bytes(1);
    check(first == second, || "two runs differ".into())?;
    check(first == single, || "1 vs 4 threads differ".into())?;
    let lines = first.iter().filter(|&&b| b == b'\n').count();
    Ok(format!("{} bytes, {lines} lines, identical across runs and 1/4 threads", first.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1 commutation & basis", ac1_commutation_and_basis),
        ("AC2 normal-form oracle", ac2_normal_form_oracle),
        ("AC3 norm reproduction", ac3_norm_reproduction),
        ("AC4 spectrum properties", ac4_spectrum_properties),
        ("AC5 representation equivalence", ac5_rep_equivalence),
        ("AC6 Schur commutant", ac6_commutant),
        ("AC7 spectral decomposition", ac7_spectral_decomposition),
        ("AC8 membership & Fourier", ac8_membership_and_fourier),
        ("AC9 winding & classification", ac9_winding_classification_domination),
        ("AC10 determinism", ac10_determinism),
    ];
    let mut failures = BTreeSet::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                println!("[FAIL] {name}: {detail}");
                failures.insert(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn half_turn_points_are_inequivalent() {
    let base = RepPoint::identity();
    for q in 2..=8u32 {
        let half = RepPoint::from_angles(PI / q as f64, 0.0);
        assert!(!reps_equivalent(&base, &half, q, 1e-9));
    }
}
