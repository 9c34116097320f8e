//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::f64::consts::FRAC_PI_4;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use dla_core::closure::span_equals_with_tolerance;
use dla_core::oracle::{clifford_matrix, dense_closure_dim, exp_i, pauli_to_matrix};
use dla_core::{
    bracket, build_equivariant_ansatz, build_rzz_decomposition, clifford_conjugate, compare_modes,
    conjugated_generators, contains, lie_closure, naive_generators, reduce_against_basis, ClosureConfig,
    CliffordGate, EquivariantAnsatzSpec, Pauli, PauliString, PauliSum, Topology,
};
use num_complex::Complex64;
use rand::Rng;

type Outcome = Result<String, String>;

fn sum(s: &str) -> PauliSum {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cnot_generator() -> PauliSum {
    sum("II - IX - ZI + ZX")
}

fn listed_five() -> Vec<PauliSum> {
    vec![cnot_generator(), sum("IZ"), sum("IY - ZY"), sum("-IZ + ZZ"), sum("-IX + ZX")]
}

fn ac1_five_element_closure() -> Outcome {
    let tol = 1e-8;
    let start = Instant::now();
    let r = lie_closure(&[cnot_generator(), sum("IZ")], &ClosureConfig::default().with_tolerance(tol))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.closed, || "closure did not complete".into())?;
    ensure(r.dimension == 5, || format!("dimension {} != 5", r.dimension))?;
    let listed = listed_five();
    ensure(span_equals_with_tolerance(&r.basis, &listed, tol), || "span mismatch".into())?;
    let worst = listed
        .iter()
        .map(|e| reduce_against_basis(e, &r.basis).unwrap().norm() / e.norm())
        .fold(0.0, f64::max);
    ensure(worst < tol, || format!("listed element residual {worst:e}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("dimension 5, max residual {worst:.1e}, {elapsed:?}"))
}

fn ac2_cnot_exponential() -> Outcome {
    let u = exp_i(FRAC_PI_4, &cnot_generator()).map_err(|e| e.to_string())?;
    let cnot = clifford_matrix(&CliffordGate::Cnot { control: 0, target: 1 }, 2).unwrap();
    let diff = u.max_abs_diff(&cnot);
    ensure(diff <= 1e-10, || format!("max entry diff {diff:e}"))?;
    Ok(format!("max entry diff {diff:.1e}"))
}

fn ac3_corrected_mode_contrast() -> Outcome {
    let c = build_rzz_decomposition();
    let conj = conjugated_generators(&c).map_err(|e| e.to_string())?;
    // dense check of the pulled-back generator
    let cnot = clifford_matrix(&CliffordGate::Cnot { control: 0, target: 1 }, 2).unwrap();
    let dense_pulled = pauli_to_matrix(&"IZ".parse().unwrap()).unwrap().conjugate_by(&cnot);
    let zz = pauli_to_matrix(&"ZZ".parse().unwrap()).unwrap();
    ensure(dense_pulled.max_abs_diff(&zz) < 1e-12, || "dense CNOT†(IZ)CNOT != ZZ".into())?;
    let u = circuit_unitary(&c, &[0.731]);
    ensure(u.max_abs_diff(&exp_i(-0.731, &sum("ZZ")).unwrap()) < 1e-12, || "circuit is not a ZZ rotation".into())?;
    ensure(dense_closure_dim(&conj.generators).unwrap() == 1, || "dense closure of conjugated set != 1".into())?;

    let cfg = ClosureConfig::default();
    let cmp = compare_modes(&c, &cfg).map_err(|e| e.to_string())?;
    ensure(span_equals_with_tolerance(&cmp.conjugated.basis, &[sum("ZZ")], 1e-8), || {
        format!("conjugated span is not span{{ZZ}}: {:?}", cmp.conjugated.basis)
    })?;
    ensure(cmp.conjugated.dimension == 1, || format!("conjugated dim {}", cmp.conjugated.dimension))?;
    ensure(cmp.naive.dimension == 5, || format!("naive dim {}", cmp.naive.dimension))?;
    Ok("conjugated span{ZZ} dim 1 vs naive dim 5".into())
}

fn ac4_oracle_sweep() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(4);
    let sets = 250;
    for k in 0..sets {
        let n = rng.gen_range(1..=3);
        let gens = random_generator_set(&mut rng, n, 4);
        let symbolic = lie_closure(&gens, &ClosureConfig::default()).map_err(|e| e.to_string())?;
        let dense = dense_closure_dim(&gens).map_err(|e| e.to_string())?;
        ensure(symbolic.closed && symbolic.dimension == dense, || {
            format!("set {k} {gens:?}: symbolic {} vs dense {dense}", symbolic.dimension)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{sets} sets agree, {elapsed:?}"))
}

fn ac5_subset_theorem() -> Outcome {
    let mut rng = rng(5);
    let circuits = 150;
    let mut checked = 0;
    for k in 0..circuits {
        let c = random_cnot_cz_circuit(&mut rng, 6);
        let cmp = compare_modes(&c, &ClosureConfig::default()).map_err(|e| e.to_string())?;
        ensure(cmp.naive.closed && cmp.conjugated.closed, || format!("circuit {k} did not close"))?;
        for b in &cmp.conjugated.basis {
            ensure(contains(&cmp.naive, b), || {
                format!("circuit {k}: {b} not in naive DLA\n{}", dla_core::format_circuit(&c))
            })?;
            checked += 1;
        }
        ensure(cmp.subset_verified, || format!("circuit {k}: subset flag false"))?;
    }
    Ok(format!("{circuits} circuits, {checked} elements contained"))
}

fn ac6_algebra_properties() -> Outcome {
    let mut rng = rng(6);
    for _ in 0..500 {
        let n = rng.gen_range(1..=3);
        let a = random_int_sum(&mut rng, n, 5, 3);
        let b = random_int_sum(&mut rng, n, 5, 3);
        let ab = bracket(&a, &b).unwrap();
        ensure(ab == bracket(&b, &a).unwrap().scale(-1.0), || format!("antisymmetry fails for {a} , {b}"))?;
    }
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=3);
        let [a, b, c] = [0, 1, 2].map(|_| random_int_sum(&mut rng, n, 4, 3));
        let t1 = bracket(&a, &bracket(&b, &c).unwrap()).unwrap();
        let t2 = bracket(&b, &bracket(&c, &a).unwrap()).unwrap();
        let t3 = bracket(&c, &bracket(&a, &b).unwrap()).unwrap();
        let norm = t1.checked_add(&t2).unwrap().checked_add(&t3).unwrap().norm();
        worst = worst.max(norm);
    }
    ensure(worst < 1e-9, || format!("Jacobi residual {worst:e}"))?;

    let cfg = ClosureConfig::default();
    for k in 0..100 {
        let n = rng.gen_range(1..=3);
        let gens = random_generator_set(&mut rng, n, 4);
        let r = lie_closure(&gens, &cfg).unwrap();
        let again = lie_closure(&r.basis, &cfg).unwrap();
        ensure(again.dimension == r.dimension, || format!("set {k}: idempotence {} vs {}", again.dimension, r.dimension))?;
        let mut shuffled = gens.clone();
        shuffled.rotate_left(1);
        shuffled.reverse();
        let s = lie_closure(&shuffled, &cfg).unwrap();
        ensure(s.dimension == r.dimension && dla_core::span_equals(&s.basis, &r.basis), || {
            format!("set {k}: order dependence")
        })?;
        let factor = rng.gen_range(0.05..20.0);
        let scaled: Vec<PauliSum> = gens.iter().map(|g| g.scale(factor)).collect();
        let sc = lie_closure(&scaled, &cfg).unwrap();
        ensure(sc.dimension == r.dimension && dla_core::span_equals(&sc.basis, &r.basis), || {
            format!("set {k}: scale dependence")
        })?;
    }
    Ok(format!("antisymmetry exact x500, Jacobi max {worst:.1e} x500, closure invariances x100"))
}

fn conjugation_mismatch(p: &PauliString, g: &CliffordGate) -> f64 {
    let (sign, q) = clifford_conjugate(p, 1, g).unwrap();
    let u = clifford_matrix(g, p.n_qubits()).unwrap();
    let dense = pauli_to_matrix(p).unwrap().conjugate_by(&u);
    let tableau = pauli_to_matrix(&q).unwrap().scale(Complex64::new(sign as f64, 0.0));
    dense.max_abs_diff(&tableau)
}

fn ac7_tableau_fidelity() -> Outcome {
    let ops = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let gates2 = [
        CliffordGate::Cnot { control: 0, target: 1 },
        CliffordGate::Cnot { control: 1, target: 0 },
        CliffordGate::Cz(0, 1),
        CliffordGate::H(0),
        CliffordGate::H(1),
        CliffordGate::S(0),
        CliffordGate::S(1),
        CliffordGate::Sdg(0),
        CliffordGate::Sdg(1),
    ];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for g in &gates2 {
        for a in ops {
            for b in ops {
                worst = worst.max(conjugation_mismatch(&PauliString::from_paulis(&[a, b]), g));
                count += 1;
            }
        }
    }
    let mut rng = rng(7);
    for _ in 0..300 {
        let p = random_string(&mut rng, 3);
        let g = random_clifford(&mut rng, 3, false);
        worst = worst.max(conjugation_mismatch(&p, &g));
        count += 1;
    }
    ensure(worst <= 1e-10, || format!("max mismatch {worst:e}"))?;
    Ok(format!("{count} conjugations, max mismatch {worst:.1e}"))
}

fn ac8_equivariant_ansatz() -> Outcome {
    let cfg = ClosureConfig::default();
    let mut lines = Vec::new();
    for n in 2..=4 {
        for n_rad in 1..=n {
            let mut prev: Option<(usize, usize)> = None;
            for layers in 1..=2 {
                let spec = EquivariantAnsatzSpec { n_qubits: n, n_rad, layers, topology: Topology::Chain };
                let c = build_equivariant_ansatz(&spec).map_err(|e| e.to_string())?;
                let cmp = compare_modes(&c, &cfg).map_err(|e| e.to_string())?;
                let dims = (cmp.naive.dimension, cmp.conjugated.dimension);
                ensure(cmp.naive.closed && cmp.conjugated.closed, || format!("{spec:?} did not close"))?;
                ensure(cmp.subset_verified, || format!("{spec:?}: subset not verified"))?;
                ensure(dims.1 <= dims.0, || format!("{spec:?}: conjugated exceeds naive"))?;
                if let Some(p) = prev {
                    ensure(dims.0 >= p.0 && dims.1 >= p.1, || format!("{spec:?}: dims {dims:?} shrank from {p:?}"))?;
                }
                if n <= 3 {
                    let dn = dense_closure_dim(&naive_generators(&c).unwrap()).map_err(|e| e.to_string())?;
                    let dc = dense_closure_dim(&conjugated_generators(&c).unwrap().generators)
                        .map_err(|e| e.to_string())?;
                    ensure((dn, dc) == dims, || format!("{spec:?}: dense {:?} vs symbolic {dims:?}", (dn, dc)))?;
                }
                prev = Some(dims);
                lines.push(format!("n{n}r{n_rad}l{layers}={}/{}", dims.0, dims.1));
            }
        }
    }
    Ok(format!("naive/conjugated dims: {}", lines.join(" ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 five-element closure", ac1_five_element_closure),
        ("AC2 CNOT exponential identity", ac2_cnot_exponential),
        ("AC3 corrected-mode contrast", ac3_corrected_mode_contrast),
        ("AC4 dense oracle sweep", ac4_oracle_sweep),
        ("AC5 subset theorem", ac5_subset_theorem),
        ("AC6 algebra properties", ac6_algebra_properties),
        ("AC7 Clifford tableau fidelity", ac7_tableau_fidelity),
        ("AC8 equivariant ansatz", ac8_equivariant_ansatz),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
