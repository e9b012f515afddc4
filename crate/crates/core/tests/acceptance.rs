//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use homcyc::algebra::yau_twist;
use homcyc::cocycle::{derivation_cocycle, is_cyclic_cocycle, trace_space, TwistedDerivation};
use homcyc::cocycle::{twisted_derivations, Functional};
use homcyc::coefficients::{a_circ, dualize_bimodule, regular_bimodule};
use homcyc::cyclic::{
    cyclic_cohomology, cyclic_homology, lambda_class, lambda_relations, periodic_cohomology, periodic_homology,
    row_defects, Method,
};
use homcyc::hochschild::{
    b_prime, coface_map, cyclic_t, face_map, hochschild_b, hochschild_cohomology, hochschild_homology, homotopy_theta,
    norm_n,
};
use homcyc::{corpus, Error, HomAlgebra, Matrix, Scalar};

type Check = Result<String, String>;

/// Name, check, optional time limit in seconds.
type Criterion = (&'static str, fn() -> Check, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn hh(a: &HomAlgebra, n: usize) -> Result<Vec<usize>, String> {
    Ok(hochschild_homology(&regular_bimodule(a), n, false)
        .map_err(err)?
        .betti())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn two_dim_example() -> Check {
    let a = corpus::two_dim_example();
    ensure(a.find_unit() == Some(vec![Scalar::one(), Scalar::zero()]), || {
        "unit is not e1".into()
    })?;
    ensure(a.is_alpha_idempotent(), || "α² ≠ α".into())?;
    let hh1 = hh(&a, 1)?[1];
    ensure(hh1 == 1, || format!("dim HH_1 = {hh1}"))?;
    let hc1 = cyclic_homology(&a, 1, Method::Lambda, None, false)
        .map_err(err)?
        .betti()[1];
    ensure(hc1 == 0, || format!("dim HC_1 = {hc1}"))?;
    // b(e1⊗e1⊗e2) + 2 e1⊗e2 must vanish in the λ-quotient.
    let mut x = vec![Scalar::zero(); 8];
    x[1] = Scalar::one();
    let bx = hochschild_b(&regular_bimodule(&a), 2).apply(&x);
    let mut diff = bx.clone();
    diff[1] = &diff[1] + &Scalar::from(2i64);
    ensure(lambda_relations(&a, 1).contains(&diff), || {
        "b(e1⊗e1⊗e2) ≠ −2[e1⊗e2]".into()
    })?;
    let class: Vec<String> = lambda_class(&a, 1, &bx)
        .iter()
        .map(|t| format!("{}[{}]", t.coefficient, t.label))
        .collect();
    Ok(format!(
        "unit e1, α²=α, HH_1=1, HC_1=0, b(e1⊗e1⊗e2) ≡ {} = −2[e1⊗e2]",
        class.join(" + ")
    ))
}

fn k2_tower() -> Check {
    let betti = hh(&corpus::k2(), 6)?;
    ensure(betti.iter().all(|&b| b == 1), || format!("betti {betti:?}"))?;
    Ok(format!("HH_0..6 = {betti:?}"))
}

fn non_additivity() -> Check {
    let sum = hh(&corpus::k1_plus_k2(), 5)?;
    let k1 = hh(&corpus::ground_field(), 5)?;
    let k2 = hh(&corpus::k2(), 5)?;
    for n in 0..=5 {
        let bound: usize = (3..=n + 1).map(|j| binomial(n + 1, j)).sum();
        ensure(sum[n] >= bound, || format!("n={n}: {} < {bound}", sum[n]))?;
        if n >= 2 {
            ensure(sum[n] > k1[n] + k2[n], || {
                format!("n={n}: {} ≤ {}", sum[n], k1[n] + k2[n])
            })?;
        }
    }
    Ok(format!(
        "HH(k1⊕k2) = {sum:?}, HH(k1)+HH(k2) = {:?}",
        k1.iter().zip(&k2).map(|(x, y)| x + y).collect::<Vec<_>>()
    ))
}

fn method_equivalence() -> Check {
    let mut names = Vec::new();
    for a in corpus::standard().into_iter().filter(|a| a.dim() <= 2) {
        for (theory, r) in [
            ("HC", cyclic_homology(&a, 4, Method::Both, None, false)),
            ("HC^", cyclic_cohomology(&a, 4, Method::Both, None, false)),
        ] {
            let r = r.map_err(err)?;
            ensure(r.all_agree(), || format!("{theory} of {} disagrees", a.name()))?;
        }
        names.push(a.name().to_string());
    }
    ensure(names.len() >= 5, || "fewer than five algebras".into())?;
    Ok(format!("{} algebras, degrees ≤ 4: {}", names.len(), names.join(", ")))
}

/// Highest degree the identity suite runs at for an algebra of this dimension.
fn suite_degree(a: &HomAlgebra) -> usize {
    match a.dim() {
        0..=3 => 5,
        // M2 at degree 4 needs 4096 × 4096 dense rational matrices.
        _ => 3,
    }
}

fn identity_suite_on(a: &HomAlgebra, top: usize) -> Result<(), String> {
    let v = regular_bimodule(a);
    let w = dualize_bimodule(&v).map_err(err)?;
    let name = a.name();
    let dim = |n: usize| a.dim().pow(n as u32 + 1);
    let face = |n, i| face_map(&v, n, i).map_err(err);
    let coface = |n, i| coface_map(&w, n, i).map_err(err);
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                let lhs = face(n - 1, i)?.matmul(&face(n, j)?);
                let rhs = face(n - 1, j - 1)?.matmul(&face(n, i)?);
                ensure(lhs == rhs, || {
                    format!("{name}: δ_i δ_j ≠ δ_(j−1) δ_i, n={n} i={i} j={j}")
                })?;
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        for j in 1..=n + 2 {
            for i in 0..j {
                let lhs = coface(n + 1, j)?.matmul(&coface(n, i)?);
                let rhs = coface(n + 1, i)?.matmul(&coface(n, j - 1)?);
                ensure(lhs == rhs, || format!("{name}: cofaces fail, n={n} i={i} j={j}"))?;
            }
        }
    }
    for n in 0..=top {
        let id = Matrix::identity(dim(n));
        let t = cyclic_t(a, n);
        let one_minus_t = &id - &t;
        let norm = norm_n(a, n);
        ensure(
            one_minus_t.matmul(&norm).is_zero() && norm.matmul(&one_minus_t).is_zero(),
            || format!("{name}: (Id−t)N ≠ 0 or N(Id−t) ≠ 0, n={n}"),
        )?;
        let lhs = &norm + &homotopy_theta(a, n).matmul(&one_minus_t);
        ensure(lhs == Matrix::scalar(dim(n), &Scalar::from(n + 1)), || {
            format!("{name}: N + θ(Id−t) ≠ (n+1)Id, n={n}")
        })?;
        if n == 0 {
            continue;
        }
        let b = hochschild_b(&v, n);
        let bp = b_prime(a, n);
        if n >= 2 {
            ensure(hochschild_b(&v, n - 1).matmul(&b).is_zero(), || {
                format!("{name}: b² ≠ 0, n={n}")
            })?;
            ensure(b_prime(a, n - 1).matmul(&bp).is_zero(), || {
                format!("{name}: b′² ≠ 0, n={n}")
            })?;
        }
        let below = &Matrix::identity(dim(n - 1)) - &cyclic_t(a, n - 1);
        ensure(below.matmul(&bp) == b.matmul(&one_minus_t), || {
            format!("{name}: (Id−t)b′ ≠ b(Id−t), n={n}")
        })?;
        ensure(bp.matmul(&norm) == norm_n(a, n - 1).matmul(&b), || {
            format!("{name}: Nb ≠ b′N, n={n}")
        })?;
        let sign = Scalar::from(if n % 2 == 0 { 1i64 } else { -1 });
        ensure(face(n, 0)?.matmul(&t) == face(n, n)?.scale(&sign), || {
            format!("{name}: δ_0 t ≠ ±δ_n, n={n}")
        })?;
    }
    // Rows reach degree top + 1; past 3^6-dimensional chains they do not fit in memory.
    let rows = if a.dim() == 3 { top.min(4) } else { top };
    let defects = row_defects(a, rows, rows + 1).map_err(err)?;
    ensure(defects.is_empty(), || format!("{name}: rows not exact at {defects:?}"))?;
    Ok(())
}

fn identity_suite() -> Check {
    let mut done = Vec::new();
    for a in corpus::all() {
        let top = suite_degree(&a);
        identity_suite_on(&a, top)?;
        let rows = if a.dim() == 3 { ", rows ≤4" } else { "" };
        done.push(format!("{} (≤{top}{rows})", a.name()));
    }
    Ok(done.join(", "))
}

fn duality() -> Check {
    let mut done = Vec::new();
    for a in corpus::all() {
        let top = 4;
        let v = regular_bimodule(&a);
        let homology = hochschild_homology(&v, top, false).map_err(err)?.betti();
        let w = dualize_bimodule(&v).map_err(err)?;
        let cohomology = hochschild_cohomology(&w, top, false).map_err(err)?.betti();
        ensure(homology == cohomology, || {
            format!("{}: {homology:?} vs {cohomology:?}", a.name())
        })?;
        done.push(format!("{} (≤{top})", a.name()));
    }
    Ok(done.join(", "))
}

fn twist_reduction() -> Check {
    let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    let plain = corpus::k_times_k();
    let twisted = yau_twist(&plain, &swap).map_err(err)?;
    let (p, t) = (hh(&plain, 4)?, hh(&twisted, 4)?);
    ensure(p == t, || format!("{t:?} vs {p:?}"))?;
    Ok(format!("HH(kxk twisted by swap) = HH(kxk) = {p:?}"))
}

fn dual_space() -> Check {
    let mut full = 0;
    for a in corpus::all() {
        let circ = a_circ(&a).map_err(err)?;
        ensure(circ.bimodule.bimodule_report().is_valid(), || {
            format!("{}: A° bimodule axioms fail", a.name())
        })?;
        if a.find_unit().is_some() || a.is_associative() {
            ensure(circ.subspace.dim() == a.dim(), || {
                format!("{}: dim A° = {} < {}", a.name(), circ.subspace.dim(), a.dim())
            })?;
            full += 1;
        }
    }
    Ok(format!(
        "A° valid on {} algebras; A° = A* on all {full} unital or associative ones",
        corpus::all().len()
    ))
}

fn cocycles() -> Check {
    let mut built = 0;
    for a in corpus::all() {
        let traces = trace_space(&a);
        let hc0 = cyclic_cohomology(&a, 0, Method::Lambda, None, false)
            .map_err(err)?
            .betti()[0];
        ensure(traces.dim() == hc0, || {
            format!("{}: {} traces, HC^0 = {hc0}", a.name(), traces.dim())
        })?;
        for rho in twisted_derivations(&a) {
            let rho = TwistedDerivation::new(&a, rho).map_err(err)?;
            for tr in traces.basis() {
                let tr = Functional::new(&a, 0, tr.clone()).map_err(err)?;
                match derivation_cocycle(&a, &rho, &tr) {
                    Ok(phi) => {
                        let check = is_cyclic_cocycle(&a, &phi).map_err(err)?;
                        ensure(check.holds(), || {
                            format!("{}: output is not a cyclic cocycle", a.name())
                        })?;
                        built += 1;
                    }
                    // Hypotheses on the trace not met: not a valid input.
                    Err(Error::Precondition(_)) => {}
                    Err(e) => return Err(err(e)),
                }
            }
        }
    }
    ensure(built > 0, || "no cocycles built".into())?;
    Ok(format!(
        "{built} cocycles verified; trace space = HC^0 on every algebra"
    ))
}

fn periodic_parity() -> Check {
    let mut stabilized = 0;
    for a in corpus::standard() {
        let (window, top) = if a.dim() <= 2 { (2, 3) } else { (1, 1) };
        for r in [
            periodic_homology(&a, window, 0..=top).map_err(err)?,
            periodic_cohomology(&a, window, 0..=top).map_err(err)?,
        ] {
            ensure(r.parity_consistent(), || {
                format!("{} {}: parity fails", a.name(), r.theory)
            })?;
            stabilized += r.degrees.iter().filter(|d| d.stabilized).count();
        }
    }
    let k = corpus::ground_field();
    for r in [
        periodic_homology(&k, 3, 0..=3).map_err(err)?,
        periodic_cohomology(&k, 3, 0..=3).map_err(err)?,
    ] {
        ensure(r.all_stabilized() && (r.even, r.odd) == (Some(1), Some(0)), || {
            format!("k {}: even {:?}, odd {:?}", r.theory, r.even, r.odd)
        })?;
    }
    Ok(format!("{stabilized} stabilized degrees consistent; k: even 1, odd 0"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("two-dimensional example", two_dim_example, Some(5)),
        ("k2 tower", k2_tower, Some(1)),
        ("non-additivity", non_additivity, Some(60)),
        ("method equivalence", method_equivalence, None),
        ("operator identities", identity_suite, None),
        ("duality", duality, None),
        ("twist reduction", twist_reduction, None),
        ("A° and coefficients", dual_space, None),
        ("cocycle construction", cocycles, None),
        ("periodic parity", periodic_parity, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if outcome.is_ok() && elapsed > Duration::from_secs(secs) {
                outcome = Err(format!("took {elapsed:.2?}, limit {secs}s"));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("criterion {:>2} [{tag}] {name}: {detail} ({elapsed:.2?})", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
