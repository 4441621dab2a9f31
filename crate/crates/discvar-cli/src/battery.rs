//! The verification battery behind `verify` and the singular-point
//! witness behind `singularity`. Every check recomputes; nothing is
//! cached as passed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Value};

use discvar::field::{rat, rat_int, Rat};
use discvar::groebner::cache::BasisCache;
use discvar::groebner::{buchberger, reduce, Limits, PolySystem};
use discvar::numgeo::{
    conjugate, eval_poly_at, exp_v_rank_check, jacobi_eigs, jacobian_rank_at, orbit_diameter_estimate,
    orbit_points, poly_scale, proj_plane_embed, random_so, rank_exact, rank_with_tol, s_dist,
    s_quad, sub_seed, tangent_basis, SymMatrixN,
};
use discvar::poly::{parse_poly, MonomialOrder, MultiPoly};
use discvar::symform::{discriminant, generic_symmetric, sym_ctx};
use discvar::variety::{self, goldens, CheckResult};

pub struct BatteryReport {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
}

impl BatteryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "n": self.n,
            "seed": self.seed,
            "samples": self.samples,
            "all_pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name, "pass": c.pass, "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} - {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            if self.all_pass() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.checks.iter().filter(|c| !c.pass).count()
        ));
        out
    }
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass,
        detail: detail.into(),
    }
}

/// Sample a surface point: the change of diag(lam, lam, mu) by a random
/// rotation, with well-separated lam and mu drawn from [-2, 2].
fn sample_surface_point(rng: &mut ChaCha12Rng, seed_stream: &mut u64) -> (SymMatrixN, f64, f64) {
    let lam = rng.random::<f64>() * 4.0 - 2.0;
    let mut mu = rng.random::<f64>() * 4.0 - 2.0;
    while (lam - mu).abs() < 0.1 {
        mu = rng.random::<f64>() * 4.0 - 2.0;
    }
    *seed_stream += 1;
    let g = random_so(3, *seed_stream);
    (conjugate(&g, &SymMatrixN::diag(&[lam, lam, mu])), lam, mu)
}

#[allow(clippy::too_many_arguments)]
pub fn run_battery(
    n: usize,
    seed: u64,
    samples: usize,
    rank_tol: f64,
    deep: bool,
    limits: &Limits,
    cache: &BasisCache,
) -> anyhow::Result<BatteryReport> {
    let mut checks = Vec::new();

    // derivation and its built-in cross-checks
    let report = variety::derive(n, limits, cache, true)?;
    checks.extend(report.checks.iter().cloned());

    // both degree readings of the discriminant, recorded side by side
    let disc = discriminant(n);
    checks.push(check(
        "discriminant degree figures",
        true,
        format!(
            "computed homogeneous degree {} = n(n-1); the degree-2n figure is {}",
            disc.total_degree().unwrap_or(0),
            2 * n
        ),
    ));

    if n == 3 {
        checks.extend(golden_checks(&report)?);
        checks.extend(numeric_checks(&report, seed, samples, rank_tol)?);
    }

    checks.extend(singularity_checks());
    checks.extend(property_checks(seed));

    if deep {
        checks.extend(variety::divisibility_probe(&report.rels_simplified));
    }

    Ok(BatteryReport {
        n,
        seed,
        samples,
        checks,
    })
}

fn golden_checks(report: &variety::DerivationReport) -> anyhow::Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let cmp = variety::golden_compare(&report.rels_simplified, &goldens::rels_s());
    checks.push(check(
        "simplified relations vs printed system",
        cmp.squared_equivalent,
        format!("{}; exact term-set match: {}", cmp.verdict(), cmp.exact_match),
    ));

    let cmp = variety::golden_compare(&report.m0, &goldens::m0_eqs());
    checks.push(check(
        "trace-zero restriction vs printed system",
        cmp.ideal_equal,
        cmp.verdict(),
    ));

    let limits = Limits::unlimited();
    let cache = BasisCache::disabled();
    let orbit = variety::orbit_minimal_eqs(
        &[rat_int(1), rat_int(1), rat_int(-2)],
        &limits,
        &cache,
    )?;
    let cmp = variety::golden_compare(&orbit.equations, &goldens::orbit_eqs());
    checks.push(check(
        "orbit equations vs printed system",
        cmp.ideal_equal,
        cmp.verdict(),
    ));

    // the symbolic 1-orbit system and its two limits
    let one = variety::one_orbit_eqs();
    let golden = goldens::one_orbit_eqs();
    let norm = |sys: &PolySystem<discvar::RatFunc>| -> Vec<String> {
        let mut v: Vec<String> = sys.gens().iter().map(|g| g.monic().to_string()).collect();
        v.sort();
        v
    };
    let exact = norm(&one) == norm(&golden);
    checks.push(check(
        "symbolic 1-orbit system vs printed",
        exact,
        if exact { "exact match after monic normalization" } else { "MISMATCH" },
    ));

    let at0 = variety::one_orbit_at_k(&one, &rat_int(0))?;
    let circle =
        parse_poly::<Rat>("x23^2 + x33^2 + x33 - 2", at0.ctx(), at0.order()).unwrap();
    let has_circle = at0.gens().contains(&circle);
    checks.push(check(
        "k = 0 specialization yields the first circumference",
        has_circle,
        "x23^2 + (x33 + 1/2)^2 = 9/4 present",
    ));

    // det(X) + 2 reduces to zero modulo the k = 0 system
    let gb0 = buchberger(&at0);
    let x = generic_symmetric(3, at0.order());
    let det_plus_2 = x.det().add(&MultiPoly::constant(
        x.ctx(),
        at0.order(),
        rat_int(2),
    ));
    let det_ok = reduce(&det_plus_2.rename_into(at0.ctx(), at0.order()), &gb0).is_zero();
    checks.push(check(
        "determinant check modulo the k = 0 circle",
        det_ok,
        "det(X) + 2 reduces to 0",
    ));

    let inf = variety::one_orbit_limit_infinity(&one);
    let circle_inf =
        parse_poly::<Rat>("x13^2 + x33^2 + x33 - 2", inf.ctx(), inf.order()).unwrap();
    let x22_one = parse_poly::<Rat>("x22 - 1", inf.ctx(), inf.order()).unwrap();
    let inf_ok = inf.gens().contains(&circle_inf)
        && inf.gens().contains(&x22_one);
    checks.push(check(
        "limit at infinite k yields the second circumference",
        inf_ok,
        "x13^2 + (x33 + 1/2)^2 = 9/4 with x22 = 1, same radius",
    ));

    Ok(checks)
}

fn numeric_checks(
    report: &variety::DerivationReport,
    seed: u64,
    samples: usize,
    rank_tol: f64,
) -> anyhow::Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let rels_s = &report.rels_simplified;

    // degree floor: exact, then the sampled non-vanishing of a fixed
    // generic quadratic form
    let min_deg = rels_s
        .gens()
        .iter()
        .filter_map(|g| g.total_degree())
        .min()
        .unwrap_or(0);
    checks.push(check(
        "no simplified member of degree below three",
        min_deg >= 3,
        format!("minimal degree {min_deg}"),
    ));

    let ctx = sym_ctx(3);
    let order = MonomialOrder::GrevLex;
    let quad: MultiPoly<Rat> = {
        // fixed generic quadratic form: coefficients 1..21 over the
        // degree-2 monomials in grevlex order
        let mut terms = Vec::new();
        let mut c = 1i64;
        for i in 0..6 {
            for j in i..6 {
                let mut exps = vec![0u32; 6];
                exps[i] += 1;
                exps[j] += 1;
                terms.push((discvar::poly::Monomial::from_exps(exps), rat_int(c)));
                c += 1;
            }
        }
        MultiPoly::from_terms(&ctx, order, terms)
    };
    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(seed, 10));
    let mut stream = sub_seed(seed, 11);
    let mut max_q: f64 = 0.0;
    let mut pts = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (x, _, _) = sample_surface_point(&mut rng, &mut stream);
        max_q = max_q.max(eval_poly_at(&quad, &x).abs());
        pts.push(x);
    }
    let q_scale = poly_scale(&quad);
    checks.push(check(
        "generic quadratic form does not vanish on the surface",
        max_q > 0.1 * q_scale,
        format!("max |q| = {max_q:.3} vs 0.1 scale = {:.3}", 0.1 * q_scale),
    ));

    // numeric vanishing of the simplified relations on random-orbit samples
    let mut worst: f64 = 0.0;
    for x in &pts {
        for g in rels_s.gens() {
            let v = eval_poly_at(g, x).abs() / poly_scale(g);
            worst = worst.max(v);
        }
    }
    checks.push(check(
        "simplified relations vanish on sampled surface points",
        worst < 1e-9,
        format!("worst scaled residual {worst:.3e} over {} points", pts.len()),
    ));

    // vanishing of the restriction and the orbit system on the orbit of
    // diag(1,1,-2)
    let m0 = &report.m0;
    let orbit_golden = goldens::orbit_eqs();
    let opts = orbit_points(&[1.0, 1.0, -2.0], samples, sub_seed(seed, 12));
    let mut worst0: f64 = 0.0;
    for x in &opts {
        for g in orbit_golden.gens() {
            worst0 = worst0.max(eval_poly_at(g, x).abs() / poly_scale(g));
        }
        // the restriction lives in the x11-eliminated variables
        let vals = [
            x.at(0, 1),
            x.at(0, 2),
            x.at(1, 1),
            x.at(1, 2),
            x.at(2, 2),
        ];
        for g in m0.gens() {
            worst0 = worst0.max(g.eval_f64(&vals).abs() / poly_scale(g));
        }
    }
    checks.push(check(
        "restriction and orbit systems vanish on the sampled orbit",
        worst0 < 1e-9,
        format!("worst scaled residual {worst0:.3e} over {} points", opts.len()),
    ));

    // cylinder structure: members keep vanishing after scalar shifts
    let mut worst_shift: f64 = 0.0;
    let mut rng2 = ChaCha12Rng::seed_from_u64(sub_seed(seed, 13));
    for x in pts.iter().take(500) {
        let s = rng2.random::<f64>() * 4.0 - 2.0;
        let shifted = x.shift(s);
        for g in rels_s.gens() {
            worst_shift = worst_shift.max(eval_poly_at(g, &shifted).abs() / poly_scale(g));
        }
    }
    checks.push(check(
        "scalar shifts stay on the surface (straight cylinder)",
        worst_shift < 1e-9,
        format!("worst scaled residual {worst_shift:.3e}"),
    ));

    // Jacobian ranks: the co-dimension at regular points, degeneracy at
    // scalar matrices and at the origin
    let mut rng3 = ChaCha12Rng::seed_from_u64(sub_seed(seed, 14));
    let mut stream3 = sub_seed(seed, 15);
    let mut rank_ok = true;
    let mut seen = Vec::new();
    for _ in 0..100 {
        let (x, _, _) = sample_surface_point(&mut rng3, &mut stream3);
        let r = jacobian_rank_at(rels_s, &x, rank_tol);
        if r != 2 {
            rank_ok = false;
            seen.push(r);
        }
    }
    checks.push(check(
        "Jacobian rank two at regular surface points",
        rank_ok,
        if seen.is_empty() {
            "rank 2 at all 100 points".to_string()
        } else {
            format!("unexpected ranks {seen:?}")
        },
    ));
    let origin = SymMatrixN::zeros(3);
    let r0 = jacobian_rank_at(rels_s, &origin, rank_tol);
    checks.push(check(
        "Jacobian rank zero at the origin",
        r0 == 0,
        format!("rank {r0}"),
    ));
    let mut scal_ok = true;
    for i in 0..10 {
        let s = -2.0 + (i as f64) * 0.45;
        let r = jacobian_rank_at(rels_s, &SymMatrixN::diag(&[s, s, s]), rank_tol);
        if r >= 2 {
            scal_ok = false;
        }
    }
    checks.push(check(
        "Jacobian rank degenerates at scalar matrices",
        scal_ok,
        "rank below 2 at ten scalar points",
    ));

    // diameter: measured estimate against both bounds, here and for
    // random multisets in sizes 3 and 4
    let est = orbit_diameter_estimate(&[1.0, 1.0, -2.0], samples.min(4000), sub_seed(seed, 16));
    checks.push(check(
        "orbit diameter within the theoretical bounds",
        est.estimate >= est.lower_bound - 1e-9 && est.estimate <= est.upper_bound + 1e-9,
        format!(
            "estimate {:.6}, bounds [{:.6}, {:.6}]",
            est.estimate, est.lower_bound, est.upper_bound
        ),
    ));
    let mut rng4 = ChaCha12Rng::seed_from_u64(sub_seed(seed, 17));
    let mut bounds_ok = true;
    for trial in 0..40 {
        let lam = rng4.random::<f64>() * 4.0 - 2.0;
        let mut mu = rng4.random::<f64>() * 4.0 - 2.0;
        while (lam - mu).abs() < 0.2 {
            mu = rng4.random::<f64>() * 4.0 - 2.0;
        }
        let eigs: Vec<f64> = if trial % 2 == 0 {
            vec![lam, lam, mu]
        } else {
            let mut nu = rng4.random::<f64>() * 4.0 - 2.0;
            while (nu - lam).abs() < 0.2 || (nu - mu).abs() < 0.2 {
                nu = rng4.random::<f64>() * 4.0 - 2.0;
            }
            vec![lam, lam, mu, nu]
        };
        let e = orbit_diameter_estimate(&eigs, 300, sub_seed(seed, 100 + trial));
        if e.estimate < e.lower_bound - 1e-9 || e.estimate > e.upper_bound + 1e-9 {
            bounds_ok = false;
        }
    }
    checks.push(check(
        "diameter bounds hold across random eigenvalue multisets",
        bounds_ok,
        "sizes 3 and 4, 40 multisets",
    ));

    Ok(checks)
}

/// Exact staircase elimination over the rationals, with a printable trace.
fn staircase(rows: &[Vec<Rat>]) -> (usize, Vec<String>) {
    use discvar::field::Field;
    let mut a = rows.to_vec();
    let ncols = a[0].len();
    let mut trace = vec![render_rows(&a)];
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&r| !Field::is_zero(&a[r][col])) else {
            continue;
        };
        a.swap(row, p);
        for r in (row + 1)..a.len() {
            if Field::is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].div_ref(&a[row][col]);
            for c in col..ncols {
                let s = a[row][c].mul_ref(&f);
                a[r][c] = a[r][c].sub_ref(&s);
            }
        }
        rank += 1;
        row += 1;
        trace.push(render_rows(&a));
        if row == a.len() {
            break;
        }
    }
    (rank, trace)
}

fn render_rows(rows: &[Vec<Rat>]) -> String {
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// The singular-point witness: the four directions D, D2, M1, M2 through
/// zero are independent (rank 4), and the five directions T1, T2, B,
/// D2', D3' for diag(0,0,1) span a five-dimensional plane. Both exact
/// and at the numeric tolerance.
pub fn singularity_checks() -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let (a, b) = (rat(-1, 2), rat(-3, 2));
    let rows_exact: Vec<Vec<Rat>> = vec![
        // upper triangles of D, D2, M1, M2 (x11 x12 x13 x22 x23 x33)
        vec![rat_int(1), rat_int(0), rat_int(0), rat_int(1), rat_int(0), rat_int(-2)],
        vec![rat_int(1), rat_int(0), rat_int(0), rat_int(-2), rat_int(0), rat_int(1)],
        vec![
            rat_int(1),
            rat_int(0),
            rat_int(0),
            a.clone(),
            b.clone(),
            -(a.clone() + rat_int(1)),
        ],
        vec![
            a.clone(),
            rat_int(0),
            b.clone(),
            rat_int(1),
            rat_int(0),
            -(a.clone() + rat_int(1)),
        ],
    ];
    let (r_exact, _) = staircase(&rows_exact);
    let rows_f: Vec<Vec<f64>> = rows_exact
        .iter()
        .map(|r| r.iter().map(discvar::field::rat_to_f64).collect())
        .collect();
    let r_num = rank_with_tol(&rows_f, 1e-8);
    checks.push(check(
        "four independent directions through zero",
        r_exact == 4 && r_num == 4,
        format!("exact rank {r_exact}, numeric rank {r_num} (a = -1/2, b = -3/2)"),
    ));

    // embracing plane for the orbit of diag(0,0,1)
    let d = SymMatrixN::diag(&[0.0, 0.0, 1.0]);
    let ts = tangent_basis(&d);
    let t1 = &ts[2]; // [A23, D]
    let t2 = &ts[1]; // [A13, D]
    let mut bmat = SymMatrixN::zeros(3);
    bmat.set_sym(0, 1, 1.0);
    let d2p = SymMatrixN::diag(&[0.0, 1.0, -1.0]);
    let d3p = SymMatrixN::diag(&[1.0, 0.0, -1.0]);
    let rows5: Vec<Vec<f64>> = [t1, t2, &bmat, &d2p, &d3p]
        .iter()
        .map(|m| m.upper_vec())
        .collect();
    let rows5_exact: Vec<Vec<Rat>> = rows5
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| rat_int(v.round() as i64))
                .collect()
        })
        .collect();
    let r5 = rank_with_tol(&rows5, 1e-8);
    let r5e = rank_exact(&rows5_exact);
    checks.push(check(
        "embracing plane of the unit-axis orbit is five-dimensional",
        r5 == 5 && r5e == 5,
        format!("exact rank {r5e}, numeric rank {r5}"),
    ));
    checks
}

/// The quick property suite: every stochastic step runs off the given
/// seed and is reproducible.
pub fn property_checks(seed: u64) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    // isometry of the change action
    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(seed, 20));
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let g = random_so(3, rng.random::<u64>());
        let x = random_sym(&mut rng);
        let y = random_sym(&mut rng);
        let d1 = s_dist(&conjugate(&g, &x), &conjugate(&g, &y));
        let d2 = s_dist(&x, &y);
        worst = worst.max((d1 - d2).abs());
    }
    checks.push(check(
        "changes preserve the s-metric",
        worst < 1e-9,
        format!("worst deviation {worst:.3e} over 1000 trials"),
    ));

    // commutator of a diagonal and an antisymmetric matrix: symmetric
    // with zero diagonal, exactly
    let d = SymMatrixN::diag(&[0.7, -0.2, 3.1]);
    let exact = tangent_basis(&d).iter().all(|t| {
        (0..3).all(|i| t.at(i, i) == 0.0)
            && (0..3).all(|i| (0..3).all(|j| t.at(i, j) == t.at(j, i)))
    });
    checks.push(check(
        "commutators with the diagonal are symmetric, zero-diagonal",
        exact,
        "exact equality",
    ));

    // conjugation-invariant eigenvalues
    let mut worst_e: f64 = 0.0;
    for s in 0..200u64 {
        let g = random_so(3, sub_seed(seed, 300 + s));
        let y = conjugate(&g, &SymMatrixN::diag(&[1.0, 1.0, -2.0]));
        let (eigs, _) = jacobi_eigs(&y);
        let v = eigs.values();
        worst_e = worst_e
            .max((v[0] + 2.0).abs())
            .max((v[1] - 1.0).abs())
            .max((v[2] - 1.0).abs());
    }
    checks.push(check(
        "eigenvalues invariant under changes",
        worst_e < 1e-9,
        format!("worst deviation {worst_e:.3e}"),
    ));

    // projective embedding identities
    let d0 = SymMatrixN::diag(&[1.0, 1.0, -2.0]);
    let id_ok = proj_plane_embed([0.0, 0.0, 1.0]) == d0;
    let mut sign_ok = true;
    let mut rng5 = ChaCha12Rng::seed_from_u64(sub_seed(seed, 21));
    for _ in 0..200 {
        let l = [
            rng5.random::<f64>() - 0.5,
            rng5.random::<f64>() - 0.5,
            rng5.random::<f64>() - 0.5,
        ];
        if l.iter().map(|v| v * v).sum::<f64>() < 1e-3 {
            continue;
        }
        if proj_plane_embed(l) != proj_plane_embed([-l[0], -l[1], -l[2]]) {
            sign_ok = false;
        }
    }
    checks.push(check(
        "projective embedding identities",
        id_ok && sign_ok,
        "base point exact; axis sign exact",
    ));

    // rank two of the restricted exponential differential
    let r = exp_v_rank_check(&SymMatrixN::diag(&[1.0, 1.0, -2.0]), 1e-5);
    checks.push(check(
        "restricted exponential map has rank two at zero",
        r == 2,
        format!("finite-difference rank {r}"),
    ));

    let _ = s_quad(&d0);
    checks
}

fn random_sym(rng: &mut ChaCha12Rng) -> SymMatrixN {
    let data: Vec<f64> = (0..9).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
    SymMatrixN::from_upper(3, &data)
}

/// Stand-alone singular-point report for the `singularity` subcommand,
/// including the staircase trace.
pub fn singularity_report() -> BatteryReport {
    let mut checks = singularity_checks();
    // attach the staircase trace of the 4x6 witness matrix
    let (a, b) = (rat(-1, 2), rat(-3, 2));
    let rows: Vec<Vec<Rat>> = vec![
        vec![rat_int(1), rat_int(0), rat_int(0), rat_int(1), rat_int(0), rat_int(-2)],
        vec![rat_int(1), rat_int(0), rat_int(0), rat_int(-2), rat_int(0), rat_int(1)],
        vec![
            rat_int(1),
            rat_int(0),
            rat_int(0),
            a.clone(),
            b.clone(),
            -(a.clone() + rat_int(1)),
        ],
        vec![
            a.clone(),
            rat_int(0),
            b.clone(),
            rat_int(1),
            rat_int(0),
            -(a + rat_int(1)),
        ],
    ];
    let (rank, trace) = staircase(&rows);
    checks.push(check(
        "staircase trace",
        rank == 4,
        format!("\n{}\n", trace.join("\n  ->\n")),
    ));
    BatteryReport {
        n: 3,
        seed: 0,
        samples: 0,
        checks,
    }
}
