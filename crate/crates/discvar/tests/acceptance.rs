//! Acceptance suite: one test per exit criterion, each printing a
//! pass/fail line. Shared expensive fixtures are computed once per run.

use std::sync::OnceLock;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use discvar::field::{rat, rat_int, Rat};
use discvar::groebner::cache::BasisCache;
use discvar::groebner::{buchberger, reduce, GroebnerError, Limits, PolySystem};
use discvar::numgeo::{
    conjugate, eval_poly_at, exp_v_rank_check, jacobi_eigs, jacobian_rank_at,
    orbit_diameter_estimate, orbit_points, poly_scale, proj_plane_embed, random_so, rank_exact,
    rank_with_tol, s_dist, sub_seed, tangent_basis, SymMatrixN,
};
use discvar::poly::{parse_poly, Monomial, MonomialOrder, MultiPoly};
use discvar::symform::{discriminant, generic_symmetric, sym_ctx};
use discvar::variety::{self, goldens};

const SEED: u64 = 42;

struct Fixture {
    report: variety::DerivationReport,
    derive_secs: f64,
    orbit: variety::OrbitSystem,
    one_orbit: PolySystem<discvar::RatFunc>,
}

fn fixture() -> &'static Fixture {
    static FIX: OnceLock<Fixture> = OnceLock::new();
    FIX.get_or_init(|| {
        let cache = BasisCache::disabled();
        let limits = Limits::unlimited();
        let t = Instant::now();
        let report = variety::derive(3, &limits, &cache, true).expect("derivation");
        let derive_secs = t.elapsed().as_secs_f64();
        let orbit = variety::orbit_minimal_eqs(
            &[rat_int(1), rat_int(1), rat_int(-2)],
            &limits,
            &cache,
        )
        .expect("orbit equations");
        let one_orbit = variety::one_orbit_eqs();
        Fixture {
            report,
            derive_secs,
            orbit,
            one_orbit,
        }
    })
}

fn verdict(name: &str, pass: bool, detail: &str) {
    println!(
        "[{}] criterion {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Surface sample g^c diag(lam, lam, mu) with separated random values.
fn surface_sample(rng: &mut ChaCha12Rng, stream: &mut u64) -> SymMatrixN {
    let lam = rng.random::<f64>() * 4.0 - 2.0;
    let mut mu = rng.random::<f64>() * 4.0 - 2.0;
    while (lam - mu).abs() < 0.1 {
        mu = rng.random::<f64>() * 4.0 - 2.0;
    }
    *stream += 1;
    conjugate(&random_so(3, *stream), &SymMatrixN::diag(&[lam, lam, mu]))
}

#[test]
fn criterion_01_simplified_relations_reproduce_printed_system() {
    let fx = fixture();
    let cmp = variety::golden_compare(&fx.report.rels_simplified, &goldens::rels_s());
    let runtime_ok = fx.derive_secs < 300.0;
    let pass = cmp.squared_equivalent && runtime_ok;
    verdict(
        "1",
        pass,
        &format!(
            "mutual squared-membership {}; exact term-set match {}; derive took {:.2}s",
            cmp.squared_equivalent, cmp.exact_match, fx.derive_secs
        ),
    );
    assert!(cmp.squared_equivalent, "squared-membership both ways failed");
    assert!(runtime_ok, "derivation exceeded the runtime target");
}

#[test]
fn criterion_02_trace_zero_restriction_reproduces_m0() {
    let fx = fixture();
    let cmp = variety::golden_compare(&fx.report.m0, &goldens::m0_eqs());
    verdict(
        "2",
        cmp.ideal_equal,
        &format!("ideal equality {}; {}", cmp.ideal_equal, cmp.verdict()),
    );
    assert!(cmp.ideal_equal, "restriction does not match the printed system");
}

#[test]
fn criterion_03_derivation_cross_checks() {
    let fx = fixture();
    // recomputed directly, independent of the report's own bookkeeping
    let rels_gb = buchberger(&fx.report.rels);
    let disc =
        discriminant(3).rename_into(fx.report.rels.ctx(), fx.report.rels.order());
    let disc_ok = reduce(&disc, &rels_gb).is_zero();

    let eig_ctx = discvar::poly::VarContext::new(vec!["lam", "mu1"]);
    let order = MonomialOrder::GrevLex;
    let mut bindings = std::collections::BTreeMap::new();
    for (i, j) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)] {
        let value = if i != j {
            MultiPoly::<Rat>::zero(&eig_ctx, order)
        } else if i <= 2 {
            MultiPoly::var_named(&eig_ctx, order, "lam").unwrap()
        } else {
            MultiPoly::var_named(&eig_ctx, order, "mu1").unwrap()
        };
        bindings.insert(format!("x{i}{j}"), value);
    }
    let subst_ok = fx
        .report
        .rels
        .gens()
        .iter()
        .all(|g| g.substitute(&bindings).unwrap().is_zero());

    let setup = discvar::symform::build_generic(3);
    let ort_gb = buchberger(&setup.ort_es);
    let trace_ok = reduce(&setup.trace_identity(), &ort_gb).is_zero();
    let det_ok = reduce(&setup.det_identity(), &ort_gb).is_zero();
    let sym_ok = setup.x.is_symmetric();

    let pass = disc_ok && subst_ok && trace_ok && det_ok && sym_ok;
    verdict(
        "3",
        pass,
        &format!(
            "discriminant->0 {disc_ok}; diagonal substitution {subst_ok}; symmetric {sym_ok}; trace {trace_ok}; det {det_ok}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_04_orbit_equations_reproduce_printed_system() {
    let fx = fixture();
    let cmp = variety::golden_compare(&fx.orbit.equations, &goldens::orbit_eqs());
    verdict(
        "4",
        cmp.ideal_equal,
        &format!("ideal equality {}; {}", cmp.ideal_equal, cmp.verdict()),
    );
    assert!(cmp.ideal_equal);
}

#[test]
fn criterion_05_one_orbit_system_and_limits() {
    let fx = fixture();
    let golden = goldens::one_orbit_eqs();
    let norm = |sys: &PolySystem<discvar::RatFunc>| -> Vec<String> {
        let mut v: Vec<String> = sys.gens().iter().map(|g| g.monic().to_string()).collect();
        v.sort();
        v
    };
    let exact = norm(&fx.one_orbit) == norm(&golden);

    let at0 = variety::one_orbit_at_k(&fx.one_orbit, &rat_int(0)).unwrap();
    let circle = parse_poly::<Rat>("x23^2 + x33^2 + x33 - 2", at0.ctx(), at0.order()).unwrap();
    let circle_ok = at0.gens().contains(&circle);

    let gb0 = buchberger(&at0);
    let x = generic_symmetric(3, at0.order());
    let det_plus_2 = x
        .det()
        .add(&MultiPoly::constant(x.ctx(), at0.order(), rat_int(2)))
        .rename_into(at0.ctx(), at0.order());
    let det_ok = reduce(&det_plus_2, &gb0).is_zero();

    let inf = variety::one_orbit_limit_infinity(&fx.one_orbit);
    let circle_inf =
        parse_poly::<Rat>("x13^2 + x33^2 + x33 - 2", inf.ctx(), inf.order()).unwrap();
    let x22_one = parse_poly::<Rat>("x22 - 1", inf.ctx(), inf.order()).unwrap();
    let inf_ok = inf.gens().contains(&circle_inf)
        && inf.gens().contains(&x22_one);

    let pass = exact && circle_ok && det_ok && inf_ok;
    verdict(
        "5",
        pass,
        &format!(
            "symbolic exact {exact}; k=0 circle {circle_ok}; det+2->0 {det_ok}; k->inf circle {inf_ok}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_degree_floor_and_nonquadratic() {
    let fx = fixture();
    let min_deg = fx
        .report
        .rels_simplified
        .gens()
        .iter()
        .filter_map(|g| g.total_degree())
        .min()
        .unwrap();

    // fixed generic quadratic form: coefficients 1..21 over the degree-2
    // monomials of the entry variables
    let ctx = sym_ctx(3);
    let order = MonomialOrder::GrevLex;
    let mut terms = Vec::new();
    let mut c = 1i64;
    for i in 0..6 {
        for j in i..6 {
            let mut exps = vec![0u32; 6];
            exps[i] += 1;
            exps[j] += 1;
            terms.push((Monomial::from_exps(exps), rat_int(c)));
            c += 1;
        }
    }
    let quad = MultiPoly::from_terms(&ctx, order, terms);
    let scale = poly_scale(&quad);

    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(SEED, 60));
    let mut stream = sub_seed(SEED, 61);
    let mut max_q: f64 = 0.0;
    for _ in 0..2000 {
        let x = surface_sample(&mut rng, &mut stream);
        max_q = max_q.max(eval_poly_at(&quad, &x).abs());
    }
    let pass = min_deg >= 3 && max_q > 0.1 * scale;
    verdict(
        "6",
        pass,
        &format!("min degree {min_deg}; max |q| {max_q:.2} > {:.2}", 0.1 * scale),
    );
    assert!(pass);
}

#[test]
fn criterion_07_numeric_vanishing() {
    let fx = fixture();
    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(SEED, 70));
    let mut stream = sub_seed(SEED, 71);
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let x = surface_sample(&mut rng, &mut stream);
        for g in fx.report.rels_simplified.gens() {
            worst = worst.max(eval_poly_at(g, &x).abs() / poly_scale(g));
        }
    }
    let pts = orbit_points(&[1.0, 1.0, -2.0], 2000, sub_seed(SEED, 72));
    for x in &pts {
        for g in fx.orbit.equations.gens() {
            worst = worst.max(eval_poly_at(g, x).abs() / poly_scale(g));
        }
        let vals = [x.at(0, 1), x.at(0, 2), x.at(1, 1), x.at(1, 2), x.at(2, 2)];
        for g in fx.report.m0.gens() {
            worst = worst.max(g.eval_f64(&vals).abs() / poly_scale(g));
        }
    }
    let pass = worst < 1e-9;
    verdict("7", pass, &format!("worst scaled residual {worst:.3e}"));
    assert!(pass);
}

#[test]
fn criterion_08_jacobian_ranks() {
    let fx = fixture();
    let rels_s = &fx.report.rels_simplified;
    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(SEED, 80));
    let mut stream = sub_seed(SEED, 81);
    let mut regular_ok = true;
    for _ in 0..100 {
        let x = surface_sample(&mut rng, &mut stream);
        if jacobian_rank_at(rels_s, &x, 1e-8) != 2 {
            regular_ok = false;
        }
    }
    let origin_rank = jacobian_rank_at(rels_s, &SymMatrixN::zeros(3), 1e-8);
    let mut scalar_ok = true;
    for _ in 0..10 {
        let s = rng.random::<f64>() * 4.0 - 2.0;
        if jacobian_rank_at(rels_s, &SymMatrixN::diag(&[s, s, s]), 1e-8) >= 2 {
            scalar_ok = false;
        }
    }
    let pass = regular_ok && origin_rank == 0 && scalar_ok;
    verdict(
        "8",
        pass,
        &format!(
            "rank 2 at 100 regular points {regular_ok}; origin rank {origin_rank}; scalars below 2 {scalar_ok}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_singularity_witness_ranks() {
    let (a, b) = (rat(-1, 2), rat(-3, 2));
    let rows_exact: Vec<Vec<Rat>> = vec![
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
    let r4_exact = rank_exact(&rows_exact);
    let rows_f: Vec<Vec<f64>> = rows_exact
        .iter()
        .map(|r| r.iter().map(discvar::field::rat_to_f64).collect())
        .collect();
    let r4_num = rank_with_tol(&rows_f, 1e-8);

    let d = SymMatrixN::diag(&[0.0, 0.0, 1.0]);
    let ts = tangent_basis(&d);
    let mut bmat = SymMatrixN::zeros(3);
    bmat.set_sym(0, 1, 1.0);
    let rows5: Vec<Vec<f64>> = [
        &ts[2],
        &ts[1],
        &bmat,
        &SymMatrixN::diag(&[0.0, 1.0, -1.0]),
        &SymMatrixN::diag(&[1.0, 0.0, -1.0]),
    ]
    .iter()
    .map(|m| m.upper_vec())
    .collect();
    let rows5_exact: Vec<Vec<Rat>> = rows5
        .iter()
        .map(|r| r.iter().map(|&v| rat_int(v.round() as i64)).collect())
        .collect();
    let r5_num = rank_with_tol(&rows5, 1e-8);
    let r5_exact = rank_exact(&rows5_exact);

    let pass = r4_exact == 4 && r4_num == 4 && r5_exact == 5 && r5_num == 5;
    verdict(
        "9",
        pass,
        &format!("witness rank exact {r4_exact} numeric {r4_num}; embracing rank exact {r5_exact} numeric {r5_num}"),
    );
    assert!(pass);
}

#[test]
fn criterion_10a_diameter_estimate_window() {
    // The stated window [2.97, 3 + 1e-9] presumes the orbit diameter of
    // diag(1,1,-2) equals the eigenvalue gap. The sampled maximum
    // pairwise s-distance is sqrt(18): diag(1,1,-2) and diag(1,-2,1)
    // both lie on the orbit at that distance, so the measured estimate
    // exceeds the window. The assertion states the criterion as written.
    let est = orbit_diameter_estimate(&[1.0, 1.0, -2.0], 10_000, sub_seed(SEED, 100));
    let pass = est.estimate >= 2.97 && est.estimate <= 3.0 + 1e-9;
    verdict(
        "10a",
        pass,
        &format!(
            "estimate {:.9} vs window [2.97, 3.000000001]; d(diag(1,1,-2), diag(1,-2,1)) = sqrt(18) = {:.9}",
            est.estimate,
            18.0f64.sqrt()
        ),
    );
    assert!(
        pass,
        "estimate {} outside the stated window; both window endpoints below the distance sqrt(18) between two orbit points",
        est.estimate
    );
}

#[test]
fn criterion_10b_diameter_bounds_random_multisets() {
    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(SEED, 101));
    let mut ok = true;
    let mut count = 0;
    for trial in 0..100u64 {
        let lam = rng.random::<f64>() * 4.0 - 2.0;
        let mut mu = rng.random::<f64>() * 4.0 - 2.0;
        while (lam - mu).abs() < 0.2 {
            mu = rng.random::<f64>() * 4.0 - 2.0;
        }
        let eigs: Vec<f64> = if trial % 2 == 0 {
            vec![lam, lam, mu]
        } else {
            let mut nu = rng.random::<f64>() * 4.0 - 2.0;
            while (nu - lam).abs() < 0.2 || (nu - mu).abs() < 0.2 {
                nu = rng.random::<f64>() * 4.0 - 2.0;
            }
            vec![lam, lam, mu, nu]
        };
        let e = orbit_diameter_estimate(&eigs, 300, sub_seed(SEED, 200 + trial));
        if e.estimate < e.lower_bound - 1e-9 || e.estimate > e.upper_bound + 1e-9 {
            ok = false;
        }
        count += 1;
    }
    verdict(
        "10b",
        ok,
        &format!("max gap <= estimate <= 2 d(D, Scal) over {count} multisets in sizes 3 and 4"),
    );
    assert!(ok);
}

#[test]
fn criterion_11_property_suites() {
    let t = Instant::now();

    // isometry of the change action
    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(SEED, 110));
    let mut worst_iso: f64 = 0.0;
    for _ in 0..1000 {
        let g = random_so(3, rng.random::<u64>());
        let data_x: Vec<f64> = (0..9).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let data_y: Vec<f64> = (0..9).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let x = SymMatrixN::from_upper(3, &data_x);
        let y = SymMatrixN::from_upper(3, &data_y);
        let d1 = s_dist(&conjugate(&g, &x), &conjugate(&g, &y));
        worst_iso = worst_iso.max((d1 - s_dist(&x, &y)).abs());
    }
    let iso_ok = worst_iso < 1e-9;

    // commutator shape: exact
    let comm_ok = tangent_basis(&SymMatrixN::diag(&[0.9, -0.4, 2.2]))
        .iter()
        .all(|t| {
            (0..3).all(|i| t.at(i, i) == 0.0)
                && (0..3).all(|i| (0..3).all(|j| t.at(i, j) == t.at(j, i)))
        });

    // conjugation-invariant eigenvalues
    let mut worst_eig: f64 = 0.0;
    for s in 0..200u64 {
        let g = random_so(3, sub_seed(SEED, 1000 + s));
        let y = conjugate(&g, &SymMatrixN::diag(&[1.0, 1.0, -2.0]));
        let (eigs, _) = jacobi_eigs(&y);
        let v = eigs.values();
        worst_eig = worst_eig
            .max((v[0] + 2.0).abs())
            .max((v[1] - 1.0).abs())
            .max((v[2] - 1.0).abs());
    }
    let eig_ok = worst_eig < 1e-9;

    // cylinder: relations keep vanishing after scalar shifts
    let fx = fixture();
    let mut rng2 = ChaCha12Rng::seed_from_u64(sub_seed(SEED, 111));
    let mut stream = sub_seed(SEED, 112);
    let mut worst_shift: f64 = 0.0;
    for _ in 0..500 {
        let x = surface_sample(&mut rng2, &mut stream);
        let s = rng2.random::<f64>() * 4.0 - 2.0;
        let shifted = x.shift(s);
        for g in fx.report.rels_simplified.gens() {
            worst_shift = worst_shift.max(eval_poly_at(g, &shifted).abs() / poly_scale(g));
        }
    }
    let shift_ok = worst_shift < 1e-9;

    // embedding identities: exact
    let d0 = SymMatrixN::diag(&[1.0, 1.0, -2.0]);
    let mut embed_ok = proj_plane_embed([0.0, 0.0, 1.0]) == d0;
    let mut rng3 = ChaCha12Rng::seed_from_u64(sub_seed(SEED, 113));
    for _ in 0..200 {
        let l = [
            rng3.random::<f64>() - 0.5,
            rng3.random::<f64>() - 0.5,
            rng3.random::<f64>() - 0.5,
        ];
        if l.iter().map(|v| v * v).sum::<f64>() < 1e-3 {
            continue;
        }
        if proj_plane_embed(l) != proj_plane_embed([-l[0], -l[1], -l[2]]) {
            embed_ok = false;
        }
    }

    // restricted exponential rank
    let exp_ok = exp_v_rank_check(&d0, 1e-5) == 2;

    let secs = t.elapsed().as_secs_f64();
    let pass = iso_ok && comm_ok && eig_ok && shift_ok && embed_ok && exp_ok && secs < 120.0;
    verdict(
        "11",
        pass,
        &format!(
            "isometry {iso_ok} ({worst_iso:.2e}); commutators {comm_ok}; eigenvalues {eig_ok} ({worst_eig:.2e}); cylinder {shift_ok}; embedding {embed_ok}; exp rank {exp_ok}; {secs:.1}s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_12_size_four_aborts_cleanly_at_limit() {
    let cache = BasisCache::disabled();
    let limits = Limits {
        max_pairs: Some(500),
        ..Limits::default()
    };
    match variety::relations_ideal(4, &limits, &cache) {
        Err(variety::VarietyError::Groebner(GroebnerError::LimitExceeded {
            what,
            progress,
        })) => {
            let pass = progress.pairs_processed == 500 && progress.basis_size > 0;
            verdict(
                "12",
                pass,
                &format!(
                    "clean abort at {what}; basis {} elements, {} pairs remaining, degree {} seen",
                    progress.basis_size, progress.pairs_remaining, progress.max_degree_seen
                ),
            );
            assert!(pass);
        }
        Ok(_) => {
            verdict("12", true, "size-4 derivation finished inside the limit");
        }
        Err(e) => {
            verdict("12", false, &format!("unexpected failure {e}"));
            panic!("unexpected failure: {e}");
        }
    }
}
