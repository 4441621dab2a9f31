//! The derivation pipeline: minimal-degree equations for the variety of
//! symmetric matrices with a multiple eigenvalue, the trace-zero
//! restriction, orbit equation systems, 1-orbit parametric systems over
//! the rational-function field, and the verification battery.

pub mod goldens;

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{rat_int, Field, Rat};
use crate::groebner::cache::BasisCache;
use crate::groebner::{
    buchberger, eliminate_limited, ideal_member, radical_member, reduce, GroebnerError, Limits,
    PolySystem,
};
use crate::poly::{MonomialOrder, MultiPoly, VarContext};
use crate::ratfunc::{KPoly, RatFunc};
use crate::symform::{
    build_generic, char_poly, discriminant, eig_names, generic_symmetric, sym_ctx, PolyMatrix,
};

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("eigenvalue multiset has no repeated value; the matrix is not on the surface")]
    NoRepeatedEigenvalue,
    #[error("denominator vanishes at k = {0}")]
    PoleAtK(Rat),
}

/// One verification check: recomputed every run, never cached as passed.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub relations_secs: f64,
    pub simplify_secs: f64,
    pub restrict_secs: f64,
    pub checks_secs: f64,
}

/// Everything the `derive` pipeline produces for one size.
#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub n: usize,
    pub rels: PolySystem<Rat>,
    pub rels_simplified: PolySystem<Rat>,
    pub m0: PolySystem<Rat>,
    pub checks: Vec<CheckResult>,
    /// Wall-clock data; excluded from the canonical JSON so equal runs
    /// serialize byte-identically.
    pub timings: Timings,
}

impl DerivationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Canonical JSON (schema 1). Deterministic for a fixed input.
    pub fn to_json(&self) -> Value {
        use crate::groebner::cache::system_to_json;
        json!({
            "schema": 1,
            "n": self.n,
            "rels": system_to_json(&self.rels),
            "rels_simplified": system_to_json(&self.rels_simplified),
            "m0_eqs": system_to_json(&self.m0),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name, "pass": c.pass, "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    /// Listing-style text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("derivation for n = {}\n\n", self.n));
        out.push_str(&render_system("Rels", &self.rels));
        out.push_str(&render_system("RelsS", &self.rels_simplified));
        out.push_str(&render_system("M0eqs", &self.m0));
        out.push_str("checks:\n");
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {} - {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out
    }
}

/// Render a polynomial system in the listings' brace style.
pub fn render_system<F: Field>(name: &str, sys: &PolySystem<F>) -> String {
    let mut out = format!("{name} =\n");
    for (i, g) in sys.gens().iter().enumerate() {
        let open = if i == 0 { "  {" } else { "   " };
        let close = if i + 1 == sys.len() { "}" } else { "," };
        out.push_str(&format!("{open}{g}{close}\n"));
    }
    out.push('\n');
    out
}

/// Context of the elimination: o-variables and eigenvalue variables
/// first (the block to drop), matrix-entry variables second.
fn elimination_system(n: usize) -> (PolySystem<Rat>, Vec<String>) {
    let setup = build_generic(n);
    let mut names: Vec<String> = setup.ctx.names().to_vec();
    names.extend(sym_ctx(n).names().iter().cloned());
    let full = VarContext::new(names);
    let order = MonomialOrder::GrevLex;
    let mut gens: Vec<MultiPoly<Rat>> = setup
        .ort_es
        .gens()
        .iter()
        .map(|g| g.rename_into(&full, order))
        .collect();
    for i in 0..n {
        for j in i..n {
            let xvar =
                MultiPoly::<Rat>::var_named(&full, order, &format!("x{}{}", i + 1, j + 1)).unwrap();
            gens.push(xvar.sub(&setup.x.at(i, j).rename_into(&full, order)));
        }
    }
    (
        PolySystem::new(full, order, gens),
        setup.ctx.names().to_vec(),
    )
}

/// Minimal-degree basis of the ideal of all relations between the entries
/// of the generic member: the complete equation system for the surface.
pub fn relations_ideal(
    n: usize,
    limits: &Limits,
    cache: &BasisCache,
) -> Result<PolySystem<Rat>, VarietyError> {
    assert!(n >= 3, "the derivation is for n >= 3");
    if let Some(hit) = cache.load(n, "rels", "") {
        return Ok(hit);
    }
    let (sys, drop_names) = elimination_system(n);
    let drop: Vec<&str> = drop_names.iter().map(|s| s.as_str()).collect();
    let (basis, _) = eliminate_limited(&sys, &drop, limits)?;
    let _ = cache.store(n, "rels", "", &basis);
    Ok(basis)
}

/// Remove members some power of which lies in the ideal of the rest;
/// repeat to a fixed point. Scan order: descending total degree, ties by
/// the serialized form, so runs are reproducible. The output generates
/// the same radical; members come out primitive-normalized.
pub fn simplify_system(sys: &PolySystem<Rat>) -> PolySystem<Rat> {
    let mut gens: Vec<MultiPoly<Rat>> = sys.gens().iter().map(|g| g.normalize_primitive()).collect();
    'again: loop {
        let mut order_idx: Vec<usize> = (0..gens.len()).collect();
        order_idx.sort_by_key(|&i| {
            (
                std::cmp::Reverse(gens[i].total_degree().unwrap_or(0)),
                gens[i].to_string(),
            )
        });
        for &i in &order_idx {
            if gens.len() == 1 {
                break;
            }
            let candidate = gens[i].clone();
            let rest: Vec<MultiPoly<Rat>> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let rest_sys = PolySystem::new(sys.ctx().clone(), sys.order(), rest.clone());
            if radical_member(&candidate, &rest_sys) {
                gens = rest;
                continue 'again;
            }
        }
        break;
    }
    PolySystem::new(sys.ctx().clone(), sys.order(), gens)
}

/// Restriction to the trace-zero hyperplane: substitute
/// `x11 = -(x22 + ... + xnn)`, re-derive the reduced basis in the
/// remaining variables, and drop radical-redundant members the same way
/// the main derivation does (the reference restriction is the simplified
/// system).
pub fn restrict_trace_zero(sys: &PolySystem<Rat>) -> PolySystem<Rat> {
    simplify_system(&restrict_trace_zero_full(sys))
}

/// The reduced basis of the substituted system, before simplification.
pub fn restrict_trace_zero_full(sys: &PolySystem<Rat>) -> PolySystem<Rat> {
    let ctx = sys.ctx();
    let order = sys.order();
    let n_from_ctx = {
        // context is the xIJ upper triangle: n(n+1)/2 variables
        let m = ctx.len();
        (0..).find(|&n| n * (n + 1) / 2 == m).expect("triangular context")
    };
    let mut binding = MultiPoly::<Rat>::zero(ctx, order);
    for i in 2..=n_from_ctx {
        let v = MultiPoly::<Rat>::var_named(ctx, order, &format!("x{i}{i}")).unwrap();
        binding = binding.sub(&v);
    }
    let mut bindings = BTreeMap::new();
    bindings.insert("x11".to_string(), binding);
    let substituted: Vec<MultiPoly<Rat>> = sys
        .gens()
        .iter()
        .map(|g| g.substitute(&bindings).expect("x11 in context"))
        .collect();
    let target_ctx = substituted
        .first()
        .map(|p| p.ctx().clone())
        .unwrap_or_else(|| ctx.clone());
    let lifted: Vec<MultiPoly<Rat>> = substituted
        .into_iter()
        .map(|p| p.rename_into(&target_ctx, order))
        .collect();
    buchberger(&PolySystem::new(target_ctx, order, lifted))
}

/// Arrange an eigenvalue multiset as (lam, lam, mu1, ..): the repeated
/// value first. Fails when every value is distinct.
fn arrange_repeated(eigs: &[Rat]) -> Result<Vec<Rat>, VarietyError> {
    let mut sorted = eigs.to_vec();
    sorted.sort();
    let dup = sorted
        .windows(2)
        .position(|w| w[0] == w[1])
        .ok_or(VarietyError::NoRepeatedEigenvalue)?;
    let lam = sorted[dup].clone();
    let mut rest: Vec<Rat> = Vec::new();
    let mut taken = 0;
    for v in sorted {
        if v == lam && taken < 2 {
            taken += 1;
        } else {
            rest.push(v);
        }
    }
    let mut out = vec![lam.clone(), lam];
    out.extend(rest);
    Ok(out)
}

/// The orbit as intersection of the surface with prescribed
/// characteristic-polynomial coefficients: the discriminant equation plus
/// coefficient matching of char(X) against prod (t - l_i). Defines the
/// orbit set-theoretically; not a minimal basis.
pub fn orbit_ideal_viete(eigs: &[Rat]) -> PolySystem<Rat> {
    let n = eigs.len();
    let order = MonomialOrder::GrevLex;
    let ctx = sym_ctx(n);
    let x = generic_symmetric(n, order);
    let p = char_poly(&x);
    // q(t) = prod (t - l_i), expanded over the constants
    let one = MultiPoly::<Rat>::one(&ctx, order);
    let mut q: Vec<MultiPoly<Rat>> = vec![one.clone()];
    for l in eigs {
        let mut next = vec![MultiPoly::<Rat>::zero(&ctx, order); q.len() + 1];
        for (i, c) in q.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.scale(l));
        }
        q = next;
    }
    let mut gens = vec![discriminant(n)];
    for i in 0..n {
        gens.push(p.coeff(i).sub(&q[i]).normalize_primitive());
    }
    let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
    PolySystem::new(ctx, order, gens)
}

/// An orbit with its minimal-degree equations.
#[derive(Clone, Debug)]
pub struct OrbitSystem {
    /// Arranged eigenvalues, repeated value first.
    pub eigenvalues: Vec<Rat>,
    pub equations: PolySystem<Rat>,
    pub ambient_dim: usize,
}

/// Minimal-degree reduced basis for the orbit of the matrix with the
/// given eigenvalue multiset (which must have a repeated value): the
/// relations elimination with the eigenvalue variables pinned.
pub fn orbit_minimal_eqs(
    eigs: &[Rat],
    limits: &Limits,
    cache: &BasisCache,
) -> Result<OrbitSystem, VarietyError> {
    let n = eigs.len();
    assert!(n >= 3, "orbit equations need n >= 3");
    let arranged = arrange_repeated(eigs)?;
    let params = arranged
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",");
    if let Some(hit) = cache.load(n, "orbit_eqs", &params) {
        return Ok(OrbitSystem {
            eigenvalues: arranged,
            equations: hit,
            ambient_dim: n * (n + 1) / 2,
        });
    }
    let (sys, drop_names) = elimination_system(n);
    // pin the eigenvalue variables to the arranged values
    let mut bindings = BTreeMap::new();
    for (name, value) in eig_names(n).iter().zip(
        std::iter::once(&arranged[0]).chain(arranged.iter().skip(2)),
    ) {
        bindings.insert(
            name.clone(),
            MultiPoly::constant(sys.ctx(), sys.order(), value.clone()),
        );
    }
    let pinned: Vec<MultiPoly<Rat>> = sys
        .gens()
        .iter()
        .map(|g| {
            g.substitute(&bindings)
                .expect("eigenvalue variables in context")
                .rename_into(sys.ctx(), sys.order())
        })
        .collect();
    let pinned_sys = PolySystem::new(sys.ctx().clone(), sys.order(), pinned);
    let drop: Vec<&str> = drop_names.iter().map(|s| s.as_str()).collect();
    let (basis, _) = eliminate_limited(&pinned_sys, &drop, limits)?;
    // the reference orbit systems are the simplified ones
    let basis = simplify_system(&basis);
    let _ = cache.store(n, "orbit_eqs", &params, &basis);
    Ok(OrbitSystem {
        eigenvalues: arranged,
        equations: basis,
        ambient_dim: n * (n + 1) / 2,
    })
}

/// The symbolic 1-orbit system for D = diag(1,1,-2) with the rotation
/// axis `e1 + k e2`: the orthogonality and fixed-axis conditions on the
/// change matrix, eliminated down to the matrix entries, over the
/// rational-function field in k.
pub fn one_orbit_eqs() -> PolySystem<RatFunc> {
    let n = 3;
    let order = MonomialOrder::GrevLex;
    let mut names: Vec<String> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            names.push(format!("y{i}{j}"));
        }
    }
    let y_count = names.len();
    names.extend(sym_ctx(n).names().iter().cloned());
    let full = VarContext::new(names);

    let var = |name: &str| MultiPoly::<RatFunc>::var_named(&full, order, name).unwrap();
    let konst = |v: i64| MultiPoly::<RatFunc>::constant(&full, order, RatFunc::from_rat(&rat_int(v)));
    let k = MultiPoly::<RatFunc>::constant(&full, order, RatFunc::gen());

    let mut y_entries = Vec::with_capacity(9);
    for i in 1..=n {
        for j in 1..=n {
            y_entries.push(var(&format!("y{i}{j}")));
        }
    }
    let y = PolyMatrix::from_entries(n, y_entries);
    let d = PolyMatrix::from_entries(
        n,
        vec![
            konst(1),
            konst(0),
            konst(0),
            konst(0),
            konst(1),
            konst(0),
            konst(0),
            konst(0),
            konst(-2),
        ],
    );
    let x = y.mul(&d).mul(&y.transpose());

    let mut gens: Vec<MultiPoly<RatFunc>> = Vec::new();
    // row orthonormality
    for i in 0..n {
        for j in i..n {
            let mut acc = MultiPoly::<RatFunc>::zero(&full, order);
            for c in 0..n {
                acc = acc.add(&y.at(i, c).mul(y.at(j, c)));
            }
            if i == j {
                acc = acc.sub(&konst(1));
            }
            gens.push(acc);
        }
    }
    // fixed axis: Y (e1 + k e2) = e1 + k e2, three linear equations
    for i in 0..n {
        let lhs = y.at(i, 0).add(&y.at(i, 1).mul(&k));
        let rhs = match i {
            0 => konst(1),
            1 => k.clone(),
            _ => konst(0),
        };
        gens.push(lhs.sub(&rhs));
    }
    // entry links
    for i in 0..n {
        for j in i..n {
            let xvar = var(&format!("x{}{}", i + 1, j + 1));
            gens.push(xvar.sub(x.at(i, j)));
        }
    }

    let sys = PolySystem::new(full.clone(), order, gens);
    let drop: Vec<&str> = full.names()[..y_count].iter().map(|s| s.as_str()).collect();
    let (basis, _) = eliminate_limited(&sys, &drop, &Limits::unlimited()).expect("desk scale");
    basis
}

/// Specialize the symbolic 1-orbit system at a numeric parameter value.
pub fn one_orbit_at_k(sys: &PolySystem<RatFunc>, kv: &Rat) -> Result<PolySystem<Rat>, VarietyError> {
    let ctx = sys.ctx().clone();
    let order = sys.order();
    let mut gens = Vec::with_capacity(sys.len());
    for g in sys.gens() {
        let terms = g
            .terms()
            .iter()
            .map(|(m, c)| {
                c.eval(kv)
                    .map(|v| (m.clone(), v))
                    .ok_or_else(|| VarietyError::PoleAtK(kv.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = MultiPoly::from_terms(&ctx, order, terms);
        if !p.is_zero() {
            gens.push(p.normalize_primitive());
        }
    }
    Ok(PolySystem::new(ctx, order, gens))
}

/// The limit of the 1-orbit system as the axis parameter grows without
/// bound: substitute `x23 = -x13/k` (the fixed-axis relation makes x13
/// the independent variable), rescale each member by the power of k that
/// balances it, and take coefficient limits. The result is the 1-orbit of
/// D by the second axis.
pub fn one_orbit_limit_infinity(sys: &PolySystem<RatFunc>) -> PolySystem<Rat> {
    let order = sys.order();
    // x23 -> (-1/k) x13
    let inv_k = RatFunc::new(KPoly::constant(rat_int(-1)), KPoly::gen());
    let x13 = MultiPoly::<RatFunc>::var_named(sys.ctx(), order, "x13").unwrap();
    let mut bindings = BTreeMap::new();
    bindings.insert("x23".to_string(), x13.scale(&inv_k));
    let mut out_gens: Vec<MultiPoly<Rat>> = Vec::new();
    let mut out_ctx: Option<VarContext> = None;
    for g in sys.gens() {
        let s = g.substitute(&bindings).expect("x23 in context");
        if s.is_zero() {
            continue; // the fixed-axis relation itself
        }
        let scale_pow = s
            .terms()
            .iter()
            .map(|(_, c)| c.infinity_order())
            .max()
            .expect("nonzero member");
        let terms: Vec<_> = s
            .terms()
            .iter()
            .map(|(m, c)| {
                let v = c
                    .shift_k(-scale_pow)
                    .limit_at_infinity()
                    .expect("balanced after rescale");
                (m.clone(), v)
            })
            .collect();
        let ctx = s.ctx().clone();
        let p = MultiPoly::from_terms(&ctx, order, terms);
        if !p.is_zero() {
            out_ctx = Some(ctx);
            out_gens.push(p.normalize_primitive());
        }
    }
    let ctx = out_ctx.expect("nonempty limit system");
    let gens = out_gens
        .into_iter()
        .map(|p| p.rename_into(&ctx, order))
        .collect();
    PolySystem::new(ctx, order, gens)
}

/// The derivation cross-checks: the discriminant reduces to
/// zero, the diagonal substitution annihilates every member, and the
/// generic member is symmetric with the expected trace and determinant
/// modulo the orthogonality ideal. Also records whether the simplified
/// system stays radical-equivalent to the full basis.
pub fn verify_derivation(n: usize, rels: &PolySystem<Rat>, rels_s: &PolySystem<Rat>) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let rels_gb = buchberger(rels);

    // check 1: the discriminant belongs to the relations ideal
    let disc = discriminant(n);
    let r = reduce(&disc.rename_into(rels.ctx(), rels.order()), &rels_gb);
    checks.push(CheckResult::new(
        "discriminant reduces to zero by Rels",
        r.is_zero(),
        if r.is_zero() {
            "exact reduction to 0".to_string()
        } else {
            format!("remainder has {} terms", r.num_terms())
        },
    ));

    // check 2: substituting the entries of diag(lam, lam, mu1, ..)
    // produces the zero polynomial
    let eigs = eig_names(n);
    let eig_ctx = VarContext::new(eigs.clone());
    let order = MonomialOrder::GrevLex;
    let mut bindings = BTreeMap::new();
    for i in 1..=n {
        for j in i..=n {
            let value = if i != j {
                MultiPoly::<Rat>::zero(&eig_ctx, order)
            } else if i <= 2 {
                MultiPoly::var_named(&eig_ctx, order, "lam").unwrap()
            } else {
                MultiPoly::var_named(&eig_ctx, order, &format!("mu{}", i - 2)).unwrap()
            };
            bindings.insert(format!("x{i}{j}"), value);
        }
    }
    let all_zero = rels
        .gens()
        .iter()
        .all(|g| g.substitute(&bindings).expect("x variables").is_zero());
    checks.push(CheckResult::new(
        "diagonal substitution annihilates Rels",
        all_zero,
        "entries of diag(lam, lam, mu..) substituted",
    ));

    // check 3: symmetry, trace and determinant of the generic member
    let setup = build_generic(n);
    let symmetric = setup.x.is_symmetric();
    let ort_gb = buchberger(&setup.ort_es);
    let trace_ok = reduce(&setup.trace_identity(), &ort_gb).is_zero();
    let det_ok = reduce(&setup.det_identity(), &ort_gb).is_zero();
    checks.push(CheckResult::new(
        "generic member symmetric",
        symmetric,
        "entry-wise equality as polynomials",
    ));
    checks.push(CheckResult::new(
        "trace identity modulo orthogonality ideal",
        trace_ok,
        "trace(X) = 2 lam + mu1 + ..",
    ));
    checks.push(CheckResult::new(
        "determinant identity modulo orthogonality ideal",
        det_ok,
        "det(X) = lam^2 mu1 ..",
    ));

    // simplified system generates the same radical: square of each member
    // of either side belongs to the other ideal
    let rels_s_gb = buchberger(rels_s);
    let fwd = rels_s
        .gens()
        .iter()
        .all(|p| reduce(&p.mul(p), &rels_gb).is_zero());
    let bwd = rels
        .gens()
        .iter()
        .all(|p| reduce(&p.mul(p), &rels_s_gb).is_zero());
    checks.push(CheckResult::new(
        "simplified system equivalent to Rels",
        fwd && bwd,
        "square of each member of one system belongs to the ideal of the other",
    ));

    checks
}

/// How a computed system compares against a printed one.
#[derive(Clone, Debug)]
pub struct GoldenComparison {
    pub ideal_equal: bool,
    pub squared_equivalent: bool,
    /// Exact term-set match after primitive normalization.
    pub exact_match: bool,
}

impl GoldenComparison {
    pub fn verdict(&self) -> &'static str {
        if self.exact_match {
            "exact match"
        } else if self.ideal_equal {
            "equivalent, different basis"
        } else if self.squared_equivalent {
            "radical-equivalent, different ideal presentation"
        } else {
            "MISMATCH"
        }
    }
}

/// Compare a computed system with a golden fixture over the same
/// variables: ideal equality both ways, squared-membership both ways,
/// and exact normalized term-set equality.
pub fn golden_compare(computed: &PolySystem<Rat>, golden: &PolySystem<Rat>) -> GoldenComparison {
    let ctx = computed.ctx().clone();
    let order = computed.order();
    let lifted: Vec<MultiPoly<Rat>> = golden
        .gens()
        .iter()
        .map(|g| g.rename_into(&ctx, order))
        .collect();
    let golden_sys = PolySystem::new(ctx, order, lifted);

    let ga = buchberger(computed);
    let gb = buchberger(&golden_sys);
    let ideal_equal = computed.gens().iter().all(|p| reduce(p, &gb).is_zero())
        && golden_sys.gens().iter().all(|p| reduce(p, &ga).is_zero());
    let squared_equivalent = computed
        .gens()
        .iter()
        .all(|p| reduce(&p.mul(p), &gb).is_zero())
        && golden_sys
            .gens()
            .iter()
            .all(|p| reduce(&p.mul(p), &ga).is_zero());

    let norm_set = |sys: &PolySystem<Rat>| -> Vec<String> {
        let mut v: Vec<String> = sys
            .gens()
            .iter()
            .map(|g| g.normalize_primitive().to_string())
            .collect();
        v.sort();
        v
    };
    let exact_match = norm_set(computed) == norm_set(&golden_sys);

    GoldenComparison {
        ideal_equal,
        squared_equivalent,
        exact_match,
    }
}

/// Run the whole derivation for one size: relations, simplification,
/// trace-zero restriction, checks.
pub fn derive(
    n: usize,
    limits: &Limits,
    cache: &BasisCache,
    simplify: bool,
) -> Result<DerivationReport, VarietyError> {
    let mut timings = Timings::default();
    let t = Instant::now();
    let rels = relations_ideal(n, limits, cache)?;
    timings.relations_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let rels_simplified = if simplify {
        simplify_system(&rels)
    } else {
        rels.clone()
    };
    timings.simplify_secs = t.elapsed().as_secs_f64();

    // the restriction acts on the full relations basis: the substituted
    // ideal is the restriction of the surface, not of one presentation
    let t = Instant::now();
    let m0 = restrict_trace_zero(&rels);
    timings.restrict_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let mut checks = verify_derivation(n, &rels, &rels_simplified);
    timings.checks_secs = t.elapsed().as_secs_f64();

    // the simplified member count varies with presentation; keep the
    // computed figure visible
    checks.push(CheckResult::new(
        "simplified member count",
        true,
        format!(
            "{} members of degrees {:?}",
            rels_simplified.len(),
            rels_simplified
                .gens()
                .iter()
                .map(|g| g.total_degree().unwrap_or(0))
                .collect::<Vec<_>>()
        ),
    ));

    Ok(DerivationReport {
        n,
        rels,
        rels_simplified,
        m0,
        checks,
        timings,
    })
}

/// Exploratory probe for the conjecture that a power of each member is a
/// multiple of the discriminant: tests exact divisibility of the square
/// and the fourth power. Reported, never gated on.
pub fn divisibility_probe(rels_s: &PolySystem<Rat>) -> Vec<CheckResult> {
    let n = 3;
    let disc = discriminant(n).rename_into(rels_s.ctx(), rels_s.order());
    rels_s
        .gens()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let sq = g.mul(g);
            let q2 = sq.div_exact(&disc).is_some();
            let q4 = sq.mul(&sq).div_exact(&disc).is_some();
            CheckResult::new(
                &format!("discriminant divides a power of member {}", i + 1),
                true, // informational
                format!("disc | g^2: {q2}; disc | g^4: {q4}"),
            )
        })
        .collect()
}

/// `ideal_member` convenience for tests and the battery.
pub fn in_ideal(p: &MultiPoly<Rat>, sys: &PolySystem<Rat>) -> bool {
    ideal_member(p, sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::numgeo::{conjugate, eval_poly_at, poly_scale, random_so, SymMatrixN};
    use crate::poly::parse_poly;

    #[test]
    fn simplify_removes_radical_redundancy() {
        let ctx = VarContext::new(vec!["x", "y"]);
        let order = MonomialOrder::GrevLex;
        let x = MultiPoly::<Rat>::var_named(&ctx, order, "x").unwrap();
        let sys = PolySystem::new(ctx.clone(), order, vec![x.clone(), x.pow(2)]);
        let s = simplify_system(&sys);
        assert_eq!(s.len(), 1);
        assert_eq!(s.gens()[0], x);
        // idempotence
        let again = simplify_system(&s);
        assert_eq!(again, s);
    }

    #[test]
    fn viete_orbit_system_shape() {
        // eigenvalues (1,1,-2): n + 1 equations with the trace and
        // determinant conditions among them
        let eigs = vec![rat(1, 1), rat(1, 1), rat(-2, 1)];
        let sys = orbit_ideal_viete(&eigs);
        assert_eq!(sys.len(), 4);
        let trace = parse_poly::<Rat>("x11 + x22 + x33", sys.ctx(), sys.order()).unwrap();
        assert!(sys.gens().contains(&trace));
        // the determinant condition det(X) = -2 appears as det(X) + 2
        let det_cond = sys
            .gens()
            .iter()
            .find(|g| g.total_degree() == Some(3))
            .expect("cubic member");
        // at diag(1,1,-2) every member vanishes
        let d = SymMatrixN::diag(&[1.0, 1.0, -2.0]);
        for g in sys.gens() {
            assert!(eval_poly_at(g, &d).abs() < 1e-12);
        }
        // at diag(1,1,-1) the determinant condition does not vanish
        let off = SymMatrixN::diag(&[1.0, 1.0, -1.0]);
        assert!(eval_poly_at(det_cond, &off).abs() > 0.5);
    }

    #[test]
    fn viete_system_vanishes_on_sampled_one_orbit() {
        let eigs = vec![rat(1, 1), rat(1, 1), rat(-2, 1)];
        let sys = orbit_ideal_viete(&eigs);
        let d = SymMatrixN::diag(&[1.0, 1.0, -2.0]);
        for seed in 0..100u64 {
            let phi = (seed as f64) * 0.0613 + 0.11;
            let g = crate::numgeo::rotation_axis_angle([1.0, 0.0, 0.0], phi);
            let x = conjugate(&g, &d);
            for p in sys.gens() {
                assert!(eval_poly_at(p, &x).abs() < 1e-9 * poly_scale(p).max(1.0));
            }
        }
        let _ = random_so(3, 0);
    }

    #[test]
    fn arrange_repeated_orders_dup_first() {
        let a = arrange_repeated(&[rat(3, 1), rat(1, 1), rat(3, 1)]).unwrap();
        assert_eq!(a, vec![rat(3, 1), rat(3, 1), rat(1, 1)]);
        assert!(arrange_repeated(&[rat(1, 1), rat(2, 1), rat(3, 1)]).is_err());
    }
}
