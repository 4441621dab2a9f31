//! Buchberger Groebner bases, normal-form reduction, ideal and radical
//! membership, and elimination ideals.
//!
//! Determinism contract: the S-pair queue uses the normal selection
//! strategy (smallest lcm in the active order, ties by generator indices),
//! reducers are chosen by lowest basis index, and output bases are
//! inter-reduced, canonically normalized and sorted by leading monomial.
//! The same generators in the same order produce bit-identical bases.

pub mod cache;

use std::collections::BTreeSet;
use std::time::Instant;

use thiserror::Error;

use crate::field::Field;
use crate::poly::{MonomialOrder, MultiPoly, VarContext};

/// An ordered ideal basis: generators plus their shared context and order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem<F: Field> {
    ctx: VarContext,
    order: MonomialOrder,
    gens: Vec<MultiPoly<F>>,
    reduced: bool,
}

impl<F: Field> PolySystem<F> {
    pub fn new(ctx: VarContext, order: MonomialOrder, gens: Vec<MultiPoly<F>>) -> Self {
        for g in &gens {
            assert!(
                *g.ctx() == ctx && g.order() == order,
                "generator context/order mismatch"
            );
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        PolySystem {
            ctx,
            order,
            gens,
            reduced: false,
        }
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn gens(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when this basis came out of the Buchberger post-pass:
    /// pairwise-reduced, canonically normalized, leading monomials
    /// pairwise non-divisible.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Restore the reduced flag on a basis known to be in reduced form
    /// (cache loads of bases the post-pass produced).
    pub(crate) fn mark_reduced(&mut self) {
        self.reduced = true;
    }

    /// Largest total degree among the generators.
    pub fn max_degree(&self) -> u32 {
        self.gens
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Limits {
    /// Abort after this many S-pairs have been processed.
    pub max_pairs: Option<usize>,
    /// Abort when any basis coefficient exceeds this many bits.
    pub max_coeff_bits: Option<u64>,
    /// Abort after this much wall-clock time.
    pub max_millis: Option<u64>,
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits::default()
    }
}

/// Where a limited run stood when it stopped.
#[derive(Clone, Debug)]
pub struct Progress {
    pub pairs_processed: usize,
    pub pairs_remaining: usize,
    pub basis_size: usize,
    pub max_degree_seen: u32,
    pub elapsed_millis: u128,
}

#[derive(Debug, Error)]
pub enum GroebnerError {
    #[error("resource limit exceeded ({what}): {progress:?}")]
    LimitExceeded { what: String, progress: Progress },
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub pairs_processed: usize,
    pub pairs_skipped: usize,
    pub reductions_to_zero: usize,
    pub max_degree_seen: u32,
}

/// Normal form of `f` modulo the generators of `sys`: no remaining term is
/// divisible by any generator's leading monomial, and `f - reduce(f, sys)`
/// lies in the ideal the generators span.
pub fn reduce<F: Field>(f: &MultiPoly<F>, sys: &PolySystem<F>) -> MultiPoly<F> {
    assert!(
        f.ctx() == sys.ctx() && f.order() == sys.order(),
        "reduce: context/order mismatch"
    );
    normal_form(f, &sys.gens, None).1
}

/// Reduction keeping the trace: returns `(q, r)` with
/// `f = sum_i q[i] * gens[i] + r` exactly.
pub fn reduce_with_quotients<F: Field>(
    f: &MultiPoly<F>,
    sys: &PolySystem<F>,
) -> (Vec<MultiPoly<F>>, MultiPoly<F>) {
    assert!(
        f.ctx() == sys.ctx() && f.order() == sys.order(),
        "reduce: context/order mismatch"
    );
    let mut quotients = vec![MultiPoly::zero(sys.ctx(), sys.order()); sys.gens.len()];
    let (_, r) = normal_form(f, &sys.gens, Some(&mut quotients));
    (quotients, r)
}

/// Full normal form against a slice of nonzero reducers. The reducer for
/// each leading term is the first (lowest index) whose leading monomial
/// divides it. When `quotients` is given, the division trace is recorded
/// so `f = sum q[i] g[i] + r` holds exactly.
fn normal_form<F: Field>(
    f: &MultiPoly<F>,
    gens: &[MultiPoly<F>],
    mut quotients: Option<&mut Vec<MultiPoly<F>>>,
) -> (usize, MultiPoly<F>) {
    let order = f.order();
    let ctx = f.ctx();
    let lead: Vec<(&crate::poly::Monomial, &F, u64)> = gens
        .iter()
        .map(|g| {
            let (m, c) = g.leading().expect("nonzero reducer");
            (m, c, m.mask())
        })
        .collect();
    let mut rem_terms: Vec<(crate::poly::Monomial, F)> = Vec::new();
    let mut work = f.clone();
    let mut steps = 0usize;
    'outer: while let Some((pm, pc)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let pmask = pm.mask();
        for (i, (gm, gc, gmask)) in lead.iter().enumerate() {
            if gmask & !pmask != 0 {
                continue;
            }
            if gm.divides(&pm) {
                let qm = pm.div(gm);
                let qc = pc.div_ref(gc);
                work = work.sub_scaled(&qc, &qm, &gens[i]);
                steps += 1;
                if let Some(q) = quotients.as_deref_mut() {
                    q[i] = q[i].add(&MultiPoly::from_terms(ctx, order, vec![(qm, qc)]));
                }
                continue 'outer;
            }
        }
        // leading term irreducible: it becomes part of the remainder
        rem_terms.push((pm, pc));
        work = work.drop_leading();
    }
    (steps, MultiPoly::from_terms(ctx, order, rem_terms))
}

fn s_poly<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let lcm = fm.lcm(gm);
    let a = f
        .mul_monomial(&lcm.div(fm))
        .scale(&F::one().div_ref(fc));
    let b = g
        .mul_monomial(&lcm.div(gm))
        .scale(&F::one().div_ref(gc));
    a.sub(&b)
}

/// Pseudo normal form: the remainder up to a positive scale. Each step
/// cross-scales instead of dividing, which keeps rational coefficients in
/// integer form throughout; the engine normalizes afterwards anyway.
///
/// The whole state lives in one polynomial so rescaling stays uniform:
/// `fixed` counts confirmed-irreducible leading terms, and every
/// subtraction only touches monomials at or below the current head.
fn engine_nf<F: Field>(f: MultiPoly<F>, reducers: &[&MultiPoly<F>]) -> MultiPoly<F> {
    let lead: Vec<(&crate::poly::Monomial, &F, u64)> = reducers
        .iter()
        .map(|g| {
            let (m, c) = g.leading().expect("nonzero reducer");
            (m, c, m.mask())
        })
        .collect();
    let mut work = f;
    let mut fixed = 0usize;
    let mut steps = 0usize;
    'outer: while fixed < work.num_terms() {
        let (pm, pc) = {
            let (m, c) = &work.terms()[fixed];
            (m.clone(), c.clone())
        };
        let pmask = pm.mask();
        for (i, (gm, gc, gmask)) in lead.iter().enumerate() {
            if gmask & !pmask != 0 {
                continue;
            }
            if gm.divides(&pm) {
                let qm = pm.div(gm);
                let (s_work, s_g) = F::pseudo_scales(&pc, gc);
                if s_work != F::one() {
                    work = work.scale(&s_work);
                }
                work = work.sub_scaled(&s_g, &qm, reducers[i]);
                steps += 1;
                if steps.is_multiple_of(8)
                    && work
                        .terms()
                        .get(fixed)
                        .and_then(|(_, c)| c.bit_size())
                        .unwrap_or(0)
                        > 128
                {
                    // keep pseudo-step coefficient growth in check
                    work = work.normalized();
                }
                continue 'outer;
            }
        }
        fixed += 1;
    }
    work
}

/// Reduced Groebner basis of the ideal spanned by `sys` under its order.
/// Termination is guaranteed; panics only on context misuse.
pub fn buchberger<F: Field>(sys: &PolySystem<F>) -> PolySystem<F> {
    let (basis, _) = buchberger_limited(sys, &Limits::unlimited()).expect("unlimited run");
    basis
}

/// Buchberger with the Gebauer-Moeller pair update and resource limits;
/// aborts cleanly with partial progress when a limit trips.
pub fn buchberger_limited<F: Field>(
    sys: &PolySystem<F>,
    limits: &Limits,
) -> Result<(PolySystem<F>, Stats), GroebnerError> {
    let order = sys.order();
    let ctx = sys.ctx().clone();
    let started = Instant::now();
    let mut stats = Stats::default();

    // stable store of every element ever added; `alive` marks the current
    // minimal generating set
    let mut store: Vec<MultiPoly<F>> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    // pending pairs keyed by (deg(lcm), lcm sort key, i, j), i < j:
    // pop_first is the normal selection strategy by lcm degree with
    // deterministic tie-breaks
    let mut pairs: BTreeSet<(u32, Vec<i64>, usize, usize)> = BTreeSet::new();

    // Gebauer-Moeller update: prune candidate pairs of the new element
    // among themselves (keep minimal lcms), drop coprime-lead candidates
    // (product criterion), prune dominated old pairs (chain criterion),
    // and retire alive elements whose lead the new one divides.
    let mut add_element = |h: MultiPoly<F>,
                           store: &mut Vec<MultiPoly<F>>,
                           alive: &mut Vec<bool>,
                           pairs: &mut BTreeSet<(u32, Vec<i64>, usize, usize)>| {
        let t = store.len();
        let lm_h = h.leading_monomial().clone();

        let mut cand: Vec<(usize, crate::poly::Monomial, bool)> = (0..store.len())
            .filter(|&g| alive[g])
            .map(|g| {
                let lm_g = store[g].leading_monomial();
                (g, lm_g.lcm(&lm_h), lm_g.gcd_is_one(&lm_h))
            })
            .collect();
        // keep candidates whose lcm no other candidate's lcm strictly
        // divides; among equal lcms keep the lowest index
        let mut keep: Vec<(usize, crate::poly::Monomial, bool)> = Vec::new();
        'cand: for (g, lcm, coprime) in cand.drain(..) {
            for (g2, lcm2, _) in keep.iter() {
                if lcm2.divides(&lcm) && (*lcm2 != lcm || *g2 < g) {
                    stats.pairs_skipped += 1;
                    continue 'cand;
                }
            }
            keep.retain(|(_, lcm2, _)| {
                let drop = lcm.divides(lcm2) && *lcm2 != lcm;
                if drop {
                    stats.pairs_skipped += 1;
                }
                !drop
            });
            keep.push((g, lcm, coprime));
        }
        // chain criterion against existing pairs
        pairs.retain(|(_, _, i, j)| {
            let lcm_ij = store[*i].leading_monomial().lcm(store[*j].leading_monomial());
            let dominated = lm_h.divides(&lcm_ij)
                && store[*i].leading_monomial().lcm(&lm_h) != lcm_ij
                && store[*j].leading_monomial().lcm(&lm_h) != lcm_ij;
            if dominated {
                stats.pairs_skipped += 1;
            }
            !dominated
        });
        for (g, lcm, coprime) in keep {
            if coprime {
                stats.pairs_skipped += 1; // product criterion
                continue;
            }
            pairs.insert((lcm.degree(), order.sort_key(&lcm), g, t));
        }
        for g in 0..store.len() {
            if alive[g] && lm_h.divides(store[g].leading_monomial()) {
                alive[g] = false;
            }
        }
        store.push(h);
        alive.push(true);
    };

    for g in &sys.gens {
        if !g.is_zero() {
            let g = g.normalized();
            stats.max_degree_seen = stats.max_degree_seen.max(g.total_degree().unwrap_or(0));
            add_element(g, &mut store, &mut alive, &mut pairs);
        }
    }

    let progress = |stats: &Stats, queue_len: usize, basis_len: usize, started: Instant| Progress {
        pairs_processed: stats.pairs_processed,
        pairs_remaining: queue_len,
        basis_size: basis_len,
        max_degree_seen: stats.max_degree_seen,
        elapsed_millis: started.elapsed().as_millis(),
    };

    while let Some((_, _, i, j)) = pairs.pop_first() {
        let alive_count = alive.iter().filter(|a| **a).count();
        if let Some(mp) = limits.max_pairs {
            if stats.pairs_processed >= mp {
                return Err(GroebnerError::LimitExceeded {
                    what: format!("max_pairs = {mp}"),
                    progress: progress(&stats, pairs.len() + 1, alive_count, started),
                });
            }
        }
        if let Some(ms) = limits.max_millis {
            if started.elapsed().as_millis() >= ms as u128 {
                return Err(GroebnerError::LimitExceeded {
                    what: format!("max_millis = {ms}"),
                    progress: progress(&stats, pairs.len() + 1, alive_count, started),
                });
            }
        }

        stats.pairs_processed += 1;
        if stats.pairs_processed.is_multiple_of(500) && std::env::var_os("DISCVAR_GB_TRACE").is_some() {
            eprintln!(
                "gb: pairs={} queue={} alive={} store={} elapsed={:?}",
                stats.pairs_processed,
                pairs.len(),
                alive.iter().filter(|a| **a).count(),
                alive.len(),
                started.elapsed()
            );
        }
        let s = s_poly(&store[i], &store[j]).normalized();
        let reducers: Vec<&MultiPoly<F>> = store
            .iter()
            .zip(alive.iter())
            .filter(|(_, a)| **a)
            .map(|(g, _)| g)
            .collect();
        let r = engine_nf(s, &reducers);
        if r.is_zero() {
            stats.reductions_to_zero += 1;
            continue;
        }
        let r = r.normalized();
        if let Some(maxbits) = limits.max_coeff_bits {
            let bits = r
                .terms()
                .iter()
                .filter_map(|(_, c)| c.bit_size())
                .max()
                .unwrap_or(0);
            if bits > maxbits {
                return Err(GroebnerError::LimitExceeded {
                    what: format!("max_coeff_bits = {maxbits}"),
                    progress: progress(&stats, pairs.len(), alive_count, started),
                });
            }
        }
        stats.max_degree_seen = stats.max_degree_seen.max(r.total_degree().unwrap_or(0));
        add_element(r, &mut store, &mut alive, &mut pairs);
    }

    let basis: Vec<MultiPoly<F>> = store
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    let reduced = reduce_basis(ctx, order, basis);
    Ok((reduced, stats))
}

/// Minimalize and inter-reduce a Groebner basis, normalize, sort by
/// leading monomial ascending.
fn reduce_basis<F: Field>(
    ctx: VarContext,
    order: MonomialOrder,
    basis: Vec<MultiPoly<F>>,
) -> PolySystem<F> {
    // minimal: drop any generator whose LM is divisible by another's LM
    let mut keep: Vec<MultiPoly<F>> = Vec::new();
    'next: for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial();
        for (j, h) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let hm = h.leading_monomial();
            if hm.divides(lm) && (hm != lm || j < i) {
                continue 'next;
            }
        }
        keep.push(g.clone());
    }
    // inter-reduce tails until stable
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let g = keep.remove(i);
            let (_, r) = normal_form(&g, &keep, None);
            let r = r.normalized();
            if r != g {
                changed = true;
            }
            keep.insert(i, r);
        }
        keep.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    keep.sort_by(|a, b| order.cmp(a.leading_monomial(), b.leading_monomial()));
    PolySystem {
        ctx,
        order,
        gens: keep,
        reduced: true,
    }
}

/// Ideal membership: `f` reduces to zero against the Groebner basis.
pub fn ideal_member<F: Field>(f: &MultiPoly<F>, gens: &PolySystem<F>) -> bool {
    let basis = if gens.reduced {
        gens.clone()
    } else {
        buchberger(gens)
    };
    reduce(f, &basis).is_zero()
}

/// Radical membership via the Rabinowitsch device: some power of `f` lies
/// in the ideal iff `1` lies in the ideal extended by `1 - t*f` for a
/// fresh variable `t`.
pub fn radical_member<F: Field>(f: &MultiPoly<F>, gens: &PolySystem<F>) -> bool {
    if f.is_zero() {
        return true;
    }
    let fresh = gens.ctx().fresh_name("t");
    let ext = gens.ctx().extended(&fresh);
    let order = MonomialOrder::GrevLex;
    let mut lifted: Vec<MultiPoly<F>> = gens
        .gens()
        .iter()
        .map(|g| g.rename_into(&ext, order))
        .collect();
    let t = MultiPoly::var(&ext, order, ext.len() - 1);
    let one = MultiPoly::one(&ext, order);
    lifted.push(one.sub(&t.mul(&f.rename_into(&ext, order))));
    let basis = buchberger(&PolySystem::new(ext, order, lifted));
    basis_contains_one(&basis)
}

fn basis_contains_one<F: Field>(basis: &PolySystem<F>) -> bool {
    basis
        .gens()
        .iter()
        .any(|g| g.total_degree() == Some(0) && !g.is_zero())
}

/// Basis of the elimination ideal `ideal(gens) ∩ F[kept]` where `kept` is
/// the context minus `drop`, under GrevLex on the kept variables.
///
/// Works by re-sorting the context to put dropped variables first, running
/// Buchberger under the block elimination order, keeping the members free
/// of dropped variables, and re-reducing over the kept context.
pub fn eliminate<F: Field>(sys: &PolySystem<F>, drop: &[&str]) -> PolySystem<F> {
    eliminate_limited(sys, drop, &Limits::unlimited())
        .expect("unlimited elimination")
        .0
}

pub fn eliminate_limited<F: Field>(
    sys: &PolySystem<F>,
    drop: &[&str],
    limits: &Limits,
) -> Result<(PolySystem<F>, Stats), GroebnerError> {
    let ctx = sys.ctx();
    for d in drop {
        assert!(
            ctx.index_of(d).is_some(),
            "eliminate: variable {d} not in context"
        );
    }
    let dropped: Vec<String> = ctx
        .names()
        .iter()
        .filter(|n| drop.contains(&n.as_str()))
        .cloned()
        .collect();
    let kept: Vec<String> = ctx
        .names()
        .iter()
        .filter(|n| !drop.contains(&n.as_str()))
        .cloned()
        .collect();
    let block_ctx = VarContext::new(
        dropped
            .iter()
            .chain(kept.iter())
            .cloned()
            .collect::<Vec<_>>(),
    );
    let block_order = MonomialOrder::Block {
        first: dropped.len(),
    };
    let lifted: Vec<MultiPoly<F>> = sys
        .gens()
        .iter()
        .map(|g| g.rename_into(&block_ctx, block_order))
        .collect();
    let (gb, stats) =
        buchberger_limited(&PolySystem::new(block_ctx.clone(), block_order, lifted), limits)?;

    let kept_ctx = VarContext::new(kept);
    let order = MonomialOrder::GrevLex;
    let free: Vec<MultiPoly<F>> = gb
        .gens()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(m, _)| m.exps()[..dropped.len()].iter().all(|&e| e == 0))
        })
        .map(|g| g.rename_into(&kept_ctx, order))
        .collect();
    // the filtered set is already a basis of the elimination ideal; the
    // final pass re-reduces it into canonical reduced form
    let reduced = buchberger(&PolySystem::new(kept_ctx, order, free));
    Ok((reduced, stats))
}

/// Plain ideal equality: generators of each side reduce to zero against
/// the other side's basis.
pub fn ideal_equal<F: Field>(a: &PolySystem<F>, b: &PolySystem<F>) -> bool {
    let ga = buchberger(a);
    let gb = buchberger(b);
    a.gens().iter().all(|p| reduce(p, &gb).is_zero())
        && b.gens().iter().all(|p| reduce(p, &ga).is_zero())
}

/// The equivalence used for the printed-system comparisons: the square of
/// each member of one system belongs to the ideal of the other.
pub fn squared_equivalent<F: Field>(a: &PolySystem<F>, b: &PolySystem<F>) -> bool {
    let ga = buchberger(a);
    let gb = buchberger(b);
    a.gens().iter().all(|p| reduce(&p.mul(p), &gb).is_zero())
        && b.gens().iter().all(|p| reduce(&p.mul(p), &ga).is_zero())
}

/// Every S-polynomial of the basis reduces to zero (Buchberger criterion,
/// re-checked post hoc). Used by tests and the verification battery.
pub fn is_groebner_basis<F: Field>(sys: &PolySystem<F>) -> bool {
    for i in 0..sys.gens.len() {
        for j in (i + 1)..sys.gens.len() {
            let s = s_poly(&sys.gens[i], &sys.gens[j]);
            if !reduce(&s, sys).is_zero() {
                return false;
            }
        }
    }
    true
}
