//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! Terms are kept as a list sorted strictly descending in the active
//! monomial order, with no zero coefficients; the zero polynomial is the
//! empty list. That makes structural equality coincide with mathematical
//! equality for a fixed context and order.

mod text;

pub mod json;

pub use text::{parse_poly, parse_system_text, ParseError};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{rat_to_f64, Field, Rat};

/// A named, ordered list of variables shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Arc<Vec<String>>,
}

impl VarContext {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate variable name {n}");
        }
        VarContext {
            names: Arc::new(names),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A variable name not yet present, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        for i in 0.. {
            let cand = format!("{base}{i}");
            if self.index_of(&cand).is_none() {
                return cand;
            }
        }
        unreachable!()
    }

    /// Context extended by one variable at the end.
    pub fn extended(&self, name: &str) -> VarContext {
        let mut names = self.names.as_ref().clone();
        names.push(name.to_string());
        VarContext::new(names)
    }
}

/// Exponent vector; one slot per context variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of used variables, for fast non-divisibility rejection.
    pub fn mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 && i < 64 {
                m |= 1 << i;
            }
        }
        m
    }
}

/// Total multiplicative monomial orders.
///
/// `Block { first }` compares the leading block of `first` variables by
/// graded reverse lexicographic order first and breaks ties on the rest:
/// an elimination order for the leading block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Block { first: usize },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    // smaller exponent in the rightmost difference wins
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exps.len(), b.exps.len());
        match self {
            MonomialOrder::GrevLex => grevlex(&a.exps, &b.exps),
            MonomialOrder::Lex => {
                for i in 0..a.exps.len() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { first } => {
                let k = *first;
                grevlex(&a.exps[..k], &b.exps[..k]).then_with(|| grevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    /// A key whose lexicographic `Ord` agrees with this order; lets
    /// monomials live in heaps and sets.
    pub fn sort_key(&self, m: &Monomial) -> Vec<i64> {
        fn grevlex_key(exps: &[u32], out: &mut Vec<i64>) {
            out.push(exps.iter().map(|&e| e as i64).sum());
            for &e in exps.iter().rev() {
                out.push(-(e as i64));
            }
        }
        let mut key = Vec::with_capacity(m.exps.len() + 2);
        match self {
            MonomialOrder::GrevLex => grevlex_key(&m.exps, &mut key),
            MonomialOrder::Lex => key.extend(m.exps.iter().map(|&e| e as i64)),
            MonomialOrder::Block { first } => {
                grevlex_key(&m.exps[..*first], &mut key);
                grevlex_key(&m.exps[*first..], &mut key);
            }
        }
        key
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("missing binding for variable `{0}`")]
    MissingBinding(String),
}

/// Sparse multivariate polynomial over `F`.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F: Field> {
    ctx: VarContext,
    order: MonomialOrder,
    /// (monomial, coefficient), strictly descending in `order`, no zeros.
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ctx: &VarContext, order: MonomialOrder) -> Self {
        MultiPoly {
            ctx: ctx.clone(),
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: &VarContext, order: MonomialOrder, c: F) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Monomial::one(ctx.len()), c));
        }
        MultiPoly {
            ctx: ctx.clone(),
            order,
            terms,
        }
    }

    pub fn one(ctx: &VarContext, order: MonomialOrder) -> Self {
        Self::constant(ctx, order, F::one())
    }

    pub fn var(ctx: &VarContext, order: MonomialOrder, idx: usize) -> Self {
        assert!(idx < ctx.len(), "variable index out of range");
        MultiPoly {
            ctx: ctx.clone(),
            order,
            terms: vec![(Monomial::var(ctx.len(), idx), F::one())],
        }
    }

    pub fn var_named(ctx: &VarContext, order: MonomialOrder, name: &str) -> Result<Self, PolyError> {
        let idx = ctx
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ctx, order, idx))
    }

    /// Build from unsorted terms; merges duplicates and drops zeros.
    pub fn from_terms(ctx: &VarContext, order: MonomialOrder, terms: Vec<(Monomial, F)>) -> Self {
        let mut sorted = terms;
        sorted.sort_by(|(m1, _), (m2, _)| order.cmp(m2, m1));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(sorted.len());
        for (m, c) in sorted {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add_ref(&c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        MultiPoly {
            ctx: ctx.clone(),
            order,
            terms: out,
        }
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.terms.first().expect("leading of zero polynomial").0
    }

    pub fn leading_coeff(&self) -> &F {
        &self.terms.first().expect("leading of zero polynomial").1
    }

    /// Maximum total degree over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx && self.order == other.order,
            "polynomial context/order mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add_ref(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `self - (c * m) * g`, the inner step of reduction. Written out to
    /// avoid building the scaled copy of `g` twice.
    pub fn sub_scaled(&self, c: &F, m: &Monomial, g: &Self) -> Self {
        self.assert_compatible(g);
        let scaled: Vec<(Monomial, F)> = g
            .terms
            .iter()
            .map(|(gm, gc)| (gm.mul(m), gc.mul_ref(c).neg_ref()))
            .collect();
        let tmp = MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: scaled,
        };
        self.add(&tmp)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx, self.order);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add_ref(&c);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().collect();
        terms.sort_by(|(m1, _), (m2, _)| self.order.cmp(m2, m1));
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.order);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul_ref(c)))
                .collect(),
        }
    }

    /// Polynomial minus its leading term.
    pub fn drop_leading(&self) -> Self {
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide through by the canonical scale of the field: primitive
    /// integer coefficients with positive leading coefficient over the
    /// rationals, monic otherwise. Zero maps to zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<F> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        let scale = F::canonical_scale(&coeffs[0], &coeffs);
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.div_ref(&scale)))
                .collect(),
        }
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff().clone();
        MultiPoly {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.div_ref(&lc)))
                .collect(),
        }
    }

    /// Apply a ring map into a target context: every variable of `self`
    /// gets the image `images[i]`, a polynomial over `target`.
    pub fn compose(&self, target: &VarContext, order: MonomialOrder, images: &[Self]) -> Self
    where
        F: Field,
    {
        assert_eq!(images.len(), self.ctx.len(), "one image per variable");
        for img in images {
            assert!(img.ctx == *target && img.order == order, "image context mismatch");
        }
        let mut acc = MultiPoly::zero(target, order);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, order, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute some variables and project them out of the context.
    ///
    /// Bindings map variable names to replacement polynomials. The result
    /// context is the unbound variables (original order) followed by any
    /// new variables the bindings introduce. Binding values may be given
    /// over any context; their variables are matched by name.
    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly<F>>) -> Result<Self, PolyError> {
        for name in bindings.keys() {
            if self.ctx.index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
        }
        let mut names: Vec<String> = self
            .ctx
            .names()
            .iter()
            .filter(|n| !bindings.contains_key(*n))
            .cloned()
            .collect();
        for v in bindings.values() {
            for (i, n) in v.ctx.names().iter().enumerate() {
                let occurs = v.terms.iter().any(|(m, _)| m.exps()[i] > 0);
                if occurs && !names.contains(n) {
                    names.push(n.clone());
                }
            }
        }
        if names.is_empty() {
            // Everything bound to constants: keep a one-variable dummy-free
            // context by evaluating into the empty context.
            let target = VarContext::new(Vec::<String>::new());
            let images: Vec<MultiPoly<F>> = self
                .ctx
                .names()
                .iter()
                .map(|n| {
                    let b = &bindings[n];
                    assert!(
                        b.total_degree().unwrap_or(0) == 0,
                        "binding for {n} must be constant here"
                    );
                    let c = b
                        .terms
                        .first()
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(F::zero);
                    MultiPoly::constant(&target, self.order, c)
                })
                .collect();
            return Ok(self.compose(&target, self.order, &images));
        }
        let target = VarContext::new(names);
        let images: Vec<MultiPoly<F>> = self
            .ctx
            .names()
            .iter()
            .map(|n| match bindings.get(n) {
                Some(v) => v.rename_into(&target, self.order),
                None => MultiPoly::var(&target, self.order, target.index_of(n).unwrap()),
            })
            .collect();
        Ok(self.compose(&target, self.order, &images))
    }

    /// Re-express over a context containing all of this polynomial's
    /// occurring variables by name. Variables of the old context that do
    /// not occur may be absent from the target.
    pub fn rename_into(&self, target: &VarContext, order: MonomialOrder) -> Self {
        let map: Vec<Option<usize>> = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; target.len()];
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        let j = map[i].unwrap_or_else(|| {
                            panic!("variable {} missing from target context", self.ctx.name(i))
                        });
                        exps[j] = e;
                    }
                }
                (Monomial::from_exps(exps), c.clone())
            })
            .collect();
        MultiPoly::from_terms(target, order, terms)
    }

    /// Same polynomial under a different order (terms re-sorted).
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut p = self.clone();
        p.order = order;
        p.terms.sort_by(|(m1, _), (m2, _)| order.cmp(m2, m1));
        p
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[var] > 0)
            .map(|(m, c)| {
                let e = m.exps()[var];
                let mut exps = m.exps().to_vec();
                exps[var] -= 1;
                let factor = F::from_rat(&Rat::from_integer(e.into()));
                (Monomial::from_exps(exps), c.mul_ref(&factor))
            })
            .collect();
        MultiPoly::from_terms(&self.ctx, self.order, terms)
    }

    /// Exact polynomial division; `None` when the divisor does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.assert_compatible(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut q_terms: Vec<(Monomial, F)> = Vec::new();
        let (dm, dc) = (d.leading_monomial().clone(), d.leading_coeff().clone());
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = rc.div_ref(&dc);
            rem = rem.sub_scaled(&qc, &qm, d);
            q_terms.push((qm, qc));
        }
        Some(MultiPoly::from_terms(&self.ctx, self.order, q_terms))
    }

    /// True when the polynomial is homogeneous (all terms equal degree).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }
}

impl MultiPoly<Rat> {
    /// Primitive integer form with positive leading coefficient; generates
    /// the same ideal. Zero maps to zero.
    pub fn normalize_primitive(&self) -> Self {
        self.normalized()
    }

    /// Evaluate at a point given per variable name.
    pub fn evaluate_numeric(&self, point: &BTreeMap<String, f64>) -> Result<f64, PolyError> {
        let vals: Vec<f64> = self
            .ctx
            .names()
            .iter()
            .map(|n| {
                point
                    .get(n)
                    .copied()
                    .ok_or_else(|| PolyError::MissingBinding(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(self.eval_f64(&vals))
    }

    /// Evaluate at a point given positionally.
    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        assert_eq!(vals.len(), self.ctx.len());
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= vals[i].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, vals: &[Rat]) -> Rat {
        assert_eq!(vals.len(), self.ctx.len());
        let mut acc = <Rat as Field>::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul_ref(&vals[i]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Largest absolute coefficient as a double; the "coefficient scale"
    /// used by the numeric vanishing tolerances.
    pub fn coeff_scale(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, c)| rat_to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}
