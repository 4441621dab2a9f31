//! Symbolic matrix constructions: the generic diagonal matrix and change
//! operator, the orthogonality ideal, characteristic polynomials,
//! resultants and the discriminant of the generic symmetric matrix.

use crate::field::{Field, Rat};
use crate::groebner::PolySystem;
use crate::poly::{MonomialOrder, MultiPoly, VarContext};

/// Square matrix of polynomials over a shared context.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    n: usize,
    entries: Vec<MultiPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_entries(n: usize, entries: Vec<MultiPoly<F>>) -> Self {
        assert_eq!(entries.len(), n * n, "square matrix expected");
        for e in &entries {
            assert!(
                e.ctx() == entries[0].ctx() && e.order() == entries[0].order(),
                "matrix entries must share a context"
            );
        }
        PolyMatrix { n, entries }
    }

    pub fn identity(n: usize, ctx: &VarContext, order: MonomialOrder) -> Self {
        let mut entries = vec![MultiPoly::zero(ctx, order); n * n];
        for i in 0..n {
            entries[i * n + i] = MultiPoly::one(ctx, order);
        }
        PolyMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &MultiPoly<F> {
        &self.entries[i * self.n + j]
    }

    pub fn ctx(&self) -> &VarContext {
        self.entries[0].ctx()
    }

    pub fn order(&self) -> MonomialOrder {
        self.entries[0].order()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                entries.push(self.at(j, i).clone());
            }
        }
        PolyMatrix {
            n: self.n,
            entries,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let ctx = self.ctx();
        let order = self.order();
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = MultiPoly::zero(ctx, order);
                for k in 0..self.n {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
                }
                entries.push(acc);
            }
        }
        PolyMatrix {
            n: self.n,
            entries,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        PolyMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &MultiPoly<F>) -> Self {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn trace(&self) -> MultiPoly<F> {
        let mut acc = MultiPoly::zero(self.ctx(), self.order());
        for i in 0..self.n {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant: cofactor expansion for n <= 3, fraction-free Bareiss
    /// elimination above that (exact division keeps entries polynomial).
    pub fn det(&self) -> MultiPoly<F> {
        let ctx = self.ctx().clone();
        let order = self.order();
        match self.n {
            0 => return MultiPoly::one(&ctx, order),
            1 => return self.at(0, 0).clone(),
            2 => {
                return self
                    .at(0, 0)
                    .mul(self.at(1, 1))
                    .sub(&self.at(0, 1).mul(self.at(1, 0)))
            }
            3 => {
                let m = |i: usize, j: usize| self.at(i, j);
                let t1 = m(0, 0).mul(&m(1, 1).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 1))));
                let t2 = m(0, 1).mul(&m(1, 0).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 0))));
                let t3 = m(0, 2).mul(&m(1, 0).mul(m(2, 1)).sub(&m(1, 1).mul(m(2, 0))));
                return t1.sub(&t2).add(&t3);
            }
            _ => {}
        }
        // Bareiss: entries stay in the ring, divisions are exact
        let n = self.n;
        let mut m: Vec<MultiPoly<F>> = self.entries.clone();
        let mut sign_flip = false;
        let mut prev = MultiPoly::one(&ctx, order);
        for k in 0..(n - 1) {
            if m[k * n + k].is_zero() {
                let pivot_row = ((k + 1)..n).find(|&r| !m[r * n + k].is_zero());
                match pivot_row {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return MultiPoly::zero(&ctx, order),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = m[k * n + k]
                        .mul(&m[i * n + j])
                        .sub(&m[i * n + k].mul(&m[k * n + j]));
                    m[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i * n + k] = MultiPoly::zero(&ctx, order);
            }
            prev = m[k * n + k].clone();
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        if sign_flip {
            d.neg()
        } else {
            d
        }
    }
}

/// Univariate polynomial in a fresh variable `t` whose coefficients are
/// multivariate polynomials; `coeffs[i]` multiplies `t^i`. The variable
/// stays out of the matrix-variable context.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<F: Field> {
    coeffs: Vec<MultiPoly<F>>,
}

impl<F: Field> TPoly<F> {
    pub fn new(mut coeffs: Vec<MultiPoly<F>>) -> Self {
        while coeffs.last().is_some_and(MultiPoly::is_zero) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "zero t-polynomial has no coefficients");
        TPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &MultiPoly<F> {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[MultiPoly<F>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Derivative with respect to `t`.
    pub fn derivative(&self) -> TPoly<F> {
        assert!(self.degree() >= 1, "derivative of a constant t-polynomial");
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&F::from_rat(&Rat::from_integer((i as i64).into()))))
            .collect();
        TPoly::new(coeffs)
    }

    /// Evaluate at a polynomial value of `t`.
    pub fn eval_poly(&self, x: &MultiPoly<F>) -> MultiPoly<F> {
        let mut acc = MultiPoly::zero(x.ctx(), x.order());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

/// Characteristic polynomial det(t I - M) as a monic `TPoly`, computed by
/// the Faddeev-LeVerrier recurrence: only ring operations and exact
/// division by integers, so coefficients stay in the base ring.
pub fn char_poly<F: Field>(m: &PolyMatrix<F>) -> TPoly<F> {
    let n = m.n();
    let ctx = m.ctx().clone();
    let order = m.order();
    let mut coeffs = vec![MultiPoly::zero(&ctx, order); n + 1];
    coeffs[n] = MultiPoly::one(&ctx, order);
    let mut acc = m.clone(); // N_1 = M
    for k in 1..=n {
        let inv_k = F::from_rat(&Rat::new(1.into(), (k as i64).into()));
        let c = acc.trace().scale(&inv_k).neg();
        coeffs[n - k] = c.clone();
        if k < n {
            // N_{k+1} = M (N_k + c_{n-k} I)
            let shifted = acc.add(&PolyMatrix::identity(n, &ctx, order).scale(&c));
            acc = m.mul(&shifted);
        }
    }
    TPoly::new(coeffs)
}

/// Resultant of two univariate polynomials over the polynomial ring, as
/// the determinant of their Sylvester matrix (fraction-free elimination).
pub fn sylvester_resultant<F: Field>(p: &TPoly<F>, q: &TPoly<F>) -> MultiPoly<F> {
    assert!(
        p.degree() >= 1 && q.degree() >= 1,
        "resultant needs positive-degree inputs"
    );
    assert!(!p.is_zero() && !q.is_zero(), "resultant of zero polynomial");
    let ctx = p.coeff(0).ctx().clone();
    let order = p.coeff(0).order();
    let (dp, dq) = (p.degree(), q.degree());
    let size = dp + dq;
    let zero = MultiPoly::zero(&ctx, order);
    let mut entries = vec![zero; size * size];
    // dq shifted rows of p's coefficients (descending), then dp rows of q's
    for r in 0..dq {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            entries[r * size + r + k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            entries[(dq + r) * size + r + k] = c.clone();
        }
    }
    PolyMatrix::from_entries(size, entries).det()
}

/// Context of the matrix-entry variables `xIJ`, I <= J, row-major.
pub fn sym_ctx(n: usize) -> VarContext {
    let mut names = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            names.push(format!("x{i}{j}"));
        }
    }
    VarContext::new(names)
}

/// The generic symmetric matrix over `sym_ctx(n)`: entry (i,j) is the
/// variable `x{min}{max}`.
pub fn generic_symmetric(n: usize, order: MonomialOrder) -> PolyMatrix<Rat> {
    let ctx = sym_ctx(n);
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = (i.min(j), i.max(j));
            let name = format!("x{a}{b}");
            entries.push(MultiPoly::var_named(&ctx, order, &name).unwrap());
        }
    }
    PolyMatrix::from_entries(n, entries)
}

/// Discriminant of the characteristic polynomial of the generic symmetric
/// n x n matrix, normalized to the eigenvalue product form
/// `prod_{i<j} (lambda_i - lambda_j)^2`: non-negative on real symmetric
/// matrices and zero exactly at a multiple eigenvalue. For monic p that is
/// `(-1)^{n(n-1)/2} Res(p, p')`.
pub fn discriminant(n: usize) -> MultiPoly<Rat> {
    assert!(n >= 2, "discriminant needs n >= 2");
    let m = generic_symmetric(n, MonomialOrder::GrevLex);
    let p = char_poly(&m);
    let r = sylvester_resultant(&p, &p.derivative());
    if (n * (n - 1) / 2) % 2 == 1 {
        r.neg()
    } else {
        r
    }
}

/// The symbolic setup behind the derivation: the generic diagonal matrix
/// `D = diag(lam, lam, mu1, ..)`, the generic change matrix `Y`, the
/// orthogonality ideal on Y's rows, and the generic member `X = Y D Y^T`.
#[derive(Clone, Debug)]
pub struct GenericSetup {
    pub n: usize,
    /// y-variables then eigenvalue variables.
    pub ctx: VarContext,
    pub d: PolyMatrix<Rat>,
    pub y: PolyMatrix<Rat>,
    /// Row orthonormality: n(n+1)/2 quadratic equations.
    pub ort_es: PolySystem<Rat>,
    pub x: PolyMatrix<Rat>,
    /// Names of the eigenvalue variables, `lam` first.
    pub eig_names: Vec<String>,
}

/// Names of the n^2 o-variables `yIJ`.
pub fn y_names(n: usize) -> Vec<String> {
    let mut names = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            names.push(format!("y{i}{j}"));
        }
    }
    names
}

/// Names of the n-1 eigenvalue variables: `lam, mu1, .., mu{n-2}`.
pub fn eig_names(n: usize) -> Vec<String> {
    let mut names = vec!["lam".to_string()];
    for i in 1..=(n - 2) {
        names.push(format!("mu{i}"));
    }
    names
}

/// Build the generic setup for size n. The variable set has n^2
/// o-variables and n-1 eigenvalue variables; X comes out exactly
/// symmetric as polynomials.
pub fn build_generic(n: usize) -> GenericSetup {
    assert!(n >= 3, "the construction is for n >= 3");
    let order = MonomialOrder::GrevLex;
    let mut names = y_names(n);
    let eigs = eig_names(n);
    names.extend(eigs.iter().cloned());
    let ctx = VarContext::new(names);

    let var = |name: &str| MultiPoly::<Rat>::var_named(&ctx, order, name).unwrap();
    let zero = MultiPoly::<Rat>::zero(&ctx, order);

    // D = diag(lam, lam, mu1, ..., mu_{n-2})
    let mut d_entries = vec![zero.clone(); n * n];
    d_entries[0] = var("lam");
    d_entries[n + 1] = var("lam");
    for i in 2..n {
        d_entries[i * n + i] = var(&format!("mu{}", i - 1));
    }
    let d = PolyMatrix::from_entries(n, d_entries);

    let mut y_entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            y_entries.push(var(&format!("y{i}{j}")));
        }
    }
    let y = PolyMatrix::from_entries(n, y_entries);

    // row(i, Y) . row(j, Y) = delta(i, j) for 1 <= i <= j <= n
    let mut ort = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut acc = zero.clone();
            for k in 0..n {
                acc = acc.add(&y.at(i, k).mul(y.at(j, k)));
            }
            if i == j {
                acc = acc.sub(&MultiPoly::one(&ctx, order));
            }
            ort.push(acc);
        }
    }
    let ort_es = PolySystem::new(ctx.clone(), order, ort);

    let x = y.mul(&d).mul(&y.transpose());

    GenericSetup {
        n,
        ctx,
        d,
        y,
        ort_es,
        x,
        eig_names: eigs,
    }
}

impl GenericSetup {
    /// trace(X) - (2 lam + mu1 + ... + mu_{n-2})
    pub fn trace_identity(&self) -> MultiPoly<Rat> {
        let order = MonomialOrder::GrevLex;
        let var = |name: &str| MultiPoly::<Rat>::var_named(&self.ctx, order, name).unwrap();
        let mut expected = var("lam").scale(&crate::field::rat_int(2));
        for name in self.eig_names.iter().skip(1) {
            expected = expected.add(&var(name));
        }
        self.x.trace().sub(&expected)
    }

    /// det(X) - lam^2 mu1 ... mu_{n-2}
    pub fn det_identity(&self) -> MultiPoly<Rat> {
        let order = MonomialOrder::GrevLex;
        let var = |name: &str| MultiPoly::<Rat>::var_named(&self.ctx, order, name).unwrap();
        let mut expected = var("lam").pow(2);
        for name in self.eig_names.iter().skip(1) {
            expected = expected.mul(&var(name));
        }
        self.x.det().sub(&expected)
    }
}
