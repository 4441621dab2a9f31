//! Double-precision geometry of conjugation orbits: the Jacobi
//! eigensolver, rotation sampling, tangent spaces from commutators,
//! numerical ranks, orbit diameters and the singular-point witness.
//!
//! Everything stochastic takes an explicit seed and is reproducible;
//! sub-streams derive from the master seed by a SplitMix64 step.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::field::{rat_to_f64, Rat};
use crate::groebner::PolySystem;
use crate::poly::MultiPoly;

/// Dense symmetric n x n matrix; construction mirrors the upper triangle
/// so the symmetry is exact, not approximate.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrixN {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrixN {
    /// Build from any square data by mirroring the upper triangle.
    pub fn from_upper(n: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), n * n);
        let mut a = data.to_vec();
        for i in 0..n {
            for j in (i + 1)..n {
                a[j * n + i] = a[i * n + j];
            }
        }
        SymMatrixN { n, a }
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrixN {
            n,
            a: vec![0.0; n * n],
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.a[i * n + i] = v;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        SymMatrixN {
            n: self.n,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        SymMatrixN {
            n: self.n,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        SymMatrixN {
            n: self.n,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    /// X + s I.
    pub fn shift(&self, s: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.a[i * self.n + i] += s;
        }
        m
    }

    /// Entries of the upper triangle row-major: the x-variable order.
    pub fn upper_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                v.push(self.at(i, j));
            }
        }
        v
    }

    pub fn frobenius(&self) -> f64 {
        s_quad(self).sqrt()
    }
}

/// Sum of squares of all n^2 entries: the squared Euclidean structure on
/// the space of symmetric matrices.
pub fn s_quad(x: &SymMatrixN) -> f64 {
    x.a.iter().map(|v| v * v).sum()
}

/// The associated inner product.
pub fn s_inner(x: &SymMatrixN, y: &SymMatrixN) -> f64 {
    assert_eq!(x.n, y.n);
    x.a.iter().zip(&y.a).map(|(a, b)| a * b).sum()
}

/// Distance in the s-metric.
pub fn s_dist(x: &SymMatrixN, y: &SymMatrixN) -> f64 {
    s_quad(&x.sub(y)).sqrt()
}

/// Sorted eigenvalues with multiplicities recovered by tolerance
/// clustering; the spectrum width is the number of clusters.
#[derive(Clone, Debug)]
pub struct EigenMultiset {
    values: Vec<f64>,
    cluster_tol: f64,
}

impl EigenMultiset {
    pub fn from_values(mut values: Vec<f64>, scale: f64) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        EigenMultiset {
            values,
            cluster_tol: 1e-7 * (1.0 + scale),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// (representative value, multiplicity) per cluster, ascending.
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((rep, count)) if (v - *rep).abs() <= self.cluster_tol => {
                    *count += 1;
                }
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// Number of distinct eigenvalues.
    pub fn spectrum_width(&self) -> usize {
        self.clusters().len()
    }

    pub fn has_multiple(&self) -> bool {
        self.spectrum_width() < self.values.len()
    }

    /// Largest pairwise gap, `max |l_i - l_j|`.
    pub fn max_gap(&self) -> f64 {
        match (self.values.first(), self.values.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }

    /// Distance from diag(values) to the line of scalar matrices:
    /// sqrt(sum (l_i - m)^2) with m the mean.
    pub fn dist_to_scalars(&self) -> f64 {
        let n = self.values.len() as f64;
        let m = self.values.iter().sum::<f64>() / n;
        self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>().sqrt()
    }
}

/// A rotation: orthogonal with determinant +1.
#[derive(Clone, Debug)]
pub struct RotationOp {
    n: usize,
    m: Vec<f64>,
}

impl RotationOp {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        RotationOp { n, m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += self.at(i, k) * rhs.at(k, j);
                }
                m[i * n + j] = acc;
            }
        }
        RotationOp { n, m }
    }

    /// Deviation from orthogonality, max |(g^T g - I)_{ij}|.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += self.at(k, i) * self.at(k, j);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }

    pub fn det(&self) -> f64 {
        // LU with partial pivoting; n stays small here
        let n = self.n;
        let mut a = self.m.clone();
        let mut det = 1.0;
        for k in 0..n {
            let (mut p, mut best) = (k, a[k * n + k].abs());
            for r in (k + 1)..n {
                if a[r * n + k].abs() > best {
                    best = a[r * n + k].abs();
                    p = r;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                det = -det;
            }
            det *= a[k * n + k];
            for r in (k + 1)..n {
                let f = a[r * n + k] / a[k * n + k];
                for c in k..n {
                    a[r * n + c] -= f * a[k * n + c];
                }
            }
        }
        det
    }
}

/// The conjugation action g X g^T, resymmetrized.
pub fn conjugate(g: &RotationOp, x: &SymMatrixN) -> SymMatrixN {
    assert_eq!(g.n, x.n);
    let n = g.n;
    // tmp = g X
    let mut tmp = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += g.at(i, k) * x.at(k, j);
            }
            tmp[i * n + j] = acc;
        }
    }
    // out = tmp g^T, symmetrized
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += tmp[i * n + k] * g.at(j, k);
            }
            out[i * n + j] = acc;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            out[j * n + i] = out[i * n + j];
        }
    }
    SymMatrixN { n, a: out }
}

/// Cyclic Jacobi eigensolver. Returns the sorted eigenvalue multiset and
/// a rotation g with g^T S g diagonal in ascending order; if the
/// accumulated orthogonal matrix lands in the wrong determinant class, a
/// column reflection (which leaves the diagonalization intact) brings it
/// back to a rotation.
pub fn jacobi_eigs(s: &SymMatrixN) -> (EigenMultiset, RotationOp) {
    let n = s.n;
    let norm = s.frobenius();
    let mut a = s.a.clone();
    let mut v = RotationOp::identity(n).m;

    let off = |a: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                acc += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        acc.sqrt()
    };

    for _sweep in 0..100 {
        if off(&a) <= 1e-12 * norm.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s_ = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s_ * akq;
                    a[k * n + q] = s_ * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s_ * aqk;
                    a[q * n + k] = s_ * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s_ * vkq;
                    v[k * n + q] = s_ * vkp + c * vkq;
                }
            }
        }
    }

    // sort ascending, permuting eigenvector columns along
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let values: Vec<f64> = idx.iter().map(|&i| a[i * n + i]).collect();
    let mut g = vec![0.0; n * n];
    for (new_col, &old_col) in idx.iter().enumerate() {
        for r in 0..n {
            g[r * n + new_col] = v[r * n + old_col];
        }
    }
    let mut rot = RotationOp { n, m: g };
    if rot.det() < 0.0 {
        for r in 0..n {
            rot.m[r * n] = -rot.m[r * n];
        }
    }
    (EigenMultiset::from_values(values, norm), rot)
}

/// Derive a sub-seed for an independent task stream (SplitMix64 step).
pub fn sub_seed(master: u64, task: u64) -> u64 {
    let mut z = master
        .wrapping_add(task.wrapping_mul(0x9e3779b97f4a7c15))
        .wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Haar-ish rotation sample: orthonormalized Gaussian matrix with the
/// determinant sign corrected to +1. Deterministic per seed.
pub fn random_so(n: usize, seed: u64) -> RotationOp {
    assert!(n >= 2);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    random_so_with(n, &mut rng)
}

/// Same sampler over a caller-owned generator (for streams of rotations).
pub fn random_so_with(n: usize, rng: &mut ChaCha12Rng) -> RotationOp {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
            .collect();
        // modified Gram-Schmidt
        let mut ok = true;
        for j in 0..n {
            for i in 0..j {
                let dot: f64 = cols[j].iter().zip(&cols[i]).map(|(a, b)| a * b).sum();
                let ci = cols[i].clone();
                for (x, y) in cols[j].iter_mut().zip(&ci) {
                    *x -= dot * y;
                }
            }
            let norm: f64 = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for x in cols[j].iter_mut() {
                *x /= norm;
            }
        }
        if !ok {
            continue; // essentially-degenerate draw; resample
        }
        let mut m = vec![0.0; n * n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                m[i * n + j] = col[i];
            }
        }
        let mut rot = RotationOp { n, m };
        if rot.det() < 0.0 {
            for r in 0..n {
                rot.m[r * n] = -rot.m[r * n];
            }
        }
        return rot;
    }
}

/// Proper rotation about a unit axis by an angle (n = 3). The sign
/// convention makes a rotation about e1 applied to diag(1,1,-2) produce
/// the (2,3) entry -3 cos(phi) sin(phi).
pub fn rotation_axis_angle(axis: [f64; 3], phi: f64) -> RotationOp {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    assert!((norm - 1.0).abs() <= 1e-12, "axis must be a unit vector");
    let (x, y, z) = (axis[0], axis[1], axis[2]);
    let c = phi.cos();
    let s = phi.sin();
    let t = 1.0 - c;
    // transpose of the usual right-handed Rodrigues matrix
    let m = vec![
        t * x * x + c,
        t * x * y + s * z,
        t * x * z - s * y,
        t * x * y - s * z,
        t * y * y + c,
        t * y * z + s * x,
        t * x * z + s * y,
        t * y * z - s * x,
        t * z * z + c,
    ];
    RotationOp { n: 3, m }
}

/// The orbit point of D = diag(1,1,-2) whose eigenvalue -2 sits along the
/// axis `l`: the change of D by the rotation taking e3 to `l` around the
/// normal of their plane (identity for l = e3). The axis is
/// canonicalized up to sign first, so s(l) and s(-l) are the same
/// computation and agree exactly.
pub fn proj_plane_embed(l: [f64; 3]) -> SymMatrixN {
    let norm = (l[0] * l[0] + l[1] * l[1] + l[2] * l[2]).sqrt();
    assert!(norm > 0.0, "axis must be nonzero");
    let mut u = [l[0] / norm, l[1] / norm, l[2] / norm];
    // canonical representative of the axis in the projective plane
    if u[2] < 0.0 || (u[2] == 0.0 && (u[1] < 0.0 || (u[1] == 0.0 && u[0] < 0.0))) {
        u = [-u[0], -u[1], -u[2]];
    }
    let d = SymMatrixN::diag(&[1.0, 1.0, -2.0]);
    let cos_t = u[2]; // e3 . u
    if (cos_t - 1.0).abs() < 1e-15 {
        return d;
    }
    // rotation axis: normalized e3 x u
    let mut ax = [-u[1], u[0], 0.0];
    let axn = (ax[0] * ax[0] + ax[1] * ax[1]).sqrt();
    ax[0] /= axn;
    ax[1] /= axn;
    let phi = cos_t.clamp(-1.0, 1.0).acos();
    // rotation_axis_angle is clockwise about the axis; the geometric
    // rotation taking e3 toward u through their plane needs the
    // counterclockwise branch, hence the negated angle
    let g = rotation_axis_angle(ax, -phi);
    conjugate(&g, &d)
}

/// Tangent directions of the orbit at a diagonal matrix: commutators
/// [A, D] over the standard antisymmetric basis A_{ij} = E_{ij} - E_{ji},
/// i < j. For diagonal D the commutator is symmetric with zero diagonal.
pub fn tangent_basis(d: &SymMatrixN) -> Vec<SymMatrixN> {
    let n = d.n;
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            // C = A D - D A for A = E_ij - E_ji
            let mut c = vec![0.0; n * n];
            for r in 0..n {
                for k in 0..n {
                    let ad = if r == i {
                        d.at(j, k)
                    } else if r == j {
                        -d.at(i, k)
                    } else {
                        0.0
                    };
                    let da = if k == j {
                        d.at(r, i)
                    } else if k == i {
                        -d.at(r, j)
                    } else {
                        0.0
                    };
                    c[r * n + k] = ad - da;
                }
            }
            out.push(SymMatrixN { n, a: c });
        }
    }
    out
}

/// Numerical rank by Gaussian elimination with partial pivoting; a pivot
/// below `tol * max |entry|` counts as zero.
pub fn rank_with_tol(rows: &[Vec<f64>], tol: f64) -> usize {
    assert!(!rows.is_empty());
    let ncols = rows[0].len();
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let threshold = tol * scale;
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let (mut p, mut best) = (row, 0.0f64);
        for r in row..a.len() {
            if a[r][col].abs() > best {
                best = a[r][col].abs();
                p = r;
            }
        }
        if best <= threshold {
            continue;
        }
        a.swap(row, p);
        for r in (row + 1)..a.len() {
            let f = a[r][col] / a[row][col];
            for c in col..ncols {
                a[r][c] -= f * a[row][c];
            }
        }
        rank += 1;
        row += 1;
        if row == a.len() {
            break;
        }
    }
    rank
}

/// Exact rank over the rationals (Gaussian elimination, no tolerance).
pub fn rank_exact(rows: &[Vec<Rat>]) -> usize {
    use crate::field::Field;
    assert!(!rows.is_empty());
    let ncols = rows[0].len();
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
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
        if row == a.len() {
            break;
        }
    }
    rank
}

/// Orbit-diameter estimate for the eigenvalue multiset: the maximum
/// pairwise s-distance over sampled orbit points, together with the
/// theoretical bounds (max |l_i - l_j|, 2 d(D, Scal)).
#[derive(Clone, Debug)]
pub struct DiameterEstimate {
    pub estimate: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub samples: usize,
    /// Set when the multiset has fewer than n-1 distinct values (narrowed
    /// spectrum), where the bounds of the theorem are not claimed.
    pub narrow_spectrum: bool,
}

/// Van der Corput radical-inverse in base 2 for the structured angle grid.
fn radical_inverse(mut k: u64) -> f64 {
    let mut inv = 0.0;
    let mut f = 0.5;
    while k > 0 {
        if k & 1 == 1 {
            inv += f;
        }
        f *= 0.5;
        k >>= 1;
    }
    inv
}

/// Sample orbit points of diag(eigs): random rotations, plus (for n = 3)
/// the circumference family swept by axis-in-plane rotations on a
/// low-discrepancy angle sequence. The stream is prefix-stable, so more
/// samples extend rather than reshuffle it.
pub fn orbit_points(eigs: &[f64], samples: usize, seed: u64) -> Vec<SymMatrixN> {
    let n = eigs.len();
    let d = SymMatrixN::diag(eigs);
    let mut rng = ChaCha12Rng::seed_from_u64(sub_seed(seed, 1));
    let mut out = Vec::with_capacity(samples + 1);
    out.push(d.clone());
    for k in 0..samples {
        if n == 3 && k % 2 == 0 {
            // circumference family: 1-orbit by an axis in the e1-e2 plane
            let psi = std::f64::consts::PI * radical_inverse(k as u64 / 2 + 1);
            let phi = 2.0 * std::f64::consts::PI * radical_inverse((k as u64 / 2 + 1) << 1);
            let axis = [psi.cos(), psi.sin(), 0.0];
            out.push(conjugate(&rotation_axis_angle(axis, phi), &d));
        } else {
            out.push(conjugate(&random_so_with(n, &mut rng), &d));
        }
    }
    out
}

pub fn orbit_diameter_estimate(eigs: &[f64], samples: usize, seed: u64) -> DiameterEstimate {
    let n = eigs.len();
    let ms = EigenMultiset::from_values(eigs.to_vec(), eigs.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    let narrow = ms.spectrum_width() + 1 < n;
    let pts = orbit_points(eigs, samples, seed);
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let dd = s_quad(&pts[i].sub(&pts[j]));
            if dd > best {
                best = dd;
            }
        }
    }
    DiameterEstimate {
        estimate: best.sqrt(),
        lower_bound: ms.max_gap(),
        upper_bound: 2.0 * ms.dist_to_scalars(),
        samples: pts.len(),
        narrow_spectrum: narrow,
    }
}

/// Rank of the Jacobian of a polynomial system at a symmetric point. The
/// system lives over the upper-triangle variables xIJ; rows are members,
/// columns the partials.
pub fn jacobian_rank_at(system: &PolySystem<Rat>, x: &SymMatrixN, tol: f64) -> usize {
    let vals = x.upper_vec();
    assert_eq!(vals.len(), system.ctx().len(), "point size mismatch");
    let rows: Vec<Vec<f64>> = system
        .gens()
        .iter()
        .map(|p| {
            (0..system.ctx().len())
                .map(|v| p.derivative(v).eval_f64(&vals))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return 0;
    }
    rank_with_tol(&rows, tol)
}

/// Evaluate a polynomial over the xIJ context at a symmetric matrix.
pub fn eval_poly_at(p: &MultiPoly<Rat>, x: &SymMatrixN) -> f64 {
    p.eval_f64(&x.upper_vec())
}

/// Largest |coefficient| of a polynomial, the scale for vanishing checks.
pub fn poly_scale(p: &MultiPoly<Rat>) -> f64 {
    p.terms()
        .iter()
        .map(|(_, c)| rat_to_f64(c).abs())
        .fold(0.0, f64::max)
}

/// True when every orbit tangent direction at D is s-orthogonal to every
/// diagonal direction (the orthogonal-intersection statement).
pub fn orthogonality_witness(d: &SymMatrixN, tol: f64) -> bool {
    let n = d.n;
    let tangents = tangent_basis(d);
    for t in &tangents {
        for k in 0..n {
            let mut e = SymMatrixN::zeros(n);
            e.set_sym(k, k, 1.0);
            if s_inner(t, &e).abs() > tol {
                return false;
            }
        }
    }
    true
}

/// Finite-difference images of the orbit map A -> exp(A) D exp(A)^T at
/// zero, restricted to infinitesimal rotations about e1 and e2 (n = 3).
pub fn exp_v_images(d: &SymMatrixN, h: f64) -> Vec<SymMatrixN> {
    assert_eq!(d.n, 3);
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
        .iter()
        .map(|&axis| {
            let plus = conjugate(&rotation_axis_angle(axis, h), d);
            let minus = conjugate(&rotation_axis_angle(axis, -h), d);
            plus.sub(&minus).scale(1.0 / (2.0 * h))
        })
        .collect()
}

/// Numeric rank of that differential; 2 away from the scalar locus.
pub fn exp_v_rank_check(d: &SymMatrixN, tol: f64) -> usize {
    let images = exp_v_images(d, 1e-6);
    let rows: Vec<Vec<f64>> = images.iter().map(|m| m.upper_vec()).collect();
    rank_with_tol(&rows, tol)
}
