//! Dense 3x3 real/complex matrix kernels.
//!
//! Everything in this crate is 3x3 (the half-space problem couples two
//! displacement components and one microrotation), so the kernels are
//! closed-form: Cardano for characteristic cubics, adjugate/pivoted
//! elimination for inverses, eigendecomposition or scaling-and-squaring
//! for the matrix exponential.

use crate::error::{CosseratError, Result};
use num_complex::Complex64;

/// Complex double-precision scalar.
pub type C64 = Complex64;
/// Real 3-vector.
pub type Vec3R = [f64; 3];
/// Complex 3-vector.
pub type Vec3C = [C64; 3];

/// Default relative tolerance for the 3x3 kernels.
pub const DEFAULT_TOL: f64 = 1e-11;

/// Shorthand complex constructor.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Real 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3R(pub [[f64; 3]; 3]);

/// Complex 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3C(pub [[C64; 3]; 3]);

impl Mat3R {
    pub fn zero() -> Self {
        Mat3R([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = 1.0;
        }
        m
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let a = &self.0;
        Mat3R([
            [a[0][0], a[1][0], a[2][0]],
            [a[0][1], a[1][1], a[2][1]],
            [a[0][2], a[1][2], a[2][2]],
        ])
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for r in m.0.iter_mut() {
            for e in r.iter_mut() {
                *e *= s;
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += o.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        m
    }

    pub fn matvec(&self, v: &Vec3R) -> Vec3R {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = (0..3).map(|k| self.0[i][k] * v[k]).sum();
        }
        out
    }

    pub fn norm_fro(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e * e)
            .sum::<f64>()
            .sqrt()
    }

    pub fn det(&self) -> f64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// Inverse via the adjugate; fails when |det| <= tol * norm^3.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let scale = self.norm_fro();
        if d.abs() <= DEFAULT_TOL * scale.powi(3) {
            return Err(CosseratError::Singular { det: d });
        }
        let a = &self.0;
        let inv = |r1: usize, c1: usize, r2: usize, c2: usize| a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1];
        let m = Mat3R([
            [inv(1, 1, 2, 2), inv(0, 2, 2, 1), inv(0, 1, 1, 2)],
            [inv(1, 2, 2, 0), inv(0, 0, 2, 2), inv(0, 2, 1, 0)],
            [inv(1, 0, 2, 1), inv(0, 1, 2, 0), inv(0, 0, 1, 1)],
        ]);
        Ok(m.scale(1.0 / d))
    }

    pub fn solve(&self, b: &Vec3R) -> Result<Vec3R> {
        Ok(self.inverse()?.matvec(b))
    }

    pub fn to_complex(&self) -> Mat3C {
        let mut m = Mat3C::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = c(self.0[i][j], 0.0);
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0f64, |m, e| m.max(e.abs()))
    }
}

impl Mat3C {
    pub fn zero() -> Self {
        Mat3C([[C64::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = c(1.0, 0.0);
        }
        m
    }

    pub fn diag(d: [C64; 3]) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let a = &self.0;
        Mat3C([
            [a[0][0], a[1][0], a[2][0]],
            [a[0][1], a[1][1], a[2][1]],
            [a[0][2], a[1][2], a[2][2]],
        ])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = self.transpose();
        for r in m.0.iter_mut() {
            for e in r.iter_mut() {
                *e = e.conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for r in m.0.iter_mut() {
            for e in r.iter_mut() {
                *e *= s;
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += o.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] -= o.0[i][j];
            }
        }
        m
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        m
    }

    pub fn matvec(&self, v: &Vec3C) -> Vec3C {
        let mut out = [c(0.0, 0.0); 3];
        for i in 0..3 {
            out[i] = (0..3).map(|k| self.0[i][k] * v[k]).sum();
        }
        out
    }

    pub fn norm_fro(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0f64, |m, e| m.max(e.norm()))
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> C64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// Hermitian deviation ||A - A*||_F.
    pub fn herm_deviation(&self) -> f64 {
        self.sub(&self.adjoint()).norm_fro()
    }

    /// Inverse by Gaussian elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let scale = self.norm_fro();
        if d.norm() <= DEFAULT_TOL * scale.powi(3) {
            return Err(CosseratError::Singular { det: d.norm() });
        }
        let mut a = self.0;
        let mut inv = Mat3C::identity().0;
        for col in 0..3 {
            let piv = (col..3)
                .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
                .unwrap();
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col];
            for j in 0..3 {
                a[col][j] /= p;
                inv[col][j] /= p;
            }
            for i in 0..3 {
                if i != col {
                    let f = a[i][col];
                    for j in 0..3 {
                        let (acj, icj) = (a[col][j], inv[col][j]);
                        a[i][j] -= f * acj;
                        inv[i][j] -= f * icj;
                    }
                }
            }
        }
        Ok(Mat3C(inv))
    }

    pub fn solve(&self, b: &Vec3C) -> Result<Vec3C> {
        Ok(self.inverse()?.matvec(b))
    }
}

pub(crate) fn vnorm_c(v: &Vec3C) -> f64 {
    v.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn vscale_c(v: &Vec3C, s: C64) -> Vec3C {
    [v[0] * s, v[1] * s, v[2] * s]
}

pub(crate) fn vsub_c(a: &Vec3C, b: &Vec3C) -> Vec3C {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Hermitian inner product <a, b> = sum conj(a_i) b_i.
pub(crate) fn hdot(a: &Vec3C, b: &Vec3C) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Formal (unconjugated) cross product; satisfies sum a_i c_i = 0.
fn formal_cross(a: &Vec3C, b: &Vec3C) -> Vec3C {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Eigen data of a general 3x3 complex matrix.
#[derive(Debug, Clone)]
pub struct Spectrum3 {
    /// Eigenvalues in the deterministic cubic-root order.
    pub values: [C64; 3],
    /// Matching unit eigenvectors (columns of the modal matrix).
    pub vectors: [Vec3C; 3],
    /// Condition estimate of the modal matrix, ||V||_F ||V^-1||_F.
    pub condition: f64,
}

impl Spectrum3 {
    pub fn modal_matrix(&self) -> Mat3C {
        let v = &self.vectors;
        Mat3C([
            [v[0][0], v[1][0], v[2][0]],
            [v[0][1], v[1][1], v[2][1]],
            [v[0][2], v[1][2], v[2][2]],
        ])
    }

    pub fn min_re(&self) -> f64 {
        self.values.iter().map(|l| l.re).fold(f64::INFINITY, f64::min)
    }
}

/// Roots of the monic cubic z^3 + a2 z^2 + a1 z + a0 (Cardano + Newton polish).
///
/// Ordering is deterministic: ascending real part, and within a conjugate
/// pair the root with Im >= 0 comes first.
pub fn solve_cubic(a2: C64, a1: C64, a0: C64) -> [C64; 3] {
    let third = c(1.0 / 3.0, 0.0);
    let shift = a2 * third;
    let p = a1 - a2 * a2 * third;
    let q = a2 * a2 * a2 * c(2.0 / 27.0, 0.0) - a2 * a1 * third + a0;

    let scale = p.norm().sqrt().max(q.norm().cbrt());
    let mut roots: [C64; 3];
    if scale == 0.0 {
        roots = [c(0.0, 0.0); 3];
    } else {
        let disc = (q * q * c(0.25, 0.0) + p * p * p * c(1.0 / 27.0, 0.0)).sqrt();
        // pick the branch that avoids cancellation in -q/2 +- disc
        let u3 = {
            let plus = -q * c(0.5, 0.0) + disc;
            let minus = -q * c(0.5, 0.0) - disc;
            if plus.norm() >= minus.norm() {
                plus
            } else {
                minus
            }
        };
        if u3.norm() == 0.0 {
            let r = (-q).cbrt();
            let w = c(-0.5, 3.0f64.sqrt() / 2.0);
            roots = [r, r * w, r * w * w];
        } else {
            let u = u3.cbrt();
            let w = c(-0.5, 3.0f64.sqrt() / 2.0);
            let mut out = [c(0.0, 0.0); 3];
            for (k, uk) in [u, u * w, u * w * w].into_iter().enumerate() {
                out[k] = uk - p / (uk * c(3.0, 0.0));
            }
            roots = out;
        }
    }
    for r in roots.iter_mut() {
        *r -= shift;
        // two Newton steps on the original cubic
        for _ in 0..2 {
            let f = ((*r + a2) * *r + a1) * *r + a0;
            let df = (c(3.0, 0.0) * *r + c(2.0, 0.0) * a2) * *r + a1;
            if df.norm() > 0.0 {
                let step = f / df;
                if step.norm().is_finite() {
                    *r -= step;
                }
            }
        }
    }
    let tol = 1e-9 * roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    roots.sort_by(|a, b| {
        if (a.re - b.re).abs() <= tol {
            b.im.total_cmp(&a.im)
        } else {
            a.re.total_cmp(&b.re)
        }
    });
    roots
}

/// Characteristic polynomial coefficients of A: z^3 - tr z^2 + m z - det.
fn char_coeffs(a: &Mat3C) -> (C64, C64, C64) {
    let m = &a.0;
    let tr = a.trace();
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    (-tr, minors, -a.det())
}

/// Unit null vector of a rank-deficient 3x3 matrix (best formal cross of rows).
fn null_vector(b: &Mat3C) -> Option<Vec3C> {
    let rows: [Vec3C; 3] = [b.0[0], b.0[1], b.0[2]];
    let mut best: Option<(f64, Vec3C)> = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = formal_cross(&rows[i], &rows[j]);
        let n = vnorm_c(&v);
        if best.as_ref().map_or(true, |(bn, _)| n > *bn) {
            best = Some((n, v));
        }
    }
    let (n, v) = best?;
    let row_scale = rows.iter().map(vnorm_c).fold(0.0f64, f64::max);
    if n <= 1e-13 * row_scale * row_scale {
        // rank <= 1: null space is 2-dimensional; take any vector
        // Hermitian-orthogonal to the dominant row
        let r = rows
            .into_iter()
            .max_by(|a, b| vnorm_c(a).total_cmp(&vnorm_c(b)))?;
        let rn = vnorm_c(&r);
        if rn == 0.0 {
            return Some([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        }
        let rc = [r[0].conj(), r[1].conj(), r[2].conj()];
        let mut k = 0;
        for i in 1..3 {
            if rc[i].norm() < rc[k].norm() {
                k = i;
            }
        }
        let mut e = [c(0.0, 0.0); 3];
        e[k] = c(1.0, 0.0);
        let proj = hdot(&rc, &e) / hdot(&rc, &rc);
        let v = vsub_c(&e, &vscale_c(&rc, proj));
        let nv = vnorm_c(&v);
        return Some(vscale_c(&v, c(1.0 / nv, 0.0)));
    }
    Some(vscale_c(&v, c(1.0 / n, 0.0)))
}

fn inverse_iteration(a: &Mat3C, lambda: C64, v0: &Vec3C) -> Vec3C {
    let scale = a.norm_fro().max(1.0);
    let mut shifted = *a;
    let eps = c(1e-13 * scale, 0.0);
    for i in 0..3 {
        shifted.0[i][i] -= lambda + eps;
    }
    match shifted.solve(v0) {
        Ok(w) => {
            let n = vnorm_c(&w);
            if n.is_finite() && n > 0.0 {
                vscale_c(&w, c(1.0 / n, 0.0))
            } else {
                *v0
            }
        }
        Err(_) => *v0,
    }
}

/// Eigendecomposition of a general complex 3x3 matrix.
///
/// Roots come from the characteristic cubic, refined by one inverse-iteration
/// pass per eigenvector. Returns `IllConditioned` (carrying the eigenvalues)
/// when the matrix is defective within tolerance.
pub fn gen_eig3(a: &Mat3C, tol: Option<f64>) -> Result<Spectrum3> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let scale = a.norm_fro();
    if !scale.is_finite() {
        return Err(CosseratError::InvalidArgument("non-finite matrix".into()));
    }
    if scale == 0.0 {
        return Ok(Spectrum3 {
            values: [c(0.0, 0.0); 3],
            vectors: [
                [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
                [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
                [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            ],
            condition: 1.0,
        });
    }
    let (c2, c1, c0) = char_coeffs(a);
    let values = solve_cubic(c2, c1, c0);

    let mut vectors = [[c(0.0, 0.0); 3]; 3];
    for (k, lam) in values.iter().enumerate() {
        let mut b = *a;
        for i in 0..3 {
            b.0[i][i] -= lam;
        }
        let v0 = null_vector(&b).ok_or(CosseratError::IllConditioned { values })?;
        let v = inverse_iteration(a, *lam, &v0);
        // keep whichever has the smaller residual
        let res = |v: &Vec3C| {
            let av = a.matvec(v);
            vnorm_c(&vsub_c(&av, &vscale_c(v, *lam)))
        };
        vectors[k] = if res(&v) < res(&v0) { v } else { v0 };
    }

    let modal = Mat3C([
        [vectors[0][0], vectors[1][0], vectors[2][0]],
        [vectors[0][1], vectors[1][1], vectors[2][1]],
        [vectors[0][2], vectors[1][2], vectors[2][2]],
    ]);
    let condition = match modal.inverse() {
        Ok(inv) => modal.norm_fro() * inv.norm_fro(),
        Err(_) => f64::INFINITY,
    };
    let max_res = (0..3)
        .map(|k| {
            let av = a.matvec(&vectors[k]);
            vnorm_c(&vsub_c(&av, &vscale_c(&vectors[k], values[k])))
        })
        .fold(0.0f64, f64::max);
    if max_res > tol.max(1e-9) * scale || !condition.is_finite() {
        return Err(CosseratError::IllConditioned { values });
    }
    Ok(Spectrum3 {
        values,
        vectors,
        condition,
    })
}

/// Eigendecomposition of a Hermitian 3x3 matrix.
///
/// Returns eigenvalues ascending with a unitary modal matrix (columns are the
/// eigenvectors). Fails with `NotHermitian` when ||A - A*|| > tol ||A||.
pub fn herm_eig(a: &Mat3C, tol: Option<f64>) -> Result<([f64; 3], Mat3C)> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let scale = a.norm_fro();
    let dev = a.herm_deviation();
    if dev > tol.max(1e-12) * scale.max(1.0) {
        return Err(CosseratError::NotHermitian {
            deviation: dev,
            tol: tol * scale.max(1.0),
        });
    }
    let a = a.add(&a.adjoint()).scale(c(0.5, 0.0));
    if scale == 0.0 {
        return Ok(([0.0; 3], Mat3C::identity()));
    }

    // eigenvalues: trigonometric formula for the real characteristic cubic
    let q = a.trace().re / 3.0;
    let m = &a.0;
    let p2 = (m[0][0].re - q).powi(2)
        + (m[1][1].re - q).powi(2)
        + (m[2][2].re - q).powi(2)
        + 2.0 * (m[0][1].norm_sqr() + m[0][2].norm_sqr() + m[1][2].norm_sqr());
    let mut vals = if p2 <= (1e-30 * scale).powi(2) {
        [q, q, q]
    } else {
        let p = (p2 / 6.0).sqrt();
        let mut b = a;
        for i in 0..3 {
            b.0[i][i] -= c(q, 0.0);
        }
        let r = (b.det().re / (p * p * p)) / 2.0;
        let phi = if r <= -1.0 {
            std::f64::consts::PI / 3.0
        } else if r >= 1.0 {
            0.0
        } else {
            r.acos() / 3.0
        };
        let e1 = q + 2.0 * p * phi.cos();
        let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
        [e3, 3.0 * q - e1 - e3, e1]
    };
    // Newton polish on the characteristic cubic
    let (c2, c1, c0) = char_coeffs(&a);
    for v in vals.iter_mut() {
        for _ in 0..2 {
            let z = c(*v, 0.0);
            let f = ((z + c2) * z + c1) * z + c0;
            let df = (c(3.0, 0.0) * z + c(2.0, 0.0) * c2) * z + c1;
            if df.norm() > 1e-300 {
                let step = (f / df).re;
                if step.is_finite() {
                    *v -= step;
                }
            }
        }
    }
    vals.sort_by(f64::total_cmp);

    let mut vectors = [[c(0.0, 0.0); 3]; 3];
    for k in 0..3 {
        let mut b = a;
        for i in 0..3 {
            b.0[i][i] -= c(vals[k], 0.0);
        }
        let v0 = null_vector(&b).unwrap_or([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        vectors[k] = inverse_iteration(&a, c(vals[k], 0.0), &v0);
    }
    // Gram-Schmidt in eigenvalue order restores exact orthonormality for
    // clustered eigenvalues.
    for k in 0..3 {
        let mut v = vectors[k];
        for j in 0..k {
            let proj = hdot(&vectors[j], &v);
            v = vsub_c(&v, &vscale_c(&vectors[j], proj));
        }
        let n = vnorm_c(&v);
        if n < 1e-8 {
            // degenerate: rebuild from a fresh basis vector
            for e in 0..3 {
                let mut cand = [c(0.0, 0.0); 3];
                cand[e] = c(1.0, 0.0);
                for j in 0..k {
                    let proj = hdot(&vectors[j], &cand);
                    cand = vsub_c(&cand, &vscale_c(&vectors[j], proj));
                }
                let nc = vnorm_c(&cand);
                if nc > 0.5 {
                    v = vscale_c(&cand, c(1.0 / nc, 0.0));
                    break;
                }
            }
        } else {
            v = vscale_c(&v, c(1.0 / n, 0.0));
        }
        vectors[k] = v;
    }
    let modal = Mat3C([
        [vectors[0][0], vectors[1][0], vectors[2][0]],
        [vectors[0][1], vectors[1][1], vectors[2][1]],
        [vectors[0][2], vectors[1][2], vectors[2][2]],
    ]);
    Ok((vals, modal))
}

/// exp(s A) for a complex 3x3 matrix.
///
/// Uses the eigendecomposition when the modal matrix is well conditioned,
/// otherwise falls back to scaling-and-squaring with a Taylor kernel.
pub fn mat_exp(a: &Mat3C, s: f64) -> Mat3C {
    let b = a.scale(c(s, 0.0));
    if let Ok(spec) = gen_eig3(&b, None) {
        if spec.condition < 1e8 {
            let modal = spec.modal_matrix();
            if let Ok(inv) = modal.inverse() {
                let d = Mat3C::diag([
                    spec.values[0].exp(),
                    spec.values[1].exp(),
                    spec.values[2].exp(),
                ]);
                return modal.matmul(&d).matmul(&inv);
            }
        }
    }
    // scaling and squaring
    let norm = b.norm_fro();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = b.scale(c(0.5f64.powi(squarings as i32), 0.0));
    let mut term = Mat3C::identity();
    let mut sum = Mat3C::identity();
    for k in 1..=24 {
        term = term.matmul(&scaled).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.norm_fro() < 1e-18 * sum.norm_fro() {
            break;
        }
    }
    let mut out = sum;
    for _ in 0..squarings {
        out = out.matmul(&out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    fn rand_herm(rng: &mut impl Rng) -> Mat3C {
        let mut a = Mat3C::zero();
        for i in 0..3 {
            a.0[i][i] = c(rng.gen_range(-2.0..2.0), 0.0);
            for j in (i + 1)..3 {
                let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                a.0[i][j] = z;
                a.0[j][i] = z.conj();
            }
        }
        a
    }

    #[test]
    fn herm_eig_identity() {
        let (vals, v) = herm_eig(&Mat3C::identity(), None).unwrap();
        assert_eq!(vals, [1.0, 1.0, 1.0]);
        let vtv = v.adjoint().matmul(&v);
        assert!(vtv.sub(&Mat3C::identity()).norm_fro() < 1e-12);
    }

    #[test]
    fn herm_eig_diagonal_sorted() {
        let a = Mat3C::diag([c(2.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
        let (vals, _) = herm_eig(&a, None).unwrap();
        assert_eq!(vals, [-1.0, 0.0, 2.0]);
    }

    #[test]
    fn herm_eig_rejects_non_hermitian() {
        let mut a = Mat3C::identity();
        a.0[0][1] = c(1.0, 0.0);
        assert!(matches!(
            herm_eig(&a, None),
            Err(CosseratError::NotHermitian { .. })
        ));
    }

    #[test]
    fn herm_eig_trace_det_1000_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let a = rand_herm(&mut rng);
            let (vals, v) = herm_eig(&a, None).unwrap();
            let scale = a.norm_fro().max(1.0);
            let tr = a.trace().re;
            let det = a.det().re;
            assert!((vals.iter().sum::<f64>() - tr).abs() <= 1e-10 * scale);
            assert!((vals.iter().product::<f64>() - det).abs() <= 1e-10 * scale.powi(3));
            let dev = v.adjoint().matmul(&v).sub(&Mat3C::identity()).norm_fro();
            assert!(dev < 1e-10, "V*V deviates by {dev}");
        }
    }

    #[test]
    fn gen_eig3_diagonal() {
        let d = [c(1.0, 0.0), c(2.0, 1.0), c(3.0, 0.0)];
        let spec = gen_eig3(&Mat3C::diag(d), None).unwrap();
        let mut got: Vec<C64> = spec.values.to_vec();
        got.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (g, e) in got.iter().zip(d.iter()) {
            assert!((g - e).norm() < 1e-12);
        }
    }

    #[test]
    fn gen_eig3_nilpotent_flagged() {
        let mut a = Mat3C::zero();
        a.0[0][1] = c(1.0, 0.0);
        a.0[1][2] = c(1.0, 0.0);
        match gen_eig3(&a, None) {
            Err(CosseratError::IllConditioned { values }) => {
                for v in values {
                    assert!(v.norm() < 1e-3);
                }
            }
            other => panic!("expected IllConditioned, got {other:?}"),
        }
    }

    #[test]
    fn gen_eig3_char_poly_residual_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut a = Mat3C::zero();
            for i in 0..3 {
                for j in 0..3 {
                    a.0[i][j] = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                }
            }
            let spec = match gen_eig3(&a, None) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let (c2, c1, c0) = super::char_coeffs(&a);
            for lam in spec.values {
                let val = ((lam + c2) * lam + c1) * lam + c0;
                assert!(val.norm() <= 1e-8 * a.norm_fro().powi(3).max(1.0));
            }
        }
    }

    #[test]
    fn mat_exp_zero_scale_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = rand_herm(&mut rng);
        let e = mat_exp(&a, 0.0);
        assert!(e.sub(&Mat3C::identity()).norm_fro() < 1e-14);
    }

    #[test]
    fn mat_exp_diagonal() {
        let a = Mat3C::diag([c(0.3, 0.0), c(-1.2, 0.0), c(2.0, 0.5)]);
        let e = mat_exp(&a, 2.0);
        for i in 0..3 {
            let expect = (a.0[i][i] * c(2.0, 0.0)).exp();
            assert!((e.0[i][i] - expect).norm() < 1e-12 * expect.norm());
        }
    }

    #[test]
    fn mat_exp_inverse_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut a = Mat3C::zero();
            for i in 0..3 {
                for j in 0..3 {
                    a.0[i][j] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            let p = mat_exp(&a, 1.0).matmul(&mat_exp(&a, -1.0));
            assert!(p.sub(&Mat3C::identity()).norm_fro() < 1e-9);
        }
    }

    #[test]
    fn det_inverse_basics() {
        assert_eq!(Mat3R::identity().det(), 1.0);
        assert_eq!(Mat3R::diag([2.0, 3.0, 4.0]).det(), 24.0);
        let a = Mat3R([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]]);
        let prod = a.matmul(&a.inverse().unwrap());
        assert!(prod.sub(&Mat3R::identity()).norm_fro() < 1e-12);
        let singular = Mat3R([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]]);
        assert!(matches!(
            singular.inverse(),
            Err(CosseratError::Singular { .. })
        ));
    }

    #[test]
    fn cubic_known_roots() {
        // (z - 1)(z - 2)(z - 3) = z^3 - 6z^2 + 11z - 6
        let r = solve_cubic(c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0));
        for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - c(want, 0.0)).norm() < 1e-12);
        }
        // conjugate pair ordering: z^3 + z = z(z^2 + 1), pair (i, -i)
        let r = solve_cubic(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert!(r[1].im > r[2].im || r[0].im > 0.0);
    }

    proptest! {
        #[test]
        fn mat_exp_semigroup(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut a = Mat3C::zero();
            for i in 0..3 {
                for j in 0..3 {
                    a.0[i][j] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            let s = rng.gen_range(-0.8..0.8);
            let u = rng.gen_range(-0.8..0.8);
            let lhs = mat_exp(&a, s + u);
            let rhs = mat_exp(&a, s).matmul(&mat_exp(&a, u));
            prop_assert!(lhs.sub(&rhs).norm_fro() < 1e-9 * lhs.norm_fro().max(1.0));
        }

        #[test]
        fn cubic_roots_satisfy_poly(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coef: Vec<C64> = (0..3)
                .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
                .collect();
            let roots = solve_cubic(coef[0], coef[1], coef[2]);
            for z in roots {
                let f = ((z + coef[0]) * z + coef[1]) * z + coef[2];
                prop_assert!(f.norm() < 1e-8 * (1.0 + z.norm().powi(3)));
            }
        }
    }
}
