use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, CRational, Scalar};
use crate::star_poly::{Monomial, Presentation, StarPoly};

use super::state::{real_part, State};

/// Eigenvalues of a floating Gram matrix may dip this far below zero
/// (relative to `max(1, λ_max)`) before positivity counts as violated.
pub const PSD_TOLERANCE: f64 = 1e-10;
/// Relative norm below which a floating Gram–Schmidt residual is null.
pub const NULL_THRESHOLD: f64 = 1e-9;

/// Result of Gram–Schmidt on the Gram matrix.
#[derive(Clone, Debug)]
struct Reduction {
    /// Exact orthogonal vectors with their squared norms, when the Gram
    /// matrix is exact.
    exact_orthogonal: Option<Vec<(Vec<CRational>, BigRational)>>,
    exact_null: Option<Vec<Vec<CRational>>>,
    orthonormal: Vec<Vec<Complex64>>,
    null_space: Vec<Vec<Complex64>>,
}

/// Degree-`d` truncation of the GNS construction: the monomial basis, its
/// Gram matrix `G[i][j] = E(mᵢ* mⱼ)` and, once [`gns_basis`] has run, the
/// zero-norm vectors and an orthonormal basis of the quotient. Vectors are
/// coefficient lists over the monomial basis.
///
/// The truncated space is not invariant under multiplication by a
/// generator; [`truncation_leakage`] reports how much of each `g·bⱼ` falls
/// outside it.
#[derive(Clone, Debug)]
pub struct GnsModel {
    state: State,
    degree: u32,
    basis: Vec<Monomial>,
    gram: Vec<Vec<Scalar>>,
    reduction: Option<Reduction>,
}

/// All irreducible monomials of total degree `≤ d`, in graded-lex order.
pub fn monomial_basis(pres: &Presentation, d: u32) -> Vec<Monomial> {
    Monomial::up_to_degree(pres.arity(), d)
        .into_iter()
        .filter(|m| pres.is_irreducible(m))
        .collect()
}

/// Matrix `E((g·mₖ)* (h·mₗ))` over the basis, `g`, `h` optional factors.
fn moment_matrix(
    state: &State,
    basis: &[Monomial],
    left: Option<&StarPoly>,
    right: Option<&StarPoly>,
) -> Result<Vec<Vec<Scalar>>> {
    let pres = state.presentation();
    let lift = |m: &Monomial, f: Option<&StarPoly>| -> Result<StarPoly> {
        let p = StarPoly::monomial(pres, m.clone(), CRational::one())?;
        match f {
            Some(f) => f.mul(&p),
            None => Ok(p),
        }
    };
    let lefts = basis
        .iter()
        .map(|m| lift(m, left)?.involute())
        .collect::<Result<Vec<_>>>()?;
    let rights = basis
        .iter()
        .map(|m| lift(m, right))
        .collect::<Result<Vec<_>>>()?;
    lefts
        .iter()
        .map(|l| {
            rights
                .iter()
                .map(|r| state.expect(&l.mul(r)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Moment Gram matrix of `state` on the degree-`d` monomial basis.
pub fn gram_matrix(state: &State, d: u32) -> Result<GnsModel> {
    let basis = monomial_basis(state.presentation(), d);
    let gram = moment_matrix(state, &basis, None, None)?;
    Ok(GnsModel {
        state: state.clone(),
        degree: d,
        basis,
        gram,
        reduction: None,
    })
}

fn exact_matrix(m: &[Vec<Scalar>]) -> Option<Vec<Vec<CRational>>> {
    m.iter()
        .map(|row| row.iter().map(|s| s.as_exact().cloned()).collect())
        .collect()
}

fn float_matrix(m: &[Vec<Scalar>]) -> DMatrix<Complex64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].to_c64())
}

fn mat_vec(g: &[Vec<CRational>], v: &[CRational]) -> Vec<CRational> {
    g.iter()
        .map(|row| {
            let mut acc = CRational::zero();
            for (a, b) in row.iter().zip(v) {
                if !b.is_zero() && !a.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
        .collect()
}

/// `u† w`.
fn dot(u: &[CRational], w: &[CRational]) -> CRational {
    let mut acc = CRational::zero();
    for (a, b) in u.iter().zip(w) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(&a.conj() * b);
        }
    }
    acc
}

fn exact_reduction(g: &[Vec<CRational>]) -> Result<Reduction> {
    let n = g.len();
    // Orthogonal vectors `u`, their images `G u` and squared norms.
    let mut ortho: Vec<(Vec<CRational>, Vec<CRational>, BigRational)> = Vec::new();
    let mut null = Vec::new();
    for k in 0..n {
        let mut v = vec![CRational::zero(); n];
        v[k] = CRational::one();
        for (u, gu, norm) in &ortho {
            // <u, e_k> = (u† G)_k = conj((G u)_k) since G is Hermitian.
            let c = gu[k].conj().scale(&norm.recip());
            if c.is_zero() {
                continue;
            }
            for (vi, ui) in v.iter_mut().zip(u) {
                if !ui.is_zero() {
                    *vi = &*vi - &(&c * ui);
                }
            }
        }
        let gv = mat_vec(g, &v);
        let norm = dot(&v, &gv);
        if !norm.im.is_zero() {
            return Err(Error::NotPositive(format!(
                "Gram matrix is not Hermitian: residual {k} has norm {norm}"
            )));
        }
        let norm = norm.re;
        if norm.is_negative() {
            return Err(Error::NotPositive(format!(
                "residual of basis vector {k} has negative norm {norm}"
            )));
        }
        if norm.is_zero() {
            if gv.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotPositive(format!(
                    "residual of basis vector {k} has zero norm but is not in the kernel"
                )));
            }
            null.push(v);
        } else {
            ortho.push((v, gv, norm));
        }
    }
    let orthonormal = ortho
        .iter()
        .map(|(u, _, norm)| {
            let s = rat_to_f64(norm).sqrt();
            u.iter().map(|c| c.to_c64() / s).collect()
        })
        .collect();
    let null_space = null
        .iter()
        .map(|v: &Vec<CRational>| v.iter().map(CRational::to_c64).collect())
        .collect();
    Ok(Reduction {
        exact_orthogonal: Some(ortho.into_iter().map(|(u, _, n)| (u, n)).collect()),
        exact_null: Some(null),
        orthonormal,
        null_space,
    })
}

fn cdot(g: &DMatrix<Complex64>, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let n = u.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        if u[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            row += g[(i, j)] * v[j];
        }
        acc += u[i].conj() * row;
    }
    acc
}

fn float_reduction(g: &DMatrix<Complex64>) -> Result<Reduction> {
    let n = g.nrows();
    let eig = g.clone().symmetric_eigen();
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let lmin = eig
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if n > 0 && lmin < -PSD_TOLERANCE * lmax.max(1.0) {
        return Err(Error::NotPositive(format!(
            "Gram matrix has eigenvalue {lmin:e}"
        )));
    }
    let mut orthonormal: Vec<Vec<Complex64>> = Vec::new();
    let mut null_space = Vec::new();
    for k in 0..n {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k] = Complex64::new(1.0, 0.0);
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for b in &orthonormal {
                let c = cdot(g, b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
        }
        let norm = cdot(g, &v, &v).re;
        let size: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if norm <= NULL_THRESHOLD * lmax * size {
            null_space.push(v);
        } else {
            let s = norm.sqrt();
            orthonormal.push(v.into_iter().map(|c| c / s).collect());
        }
    }
    Ok(Reduction {
        exact_orthogonal: None,
        exact_null: None,
        orthonormal,
        null_space,
    })
}

/// Splits the basis into zero-norm vectors and an orthonormal basis of the
/// quotient by Gram–Schmidt in basis order. Exact when the Gram matrix is,
/// with a floating threshold otherwise. Fails with `NotPositive` when the
/// Gram matrix is not positive semidefinite.
pub fn gns_basis(mut model: GnsModel) -> Result<GnsModel> {
    let reduction = match exact_matrix(&model.gram) {
        Some(g) => exact_reduction(&g)?,
        None => float_reduction(&float_matrix(&model.gram))?,
    };
    model.reduction = Some(reduction);
    Ok(model)
}

impl GnsModel {
    /// [`gram_matrix`] followed by [`gns_basis`].
    pub fn build(state: &State, d: u32) -> Result<GnsModel> {
        gns_basis(gram_matrix(state, d)?)
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.state.presentation()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    pub fn gram_c64(&self) -> DMatrix<Complex64> {
        float_matrix(&self.gram)
    }

    pub fn exact_gram(&self) -> Option<Vec<Vec<CRational>>> {
        exact_matrix(&self.gram)
    }

    pub fn is_reduced(&self) -> bool {
        self.reduction.is_some()
    }

    fn reduced(&self) -> Result<&Reduction> {
        self.reduction
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("GNS basis has not been computed".into()))
    }

    pub fn rank(&self) -> Option<usize> {
        self.reduction.as_ref().map(|r| r.orthonormal.len())
    }

    pub fn orthonormal(&self) -> Option<&[Vec<Complex64>]> {
        self.reduction.as_ref().map(|r| r.orthonormal.as_slice())
    }

    pub fn null_space(&self) -> Option<&[Vec<Complex64>]> {
        self.reduction.as_ref().map(|r| r.null_space.as_slice())
    }

    /// Orthogonal (unnormalized) vectors and their squared norms.
    pub fn exact_orthogonal(&self) -> Option<&[(Vec<CRational>, BigRational)]> {
        self.reduction.as_ref()?.exact_orthogonal.as_deref()
    }

    pub fn exact_null_space(&self) -> Option<&[Vec<CRational>]> {
        self.reduction.as_ref()?.exact_null.as_deref()
    }

    /// The polynomial `Σ vᵢ mᵢ`.
    pub fn polynomial(&self, v: &[CRational]) -> Result<StarPoly> {
        if v.len() != self.basis.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.basis.len(),
                v.len()
            )));
        }
        StarPoly::from_terms(
            self.presentation(),
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }
}

fn generator_poly(model: &GnsModel, g: usize) -> Result<StarPoly> {
    StarPoly::generator(model.presentation(), g)
}

/// `⟨bᵢ, g·bⱼ⟩` on the orthonormal basis.
pub fn multiplication_operator(model: &GnsModel, g: usize) -> Result<DMatrix<Complex64>> {
    let red = model.reduced()?;
    let gp = generator_poly(model, g)?;
    let h = moment_matrix(&model.state, &model.basis, None, Some(&gp))?;
    let r = red.orthonormal.len();
    if let (Some(ortho), Some(h)) = (&red.exact_orthogonal, exact_matrix(&h)) {
        let hu: Vec<Vec<CRational>> = ortho.iter().map(|(u, _)| mat_vec(&h, u)).collect();
        return Ok(DMatrix::from_fn(r, r, |i, j| {
            let (ui, ni) = &ortho[i];
            let nj = &ortho[j].1;
            dot(ui, &hu[j]).to_c64() / (rat_to_f64(ni) * rat_to_f64(nj)).sqrt()
        }));
    }
    let h = float_matrix(&h);
    let b = &red.orthonormal;
    Ok(DMatrix::from_fn(r, r, |i, j| cdot(&h, &b[i], &b[j])))
}

/// For each orthonormal `bⱼ`: `‖g·bⱼ‖² − Σᵢ |⟨bᵢ, g·bⱼ⟩|²`, the squared
/// norm of the part of `g·bⱼ` outside the truncated space. Zero when the
/// truncation is invariant under `g`.
pub fn truncation_leakage(model: &GnsModel, g: usize) -> Result<Vec<f64>> {
    let red = model.reduced()?;
    let gp = generator_poly(model, g)?;
    let h = moment_matrix(&model.state, &model.basis, None, Some(&gp))?;
    let k = moment_matrix(&model.state, &model.basis, Some(&gp), Some(&gp))?;
    if let (Some(ortho), Some(h), Some(k)) =
        (&red.exact_orthogonal, exact_matrix(&h), exact_matrix(&k))
    {
        let mut out = Vec::with_capacity(ortho.len());
        for (uj, nj) in ortho {
            let hu = mat_vec(&h, uj);
            let mut leak = dot(uj, &mat_vec(&k, uj)).re / nj;
            for (ui, ni) in ortho {
                leak -= dot(ui, &hu).norm_sqr() / (ni * nj);
            }
            out.push(rat_to_f64(&leak));
        }
        return Ok(out);
    }
    let m = multiplication_operator(model, g)?;
    let k = float_matrix(&k);
    Ok(red
        .orthonormal
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let total = cdot(&k, b, b).re;
            let inside: f64 = (0..m.nrows()).map(|i| m[(i, j)].norm_sqr()).sum();
            total - inside
        })
        .collect())
}

/// `E(a* a)` as a real number, for positivity checks.
pub fn norm_squared(state: &State, a: &StarPoly) -> Result<Scalar> {
    state.expect(&a.involute()?.mul(a)?)
}

/// Real part of `E(a* a)` in floating point.
pub fn norm_squared_f64(state: &State, a: &StarPoly) -> Result<f64> {
    Ok(real_part(&norm_squared(state, a)?))
}
