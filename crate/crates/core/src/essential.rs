//! Morphisms factoring through smaller subquotients, and the essential
//! quotients `Hom-bar(H, K)` with their right `kOut(H)`-action.

use rayon::prelude::*;

use crate::burnside::{compose_basis, BisetCategory};
use crate::error::Result;
use crate::groups::OutGroup;
use crate::linalg::{q, zero_vec, QMatrix, Subspace, Q};

/// `Hom-bar(H, K)`: `B(K, H)` modulo the span of compositions through the
/// objects `through`.
#[derive(Clone, Debug)]
pub struct HomBar {
    pub source: usize,
    pub target: usize,
    pub ambient_dim: usize,
    pub ideal: Subspace,
    /// Basis labels of `B(K, H)` whose classes form the quotient basis.
    pub reps: Vec<usize>,
}

/// `I(H, K) = Σ_X B(K, X) ∘ B(X, H)` over the objects `X` in `through`.
pub fn ideal(cat: &BisetCategory, source: usize, target: usize, through: &[usize]) -> Result<Subspace> {
    let out = cat.basis(target, source)?;
    let n = out.dim();
    let mut ideal = Subspace::zero(n);
    for &x in through {
        if ideal.dim() == n {
            break;
        }
        let left = cat.basis(target, x)?;
        let right = cat.basis(x, source)?;
        let vectors: Vec<Vec<Q>> = (0..left.dim() * right.dim())
            .into_par_iter()
            .map(|ab| {
                let terms = compose_basis(&left, ab / right.dim(), &right, ab % right.dim(), &out)?;
                let mut v = zero_vec(n);
                for (k, c) in terms {
                    v[k] = q(c);
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        for v in vectors {
            ideal.insert(v);
            if ideal.dim() == n {
                break;
            }
        }
    }
    Ok(ideal)
}

impl HomBar {
    pub fn new(cat: &BisetCategory, source: usize, target: usize, through: &[usize]) -> Result<Self> {
        let ideal = ideal(cat, source, target, through)?;
        let reps = ideal.complement_indices();
        Ok(HomBar {
            source,
            target,
            ambient_dim: ideal.ambient(),
            ideal,
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Quotient coordinates of an element of `B(K, H)`.
    pub fn project(&self, v: &[Q]) -> Vec<Q> {
        self.ideal.quotient_coords(v)
    }

    pub fn project_terms(&self, terms: &[(usize, i64)]) -> Vec<Q> {
        let mut v = zero_vec(self.ambient_dim);
        for &(k, c) in terms {
            v[k] += q(c);
        }
        self.project(&v)
    }

    /// Matrix of `x ↦ x · φ = x ∘ Iso(φ)` on quotient coordinates, for every
    /// element of `Out(H)`. The assignment reverses products:
    /// `R(φψ) = R(ψ) R(φ)`.
    pub fn out_action(&self, cat: &BisetCategory, out: &OutGroup) -> Result<Vec<QMatrix>> {
        let h = self.source;
        let left = cat.basis(self.target, h)?;
        let hh = cat.basis(h, h)?;
        (0..out.order())
            .map(|phi| {
                let iso = cat.iso(h, h, &out.out_elements[phi])?;
                let j = *iso.coeffs.keys().next().expect("transitive");
                let mut m = QMatrix::zeros(self.dim(), self.dim());
                for (i, &r) in self.reps.iter().enumerate() {
                    let terms = compose_basis(&left, r, &hh, j, &left)?;
                    for (k, c) in self.project_terms(&terms).into_iter().enumerate() {
                        m.set(k, i, c);
                    }
                }
                Ok(m)
            })
            .collect()
    }

    /// Quotient coordinates of the images of `Iso(φ)` for `φ ∈ Out(H)`, as
    /// the columns of a square matrix (only for `K = H`).
    pub fn out_images(&self, cat: &BisetCategory, out: &OutGroup) -> Result<QMatrix> {
        let cols = (0..out.order())
            .map(|phi| {
                let iso = cat.iso(self.source, self.source, &out.out_elements[phi])?;
                Ok(self.project(&iso.to_vector(self.ambient_dim)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_columns(&cols, self.dim()))
    }
}

/// Checks that `Hom-bar(H, H)` with the product induced by composition is
/// the group algebra of `Out(H)`, with `Iso(φ) ↦ φ`.
pub fn is_out_group_algebra(cat: &BisetCategory, hb: &HomBar, out: &OutGroup) -> Result<bool> {
    if hb.source != hb.target || hb.dim() != out.order() {
        return Ok(false);
    }
    let images = hb.out_images(cat, out)?;
    if images.rank() != out.order() {
        return Ok(false);
    }
    let h = hb.source;
    let b = cat.basis(h, h)?;
    let isos = (0..out.order())
        .map(|phi| cat.iso(h, h, &out.out_elements[phi]))
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in isos.iter().enumerate() {
        let a = *a.coeffs.keys().next().expect("transitive");
        for (j, c) in isos.iter().enumerate() {
            let c = *c.coeffs.keys().next().expect("transitive");
            let prod = hb.project_terms(&compose_basis(&b, a, &b, c, &b)?);
            if prod != images.column(out.mul(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
