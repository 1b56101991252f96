use super::structure::StructureConstants;
use crate::error::Result;
use crate::rootsystem::HighestRootData;

/// `x = e_{−ψ} + Σ √nᵢ e_{αᵢ}` and `x₋ = e_ψ + Σ √nᵢ e_{−αᵢ}`.
#[derive(Clone, Debug)]
pub struct CyclicElement {
    pub x: Vec<f64>,
    pub x_minus: Vec<f64>,
    /// `(β_{−ψ}, β₁, …, βℓ) = (1, √n₁, …, √nℓ)`.
    pub beta: Vec<f64>,
    pub t_beta: f64,
    /// Marks `nᵢ` of the highest root.
    pub marks: Vec<i64>,
    /// Basis index of `e_ψ`.
    pub psi_index: usize,
}

pub fn build_cyclic_element(sc: &StructureConstants, hr: &HighestRootData) -> CyclicElement {
    let d = sc.dim();
    let psi = sc.num_roots() - 1;
    let mut x = vec![0.0; d];
    let mut x_minus = vec![0.0; d];
    x[sc.neg(psi)] = 1.0;
    x_minus[psi] = 1.0;
    let mut beta = vec![1.0];
    for (i, &n) in hr.marks.iter().enumerate() {
        let b = (n as f64).sqrt();
        let a = sc.simple_index(i);
        x[a] = b;
        x_minus[sc.neg(a)] = b;
        beta.push(b);
    }
    CyclicElement {
        x,
        x_minus,
        beta,
        t_beta: 1.0,
        marks: hr.marks.clone(),
        psi_index: psi,
    }
}

impl CyclicElement {
    /// `x(β′) = x − e_{−ψ}` and `x₋(β′) = x₋ − e_ψ`.
    pub fn principal_parts(&self, sc: &StructureConstants) -> (Vec<f64>, Vec<f64>) {
        let mut p = self.x.clone();
        let mut m = self.x_minus.clone();
        p[sc.neg(self.psi_index)] = 0.0;
        m[self.psi_index] = 0.0;
        (p, m)
    }

    /// Max-norm of `[x, x₋]`.
    pub fn commutator_norm(&self, sc: &StructureConstants) -> Result<f64> {
        let c = sc.bracket(&self.x, &self.x_minus)?;
        Ok(c.iter().fold(0.0, |m, v| m.max(v.abs())))
    }

    /// Max-norm of `x₋ + θ(x̄)`, zero when `x₋` is the conjugate of `x`
    /// for the compact real form.
    pub fn conjugation_defect(&self, sc: &StructureConstants) -> f64 {
        sc.theta(&self.x)
            .iter()
            .zip(&self.x_minus)
            .fold(0.0, |m, (a, b)| m.max((a + b).abs()))
    }

    pub fn nonzero_count(&self) -> usize {
        self.x.iter().filter(|v| **v != 0.0).count()
    }
}
