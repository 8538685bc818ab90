//! Central tolerance configuration.
//!
//! Tolerances suffixed `_rel` scale with a norm of the matrix at hand; the
//! rest are absolute. Defaults target double-precision desk scale. The CLI
//! accepts `--tol KEY=VAL` overrides keyed by the field names below; unknown
//! keys are rejected.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tolerances {
    /// Eigenpair residual bound, relative to |M|.
    pub tol_eig: f64,
    /// Linear solve residual factor.
    pub tol_solve: f64,
    /// Rank cut relative to the largest singular value.
    pub rank_tol: f64,
    /// Eigenvalue clustering radius, relative to |T|.
    pub cluster_tol: f64,
    /// Imaginary-axis classification width, relative to |T|.
    pub tol_axis: f64,
    /// Skew-conjugate pairing radius, relative to |T|.
    pub pair_tol: f64,
    /// |P^2 - P| acceptance for Riesz projections and representation projections.
    pub proj_tol: f64,
    /// Hermiticity acceptance for B and C, relative.
    pub herm_tol: f64,
    /// Structural identity slack, relative to max(1, |T|).
    pub struct_tol: f64,
    /// Invariance residual |(I-P)TP| acceptance, relative to |T|.
    pub inv_tol: f64,
    /// Subspace equality: largest principal angle (radians).
    pub angle_tol: f64,
    /// Neutrality / definiteness classification cut on gram eigenvalues.
    pub neutral_tol: f64,
    /// Accepted pre-symmetrization asymmetry of extracted solutions.
    pub sym_tol: f64,
    /// Riccati residual acceptance factor.
    pub ricc_tol: f64,
    /// Loewner order slack.
    pub order_tol: f64,
    /// Closed-loop eigenvalue matching radius.
    pub match_tol: f64,
    /// Condition cap on the upper block before declaring "not a graph".
    pub graph_cond_cap: f64,
    /// Clearance demanded between integration contours and eigenvalues.
    pub ring_tol: f64,
    /// r0-dominance: last sampled value must fall below this.
    pub dominance_tol: f64,
    /// Relative slack when checking quadrature lower bounds.
    pub qtol: f64,
    /// Log-log slope above which a modal solution family counts as unbounded.
    pub slope_tol: f64,
    /// Relative Frobenius distance for solution deduplication.
    pub dedup_tol: f64,
    /// Initial trapezoid point count for Riesz projections.
    pub quad_points: usize,
    /// Point-doubling cap for Riesz projections.
    pub quad_cap: usize,
    /// Eigenproblem dimension cap.
    pub dim_cap: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_eig: 1e-10,
            tol_solve: 1e-12,
            rank_tol: 1e-12,
            cluster_tol: 1e-7,
            tol_axis: 1e-8,
            pair_tol: 1e-7,
            proj_tol: 1e-10,
            herm_tol: 1e-10,
            struct_tol: 1e-12,
            inv_tol: 1e-9,
            angle_tol: 1e-8,
            neutral_tol: 1e-9,
            sym_tol: 1e-8,
            ricc_tol: 1e-8,
            order_tol: 1e-8,
            match_tol: 1e-6,
            graph_cond_cap: 1e8,
            ring_tol: 1e-6,
            dominance_tol: 1e-2,
            qtol: 0.05,
            slope_tol: 0.05,
            dedup_tol: 1e-6,
            quad_points: 128,
            quad_cap: 4096,
            dim_cap: 512,
        }
    }
}

impl Tolerances {
    /// Applies a `KEY=VAL` override; rejects unknown keys.
    pub fn set(&mut self, key: &str, val: f64) -> Result<(), String> {
        match key {
            "tol_eig" => self.tol_eig = val,
            "tol_solve" => self.tol_solve = val,
            "rank_tol" => self.rank_tol = val,
            "cluster_tol" => self.cluster_tol = val,
            "tol_axis" => self.tol_axis = val,
            "pair_tol" => self.pair_tol = val,
            "proj_tol" => self.proj_tol = val,
            "herm_tol" => self.herm_tol = val,
            "struct_tol" => self.struct_tol = val,
            "inv_tol" => self.inv_tol = val,
            "angle_tol" => self.angle_tol = val,
            "neutral_tol" => self.neutral_tol = val,
            "sym_tol" => self.sym_tol = val,
            "ricc_tol" => self.ricc_tol = val,
            "order_tol" => self.order_tol = val,
            "match_tol" => self.match_tol = val,
            "graph_cond_cap" => self.graph_cond_cap = val,
            "ring_tol" => self.ring_tol = val,
            "dominance_tol" => self.dominance_tol = val,
            "qtol" => self.qtol = val,
            "slope_tol" => self.slope_tol = val,
            "dedup_tol" => self.dedup_tol = val,
            "quad_points" => self.quad_points = val as usize,
            "quad_cap" => self.quad_cap = val as usize,
            "dim_cap" => self.dim_cap = val as usize,
            other => return Err(format!("unknown tolerance key: {other}")),
        }
        Ok(())
    }
}
