//! Explicit zero-free-region bookkeeping: the piecewise width ω_K(t), the
//! induced exponent η_K(x) = inf_{t}(ω_K(t) log x + log t) evaluated both
//! by a dense grid in u = log t and by the closed-form case analysis, and
//! the prime-counting error envelope with its validity threshold.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZfrError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
}

#[derive(Clone, Copy, Debug)]
pub struct RegionParams {
    /// log D_K (natural log of the absolute discriminant), > 0.
    pub log_d: f64,
    /// ε ∈ (0, 1).
    pub epsilon: f64,
    /// |G|.
    pub order_g: u64,
    /// [k : ℚ].
    pub deg_k: u64,
    /// C_G ≥ 6 (config).
    pub c_g: f64,
    /// the absolute constant of the standard zero-free region (config).
    pub c_zfr: f64,
    /// the prime-counting envelope constant (config).
    pub c_envelope: f64,
}

impl RegionParams {
    pub fn new(log_d: f64, epsilon: f64, order_g: u64, deg_k: u64) -> Result<Self, ZfrError> {
        let p = RegionParams {
            log_d,
            epsilon,
            order_g,
            deg_k,
            c_g: 6.0,
            c_zfr: 0.1,
            c_envelope: 0.1,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ZfrError> {
        if !(self.log_d > 0.0 && self.log_d.is_finite()) {
            return Err(ZfrError::Domain(format!("log_d must be positive, got {}", self.log_d)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(ZfrError::Domain(format!("epsilon must lie in (0,1), got {}", self.epsilon)));
        }
        if self.order_g == 0 || self.deg_k == 0 {
            return Err(ZfrError::Domain("order_g and deg_k must be positive".into()));
        }
        if self.c_g < 6.0 {
            return Err(ZfrError::Domain(format!("C_G must be at least 6, got {}", self.c_g)));
        }
        if self.c_zfr <= 0.0 || self.c_envelope <= 0.0 {
            return Err(ZfrError::Domain("constants must be positive".into()));
        }
        Ok(())
    }

    /// δ = ε / (20 |G|), in (0, 1/40].
    pub fn delta(&self) -> f64 {
        self.epsilon / (20.0 * self.order_g as f64)
    }

    /// u-coordinate (u = log t) of the branch cut t = exp(D^{ε/(6 C_G [k:ℚ])}):
    /// u_br = exp(ε · log D / (6 C_G [k:ℚ])). May overflow to +∞; callers
    /// treat the far branch as unreachable then.
    pub fn branch_u(&self) -> f64 {
        (self.epsilon * self.log_d / (6.0 * self.c_g * self.deg_k as f64)).exp()
    }

    fn omega_at_u(&self, u: f64) -> f64 {
        let k = self.deg_k as f64;
        if u <= self.branch_u() {
            2.0 * self.delta() * self.log_d / (self.log_d + k * u)
        } else {
            self.c_zfr / (self.log_d + self.order_g as f64 * k * u)
        }
    }
}

/// ω_K(t) for t ≥ 3: near branch 2δ log D/(log D + [k:ℚ] log t) up to the
/// cut, far branch c/(log D + |G|[k:ℚ] log t) beyond. Piecewise-literal;
/// no continuity across the cut is asserted.
pub fn omega_k(t: f64, p: &RegionParams) -> Result<f64, ZfrError> {
    p.validate()?;
    if !(t >= 3.0) {
        return Err(ZfrError::Domain(format!("t must be at least 3, got {t}")));
    }
    Ok(p.omega_at_u(t.ln()))
}

#[derive(Clone, Copy, Debug)]
pub struct EtaResult {
    pub grid_value: f64,
    pub closed_form_value: f64,
    /// u = log t where the grid minimum was found.
    pub grid_argmin_u: f64,
}

/// η_K(x) = inf_u (ω(e^u) · log x + u) over u ≥ 0.
///
/// Grid route: uniform scan over u ∈ [0, U] with at least 10⁴ nodes, then
/// iterative local refinement around the best node. Closed-form route: the
/// near-branch objective φ₁(u) = 2δ·logD·logx/(logD + k·u) + u is convex
/// with unconstrained minimizer u₁; the admissible near-branch minimum is
/// φ₁ at u₁ clamped to [0, u_br]. The far-branch objective
/// φ₂(u) = c·logx/(logD + |G|k·u) + u has minimizer u₂, admissible at
/// max(u_br, u₂). η is the smaller of the two.
pub fn eta_k(x: f64, p: &RegionParams) -> Result<EtaResult, ZfrError> {
    p.validate()?;
    if !(x >= 3.0) {
        return Err(ZfrError::Domain(format!("x must be at least 3, got {x}")));
    }
    let lx = x.ln();
    let k = p.deg_k as f64;
    let gk = p.order_g as f64 * k;
    let u_br = p.branch_u();

    let phi1 = |u: f64| 2.0 * p.delta() * p.log_d * lx / (p.log_d + k * u) + u;
    let phi2 = |u: f64| p.c_zfr * lx / (p.log_d + gk * u) + u;

    // Closed form.
    // (logD + k·u)² = 2δ·k·logD·logx ⇒ u₁ = (√(2δ·k·logD·logx) − logD)/k,
    // and analogously for the far branch with |G|k and c_zfr.
    let u1 = ((2.0 * p.delta() * k * p.log_d * lx).sqrt() - p.log_d) / k;
    let u2 = ((p.c_zfr * gk * lx).sqrt() - p.log_d) / gk;
    let near = phi1(u1.clamp(0.0, u_br));
    let far = if u_br.is_finite() { phi2(u_br.max(u2)) } else { f64::INFINITY };
    let closed = near.min(far);

    // Grid.
    let mut u_max = 20.0_f64
        .max(2.5 * u1.max(0.0) + 10.0)
        .max(2.5 * u2.max(0.0) + 10.0);
    if u_br.is_finite() && u_br <= 1.0e5 {
        u_max = u_max.max(2.0 * u_br + 10.0);
    }
    let nodes = 10_000usize;
    let mut lo = 0.0f64;
    let mut hi = u_max;
    let mut best_u = 0.0f64;
    let mut best = f64::INFINITY;
    for round in 0..8 {
        let n = if round == 0 { nodes } else { 2_000 };
        let step = (hi - lo) / n as f64;
        let mut local_best = f64::INFINITY;
        let mut local_u = lo;
        for i in 0..=n {
            let u = lo + step * i as f64;
            let v = p.omega_at_u(u) * lx + u;
            if v < local_best {
                local_best = v;
                local_u = u;
            }
        }
        if local_best < best {
            best = local_best;
            best_u = local_u;
        }
        lo = (best_u - step).max(0.0);
        hi = best_u + step;
    }
    Ok(EtaResult { grid_value: best, closed_form_value: closed, grid_argmin_u: best_u })
}

#[derive(Clone, Copy, Debug)]
pub struct Envelope {
    /// x · exp(−c_envelope √(log x)).
    pub value: f64,
    /// log of the validity threshold: (81|G|/ε) · log log D_K.
    pub threshold_log: f64,
    /// whether log x meets the threshold.
    pub threshold_met: bool,
}

pub fn pnt_envelope(x: f64, p: &RegionParams) -> Result<Envelope, ZfrError> {
    p.validate()?;
    if !(x >= 3.0) {
        return Err(ZfrError::Domain(format!("x must be at least 3, got {x}")));
    }
    let value = x * (-p.c_envelope * x.ln().sqrt()).exp();
    let threshold_log = (81.0 * p.order_g as f64 / p.epsilon) * p.log_d.ln();
    Ok(Envelope {
        value,
        threshold_log,
        threshold_met: x.ln() >= threshold_log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> RegionParams {
        RegionParams::new(50.0, 0.5, 120, 1).unwrap()
    }

    #[test]
    fn omega_near_branch_formula() {
        let p = params();
        let t = 3.0f64;
        let expect = 2.0 * p.delta() * p.log_d / (p.log_d + 1.0 * t.ln());
        assert!((omega_k(t, &p).unwrap() - expect).abs() < 1e-15);
        assert!(omega_k(2.9, &p).is_err());
    }

    #[test]
    fn omega_far_branch_decreasing() {
        // Small log D so the branch cut is reachable.
        let mut p = RegionParams::new(2.0, 0.5, 6, 1).unwrap();
        p.c_g = 6.0;
        let ubr = p.branch_u();
        assert!(ubr < 50.0);
        let t1 = (ubr + 1.0).exp();
        let t2 = (ubr + 5.0).exp();
        let w1 = omega_k(t1, &p).unwrap();
        let w2 = omega_k(t2, &p).unwrap();
        assert!(w2 < w1);
        assert!(w2 > 0.0);
    }

    #[test]
    fn eta_grid_matches_closed_form() {
        for log_d in [10.0, 100.0, 1000.0] {
            for eps in [0.1, 0.5, 0.9] {
                for g in [6u64, 24, 120] {
                    let p = RegionParams::new(log_d, eps, g, 1).unwrap();
                    for x in [1.0e3, 1.0e6, 1.0e12, 1.0e30] {
                        let r = eta_k(x, &p).unwrap();
                        let rel = (r.grid_value - r.closed_form_value).abs()
                            / r.closed_form_value.abs().max(1e-300);
                        assert!(
                            rel <= 1.0e-6,
                            "mismatch at logD={log_d} eps={eps} g={g} x={x}: {} vs {}",
                            r.grid_value,
                            r.closed_form_value
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eta_asymptote_bound() {
        let p = params();
        // φ₁(0) = 2δ·logx = (ε/10|G|)·logx is always an upper bound.
        for x in [1.0e2, 1.0e6, 1.0e20] {
            let r = eta_k(x, &p).unwrap();
            let bound = p.epsilon / (10.0 * p.order_g as f64) * x.ln();
            assert!(r.closed_form_value <= bound + 1e-9);
            assert!(r.grid_value <= bound + 1e-9);
            // closed form never undershoots the refined grid by > 1e-6·|grid|
            assert!(r.closed_form_value >= r.grid_value - 1.0e-6 * r.grid_value.abs());
        }
    }

    #[test]
    fn eta_degenerate_small_logd() {
        let p = RegionParams::new(1.0e-9, 0.5, 6, 1).unwrap();
        let r = eta_k(1.0e6, &p).unwrap();
        assert!(r.grid_value.is_finite());
        assert!(r.closed_form_value.is_finite());
    }

    #[test]
    fn envelope_values() {
        let p = params();
        let e = pnt_envelope(3.0, &p).unwrap();
        let expect = 3.0 * (-0.1 * 3.0f64.ln().sqrt()).exp();
        assert!((e.value - expect).abs() < 1e-12);
        // threshold for logD = e⁵, |G| = 120, ε = 0.5: (81·120/0.5)·5.
        let p2 = RegionParams::new(5.0f64.exp(), 0.5, 120, 1).unwrap();
        let e2 = pnt_envelope(1.0e6, &p2).unwrap();
        assert!((e2.threshold_log - 81.0 * 120.0 / 0.5 * 5.0).abs() < 1e-9);
        assert!(!e2.threshold_met);
    }

    #[test]
    fn param_validation() {
        assert!(RegionParams::new(-1.0, 0.5, 6, 1).is_err());
        assert!(RegionParams::new(10.0, 1.5, 6, 1).is_err());
        assert!(RegionParams::new(10.0, 0.5, 0, 1).is_err());
        let mut p = params();
        p.c_g = 5.0;
        assert!(p.validate().is_err());
    }
}
