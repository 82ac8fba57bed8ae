//! Regularized generalized hypergeometric series.
//!
//! `reg_hyp_series` evaluates `Σₖ Πᵢ(uᵢ)ₖ · Πⱼ 1/Γ(lⱼ+k) · zᵏ/k!` — the
//! regularization keeps nonpositive-integer lower parameters finite, and an
//! upper parameter at (or within 1e-9 of) a nonpositive integer terminates
//! the series exactly, which is what makes the otherwise-divergent ₃F̃₁
//! shapes of the double-shadowed models polynomials.
//!
//! `reg_2f2` adds the large-negative-argument machinery the Type III series
//! need: the Taylor sum loses one digit per ~2.3 units of |z| to
//! cancellation, so past the crossover the algebraic asymptotic expansion
//! (residues at the left poles of the Mellin–Barnes integrand) takes over.

use super::gamma::{ln_gamma_pos, ln_gamma_sign};
use super::{SeriesControl, SignedLogSum};
use crate::error::{Error, Result};

/// A signed quantity in log form plus an honest relative-error estimate.
#[derive(Debug, Clone, Copy)]
pub struct SignedLn {
    pub ln_abs: f64,
    pub sign: f64,
    pub rel_err: f64,
}

impl SignedLn {
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

fn snap_terminator(u: f64) -> f64 {
    let r = u.round();
    if r <= 0.0 && (u - r).abs() < 1e-9 {
        r
    } else {
        u
    }
}

fn series_core(
    upper: &[f64],
    lower: &[f64],
    z: f64,
    control: &SeriesControl,
) -> Result<(SignedLogSum, bool)> {
    control.validate()?;
    let upper: Vec<f64> = upper.iter().copied().map(snap_terminator).collect();
    let terminating = upper.iter().any(|&u| u <= 0.0 && u == u.floor());
    let mut sum = SignedLogSum::new();

    // k = 0 term: Π 1/Γ(lⱼ)
    let mut ln0 = 0.0;
    let mut s0 = 1.0;
    for &l in lower {
        let (ln_g, s_g) = ln_gamma_sign(l);
        ln0 -= ln_g;
        s0 *= s_g; // sign 0 at a Γ pole makes the whole term vanish
    }
    sum.add(ln0, s0);

    if z == 0.0 {
        return Ok((sum, true));
    }
    let ln_abs_z = z.abs().ln();
    let sign_z = z.signum();

    // upper Pochhammers evolve incrementally; lower 1/Γ(l+k) is recomputed
    // outright because it can pass through zeros and sign flips
    let mut ln_poch = 0.0;
    let mut s_poch = 1.0;
    let mut quiet = 0u32;
    for k in 0..control.max_terms {
        let kf = k as f64;
        for &u in &upper {
            let f = u + kf;
            if f == 0.0 {
                return Ok((sum, true)); // exact termination
            }
            ln_poch += f.abs().ln();
            s_poch *= f.signum();
        }
        let mut ln_t = ln_poch + (kf + 1.0) * ln_abs_z - ln_gamma_pos(kf + 2.0);
        let mut s_t = s_poch * if sign_z < 0.0 && (k + 1) % 2 == 1 { -1.0 } else { 1.0 };
        for &l in lower {
            let (ln_g, s_g) = ln_gamma_sign(l + kf + 1.0);
            ln_t -= ln_g;
            s_t *= s_g;
        }
        sum.add(ln_t, s_t);
        if sum.term_is_negligible(ln_t, control) {
            quiet += 1;
            if quiet >= 3 {
                return Ok((sum, true));
            }
        } else {
            quiet = 0;
        }
    }
    if terminating {
        // terminator further out than the budget
        return Err(Error::NonConvergence {
            context: format!("reg_hyp_series terminating series longer than budget (upper={upper:?})"),
            max_terms: control.max_terms,
        });
    }
    Err(Error::NonConvergence {
        context: format!("reg_hyp_series(upper={upper:?}, lower={lower:?}, z={z})"),
        max_terms: control.max_terms,
    })
}

/// `(ln|F̃|, sign)` of the regularized series.
pub fn ln_reg_hyp_series(
    upper: &[f64],
    lower: &[f64],
    z: f64,
    control: &SeriesControl,
) -> Result<(f64, f64)> {
    let (sum, _) = series_core(upper, lower, z, control)?;
    Ok(sum.ln_sign())
}

/// Regularized generalized hypergeometric series, plain value.
pub fn reg_hyp_series(upper: &[f64], lower: &[f64], z: f64, control: &SeriesControl) -> Result<f64> {
    let (ln, sign) = ln_reg_hyp_series(upper, lower, z, control)?;
    Ok(sign * ln.exp())
}

/// Asymptotic expansion of ₂F̃₂(a₁,a₂;b₁,b₂;−x) for large x > 0:
/// sum over m of x^{−a_m} Σ_k (−1)^k Γ(a_m+k) Γ(a_{m'}−a_m−k)
///   / (k! Γ(b₁−a_m−k) Γ(b₂−a_m−k) Γ(a₁)Γ(a₂)) x^{−k}.
/// Requires a₂−a₁ away from the integers.
fn reg_2f2_asymptotic(a: [f64; 2], b: [f64; 2], x: f64) -> Result<SignedLn> {
    let sep = a[1] - a[0];
    if (sep - sep.round()).abs() < 1e-6 {
        return Err(Error::Pole(format!(
            "2F2 asymptotic branches collide: a2-a1 = {sep} is (nearly) an integer"
        )));
    }
    let (ln_ga1, s_ga1) = ln_gamma_sign(a[0]);
    let (ln_ga2, s_ga2) = ln_gamma_sign(a[1]);
    if s_ga1 == 0.0 || s_ga2 == 0.0 {
        return Err(Error::Pole("2F2 asymptotic with 1/Γ(a)=0".into()));
    }
    let ln_x = x.ln();
    let mut sum = SignedLogSum::new();
    // log of the absolute size of the largest neglected term across branches
    let mut ln_trunc = f64::NEG_INFINITY;
    for m in 0..2 {
        let am = a[m];
        let other = a[1 - m];
        let mut prev = f64::INFINITY;
        let mut branch_lead = f64::NEG_INFINITY;
        for k in 0..400 {
            let kf = k as f64;
            let (ln_g1, s_g1) = ln_gamma_sign(am + kf);
            let (ln_g2, s_g2) = ln_gamma_sign(other - am - kf);
            let (ln_g3, s_g3) = ln_gamma_sign(b[0] - am - kf);
            let (ln_g4, s_g4) = ln_gamma_sign(b[1] - am - kf);
            if s_g1 == 0.0 || s_g2 == 0.0 {
                break;
            }
            let ln_t = ln_g1 + ln_g2 - ln_g3 - ln_g4 - ln_gamma_pos(kf + 1.0)
                - (am + kf) * ln_x
                - ln_ga1
                - ln_ga2;
            let s_t = s_g1
                * s_g2
                * s_g3
                * s_g4
                * s_ga1
                * s_ga2
                * if k % 2 == 1 { -1.0 } else { 1.0 };
            if k == 0 {
                branch_lead = ln_t;
            }
            if ln_t > prev {
                // divergent tail: stop before the smallest term grows again;
                // the first neglected term bounds the truncation error
                ln_trunc = ln_trunc.max(ln_t);
                break;
            }
            if s_g3 == 0.0 || s_g4 == 0.0 {
                prev = ln_t; // term vanished through a 1/Γ zero; keep going
                continue;
            }
            sum.add(ln_t, s_t);
            prev = ln_t;
            if ln_t < branch_lead - 42.0 {
                ln_trunc = ln_trunc.max(ln_t);
                break;
            }
        }
    }
    let (ln_abs, sign) = sum.ln_sign();
    // truncation + the exponentially small e^{−x} contribution the
    // algebraic expansion omits, both relative to the result
    let rel = sum
        .cancellation_ulps()
        .max((ln_trunc - ln_abs).exp())
        .max((-x - ln_abs).exp());
    Ok(SignedLn { ln_abs, sign, rel_err: rel })
}

/// ₂F̃₂(a₁,a₂;b₁,b₂;z) with automatic route selection and an error estimate.
///
/// Direct Taylor summation everywhere it keeps enough digits (terminating
/// polynomials, z ≥ 0, moderate negative z); the asymptotic expansion for
/// large negative z. When the asymptotic route is blocked by a branch
/// degeneracy the direct value is returned with its honest (possibly large)
/// `rel_err`, and the caller decides whether that is acceptable.
pub fn reg_2f2(a: [f64; 2], b: [f64; 2], z: f64, control: &SeriesControl) -> Result<SignedLn> {
    let a_snapped = [snap_terminator(a[0]), snap_terminator(a[1])];
    let terminating = a_snapped.iter().any(|&u| u <= 0.0 && u == u.floor());
    let direct = |ctl: &SeriesControl| -> Result<SignedLn> {
        let (sum, _) = series_core(&a_snapped, &b, z, ctl)?;
        let (ln_abs, sign) = sum.ln_sign();
        Ok(SignedLn { ln_abs, sign, rel_err: sum.cancellation_ulps() })
    };
    if terminating || z >= 0.0 {
        return direct(control);
    }
    let x = -z;
    // Direct summation loses roughly x/ln(10) digits to cancellation; the
    // optimally-truncated expansion is already at ~e^{−x} here.
    if x <= 20.0 {
        return direct(control);
    }
    match reg_2f2_asymptotic(a_snapped, b, x) {
        Ok(v) => Ok(v),
        Err(Error::Pole(_)) => {
            // branch-degenerate parameters: return the Taylor value with its
            // honest (large) error estimate and let the caller decide
            let widened = control.with_max_terms(control.max_terms.max(4 * x as usize + 200));
            direct(&widened)
        }
        Err(e) => Err(e),
    }
}
