//! Scalar special functions.
//!
//! Everything here is pure and reentrant. The fading PDFs stress these
//! kernels in unusual ways — Bessel orders that grow with the series index,
//! gamma-ratio prefactors like `m^m` that overflow long before the PDF value
//! does — so most functions come in two flavours: a plain one returning the
//! value, and a `ln_*` one returning the natural log (with a sign where the
//! quantity can be negative). The log flavours are what the model evaluators
//! actually build on.

mod bessel;
mod gamma;
mod hyper;
mod pfq;
mod tricomi;

pub use bessel::{bessel_k, ln_bessel_i, ln_bessel_k, KnuLadder};
pub use gamma::{beta, ln_beta, ln_gamma, ln_gamma_sign, ln_pochhammer_sign, pochhammer, sin_pi};
pub use hyper::{hyp1f1, hyp2f1, ln_hyp1f1, ln_hyp2f1};
pub use pfq::{reg_2f2, reg_hyp_series};
pub use tricomi::{ln_tricomi_u, tricomi_u, tricomi_u_kummer};

use crate::error::{Error, Result};

/// Truncation policy for the infinite-series evaluators.
///
/// A series stops once `|term| < rel_tol * |partial_sum| + abs_tol` holds for
/// three consecutive terms (hypergeometric terms are not monotone, so a
/// single small term is not proof of convergence), or errors out after
/// `max_terms`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { rel_tol: 1e-12, abs_tol: 1e-300, max_terms: 10_000 }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) || self.max_terms < 1 {
            return Err(Error::Domain(format!(
                "SeriesControl requires rel_tol > 0, abs_tol >= 0, max_terms >= 1 \
                 (got rel_tol={}, abs_tol={}, max_terms={})",
                self.rel_tol, self.abs_tol, self.max_terms
            )));
        }
        Ok(())
    }

    /// Relaxed budget used where a series is known to converge only
    /// polynomially near isolated points.
    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Self { max_terms, ..self }
    }
}

/// Running sum of signed terms supplied as `(ln|t|, sign)`.
///
/// The accumulator keeps the partial sum as `acc * exp(offset)` and rescales
/// whenever an incoming term dwarfs the current scale, so series whose terms
/// span hundreds of orders of magnitude accumulate without overflow. The
/// compensation term keeps plain summation error out of the picture; what
/// remains is genuine cancellation, which `ln_max_term` exposes so callers
/// can estimate how many digits survived.
#[derive(Debug, Clone)]
pub(crate) struct SignedLogSum {
    offset: f64,
    acc: f64,
    comp: f64,
    ln_max_term: f64,
}

impl SignedLogSum {
    pub fn new() -> Self {
        Self { offset: f64::NEG_INFINITY, acc: 0.0, comp: 0.0, ln_max_term: f64::NEG_INFINITY }
    }

    pub fn add(&mut self, ln_mag: f64, sign: f64) {
        if sign == 0.0 || ln_mag == f64::NEG_INFINITY {
            return;
        }
        self.ln_max_term = self.ln_max_term.max(ln_mag);
        if self.offset == f64::NEG_INFINITY {
            self.offset = ln_mag;
        } else if ln_mag > self.offset + 250.0 {
            let shift = (self.offset - ln_mag).exp();
            self.acc *= shift;
            self.comp *= shift;
            self.offset = ln_mag;
        }
        let term = sign * (ln_mag - self.offset).exp();
        // Kahan step
        let y = term - self.comp;
        let t = self.acc + y;
        self.comp = (t - self.acc) - y;
        self.acc = t;
    }

    /// `(ln|sum|, sign)`; sign is 0 when the sum is exactly zero.
    pub fn ln_sign(&self) -> (f64, f64) {
        if self.acc == 0.0 {
            (f64::NEG_INFINITY, 0.0)
        } else {
            (self.offset + self.acc.abs().ln(), self.acc.signum())
        }
    }

    pub fn value(&self) -> f64 {
        let (ln, sign) = self.ln_sign();
        sign * ln.exp()
    }

    /// ln of the current |partial sum| (−∞ if zero so far).
    pub fn ln_abs(&self) -> f64 {
        self.ln_sign().0
    }

    /// Upper bound on the relative error caused by cancellation: the largest
    /// term seen so far carries ~1 ulp of absolute error.
    pub fn cancellation_ulps(&self) -> f64 {
        (self.ln_max_term - self.ln_abs()).exp() * f64::EPSILON
    }

    /// True if `|term| < rel_tol*|sum| + abs_tol` for a term of log-magnitude
    /// `ln_mag` against the current partial sum.
    pub fn term_is_negligible(&self, ln_mag: f64, control: &SeriesControl) -> bool {
        let ln_sum = self.ln_abs();
        let rel_gate = if ln_sum == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            control.rel_tol.ln() + ln_sum
        };
        let abs_gate = if control.abs_tol > 0.0 { control.abs_tol.ln() } else { f64::NEG_INFINITY };
        ln_mag < rel_gate || ln_mag < abs_gate
    }
}
