//! Auto-correlation profiles, the delta-correlation test, and quality
//! metrics.
//!
//! The aperiodic auto-correlation zero-pads outside the sequence, so shift
//! N-1 sees a single product: the first element times the last. A sequence
//! is canonical when every other off-peak shift vanishes.

use crate::error::HuffmanError;
use crate::exec;
use crate::families::HuffmanSequence;
use crate::fibpoly::fib_poly_prefix;
use crate::numeric::{Numeric, Scale};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileMode {
    Aperiodic,
    Periodic,
}

impl ProfileMode {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileMode::Aperiodic => "aperiodic",
            ProfileMode::Periodic => "periodic",
        }
    }
}

/// Auto-correlation values indexed by shift.
///
/// Aperiodic profiles hold shifts -(N-1)..=N-1 in order (length 2N-1);
/// periodic profiles hold shifts 0..N-1 (length N).
#[derive(Clone, Debug)]
pub struct CorrelationProfile {
    pub mode: ProfileMode,
    /// Length of the source sequence.
    pub n: usize,
    pub values: Vec<Numeric>,
}

impl CorrelationProfile {
    /// Shift values in the same order as `values`.
    pub fn shifts(&self) -> Vec<i64> {
        match self.mode {
            ProfileMode::Aperiodic => {
                let n = self.n as i64;
                (-(n - 1)..=n - 1).collect()
            }
            ProfileMode::Periodic => (0..self.n as i64).collect(),
        }
    }

    /// Value at a given shift, if in range.
    pub fn value(&self, d: i64) -> Option<&Numeric> {
        let n = self.n as i64;
        let idx = match self.mode {
            ProfileMode::Aperiodic => {
                if d.abs() >= n {
                    return None;
                }
                (d + n - 1) as usize
            }
            ProfileMode::Periodic => {
                if d < 0 || d >= n {
                    return None;
                }
                d as usize
            }
        };
        self.values.get(idx)
    }

    /// Zero-shift peak.
    pub fn peak(&self) -> &Numeric {
        self.value(0).expect("profile always covers shift 0")
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Numeric::is_exact)
    }
}

fn aperiodic_value(elements: &[Numeric], d: i64) -> Numeric {
    let n = elements.len() as i64;
    let lo = 0.max(-d);
    let hi = n.min(n - d);
    (lo..hi)
        .map(|i| &elements[i as usize] * &elements[(i + d) as usize])
        .sum()
}

/// Zero-padded auto-correlation over shifts -(N-1)..=N-1; each shift is
/// evaluated independently so the d vs. -d symmetry is a genuine property
/// of the result, not of the construction.
pub fn acorr_aperiodic(seq: &HuffmanSequence) -> CorrelationProfile {
    let n = seq.len();
    let values = exec::map_range(2 * n - 1, |idx| {
        aperiodic_value(&seq.elements, idx as i64 - (n as i64 - 1))
    });
    CorrelationProfile {
        mode: ProfileMode::Aperiodic,
        n,
        values,
    }
}

/// Cyclic auto-correlation over shifts 0..N-1.
pub fn acorr_periodic(seq: &HuffmanSequence) -> CorrelationProfile {
    let n = seq.len();
    let values = exec::map_range(n, |d| {
        (0..n)
            .map(|i| &seq.elements[i] * &seq.elements[(i + d) % n])
            .sum()
    });
    CorrelationProfile {
        mode: ProfileMode::Periodic,
        n,
        values,
    }
}

/// Elementwise products of the sequence with its d-shifted copy over the
/// overlap window; their sum is the aperiodic auto-correlation at d.
pub fn shifted_product(seq: &HuffmanSequence, d: i64) -> Result<Vec<Numeric>> {
    let n = seq.len() as i64;
    if d.abs() >= n {
        return Err(HuffmanError::OutOfRangeShift {
            shift: d,
            length: seq.len(),
        });
    }
    let lo = 0.max(-d);
    let hi = n.min(n - d);
    Ok((lo..hi)
        .map(|i| &seq.elements[i as usize] * &seq.elements[(i + d) as usize])
        .collect())
}

/// Float tolerance used for canonical checks on inexact values.
pub const DEFAULT_CANONICAL_TOL: f64 = 1e-8;

/// Verdict on the delta-correlation condition.
#[derive(Clone, Debug)]
pub struct CanonicalReport {
    pub is_canonical: bool,
    pub peak: Numeric,
    /// Auto-correlation at shift N-1, which always equals the product of
    /// the first and last elements.
    pub end_value: Numeric,
    pub max_interior_abs: Numeric,
    pub tolerance_used: f64,
}

/// Judges an aperiodic profile: canonical iff every shift with
/// 0 < |d| < N-1 has magnitude at most `rel_tol` times the peak and the
/// two extreme shifts agree. With `rel_tol = 0` interior values must be
/// literal zeros (exact zero on the exact path).
pub fn is_canonical(profile: &CorrelationProfile, rel_tol: f64) -> Result<CanonicalReport> {
    if profile.mode != ProfileMode::Aperiodic {
        return Err(HuffmanError::WrongMode {
            expected: "aperiodic",
            got: profile.mode.name(),
        });
    }
    let n = profile.n;
    let peak = profile.peak().clone();
    if n == 1 {
        return Ok(CanonicalReport {
            is_canonical: true,
            peak,
            end_value: Numeric::zero(),
            max_interior_abs: Numeric::zero(),
            tolerance_used: rel_tol,
        });
    }

    let center = n - 1;
    let mut max_interior_abs = Numeric::zero();
    for (idx, v) in profile.values.iter().enumerate() {
        let d = idx as i64 - center as i64;
        if d != 0 && d.unsigned_abs() < (n - 1) as u64 {
            let a = v.abs();
            if a > max_interior_abs {
                max_interior_abs = a;
            }
        }
    }
    let end_lo = &profile.values[0];
    let end_hi = &profile.values[2 * n - 2];

    let is_canonical = if rel_tol == 0.0 {
        max_interior_abs.is_zero() && end_lo == end_hi
    } else {
        let thresh = rel_tol * peak.approx().abs();
        max_interior_abs.approx() <= thresh && (end_lo.approx() - end_hi.approx()).abs() <= thresh
    };

    Ok(CanonicalReport {
        is_canonical,
        peak,
        end_value: end_hi.clone(),
        max_interior_abs,
        tolerance_used: rel_tol,
    })
}

/// Closed-form auto-correlation peak of the Fibonacci-polynomial family:
/// `2 + s^2 F_{M+1}^2 + 4 F_M F_{M+2}` with M = (N-3)/2.
pub fn peak_closed_form(n: usize, s: &Scale) -> Result<Numeric> {
    let m = crate::families::fib_half_length(n, "fib")?;
    let f = fib_poly_prefix(m + 2, s);
    let sv = s.to_numeric();
    let two = Numeric::from_i64(2);
    let four = Numeric::from_i64(4);
    Ok(&(&two + &(&sv.powi(2) * &f[m + 1].powi(2))) + &(&four * &(&f[m] * &f[m + 2])))
}

/// Aggregate sequence quality. A pure delta has no off-peak values at all;
/// its merit factor and peak ratio are reported as `None`, a distinguished
/// infinity marker rather than an error.
#[derive(Clone, Debug)]
pub struct QualityMetrics {
    /// Peak squared over the sum of squared off-peak values.
    pub merit_factor: Option<Numeric>,
    /// Peak over the largest off-peak magnitude.
    pub peak_ratio: Option<Numeric>,
    /// Spread of DFT magnitudes: (max - min) / mean.
    pub spectral_flatness: f64,
}

pub fn metrics(seq: &HuffmanSequence) -> Result<QualityMetrics> {
    if seq.elements.iter().all(Numeric::is_zero) {
        return Err(HuffmanError::DegenerateInput);
    }
    let profile = acorr_aperiodic(seq);
    let center = seq.len() - 1;
    let peak = profile.peak().clone();

    let mut off_sum_sq = Numeric::zero();
    let mut max_off_abs = Numeric::zero();
    for (idx, v) in profile.values.iter().enumerate() {
        if idx == center {
            continue;
        }
        off_sum_sq = &off_sum_sq + &v.powi(2);
        let a = v.abs();
        if a > max_off_abs {
            max_off_abs = a;
        }
    }

    let merit_factor = if off_sum_sq.is_zero() {
        None
    } else {
        Some(&peak.powi(2) / &off_sum_sq)
    };
    let peak_ratio = if max_off_abs.is_zero() {
        None
    } else {
        Some(&peak / &max_off_abs)
    };

    Ok(QualityMetrics {
        merit_factor,
        peak_ratio,
        spectral_flatness: crate::spectral::flatness(seq)?,
    })
}
