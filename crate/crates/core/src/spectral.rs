//! Discrete Fourier analysis and spectrum-to-sequence synthesis.
//!
//! The forward transform is `g_q = sum_n f_n exp(-2 pi i n q / L)` and the
//! inverse carries the 1/L factor; no symmetric scaling. All spectra are
//! float-valued: the roots of unity are irrational, so exact arithmetic is
//! reserved for correlations.

use std::f64::consts::PI;

use num::complex::Complex64;

use crate::correlate::{acorr_aperiodic, is_canonical, DEFAULT_CANONICAL_TOL};
use crate::error::HuffmanError;
use crate::exec;
use crate::families::{fib_half_length, Family, HuffmanSequence};
use crate::fibpoly::fib_poly_prefix;
use crate::numeric::{Numeric, Scale};
use crate::Result;

/// Complex DFT bins of a sequence.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub bins: Vec<Complex64>,
    pub source_label: String,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.bins.iter().map(|b| b.norm()).collect()
    }

    /// Largest relative asymmetry between bin q and the conjugate of bin
    /// L-q; near zero exactly when the inverse transform is real.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let l = self.len();
        let max_mag = self.magnitudes().into_iter().fold(0.0f64, f64::max);
        if max_mag == 0.0 {
            return 0.0;
        }
        (0..l)
            .map(|q| (self.bins[(l - q) % l] - self.bins[q].conj()).norm() / max_mag)
            .fold(0.0, f64::max)
    }
}

fn dft_of(values: &[f64], source_label: &str) -> Spectrum {
    let l = values.len();
    let bins = exec::map_range(l, |q| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, &v) in values.iter().enumerate() {
            // n q mod L keeps the phase argument small at any length.
            let angle = -2.0 * PI * ((n * q) % l) as f64 / l as f64;
            acc += v * Complex64::new(angle.cos(), angle.sin());
        }
        acc
    });
    Spectrum {
        bins,
        source_label: source_label.to_string(),
    }
}

/// Reference forward transform of a sequence, direct evaluation.
pub fn dft(seq: &HuffmanSequence) -> Spectrum {
    dft_of(&seq.approx_elements(), seq.family.name())
}

/// Inverse transform with the 1/L factor.
pub fn idft(spec: &Spectrum) -> Vec<Complex64> {
    let l = spec.len();
    exec::map_range(l, |n| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, b) in spec.bins.iter().enumerate() {
            let angle = 2.0 * PI * ((n * q) % l) as f64 / l as f64;
            acc += b * Complex64::new(angle.cos(), angle.sin());
        }
        acc / l as f64
    })
}

/// Element sum of the length-N Fibonacci-polynomial sequence,
/// `F_{M+2}(s) + F_M(s)`, which is also its zero-frequency DFT bin.
fn element_sum(n: usize, s: &Scale) -> Result<Numeric> {
    let m = fib_half_length(n, "fib")?;
    let f = fib_poly_prefix(m + 2, s);
    Ok(&f[m + 2] + &f[m])
}

/// Closed-form squared DFT magnitude of the Fibonacci-polynomial family:
/// `[F_{M+2} + F_M]^2 + 4 sin^2(pi q / N)`.
pub fn power_spectrum_closed(n: usize, s: &Scale, q: usize) -> Result<f64> {
    let sum = element_sum(n, s)?.approx();
    assert!(q < n, "bin {} out of range for length {}", q, n);
    let sq = (PI * q as f64 / n as f64).sin();
    Ok(sum * sum + 4.0 * sq * sq)
}

/// Closed-form DFT bin of the rotated sequence: the unimodular prefactor
/// `-(2i sin(2 pi q/N) + s) / (2i sin(2 pi q/N) - s)` times the bracket
/// `F_M + F_{M+2} + 2i (-1)^q sin(pi q/N)`. The prefactor is 0/0 at
/// q = 0 when s = 0, so that bin returns the element sum directly.
pub fn dft_closed_cyclic(n: usize, s: &Scale, q: usize) -> Result<Complex64> {
    let sum = element_sum(n, s)?.approx();
    assert!(q < n, "bin {} out of range for length {}", q, n);
    if q == 0 {
        return Ok(Complex64::new(sum, 0.0));
    }
    let sf = s.approx();
    let sigma = (2.0 * PI * q as f64 / n as f64).sin();
    let numer = Complex64::new(sf, 2.0 * sigma);
    let denom = Complex64::new(-sf, 2.0 * sigma);
    let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
    let bracket = Complex64::new(sum, 2.0 * sign * (PI * q as f64 / n as f64).sin());
    Ok(-numer / denom * bracket)
}

fn tangent_gate(l: usize, s: f64) -> Result<i32> {
    if l < 5 || l % 4 != 1 {
        return Err(HuffmanError::InvalidLength {
            family: "tangent",
            length: l,
            requirement: "L = 4n + 1 with n >= 1",
        });
    }
    if s.abs() == 2.0 {
        return Err(HuffmanError::PoleSingularity { scale: s });
    }
    Ok((l as i32 - 1) / 4)
}

fn tangent_bin(l: usize, s: f64, n_exp: i32, q: usize) -> Complex64 {
    let base = (2.0 + s) / (2.0 - s);
    let p = base.powi(n_exp);
    let growth = p - 1.0 / p;
    if q == 0 {
        // tan(0) = 0 makes the prefactor -(+s)/(-s) = +1.
        return Complex64::new(growth, 0.0);
    }
    let t = (2.0 * PI * q as f64 / l as f64).tan();
    let numer = Complex64::new(s, 2.0 * t);
    let denom = Complex64::new(-s, 2.0 * t);
    let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
    let bracket = Complex64::new(growth, 2.0 * sign * (PI * q as f64 / l as f64).sin());
    -numer / denom * bracket
}

/// One bin of the tangent-form spectrum
/// `-(2i tan(2 pi q/L) + s) / (2i tan(2 pi q/L) - s)` times
/// `[((2+s)/(2-s))^{(L-1)/4} - ((2+s)/(2-s))^{-(L-1)/4} + 2i (-1)^q sin(pi q/L)]`.
pub fn tangent_spectrum(l: usize, s: f64, q: usize) -> Result<Complex64> {
    let n_exp = tangent_gate(l, s)?;
    assert!(q < l, "bin {} out of range for length {}", q, l);
    Ok(tangent_bin(l, s, n_exp, q))
}

/// All L bins of the tangent-form spectrum.
pub fn tangent_spectrum_full(l: usize, s: f64) -> Result<Spectrum> {
    let n_exp = tangent_gate(l, s)?;
    let bins = exec::map_range(l, |q| tangent_bin(l, s, n_exp, q));
    Ok(Spectrum {
        bins,
        source_label: "tangent".to_string(),
    })
}

/// Partial sums of the series expansion of the DFT magnitude
/// `sqrt(S_N^2 + 4 sin^2(pi q/N))` in powers of 1/|S_N|:
/// `|S_N| + (1 - c_q)/|S_N| - 2 s_q^4/|S_N|^3 + 4 s_q^6/|S_N|^5 - 10 s_q^8/|S_N|^7`
/// with `s_q = sin(pi q/N)` and `c_q = cos(2 pi q/N)`.
pub fn magnitude_series_approx(n: usize, s: &Scale, q: usize, order: usize) -> Result<f64> {
    let sum = element_sum(n, s)?.approx();
    assert!(q < n, "bin {} out of range for length {}", q, n);
    assert!((1..=5).contains(&order), "series order must be 1..=5");
    if sum == 0.0 {
        return Err(HuffmanError::SeriesUndefined);
    }
    let a = sum.abs();
    let sq = (PI * q as f64 / n as f64).sin();
    let cq = (2.0 * PI * q as f64 / n as f64).cos();
    let terms = [
        a,
        (1.0 - cq) / a,
        -2.0 * sq.powi(4) / a.powi(3),
        4.0 * sq.powi(6) / a.powi(5),
        -10.0 * sq.powi(8) / a.powi(7),
    ];
    Ok(terms[..order].iter().sum())
}

/// Spread of the DFT magnitudes: (max - min) / mean.
///
/// Evaluated through the auto-correlation form
/// |F_q|^2 = A_0 (1 + y_q) with y_q = 2 sum_{d>=1} A_d cos(2 pi d q/L) / A_0,
/// so the common factor sqrt(A_0) cancels out of the ratio. The spread of a
/// delta-correlated sequence sits orders below the peak's own round-off;
/// forming the magnitudes directly would bury it in noise.
pub fn flatness(seq: &HuffmanSequence) -> Result<f64> {
    if seq.elements.iter().all(Numeric::is_zero) {
        return Err(HuffmanError::DegenerateInput);
    }
    let profile = crate::correlate::acorr_aperiodic(seq);
    let l = seq.len();
    let a0 = profile.peak().approx();
    let off: Vec<f64> = (1..l)
        .map(|d| profile.value(d as i64).expect("shift in range").approx())
        .collect();
    // g_q = sqrt(1 + y_q) - 1, in a form that keeps full precision when y
    // is far below 1; magnitudes that round off to negative clamp to zero.
    let g = exec::map_range(l, |q| {
        let mut c = 0.0;
        for (d, a) in off.iter().enumerate() {
            if *a != 0.0 {
                let angle = 2.0 * PI * (((d + 1) * q) % l) as f64 / l as f64;
                c += 2.0 * a * angle.cos();
            }
        }
        let y = c / a0;
        (y / (1.0 + (1.0 + y).max(0.0).sqrt())).max(-1.0)
    });
    let max = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = g.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = g.iter().sum::<f64>() / l as f64;
    Ok((max - min) / (1.0 + mean))
}

/// Upper bound `2 / [F_{M+2}(s) + F_M(s)]^2` on the flatness of the
/// length-N Fibonacci-polynomial sequence.
pub fn flatness_bound(n: usize, s: &Scale) -> Result<f64> {
    let sum = element_sum(n, s)?.approx();
    if sum == 0.0 {
        return Err(HuffmanError::BoundUndefined);
    }
    Ok(2.0 / (sum * sum))
}

/// Relative threshold below which an interleaved class counts as vanished.
/// The true zeros of the tangent-family inversion land at round-off level,
/// six orders below this.
const PARITY_STRIP_TOL: f64 = 1e-6;

/// Surviving entries after removing one vanished interleaved class, with
/// the start index and stride locating them in the inverse transform.
struct StripCandidate {
    start: usize,
    stride: usize,
    kept: Vec<f64>,
}

/// Lexicographically smallest rotation of a float vector, as bit patterns.
/// Candidates that are rotations of one another synthesize identically, so
/// this serves as their dedup key.
fn rotation_class_key(v: &[f64]) -> Vec<u64> {
    let bits: Vec<u64> = v.iter().map(|x| x.to_bits()).collect();
    let mut best = bits.clone();
    for r in 1..bits.len() {
        let mut cand = bits.clone();
        cand.rotate_left(r);
        if cand < best {
            best = cand;
        }
    }
    best
}

/// Inverts a spectrum into a delta-correlated sequence.
///
/// Pipeline: inverse transform; removal of the vanished zeros in every
/// second element (the zero class aligns with an index parity only up to a
/// cyclic shift, so all alignments are searched; a spectrum of an
/// unstripped sequence has no vanished class and is kept whole); rotation
/// to the delta-correlated form with the smallest interior residual,
/// sign-normalized to a positive first element. Distinct forms within a
/// factor ten of each other's residual are a genuine degeneracy and are
/// rejected. `rotation_offset` records the inverse-transform index at
/// which the returned sequence starts.
pub fn synthesize(spec: &Spectrum) -> Result<HuffmanSequence> {
    if spec.is_empty() {
        return Err(HuffmanError::SynthesisFailure {
            detail: "empty spectrum".to_string(),
        });
    }
    let asym = spec.conjugate_asymmetry();
    if asym > 1e-6 {
        return Err(HuffmanError::SynthesisFailure {
            detail: format!(
                "spectrum is not conjugate-symmetric (asymmetry {:.3e})",
                asym
            ),
        });
    }

    let time = idft(spec);
    let real: Vec<f64> = time.iter().map(|z| z.re).collect();
    let max_abs = real.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs == 0.0 {
        return Err(HuffmanError::SynthesisFailure {
            detail: "spectrum inverts to the zero sequence".to_string(),
        });
    }
    let l = real.len();
    let near_zero = |v: f64| v.abs() <= PARITY_STRIP_TOL * max_abs;

    let mut candidates: Vec<StripCandidate> = Vec::new();
    let mut seen: Vec<Vec<u64>> = Vec::new();
    if l >= 2 {
        for rot in 0..l {
            for vanish in [0usize, 1] {
                let gone = (0..l)
                    .filter(|i| i % 2 == vanish)
                    .all(|i| near_zero(real[(i + rot) % l]));
                if !gone {
                    continue;
                }
                let kept: Vec<f64> = (0..l)
                    .filter(|i| i % 2 != vanish)
                    .map(|i| real[(i + rot) % l])
                    .collect();
                let key = rotation_class_key(&kept);
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                candidates.push(StripCandidate {
                    start: (rot + 1 - vanish) % l,
                    stride: 2,
                    kept,
                });
            }
        }
    }
    if candidates.is_empty() {
        candidates.push(StripCandidate {
            start: 0,
            stride: 1,
            kept: real,
        });
    }

    struct Hit {
        elements: Vec<f64>,
        offset: usize,
        /// Largest interior correlation relative to the peak; the true
        /// alignment sits at round-off while impostors sit near the
        /// canonical tolerance, so the minimum decides ties.
        score: f64,
    }
    let mut hits: Vec<Hit> = Vec::new();
    for cand in &candidates {
        let m = cand.kept.len();
        let scores = exec::map_range(m, |r| {
            let mut rotated = cand.kept.clone();
            rotated.rotate_left(r);
            let seq = HuffmanSequence::from_raw(
                rotated.into_iter().map(Numeric::from_f64).collect(),
                None,
            );
            is_canonical(&acorr_aperiodic(&seq), DEFAULT_CANONICAL_TOL)
                .ok()
                .filter(|rep| rep.is_canonical)
                .map(|rep| {
                    rep.max_interior_abs.approx() / rep.peak.approx().abs().max(f64::MIN_POSITIVE)
                })
        });
        for (r, score) in scores.iter().enumerate() {
            let Some(score) = *score else { continue };
            let mut elements = cand.kept.clone();
            elements.rotate_left(r);
            if elements[0] < 0.0 {
                for v in &mut elements {
                    *v = -*v;
                }
            }
            let duplicate = hits.iter().any(|h| {
                h.elements.len() == elements.len()
                    && h.elements
                        .iter()
                        .zip(&elements)
                        .all(|(a, b)| (a - b).abs() <= 1e-9 * max_abs)
            });
            if !duplicate {
                hits.push(Hit {
                    elements,
                    offset: (cand.start + cand.stride * r) % l,
                    score,
                });
            }
        }
    }

    hits.sort_by(|a, b| a.score.partial_cmp(&b.score).expect("finite scores"));
    let hit = match hits.len() {
        0 => {
            return Err(HuffmanError::RotationFailure {
                detail: format!(
                    "no delta-correlated rotation among {} stripped alignments",
                    candidates.len()
                ),
            })
        }
        1 => hits.remove(0),
        _ if hits[1].score > 10.0 * hits[0].score => hits.remove(0),
        k => {
            return Err(HuffmanError::SynthesisFailure {
                detail: format!(
                    "{} distinct delta-correlated forms; spectrum is degenerate",
                    k
                ),
            })
        }
    };

    Ok(HuffmanSequence {
        family: Family::Fixture,
        scale: None,
        elements: hit.elements.into_iter().map(Numeric::from_f64).collect(),
        rotation_offset: hit.offset,
        label: Some("synthesized".to_string()),
    })
}
