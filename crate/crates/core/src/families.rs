//! Sequence family constructors and the stored fixture arrays.
//!
//! Every constructor returns a [`HuffmanSequence`] whose zero-padded
//! aperiodic auto-correlation is a delta apart from the two end shifts,
//! where it equals the product of the first and last elements. The
//! Fibonacci-polynomial, integer and power-of-three families are built
//! directly from closed forms; the tangent family is synthesized by
//! inverting its closed-form spectrum.

use crate::error::HuffmanError;
use crate::fibpoly::fib_poly_prefix;
use crate::numeric::{Numeric, Scale};
use crate::Result;

/// Construction family of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Skew-symmetric Fibonacci-polynomial construction, odd length 4n+3.
    FibHuffman,
    /// The same sequence cyclically rotated so the middle element leads.
    FibHuffmanCyclic,
    /// Synthesized by inverting the tangent-form spectrum.
    Tangent,
    /// Powers-of-three construction, ends 3 and -1/3.
    Three,
    /// All-integer construction [s, (s^2-1)s^n, ..., -s^(N-2)].
    Integer,
    /// Stored verbatim (paper fixtures and external input).
    Fixture,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::FibHuffman => "fib",
            Family::FibHuffmanCyclic => "fib-cyclic",
            Family::Tangent => "tangent",
            Family::Three => "three",
            Family::Integer => "int",
            Family::Fixture => "fixture",
        }
    }
}

/// A finite real sequence with its construction provenance.
#[derive(Clone, Debug)]
pub struct HuffmanSequence {
    pub family: Family,
    /// Absent for the Three family and fixtures.
    pub scale: Option<Scale>,
    pub elements: Vec<Numeric>,
    /// Cyclic steps applied during construction, or the inverse-transform
    /// start index chosen during synthesis. Zero for direct constructions.
    pub rotation_offset: usize,
    /// Fixture name or external label.
    pub label: Option<String>,
}

impl HuffmanSequence {
    /// Wraps externally supplied elements (input files, test vectors).
    pub fn from_raw(elements: Vec<Numeric>, label: Option<String>) -> Self {
        HuffmanSequence {
            family: Family::Fixture,
            scale: None,
            elements,
            rotation_offset: 0,
            label,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.elements.iter().all(Numeric::is_exact)
    }

    pub fn approx_elements(&self) -> Vec<f64> {
        self.elements.iter().map(Numeric::approx).collect()
    }
}

/// Shared length gate for the Fibonacci-polynomial family: N = 4n+3 with
/// n >= 1 keeps the half-length M = (N-3)/2 even, which the closed forms
/// require. Returns M.
pub(crate) fn fib_half_length(n: usize, family: &'static str) -> Result<usize> {
    if n < 7 || n % 4 != 3 {
        return Err(HuffmanError::InvalidLength {
            family,
            length: n,
            requirement: "N = 4n + 3 with n >= 1",
        });
    }
    Ok((n - 3) / 2)
}

/// Skew-symmetric Fibonacci-polynomial sequence
/// `[1, 2sF_1, ..., 2sF_M, sF_{M+1} - 2F_M, 2sF_{-M}, ..., 2sF_{-1}, -1]`.
pub fn build_fib(n: usize, s: &Scale) -> Result<HuffmanSequence> {
    let m = fib_half_length(n, "fib")?;
    let f = fib_poly_prefix(m + 1, s);
    let sv = s.to_numeric();
    let two = Numeric::from_i64(2);
    let two_s = &two * &sv;

    let mut elements = Vec::with_capacity(n);
    elements.push(Numeric::one());
    for j in 1..=m {
        elements.push(&two_s * &f[j]);
    }
    elements.push(&(&sv * &f[m + 1]) - &(&two * &f[m]));
    for j in (1..=m).rev() {
        // 2s F_{-j} = (-1)^{j+1} 2s F_j
        let v = &two_s * &f[j];
        elements.push(if j % 2 == 0 { -v } else { v });
    }
    elements.push(-Numeric::one());

    Ok(HuffmanSequence {
        family: Family::FibHuffman,
        scale: Some(s.clone()),
        elements,
        rotation_offset: 0,
        label: None,
    })
}

/// [`build_fib`] rotated so the middle element leads; the rotation leaves
/// the periodic auto-correlation and all spectral magnitudes unchanged.
pub fn build_fib_cyclic(n: usize, s: &Scale) -> Result<HuffmanSequence> {
    let mut seq = build_fib(n, s)?;
    let offset = (n - 1) / 2;
    seq.elements.rotate_left(offset);
    seq.family = Family::FibHuffmanCyclic;
    seq.rotation_offset = offset;
    Ok(seq)
}

/// All-integer family `[s, (s^2-1)s^0, ..., (s^2-1)s^{N-3}, -s^{N-2}]`,
/// any length N >= 3, auto-correlation peak 1 + s^{2N-2}.
pub fn build_int(n: usize, s: &Scale) -> Result<HuffmanSequence> {
    if n < 3 {
        return Err(HuffmanError::InvalidLength {
            family: "int",
            length: n,
            requirement: "N >= 3",
        });
    }
    if s.approx() == 0.0 {
        return Err(HuffmanError::DegenerateScale {
            family: "int",
            detail: "s = 0 collapses every interior element and the last element",
        });
    }
    let sv = s.to_numeric();
    let factor = &(&sv * &sv) - &Numeric::one();

    let mut elements = Vec::with_capacity(n);
    elements.push(sv.clone());
    let mut power = Numeric::one();
    for _ in 0..n - 2 {
        elements.push(&factor * &power);
        power = &power * &sv;
    }
    elements.push(-power);

    Ok(HuffmanSequence {
        family: Family::Integer,
        scale: Some(s.clone()),
        elements,
        rotation_offset: 0,
        label: None,
    })
}

/// Powers-of-three family `[3, 8*3^{j-1}, ..., x, ..., 8*3^{-k-1}, -1/3]`
/// for odd N >= 5, with j counted from the left, k from the right, and
/// middle term x = 3^{(3-N)/2} - 3^{(N-3)/2}, the unique value that makes
/// the shift-2 auto-correlation vanish.
pub fn build_three(n: usize) -> Result<HuffmanSequence> {
    if n < 5 || n % 2 == 0 {
        return Err(HuffmanError::InvalidLength {
            family: "three",
            length: n,
            requirement: "odd N >= 5",
        });
    }
    let three = Numeric::from_i64(3);
    let eight = Numeric::from_i64(8);
    let half = (n - 1) / 2;
    let mid_exp = (n as i32 - 3) / 2;

    let mut elements = Vec::with_capacity(n);
    elements.push(three.clone());
    for p in 2..=half {
        elements.push(&eight * &three.powi(p as i32 - 2));
    }
    elements.push(&three.powi(-mid_exp) - &three.powi(mid_exp));
    for p in half + 2..n {
        let k = (n - p) as i32;
        elements.push(&eight * &three.powi(-k - 1));
    }
    elements.push(Numeric::from_ratio(-1, 3));

    Ok(HuffmanSequence {
        family: Family::Three,
        scale: None,
        elements,
        rotation_offset: 0,
        label: None,
    })
}

/// Length-(L+1)/2 sequence synthesized from the tangent-form spectrum of
/// length L = 4n+1: inverse transform, removal of the vanished zeros in
/// every second element, and rotation to the delta-correlated form. Float
/// path only.
pub fn build_tangent(l: usize, s: &Scale) -> Result<HuffmanSequence> {
    let spectrum = crate::spectral::tangent_spectrum_full(l, s.approx())?;
    let mut seq = crate::spectral::synthesize(&spectrum)?;
    seq.family = Family::Tangent;
    seq.scale = Some(Scale::from_f64(s.approx()));
    seq.label = None;
    Ok(seq)
}

fn fixture_from_i64(label: &str, values: &[i64]) -> HuffmanSequence {
    HuffmanSequence {
        family: Family::Fixture,
        scale: None,
        elements: values.iter().map(|&v| Numeric::from_i64(v)).collect(),
        rotation_offset: 0,
        label: Some(label.to_string()),
    }
}

/// The three stored non-Fibonacci canonical sequences, verbatim.
pub fn fixtures() -> Vec<HuffmanSequence> {
    let h11 = fixture_from_i64("H_non_11", &[1, 1, 3, 4, 2, 6, -7, -1, 2, 1, -1]);
    let h13 = fixture_from_i64(
        "H_non_13",
        &[1, 4, 8, 14, 24, 20, -14, -20, 24, -14, 8, -4, 1],
    );

    // Almost-integer length-9 array; irrational elements force the float path.
    let r = 10002f64.sqrt();
    let h9 = HuffmanSequence {
        family: Family::Fixture,
        scale: None,
        elements: [
            1.0,
            200.0,
            100.0 * (200.0 - 2.0 * r),
            100.0 * (-2.0 - 400.0 * r),
            -4_000_000.0 * r,
            100.0 * (-2.0 + 400.0 * r),
            100.0 * (-200.0 - 2.0 * r),
            200.0,
            -1.0,
        ]
        .iter()
        .map(|&v| Numeric::from_f64(v))
        .collect(),
        rotation_offset: 0,
        label: Some("H_non_9".to_string()),
    };

    vec![h11, h13, h9]
}

/// Fixture lookup by label.
pub fn fixture(label: &str) -> Option<HuffmanSequence> {
    fixtures()
        .into_iter()
        .find(|f| f.label.as_deref() == Some(label))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Vec<Numeric> {
        values.iter().map(|&v| Numeric::from_i64(v)).collect()
    }

    #[test]
    fn fib_small_cases() {
        let h7 = build_fib(7, &Scale::from_int(1)).unwrap();
        assert_eq!(h7.elements, ints(&[1, 2, 2, 0, -2, 2, -1]));

        let h15 = build_fib(15, &Scale::from_int(1)).unwrap();
        assert_eq!(
            h15.elements,
            ints(&[1, 2, 2, 4, 6, 10, 16, -3, -16, 10, -6, 4, -2, 2, -1])
        );

        let h15_pell = build_fib(15, &Scale::from_int(2)).unwrap();
        assert_eq!(
            h15_pell.elements,
            ints(&[1, 4, 8, 20, 48, 116, 280, 198, -280, 116, -48, 20, -8, 4, -1])
        );

        let h11 = build_fib(11, &Scale::from_int(1)).unwrap();
        assert_eq!(h11.elements, ints(&[1, 2, 2, 4, 6, -1, -6, 4, -2, 2, -1]));
    }

    #[test]
    fn fib_rational_scale_closed_form() {
        // H^11(m) = [1, 2m, 2m^2, 2m(1+m^2), 2m^2(2+m^2), -3m+m^3+m^5,
        //            -2m^2(2+m^2), 2m(1+m^2), -2m^2, 2m, -1]
        for (p, q) in [(1i64, 1i64), (2, 1), (1, 2), (3, 5)] {
            let s = Scale::from_ratio(p, q);
            let m = s.to_numeric();
            let m2 = m.powi(2);
            let expect = vec![
                Numeric::one(),
                &Numeric::from_i64(2) * &m,
                &Numeric::from_i64(2) * &m2,
                &(&Numeric::from_i64(2) * &m) * &(&Numeric::one() + &m2),
                &(&Numeric::from_i64(2) * &m2) * &(&Numeric::from_i64(2) + &m2),
                &(&(-&(&Numeric::from_i64(3) * &m)) + &m.powi(3)) + &m.powi(5),
                -&(&(&Numeric::from_i64(2) * &m2) * &(&Numeric::from_i64(2) + &m2)),
                &(&Numeric::from_i64(2) * &m) * &(&Numeric::one() + &m2),
                -&(&Numeric::from_i64(2) * &m2),
                &Numeric::from_i64(2) * &m,
                -Numeric::one(),
            ];
            let built = build_fib(11, &s).unwrap();
            assert_eq!(built.elements, expect, "s = {}/{}", p, q);
        }
    }

    #[test]
    fn fib_golden_scale_matches_linear_forms() {
        // H^11(phi) = [1, 2phi, 2phi+2, 6phi+2, 10phi+8, 4phi+4,
        //              -10phi-8, 6phi+2, -2phi-2, 2phi, -1]
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let expect = [
            1.0,
            2.0 * phi,
            2.0 * phi + 2.0,
            6.0 * phi + 2.0,
            10.0 * phi + 8.0,
            2.0 * (2.0 * phi + 2.0),
            -10.0 * phi - 8.0,
            6.0 * phi + 2.0,
            -2.0 * phi - 2.0,
            2.0 * phi,
            -1.0,
        ];
        let built = build_fib(11, &Scale::from_f64(phi)).unwrap();
        for (got, want) in built.approx_elements().iter().zip(&expect) {
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                "{} vs {}",
                got,
                want
            );
        }
    }

    #[test]
    fn fib_rejects_bad_lengths() {
        for n in [0usize, 3, 5, 6, 9, 13] {
            assert!(build_fib(n, &Scale::from_int(1)).is_err(), "N = {}", n);
        }
    }

    #[test]
    fn fib_skew_symmetry_holds_off_middle() {
        let seq = build_fib(19, &Scale::from_ratio(5, 3)).unwrap();
        let n = seq.len();
        for i in 1..=n {
            if i == (n + 1) / 2 {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let want = &Numeric::from_i64(sign) * &seq.elements[i - 1];
            assert_eq!(seq.elements[n - i], want, "i = {}", i);
        }
    }

    #[test]
    fn cyclic_rotation_puts_middle_first() {
        let seq = build_fib_cyclic(7, &Scale::from_int(1)).unwrap();
        assert_eq!(seq.elements, ints(&[0, -2, 2, -1, 1, 2, 2]));
        assert_eq!(seq.rotation_offset, 3);

        let plain = build_fib(15, &Scale::from_ratio(1, 3)).unwrap();
        let cyclic = build_fib_cyclic(15, &Scale::from_ratio(1, 3)).unwrap();
        let mut sorted_a: Vec<String> = plain.elements.iter().map(|e| e.to_string()).collect();
        let mut sorted_b: Vec<String> = cyclic.elements.iter().map(|e| e.to_string()).collect();
        sorted_a.sort();
        sorted_b.sort();
        assert_eq!(sorted_a, sorted_b);
        assert_eq!(cyclic.elements[0], plain.elements[7]);
    }

    #[test]
    fn int_family_layout() {
        assert_eq!(
            build_int(3, &Scale::from_int(2)).unwrap().elements,
            ints(&[2, 3, -2])
        );
        assert_eq!(
            build_int(4, &Scale::from_int(3)).unwrap().elements,
            ints(&[3, 8, 24, -9])
        );
        assert_eq!(
            build_int(4, &Scale::from_int(1)).unwrap().elements,
            ints(&[1, 0, 0, -1])
        );
        assert!(build_int(2, &Scale::from_int(2)).is_err());
        assert!(build_int(5, &Scale::from_int(0)).is_err());
    }

    #[test]
    fn three_family_layout() {
        let h5 = build_three(5).unwrap();
        assert_eq!(
            h5.elements,
            vec![
                Numeric::from_i64(3),
                Numeric::from_i64(8),
                Numeric::from_ratio(-8, 3),
                Numeric::from_ratio(8, 9),
                Numeric::from_ratio(-1, 3),
            ]
        );

        let h7 = build_three(7).unwrap();
        assert_eq!(
            h7.elements,
            vec![
                Numeric::from_i64(3),
                Numeric::from_i64(8),
                Numeric::from_i64(24),
                Numeric::from_ratio(-80, 9),
                Numeric::from_ratio(8, 27),
                Numeric::from_ratio(8, 9),
                Numeric::from_ratio(-1, 3),
            ]
        );

        assert!(build_three(4).is_err());
        assert!(build_three(3).is_err());

        // First times last is -1 for every member.
        for n in (5..=15).step_by(2) {
            let seq = build_three(n).unwrap();
            let prod = &seq.elements[0] * &seq.elements[n - 1];
            assert_eq!(prod, -Numeric::one(), "N = {}", n);
        }
    }

    #[test]
    fn fixtures_are_stored_verbatim() {
        let all = fixtures();
        assert_eq!(all.len(), 3);

        let h11 = fixture("H_non_11").unwrap();
        assert_eq!(h11.elements, ints(&[1, 1, 3, 4, 2, 6, -7, -1, 2, 1, -1]));

        let h13 = fixture("H_non_13").unwrap();
        assert_eq!(
            h13.elements,
            ints(&[1, 4, 8, 14, 24, 20, -14, -20, 24, -14, 8, -4, 1])
        );

        let h9 = fixture("H_non_9").unwrap();
        assert_eq!(h9.len(), 9);
        assert_eq!(h9.elements[0].approx(), 1.0);
        assert_eq!(h9.elements[8].approx(), -1.0);
        assert!(!h9.is_exact());

        assert!(fixture("H_non_42").is_none());
    }
}
