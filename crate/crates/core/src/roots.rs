//! z-transform zeros and their circle geometry.
//!
//! A length-N sequence with nonzero ends defines the degree-(N-1)
//! polynomial `p(z) = sum_i e_{i+1} z^{N-1-i}`. For the canonical families
//! its roots land on a reciprocal pair of circles at equi-angled phases;
//! the golden-ratio radii of the Fibonacci family are the classic case.
//! Note the radii invert under the opposite coefficient orientation, so
//! the report also records the orientation-independent reciprocal pairing.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::HuffmanError;
use crate::exec;
use crate::families::HuffmanSequence;
use crate::Result;

/// p(z) and p'(z) by a joint Horner pass over sequence-ordered coefficients.
fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(coeffs[0], 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in &coeffs[1..] {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Scale against which a residual |p(z)| is judged: sum of |c_i| |z|^deg_i.
fn residual_scale(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    for &c in coeffs {
        scale = scale * r + c.abs();
    }
    scale.max(f64::MIN_POSITIVE)
}

fn newton_polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..12 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if p.norm() <= 1e-14 * residual_scale(coeffs, z) || dp.norm() == 0.0 {
            break;
        }
        z -= p / dp;
    }
    z
}

/// Roots of the z-transform polynomial: companion-matrix eigenvalues
/// refined by Newton steps, each validated against the residual bound
/// |p(root)| <= 1e-8 times the coefficient scale at the root.
pub fn z_zeros(seq: &HuffmanSequence) -> Result<Vec<Complex64>> {
    let coeffs = seq.approx_elements();
    let n = coeffs.len();
    if n < 2 {
        return Err(HuffmanError::DegeneratePolynomial {
            detail: format!("length {} leaves no nonconstant polynomial", n),
        });
    }
    if coeffs[0] == 0.0 || coeffs[n - 1] == 0.0 {
        return Err(HuffmanError::DegeneratePolynomial {
            detail: "zero leading or trailing coefficient".to_string(),
        });
    }

    let degree = n - 1;
    let mut companion = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = 1.0;
    }
    for k in 0..degree {
        // Monic coefficient of z^k is coeffs[n - 1 - k] / coeffs[0].
        companion[(k, degree - 1)] = -coeffs[n - 1 - k] / coeffs[0];
    }

    let eigen = companion.complex_eigenvalues();
    let raw: Vec<Complex64> = eigen.iter().copied().collect();
    let roots = exec::map_slice(&raw, |&z| newton_polish(&coeffs, z));

    for z in &roots {
        let (p, _) = eval_with_derivative(&coeffs, *z);
        let bound = 1e-8 * residual_scale(&coeffs, *z);
        if p.norm() > bound {
            return Err(HuffmanError::DegeneratePolynomial {
                detail: format!(
                    "root {:.6}+{:.6}i residual {:.3e} exceeds bound {:.3e}",
                    z.re,
                    z.im,
                    p.norm(),
                    bound
                ),
            });
        }
    }
    Ok(roots)
}

/// One circle of roots: fitted radius, membership count, consecutive
/// angular gaps (including the wrap-around gap), and whether the gaps are
/// uniform within the angular tolerance.
#[derive(Clone, Debug)]
pub struct RadiusCluster {
    pub radius: f64,
    pub count: usize,
    pub angle_gaps: Vec<f64>,
    pub equi_angular: bool,
}

/// Zero geometry summary.
///
/// Equi-angularity is a property of the union of all root phases, not of
/// each circle alone: the delta auto-correlation forces one root at every
/// angle 2*pi*k/(N-1), with only the radius (R or 1/R) varying per angle.
/// Per-circle gaps are therefore reported as data, while the verdict and
/// `max_angle_dev` are measured over the combined phase set.
#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub roots: Vec<Complex64>,
    pub clusters: Vec<RadiusCluster>,
    /// Largest relative deviation of any root modulus from its cluster radius.
    pub max_radius_dev: f64,
    /// Largest deviation of a combined consecutive-phase gap from the
    /// uniform spacing 2*pi/(root count), in radians.
    pub max_angle_dev: f64,
    /// True when the combined phases are uniformly spaced within the
    /// angular tolerance.
    pub equi_angular: bool,
    /// True when every cluster radius R has a partner cluster of equal
    /// count with radius close to 1/R (possibly itself when R is near 1).
    pub reciprocal_pairs: bool,
}

/// Consecutive gaps of a sorted angle list, including the wrap-around gap.
fn sorted_angle_gaps(angles: &mut Vec<f64>) -> Vec<f64> {
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    if angles.len() == 1 {
        return vec![std::f64::consts::TAU];
    }
    let mut gaps: Vec<f64> = angles.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(std::f64::consts::TAU - (angles[angles.len() - 1] - angles[0]));
    gaps
}

/// Clusters roots onto circles by modulus (relative `radius_tol`), reports
/// the angular gap structure within each circle, and judges equi-angularity
/// over the union of all phases.
pub fn circle_fit(roots: &[Complex64], radius_tol: f64, angle_tol: f64) -> ZeroReport {
    assert!(!roots.is_empty(), "circle_fit needs at least one root");

    let mut by_radius: Vec<Complex64> = roots.to_vec();
    by_radius.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite moduli"));

    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for z in by_radius {
        let r = z.norm();
        match groups.last_mut() {
            Some(group) => {
                let mean: f64 = group.iter().map(|g| g.norm()).sum::<f64>() / group.len() as f64;
                if (r - mean).abs() <= radius_tol * mean.max(f64::MIN_POSITIVE) {
                    group.push(z);
                } else {
                    groups.push(vec![z]);
                }
            }
            None => groups.push(vec![z]),
        }
    }

    let mut clusters = Vec::with_capacity(groups.len());
    let mut max_radius_dev = 0.0f64;
    for group in &groups {
        let radius: f64 = group.iter().map(|z| z.norm()).sum::<f64>() / group.len() as f64;
        for z in group {
            max_radius_dev = max_radius_dev.max((z.norm() - radius).abs() / radius);
        }

        let mut angles: Vec<f64> = group.iter().map(|z| z.arg()).collect();
        let angle_gaps = sorted_angle_gaps(&mut angles);
        let spread = angle_gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - angle_gaps.iter().copied().fold(f64::INFINITY, f64::min);
        clusters.push(RadiusCluster {
            radius,
            count: group.len(),
            equi_angular: spread <= angle_tol,
            angle_gaps,
        });
    }

    let mut all_angles: Vec<f64> = roots.iter().map(|z| z.arg()).collect();
    let uniform = std::f64::consts::TAU / roots.len() as f64;
    let max_angle_dev = sorted_angle_gaps(&mut all_angles)
        .iter()
        .map(|g| (g - uniform).abs())
        .fold(0.0f64, f64::max);

    let reciprocal_pairs = clusters.iter().all(|c| {
        clusters
            .iter()
            .any(|d| d.count == c.count && (c.radius * d.radius - 1.0).abs() <= 2.0 * radius_tol)
    });

    ZeroReport {
        roots: roots.to_vec(),
        clusters,
        max_radius_dev,
        max_angle_dev,
        equi_angular: max_angle_dev <= angle_tol,
        reciprocal_pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_fib, build_three, fixture};
    use crate::numeric::{Numeric, Scale};

    const PHI: f64 = 1.618033988749895;

    fn moduli_near(roots: &[Complex64], targets: &[f64], tol: f64) {
        for z in roots {
            let r = z.norm();
            assert!(
                targets.iter().any(|t| (r - t).abs() <= tol),
                "modulus {} not near any of {:?}",
                r,
                targets
            );
        }
    }

    #[test]
    fn linear_polynomial_root() {
        let seq = HuffmanSequence::from_raw(vec![Numeric::one(), Numeric::from_i64(-3)], None);
        let roots = z_zeros(&seq).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn golden_ratio_circles() {
        let seq = build_fib(11, &Scale::from_int(1)).unwrap();
        let roots = z_zeros(&seq).unwrap();
        assert_eq!(roots.len(), 10);
        moduli_near(&roots, &[PHI, 1.0 / PHI], 1e-6);

        let report = circle_fit(&roots, 1e-4, 1e-6);
        assert_eq!(report.clusters.len(), 2);
        assert!((report.clusters[0].radius - 1.0 / PHI).abs() < 1e-6);
        assert!((report.clusters[1].radius - PHI).abs() < 1e-6);
        assert!(report.max_radius_dev < 1e-6);
        assert!(report.reciprocal_pairs);

        // One root per angle 2*pi*k/10; the radius alone alternates between
        // the circles, so the union is uniform while each circle is not.
        assert!(report.equi_angular);
        assert!(report.max_angle_dev < 1e-6);
        assert!(report.clusters.iter().any(|c| !c.equi_angular));
    }

    #[test]
    fn powers_of_three_circles() {
        let seq = build_three(5).unwrap();
        let roots = z_zeros(&seq).unwrap();
        assert_eq!(roots.len(), 4);
        moduli_near(&roots, &[3.0, 1.0 / 3.0], 1e-6);
        let report = circle_fit(&roots, 1e-4, 1e-6);
        assert!(report.equi_angular);
    }

    #[test]
    fn fixture_shares_the_golden_radii() {
        let roots = z_zeros(&fixture("H_non_11").unwrap()).unwrap();
        moduli_near(&roots, &[PHI, 1.0 / PHI], 1e-6);
    }

    #[test]
    fn degenerate_polynomials_are_rejected() {
        let delta =
            HuffmanSequence::from_raw(vec![Numeric::one(), Numeric::zero(), Numeric::zero()], None);
        assert_eq!(z_zeros(&delta).unwrap_err().code(), "degenerate-polynomial");

        let single = HuffmanSequence::from_raw(vec![Numeric::one()], None);
        assert_eq!(
            z_zeros(&single).unwrap_err().code(),
            "degenerate-polynomial"
        );
    }

    #[test]
    fn roots_of_unity_form_one_uniform_circle() {
        // z^4 - 1: the four fourth roots of unity.
        let seq = HuffmanSequence::from_raw(
            vec![
                Numeric::one(),
                Numeric::zero(),
                Numeric::zero(),
                Numeric::zero(),
                Numeric::from_i64(-1),
            ],
            None,
        );
        let roots = z_zeros(&seq).unwrap();
        let report = circle_fit(&roots, 1e-6, 1e-9);
        assert_eq!(report.clusters.len(), 1);
        let cluster = &report.clusters[0];
        assert!((cluster.radius - 1.0).abs() < 1e-9);
        assert_eq!(cluster.count, 4);
        for gap in &cluster.angle_gaps {
            assert!((gap - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
        }
        assert!(cluster.equi_angular);
        assert!(report.equi_angular);
        assert!(report.reciprocal_pairs);
    }
}
