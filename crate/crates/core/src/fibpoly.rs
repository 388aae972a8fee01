//! Fibonacci polynomials evaluated at the scale parameter.
//!
//! The two-term recursion `F_{r+2} = s F_{r+1} + F_r` with `F_0 = 0`,
//! `F_1 = 1` generates the coefficient pools every sequence family draws
//! from. Negative indices follow the reflection `F_{-j} = (-1)^{j+1} F_j`,
//! so the recursion runs in both directions.

use num::complex::Complex64;

use crate::error::HuffmanError;
use crate::exec;
use crate::numeric::{Numeric, Scale};
use crate::Result;

/// `F_n(s)` for any integer index, exact when `s` is exact.
pub fn fib_poly(n: i64, s: &Scale) -> Numeric {
    if n < 0 {
        let v = fib_poly(-n, s);
        // F_{-j} = (-1)^{j+1} F_j
        if n % 2 == 0 {
            -v
        } else {
            v
        }
    } else {
        fib_poly_prefix(n as usize, s)
            .pop()
            .unwrap_or_else(Numeric::zero)
    }
}

/// `[F_0, F_1, ..., F_n]` in one forward pass.
pub fn fib_poly_prefix(n: usize, s: &Scale) -> Vec<Numeric> {
    let sv = s.to_numeric();
    let mut out = Vec::with_capacity(n + 1);
    out.push(Numeric::zero());
    if n == 0 {
        return out;
    }
    out.push(Numeric::one());
    for r in 2..=n {
        let next = &(&sv * &out[r - 1]) + &out[r - 2];
        out.push(next);
    }
    out
}

/// `F_n(s)` through the trigonometric closed form
/// `i^{1-n} sin(n acos(is/2)) / sin(acos(is/2))`, principal branches.
///
/// Float-only; the result is real up to roundoff and the real part is
/// returned. Used as an independent cross-check on the recursion.
pub fn fib_poly_trig(n: i64, s: f64) -> f64 {
    let theta = (Complex64::new(0.0, s) / 2.0).acos();
    let i = Complex64::new(0.0, 1.0);
    let sin_theta = theta.sin();
    if sin_theta.norm() == 0.0 {
        // theta = 0 happens only at s = ±2i, unreachable for real s.
        return f64::NAN;
    }
    let value = i.powf(1.0 - n as f64) * (theta * n as f64).sin() / sin_theta;
    value.re
}

/// One verifiable identity instance over the polynomial family.
#[derive(Clone, Debug)]
pub enum IdentityCase {
    /// `F_{r+2} = s F_{r+1} + F_r`
    Recursion { r: i64, s: Scale },
    /// `F_{-j} = (-1)^{j+1} F_j`
    Reflection { j: i64, s: Scale },
    /// `F_{n-r} F_{n+r} = F_n^2 - (-1)^{n-r} F_r^2`
    Catalan { n: i64, r: i64, s: Scale },
    /// `F_a F_b - F_c F_d = (-1)^t (F_{a-t} F_{b-t} - F_{c-t} F_{d-t})`
    /// subject to `a + b = c + d`.
    Johnson {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        t: i64,
        s: Scale,
    },
    /// `sum_{i=1}^{n} F_i^2 = F_n F_{n+1} / s`, `s != 0`
    SumSquares { n: i64, s: Scale },
    /// `sum_{k=1}^{n} F_{2k-1} = F_{2n} / s`, `s != 0`
    OddIndexSum { n: i64, s: Scale },
    /// `F_{m+n+1} = F_{m+1} F_{n+1} + F_m F_n`
    Product { m: i64, n: i64, s: Scale },
    /// Recursion matches the trigonometric closed form (float check).
    BinetChebyshev { n: i64, s: f64 },
}

impl IdentityCase {
    pub fn kind(&self) -> &'static str {
        match self {
            IdentityCase::Recursion { .. } => "recursion",
            IdentityCase::Reflection { .. } => "reflection",
            IdentityCase::Catalan { .. } => "catalan",
            IdentityCase::Johnson { .. } => "johnson",
            IdentityCase::SumSquares { .. } => "sum-squares",
            IdentityCase::OddIndexSum { .. } => "odd-index-sum",
            IdentityCase::Product { .. } => "product",
            IdentityCase::BinetChebyshev { .. } => "binet-chebyshev",
        }
    }
}

/// Outcome of checking one identity: both sides, evaluated independently.
#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub kind: &'static str,
    pub lhs: Numeric,
    pub rhs: Numeric,
    pub holds: bool,
}

/// Evaluates both sides of an identity without algebraic simplification.
///
/// Exact cases must match exactly; the float case compares at relative
/// tolerance `1e-9`. Rejects parameter sets outside an identity's domain
/// (`s = 0` where a division by `s` appears, index sums that disagree).
pub fn check_identity(case: &IdentityCase) -> Result<IdentityOutcome> {
    let (kind, lhs, rhs) = match case {
        IdentityCase::Recursion { r, s } => {
            let lhs = fib_poly(r + 2, s);
            let rhs = &(&s.to_numeric() * &fib_poly(r + 1, s)) + &fib_poly(*r, s);
            ("recursion", lhs, rhs)
        }
        IdentityCase::Reflection { j, s } => {
            let lhs = fib_poly(-j, s);
            let sign = if j % 2 == 0 { -1 } else { 1 };
            let rhs = &Numeric::from_i64(sign) * &fib_poly(*j, s);
            ("reflection", lhs, rhs)
        }
        IdentityCase::Catalan { n, r, s } => {
            let lhs = &fib_poly(n - r, s) * &fib_poly(n + r, s);
            let fn2 = fib_poly(*n, s).powi(2);
            let fr2 = fib_poly(*r, s).powi(2);
            let sign = if (n - r) % 2 == 0 { 1 } else { -1 };
            let rhs = &fn2 - &(&Numeric::from_i64(sign) * &fr2);
            ("catalan", lhs, rhs)
        }
        IdentityCase::Johnson { a, b, c, d, t, s } => {
            if a + b != c + d {
                return Err(HuffmanError::InvalidIdentityCase {
                    detail: format!("index sums differ: {} + {} != {} + {}", a, b, c, d),
                });
            }
            let lhs =
                &(&fib_poly(*a, s) * &fib_poly(*b, s)) - &(&fib_poly(*c, s) * &fib_poly(*d, s));
            let shifted = &(&fib_poly(a - t, s) * &fib_poly(b - t, s))
                - &(&fib_poly(c - t, s) * &fib_poly(d - t, s));
            let sign = if t % 2 == 0 { 1 } else { -1 };
            let rhs = &Numeric::from_i64(sign) * &shifted;
            ("johnson", lhs, rhs)
        }
        IdentityCase::SumSquares { n, s } => {
            if s.approx() == 0.0 {
                return Err(HuffmanError::InvalidIdentityCase {
                    detail: "sum-squares divides by s, so s must be nonzero".to_string(),
                });
            }
            if *n < 1 {
                return Err(HuffmanError::InvalidIdentityCase {
                    detail: format!("sum-squares needs n >= 1, got {}", n),
                });
            }
            let prefix = fib_poly_prefix(*n as usize + 1, s);
            let lhs: Numeric = prefix[1..=*n as usize].iter().map(|f| f.powi(2)).sum();
            let rhs = &(&prefix[*n as usize] * &prefix[*n as usize + 1]) / &s.to_numeric();
            ("sum-squares", lhs, rhs)
        }
        IdentityCase::OddIndexSum { n, s } => {
            if s.approx() == 0.0 {
                return Err(HuffmanError::InvalidIdentityCase {
                    detail: "odd-index-sum divides by s, so s must be nonzero".to_string(),
                });
            }
            if *n < 1 {
                return Err(HuffmanError::InvalidIdentityCase {
                    detail: format!("odd-index-sum needs n >= 1, got {}", n),
                });
            }
            let prefix = fib_poly_prefix(2 * *n as usize, s);
            let lhs: Numeric = (1..=*n as usize).map(|k| prefix[2 * k - 1].clone()).sum();
            let rhs = &prefix[2 * *n as usize] / &s.to_numeric();
            ("odd-index-sum", lhs, rhs)
        }
        IdentityCase::Product { m, n, s } => {
            let lhs = fib_poly(m + n + 1, s);
            let rhs = &(&fib_poly(m + 1, s) * &fib_poly(n + 1, s))
                + &(&fib_poly(*m, s) * &fib_poly(*n, s));
            ("product", lhs, rhs)
        }
        IdentityCase::BinetChebyshev { n, s } => {
            let lhs = Numeric::from_f64(fib_poly(*n, &Scale::from_f64(*s)).approx());
            let rhs = Numeric::from_f64(fib_poly_trig(*n, *s));
            ("binet-chebyshev", lhs, rhs)
        }
    };

    let holds = if lhs.is_exact() && rhs.is_exact() {
        lhs == rhs
    } else {
        let (a, b) = (lhs.approx(), rhs.approx());
        let denom = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= 1e-9 * denom
    };
    Ok(IdentityOutcome {
        kind,
        lhs,
        rhs,
        holds,
    })
}

/// Summary of one randomized identity batch.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub kind: &'static str,
    pub cases: usize,
    pub failures: usize,
}

/// Runs `cases` random instances of every identity kind from a seeded
/// generator. Exact kinds draw rational scales with numerator and
/// denominator in `[-9, 9]` (denominator nonzero) and indices in
/// `[-30, 30]`; the float kind draws `n` in `[0, 20]` and `s` in `[-3, 3]`.
/// Each kind draws from its own stream keyed by `seed` and the kind index,
/// so the reports are identical however the kinds are scheduled.
pub fn run_identity_suite(seed: u64, cases: usize) -> Vec<SuiteReport> {
    use rand::Rng;
    use rand::SeedableRng;

    fn rand_scale(rng: &mut rand_chacha::ChaCha8Rng, nonzero: bool) -> Scale {
        loop {
            let p = rng.gen_range(-9i64..=9);
            let q = rng.gen_range(1i64..=9);
            if nonzero && p == 0 {
                continue;
            }
            return Scale::from_ratio(p, q);
        }
    }

    let kinds: Vec<(u64, &'static str)> = [
        "recursion",
        "reflection",
        "catalan",
        "johnson",
        "sum-squares",
        "odd-index-sum",
        "product",
        "binet-chebyshev",
    ]
    .iter()
    .enumerate()
    .map(|(i, &kind)| (seed.wrapping_add(i as u64), kind))
    .collect();

    exec::map_slice(&kinds, |&(kind_seed, kind)| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(kind_seed);
        let mut failures = 0usize;
        for _ in 0..cases {
            let case = match kind {
                "recursion" => IdentityCase::Recursion {
                    r: rng.gen_range(-30i64..=30),
                    s: rand_scale(&mut rng, false),
                },
                "reflection" => IdentityCase::Reflection {
                    j: rng.gen_range(-30i64..=30),
                    s: rand_scale(&mut rng, false),
                },
                "catalan" => IdentityCase::Catalan {
                    n: rng.gen_range(-30i64..=30),
                    r: rng.gen_range(-30i64..=30),
                    s: rand_scale(&mut rng, false),
                },
                "johnson" => {
                    let a = rng.gen_range(-30i64..=30);
                    let b = rng.gen_range(-30i64..=30);
                    let c = rng.gen_range(-30i64..=30);
                    let d = a + b - c;
                    IdentityCase::Johnson {
                        a,
                        b,
                        c,
                        d,
                        t: rng.gen_range(-30i64..=30),
                        s: rand_scale(&mut rng, false),
                    }
                }
                "sum-squares" => IdentityCase::SumSquares {
                    n: rng.gen_range(1i64..=30),
                    s: rand_scale(&mut rng, true),
                },
                "odd-index-sum" => IdentityCase::OddIndexSum {
                    n: rng.gen_range(1i64..=30),
                    s: rand_scale(&mut rng, true),
                },
                "product" => IdentityCase::Product {
                    m: rng.gen_range(-30i64..=30),
                    n: rng.gen_range(-30i64..=30),
                    s: rand_scale(&mut rng, false),
                },
                "binet-chebyshev" => IdentityCase::BinetChebyshev {
                    n: rng.gen_range(0i64..=20),
                    s: rng.gen_range(-3.0f64..=3.0),
                },
                _ => unreachable!(),
            };
            let outcome = check_identity(&case).expect("suite only draws in-domain cases");
            if !outcome.holds {
                failures += 1;
            }
        }
        SuiteReport {
            kind,
            cases,
            failures,
        }
    })
}
