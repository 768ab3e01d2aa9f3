//! Norms, distances, and kernels on landscapes.
//!
//! Integrals are exact: on each piece of a common partition the integrands
//! are polynomials of degree at most three, which Simpson's rule integrates
//! without error. Only `p`th roots and Poisson weights leave the rationals.

use crate::diagram::DiagramFamily;
use crate::error::{Error, Result};
use crate::landscape::{landscape_of, Landscape, PiecewiseLinearFunction};
use crate::rational::{format_significant, int, to_f64, Exact, Rational};
use num_traits::{Signed, Zero};
use std::fmt;

/// A result that is exact when the computation allows it.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Real(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => to_f64(r),
            Scalar::Real(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Real(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{}", Exact(r)),
            Scalar::Real(x) => f.write_str(&format_significant(*x, 15)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    Finite(u32),
    Infinity,
}

impl std::str::FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(PNorm::Infinity),
            other => match other.parse::<u32>() {
                Ok(p) if p >= 1 => Ok(PNorm::Finite(p)),
                _ => Err(Error::InvalidParameter(format!(
                    "p must be a positive integer or `inf`, got `{other}`"
                ))),
            },
        }
    }
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `∫ |v(t)|^p` over a piece where `v` goes linearly from `v0` to `v1`
/// without changing sign.
fn power_piece(width: &Rational, v0: &Rational, v1: &Rational, p: u32) -> Rational {
    let (a, b) = (v0.abs(), v1.abs());
    let mut sum = Rational::zero();
    for i in 0..=p {
        sum += num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), (p - i) as usize);
    }
    width * sum / int(i64::from(p) + 1)
}

/// `∫ |f - g|^p dt`, exact.
fn power_integral_of_difference(f: &PiecewiseLinearFunction, g: &PiecewiseLinearFunction, p: u32) -> Rational {
    let ts = PiecewiseLinearFunction::merged_abscissae(&[f, g]);
    let diffs: Vec<Rational> = ts.iter().map(|t| f.evaluate(t) - g.evaluate(t)).collect();
    let mut total = Rational::zero();
    for i in 1..ts.len() {
        let (t0, t1) = (&ts[i - 1], &ts[i]);
        let (d0, d1) = (&diffs[i - 1], &diffs[i]);
        let width = t1 - t0;
        if d0.is_positive() && d1.is_negative() || d0.is_negative() && d1.is_positive() {
            // split at the sign change
            let left = &width * d0 / (d0 - d1);
            let right = &width - &left;
            total += power_piece(&left, d0, &Rational::zero(), p);
            total += power_piece(&right, &Rational::zero(), d1, p);
        } else {
            total += power_piece(&width, d0, d1, p);
        }
    }
    total
}

/// `∫ λ_k^p` for a single level, exact.
pub fn level_power_integral(f: &PiecewiseLinearFunction, p: u32) -> Rational {
    power_integral_of_difference(f, &PiecewiseLinearFunction::zero(), p)
}

/// `Σ_k (∫ |λ_k - λ'_k|^p)^{1/p}`, or the sup distance for `p = ∞`.
///
/// The `1/p` root is applied per level and the roots are summed. For
/// `p = 1` and `p = ∞` the result is exact.
pub fn p_distance(l1: &Landscape, l2: &Landscape, p: PNorm) -> Scalar {
    let p = match p {
        PNorm::Infinity => return Scalar::Exact(sup_distance(l1, l2)),
        PNorm::Finite(p) => p,
    };
    let zero = PiecewiseLinearFunction::zero();
    let depth = l1.depth().max(l2.depth());
    let integrals = (0..depth).map(|k| {
        let f = l1.levels().get(k).unwrap_or(&zero);
        let g = l2.levels().get(k).unwrap_or(&zero);
        power_integral_of_difference(f, g, p)
    });
    if p == 1 {
        return Scalar::Exact(integrals.fold(Rational::zero(), |acc, x| acc + x));
    }
    let root = 1.0 / f64::from(p);
    Scalar::Real(compensated_sum(integrals.map(|x| to_f64(&x).powf(root))))
}

pub fn p_norm(l: &Landscape, p: PNorm) -> Scalar {
    p_distance(l, &Landscape::empty(), p)
}

/// `sup_{k,t} |λ_k(t) - λ'_k(t)|`, attained at a breakpoint of either input.
pub fn sup_distance(l1: &Landscape, l2: &Landscape) -> Rational {
    let zero = PiecewiseLinearFunction::zero();
    let depth = l1.depth().max(l2.depth());
    let mut best = Rational::zero();
    for k in 0..depth {
        let f = l1.levels().get(k).unwrap_or(&zero);
        let g = l2.levels().get(k).unwrap_or(&zero);
        for t in PiecewiseLinearFunction::merged_abscissae(&[f, g]) {
            let d = (f.evaluate(&t) - g.evaluate(&t)).abs();
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// `∫ f g u dt` with `u ≡ 1` when absent. The integrand is at most cubic on
/// each piece of the merged partition, so Simpson's rule is exact.
fn product_integral(
    f: &PiecewiseLinearFunction,
    g: &PiecewiseLinearFunction,
    u: Option<&PiecewiseLinearFunction>,
) -> Rational {
    if f.is_zero() || g.is_zero() {
        return Rational::zero();
    }
    let ts = match u {
        Some(u) => PiecewiseLinearFunction::merged_abscissae(&[f, g, u]),
        None => PiecewiseLinearFunction::merged_abscissae(&[f, g]),
    };
    let integrand = |t: &Rational| {
        let fg = f.evaluate(t) * g.evaluate(t);
        match u {
            Some(u) => fg * u.evaluate(t),
            None => fg,
        }
    };
    let mut total = Rational::zero();
    let mut left = ts.first().map(integrand);
    for w in ts.windows(2) {
        let mid = (&w[0] + &w[1]) / int(2);
        let right = integrand(&w[1]);
        let l = left.take().expect("left value carried over");
        total += (&w[1] - &w[0]) * (&l + int(4) * integrand(&mid) + &right) / int(6);
        left = Some(right);
    }
    total
}

/// `∫ λ_k λ'_k dt` for each level present in both.
fn level_products(l1: &Landscape, l2: &Landscape, u: Option<&PiecewiseLinearFunction>) -> Vec<Rational> {
    l1.levels()
        .iter()
        .zip(l2.levels())
        .map(|(f, g)| product_integral(f, g, u))
        .collect()
}

/// The persistence landscape kernel `Σ_k ∫ λ_k λ'_k`, exact.
pub fn inner_product(l1: &Landscape, l2: &Landscape) -> Rational {
    level_products(l1, l2, None)
        .into_iter()
        .fold(Rational::zero(), |acc, x| acc + x)
}

#[derive(Debug, Clone, PartialEq)]
pub enum LevelWeights {
    /// `w_1, w_2, …`, zero past the end.
    Explicit(Vec<Rational>),
    /// `w_k = P_ν(k - 1)`.
    Poisson(f64),
}

/// A product weight `w(k, t) = w_k · u(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    pub level_weights: LevelWeights,
    /// `u`; `None` means the constant 1.
    pub t_factor: Option<PiecewiseLinearFunction>,
}

impl WeightSpec {
    pub fn explicit(weights: Vec<Rational>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidParameter(format!("negative level weight {}", Exact(w))));
        }
        Ok(WeightSpec {
            level_weights: LevelWeights::Explicit(weights),
            t_factor: None,
        })
    }

    pub fn poisson(nu: f64) -> Result<Self> {
        check_nu(nu)?;
        Ok(WeightSpec {
            level_weights: LevelWeights::Poisson(nu),
            t_factor: None,
        })
    }

    pub fn with_t_factor(mut self, u: PiecewiseLinearFunction) -> Self {
        self.t_factor = Some(u);
        self
    }

    /// Parses one nonnegative rational weight per line (`#` comments allowed).
    pub fn parse_level_weights(text: &str) -> Result<Self> {
        let mut weights = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let w = crate::rational::parse_rational(line).map_err(|e| Error::literal(i + 1, e))?;
            if w.is_negative() {
                return Err(Error::parse(i + 1, "weights must be nonnegative"));
            }
            weights.push(w);
        }
        Self::explicit(weights)
    }
}

fn check_nu(nu: f64) -> Result<()> {
    if nu.is_finite() && nu > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")))
    }
}

/// `Σ_k w_k ∫ u λ_k λ'_k`; exact for explicit rational level weights.
pub fn weighted_inner_product(l1: &Landscape, l2: &Landscape, w: &WeightSpec) -> Result<Scalar> {
    let products = level_products(l1, l2, w.t_factor.as_ref());
    match &w.level_weights {
        LevelWeights::Explicit(weights) => Ok(Scalar::Exact(
            products
                .iter()
                .zip(weights)
                .fold(Rational::zero(), |acc, (x, wk)| acc + x * wk),
        )),
        LevelWeights::Poisson(nu) => {
            check_nu(*nu)?;
            let terms = products
                .iter()
                .enumerate()
                .map(|(k, x)| poisson_weight(*nu, k as u64).map(|pk| pk * to_f64(x)))
                .collect::<Result<Vec<f64>>>()?;
            Ok(Scalar::Real(compensated_sum(terms)))
        }
    }
}

/// `P_ν(k) = ν^k e^{-ν} / k!`, evaluated in log space.
pub fn poisson_weight(nu: f64, k: u64) -> Result<f64> {
    check_nu(nu)?;
    let log_factorial = compensated_sum((2..=k).map(|i| (i as f64).ln()));
    Ok((k as f64 * nu.ln() - nu - log_factorial).exp())
}

/// `K_ν = Σ_k P_ν(k - 1) ∫ λ_k λ'_k`.
pub fn poisson_kernel(nu: f64, l1: &Landscape, l2: &Landscape) -> Result<f64> {
    weighted_inner_product(l1, l2, &WeightSpec::poisson(nu)?).map(|s| s.to_f64())
}

/// `‖λ‖_ν = Σ_k P_ν(k - 1) ‖λ_k‖_2`.
pub fn poisson_norm(nu: f64, l: &Landscape) -> Result<f64> {
    check_nu(nu)?;
    let terms = l
        .levels()
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let norm = to_f64(&level_power_integral(f, 2)).sqrt();
            poisson_weight(nu, k as u64).map(|pk| pk * norm)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(compensated_sum(terms))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    Plain,
    Poisson(f64),
    Weighted(WeightSpec),
}

impl Kernel {
    pub fn evaluate(&self, l1: &Landscape, l2: &Landscape) -> Result<Scalar> {
        match self {
            Kernel::Plain => Ok(Scalar::Exact(inner_product(l1, l2))),
            Kernel::Poisson(nu) => poisson_kernel(*nu, l1, l2).map(Scalar::Real),
            Kernel::Weighted(w) => weighted_inner_product(l1, l2, w),
        }
    }
}

/// Symmetric matrix of kernel values between the landscapes of a family.
pub fn gram_matrix(family: &DiagramFamily, kernel: &Kernel) -> Result<Vec<Vec<Scalar>>> {
    let landscapes: Vec<Landscape> = family.diagrams.iter().map(landscape_of).collect();
    let n = landscapes.len();
    let mut g = vec![vec![Scalar::Exact(Rational::zero()); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = kernel.evaluate(&landscapes[i], &landscapes[j])?;
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    Ok(g)
}

/// CSV rendering, row-major. Exact entries print as `p/q` when `exact` is
/// set, otherwise every entry prints with 15 significant digits.
pub fn gram_to_csv(g: &[Vec<Scalar>], exact: bool) -> String {
    let mut out = String::new();
    for row in g {
        let cells: Vec<String> = row
            .iter()
            .map(|s| match s {
                Scalar::Exact(r) if exact => Exact(r).to_string(),
                other => format_significant(other.to_f64(), 15),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
