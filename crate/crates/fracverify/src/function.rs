//! Catalog-backed real functions with exact integer-order derivatives,
//! plus compactly supported bump perturbations.
//!
//! Every operator in this crate consumes values and exact derivatives of
//! its input function, so the catalog keeps both in closed form. Bumps
//! are the one exception: their derivatives come from high-order central
//! differences on the closed-form bump (see [`BumpPerturbation`]).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Highest derivative order the catalog guarantees exactly.
pub const K_MAX: usize = 8;

/// Anything that can report a value and exact k-th derivatives.
///
/// Implemented by [`SmoothFunction`] and by the [`Product`] and
/// [`LinearCombination`] combinators, so operator kernels can run on
/// derived functions without losing exactness.
pub trait Differentiable {
    fn value(&self, t: f64) -> Result<f64>;

    /// k-th derivative at `t`; `k = 0` is the value itself.
    fn derivative(&self, t: f64, k: usize) -> Result<f64>;
}

/// The function catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Catalog {
    /// t -> c
    Constant(f64),
    /// t -> t^p
    Power(f64),
    /// t -> (t - a)^p; for non-integer p only defined for t >= a
    ShiftedPower { p: f64, a: f64 },
    /// t -> exp(k t)
    Exponential(f64),
    /// t -> sin(omega t)
    Sine(f64),
    /// t -> c0 + c1 t + c2 t^2 + ...
    Polynomial(Vec<f64>),
}

/// A smooth bump: amplitude * exp(1 - 1/(1 - s^2)) with
/// s = (t - center)/radius, identically zero for |s| >= 1.
///
/// Infinitely differentiable, compact support, attains `amplitude` at
/// the center. Derivatives are evaluated by central differences in the
/// normalized coordinate (step 1e-4, one Richardson step); closed-form
/// symbolic derivatives are deliberately not carried.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpPerturbation {
    pub center: f64,
    pub radius: f64,
    pub amplitude: f64,
}

impl BumpPerturbation {
    pub fn new(center: f64, radius: f64, amplitude: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bump radius must be positive, got {radius}"
            )));
        }
        Ok(Self {
            center,
            radius,
            amplitude,
        })
    }

    /// The unit-amplitude bump profile in the normalized coordinate.
    fn profile(s: f64) -> f64 {
        if s.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - s * s)).exp()
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        if self.amplitude == 0.0 {
            return 0.0;
        }
        self.amplitude * Self::profile((t - self.center) / self.radius)
    }

    /// k-th derivative with respect to t.
    ///
    /// Computed in the normalized coordinate, then scaled by radius^-k.
    /// Outside the open support the bump and all derivatives are
    /// identically zero, so the stencil is never consulted there.
    pub fn derivative(&self, t: f64, k: usize) -> f64 {
        if self.amplitude == 0.0 {
            return 0.0;
        }
        let s = (t - self.center) / self.radius;
        if s.abs() >= 1.0 {
            return 0.0;
        }
        if k == 0 {
            return self.amplitude * Self::profile(s);
        }
        let d = crate::numerics::central_difference(Self::profile, s, k, 1e-4);
        self.amplitude * d / self.radius.powi(k as i32)
    }

    /// True when `t` lies inside the open support interval.
    pub fn supports(&self, t: f64) -> bool {
        ((t - self.center) / self.radius).abs() < 1.0
    }
}

/// A catalog member plus an ordered list of bump perturbations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothFunction {
    pub kind: Catalog,
    pub perturbations: Vec<BumpPerturbation>,
}

impl SmoothFunction {
    pub fn new(kind: Catalog) -> Self {
        Self {
            kind,
            perturbations: Vec::new(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(Catalog::Constant(c))
    }

    pub fn power(p: f64) -> Self {
        Self::new(Catalog::Power(p))
    }

    pub fn shifted_power(p: f64, a: f64) -> Self {
        Self::new(Catalog::ShiftedPower { p, a })
    }

    pub fn exponential(k: f64) -> Self {
        Self::new(Catalog::Exponential(k))
    }

    pub fn sine(omega: f64) -> Self {
        Self::new(Catalog::Sine(omega))
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::new(Catalog::Polynomial(coeffs))
    }

    /// Returns a copy of `self` carrying one more bump.
    pub fn with_bump(&self, bump: BumpPerturbation) -> Self {
        let mut out = self.clone();
        out.perturbations.push(bump);
        out
    }

    /// Exact value of the catalog part at `t` (no bumps).
    fn base_value(&self, t: f64) -> Result<f64> {
        self.base_derivative(t, 0)
    }

    /// Exact k-th derivative of the catalog part at `t`.
    fn base_derivative(&self, t: f64, k: usize) -> Result<f64> {
        match &self.kind {
            Catalog::Constant(c) => Ok(if k == 0 { *c } else { 0.0 }),
            Catalog::Power(p) => power_derivative(*p, t, 0.0, k),
            Catalog::ShiftedPower { p, a } => power_derivative(*p, t, *a, k),
            Catalog::Exponential(rate) => Ok(rate.powi(k as i32) * (rate * t).exp()),
            Catalog::Sine(omega) => {
                // d^k/dt^k sin(w t) = w^k sin(w t + k pi/2)
                let phase = omega * t + k as f64 * std::f64::consts::FRAC_PI_2;
                Ok(omega.powi(k as i32) * phase.sin())
            }
            Catalog::Polynomial(coeffs) => {
                // Horner evaluation of the exactly differentiated polynomial.
                let mut acc = 0.0;
                for (i, &c) in coeffs.iter().enumerate().skip(k).rev() {
                    // falling factorial i * (i-1) * ... * (i-k+1)
                    let mut fall = 1.0;
                    for j in 0..k {
                        fall *= (i - j) as f64;
                    }
                    acc = acc * t + c * fall;
                }
                Ok(acc)
            }
        }
    }

    /// Short human-readable descriptor, also accepted by [`SmoothFunction::parse`].
    pub fn describe(&self) -> String {
        let base = match &self.kind {
            Catalog::Constant(c) => format!("const:{c}"),
            Catalog::Power(p) => format!("power:{p}"),
            Catalog::ShiftedPower { p, a } => format!("spower:{p},{a}"),
            Catalog::Exponential(k) => format!("exp:{k}"),
            Catalog::Sine(w) => format!("sin:{w}"),
            Catalog::Polynomial(c) => {
                let list: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("poly:{}", list.join(","))
            }
        };
        if self.perturbations.is_empty() {
            base
        } else {
            format!("{base}+{}bump(s)", self.perturbations.len())
        }
    }

    /// Parses the descriptor mini-grammar `name[:p1,p2,...]`.
    ///
    /// Names: `const`, `power`, `spower`, `exp`, `sin`, `poly`.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let (name, params) = match descriptor.split_once(':') {
            Some((n, p)) => (n, p),
            None => (descriptor, ""),
        };
        let nums: Vec<f64> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number `{s}` in `{descriptor}`")))
                })
                .collect::<Result<_>>()?
        };
        let arity_err = |want: &str| {
            Error::Parse(format!(
                "descriptor `{descriptor}`: `{name}` expects {want} parameter(s)"
            ))
        };
        match name {
            "const" => match nums[..] {
                [c] => Ok(Self::constant(c)),
                _ => Err(arity_err("1")),
            },
            "power" => match nums[..] {
                [p] => Ok(Self::power(p)),
                _ => Err(arity_err("1")),
            },
            "spower" => match nums[..] {
                [p, a] => Ok(Self::shifted_power(p, a)),
                _ => Err(arity_err("2")),
            },
            "exp" => match nums[..] {
                [k] => Ok(Self::exponential(k)),
                _ => Err(arity_err("1")),
            },
            "sin" => match nums[..] {
                [w] => Ok(Self::sine(w)),
                _ => Err(arity_err("1")),
            },
            "poly" => {
                if nums.is_empty() {
                    Err(arity_err("1 or more"))
                } else {
                    Ok(Self::polynomial(nums))
                }
            }
            other => Err(Error::Parse(format!("unknown function name `{other}`"))),
        }
    }
}

impl Differentiable for SmoothFunction {
    fn value(&self, t: f64) -> Result<f64> {
        let mut v = self.base_value(t)?;
        for b in &self.perturbations {
            if b.amplitude != 0.0 {
                v += b.value(t);
            }
        }
        Ok(v)
    }

    fn derivative(&self, t: f64, k: usize) -> Result<f64> {
        if k > K_MAX {
            return Err(Error::DerivativeOrder {
                requested: k,
                max: K_MAX,
            });
        }
        let mut v = self.base_derivative(t, k)?;
        for b in &self.perturbations {
            if b.amplitude != 0.0 {
                v += b.derivative(t, k);
            }
        }
        Ok(v)
    }
}

/// Returns a new function equal to `f` plus the bump.
///
/// Outside the bump support the result is pointwise identical to `f`;
/// a zero-amplitude bump leaves values and all derivatives bit-identical.
pub fn apply_bump(f: &SmoothFunction, bump: BumpPerturbation) -> SmoothFunction {
    f.with_bump(bump)
}

fn power_derivative(p: f64, t: f64, a: f64, k: usize) -> Result<f64> {
    let x = t - a;
    let is_nonneg_int = p >= 0.0 && p == p.floor();
    if !is_nonneg_int && x < 0.0 {
        return Err(Error::Domain(format!(
            "(t - {a})^{p} undefined for t = {t} < {a}"
        )));
    }
    // falling factorial p (p-1) ... (p-k+1)
    let mut coeff = 1.0;
    for j in 0..k {
        coeff *= p - j as f64;
    }
    if coeff == 0.0 {
        // integer p with k > p: derivative vanishes identically
        return Ok(0.0);
    }
    let expo = p - k as f64;
    if x == 0.0 {
        return match expo.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => Ok(0.0),
            Some(std::cmp::Ordering::Equal) => Ok(coeff),
            _ => Err(Error::Domain(format!(
                "derivative order {k} of (t - {a})^{p} is singular at t = {a}"
            ))),
        };
    }
    if is_nonneg_int {
        // Integer powers stay exact (and defined for negative x).
        Ok(coeff * x.powi(expo as i32))
    } else {
        Ok(coeff * x.powf(expo))
    }
}

/// Exact product f * g; derivatives via the Leibniz expansion of the
/// factors' exact derivatives.
pub struct Product<F, G> {
    pub f: F,
    pub g: G,
}

impl<F, G> Product<F, G> {
    pub fn new(f: F, g: G) -> Self {
        Self { f, g }
    }
}

impl<F: Differentiable, G: Differentiable> Differentiable for Product<F, G> {
    fn value(&self, t: f64) -> Result<f64> {
        Ok(self.f.value(t)? * self.g.value(t)?)
    }

    fn derivative(&self, t: f64, k: usize) -> Result<f64> {
        let mut acc = 0.0;
        for j in 0..=k {
            let c = crate::special::generalized_binomial(k as f64, j);
            acc += c * self.f.derivative(t, j)? * self.g.derivative(t, k - j)?;
        }
        Ok(acc)
    }
}

/// Exact linear combination c1 * f + c2 * g.
pub struct LinearCombination<F, G> {
    pub c1: f64,
    pub f: F,
    pub c2: f64,
    pub g: G,
}

impl<F, G> LinearCombination<F, G> {
    pub fn new(c1: f64, f: F, c2: f64, g: G) -> Self {
        Self { c1, f, c2, g }
    }
}

impl<F: Differentiable, G: Differentiable> Differentiable for LinearCombination<F, G> {
    fn value(&self, t: f64) -> Result<f64> {
        Ok(self.c1 * self.f.value(t)? + self.c2 * self.g.value(t)?)
    }

    fn derivative(&self, t: f64, k: usize) -> Result<f64> {
        Ok(self.c1 * self.f.derivative(t, k)? + self.c2 * self.g.derivative(t, k)?)
    }
}

impl<T: Differentiable + ?Sized> Differentiable for &T {
    fn value(&self, t: f64) -> Result<f64> {
        (**self).value(t)
    }

    fn derivative(&self, t: f64, k: usize) -> Result<f64> {
        (**self).derivative(t, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_values_and_derivatives() {
        let f = SmoothFunction::power(2.0);
        assert_eq!(f.derivative(3.0, 1).unwrap(), 6.0);
        assert_eq!(f.derivative(3.0, 2).unwrap(), 2.0);
        assert_eq!(f.derivative(3.0, 3).unwrap(), 0.0);

        let c = SmoothFunction::constant(5.0);
        assert_eq!(c.derivative(17.3, 1).unwrap(), 0.0);
        assert_eq!(c.value(-2.0).unwrap(), 5.0);

        let e = SmoothFunction::exponential(1.0);
        let want = 1.0_f64.exp();
        assert!((e.derivative(1.0, 3).unwrap() - want).abs() <= 1e-15);

        let s = SmoothFunction::sine(2.0);
        // d/dt sin(2t) = 2 cos(2t)
        let got = s.derivative(0.7, 1).unwrap();
        assert!((got - 2.0 * (1.4_f64).cos()).abs() <= 1e-14);

        let p = SmoothFunction::polynomial(vec![1.0, -2.0, 3.0]);
        // 3t^2 - 2t + 1; f''(t) = 6
        assert_eq!(p.derivative(0.5, 2).unwrap(), 6.0);
        assert_eq!(p.value(2.0).unwrap(), 9.0);
    }

    #[test]
    fn shifted_power_domain() {
        let f = SmoothFunction::shifted_power(0.5, 1.0);
        assert!(f.value(0.5).is_err());
        assert!((f.value(2.0).unwrap() - 1.0).abs() <= 1e-15);
        // integer shifted powers are defined everywhere
        let g = SmoothFunction::shifted_power(2.0, 1.0);
        assert_eq!(g.value(0.0).unwrap(), 1.0);
        assert_eq!(g.derivative(0.0, 1).unwrap(), -2.0);
    }

    #[test]
    fn derivative_order_capped() {
        let f = SmoothFunction::power(2.0);
        assert!(f.derivative(1.0, K_MAX).is_ok());
        assert!(matches!(
            f.derivative(1.0, K_MAX + 1),
            Err(Error::DerivativeOrder { .. })
        ));
    }

    #[test]
    fn finite_difference_consistency_across_orders() {
        // d/dt of the (k-1)-th derivative matches the k-th derivative to
        // 1e-6 relative at step 1e-5.
        let h = 1e-5;
        let fns = [
            SmoothFunction::power(3.0),
            SmoothFunction::exponential(1.0),
            SmoothFunction::sine(1.0),
            SmoothFunction::polynomial(vec![0.5, 1.0, -1.0, 0.25]),
            SmoothFunction::shifted_power(2.5, -1.0),
        ];
        for f in &fns {
            for k in 1..=4usize {
                for t in [0.7, 1.3, 2.1] {
                    let fd = (f.derivative(t + h, k - 1).unwrap()
                        - f.derivative(t - h, k - 1).unwrap())
                        / (2.0 * h);
                    let exact = f.derivative(t, k).unwrap();
                    let scale = exact.abs().max(1.0);
                    assert!(
                        ((fd - exact) / scale).abs() <= 1e-6,
                        "{} k={k} t={t}: fd={fd} exact={exact}",
                        f.describe()
                    );
                }
            }
        }
    }

    #[test]
    fn bump_peak_and_support() {
        let b = BumpPerturbation::new(0.5, 0.1, 0.7).unwrap();
        assert_eq!(b.value(0.5), 0.7);
        assert_eq!(b.value(0.3), 0.0); // center - 2*radius
        assert_eq!(b.value(0.6), 0.0); // exact support endpoint
        assert!(b.value(0.55) > 0.0);
    }

    #[test]
    fn bump_derivatives_vanish_at_support_endpoints() {
        let b = BumpPerturbation::new(1.0, 0.25, 0.3).unwrap();
        for k in 0..=4 {
            for t in [0.75, 1.25] {
                assert!(
                    b.derivative(t, k).abs() <= 1e-12,
                    "order {k} at endpoint {t}"
                );
            }
            // and well outside
            assert_eq!(b.derivative(0.0, k), 0.0);
        }
    }

    #[test]
    fn bump_first_derivative_accuracy() {
        // compare the stencil derivative with the analytic first
        // derivative of exp(1 - 1/(1-s^2))
        let b = BumpPerturbation::new(0.0, 1.0, 1.0).unwrap();
        for s in [-0.6, -0.2, 0.3, 0.5] {
            let u = 1.0 - s * s;
            let analytic = (1.0 - 1.0 / u).exp() * (-2.0 * s / (u * u));
            let got = b.derivative(s, 1);
            assert!(
                (got - analytic).abs() <= 1e-8,
                "s={s}: got {got}, want {analytic}"
            );
        }
    }

    #[test]
    fn zero_amplitude_bump_is_identity() {
        let f = SmoothFunction::sine(1.0);
        let g = f.with_bump(BumpPerturbation::new(0.5, 0.1, 0.0).unwrap());
        for i in 0..50 {
            let t = 0.05 * i as f64;
            assert_eq!(f.value(t).unwrap().to_bits(), g.value(t).unwrap().to_bits());
            for k in 0..=4 {
                assert_eq!(
                    f.derivative(t, k).unwrap().to_bits(),
                    g.derivative(t, k).unwrap().to_bits()
                );
            }
        }
    }

    #[test]
    fn apply_bump_adds_inside_only() {
        let f = SmoothFunction::power(2.0);
        let b = BumpPerturbation::new(0.5, 0.1, 0.25).unwrap();
        let g = apply_bump(&f, b);
        assert_eq!(g.value(0.3).unwrap(), f.value(0.3).unwrap());
        assert_eq!(g.value(0.5).unwrap(), f.value(0.5).unwrap() + 0.25);
    }

    #[test]
    fn product_leibniz_expansion() {
        // (t * t^2)''' = 6; product of power(1) and power(2)
        let p = Product::new(SmoothFunction::power(1.0), SmoothFunction::power(2.0));
        assert!((p.derivative(1.7, 3).unwrap() - 6.0).abs() <= 1e-12);
        let cubic = SmoothFunction::power(3.0);
        for t in [0.5, 1.0, 2.0] {
            for k in 0..=4 {
                let want = cubic.derivative(t, k).unwrap();
                let got = p.derivative(t, k).unwrap();
                assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn linear_combination_exact() {
        let l = LinearCombination::new(
            2.0,
            SmoothFunction::power(2.0),
            -3.0,
            SmoothFunction::exponential(1.0),
        );
        let t = 1.2;
        let want = 2.0 * 2.0 * t - 3.0 * t.exp();
        assert!((l.derivative(t, 1).unwrap() - want).abs() <= 1e-14);
    }

    #[test]
    fn descriptor_round_trip() {
        for d in ["const:5", "power:2", "spower:0.5,1", "exp:1", "sin:2", "poly:1,-2,3"] {
            let f = SmoothFunction::parse(d).unwrap();
            assert_eq!(f.describe(), d.replace("spower:0.5,1", "spower:0.5,1"));
        }
        assert!(SmoothFunction::parse("power").is_err());
        assert!(SmoothFunction::parse("power:a").is_err());
        assert!(SmoothFunction::parse("tan:1").is_err());
    }
}
