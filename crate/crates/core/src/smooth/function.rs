//! Real functions of one variable on a closed interval, with first derivatives.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::smooth::quadrature::{CumulativeIntegral, QuadratureMode};

/// Shared closure `T -> T`.
pub type Fn1<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Sampled functions need at least this many points.
pub const MIN_SAMPLES: usize = 16;

/// Finite-difference step as a fraction of the domain length.
const FD_DIVISOR: f64 = 1024.0;

/// A closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidFunction(format!(
                "domain [{lo}, {hi}] is not a proper interval"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn length(&self) -> T {
        self.hi - self.lo
    }

    /// Membership with a relative slack of `1e-12` of the length.
    pub fn contains(&self, x: T) -> bool {
        let slack = self.length() * T::tol(1e-12);
        x >= self.lo - slack && x <= self.hi + slack
    }

    pub fn clamp(&self, x: T) -> T {
        x.max(self.lo).min(self.hi)
    }

    /// `count` equally spaced points including both ends (`count >= 2`).
    pub fn samples(&self, count: usize) -> Vec<T> {
        let last = T::of_usize(count.max(2) - 1);
        (0..count.max(2))
            .map(|k| {
                if k + 1 == count.max(2) {
                    self.hi
                } else {
                    self.lo + self.length() * T::of_usize(k) / last
                }
            })
            .collect()
    }

    pub(crate) fn check(&self, x: T) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                value: x.to_f64_lossy(),
                lo: self.lo.to_f64_lossy(),
                hi: self.hi.to_f64_lossy(),
            })
        }
    }
}

/// Serializable description of a function. `Opaque` covers closures and integrals.
#[derive(Debug, Clone, PartialEq)]
pub enum Repr<T> {
    /// `sum coefficients[k] x^k`.
    Polynomial {
        coefficients: Vec<T>,
    },
    /// `amplitude sin(frequency x + phase) + offset`.
    Sine {
        amplitude: T,
        frequency: T,
        phase: T,
        offset: T,
    },
    /// `amplitude cos(frequency x + phase) + offset`.
    Cosine {
        amplitude: T,
        frequency: T,
        phase: T,
        offset: T,
    },
    /// `amplitude exp(rate x) + offset`.
    Exponential {
        amplitude: T,
        rate: T,
        offset: T,
    },
    /// Values on a uniform grid over the domain, natural cubic spline in between.
    Sampled {
        values: Vec<T>,
    },
    Opaque,
}

#[derive(Clone)]
enum Kind<T> {
    Closed(Repr<T>),
    Sampled(Arc<Spline<T>>),
    Custom { f: Fn1<T>, df: Option<Fn1<T>> },
    Integral(Arc<CumulativeIntegral<T>>),
}

/// A function on a closed interval.
///
/// Derivatives are analytic for closed forms, splines and integrals; closures without a
/// derivative fall back to fourth-order finite differences with step `domain / 1024`.
#[derive(Clone)]
pub struct ScalarFunction<T> {
    kind: Kind<T>,
    domain: Interval<T>,
}

impl<T: fmt::Debug> fmt::Debug for ScalarFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("ScalarFunction");
        match &self.kind {
            Kind::Closed(r) => d.field("repr", r),
            Kind::Sampled(s) => d.field("samples", &s.values.len()),
            Kind::Custom { df, .. } => d.field("custom", &if df.is_some() { "f, f'" } else { "f" }),
            Kind::Integral(_) => d.field("integral", &"tabulated"),
        };
        d.field("domain", &self.domain).finish()
    }
}

impl<T: Scalar> ScalarFunction<T> {
    fn closed(repr: Repr<T>, domain: Interval<T>) -> Self {
        Self {
            kind: Kind::Closed(repr),
            domain,
        }
    }

    pub fn constant(value: T, domain: Interval<T>) -> Self {
        Self::polynomial(vec![value], domain)
    }

    /// `a + b x`.
    pub fn linear(a: T, b: T, domain: Interval<T>) -> Self {
        Self::polynomial(vec![a, b], domain)
    }

    /// Coefficients in ascending order.
    pub fn polynomial(coefficients: Vec<T>, domain: Interval<T>) -> Self {
        Self::closed(Repr::Polynomial { coefficients }, domain)
    }

    pub fn sine(amplitude: T, frequency: T, phase: T, offset: T, domain: Interval<T>) -> Self {
        Self::closed(
            Repr::Sine {
                amplitude,
                frequency,
                phase,
                offset,
            },
            domain,
        )
    }

    pub fn cosine(amplitude: T, frequency: T, phase: T, offset: T, domain: Interval<T>) -> Self {
        Self::closed(
            Repr::Cosine {
                amplitude,
                frequency,
                phase,
                offset,
            },
            domain,
        )
    }

    pub fn exponential(amplitude: T, rate: T, offset: T, domain: Interval<T>) -> Self {
        Self::closed(
            Repr::Exponential {
                amplitude,
                rate,
                offset,
            },
            domain,
        )
    }

    /// Natural cubic spline through `values` on a uniform grid over `domain`.
    pub fn sampled(values: Vec<T>, domain: Interval<T>) -> Result<Self> {
        if values.len() < MIN_SAMPLES {
            return Err(Error::InvalidFunction(format!(
                "sampled function needs at least {MIN_SAMPLES} values, got {}",
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidFunction(format!("sample {k} is not finite")));
        }
        Ok(Self {
            kind: Kind::Sampled(Arc::new(Spline::new(values, domain))),
            domain,
        })
    }

    /// Samples `f` at `count` points and interpolates.
    pub fn sample_from(f: impl Fn(T) -> T, count: usize, domain: Interval<T>) -> Result<Self> {
        Self::sampled(domain.samples(count).into_iter().map(f).collect(), domain)
    }

    /// A closure; its derivative is approximated by finite differences.
    pub fn custom(f: impl Fn(T) -> T + Send + Sync + 'static, domain: Interval<T>) -> Self {
        Self {
            kind: Kind::Custom {
                f: Arc::new(f),
                df: None,
            },
            domain,
        }
    }

    pub fn custom_with_derivative(
        f: impl Fn(T) -> T + Send + Sync + 'static,
        df: impl Fn(T) -> T + Send + Sync + 'static,
        domain: Interval<T>,
    ) -> Self {
        Self {
            kind: Kind::Custom {
                f: Arc::new(f),
                df: Some(Arc::new(df)),
            },
            domain,
        }
    }

    /// `initial + integral_{lo}^{x} integrand`, tabulated once; the derivative is the integrand.
    pub fn antiderivative(
        integrand: impl Fn(T) -> T + Send + Sync + 'static,
        domain: Interval<T>,
        initial: T,
        mode: QuadratureMode,
    ) -> Self {
        Self {
            kind: Kind::Integral(Arc::new(CumulativeIntegral::new(
                Arc::new(integrand),
                domain,
                initial,
                mode,
            ))),
            domain,
        }
    }

    /// Rebuilds a function from its description.
    pub fn from_repr(repr: Repr<T>, domain: Interval<T>) -> Result<Self> {
        match repr {
            Repr::Sampled { values } => Self::sampled(values, domain),
            Repr::Opaque => Err(Error::InvalidFunction(
                "an opaque function cannot be rebuilt from its description".into(),
            )),
            closed => Ok(Self::closed(closed, domain)),
        }
    }

    pub fn repr(&self) -> Repr<T> {
        match &self.kind {
            Kind::Closed(r) => r.clone(),
            Kind::Sampled(s) => Repr::Sampled {
                values: s.values.clone(),
            },
            _ => Repr::Opaque,
        }
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    pub fn value(&self, x: T) -> T {
        match &self.kind {
            Kind::Closed(r) => closed_value(r, x),
            Kind::Sampled(s) => s.value(x),
            Kind::Custom { f, .. } => f(x),
            Kind::Integral(i) => i.value(x),
        }
    }

    pub fn derivative(&self, x: T) -> T {
        match &self.kind {
            Kind::Closed(r) => closed_derivative(r, x),
            Kind::Sampled(s) => s.derivative(x),
            Kind::Custom { df: Some(df), .. } => df(x),
            Kind::Custom { f, df: None } => finite_difference(&**f, x, self.domain),
            Kind::Integral(i) => i.derivative(x),
        }
    }

    /// Values at `count` equally spaced points of the domain.
    pub fn sample(&self, count: usize) -> Vec<T> {
        self.domain
            .samples(count)
            .into_iter()
            .map(|x| self.value(x))
            .collect()
    }

    /// `k f`, keeping closed forms closed.
    pub fn scale(&self, k: T) -> Self {
        self.affine(T::zero(), k)
    }

    /// `offset + factor f`, keeping closed forms closed.
    pub fn affine(&self, offset: T, factor: T) -> Self {
        let domain = self.domain;
        match &self.kind {
            Kind::Closed(r) => Self::closed(affine_repr(r, offset, factor), domain),
            Kind::Sampled(s) => Self {
                kind: Kind::Sampled(Arc::new(Spline::new(
                    s.values.iter().map(|v| offset + factor * *v).collect(),
                    domain,
                ))),
                domain,
            },
            _ => {
                let (a, b) = (self.clone(), self.clone());
                Self::custom_with_derivative(
                    move |x| offset + factor * a.value(x),
                    move |x| factor * b.derivative(x),
                    domain,
                )
            }
        }
    }
}

fn affine_repr<T: Scalar>(r: &Repr<T>, offset: T, factor: T) -> Repr<T> {
    match r.clone() {
        Repr::Polynomial { mut coefficients } => {
            for c in coefficients.iter_mut() {
                *c = *c * factor;
            }
            if coefficients.is_empty() {
                coefficients.push(T::zero());
            }
            coefficients[0] = coefficients[0] + offset;
            Repr::Polynomial { coefficients }
        }
        Repr::Sine {
            amplitude,
            frequency,
            phase,
            offset: o,
        } => Repr::Sine {
            amplitude: amplitude * factor,
            frequency,
            phase,
            offset: offset + o * factor,
        },
        Repr::Cosine {
            amplitude,
            frequency,
            phase,
            offset: o,
        } => Repr::Cosine {
            amplitude: amplitude * factor,
            frequency,
            phase,
            offset: offset + o * factor,
        },
        Repr::Exponential {
            amplitude,
            rate,
            offset: o,
        } => Repr::Exponential {
            amplitude: amplitude * factor,
            rate,
            offset: offset + o * factor,
        },
        other => other,
    }
}

fn closed_value<T: Scalar>(r: &Repr<T>, x: T) -> T {
    match r {
        Repr::Polynomial { coefficients } => coefficients
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + *c),
        Repr::Sine {
            amplitude,
            frequency,
            phase,
            offset,
        } => *amplitude * (*frequency * x + *phase).sin() + *offset,
        Repr::Cosine {
            amplitude,
            frequency,
            phase,
            offset,
        } => *amplitude * (*frequency * x + *phase).cos() + *offset,
        Repr::Exponential {
            amplitude,
            rate,
            offset,
        } => *amplitude * (*rate * x).exp() + *offset,
        Repr::Sampled { .. } | Repr::Opaque => unreachable!("not a closed form"),
    }
}

fn closed_derivative<T: Scalar>(r: &Repr<T>, x: T) -> T {
    match r {
        Repr::Polynomial { coefficients } => coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(T::zero(), |acc, (k, c)| acc * x + *c * T::of_usize(k)),
        Repr::Sine {
            amplitude,
            frequency,
            phase,
            ..
        } => *amplitude * *frequency * (*frequency * x + *phase).cos(),
        Repr::Cosine {
            amplitude,
            frequency,
            phase,
            ..
        } => -*amplitude * *frequency * (*frequency * x + *phase).sin(),
        Repr::Exponential {
            amplitude, rate, ..
        } => *amplitude * *rate * (*rate * x).exp(),
        Repr::Sampled { .. } | Repr::Opaque => unreachable!("not a closed form"),
    }
}

/// Fourth-order derivative estimate: central inside the domain, one-sided within two steps
/// of either end so that `f` is never evaluated outside.
pub(crate) fn finite_difference<T: Scalar>(f: &dyn Fn(T) -> T, x: T, domain: Interval<T>) -> T {
    let h = domain.length() / T::of(FD_DIVISOR);
    let two = h + h;
    let twelve_h = T::of(12.0) * h;
    if x - two >= domain.lo && x + two <= domain.hi {
        (f(x - two) - T::of(8.0) * f(x - h) + T::of(8.0) * f(x + h) - f(x + two)) / twelve_h
    } else {
        let step = if x - two < domain.lo { h } else { -h };
        let at = |k: f64| f(x + step * T::of(k));
        (T::of(-25.0) * at(0.0) + T::of(48.0) * at(1.0) - T::of(36.0) * at(2.0)
            + T::of(16.0) * at(3.0)
            - T::of(3.0) * at(4.0))
            / (T::of(12.0) * step)
    }
}

/// Natural cubic spline on a uniform grid.
struct Spline<T> {
    values: Vec<T>,
    second: Vec<T>,
    lo: T,
    h: T,
}

impl<T: Scalar> Spline<T> {
    fn new(values: Vec<T>, domain: Interval<T>) -> Self {
        let n = values.len();
        let h = domain.length() / T::of_usize(n - 1);
        // Thomas algorithm for M_{k-1} + 4 M_k + M_{k+1} = 6 (y_{k+1} - 2 y_k + y_{k-1}) / h^2.
        let mut second = vec![T::zero(); n];
        let inner = n - 2;
        let mut diag = vec![T::of(4.0); inner];
        let mut rhs: Vec<T> = (1..n - 1)
            .map(|k| T::of(6.0) * (values[k + 1] - values[k] - values[k] + values[k - 1]) / (h * h))
            .collect();
        for k in 1..inner {
            let w = T::one() / diag[k - 1];
            diag[k] = diag[k] - w;
            rhs[k] = rhs[k] - w * rhs[k - 1];
        }
        for k in (0..inner).rev() {
            let next = if k + 1 < inner {
                second[k + 2]
            } else {
                T::zero()
            };
            second[k + 1] = (rhs[k] - next) / diag[k];
        }
        Self {
            values,
            second,
            lo: domain.lo,
            h,
        }
    }

    fn locate(&self, x: T) -> (usize, T, T) {
        let last = self.values.len() - 2;
        let k = ((x - self.lo) / self.h)
            .floor()
            .to_f64_lossy()
            .max(0.0)
            .min(last as f64) as usize;
        let left = x - (self.lo + self.h * T::of_usize(k));
        (k, left, self.h - left)
    }

    fn value(&self, x: T) -> T {
        let (k, a, b) = self.locate(x);
        let (h, six) = (self.h, T::of(6.0));
        let (m0, m1) = (self.second[k], self.second[k + 1]);
        m0 * b * b * b / (six * h)
            + m1 * a * a * a / (six * h)
            + (self.values[k] / h - m0 * h / six) * b
            + (self.values[k + 1] / h - m1 * h / six) * a
    }

    fn derivative(&self, x: T) -> T {
        let (k, a, b) = self.locate(x);
        let (h, two, six) = (self.h, T::of(2.0), T::of(6.0));
        let (m0, m1) = (self.second[k], self.second[k + 1]);
        -m0 * b * b / (two * h) + m1 * a * a / (two * h) - (self.values[k] / h - m0 * h / six)
            + (self.values[k + 1] / h - m1 * h / six)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval<f64> {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn closed_forms_and_derivatives() {
        let p = ScalarFunction::polynomial(vec![1.0, -2.0, 3.0], unit());
        assert_eq!(p.value(2.0), 9.0);
        assert_eq!(p.derivative(2.0), 10.0);
        let s = ScalarFunction::sine(2.0, 3.0, 0.5, 1.0, unit());
        assert!((s.derivative(0.3) - 6.0 * (0.9f64 + 0.5).cos()).abs() < 1e-15);
        let e = ScalarFunction::exponential(2.0, -1.0, 0.0, unit());
        assert!((e.derivative(0.5) + 2.0 * (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn finite_differences_are_fourth_order() {
        let f = ScalarFunction::custom(|x: f64| x.sin(), unit());
        for x in [0.0, 0.001, 0.5, 0.999, 1.0] {
            assert!((f.derivative(x) - x.cos()).abs() < 1e-11, "{x}");
        }
    }

    #[test]
    fn spline_reproduces_lines_and_converges() {
        let d = unit();
        let line = ScalarFunction::sample_from(|x| 2.0 * x - 1.0, 16, d).unwrap();
        assert!((line.value(0.37) - (-0.26)).abs() < 1e-14);
        assert!((line.derivative(0.91) - 2.0).abs() < 1e-13);
        let coarse = ScalarFunction::sample_from(|x: f64| x.sin(), 33, d).unwrap();
        let fine = ScalarFunction::sample_from(|x: f64| x.sin(), 65, d).unwrap();
        let err = |f: &ScalarFunction<f64>| {
            (0..100)
                .map(|k| 0.1 + 0.008 * k as f64)
                .map(|x| (f.value(x) - x.sin()).abs())
                .fold(0.0, f64::max)
        };
        assert!(err(&fine) < err(&coarse) / 8.0);
        assert!(ScalarFunction::sampled(vec![0.0; 15], d).is_err());
    }

    #[test]
    fn affine_keeps_representation() {
        let c = ScalarFunction::cosine(1.0, 1.0, 0.0, 2.0, unit()).affine(1.0, 3.0);
        assert_eq!(
            c.repr(),
            Repr::Cosine {
                amplitude: 3.0,
                frequency: 1.0,
                phase: 0.0,
                offset: 7.0
            }
        );
        let rebuilt = ScalarFunction::from_repr(c.repr(), unit()).unwrap();
        assert_eq!(rebuilt.value(0.25), c.value(0.25));
    }

    #[test]
    fn interval_samples_hit_both_ends() {
        let s = Interval::new(0.1, 1.0).unwrap().samples(7);
        assert_eq!(s[0], 0.1);
        assert_eq!(s[6], 1.0);
        assert!(Interval::new(1.0, 1.0).is_err());
    }
}
