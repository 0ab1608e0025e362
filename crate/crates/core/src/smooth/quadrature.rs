//! Adaptive Simpson quadrature and tabulated antiderivatives.

use crate::scalar::Scalar;
use crate::smooth::function::{Fn1, Interval};

/// Absolute tolerance of every integral over a whole domain.
pub const QUADRATURE_TOL: f64 = 1e-10;

const MAX_DEPTH: u32 = 48;
/// Evaluation budget of one call; noisy integrands stop refining here instead of recursing
/// to full depth everywhere.
const MAX_EVALUATIONS: usize = 200_000;
/// Panels of a tabulated antiderivative.
const PANELS: usize = 256;

/// How an interval is fed to the Simpson rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadratureMode {
    #[default]
    Smooth,
    /// For square roots of radicands that may vanish at an end of the interval: integrates
    /// after the substitution `x = a + (b - a)(3 s^2 - 2 s^3)`, whose Jacobian vanishes at
    /// both ends and smooths out `sqrt(x - a)` behaviour.
    EndpointSingular,
}

/// `integral_a^b f` by adaptive Simpson with absolute tolerance `tol`.
pub fn integrate<T: Scalar>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> T {
    integrate_with(f, a, b, tol, QuadratureMode::Smooth)
}

pub fn integrate_with<T: Scalar>(
    f: impl Fn(T) -> T,
    a: T,
    b: T,
    tol: T,
    mode: QuadratureMode,
) -> T {
    if a == b {
        return T::zero();
    }
    match mode {
        QuadratureMode::Smooth => simpson(&f, a, b, tol),
        QuadratureMode::EndpointSingular => {
            let (two, three, six) = (T::of(2.0), T::of(3.0), T::of(6.0));
            let w = b - a;
            let g = |s: T| {
                let x = a + w * s * s * (three - two * s);
                f(x) * w * six * s * (T::one() - s)
            };
            simpson(&g, T::zero(), T::one(), tol)
        }
    }
}

fn simpson<T: Scalar>(f: &dyn Fn(T) -> T, a: T, b: T, tol: T) -> T {
    let half = T::of(0.5);
    let m = (a + b) * half;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / T::of(6.0) * (fa + T::of(4.0) * fm + fb);
    let mut budget = MAX_EVALUATIONS;
    refine(
        f,
        [a, m, b],
        [fa, fm, fb],
        whole,
        tol,
        MAX_DEPTH,
        &mut budget,
    )
}

fn refine<T: Scalar>(
    f: &dyn Fn(T) -> T,
    [a, m, b]: [T; 3],
    [fa, fm, fb]: [T; 3],
    whole: T,
    tol: T,
    depth: u32,
    budget: &mut usize,
) -> T {
    let half = T::of(0.5);
    let (lm, rm) = ((a + m) * half, (m + b) * half);
    let (flm, frm) = (f(lm), f(rm));
    *budget = budget.saturating_sub(2);
    let six = T::of(6.0);
    let four = T::of(4.0);
    let left = (m - a) / six * (fa + four * flm + fm);
    let right = (b - m) / six * (fm + four * frm + fb);
    let delta = left + right - whole;
    let fifteen = T::of(15.0);
    let collapsed = lm == a || lm == m || rm == m || rm == b;
    let exhausted = depth == 0 || *budget == 0 || collapsed;
    if exhausted || delta.abs() <= fifteen * tol {
        return left + right + delta / fifteen;
    }
    refine(
        f,
        [a, lm, m],
        [fa, flm, fm],
        left,
        tol * half,
        depth - 1,
        budget,
    ) + refine(
        f,
        [m, rm, b],
        [fm, frm, fb],
        right,
        tol * half,
        depth - 1,
        budget,
    )
}

/// `initial + integral_{lo}^x integrand`, tabulated on uniform panels; evaluation adds a
/// local integral from the nearest panel start.
pub(crate) struct CumulativeIntegral<T> {
    integrand: Fn1<T>,
    domain: Interval<T>,
    mode: QuadratureMode,
    tol: T,
    prefix: Vec<T>,
}

impl<T: Scalar> CumulativeIntegral<T> {
    pub(crate) fn new(
        integrand: Fn1<T>,
        domain: Interval<T>,
        initial: T,
        mode: QuadratureMode,
    ) -> Self {
        let tol = T::tol(QUADRATURE_TOL) / T::of_usize(PANELS);
        let mut me = Self {
            integrand,
            domain,
            mode,
            tol,
            prefix: Vec::with_capacity(PANELS + 1),
        };
        let mut acc = initial;
        me.prefix.push(acc);
        for k in 0..PANELS {
            let (a, b) = (me.node(k), me.node(k + 1));
            acc = acc + integrate_with(&*me.integrand, a, b, tol, mode);
            me.prefix.push(acc);
        }
        me
    }

    fn node(&self, k: usize) -> T {
        if k == PANELS {
            self.domain.hi
        } else {
            self.domain.lo + self.domain.length() * T::of_usize(k) / T::of_usize(PANELS)
        }
    }

    pub(crate) fn value(&self, x: T) -> T {
        let rel = ((x - self.domain.lo) / self.domain.length() * T::of_usize(PANELS))
            .round()
            .to_f64_lossy()
            .max(0.0)
            .min(PANELS as f64) as usize;
        let start = self.node(rel);
        self.prefix[rel] + integrate_with(&*self.integrand, start, x, self.tol, self.mode)
    }

    pub(crate) fn derivative(&self, x: T) -> T {
        (self.integrand)(x)
    }
}
