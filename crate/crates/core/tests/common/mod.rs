#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thedra::{build_tnet, DesignData, RevolutionData, TranslationalData};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn signed(rng: &mut StdRng, lo: f64, hi: f64, p_negative: f64) -> f64 {
    let v = rng.gen_range(lo..hi);
    if rng.gen_bool(p_negative) {
        -v
    } else {
        v
    }
}

/// Random angles with `|eta|, |theta| <= max_angle`, written as `(phi, psi)`.
pub fn random_angles(
    rng: &mut StdRng,
    m: usize,
    max_angle: f64,
    molding: bool,
) -> (Vec<f64>, Vec<f64>) {
    let (mut phi, mut psi) = (Vec::new(), Vec::new());
    let mut prev = 0.0;
    for _ in 0..m {
        let eta = rng.gen_range(-max_angle..max_angle);
        let theta = if molding {
            eta
        } else {
            rng.gen_range(-max_angle..max_angle)
        };
        psi.push(prev + eta);
        prev += eta + theta;
        phi.push(prev);
    }
    (phi, psi)
}

/// A valid design whose `g_ij` are sign-consistent by construction.
pub fn random_design_with(rng: &mut StdRng, m: usize, n: usize, molding: bool) -> DesignData<f64> {
    loop {
        let (phi, psi) = random_angles(rng, m, 1.0, molding);
        let f0: Vec<f64> = (0..n).map(|_| signed(rng, 0.2, 1.0, 0.2)).collect();
        let z: Vec<f64> = std::iter::once(0.0)
            .chain((0..n).scan(0.0, |acc, _| {
                *acc += signed(rng, 0.3, 1.5, 0.25);
                Some(*acc)
            }))
            .collect();
        // g_ij = g_i0 + F_j C_{i-1} sin(eta_i + theta_i) / cos(theta_i)
        let cum_f: Vec<f64> = std::iter::once(0.0)
            .chain(f0.iter().scan(0.0, |acc, f| {
                *acc += f;
                Some(*acc)
            }))
            .collect();
        let f_max = cum_f.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let mut c = 1.0;
        let mut prev_phi = 0.0;
        let mut g0 = Vec::new();
        for i in 0..m {
            let eta: f64 = psi[i] - prev_phi;
            let theta: f64 = phi[i] - psi[i];
            let drift = f_max * c * (eta + theta).sin().abs() / theta.cos();
            g0.push(signed(rng, drift + 0.3, drift + 1.2, 0.3));
            c *= eta.cos() / theta.cos();
            prev_phi = phi[i];
        }
        let d = DesignData::new(phi, psi, f0, g0, z).expect("shapes");
        if build_tnet(&d).is_ok() {
            return d;
        }
    }
}

pub fn random_design(rng: &mut StdRng, max_m: usize, max_n: usize) -> DesignData<f64> {
    let m = rng.gen_range(2..=max_m);
    let n = rng.gen_range(2..=max_n);
    random_design_with(rng, m, n, false)
}

pub fn random_translational(rng: &mut StdRng, m: usize, n: usize) -> TranslationalData<f64> {
    let walk = |rng: &mut StdRng, k: usize, lo: f64, hi: f64, p: f64| -> Vec<f64> {
        std::iter::once(0.0)
            .chain((0..k).scan(0.0, |acc, _| {
                *acc += signed(rng, lo, hi, p);
                Some(*acc)
            }))
            .collect()
    };
    let x_row = walk(rng, m, 0.1, 1.0, 0.5);
    let y = walk(rng, m, 0.3, 1.5, 0.2);
    let x_col = walk(rng, n, 0.2, 1.0, 0.2);
    let z = walk(rng, n, 0.3, 1.5, 0.3);
    TranslationalData::new(x_row, x_col, y, z).expect("generic generators")
}

pub fn random_revolution(rng: &mut StdRng, m: usize, n: usize) -> RevolutionData<f64> {
    let mut radii = vec![rng.gen_range(0.5..1.5)];
    for _ in 0..n {
        let last = radii[radii.len() - 1];
        radii.push(last + rng.gen_range(0.2..0.8));
    }
    let phi = (1..=m)
        .scan(0.0, |acc, _| {
            *acc += rng.gen_range(0.2..1.2);
            Some(*acc)
        })
        .collect();
    let z = std::iter::once(0.0)
        .chain((0..n).scan(0.0, |acc, _| {
            *acc += signed(rng, 0.3, 1.2, 0.2);
            Some(*acc)
        }))
        .collect();
    RevolutionData::new(radii, phi, z).expect("valid revolution data")
}

/// Interior samples `t_min + (k + 1/2) / count * (t_max - t_min)`; an unbounded upper end is
/// replaced by `fallback`.
pub fn interior_samples(t_min: f64, t_max: f64, count: usize, fallback: f64) -> Vec<f64> {
    let hi = if t_max.is_finite() { t_max } else { fallback };
    (0..count)
        .map(|k| t_min + (k as f64 + 0.5) / count as f64 * (hi - t_min))
        .collect()
}
