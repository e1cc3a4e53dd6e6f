//! Synthetic dataset generators with labeled ground truth.
//!
//! All generators are pure functions of their arguments. Randomness comes
//! from SplitMix64 (Steele, Lea & Flood's published constants), so the
//! same seed reproduces the same bytes on every platform; Gaussian
//! variates use the Box-Muller transform.

use crate::error::{Error, Result};
use crate::points::PointSet;

/// SplitMix64: `state += 0x9E3779B97F4A7C15` per step, output mixed with
/// two xor-shift-multiply rounds.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_usize_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        // Modulo bias is irrelevant at the bounds used here (ll << 2^64).
        (self.next_u64() % bound as u64) as usize
    }

    /// One pair of independent standard normal variates (Box-Muller).
    pub fn next_gaussian_pair(&mut self) -> (f64, f64) {
        // 1 - u places the value in (0, 1], keeping ln finite.
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Fills `out` with standard normal variates, consuming whole pairs.
    pub fn fill_gaussian(&mut self, out: &mut [f64]) {
        let mut i = 0;
        while i + 1 < out.len() {
            let (a, b) = self.next_gaussian_pair();
            out[i] = a;
            out[i + 1] = b;
            i += 2;
        }
        if i < out.len() {
            out[i] = self.next_gaussian_pair().0;
        }
    }
}

/// `n` points uniform on the surface of the `(d-1)`-sphere of the given
/// radius; ground truth labels are all one cluster.
pub fn gen_sphere(n: usize, d: usize, radius: f64, seed: u64) -> Result<(PointSet, Vec<i64>)> {
    if n < 1 {
        return Err(Error::invalid_argument("need at least one point"));
    }
    if d < 2 {
        return Err(Error::invalid_argument(
            "sphere generator needs dimension at least 2",
        ));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid_argument("radius must be positive"));
    }
    let mut rng = SplitMix64::new(seed);
    let mut coords = Vec::with_capacity(n * d);
    let mut row = vec![0.0; d];
    for _ in 0..n {
        loop {
            rng.fill_gaussian(&mut row);
            let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                coords.extend(row.iter().map(|x| x / norm * radius));
                break;
            }
        }
    }
    let points = PointSet::new(coords, d)?;
    Ok((points, vec![0; n]))
}

/// Two concentric spheres; the first `n_inner` points lie on the inner
/// sphere (label 0), the rest on the outer (label 1).
pub fn gen_two_spheres(
    n_inner: usize,
    n_outer: usize,
    d: usize,
    r_inner: f64,
    r_outer: f64,
    seed: u64,
) -> Result<(PointSet, Vec<i64>)> {
    if r_inner >= r_outer || !r_inner.is_finite() {
        return Err(Error::invalid_argument(
            "inner radius must be smaller than outer radius",
        ));
    }
    let mut seeder = SplitMix64::new(seed);
    let inner_seed = seeder.next_u64();
    let outer_seed = seeder.next_u64();
    let (inner, _) = gen_sphere(n_inner, d, r_inner, inner_seed)?;
    let (outer, _) = gen_sphere(n_outer, d, r_outer, outer_seed)?;
    let points = inner.concat(&outer)?;
    let mut labels = vec![0i64; n_inner];
    labels.extend(std::iter::repeat_n(1i64, n_outer));
    Ok((points, labels))
}

/// `k` isotropic Gaussian blobs of `n_per` points each. Blob centers sit
/// on the first coordinate axis at multiples of `separation`, so centers
/// are pairwise at least `separation` apart.
pub fn gen_gaussian_blobs(
    k: usize,
    n_per: usize,
    d: usize,
    spread: f64,
    separation: f64,
    seed: u64,
) -> Result<(PointSet, Vec<i64>)> {
    if k < 1 || n_per < 1 || d < 1 {
        return Err(Error::invalid_argument(
            "blob generator needs k >= 1, n_per >= 1, d >= 1",
        ));
    }
    if !(spread >= 0.0 && spread.is_finite() && separation >= 0.0 && separation.is_finite()) {
        return Err(Error::invalid_argument(
            "spread and separation must be finite and non-negative",
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let mut coords = Vec::with_capacity(k * n_per * d);
    let mut labels = Vec::with_capacity(k * n_per);
    let mut row = vec![0.0; d];
    for blob in 0..k {
        let center0 = blob as f64 * separation;
        for _ in 0..n_per {
            rng.fill_gaussian(&mut row);
            coords.push(center0 + spread * row[0]);
            coords.extend(row[1..].iter().map(|x| spread * x));
            labels.push(blob as i64);
        }
    }
    let points = PointSet::new(coords, d)?;
    Ok((points, labels))
}
