#![allow(dead_code)]

use rand::Rng;
use rivulet::{DynamicGraph, Model, NodeId, Sign, WeightUpdate};

/// A random stream of `len` updates that is valid when replayed on `g`:
/// increases never push an IC probability past 1, decreases never go below
/// zero, and a quarter of decreases delete the edge outright. LT streams
/// also touch self-weights.
pub fn random_stream<R: Rng>(g: &DynamicGraph, len: usize, rng: &mut R) -> Vec<WeightUpdate> {
    let mut g = g.clone();
    let n = g.n() as NodeId;
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v && g.model() == Model::Ic {
            continue;
        }
        let w = if u == v { g.self_weight(v) } else { g.weight(u, v) };
        let room = match g.model() {
            Model::Ic => 1.0 - w,
            Model::Lt => f64::INFINITY,
        };
        let increase = w <= 0.0 || (room > 1e-6 && rng.random_bool(0.5));
        let (sign, delta) = if increase {
            let d = match g.model() {
                Model::Ic => room * rng.random_range(0.1..=1.0),
                Model::Lt => rng.random_range(0.1..2.0),
            };
            (Sign::Increase, d)
        } else if rng.random_bool(0.25) {
            (Sign::Decrease, w)
        } else {
            (Sign::Decrease, w * rng.random_range(0.2..0.9))
        };
        let upd = WeightUpdate::new(out.len() as u64 + 1, u, v, sign, delta);
        g.apply_update(&upd).expect("generated update is valid");
        out.push(upd);
    }
    out
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

/// Large-sample KS critical value at level `alpha`:
/// `sqrt(-ln(alpha/2)/2) * sqrt((n+m)/(n m))`.
pub fn ks_critical(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * (((n + m) as f64) / ((n * m) as f64)).sqrt()
}

pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
