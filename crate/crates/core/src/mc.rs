//! Reproducible chunked Monte Carlo estimation.
//!
//! Paths are grouped into fixed-size chunks. Chunk `k` draws from ChaCha8
//! stream `k` under the configured seed, so every chunk's samples depend only
//! on `(seed, chunk_size, k)`. Chunks may run on any number of rayon workers;
//! their partial moments are merged sequentially in chunk order, which makes
//! the final estimate bitwise independent of the thread count.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

/// Source of the primitive variates a path sampler needs.
pub trait RandomSource {
    /// Uniform on the open interval `(0, 1)`.
    fn uniform(&mut self) -> f64;
    fn standard_normal(&mut self) -> f64;
    /// Unit-rate exponential.
    fn exp1(&mut self) -> f64;
}

#[derive(Debug, Clone, Copy)]
enum Draw {
    Uniform(f64),
    Normal(f64),
    Exp(f64),
}

/// Per-chunk random stream. In antithetic mode it records every draw of the
/// first pass and replays the mirrored draws on the second pass.
#[derive(Debug, Clone)]
pub struct PathRng {
    rng: ChaCha8Rng,
    record: bool,
    tape: Vec<Draw>,
    replay_pos: Option<usize>,
}

impl PathRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        PathRng {
            rng,
            record: false,
            tape: Vec::new(),
            replay_pos: None,
        }
    }

    fn start_recording(&mut self) {
        self.tape.clear();
        self.record = true;
        self.replay_pos = None;
    }

    fn start_replay(&mut self) {
        self.record = false;
        self.replay_pos = Some(0);
    }

    fn stop(&mut self) {
        self.record = false;
        self.replay_pos = None;
    }

    // Next mirrored draw of the recorded kind, if the second pass is still
    // following the first one.
    fn replayed(&mut self, kind: fn(Draw) -> Option<f64>) -> Option<f64> {
        let pos = self.replay_pos?;
        let draw = self.tape.get(pos).copied();
        match draw.and_then(kind) {
            Some(v) => {
                self.replay_pos = Some(pos + 1);
                Some(v)
            }
            None => {
                // Diverged from the tape: fall back to fresh draws.
                self.replay_pos = None;
                None
            }
        }
    }

    fn push(&mut self, d: Draw) {
        if self.record {
            self.tape.push(d);
        }
    }
}

impl RandomSource for PathRng {
    fn uniform(&mut self) -> f64 {
        if let Some(u) = self.replayed(|d| match d {
            Draw::Uniform(u) => Some(1.0 - u),
            _ => None,
        }) {
            return u;
        }
        let u: f64 = self.rng.sample(Open01);
        self.push(Draw::Uniform(u));
        u
    }

    fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.replayed(|d| match d {
            Draw::Normal(z) => Some(-z),
            _ => None,
        }) {
            return z;
        }
        let z: f64 = self.rng.sample(StandardNormal);
        self.push(Draw::Normal(z));
        z
    }

    fn exp1(&mut self) -> f64 {
        // Antithetic partner of E = -ln U is -ln(1 - U) = -ln(-expm1(-E)).
        if let Some(e) = self.replayed(|d| match d {
            Draw::Exp(e) => Some(-(-(-e).exp_m1()).ln()),
            _ => None,
        }) {
            return e;
        }
        let e: f64 = self.rng.sample(Exp1);
        self.push(Draw::Exp(e));
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub n_paths: u64,
    pub seed: u64,
    pub chunk_size: u64,
    /// Each observation becomes the average of a path and its mirrored path.
    pub antithetic: bool,
}

impl McConfig {
    pub fn new(n_paths: u64, seed: u64) -> Self {
        McConfig {
            n_paths,
            seed,
            chunk_size: DEFAULT_CHUNK_SIZE,
            antithetic: false,
        }
    }

    pub fn with_chunk_size(mut self, chunk_size: u64) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn with_antithetic(mut self, antithetic: bool) -> Self {
        self.antithetic = antithetic;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 2 {
            return invalid(format!("n_paths must be at least 2, got {}", self.n_paths));
        }
        if self.chunk_size < 1 {
            return invalid("chunk_size must be at least 1");
        }
        Ok(())
    }

    pub fn n_chunks(&self) -> u64 {
        self.n_paths.div_ceil(self.chunk_size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate<T> {
    pub mean: T,
    pub std_error: T,
    pub n: u64,
}

impl<T: Scalar> McEstimate<T> {
    /// A deterministic value carrying no sampling error.
    pub fn exact(value: T) -> Self {
        McEstimate {
            mean: value,
            std_error: T::zero(),
            n: 0,
        }
    }
}

// Running mean and centred second moment.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    #[inline]
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Moments) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        self.mean += delta * w;
        self.m2 += other.m2 + delta * delta * self.n as f64 * w;
        self.n = n;
    }

    fn finish<T: Scalar>(&self) -> McEstimate<T> {
        let var = if self.n > 1 {
            (self.m2 / (self.n - 1) as f64).max(0.0)
        } else {
            0.0
        };
        McEstimate {
            mean: T::lit(self.mean),
            std_error: T::lit((var / self.n as f64).sqrt()),
            n: self.n,
        }
    }
}

fn run_chunk<T, const N: usize, F>(config: &McConfig, chunk: u64, sampler: &F) -> Result<[Moments; N]>
where
    T: Scalar,
    F: Fn(&mut PathRng) -> [T; N],
{
    let start = chunk * config.chunk_size;
    let len = config.chunk_size.min(config.n_paths - start);
    let mut rng = PathRng::new(config.seed, chunk);
    let mut acc = [Moments::default(); N];
    let half = T::lit(0.5);

    for _ in 0..len {
        let sample = if config.antithetic {
            rng.start_recording();
            let first = sampler(&mut rng);
            rng.start_replay();
            let second = sampler(&mut rng);
            rng.stop();
            let mut avg = first;
            for (a, b) in avg.iter_mut().zip(second) {
                *a = (*a + b) * half;
            }
            avg
        } else {
            sampler(&mut rng)
        };
        for (m, x) in acc.iter_mut().zip(sample) {
            let x = x.as_f64();
            if !x.is_finite() {
                return Err(Error::NonFiniteSample { chunk });
            }
            m.push(x);
        }
    }
    Ok(acc)
}

/// Estimate the means of `N` jointly sampled quantities. All components of a
/// sample come from the same draws, so differences between components carry
/// common-random-number errors.
pub fn estimate_many<T, const N: usize, F>(config: &McConfig, sampler: F) -> Result<[McEstimate<T>; N]>
where
    T: Scalar,
    F: Fn(&mut PathRng) -> [T; N] + Sync,
{
    config.validate()?;
    let partials: Vec<Result<[Moments; N]>> = (0..config.n_chunks())
        .into_par_iter()
        .map(|chunk| run_chunk(config, chunk, &sampler))
        .collect();

    let mut total = [Moments::default(); N];
    for part in partials {
        let part = part?;
        for (t, p) in total.iter_mut().zip(part.iter()) {
            t.merge(p);
        }
    }
    Ok(total.map(|m| m.finish()))
}

pub fn estimate<T, F>(config: &McConfig, sampler: F) -> Result<McEstimate<T>>
where
    T: Scalar,
    F: Fn(&mut PathRng) -> T + Sync,
{
    let [e] = estimate_many(config, |rng| [sampler(rng)])?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(f)
    }

    #[test]
    fn constant_sampler() {
        let e = estimate(&McConfig::new(1000, 1), |_| 2.5_f64).unwrap();
        assert_eq!(e.mean, 2.5);
        assert_eq!(e.std_error, 0.0);
        assert_eq!(e.n, 1000);
    }

    #[test]
    fn standard_normal_mean() {
        let e = estimate(&McConfig::new(1_000_000, 99), |r| r.standard_normal()).unwrap();
        assert!(e.mean.abs() < 0.003, "{e:?}");
        assert!((e.std_error - 1e-3).abs() < 1e-5);
    }

    #[test]
    fn bitwise_identical_across_thread_counts() {
        let cfg = McConfig::new(300_001, 5).with_chunk_size(4096);
        let f = |r: &mut PathRng| [r.standard_normal().exp(), r.uniform() + r.exp1()];
        let one = in_pool(1, || estimate_many(&cfg, f).unwrap());
        let eight = in_pool(8, || estimate_many(&cfg, f).unwrap());
        for (a, b) in one.iter().zip(eight.iter()) {
            assert_eq!(a.mean.to_bits(), b.mean.to_bits());
            assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        }
    }

    #[test]
    fn stderr_halves_when_paths_quadruple() {
        let f = |r: &mut PathRng| r.exp1();
        let a = estimate(&McConfig::new(250_000, 8), f).unwrap();
        let b = estimate(&McConfig::new(1_000_000, 8), f).unwrap();
        let ratio = a.std_error / b.std_error;
        assert!((ratio / 2.0 - 1.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn non_finite_sample_names_chunk() {
        let cfg = McConfig::new(100, 1).with_chunk_size(10);
        let err = estimate(&cfg, |r| r.uniform().ln() * f64::INFINITY).unwrap_err();
        assert_eq!(err, Error::NonFiniteSample { chunk: 0 });
    }

    #[test]
    fn rejects_tiny_runs() {
        assert!(estimate(&McConfig::new(1, 1), |_| 0.0_f64).is_err());
        assert!(estimate(&McConfig::new(10, 1).with_chunk_size(0), |_| 0.0_f64).is_err());
    }

    #[test]
    fn antithetic_mirrors_draws() {
        // A linear function of a normal has zero variance under antithetic pairing.
        let cfg = McConfig::new(10_000, 4).with_antithetic(true);
        let e = estimate(&cfg, |r| 1.0 + r.standard_normal() + (r.uniform() - 0.5)).unwrap();
        assert!((e.mean - 1.0).abs() < 1e-12);
        assert!(e.std_error < 1e-12);

        // E = -ln U and its partner -ln(1-U) still average to 1.
        let e = estimate(&cfg.with_antithetic(true), |r| r.exp1()).unwrap();
        assert!((e.mean - 1.0).abs() < 3.0 * e.std_error + 1e-12);
    }

    #[test]
    fn streams_differ_by_chunk() {
        let mut a = PathRng::new(7, 0);
        let mut b = PathRng::new(7, 1);
        assert_ne!(a.uniform(), b.uniform());
        let mut c = PathRng::new(7, 0);
        let mut d = PathRng::new(7, 0);
        assert_eq!(c.standard_normal(), d.standard_normal());
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut left = Moments::default();
        let mut right = Moments::default();
        xs[..313].iter().for_each(|&x| left.push(x));
        xs[313..].iter().for_each(|&x| right.push(x));
        left.merge(&right);
        assert!((left.mean - whole.mean).abs() < 1e-12);
        assert!((left.m2 - whole.m2).abs() < 1e-9);
    }
}
