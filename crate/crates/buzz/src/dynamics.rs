//! Signal generators: noisy sines and Sel'kov glycolysis trajectories.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{BuzzError, Result};

/// Uniformly sampled scalar signal tagged with the parameter that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub values: Vec<f64>,
    pub dt: f64,
    pub t0: f64,
    pub label: f64,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |i| self.t0 + i as f64 * self.dt)
    }
}

/// `amplitude * sin(i * dt) + u_i`, `u_i ~ U[-noise_amp, noise_amp]`, seeded.
pub fn sine_series(amplitude: f64, n: usize, dt: f64, noise_amp: f64, seed: u64) -> Result<TimeSeries> {
    if n == 0 {
        return Err(BuzzError::param("a series needs at least one sample"));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(BuzzError::param(format!("sample spacing {dt} must be positive")));
    }
    if !(noise_amp >= 0.0 && noise_amp.is_finite()) {
        return Err(BuzzError::param(format!("noise amplitude {noise_amp} must be non-negative")));
    }
    if !amplitude.is_finite() {
        return Err(BuzzError::param("amplitude must be finite"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..n)
        .map(|i| {
            let noise = if noise_amp > 0.0 {
                rng.gen_range(-noise_amp..=noise_amp)
            } else {
                0.0
            };
            amplitude * (i as f64 * dt).sin() + noise
        })
        .collect();
    Ok(TimeSeries {
        values,
        dt,
        t0: 0.0,
        label: amplitude,
    })
}

/// One classical fourth-order Runge-Kutta step of `y' = f(t, y)`.
pub fn rk4_step<const N: usize>(
    f: &impl Fn(f64, &[f64; N]) -> [f64; N],
    t: f64,
    y: &[f64; N],
    h: f64,
) -> [f64; N] {
    let shift = |base: &[f64; N], k: &[f64; N], c: f64| {
        let mut out = *base;
        for i in 0..N {
            out[i] += c * k[i];
        }
        out
    };
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, &shift(y, &k1, h / 2.0));
    let k3 = f(t + h / 2.0, &shift(y, &k2, h / 2.0));
    let k4 = f(t + h, &shift(y, &k3, h));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Sel'kov model `x' = -x + a y + x² y`, `y' = b - a y - x² y` and its sampling protocol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SelkovParams {
    pub a: f64,
    pub b: f64,
    pub x0: f64,
    pub y0: f64,
    pub t_max: f64,
    /// Samples on `[0, t_max]`, endpoints included.
    pub n_samples: usize,
    /// Leading samples dropped from both coordinates.
    pub burn_in: usize,
    /// RK4 steps taken between consecutive samples.
    pub substeps: usize,
}

impl Default for SelkovParams {
    fn default() -> Self {
        SelkovParams {
            a: 0.1,
            b: 0.6,
            x0: 0.0,
            y0: 0.0,
            t_max: 500.0,
            n_samples: 500,
            burn_in: 50,
            substeps: 16,
        }
    }
}

impl SelkovParams {
    pub fn with_b(b: f64) -> Self {
        SelkovParams {
            b,
            ..Self::default()
        }
    }

    /// The unique fixed point `(b, b / (a + b²))`.
    pub fn equilibrium(&self) -> (f64, f64) {
        (self.b, self.b / (self.a + self.b * self.b))
    }

    pub fn sample_dt(&self) -> f64 {
        self.t_max / (self.n_samples - 1) as f64
    }

    fn check(&self) -> Result<()> {
        if self.n_samples < 2 || self.burn_in >= self.n_samples {
            return Err(BuzzError::param(format!(
                "need n_samples >= 2 and burn_in < n_samples, got {} and {}",
                self.n_samples, self.burn_in
            )));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(BuzzError::param(format!("t_max {} must be positive", self.t_max)));
        }
        if self.substeps == 0 {
            return Err(BuzzError::param("substeps must be at least 1"));
        }
        Ok(())
    }
}

/// Integrates the Sel'kov system and returns the post-burn-in `x` and `y` series.
pub fn selkov_trajectory(params: &SelkovParams) -> Result<(TimeSeries, TimeSeries)> {
    params.check()?;
    let (a, b) = (params.a, params.b);
    let rhs = move |_t: f64, s: &[f64; 2]| {
        let x2y = s[0] * s[0] * s[1];
        [-s[0] + a * s[1] + x2y, b - a * s[1] - x2y]
    };
    let dt = params.sample_dt();
    let h = dt / params.substeps as f64;
    let mut state = [params.x0, params.y0];
    let mut xs = Vec::with_capacity(params.n_samples);
    let mut ys = Vec::with_capacity(params.n_samples);
    xs.push(state[0]);
    ys.push(state[1]);
    for i in 1..params.n_samples {
        let t_start = (i - 1) as f64 * dt;
        for k in 0..params.substeps {
            state = rk4_step(&rhs, t_start + k as f64 * h, &state, h);
        }
        if !state.iter().all(|v| v.is_finite()) {
            return Err(BuzzError::IntegrationBlowup {
                step: i,
                t: i as f64 * dt,
            });
        }
        xs.push(state[0]);
        ys.push(state[1]);
    }
    let t0 = params.burn_in as f64 * dt;
    let series = |v: Vec<f64>| TimeSeries {
        values: v[params.burn_in..].to_vec(),
        dt,
        t0,
        label: params.b,
    };
    Ok((series(xs), series(ys)))
}

/// Description of a parameterized family of series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Sine {
        amplitudes: Vec<f64>,
        n: usize,
        dt: f64,
        noise_amp: f64,
        /// Series `i` is seeded with `seed + i`.
        seed: u64,
    },
    Selkov {
        bs: Vec<f64>,
        #[serde(default)]
        base: SelkovParams,
    },
}

impl FamilySpec {
    /// Nine noisy sines ramping up to amplitude 2 and back down.
    pub fn noisy_sines(seed: u64) -> Self {
        FamilySpec::Sine {
            amplitudes: vec![0.05, 0.5, 1.0, 1.5, 2.0, 1.5, 1.0, 0.5, 0.05],
            n: 100,
            dt: 2.0 * std::f64::consts::PI / 16.0,
            noise_amp: 0.1,
            seed,
        }
    }

    /// `b = 0.35, 0.40, ..., 0.80` at `a = 0.1`.
    pub fn selkov_sweep() -> Self {
        FamilySpec::Selkov {
            bs: (0..10).map(|i| (35 + 5 * i) as f64 / 100.0).collect(),
            base: SelkovParams::default(),
        }
    }

    pub fn labels(&self) -> Vec<f64> {
        match self {
            FamilySpec::Sine { amplitudes, .. } => amplitudes.clone(),
            FamilySpec::Selkov { bs, .. } => bs.clone(),
        }
    }

    /// Per-series noise seeds (empty for deterministic families).
    pub fn seeds(&self) -> Vec<u64> {
        match self {
            FamilySpec::Sine {
                amplitudes, seed, ..
            } => (0..amplitudes.len() as u64).map(|i| seed.wrapping_add(i)).collect(),
            FamilySpec::Selkov { .. } => Vec::new(),
        }
    }
}

/// One series per parameter value, in the order the grid lists them.
/// Sel'kov families keep the `x` coordinate.
pub fn make_buzz_family(spec: &FamilySpec) -> Result<Vec<TimeSeries>> {
    let labels = spec.labels();
    if labels.is_empty() {
        return Err(BuzzError::param("parameter grid is empty"));
    }
    match spec {
        FamilySpec::Sine {
            amplitudes,
            n,
            dt,
            noise_amp,
            ..
        } => amplitudes
            .iter()
            .zip(spec.seeds())
            .map(|(&a, seed)| sine_series(a, *n, *dt, *noise_amp, seed))
            .collect(),
        FamilySpec::Selkov { bs, base } => bs
            .iter()
            .map(|&b| {
                let params = SelkovParams { b, ..base.clone() };
                selkov_trajectory(&params).map(|(x, _)| x)
            })
            .collect(),
    }
}
