//! Event-driven simulation of the facilitated TASEP with boundary rate α.
//!
//! Particles live at strictly decreasing integer positions `x_1 > x_2 > …`
//! with every gap `x_i - x_{i+1} - 1` equal to 0 or 1. Particle 1 jumps at
//! rate α whenever `x_1 - x_2 = 1`; particle `i ≥ 2` jumps at rate 1
//! whenever `x_i - x_{i+1} = 1` and `x_{i-1} - x_i = 2`.
//!
//! The engine keeps the set of enabled transitions, draws the holding time
//! from the total rate and picks a transition proportionally to its rate;
//! this is equivalent in law to independent exponential clocks. A finite
//! number of particles is tracked, with particle `n+1` frozen at its
//! initial site; callers must keep the tracked window wide enough that the
//! frozen boundary stays outside the information cone of the observables.

use crate::error::{Error, Result};
use crate::seeding::{rng_for, sample_exp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Ordered particle configuration of the facilitated TASEP.
#[derive(Debug, Clone)]
pub struct ParticleState {
    /// Positions `x_1 > x_2 > …` of the tracked particles.
    pub positions: Vec<i64>,
    /// Jump rate of the first particle.
    pub alpha: f64,
    /// Current time.
    pub time: f64,
    /// Site of the frozen particle below the tracked window.
    pub frozen: i64,
}

impl ParticleState {
    /// Step initial condition `x_i = -i` on `n` tracked particles.
    pub fn step(alpha: f64, n: usize) -> Self {
        ParticleState {
            positions: (1..=n as i64).map(|i| -i).collect(),
            alpha,
            time: 0.0,
            frozen: -(n as i64) - 1,
        }
    }

    /// Initial condition with i.i.d. Bernoulli(p) gaps: `x_1 = -1` and
    /// `x_i - x_{i+1} = 1 + Bernoulli(p)`. The implied density is
    /// `ρ = 1/(1+p)`.
    pub fn bernoulli_gaps(alpha: f64, p: f64, n: usize, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "gap probability must lie in [0,1], got {p}"
            )));
        }
        let mut rng = rng_for(seed, 0);
        let mut positions = Vec::with_capacity(n);
        let mut x = -1i64;
        for _ in 0..n {
            positions.push(x);
            x -= 1 + i64::from(rng.gen::<f64>() < p);
        }
        let frozen = x;
        Ok(ParticleState {
            positions,
            alpha,
            time: 0.0,
            frozen,
        })
    }

    /// Check the state-space invariants: strictly decreasing positions with
    /// every gap in {1, 2}.
    pub fn validate(&self) -> Result<()> {
        if self.alpha <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        for i in 0..self.positions.len() {
            let below = if i + 1 < self.positions.len() {
                self.positions[i + 1]
            } else {
                self.frozen
            };
            let gap = self.positions[i] - below;
            if gap != 1 && gap != 2 {
                return Err(Error::BadGap {
                    index: i + 1,
                    gap,
                });
            }
        }
        Ok(())
    }
}

/// Gap map Φ: sends positions to half-line occupation variables
/// `g_i = x_i - x_{i+1} - 1 ∈ {0,1}`.
pub fn gap_map(state: &ParticleState) -> Result<Vec<u8>> {
    let n = state.positions.len();
    let mut g = Vec::with_capacity(n);
    for i in 0..n {
        let below = if i + 1 < n {
            state.positions[i + 1]
        } else {
            state.frozen
        };
        let gap = state.positions[i] - below;
        if gap != 1 && gap != 2 {
            return Err(Error::BadGap {
                index: i + 1,
                gap,
            });
        }
        g.push((gap - 1) as u8);
    }
    Ok(g)
}

/// One recorded transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtasepEvent {
    pub time: f64,
    /// 1-based index of the particle that jumped.
    pub particle: usize,
}

/// Full record of a run.
#[derive(Debug, Clone)]
pub struct FtasepTrajectory {
    pub initial: ParticleState,
    pub events: Vec<FtasepEvent>,
    pub final_state: ParticleState,
    pub horizon: f64,
}

/// Core engine; `on_event` observes each jump as it happens.
pub struct FtasepSim {
    state: ParticleState,
    rng: ChaCha8Rng,
    /// enabled bulk transitions (particle indices ≥ 2, 0-based in `positions`)
    enabled: Vec<usize>,
    /// position of particle index in `enabled`, or usize::MAX
    slot: Vec<usize>,
    first_enabled: bool,
}

impl FtasepSim {
    pub fn new(init: ParticleState, seed: u64) -> Result<Self> {
        init.validate()?;
        let n = init.positions.len();
        let mut sim = FtasepSim {
            state: init,
            rng: rng_for(seed, 0),
            enabled: Vec::new(),
            slot: vec![usize::MAX; n],
            first_enabled: false,
        };
        for i in 0..n {
            sim.refresh(i);
        }
        Ok(sim)
    }

    fn gap_below(&self, i: usize) -> i64 {
        let below = if i + 1 < self.state.positions.len() {
            self.state.positions[i + 1]
        } else {
            self.state.frozen
        };
        self.state.positions[i] - below
    }

    fn is_enabled(&self, i: usize) -> bool {
        if self.gap_below(i) != 1 {
            return false;
        }
        if i == 0 {
            true
        } else {
            self.state.positions[i - 1] - self.state.positions[i] == 2
        }
    }

    /// Recompute the enabled flag of particle `i` (0-based).
    fn refresh(&mut self, i: usize) {
        if i >= self.state.positions.len() {
            return;
        }
        let now = self.is_enabled(i);
        if i == 0 {
            self.first_enabled = now;
            return;
        }
        let was = self.slot[i] != usize::MAX;
        if now && !was {
            self.slot[i] = self.enabled.len();
            self.enabled.push(i);
        } else if !now && was {
            let pos = self.slot[i];
            let last = *self.enabled.last().unwrap();
            self.enabled[pos] = last;
            self.slot[last] = pos;
            self.enabled.pop();
            self.slot[i] = usize::MAX;
        }
    }

    pub fn state(&self) -> &ParticleState {
        &self.state
    }

    /// Advance by one event, or return `None` if the next event falls
    /// beyond `horizon` (time is then clamped to the horizon).
    pub fn step(&mut self, horizon: f64) -> Option<FtasepEvent> {
        let bulk = self.enabled.len() as f64;
        let total = bulk + if self.first_enabled { self.state.alpha } else { 0.0 };
        if total <= 0.0 {
            self.state.time = horizon;
            return None;
        }
        let dt = sample_exp(&mut self.rng, total);
        if self.state.time + dt > horizon {
            self.state.time = horizon;
            return None;
        }
        self.state.time += dt;
        let u: f64 = self.rng.gen::<f64>() * total;
        let i = if self.first_enabled && u < self.state.alpha {
            0
        } else {
            let mut k = if self.first_enabled {
                ((u - self.state.alpha) / 1.0) as usize
            } else {
                u as usize
            };
            if k >= self.enabled.len() {
                k = self.enabled.len() - 1;
            }
            self.enabled[k]
        };
        self.state.positions[i] += 1;
        // the move can change the status of i-1, i, i+1
        if i > 0 {
            self.refresh(i - 1);
        }
        self.refresh(i);
        self.refresh(i + 1);
        Some(FtasepEvent {
            time: self.state.time,
            particle: i + 1,
        })
    }
}

/// Simulate FTASEP(α) to the given horizon, recording every event.
pub fn ftasep_simulate(
    alpha: f64,
    init: ParticleState,
    horizon: f64,
    seed: u64,
) -> Result<FtasepTrajectory> {
    if horizon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let mut init = init;
    init.alpha = alpha;
    let initial = init.clone();
    let mut sim = FtasepSim::new(init, seed)?;
    let mut events = Vec::new();
    while let Some(ev) = sim.step(horizon) {
        events.push(ev);
    }
    Ok(FtasepTrajectory {
        initial,
        events,
        final_state: sim.state.clone(),
        horizon,
    })
}

/// Report produced by [`verify_coupling`].
#[derive(Debug, Clone)]
pub struct CouplingReport {
    pub events_checked: usize,
    pub pass: bool,
    /// (event index, description) of the first violation, if any.
    pub first_violation: Option<(usize, String)>,
}

/// Map every event of an FTASEP trajectory through Φ and check that the
/// image follows the half-line TASEP rules: a jump of particle 1 is an
/// injection into an empty site 1, a jump of particle i+1 is a bulk move
/// from site i to site i+1 with `g_i = 1`, `g_{i+1} = 0` before the move.
/// Also checks, at every event time, the current identity
/// `x_n(t) + n = N_n(t)` computed from the image occupation variables.
pub fn verify_coupling(traj: &FtasepTrajectory) -> Result<CouplingReport> {
    let mut g = gap_map(&traj.initial)?;
    let mut positions = traj.initial.positions.clone();
    // running currents: n_image[i] = sum over j >= i of g_j (computed lazily)
    let fail = |idx: usize, msg: String| CouplingReport {
        events_checked: idx,
        pass: false,
        first_violation: Some((idx, msg)),
    };
    for (idx, ev) in traj.events.iter().enumerate() {
        let i = ev.particle; // 1-based
        if i == 1 {
            if g[0] != 0 {
                return Ok(fail(idx, "injection with site 1 occupied".into()));
            }
            g[0] = 1;
        } else {
            let s = i - 1; // image: bulk jump from site s to s+1 (1-based sites)
            if g[s - 1] != 1 {
                return Ok(fail(idx, format!("bulk jump from empty site {s}")));
            }
            if s >= g.len() || g[s] != 0 {
                return Ok(fail(idx, format!("bulk jump into occupied site {}", s + 1)));
            }
            g[s - 1] = 0;
            g[s] = 1;
        }
        positions[i - 1] += 1;
        // exact current identity at this event time
        let mut tail = 0i64;
        for n in (0..positions.len()).rev() {
            tail += i64::from(g[n]);
            let lhs = positions[n] + (n as i64 + 1);
            if lhs != tail {
                return Ok(fail(
                    idx,
                    format!("current identity failed at n = {}: {} != {}", n + 1, lhs, tail),
                ));
            }
        }
    }
    Ok(CouplingReport {
        events_checked: traj.events.len(),
        pass: true,
        first_violation: None,
    })
}
