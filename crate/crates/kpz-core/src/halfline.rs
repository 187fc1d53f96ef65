//! Event-driven half-line TASEP with a particle source at the origin.
//!
//! Sites `1..=x_max` host at most one particle each. The source injects a
//! particle to site 1 at rate α whenever site 1 is empty; a particle at
//! site `s` jumps to `s+1` at rate 1 whenever `s+1` is empty. The
//! simulator logs, for every particle, the sequence of waiting times
//! counted from the moment the corresponding jump became possible; the
//! first waiting time of the j-th injected particle is its injection
//! delay. These logs realize the standard coupling with half-quadrant
//! last passage percolation.

use crate::error::{Error, Result};
use crate::seeding::{rng_for, sample_exp};
use rand::Rng;

/// Kind of half-line event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLineEventKind {
    /// Injection from the source into site 1.
    Inject,
    /// Bulk jump from `site` to `site + 1`.
    Bulk,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineEvent {
    pub time: f64,
    pub kind: HalfLineEventKind,
    /// Originating site (1-based); 0 for injections.
    pub site: usize,
    /// Injection order of the particle that moved (1-based).
    pub particle: usize,
}

/// Result of a half-line run.
#[derive(Debug, Clone)]
pub struct HalfLineTrajectory {
    pub alpha: f64,
    pub horizon: f64,
    pub x_max: usize,
    pub events: Vec<HalfLineEvent>,
    /// waiting_times[j][k] = (k+1)-th waiting time of particle j+1
    pub waiting_times: Vec<Vec<f64>>,
    /// arrivals[j][k] = time particle j+1 arrived at site k+1
    pub arrivals: Vec<Vec<f64>>,
    /// Final occupation of sites 1..=x_max.
    pub occupied: Vec<bool>,
    /// True if some particle reached site x_max (results then invalid).
    pub truncated: bool,
}

/// Simulate the half-line TASEP from the empty configuration.
pub fn halfline_simulate(
    alpha: f64,
    horizon: f64,
    seed: u64,
    x_max: usize,
) -> Result<HalfLineTrajectory> {
    if alpha <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if horizon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    if x_max < 2 {
        return Err(Error::InvalidArgument("x_max must be at least 2".into()));
    }
    let mut rng = rng_for(seed, 0);
    let mut occ = vec![false; x_max + 2]; // 1-based sites, sentinel above
    let mut pos: Vec<usize> = Vec::new(); // site of particle j (1-based index j-1)
    let mut waiting: Vec<Vec<f64>> = Vec::new();
    let mut arrivals: Vec<Vec<f64>> = Vec::new();
    let mut events: Vec<HalfLineEvent> = Vec::new();
    // enabled movers, as particle ids (0-based); the source is tracked apart
    let mut enabled: Vec<usize> = Vec::new();
    let mut slot: Vec<usize> = Vec::new();
    // time at which each enabled transition last became possible
    let mut since: Vec<f64> = Vec::new();
    let mut source_since = 0.0f64;
    let mut truncated = false;
    let mut t = 0.0f64;

    let enable = |enabled: &mut Vec<usize>, slot: &mut [usize], j: usize| {
        if slot[j] == usize::MAX {
            slot[j] = enabled.len();
            enabled.push(j);
        }
    };
    let disable = |enabled: &mut Vec<usize>, slot: &mut [usize], j: usize| {
        if slot[j] != usize::MAX {
            let p = slot[j];
            let last = *enabled.last().unwrap();
            enabled[p] = last;
            slot[last] = p;
            enabled.pop();
            slot[j] = usize::MAX;
        }
    };

    loop {
        let source_enabled = !occ[1];
        let total = enabled.len() as f64 + if source_enabled { alpha } else { 0.0 };
        if total <= 0.0 {
            break; // cannot happen: the source re-enables eventually
        }
        let dt = sample_exp(&mut rng, total);
        if t + dt > horizon {
            break;
        }
        t += dt;
        let u: f64 = rng.gen::<f64>() * total;
        if source_enabled && u < alpha {
            // injection
            let j = pos.len();
            occ[1] = true;
            pos.push(1);
            slot.push(usize::MAX);
            since.push(0.0);
            waiting.push(vec![t - source_since]);
            arrivals.push(vec![t]);
            events.push(HalfLineEvent {
                time: t,
                kind: HalfLineEventKind::Inject,
                site: 0,
                particle: j + 1,
            });
            // the new particle can move if site 2 is empty
            if !occ[2] {
                enable(&mut enabled, &mut slot, j);
                since[j] = t;
            }
        } else {
            let mut k = if source_enabled {
                (u - alpha) as usize
            } else {
                u as usize
            };
            if k >= enabled.len() {
                k = enabled.len() - 1;
            }
            let j = enabled[k];
            let s = pos[j];
            debug_assert!(occ[s] && !occ[s + 1]);
            occ[s] = false;
            occ[s + 1] = true;
            pos[j] = s + 1;
            waiting[j].push(t - since[j]);
            arrivals[j].push(t);
            events.push(HalfLineEvent {
                time: t,
                kind: HalfLineEventKind::Bulk,
                site: s,
                particle: j + 1,
            });
            if s + 1 >= x_max {
                truncated = true;
                break;
            }
            // mover: re-enabled only if the next site is free
            if !occ[s + 2] {
                since[j] = t;
            } else {
                disable(&mut enabled, &mut slot, j);
            }
            // the follower (particle j+1 in injection order sits behind) gains a target
            if s >= 2 && occ[s - 1] {
                let f = j + 1; // no overtaking: the particle behind is the next injected
                debug_assert_eq!(pos[f], s - 1);
                enable(&mut enabled, &mut slot, f);
                since[f] = t;
            }
            if s == 1 {
                source_since = t;
            }
        }
    }

    Ok(HalfLineTrajectory {
        alpha,
        horizon,
        x_max,
        events,
        waiting_times: waiting,
        arrivals,
        occupied: occ[1..=x_max].to_vec(),
        truncated,
    })
}

/// Integrated current `N_x(t)`: number of particles at sites ≥ x at time t.
///
/// Computed by counting crossings of the bond `(x-1, x)` in the event log.
pub fn current(traj: &HalfLineTrajectory, x: usize, t: f64) -> Result<u64> {
    if t > traj.horizon {
        return Err(Error::BeyondHorizon {
            t,
            horizon: traj.horizon,
        });
    }
    if x == 0 {
        return Err(Error::InvalidArgument("site index must be positive".into()));
    }
    let mut n = 0u64;
    for ev in &traj.events {
        if ev.time > t {
            break;
        }
        let crossing = match ev.kind {
            HalfLineEventKind::Inject => x == 1,
            HalfLineEventKind::Bulk => ev.site + 1 == x,
        };
        if crossing {
            n += 1;
        }
    }
    Ok(n)
}
