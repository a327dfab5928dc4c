//! Aggregation of all observation supports at a focus point.
//!
//! Observations are ranked by distance to the focus. Each one's support is
//! discounted by its conditional importance given the observations ranked
//! before it, so that clustered observations are not counted as independent
//! sources. The discounted supports are then combined with the conjunctive
//! rule.

use crate::error::{Error, Result};
use crate::evidence::{combine, CombinationMode, MassAssignment, ValueSet, CONFLICT_THRESHOLD};
use crate::mapping::{ObservationSet, PointId, Space};
use crate::persistence::DecayModel;

/// Scale of the interaction measure, in distance units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionModel {
    lambda_mu: f64,
}

impl InteractionModel {
    pub fn new(lambda_mu: f64) -> Result<Self> {
        if lambda_mu.is_finite() && lambda_mu > 0.0 {
            Ok(Self { lambda_mu })
        } else {
            Err(Error::InvalidInteractionScale(lambda_mu))
        }
    }

    pub fn lambda_mu(&self) -> f64 {
        self.lambda_mu
    }

    fn affinity(&self, d: f64) -> f64 {
        (-d / self.lambda_mu).exp()
    }
}

/// How supports are discounted before combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Discount {
    /// Every source counts fully (plain Dempster combination).
    Plain,
    /// Supports are discounted by their conditional importance.
    #[default]
    Interaction,
}

/// Combination settings.
///
/// Equidistant observations are ranked by value set (canonical bitmask
/// order). Among equidistant observations of the same value, the one least
/// related to those already ranked comes first, then the lower point index.
/// Identical observations count once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CombinationConfig {
    pub mode: CombinationMode,
    pub discount: Discount,
}

impl CombinationConfig {
    pub fn new(mode: CombinationMode, discount: Discount) -> Self {
        Self { mode, discount }
    }
}

/// `μ` of a set of `n` points whose pairwise affinities sum to `pair_sum`.
fn measure_from(n: usize, pair_sum: f64) -> f64 {
    match n {
        0 => 0.0,
        1 => 1.0,
        _ => 2.0 - 2.0 / n as f64 * pair_sum,
    }
}

/// Interaction measure of a collection of points.
///
/// `μ(∅) = 0`, `μ({x}) = 1`, and for `n >= 2` points
/// `μ(X) = 2 - (2/n) Σ_{pairs} exp(-d(y, z) / λ_μ)`. Points are taken as a
/// multiset: repeated entries stand for coincident observations.
pub fn interaction_measure<S: Space + ?Sized>(
    points: &[PointId],
    space: &S,
    model: &InteractionModel,
) -> f64 {
    let mut pair_sum = 0.0;
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[..i] {
            pair_sum += model.affinity(space.distance(a, b));
        }
    }
    measure_from(points.len(), pair_sum)
}

/// Importance of the evidence at `x` once `prior` has been accounted for:
/// `μ(X ∪ {x}) - μ(X)`, clamped to `[0, 1]`.
///
/// The lower clamp matters for clustered points, where the increment is
/// negative (three coincident points drop `μ` from 1 to 0).
pub fn conditional_importance<S: Space + ?Sized>(
    x: PointId,
    prior: &[PointId],
    space: &S,
    model: &InteractionModel,
) -> f64 {
    let before = interaction_measure(prior, space, model);
    let mut with = prior.to_vec();
    with.push(x);
    let after = interaction_measure(&with, space, model);
    (after - before).clamp(0.0, 1.0)
}

/// One observation's support at the focus, after ranking.
#[derive(Debug, Clone, Copy, PartialEq)]
struct RankedSupport {
    value: ValueSet,
    strength: f64,
    importance: f64,
}

impl RankedSupport {
    /// `(1 - f)^μ`, the mass left on the whole frame.
    fn residual(&self) -> f64 {
        if self.importance == 1.0 {
            1.0 - self.strength
        } else {
            (1.0 - self.strength).powf(self.importance)
        }
    }

    /// `1 - (1 - f)^μ`.
    fn discounted_strength(&self) -> f64 {
        if self.importance == 1.0 {
            self.strength
        } else if self.importance == 0.0 {
            0.0
        } else {
            1.0 - self.residual()
        }
    }
}

/// Observations prepared for evaluation at many focus points: the pairwise
/// affinities between observations do not depend on the focus.
pub(crate) struct FocusCombiner<'a, S: Space + ?Sized> {
    domain: &'a crate::evidence::ValueDomain,
    entries: Vec<(PointId, ValueSet)>,
    /// Row-major `n x n` affinities, only for the interaction discount.
    affinity: Vec<f64>,
    space: &'a S,
    decay: &'a DecayModel,
    cfg: CombinationConfig,
}

impl<'a, S: Space + ?Sized> FocusCombiner<'a, S> {
    pub(crate) fn new(
        obs: &'a ObservationSet,
        space: &'a S,
        decay: &'a DecayModel,
        interaction: &InteractionModel,
        cfg: CombinationConfig,
    ) -> Result<Self> {
        if obs.domain() != decay.domain() {
            return Err(Error::DomainMismatch);
        }
        let entries = obs
            .range()
            .map(|o| Ok((space.check(o.location)?, o.value)))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::NoObservations);
        }
        let affinity = match cfg.discount {
            Discount::Plain => Vec::new(),
            Discount::Interaction => entries
                .iter()
                .flat_map(|&(a, _)| {
                    entries
                        .iter()
                        .map(move |&(b, _)| interaction.affinity(space.distance(a, b)))
                })
                .collect(),
        };
        Ok(Self {
            domain: obs.domain(),
            entries,
            affinity,
            space,
            decay,
            cfg,
        })
    }

    fn rank(&self, focus: PointId) -> Result<Vec<RankedSupport>> {
        self.space.check(focus)?;
        let n = self.entries.len();
        let mut ranked: Vec<(f64, ValueSet, PointId, usize)> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, &(location, value))| {
                (self.space.distance(focus, location), value, location, i)
            })
            .collect();
        ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

        let mut supports = Vec::with_capacity(n);
        let mut push = |dist: f64, value: ValueSet, importance: f64| -> Result<()> {
            supports.push(RankedSupport {
                value,
                strength: self.decay.decay(value, dist)?.value(),
                importance,
            });
            Ok(())
        };
        if self.cfg.discount == Discount::Plain {
            for &(dist, value, _, _) in &ranked {
                push(dist, value, 1.0)?;
            }
            return Ok(supports);
        }

        let mut prior: Vec<usize> = Vec::with_capacity(n);
        let mut pair_sum = 0.0;
        let mut measure = 0.0;
        let affinity_to_prior = |prior: &[usize], x: usize| -> f64 {
            prior.iter().map(|&p| self.affinity[p * n + x]).sum()
        };
        let mut start = 0;
        while start < n {
            let (dist, value, _, _) = ranked[start];
            let end = start
                + ranked[start..]
                    .iter()
                    .take_while(|r| r.0 == dist && r.1 == value)
                    .count();
            // Identical observations are one element of the range: keep one
            // index per location (the group is sorted by location).
            let mut pending: Vec<(PointId, usize)> =
                ranked[start..end].iter().map(|r| (r.2, r.3)).collect();
            pending.dedup_by_key(|p| p.0);
            let repeats = (end - start) - pending.len();
            // Within a tie, take the most informative point first: the one
            // least related to what is already counted. This keeps the order
            // (and so the result) invariant under isometries of the space.
            while !pending.is_empty() {
                let (pick, added) = pending
                    .iter()
                    .enumerate()
                    .map(|(i, &(_, x))| (i, affinity_to_prior(&prior, x)))
                    .fold((0, f64::INFINITY), |best, cand| {
                        if cand.1 < best.1 {
                            cand
                        } else {
                            best
                        }
                    });
                let (_, index) = pending.remove(pick);
                pair_sum += added;
                prior.push(index);
                let next = measure_from(prior.len(), pair_sum);
                push(dist, value, (next - measure).clamp(0.0, 1.0))?;
                measure = next;
            }
            for _ in 0..repeats {
                push(dist, value, 0.0)?;
            }
            start = end;
        }
        Ok(supports)
    }

    pub(crate) fn combine(&self, focus: PointId) -> Result<MassAssignment> {
        let supports = self.rank(focus)?;
        let mut acc: Option<MassAssignment> = None;
        for s in &supports {
            let strength = s.discounted_strength();
            // vacuous supports are neutral
            if strength == 0.0 {
                continue;
            }
            let m = MassAssignment::simple_support(self.domain, s.value, strength)?;
            acc = Some(match acc {
                None => m,
                Some(prev) => combine(&prev, &m, self.cfg.mode)?,
            });
        }
        Ok(acc.unwrap_or_else(|| MassAssignment::vacuous(self.domain)))
    }

    fn combine_precise(&self, focus: PointId) -> Result<MassAssignment> {
        let domain = self.domain;
        if self.entries.iter().any(|e| !e.1.is_singleton()) {
            return Err(Error::NonSingletonObservation);
        }
        let supports = self.rank(focus)?;

        let n = domain.len();
        let mut supported = vec![false; n];
        let mut inside = vec![1.0; n];
        let mut all = 1.0;
        for s in &supports {
            let i = s
                .value
                .single_index()
                .ok_or(Error::NonSingletonObservation)?;
            let c = s.residual();
            supported[i] = true;
            inside[i] *= c;
            all *= c;
        }

        let mut entries: Vec<(ValueSet, f64)> = Vec::with_capacity(n + 2);
        for i in 0..n {
            if !supported[i] {
                continue;
            }
            let outside: f64 = supports
                .iter()
                .filter(|s| s.value.single_index() != Some(i))
                .map(RankedSupport::residual)
                .product();
            let m = (1.0 - inside[i]) * outside;
            if m != 0.0 {
                entries.push((ValueSet::singleton(i), m));
            }
        }
        if all != 0.0 {
            entries.push((domain.full(), all));
        }
        let kept: f64 = entries.iter().map(|e| e.1).sum();

        match self.cfg.mode {
            CombinationMode::Unnormalized => {
                let conflict = (1.0 - kept).max(0.0);
                if conflict != 0.0 {
                    entries.insert(0, (ValueSet::EMPTY, conflict));
                }
            }
            CombinationMode::Normalized => {
                if kept <= CONFLICT_THRESHOLD {
                    return Err(Error::TotalConflict(kept));
                }
                for e in &mut entries {
                    e.1 /= kept;
                }
            }
        }
        Ok(MassAssignment::from_parts(domain, entries))
    }
}

/// Combined mass assignment at `focus` from every nontrivial observation.
///
/// With [`Discount::Plain`] this is the plain conjunctive combination of the
/// simple supports. With [`Discount::Interaction`] each support's residual
/// `1 - f` is raised to the power of its conditional importance first.
pub fn combine_at_focus<S: Space + ?Sized>(
    obs: &ObservationSet,
    focus: PointId,
    space: &S,
    decay: &DecayModel,
    interaction: &InteractionModel,
    cfg: CombinationConfig,
) -> Result<MassAssignment> {
    FocusCombiner::new(obs, space, decay, interaction, cfg)?.combine(focus)
}

/// Closed-form combination for observations that are all singletons.
///
/// With `c_k = (1 - f_k)^{μ_k}` and `P_i` the observations of value `i`:
/// `m({v_i}) = (1 - Π_{P_i} c_k) Π_{not P_i} c_k`, `m(S) = Π c_k`, and the
/// remainder is conflict. Agrees with [`combine_at_focus`].
pub fn combine_at_focus_precise<S: Space + ?Sized>(
    obs: &ObservationSet,
    focus: PointId,
    space: &S,
    decay: &DecayModel,
    interaction: &InteractionModel,
    cfg: CombinationConfig,
) -> Result<MassAssignment> {
    FocusCombiner::new(obs, space, decay, interaction, cfg)?.combine_precise(focus)
}
