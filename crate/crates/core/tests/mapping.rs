use plausimap::evidence::{CombinationMode, MassAssignment, ValueDomain, ValueSet};
use plausimap::mapping::{
    binary_information_map, conflict_map, entropy_map, information_map, plausible_map,
    plausible_value, suggest_next_measurement, BeliefField, CellBelief, Grid2d, Observation,
    ObservationSet, SuggestOptions,
};
use plausimap::prelude::*;
use plausimap::Error;
use proptest::prelude::*;

fn bw() -> ValueDomain {
    ValueDomain::new(["white", "black"]).unwrap()
}

fn obs_at(g: &Grid2d, d: &ValueDomain, rows: &[(usize, usize, &str)]) -> ObservationSet {
    ObservationSet::from_observations(
        d,
        rows.iter()
            .map(|&(x, y, v)| Observation::new(g.point(x, y).unwrap(), d.singleton(v).unwrap())),
    )
    .unwrap()
}

fn field(
    g: &Grid2d,
    obs: &ObservationSet,
    mode: CombinationMode,
    discount: Discount,
) -> BeliefField {
    let decay = DecayModel::uniform(obs.domain(), 3.0).unwrap();
    let inter = InteractionModel::new(3.0).unwrap();
    extrapolate_field(
        g,
        obs,
        &decay,
        &inter,
        CombinationConfig::new(mode, discount),
    )
    .unwrap()
}

fn normalized(g: &Grid2d, obs: &ObservationSet) -> BeliefField {
    field(g, obs, CombinationMode::Normalized, Discount::Interaction)
}

fn mass(f: &BeliefField, x: usize, y: usize) -> &MassAssignment {
    f.at(x, y).unwrap().mass().unwrap()
}

#[test]
fn single_cell_grid() {
    let g = Grid2d::new(1, 1).unwrap();
    let d = bw();
    let f = normalized(&g, &obs_at(&g, &d, &[(0, 0, "black")]));
    assert_eq!(mass(&f, 0, 0).mass(d.singleton("black").unwrap()), 1.0);
}

#[test]
fn far_apart_pair_on_large_grid() {
    let g = Grid2d::new(64, 64).unwrap();
    let d = bw();
    let f = normalized(&g, &obs_at(&g, &d, &[(5, 5, "black"), (58, 5, "white")]));
    let black = d.singleton("black").unwrap();
    let white = d.singleton("white").unwrap();
    assert!(mass(&f, 5, 5).mass(black) > 0.9);
    assert!(mass(&f, 58, 5).mass(white) > 0.9);
    let mut checked = 0;
    for y in 0..64usize {
        for x in 0..64usize {
            let db = ((x as f64 - 5.0).powi(2) + (y as f64 - 5.0).powi(2)).sqrt();
            let dw = ((x as f64 - 58.0).powi(2) + (y as f64 - 5.0).powi(2)).sqrt();
            if db >= 50.0 && dw >= 50.0 {
                assert!(mass(&f, x, y).mass(d.full()) > 0.999, "({x}, {y})");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn coincident_cluster_matches_single_point() {
    let g = Grid2d::new(32, 32).unwrap();
    let d = bw();
    let two = normalized(&g, &obs_at(&g, &d, &[(10, 10, "black"), (18, 12, "white")]));
    let four = normalized(
        &g,
        &obs_at(
            &g,
            &d,
            &[
                (10, 10, "black"),
                (10, 10, "black"),
                (18, 12, "white"),
                (10, 10, "black"),
            ],
        ),
    );
    assert_eq!(two.cells(), four.cells());
}

#[test]
fn total_conflict_is_recorded_per_cell() {
    let g = Grid2d::new(3, 1).unwrap();
    let d = bw();
    let obs = obs_at(&g, &d, &[(1, 0, "black"), (1, 0, "white")]);
    let f = field(&g, &obs, CombinationMode::Normalized, Discount::Plain);
    assert_eq!(f.cell(g.point(1, 0).unwrap()), &CellBelief::TotalConflict);
    assert_eq!(f.conflict_cells(), 1);
    let h = entropy_map(&f);
    assert!((h.get(1, 0) - 2f64.ln()).abs() < 1e-15);
    assert_eq!(plausible_map(&f, 0.1).unwrap().get(1, 0), None);
}

#[test]
fn extrapolation_preconditions() {
    let g = Grid2d::new(4, 4).unwrap();
    let d = bw();
    let decay = DecayModel::uniform(&d, 3.0).unwrap();
    let inter = InteractionModel::new(3.0).unwrap();
    let cfg = CombinationConfig::default();
    let empty = ObservationSet::new(&d);
    assert!(matches!(
        extrapolate_field(&g, &empty, &decay, &inter, cfg),
        Err(Error::NoObservations)
    ));
    let big = Grid2d::new(10, 10).unwrap();
    let outside = obs_at(&big, &d, &[(9, 9, "black")]);
    assert!(matches!(
        extrapolate_field(&g, &outside, &decay, &inter, cfg),
        Err(Error::PointOutOfSpace(_))
    ));
    let other = DecayModel::uniform(&ValueDomain::new(["a", "b"]).unwrap(), 3.0).unwrap();
    assert!(matches!(
        extrapolate_field(&g, &obs_at(&g, &d, &[(0, 0, "black")]), &other, &inter, cfg),
        Err(Error::DomainMismatch)
    ));
}

#[test]
fn entropy_examples() {
    let g = Grid2d::new(64, 1).unwrap();
    let d = bw();
    let f = normalized(&g, &obs_at(&g, &d, &[(0, 0, "black")]));
    let h = entropy_map(&f);
    assert_eq!(h.get(0, 0), 0.0);
    assert!((h.get(63, 0) - 2f64.ln()).abs() < 1e-12);

    let t = ValueSet::singleton(0);
    let m = MassAssignment::new(
        &d,
        [(t, 0.6), (ValueSet::singleton(1), 0.2), (d.full(), 0.2)],
    )
    .unwrap();
    assert!((m.pignistic().unwrap().entropy() - 0.6108643020548935).abs() < 1e-12);
}

#[test]
fn information_examples() {
    let g = Grid2d::new(64, 1).unwrap();
    let d = bw();
    let f = normalized(&g, &obs_at(&g, &d, &[(0, 0, "black")]));
    let info = information_map(&f);
    assert_eq!(info.get(0, 0), 1.0);
    assert!(info.get(63, 0) < 1e-12);
    let binary = binary_information_map(&f).unwrap();
    assert_eq!(binary.get(0, 0), 1.0);
    assert!((binary.get(63, 0) - (-21.0f64).exp()).abs() < 1e-15);

    // a cell whose pignistic probability of white is 0.7
    let white = d.singleton("white").unwrap();
    let one = obs_at(&g, &d, &[(0, 0, "white")]);
    let lambda = lambda_from_half_distance(10.0).unwrap();
    let decay = DecayModel::uniform(&d, lambda).unwrap();
    let inter = InteractionModel::new(3.0).unwrap();
    let cfg = CombinationConfig::new(CombinationMode::Normalized, Discount::Plain);
    let two = one
        .with(Observation::new(g.point(0, 0).unwrap(), white))
        .unwrap();
    let three = two
        .with(Observation::new(
            g.point(20, 0).unwrap(),
            d.singleton("black").unwrap(),
        ))
        .unwrap();
    let f = extrapolate_field(&g, &three, &decay, &inter, cfg).unwrap();
    let m = mass(&f, 10, 0);
    assert!((m.mass(white) - 0.6).abs() < 1e-9, "{m:?}");
    assert!((binary_information_map(&f).unwrap().get(10, 0) - 0.4).abs() < 1e-9);

    let three = ValueDomain::new(["a", "b", "c"]).unwrap();
    let f3 = normalized(&g, &obs_at(&g, &three, &[(0, 0, "a")]));
    assert!(matches!(
        binary_information_map(&f3),
        Err(Error::UnsupportedDomainSize(3))
    ));
}

#[test]
fn conflict_examples() {
    let g = Grid2d::new(64, 3).unwrap();
    let d = bw();
    let obs = obs_at(&g, &d, &[(1, 1, "white"), (3, 1, "black")]);
    let f = field(&g, &obs, CombinationMode::Unnormalized, Discount::Plain);
    let c = conflict_map(&f).unwrap();
    let strength = (-1.0f64 / 3.0).exp();
    assert!((c.get(2, 1) - strength * strength).abs() < 1e-12);
    // at an observation the neighbour two cells away still disagrees
    assert!((c.get(1, 1) - (-2.0f64 / 3.0).exp()).abs() < 1e-12);
    assert!(c.get(63, 1) < 1e-12);

    let normalized = field(&g, &obs, CombinationMode::Normalized, Discount::Plain);
    assert!(matches!(conflict_map(&normalized), Err(Error::WrongMode)));

    let solo = field(
        &g,
        &obs_at(&g, &d, &[(10, 1, "black")]),
        CombinationMode::Unnormalized,
        Discount::Plain,
    );
    assert!(conflict_map(&solo)
        .unwrap()
        .values()
        .iter()
        .all(|&v| v == 0.0));
}

#[test]
fn plausible_examples() {
    let d = ValueDomain::new(["1", "2"]).unwrap();
    let (one, two) = (ValueSet::singleton(0), ValueSet::singleton(1));
    let m = MassAssignment::new(&d, [(one, 0.05), (two, 0.04), (d.full(), 0.91)]).unwrap();
    assert_eq!(plausible_value(&m, 0.1).unwrap(), None);
    assert_eq!(plausible_value(&m, 0.03).unwrap(), Some(0));

    let bw = bw();
    let black = bw.singleton("black").unwrap();
    let m = MassAssignment::simple_support(&bw, black, 0.9).unwrap();
    assert_eq!(plausible_value(&m, 0.1).unwrap(), Some(1));
    assert_eq!(
        plausible_value(&MassAssignment::vacuous(&bw), 0.0).unwrap(),
        None
    );
    assert!(matches!(
        plausible_value(&m, 1.0),
        Err(Error::InvalidThreshold(_))
    ));
    assert!(matches!(
        plausible_value(&m, -0.1),
        Err(Error::InvalidThreshold(_))
    ));
}

#[test]
fn suggestion_prefers_unknown_cells() {
    let g = Grid2d::new(8, 8).unwrap();
    let d = bw();
    let obs = obs_at(&g, &d, &[(1, 1, "black")]);
    let decay = DecayModel::uniform(&d, 3.0).unwrap();
    let inter = InteractionModel::new(3.0).unwrap();
    let ranked = suggest_next_measurement(
        &g,
        &obs,
        &decay,
        &inter,
        CombinationConfig::default(),
        SuggestOptions { top: 64, stride: 1 },
    )
    .unwrap();
    assert_eq!(ranked.len(), 64);
    assert!(ranked.iter().all(|s| s.expected_loss >= -1e-9));
    assert!(ranked
        .windows(2)
        .all(|w| w[0].expected_loss >= w[1].expected_loss));
    let dist = |x: usize, y: usize| ((x as f64 - 1.0).powi(2) + (y as f64 - 1.0).powi(2)).sqrt();
    let top = ranked[0];
    let adjacent = ranked.iter().rfind(|s| dist(s.x, s.y) == 1.0).unwrap();
    assert!(dist(top.x, top.y) > 1.0);
    assert!(top.expected_loss > adjacent.expected_loss);
    let own = ranked.iter().find(|s| (s.x, s.y) == (1, 1)).unwrap();
    assert!(own.expected_loss.abs() < 1e-9);

    let strided = suggest_next_measurement(
        &g,
        &obs,
        &decay,
        &inter,
        CombinationConfig::default(),
        SuggestOptions {
            top: 100,
            stride: 3,
        },
    )
    .unwrap();
    assert_eq!(strided.len(), 9);
    assert!(strided.iter().all(|s| s.x % 3 == 0 && s.y % 3 == 0));
}

#[test]
fn suggestion_options_are_validated() {
    let g = Grid2d::new(4, 4).unwrap();
    let d = bw();
    let obs = obs_at(&g, &d, &[(1, 1, "black")]);
    let decay = DecayModel::uniform(&d, 3.0).unwrap();
    let inter = InteractionModel::new(3.0).unwrap();
    for opts in [
        SuggestOptions { top: 0, stride: 1 },
        SuggestOptions { top: 1, stride: 0 },
    ] {
        let r =
            suggest_next_measurement(&g, &obs, &decay, &inter, CombinationConfig::default(), opts);
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }
}

fn transform(kind: u8, w: usize, h: usize, x: usize, y: usize) -> (usize, usize) {
    match kind {
        0 => (w - 1 - x, y),
        1 => (x, h - 1 - y),
        _ => (y, x),
    }
}

fn random_obs() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    prop::collection::vec((0usize..9, 0usize..9, 0usize..3), 1..5)
}

fn build(g: &Grid2d, d: &ValueDomain, rows: &[(usize, usize, usize)]) -> ObservationSet {
    ObservationSet::from_observations(
        d,
        rows.iter()
            .map(|&(x, y, v)| Observation::new(g.point(x, y).unwrap(), ValueSet::singleton(v))),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_matches_focus_combination(rows in random_obs(), interaction in any::<bool>(), unnormalized in any::<bool>()) {
        let g = Grid2d::new(9, 9).unwrap();
        let d = ValueDomain::new(["a", "b", "c"]).unwrap();
        let obs = build(&g, &d, &rows);
        let decay = DecayModel::uniform(&d, 2.0).unwrap();
        let inter = InteractionModel::new(4.0).unwrap();
        let cfg = CombinationConfig::new(
            if unnormalized { CombinationMode::Unnormalized } else { CombinationMode::Normalized },
            if interaction { Discount::Interaction } else { Discount::Plain },
        );
        let f = extrapolate_field(&g, &obs, &decay, &inter, cfg).unwrap();
        for p in g.points() {
            match combine_at_focus(&obs, p, &g, &decay, &inter, cfg) {
                Ok(m) => prop_assert_eq!(f.cell(p), &CellBelief::Mass(m)),
                Err(Error::TotalConflict(_)) => prop_assert_eq!(f.cell(p), &CellBelief::TotalConflict),
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }

    #[test]
    fn derived_map_bounds(rows in random_obs(), tau in 0.0f64..0.9) {
        let g = Grid2d::new(9, 9).unwrap();
        let d = ValueDomain::new(["a", "b", "c"]).unwrap();
        let obs = build(&g, &d, &rows);
        let f = normalized(&g, &obs);
        let max = 3f64.ln();
        let h = entropy_map(&f);
        let info = information_map(&f);
        for (i, (&hv, &iv)) in h.values().iter().zip(info.values()).enumerate() {
            prop_assert!((0.0..=max + 1e-12).contains(&hv));
            prop_assert!((0.0..=1.0).contains(&iv));
            let p = f.cells()[i].pignistic(&d);
            if p.probabilities().contains(&1.0) {
                prop_assert_eq!(hv, 0.0);
            }
        }
        let values = plausible_map(&f, tau).unwrap();
        prop_assert!(values.values().iter().all(|v| v.is_none_or(|i| i < 3)));

        let u = field(&g, &obs, CombinationMode::Unnormalized, Discount::Interaction);
        prop_assert!(conflict_map(&u).unwrap().values().iter().all(|&c| (0.0..=1.0).contains(&c)));
    }

    #[test]
    fn information_is_one_at_lone_complete_observation(x in 0usize..9, y in 0usize..9, v in 0usize..3) {
        let g = Grid2d::new(9, 9).unwrap();
        let d = ValueDomain::new(["a", "b", "c"]).unwrap();
        let f = normalized(&g, &build(&g, &d, &[(x, y, v)]));
        prop_assert_eq!(information_map(&f).get(x, y), 1.0);
    }

    #[test]
    fn agreeing_observations_never_conflict(rows in random_obs(), v in 0usize..3) {
        let g = Grid2d::new(9, 9).unwrap();
        let d = ValueDomain::new(["a", "b", "c"]).unwrap();
        let same: Vec<_> = rows.iter().map(|&(x, y, _)| (x, y, v)).collect();
        let u = field(&g, &build(&g, &d, &same), CombinationMode::Unnormalized, Discount::Interaction);
        prop_assert!(conflict_map(&u).unwrap().values().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn zero_threshold_is_pignistic_argmax(rows in random_obs()) {
        let g = Grid2d::new(9, 9).unwrap();
        let d = ValueDomain::new(["a", "b", "c"]).unwrap();
        let f = normalized(&g, &build(&g, &d, &rows));
        let values = plausible_map(&f, 0.0).unwrap();
        for (i, cell) in f.cells().iter().enumerate() {
            let p = cell.pignistic(&d);
            if let Some(best) = p.unique_argmax(1e-12) {
                prop_assert_eq!(values.values()[i], Some(best));
            }
        }
    }

    #[test]
    fn grid_symmetries_commute_with_extrapolation(rows in random_obs(), kind in 0u8..3, interaction in any::<bool>()) {
        let g = Grid2d::new(9, 9).unwrap();
        let d = ValueDomain::new(["a", "b", "c"]).unwrap();
        let moved: Vec<_> = rows.iter().map(|&(x, y, v)| {
            let (tx, ty) = transform(kind, 9, 9, x, y);
            (tx, ty, v)
        }).collect();
        let discount = if interaction { Discount::Interaction } else { Discount::Plain };
        let mode = CombinationMode::Unnormalized;
        let a = field(&g, &build(&g, &d, &rows), mode, discount);
        let b = field(&g, &build(&g, &d, &moved), mode, discount);
        for y in 0..9 {
            for x in 0..9 {
                let (tx, ty) = transform(kind, 9, 9, x, y);
                let (ma, mb) = (mass(&a, x, y), mass(&b, tx, ty));
                for s in d.subsets() {
                    prop_assert!((ma.mass(s) - mb.mass(s)).abs() <= 1e-12);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Plain discount: measuring somewhere new never loses information on
    /// average.
    #[test]
    fn expected_losses_at_new_cells_are_nonnegative(rows in prop::collection::vec((0usize..5, 0usize..5, 0usize..2), 1..4), lambda in 0.5f64..5.0) {
        let g = Grid2d::new(5, 5).unwrap();
        let d = bw();
        let obs = build(&g, &d, &rows);
        let decay = DecayModel::uniform(&d, lambda).unwrap();
        let inter = InteractionModel::new(3.0).unwrap();
        let ranked = suggest_next_measurement(
            &g, &obs, &decay, &inter,
            CombinationConfig::new(CombinationMode::Normalized, Discount::Plain),
            SuggestOptions { top: 25, stride: 1 },
        ).unwrap();
        for s in ranked {
            if !rows.iter().any(|&(x, y, _)| (x, y) == (s.x, s.y)) {
                prop_assert!(s.expected_loss >= -1e-9, "{:?}", s);
            }
        }
    }

    #[test]
    fn single_observation_losses_are_nonnegative(x in 0usize..6, y in 0usize..6, v in 0usize..2, interaction in any::<bool>(), unnormalized in any::<bool>()) {
        let g = Grid2d::new(6, 6).unwrap();
        let d = bw();
        let obs = build(&g, &d, &[(x, y, v)]);
        let decay = DecayModel::uniform(&d, 3.0).unwrap();
        let inter = InteractionModel::new(3.0).unwrap();
        let cfg = CombinationConfig::new(
            if unnormalized { CombinationMode::Unnormalized } else { CombinationMode::Normalized },
            if interaction { Discount::Interaction } else { Discount::Plain },
        );
        let ranked = suggest_next_measurement(&g, &obs, &decay, &inter, cfg, SuggestOptions { top: 36, stride: 1 }).unwrap();
        prop_assert!(ranked.iter().all(|s| s.expected_loss >= -1e-9));
    }
}

/// Under the interaction discount a new point between two agreeing
/// observations lowers their importance, which can raise the expected
/// entropy of the map. Plain discount double counts a repeated measurement.
#[test]
fn expected_loss_can_be_negative() {
    let g = Grid2d::new(5, 5).unwrap();
    let d = bw();
    let obs = obs_at(&g, &d, &[(2, 1, "white"), (2, 3, "white")]);
    let decay = DecayModel::uniform(&d, 3.0).unwrap();
    let inter = InteractionModel::new(3.0).unwrap();
    let between = g.point(2, 2).unwrap();
    let cfg = CombinationConfig::new(CombinationMode::Normalized, Discount::Interaction);
    let loss =
        plausimap::mapping::expected_entropy_loss(&g, &obs, &decay, &inter, cfg, between).unwrap();
    assert!(loss < -0.1, "{loss}");

    let obs = obs_at(&g, &d, &[(1, 0, "black"), (0, 1, "white"), (0, 0, "white")]);
    let decay = DecayModel::uniform(&d, 2.0).unwrap();
    let cfg = CombinationConfig::new(CombinationMode::Normalized, Discount::Plain);
    let again = g.point(1, 0).unwrap();
    let loss =
        plausimap::mapping::expected_entropy_loss(&g, &obs, &decay, &inter, cfg, again).unwrap();
    assert!(loss < -0.1, "{loss}");
}
