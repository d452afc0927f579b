mod common;

use proptest::prelude::*;

use bczip::codec::encode_phrase;
use bczip::cost::{
    cost_classes, AccessModel, CostModel, MemoryLevels, Phrase, SpaceModel, TimeModel, MAX_COPY_LENGTH,
};

fn any_space() -> impl Strategy<Value = SpaceModel> {
    prop_oneof![
        Just(SpaceModel::ByteOriented),
        Just(SpaceModel::EliasGamma),
        Just(SpaceModel::Fixed)
    ]
}

fn any_time() -> impl Strategy<Value = TimeModel> {
    prop_oneof![
        Just(TimeModel::log()),
        (1u32..100, 0u32..200, 0u32..2000, 2u32..50_000, 0u32..5_000_000).prop_map(|(a, b, c, near, far)| {
            let mut miss = [a, a + b, a + b + c];
            miss.sort_unstable();
            TimeModel::calibrated(MemoryLevels::new(miss).with_thresholds(near, far.max(near)))
        }),
    ]
}

fn any_copy() -> impl Strategy<Value = (u32, u32)> {
    (
        prop_oneof![1u32..300, 1u32..70_000, 1u32..=u32::MAX],
        prop_oneof![1u32..40, 1u32..=MAX_COPY_LENGTH],
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn byte_model_matches_encoder((d, l) in any_copy(), c in any::<u8>()) {
        let copy = Phrase::Copy { distance: d, length: l };
        let bits = SpaceModel::ByteOriented.space_cost(&copy).unwrap();
        prop_assert_eq!(bits as usize, 8 * encode_phrase(&copy).unwrap().len());
        let lit = Phrase::Literal(c);
        prop_assert_eq!(SpaceModel::ByteOriented.space_cost(&lit).unwrap() as usize, 8 * encode_phrase(&lit).unwrap().len());
    }
}

proptest! {
    #[test]
    fn costs_monotone(space in any_space(), time in any_time(), (d, l) in any_copy(), dd in 0u32..1000, dl in 0u32..100) {
        let m = CostModel::new(space, time);
        let d2 = d.saturating_add(dd);
        let l2 = (l + dl).min(MAX_COPY_LENGTH);
        prop_assert!(m.copy_bits(d, l) <= m.copy_bits(d2, l2));
        prop_assert!(m.copy_ticks(d, l) <= m.copy_ticks(d2, l2));
    }

    /// Costs are constant inside each cell of the class grid: any `(d, l)`
    /// costs the same as the upper corner of its cell.
    #[test]
    fn class_grid_is_exhaustive(space in any_space(), time in any_time(), n in 1usize..5_000_000, seed in any::<u64>()) {
        let m = CostModel::new(space, time);
        let table = cost_classes(m, n);
        let n = table.n;
        let d = (seed % n as u64) as u32 + 1;
        let max_len = table.max_copy_length();
        let l = ((seed >> 32) % max_len as u64) as u32 + 1;
        let dc = table.distance_ceilings[table.distance_class(d)];
        let lc = table.length_ceilings[table.length_ceilings.partition_point(|&c| c < l)];
        prop_assert_eq!(m.copy_bits(d, l), m.copy_bits(dc, lc));
        prop_assert_eq!(m.time.access_ticks(d), m.time.access_ticks(dc));
        prop_assert!(m.copy_bits(d, l) <= table.s_max && m.copy_ticks(d, l) <= table.t_max);
        prop_assert!(m.literal_bits() <= table.s_max && m.literal_ticks() <= table.t_max);
        prop_assert_eq!(*table.distance_ceilings.last().unwrap(), n);
        prop_assert!(table.distance_ceilings.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn phrase_costs_validate(d in 0u64..10, l in 0u64..10_000) {
        let r = Phrase::copy(d, l);
        prop_assert_eq!(r.is_ok(), d >= 1 && (1..=MAX_COPY_LENGTH as u64).contains(&l));
    }
}

#[test]
fn class_count_matches_spec_examples() {
    let byte = cost_classes(CostModel::new(SpaceModel::ByteOriented, TimeModel::log()), 1 << 20);
    assert_eq!(byte.space_distance_ceilings, vec![255, 65_535, 1 << 20]);
    assert_eq!(byte.length_ceilings, vec![31, 8191]);
    let fixed = cost_classes(CostModel::new(SpaceModel::Fixed, TimeModel::log()), 8);
    assert_eq!(fixed.s_costs, 1);
    let gamma = cost_classes(CostModel::new(SpaceModel::EliasGamma, TimeModel::log()), 8);
    assert_eq!(gamma.space_distance_ceilings, vec![1, 3, 7, 8]);
}

#[test]
fn calibrated_defaults() {
    let t = TimeModel::calibrated(MemoryLevels::default());
    match t.access {
        AccessModel::Calibrated(levels) => {
            assert_eq!(levels.miss, [25, 130, 500]);
            assert_eq!(levels.thresholds, [16_000, 2_300_000]);
        }
        AccessModel::Log => unreachable!(),
    }
    assert_eq!(t.literal_access, 0);
}
