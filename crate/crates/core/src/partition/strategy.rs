//! The three assignment strategies. Each returns one instance list per part,
//! with part `p` holding exactly `targets[p]` instances.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::MlDataset;
use crate::labelset::Labelset;
use crate::rng::SplitMix64;
use crate::stats::label_counts;

/// Shuffle all indices, then cut contiguous slices of the target sizes.
pub(super) fn random(n: usize, targets: &[usize], rng: &mut SplitMix64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut rest = order.as_slice();
    targets
        .iter()
        .map(|&size| {
            let (head, tail) = rest.split_at(size);
            rest = tail;
            head.to_vec()
        })
        .collect()
}

/// Labelset stratification.
///
/// Instances sharing a labelset form a group; groups are visited in canonical
/// labelset order and each group is shuffled. Part `p` first receives
/// `floor(group_size * share_p)` instances of the group, in part order, capped
/// by the room the part has left. The group's leftover instances then go one
/// by one to the part with the most room left (ties to the lower index).
pub(super) fn stratified(
    dataset: &MlDataset,
    weights: &[u64],
    targets: &[usize],
    rng: &mut SplitMix64,
) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<&Labelset, Vec<usize>> = BTreeMap::new();
    for (i, labelset) in dataset.labels().iter().enumerate() {
        groups.entry(labelset).or_default().push(i);
    }
    let total: u128 = weights.iter().map(|&w| w as u128).sum();
    let mut parts: Vec<Vec<usize>> = targets.iter().map(|&t| Vec::with_capacity(t)).collect();
    let mut room = targets.to_vec();

    for mut members in groups.into_values() {
        rng.shuffle(&mut members);
        let size = members.len() as u128;
        let mut members = members.into_iter();
        for (part, &w) in weights.iter().enumerate() {
            let quota = ((size * w as u128 / total) as usize).min(room[part]);
            for i in members.by_ref().take(quota) {
                parts[part].push(i);
                room[part] -= 1;
            }
        }
        for i in members {
            let part = most_room(&room);
            parts[part].push(i);
            room[part] -= 1;
        }
    }
    parts
}

fn most_room(room: &[usize]) -> usize {
    let mut best = 0;
    for (p, &r) in room.iter().enumerate() {
        if r > room[best] {
            best = p;
        }
    }
    best
}

/// Iterative stratification.
///
/// Each part starts with a desired count per label equal to its share of that
/// label's occurrences. Desired counts are exact rationals over the common
/// denominator `sum(weights)`; only numerators are stored.
///
/// Repeatedly, the label with the fewest still-unassigned instances (ties to
/// the lower label index) is selected and each of its unassigned instances,
/// in ascending index order, goes to the part with room left that has the
/// largest desired count for that label; ties go to the part with the most
/// room, then to a generator draw among the remaining tied parts. Assigning
/// an instance lowers the part's desired count of every label the instance
/// carries. Instances with empty labelsets are assigned last, each to the
/// part with the most room (ties drawn).
pub(super) fn iterative(
    dataset: &MlDataset,
    weights: &[u64],
    targets: &[usize],
    rng: &mut SplitMix64,
) -> Vec<Vec<usize>> {
    let n = dataset.num_instances();
    let k = dataset.num_labels();
    let denominator: i128 = weights.iter().map(|&w| w as i128).sum();
    let counts = label_counts(dataset);

    let mut desired: Vec<Vec<i128>> = weights
        .iter()
        .map(|&w| counts.iter().map(|&c| w as i128 * c as i128).collect())
        .collect();
    let mut room = targets.to_vec();
    let mut remaining = counts;
    let mut assigned = vec![false; n];
    let mut parts: Vec<Vec<usize>> = targets.iter().map(|&t| Vec::with_capacity(t)).collect();

    let mut with_label: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, labelset) in dataset.labels().iter().enumerate() {
        for j in labelset.iter() {
            with_label[j].push(i);
        }
    }

    let mut tied = Vec::with_capacity(parts.len());
    while let Some(label) = (0..k).filter(|&j| remaining[j] > 0).min_by_key(|&j| (remaining[j], j)) {
        for &i in &with_label[label] {
            if assigned[i] {
                continue;
            }
            let best = (0..parts.len())
                .filter(|&p| room[p] > 0)
                .map(|p| (desired[p][label], room[p]))
                .max()
                .expect("room left while instances remain");
            tied.clear();
            tied.extend((0..parts.len()).filter(|&p| room[p] > 0 && (desired[p][label], room[p]) == best));
            let part = tied[rng.pick(tied.len())];

            parts[part].push(i);
            assigned[i] = true;
            room[part] -= 1;
            for j in dataset.labelset(i).iter() {
                desired[part][j] -= denominator;
                remaining[j] -= 1;
            }
        }
    }

    for i in (0..n).filter(|&i| !assigned[i]) {
        let most = room.iter().copied().max().unwrap_or(0);
        tied.clear();
        tied.extend((0..parts.len()).filter(|&p| room[p] == most));
        let part = tied[rng.pick(tied.len())];
        parts[part].push(i);
        room[part] -= 1;
    }
    parts
}
