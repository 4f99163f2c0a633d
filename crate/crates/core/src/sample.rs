//! Seeded random generators for groups, elements, cobordisms and words,
//! shared by the property suites, the round-trip report and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cobordism::{Cobordism, Component};
use crate::group::{AbelianGroup, GroupElement};
use crate::tqft::{Generator, Slice, Word};

/// Free coordinates are drawn from `-3..=3`, torsion coordinates uniformly.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, group: &AbelianGroup) -> GroupElement {
    let mut coords: Vec<i64> = (0..group.free_rank()).map(|_| rng.gen_range(-3..=3)).collect();
    coords.extend(
        group
            .torsion_orders()
            .iter()
            .map(|&m| rng.gen_range(0..m as i64)),
    );
    group
        .element(&coords)
        .expect("coordinates match the group's shape")
}

/// A group with free rank at most 2 and at most 3 torsion factors of order ≤ 12.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R) -> AbelianGroup {
    let rank = rng.gen_range(0..=2);
    let torsion: Vec<u64> = (0..rng.gen_range(0..=3))
        .map(|_| rng.gen_range(2..=12))
        .collect();
    let mut torsion = torsion;
    torsion.sort_unstable();
    AbelianGroup::new(rank, torsion).expect("orders are at least 2 and sorted")
}

/// A random `m → n` cobordism: ports are scattered over up to `m + n` open
/// components, plus up to two closed ones. Genus is at most 2.
pub fn random_cobordism<R: Rng + ?Sized>(
    rng: &mut R,
    group: &AbelianGroup,
    m: usize,
    n: usize,
) -> Cobordism {
    let ports = m + n;
    let slots = rng.gen_range(1..=ports.max(1));
    let mut inputs = vec![Vec::new(); slots];
    let mut outputs = vec![Vec::new(); slots];
    for p in 0..m {
        inputs[rng.gen_range(0..slots)].push(p);
    }
    for q in 0..n {
        outputs[rng.gen_range(0..slots)].push(q);
    }
    let mut components: Vec<Component> = inputs
        .into_iter()
        .zip(outputs)
        .filter(|(i, o)| !i.is_empty() || !o.is_empty())
        .map(|(i, o)| Component::new(rng.gen_range(0..=2), i, o, random_element(rng, group)))
        .collect();
    for _ in 0..rng.gen_range(0..=2) {
        if rng.gen_bool(0.5) {
            components.push(Component::new(
                rng.gen_range(0..=2),
                [],
                [],
                random_element(rng, group),
            ));
        }
    }
    Cobordism::new(m, n, components, group.clone()).expect("ports are partitioned")
}

/// Three cobordisms `a: w0 → w1`, `b: w1 → w2`, `c: w2 → w3` with all widths at most `max_width`.
pub fn random_composable_triple<R: Rng + ?Sized>(
    rng: &mut R,
    group: &AbelianGroup,
    max_width: usize,
) -> (Cobordism, Cobordism, Cobordism) {
    let w: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=max_width)).collect();
    (
        random_cobordism(rng, group, w[0], w[1]),
        random_cobordism(rng, group, w[1], w[2]),
        random_cobordism(rng, group, w[2], w[3]),
    )
}

/// Size limits for [`random_word`].
#[derive(Clone, Copy, Debug)]
pub struct WordShape {
    /// Maximum number of circles between any two slices.
    pub max_width: usize,
    pub max_slices: usize,
    /// Maximum source and target of the whole word.
    pub max_boundary: usize,
}

impl Default for WordShape {
    fn default() -> Self {
        WordShape {
            max_width: 6,
            max_slices: 8,
            max_boundary: 3,
        }
    }
}

fn random_slice<R: Rng + ?Sized>(
    rng: &mut R,
    group: &AbelianGroup,
    width: usize,
    max_width: usize,
) -> Slice {
    loop {
        let mut gens = Vec::new();
        let mut left = width;
        while left > 0 {
            if rng.gen_bool(0.1) {
                gens.push(zero_input(rng, group));
                continue;
            }
            let mut choices = vec![0, 0, 1, 1, 2, 4];
            if left >= 2 {
                choices.extend([3, 3, 5]);
            }
            let g = match *choices.choose(rng).expect("nonempty") {
                0 => Generator::Id,
                1 => Generator::Cyl(random_element(rng, group)),
                2 => Generator::Cap,
                3 => Generator::Pants,
                4 => Generator::Copants,
                _ => Generator::Swap,
            };
            left -= g.source();
            gens.push(g);
        }
        if width == 0 || rng.gen_bool(0.15) {
            let at = rng.gen_range(0..=gens.len());
            gens.insert(at, zero_input(rng, group));
        }
        let slice = Slice(gens);
        if slice.target() <= max_width {
            return slice;
        }
    }
}

fn zero_input<R: Rng + ?Sized>(rng: &mut R, group: &AbelianGroup) -> Generator {
    if rng.gen_bool(0.8) {
        Generator::Cup
    } else {
        Generator::Closed {
            genus: rng.gen_range(0..=2),
            label: random_element(rng, group),
        }
    }
}

/// A random word within `shape`. Words whose final width exceeds the
/// boundary limit are resampled.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    group: &AbelianGroup,
    shape: WordShape,
) -> Word {
    loop {
        let source = rng.gen_range(0..=shape.max_boundary);
        let mut width = source;
        let mut slices = Vec::new();
        for _ in 0..rng.gen_range(1..=shape.max_slices) {
            let s = random_slice(rng, group, width, shape.max_width);
            width = s.target();
            slices.push(s);
        }
        if width <= shape.max_boundary {
            return Word(slices);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_respect_limits_and_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = AbelianGroup::cyclic(4).unwrap();
        for _ in 0..300 {
            let w = random_word(&mut rng, &g, WordShape::default());
            assert!(w.source() <= 3 && w.target() <= 3);
            assert!(!w.0.is_empty() && w.0.len() <= 8);
            for pair in w.0.windows(2) {
                assert_eq!(pair[0].target(), pair[1].source());
            }
            assert!(w.0.iter().all(|s| s.target() <= 6));
            assert!(w.compose(&g).is_ok());
        }
    }

    #[test]
    fn generated_groups_and_elements_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let g = random_group(&mut rng);
            let x = random_element(&mut rng, &g);
            assert!(g.contains(&x));
        }
    }
}
