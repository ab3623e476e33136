//! Seeded random shapes and tableaux for property tests and sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::shapes::{Cell, SkewShape, StrictPartition};
use crate::tableaux::{Kind, MarkedLetter, ShiftedTableau};

/// A uniformly chosen strict partition of a uniformly chosen weight in `0..=max_weight`.
pub fn strict_partition<R: Rng>(rng: &mut R, max_weight: u32) -> StrictPartition {
    let weight = rng.gen_range(0..=max_weight);
    StrictPartition::all_of_weight(weight)
        .choose(rng)
        .cloned()
        .unwrap_or_else(StrictPartition::empty)
}

/// A skew shape `λ/μ` with between 1 and `max_cells` cells.
pub fn skew_shape<R: Rng>(rng: &mut R, max_cells: u32) -> SkewShape {
    loop {
        let outer = strict_partition(rng, max_cells + 3);
        if outer.is_empty() {
            continue;
        }
        let inners: Vec<StrictPartition> = (0..outer.weight())
            .flat_map(StrictPartition::all_of_weight)
            .filter(|mu| outer.contains(mu) && outer.weight() - mu.weight() <= max_cells)
            .collect();
        if let Some(inner) = inners.choose(rng) {
            return SkewShape::new(outer, inner.clone()).expect("contained");
        }
    }
}

/// A random tableau of the given kind with bases `≤ max_base`, built cell by cell in
/// row-major order from the letters allowed by the left and upper neighbours. Dead ends
/// restart from scratch.
pub fn tableau<R: Rng>(rng: &mut R, kind: Kind, shape: &SkewShape, max_base: u32) -> ShiftedTableau<MarkedLetter> {
    let cells = shape.cells();
    let alphabet: Vec<MarkedLetter> = (1..=max_base)
        .flat_map(|b| [MarkedLetter::primed(b), MarkedLetter::plain(b)])
        .collect();
    'restart: loop {
        let mut filled: Vec<MarkedLetter> = Vec::with_capacity(cells.len());
        for (k, &cell) in cells.iter().enumerate() {
            let at = |c: Cell| cells[..k].binary_search(&c).ok().map(|p| filled[p]);
            let left = if cell.col > 1 { at(Cell::new(cell.row, cell.col - 1)) } else { None };
            let above = if cell.row > 1 { at(Cell::new(cell.row - 1, cell.col)) } else { None };
            let options: Vec<MarkedLetter> = alphabet
                .iter()
                .copied()
                .filter(|&x| left.is_none_or(|l| l < x || (l == x && !x.marked)))
                .filter(|&x| above.is_none_or(|a| a < x || (a == x && x.marked)))
                .filter(|&x| !(kind == Kind::P && x.marked && cell.is_diagonal()))
                .collect();
            match options.choose(rng) {
                Some(&x) => filled.push(x),
                None => continue 'restart,
            }
        }
        return ShiftedTableau::from_row_major(shape.clone(), filled).expect("filling matches shape");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let shape = skew_shape(&mut rng, 8);
            assert!((1..=8).contains(&shape.size()));
            for kind in [Kind::P, Kind::Q] {
                let t = tableau(&mut rng, kind, &shape, 4);
                assert_eq!(validate(kind, &t), Ok(()));
                assert!(t.entries().all(|l| l.base <= 4));
            }
        }
        let a = skew_shape(&mut ChaCha8Rng::seed_from_u64(3), 6);
        let b = skew_shape(&mut ChaCha8Rng::seed_from_u64(3), 6);
        assert_eq!(a, b);
    }
}
