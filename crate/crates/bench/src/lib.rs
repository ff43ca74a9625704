//! Fixtures shared by the benchmarks.

use realign_core::families::random_ginibre_state;
use realign_core::{realign, ComplexMatrix};

/// Realigned Ginibre states for a `d ⊗ d` system, one per seed.
pub fn realigned_ginibre(d: usize, count: usize, seed: u64) -> Vec<ComplexMatrix> {
    (0..count as u64)
        .map(|i| {
            let rho = random_ginibre_state(d, d, seed.wrapping_add(i)).expect("d >= 2");
            realign(&rho)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_the_realigned_shape() {
        let ms = realigned_ginibre(3, 4, 0);
        assert_eq!(ms.len(), 4);
        assert!(ms.iter().all(|m| m.rows() == 9 && m.cols() == 9));
    }
}
