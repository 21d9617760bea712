//! Occupancy-truncated Fock space for exact few-photon calculations.
//!
//! States are occupation vectors `(n_1, ..., n_N)` with a cap on the total
//! excitation number and on each local occupancy. The basis is enumerated in
//! lexicographic order, so indices are reproducible across runs.

use crate::model::HubbardParams;
use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::collections::HashMap;

/// Hard cap on the truncated Fock dimension; exact dense propagation is
/// only intended for desk-scale instances.
pub const DIMENSION_CAP: usize = 20_000;

#[derive(Debug, thiserror::Error)]
#[error("Fock dimension {dim} exceeds cap {cap}")]
pub struct DimensionCapExceeded {
    pub dim: usize,
    pub cap: usize,
}

/// Enumerated occupation basis with `sum_v n_v <= max_total` and
/// `n_v <= max_local`.
#[derive(Debug, Clone)]
pub struct FockBasis {
    pub n_sites: usize,
    pub max_total: u32,
    pub max_local: u32,
    states: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl FockBasis {
    pub fn new(
        n_sites: usize,
        max_total: u32,
        max_local: u32,
    ) -> Result<Self, DimensionCapExceeded> {
        let mut states = Vec::new();
        let mut current = vec![0u32; n_sites];
        enumerate(&mut states, &mut current, 0, max_total, max_local);
        if states.len() > DIMENSION_CAP {
            return Err(DimensionCapExceeded {
                dim: states.len(),
                cap: DIMENSION_CAP,
            });
        }
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Self {
            n_sites,
            max_total,
            max_local,
            states,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> &[u32] {
        &self.states[i]
    }

    pub fn index_of(&self, occ: &[u32]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    /// Hamiltonian matrix of a Bose-Hubbard model on this basis.
    ///
    /// `couplings_on` includes the hopping terms; `chi_on` selects the sites
    /// whose anharmonicity is active (toggling support). Port losses are not
    /// included here.
    pub fn hamiltonian(
        &self,
        p: &HubbardParams,
        couplings_on: bool,
        chi_on: &[bool],
    ) -> Array2<C64> {
        let d = self.dim();
        let mut h = Array2::zeros((d, d));
        for (i, occ) in self.states.iter().enumerate() {
            let mut diag = C64::new(0.0, 0.0);
            for v in 0..self.n_sites {
                let n = occ[v] as f64;
                diag += p.mu[v] * n;
                if chi_on[v] {
                    diag += C64::new(p.chi[v] * n * (n - 1.0) / 2.0, 0.0);
                }
            }
            h[[i, i]] += diag;
            if couplings_on {
                for &(a, b) in p.graph.edges() {
                    // J_{a,b} a_a^dag a_b moves a photon b -> a; h.c. moves a -> b.
                    for (src, dst, j) in
                        [(b, a, p.coupling(a, b)), (a, b, p.coupling(b, a))]
                    {
                        if occ[src] == 0 || occ[dst] >= self.max_local {
                            continue;
                        }
                        let mut target = occ.clone();
                        target[src] -= 1;
                        target[dst] += 1;
                        if let Some(k) = self.index_of(&target) {
                            let amp =
                                ((occ[src] as f64) * (occ[dst] as f64 + 1.0)).sqrt();
                            h[[k, i]] += j * amp;
                        }
                    }
                }
            }
        }
        h
    }
}

fn enumerate(
    states: &mut Vec<Vec<u32>>,
    current: &mut Vec<u32>,
    site: usize,
    remaining: u32,
    max_local: u32,
) {
    if site == current.len() {
        states.push(current.clone());
        return;
    }
    for n in 0..=remaining.min(max_local) {
        current[site] = n;
        enumerate(states, current, site + 1, remaining - n, max_local);
    }
    current[site] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LatticeGraph;
    use crate::model::HubbardParams;

    #[test]
    fn basis_counts() {
        // 3 sites, up to 2 excitations total: 1 + 3 + 6 = 10 states.
        let b = FockBasis::new(3, 2, 2).unwrap();
        assert_eq!(b.dim(), 10);
        // hard-core variant drops the three doubly-occupied states.
        let hc = FockBasis::new(3, 2, 1).unwrap();
        assert_eq!(hc.dim(), 7);
    }

    #[test]
    fn hamiltonian_is_hermitian_for_lossless_model() {
        let g = LatticeGraph::new(3, [(0, 1), (1, 2)], [0]).unwrap();
        let p = HubbardParams::new(
            g,
            vec![C64::new(1.0, 0.0), C64::new(1.3, 0.0), C64::new(0.7, 0.0)],
            vec![
                ((0, 1), C64::new(0.5, 0.2)),
                ((1, 2), C64::new(0.4, -0.1)),
            ],
            vec![0.1, 0.2, 0.3],
            vec![],
        )
        .unwrap();
        let b = FockBasis::new(3, 2, 2).unwrap();
        let h = b.hamiltonian(&p, true, &[true, true, true]);
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                assert!((h[[i, j]] - h[[j, i]].conj()).norm() < 1e-14);
            }
        }
    }
}
