//! Shared fixtures for the benchmarks.

use krein_riccati::hamiltonian::{assemble, HamiltonianMatrix};
use krein_riccati::rng::DetRng;
use krein_riccati::tol::Tolerances;

/// Uniformly positive instance of half-dimension n.
pub fn fixture(seed: u64, n: usize) -> HamiltonianMatrix {
    let tols = Tolerances::default();
    let mut rng = DetRng::new(seed);
    let a = rng.matrix(n, n);
    let b = rng.psd_plus(n, 0.8);
    let c = rng.psd_plus(n, 0.8);
    assemble(&a, &b, &c, &tols).unwrap()
}
