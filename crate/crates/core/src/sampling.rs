//! Seeded pseudo-random elements for sweeps beyond basis tuples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Basis, Element, Family};
use crate::rational::{rat, Rational};
use crate::window::Window;

fn coefficient_pool() -> [Rational; 8] {
    [rat(1, 1), rat(-1, 1), rat(1, 2), rat(-1, 2), rat(2, 1), rat(-2, 1), rat(1, 3), rat(-1, 3)]
}

/// Deterministic generator of elements with support size 1..=4, indices in
/// the window and coefficients from `{±1, ±1/2, ±2, ±1/3}`.
pub struct ElementSampler {
    rng: ChaCha8Rng,
    window: Window,
    pool: [Rational; 8],
}

impl ElementSampler {
    pub fn new(seed: u64, window: Window) -> Self {
        ElementSampler { rng: ChaCha8Rng::seed_from_u64(seed), window, pool: coefficient_pool() }
    }

    fn basis(&mut self) -> Basis {
        let family = if self.rng.gen_bool(0.5) { Family::L } else { Family::M };
        let index = self.rng.gen_range(self.window.lo()..=self.window.hi());
        Basis::new(family, index)
    }

    /// A nonzero coefficient from the pool.
    pub fn coefficient(&mut self) -> Rational {
        self.pool[self.rng.gen_range(0..self.pool.len())].clone()
    }

    /// A nonzero element with at most `max_terms` terms.
    pub fn element_with(&mut self, max_terms: usize) -> Element {
        loop {
            let n = self.rng.gen_range(1..=max_terms.max(1));
            let mut e = Element::zero();
            for _ in 0..n {
                let b = self.basis();
                let c = self.pool[self.rng.gen_range(0..self.pool.len())].clone();
                e.add_term(b, c);
            }
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn element(&mut self) -> Element {
        self.element_with(4)
    }

    /// An element with exactly `n` distinct basis vectors (capped by the window size).
    pub fn element_exact(&mut self, n: usize) -> Element {
        let n = n.min(self.window.dim());
        let mut e = Element::zero();
        while e.len() < n {
            let b = self.basis();
            if e.coeff(b) == rat(0, 1) {
                let c = self.pool[self.rng.gen_range(0..self.pool.len())].clone();
                e.add_term(b, c);
            }
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_window() {
        let w = Window::symmetric(3);
        let mut a = ElementSampler::new(7, w);
        let mut b = ElementSampler::new(7, w);
        for _ in 0..50 {
            let x = a.element();
            assert_eq!(x, b.element());
            assert!(!x.is_zero() && x.len() <= 4 && x.is_supported_in(&w));
        }
        let mut c = ElementSampler::new(1, w);
        assert_eq!(c.element_exact(4).len(), 4);
    }
}
