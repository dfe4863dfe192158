//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::algebra::{Basis, Element, Family};
use crate::rational::rat;

pub fn basis(bound: i64) -> impl Strategy<Value = Basis> {
    (any::<bool>(), -bound..=bound).prop_map(|(l, i)| Basis::new(if l { Family::L } else { Family::M }, i))
}

pub fn element(bound: i64, max_terms: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((basis(bound), -6i64..=6, 1i64..=4), 0..=max_terms)
        .prop_map(|terms| Element::from_terms(terms.into_iter().map(|(b, n, d)| (b, rat(n, d)))))
}
