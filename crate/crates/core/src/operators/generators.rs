//! The generator families `W, X, Y` (ad of basis pairs) and `p, q, x, z`.

use std::fmt;

use crate::algebra::{Element, FunctionalSpec};
use crate::brackets::TriBracketSpec;
use crate::error::Error;
use crate::rational::{int, rat, Rational};

use super::{op_from_ad, Operator};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Omega,
    Fk { k: i64, f: FunctionalSpec },
}

impl AlgebraKind {
    pub fn spec(&self) -> TriBracketSpec {
        match self {
            AlgebraKind::Omega => TriBracketSpec::Omega,
            AlgebraKind::Fk { k, f } => TriBracketSpec::fk(*k, f.clone()),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec().name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorTag {
    /// `ad(L_r, M_s)`
    W(i64, i64),
    /// `ad(L_r, L_s)`
    X(i64, i64),
    /// `ad(M_r, M_s)`
    Y(i64, i64),
    P(i64),
    Q(i64),
    /// lowercase `x_r`
    SmallX(i64),
    Z(i64),
}

impl GeneratorTag {
    /// Orientation `X(r,s) = -X(s,r)` normalized to `r > s`; the sign is 0
    /// for the vanishing `X(r,r)`, `Y(r,r)`.
    pub fn canonical(self) -> (i64, GeneratorTag) {
        match self {
            GeneratorTag::X(r, s) | GeneratorTag::Y(r, s) if r == s => (0, self),
            GeneratorTag::X(r, s) if r < s => (-1, GeneratorTag::X(s, r)),
            GeneratorTag::Y(r, s) if r < s => (-1, GeneratorTag::Y(s, r)),
            other => (1, other),
        }
    }
}

impl fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorTag::W(r, s) => write!(f, "W({r},{s})"),
            GeneratorTag::X(r, s) => write!(f, "X({r},{s})"),
            GeneratorTag::Y(r, s) => write!(f, "Y({r},{s})"),
            GeneratorTag::P(r) => write!(f, "p({r})"),
            GeneratorTag::Q(r) => write!(f, "q({r})"),
            GeneratorTag::SmallX(r) => write!(f, "x({r})"),
            GeneratorTag::Z(r) => write!(f, "z({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorId {
    pub tag: GeneratorTag,
    pub algebra: AlgebraKind,
}

impl GeneratorId {
    pub fn new(tag: GeneratorTag, algebra: AlgebraKind) -> Self {
        GeneratorId { tag, algebra }
    }

    pub fn omega(tag: GeneratorTag) -> Self {
        Self::new(tag, AlgebraKind::Omega)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.tag, self.algebra)
    }
}

fn ad_combination(spec: &TriBracketSpec, terms: &[(Element, Element, Rational)]) -> Result<Operator, Error> {
    let mut out = op_from_ad(spec, &Element::zero(), &Element::zero())?;
    for (u, v, c) in terms {
        out = out.add(&op_from_ad(spec, u, v)?.scale(c))?;
    }
    Ok(out)
}

pub fn make_generator(id: &GeneratorId) -> Result<Operator, Error> {
    use GeneratorTag::*;
    let spec = id.algebra.spec();
    let (l, m) = (Element::l, Element::m);
    let one = int(1);
    let terms = match id.tag {
        W(r, s) => vec![(l(r), m(s), one)],
        X(r, s) => vec![(l(r), l(s), one)],
        Y(r, s) => vec![(m(r), m(s), one)],
        P(0) => vec![(l(0), m(0), one)],
        P(r) => vec![(l(0), m(-r), rat(1, 2)), (l(r), m(0), rat(1, 2))],
        Q(0) => vec![(l(0), m(0), one), (l(1), m(1), int(-1))],
        Q(r) => vec![(l(0), m(-r), rat(1, r)), (l(r), m(0), rat(-1, r))],
        SmallX(0) => vec![(l(1), l(-1), rat(1, 2))],
        SmallX(r) => vec![(l(r), l(0), rat(1, r))],
        Z(0) => vec![(m(1), m(-1), rat(1, 2))],
        Z(r) => vec![(m(-r), m(0), rat(-1, r))],
    };
    ad_combination(&spec, &terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Basis, Family};
    use crate::operators::{ChannelKey, CoeffFn};
    use crate::poly::Poly;

    fn omega(tag: GeneratorTag) -> Operator {
        make_generator(&GeneratorId::omega(tag)).unwrap()
    }

    fn shift(from: Family, to: Family, sign: i64, offset: i64, coef: Poly) -> (ChannelKey, CoeffFn) {
        (ChannelKey::Shift { from, to, sign, offset }, CoeffFn::poly(coef))
    }

    fn build(channels: Vec<(ChannelKey, CoeffFn)>) -> Operator {
        let mut op = Operator::zero();
        for (k, c) in channels {
            op.add_channel(k, c);
        }
        op
    }

    #[test]
    fn closed_forms_for_all_r() {
        use Family::{L, M};
        for r in -6i64..=6 {
            // p_r: L_t -> (r - 2t)/2 L_{t+r}, M_t -> (2t + r)/2 M_{t-r}
            let p = build(vec![shift(L, L, 1, r, Poly::linear(rat(r, 2), int(-1))), shift(M, M, 1, -r, Poly::linear(rat(r, 2), int(1)))]);
            assert_eq!(omega(GeneratorTag::P(r)), p, "p({r})");
            let q = build(vec![shift(L, L, 1, r, Poly::constant(int(-1))), shift(M, M, 1, -r, Poly::constant(int(1)))]);
            assert_eq!(omega(GeneratorTag::Q(r)), q, "q({r})");
            let x = build(vec![shift(M, L, -1, r, Poly::constant(int(-1)))]);
            assert_eq!(omega(GeneratorTag::SmallX(r)), x, "x({r})");
            let z = build(vec![shift(L, M, -1, -r, Poly::constant(int(-1)))]);
            assert_eq!(omega(GeneratorTag::Z(r)), z, "z({r})");
        }
    }

    #[test]
    fn spec_examples() {
        let w00 = omega(GeneratorTag::W(0, 0));
        assert_eq!(w00.apply(&Element::l(5)).unwrap(), Element::term(Basis::l(5), int(-5)));
        let q0 = omega(GeneratorTag::Q(0));
        assert_eq!(q0.apply(&Element::m(3)).unwrap(), Element::m(3));
        assert!(omega(GeneratorTag::SmallX(2)).apply(&Element::l(1)).unwrap().is_zero());
    }

    #[test]
    fn orientation() {
        assert_eq!(GeneratorTag::X(-1, 1).canonical(), (-1, GeneratorTag::X(1, -1)));
        assert_eq!(GeneratorTag::Y(2, 2).canonical().0, 0);
        for (r, s) in [(1, 3), (-2, 4)] {
            let a = omega(GeneratorTag::X(r, s));
            let (sign, tag) = GeneratorTag::X(r, s).canonical();
            assert_eq!(a, omega(tag).scale(&int(sign)));
        }
    }
}
