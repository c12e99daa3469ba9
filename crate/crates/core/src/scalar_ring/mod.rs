//! Exact arithmetic in Q(q)^π and the (q,π)-combinatorics of generators.

mod binomial;
mod laurent;
mod parse;
mod ratfn;
mod scalar;
mod zpoly;

pub use binomial::{choose2, qbinom, qfact, qint, GenParams};
pub use laurent::LaurentPoly;
pub use parse::parse_scalar;
pub(crate) use parse::parse_terms;
pub use ratfn::RationalFn;
pub use scalar::{Scalar, Sign};

/// Apply the bar involution.
pub fn bar_scalar(s: &Scalar) -> Scalar {
    s.bar()
}

/// Value of `s` in the requested sign component.
pub fn specialize(s: &Scalar, sign: Sign) -> RationalFn {
    s.specialize(sign)
}

/// Membership in the Laurent subring with its witness `s = a + bπ`.
pub fn is_laurent(s: &Scalar) -> Option<(LaurentPoly, LaurentPoly)> {
    s.is_laurent()
}
