//! Monomial orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MAX_VARS};

/// A monomial order on the ring's variables, highest priority first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Pure lexicographic, `x_0 > x_1 > ...`.
    Lex,
    /// Block order eliminating the first `k` variables: grevlex on the
    /// block `x_0..x_k`, ties broken by grevlex on the remaining variables.
    Elimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a.exps(), b.exps()),
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Elimination(k) => grevlex(&a.exps()[..k], &b.exps()[..k])
                .then_with(|| grevlex(&a.exps()[k..], &b.exps()[k..])),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elim({k})"),
        }
    }
}

#[inline]
fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Compares two exponent vectors of equal length under `order`.
pub fn compare(order: MonomialOrder, a: &[u32], b: &[u32]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::ArityMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() > MAX_VARS {
        return Err(Error::Input(format!(
            "at most {MAX_VARS} variables are supported"
        )));
    }
    if let MonomialOrder::Elimination(k) = order {
        if k > a.len() {
            return Err(Error::Input(format!(
                "cannot eliminate {k} of {} variables",
                a.len()
            )));
        }
    }
    Ok(order.cmp(&Monomial::from_exponents(a)?, &Monomial::from_exponents(b)?))
}
