//! Row echelon bookkeeping for spans of lattice elements over `ℚ(v)`.

use std::collections::BTreeMap;

use crate::lattice::LatticeElement;
use crate::root_data::Coweight;


/// Rows with pairwise distinct leading exponents, each with leading
/// coefficient one.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<Coweight, LatticeElement>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `f` until its leading exponent is not a pivot.
    pub fn reduce(&self, f: &LatticeElement) -> LatticeElement {
        let mut rest = f.clone();
        while let Some((lead, c)) = rest.leading_term() {
            let Some(row) = self.rows.get(lead) else { break };
            let c = c.clone();
            rest.sub_scaled(row, &c);
        }
        rest
    }

    pub fn contains(&self, f: &LatticeElement) -> bool {
        self.reduce(f).is_zero()
    }

    /// Adds `f` to the span; returns `false` if it was already in it.
    pub fn insert(&mut self, f: &LatticeElement) -> bool {
        let rest = self.reduce(f);
        let Some((lead, c)) = rest.leading_term() else {
            return false;
        };
        let lead = lead.clone();
        let inv = c.inv().expect("leading coefficient is nonzero");
        self.rows.insert(lead, rest.scale(&inv));
        true
    }
}

/// Whether the given elements are linearly independent over `ℚ(v)`.
pub fn linearly_independent<'a>(elements: impl IntoIterator<Item = &'a LatticeElement>) -> bool {
    let mut basis = EchelonBasis::new();
    elements.into_iter().all(|f| basis.insert(f))
}
