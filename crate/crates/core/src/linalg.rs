//! Exact linear algebra over the scalar field on truncated monomial bases.
//! This is the workhorse behind the closure probes: module vectors are
//! coordinatized over a finite window and spans are maintained in reduced
//! row-echelon form by exact Gaussian elimination.

use crate::algebra::Sector;
use crate::modules::SuperVector;
use crate::scalar::Scalar;

/// A finite window onto the module: even monomials with `e1 <= max_e1`,
/// `e2 <= max_e2` (graded-lex order), followed by the odd monomials in the
/// same order when `include_odd` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub max_e1: u32,
    pub max_e2: u32,
    pub include_odd: bool,
}

/// One basis slot of a truncation window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisMonomial {
    pub odd: bool,
    pub e1: u32,
    pub e2: u32,
}

impl Truncation {
    pub fn new(max_e1: u32, max_e2: u32, include_odd: bool) -> Self {
        Truncation {
            max_e1,
            max_e2,
            include_odd,
        }
    }

    fn monomials_per_parity(&self) -> usize {
        (self.max_e1 as usize + 1) * (self.max_e2 as usize + 1)
    }

    pub fn dimension(&self) -> usize {
        self.monomials_per_parity() * if self.include_odd { 2 } else { 1 }
    }

    /// Basis slots in enumeration order: even graded-lex ascending, then odd.
    pub fn basis(&self) -> Vec<BasisMonomial> {
        let mut per_parity: Vec<(u32, u32)> = (0..=self.max_e1)
            .flat_map(|e1| (0..=self.max_e2).map(move |e2| (e1, e2)))
            .collect();
        per_parity.sort_by_key(|&(e1, e2)| (e1 + e2, e1));
        let mut out: Vec<BasisMonomial> = per_parity
            .iter()
            .map(|&(e1, e2)| BasisMonomial { odd: false, e1, e2 })
            .collect();
        if self.include_odd {
            out.extend(per_parity.iter().map(|&(e1, e2)| BasisMonomial {
                odd: true,
                e1,
                e2,
            }));
        }
        out
    }

    /// Position of a monomial in the fixed basis order, if inside the window.
    pub fn index_of(&self, odd: bool, e1: u32, e2: u32) -> Option<usize> {
        if e1 > self.max_e1 || e2 > self.max_e2 || (odd && !self.include_odd) {
            return None;
        }
        // rank within the graded-lex order of the (max_e1, max_e2) grid
        let mut rank = 0usize;
        for a in 0..=self.max_e1 {
            for b in 0..=self.max_e2 {
                if (a + b, a) < (e1 + e2, e1) {
                    rank += 1;
                }
            }
        }
        let offset = if odd { self.monomials_per_parity() } else { 0 };
        Some(offset + rank)
    }

    /// Monomial seed vectors of the window, in basis order.
    pub fn basis_vectors(&self, kind: Sector) -> Vec<SuperVector> {
        self.basis()
            .into_iter()
            .map(|b| {
                if b.odd {
                    SuperVector::basis_odd(kind, b.e1, b.e2)
                } else {
                    SuperVector::basis_even(kind, b.e1, b.e2)
                }
            })
            .collect()
    }
}

/// Coordinates of a vector in the window's basis order, plus a flag set when
/// the vector has terms outside the window (those terms are not represented;
/// callers decide whether that invalidates their probe).
pub fn vectorize(v: &SuperVector, tr: &Truncation) -> (Vec<Scalar>, bool) {
    let mut coords = vec![Scalar::zero(); tr.dimension()];
    let mut overflow = false;
    for (&(e1, e2), c) in v.even().terms() {
        match tr.index_of(false, e1, e2) {
            Some(i) => coords[i] = c.clone(),
            None => overflow = true,
        }
    }
    for (&(e1, e2), c) in v.odd().terms() {
        match tr.index_of(true, e1, e2) {
            Some(i) => coords[i] = c.clone(),
            None => overflow = true,
        }
    }
    (coords, overflow)
}

/// A span maintained in reduced row-echelon form: rows nonzero, pivot
/// columns strictly increasing, pivot entries 1, pivot columns cleared in
/// all other rows. Same span implies identical matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
}

fn pivot_of(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|c| !c.is_zero())
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Insert a vector, reducing it against the span; returns true when the
    /// rank grew.
    pub fn insert(&mut self, mut coords: Vec<Scalar>) -> bool {
        assert_eq!(coords.len(), self.dim, "coordinate dimension mismatch");
        for row in &self.rows {
            let p = pivot_of(row).expect("rows are nonzero");
            if !coords[p].is_zero() {
                let factor = coords[p].clone();
                for (c, r) in coords.iter_mut().zip(row.iter()) {
                    *c -= &(&factor * r);
                }
            }
        }
        let Some(p) = pivot_of(&coords) else {
            return false;
        };
        let inv = coords[p].inv().expect("pivot is nonzero");
        for c in coords.iter_mut() {
            *c *= &inv;
        }
        // clear the new pivot column above and below
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (r, c) in row.iter_mut().zip(coords.iter()) {
                    *r -= &(&factor * c);
                }
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|row| pivot_of(row).expect("rows are nonzero") > p)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, coords);
        true
    }

    pub fn contains(&self, coords: &[Scalar]) -> bool {
        let mut probe = self.clone();
        !probe.insert(coords.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn vectorize_examples() {
        let tr = Truncation::new(1, 1, true);
        let (coords, overflow) = vectorize(&SuperVector::zero(Sector::Ramond), &tr);
        assert!(!overflow);
        assert!(coords.iter().all(|x| x.is_zero()));

        let us = SuperVector::basis_even(Sector::Ramond, 1, 1);
        let (coords, overflow) = vectorize(&us, &tr);
        assert!(!overflow);
        let idx = tr.index_of(false, 1, 1).unwrap();
        assert!(coords[idx].is_one());
        assert_eq!(coords.iter().filter(|x| !x.is_zero()).count(), 1);

        let tr2 = Truncation::new(1, 3, true);
        let too_big = SuperVector::basis_even(Sector::Ramond, 2, 0);
        let (_, overflow) = vectorize(&too_big, &tr2);
        assert!(overflow);
    }

    #[test]
    fn basis_order_and_dimension() {
        let tr = Truncation::new(2, 2, true);
        assert_eq!(tr.dimension(), 18);
        let basis = tr.basis();
        assert_eq!(basis.len(), 18);
        // graded-lex: (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
        assert_eq!((basis[0].e1, basis[0].e2), (0, 0));
        assert_eq!((basis[1].e1, basis[1].e2), (0, 1));
        assert_eq!((basis[2].e1, basis[2].e2), (1, 0));
        assert!(!basis[0].odd && basis[9].odd);
        for (i, b) in basis.iter().enumerate() {
            assert_eq!(tr.index_of(b.odd, b.e1, b.e2), Some(i));
        }
        assert_eq!(tr.index_of(false, 3, 0), None);
        assert_eq!(Truncation::new(2, 2, false).dimension(), 9);
    }

    #[test]
    fn span_insert_basics() {
        let mut span = SpanBasis::new(3);
        assert!(span.insert(vec![c(0), c(2), c(0)]));
        assert!(!span.insert(vec![c(0), c(7), c(0)]));
        assert_eq!(span.rank(), 1);
        assert!(span.insert(vec![c(1), c(0), c(0)]));
        assert_eq!(span.rank(), 2);
        assert!(!span.is_full());
    }

    #[test]
    fn rref_identity_from_hand_elimination() {
        // insert (1,1) and (1,-1): RREF is the 2x2 identity
        let mut span = SpanBasis::new(2);
        assert!(span.insert(vec![c(1), c(1)]));
        assert!(span.insert(vec![c(1), c(-1)]));
        assert_eq!(span.rank(), 2);
        assert_eq!(span.rows(), &[vec![c(1), c(0)], vec![c(0), c(1)]]);
    }

    #[test]
    fn rref_is_canonical_for_equal_spans() {
        // same span presented in different orders and scalings
        let lists = [
            vec![vec![c(1), c(2), c(0)], vec![c(0), c(1), c(1)]],
            vec![vec![c(0), c(3), c(3)], vec![c(2), c(4), c(0)], vec![c(2), c(7), c(3)]],
        ];
        let mut results = Vec::new();
        for list in &lists {
            let mut span = SpanBasis::new(3);
            for v in list {
                span.insert(v.clone());
            }
            results.push(span);
        }
        assert_eq!(results[0], results[1]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_vec() -> impl Strategy<Value = Vec<Scalar>> {
            proptest::collection::vec((-3i64..=3, -2i64..=2), 4).prop_map(|cs| {
                cs.into_iter()
                    .map(|(a, b)| &Scalar::from_int(a) + &(&Scalar::from_int(b) * &Scalar::sqrt2()))
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn insertion_idempotent_and_rank_bounded(vs in proptest::collection::vec(arb_vec(), 1..8)) {
                let mut span = SpanBasis::new(4);
                for v in &vs {
                    span.insert(v.clone());
                }
                let rank = span.rank();
                prop_assert!(rank <= 4);
                // re-inserting anything already seen never grows the span
                for v in &vs {
                    prop_assert!(!span.insert(v.clone()));
                }
                prop_assert_eq!(span.rank(), rank);
                // pivots strictly increasing with unit entries
                let pivots: Vec<usize> = span.rows().iter().map(|r| r.iter().position(|c| !c.is_zero()).unwrap()).collect();
                for w in pivots.windows(2) {
                    prop_assert!(w[0] < w[1]);
                }
                for (row, &p) in span.rows().iter().zip(&pivots) {
                    prop_assert!(row[p].is_one());
                }
            }
        }
    }
}
