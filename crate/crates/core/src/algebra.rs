//! The Ramond and Neveu-Schwarz super-BMS3 Lie superalgebras: basis symbols,
//! finite linear combinations, the superbracket, and the sector embedding.
//!
//! Basis: `L_m`, `W_m` (even), `G_r` (odd), central `C1`, `C2`, where `m` is
//! an integer and `r` is integral (Ramond) or half-integral (Neveu-Schwarz).
//! All indices are stored doubled (`idx2 = 2m`, `idx2 = 2r`) so both sectors
//! share one integer index type; the parity of `idx2` on `G` encodes the
//! sector constraint.
//!
//! Nonzero brackets, bilinear over homogeneous terms:
//!
//! ```text
//! [L_m, L_n] = (n-m) L_{m+n} + ((m^3-m)/12) delta_{m+n,0} C1
//! [L_m, W_n] = (n-m) W_{m+n} + ((m^3-m)/12) delta_{m+n,0} C2
//! [L_m, G_r] = (r - m/2) G_{m+r}
//! [G_r, G_s] = 2 W_{r+s} + ((1-4r^2)/12) delta_{r+s,0} C2
//! ```
//!
//! The G-G central coefficient is the unique quadratic cocycle compatible
//! with the even-sector cocycles above: the super-Jacobi identity forces it
//! (see the `super_jacobi` sweep, which checks every triple exactly).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{Rational, Scalar};
use num::BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("sector mismatch: expected {expected:?}, got {got:?}")]
    SectorMismatch { expected: Sector, got: Sector },
    #[error("index parity invalid for {kind:?} in sector {sector:?}: idx2 = {idx2}")]
    IndexParity {
        kind: GeneratorKind,
        sector: Sector,
        idx2: i64,
    },
}

/// The two variants of the algebra: Ramond (`G` indices integral) and
/// Neveu-Schwarz (`G` indices half-integral).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Sector {
    Ramond,
    NeveuSchwarz,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Ramond => write!(f, "R"),
            Sector::NeveuSchwarz => write!(f, "NS"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    L,
    W,
    G,
    C1,
    C2,
}

/// A basis symbol with doubled index: `L_m <-> idx2 = 2m`, `G_r <-> idx2 = 2r`.
/// Central elements carry `idx2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorIndex {
    pub kind: GeneratorKind,
    pub idx2: i64,
}

impl GeneratorIndex {
    /// Validity within a sector: `L`/`W` always even; `G` even in Ramond and
    /// odd in Neveu-Schwarz; `C1`/`C2` have index zero.
    pub fn valid_in(&self, sector: Sector) -> bool {
        match self.kind {
            GeneratorKind::L | GeneratorKind::W => self.idx2 % 2 == 0,
            GeneratorKind::G => match sector {
                Sector::Ramond => self.idx2 % 2 == 0,
                Sector::NeveuSchwarz => self.idx2 % 2 != 0,
            },
            GeneratorKind::C1 | GeneratorKind::C2 => self.idx2 == 0,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.kind == GeneratorKind::G
    }
}

fn fmt_half_index(idx2: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if idx2 % 2 == 0 {
        write!(f, "{}", idx2 / 2)
    } else {
        write!(f, "{}/2", idx2)
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::L => {
                write!(f, "L[")?;
                fmt_half_index(self.idx2, f)?;
                write!(f, "]")
            }
            GeneratorKind::W => {
                write!(f, "W[")?;
                fmt_half_index(self.idx2, f)?;
                write!(f, "]")
            }
            GeneratorKind::G => {
                write!(f, "G[")?;
                fmt_half_index(self.idx2, f)?;
                write!(f, "]")
            }
            GeneratorKind::C1 => write!(f, "C1"),
            GeneratorKind::C2 => write!(f, "C2"),
        }
    }
}

/// Parity of an element of the superalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// A finite linear combination of basis symbols, tagged with its sector.
/// The zero element of either sector has an empty term map.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    sector: Sector,
    terms: BTreeMap<GeneratorIndex, Scalar>,
}

impl AlgebraElement {
    pub fn zero(sector: Sector) -> Self {
        AlgebraElement {
            sector,
            terms: BTreeMap::new(),
        }
    }

    /// A single generator with unit coefficient.
    pub fn generator(
        sector: Sector,
        kind: GeneratorKind,
        idx2: i64,
    ) -> Result<Self, AlgebraError> {
        let gen = GeneratorIndex { kind, idx2 };
        if !gen.valid_in(sector) {
            return Err(AlgebraError::IndexParity { kind, sector, idx2 });
        }
        let mut terms = BTreeMap::new();
        terms.insert(gen, Scalar::one());
        Ok(AlgebraElement { sector, terms })
    }

    /// `L_m` (index not doubled).
    pub fn l(sector: Sector, m: i64) -> Self {
        Self::generator(sector, GeneratorKind::L, 2 * m).expect("L index always valid")
    }

    /// `W_m` (index not doubled).
    pub fn w(sector: Sector, m: i64) -> Self {
        Self::generator(sector, GeneratorKind::W, 2 * m).expect("W index always valid")
    }

    /// `G_r` with doubled index `idx2 = 2r`.
    pub fn g(sector: Sector, idx2: i64) -> Result<Self, AlgebraError> {
        Self::generator(sector, GeneratorKind::G, idx2)
    }

    pub fn c1(sector: Sector) -> Self {
        Self::generator(sector, GeneratorKind::C1, 0).expect("central always valid")
    }

    pub fn c2(sector: Sector) -> Self {
        Self::generator(sector, GeneratorKind::C2, 0).expect("central always valid")
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, gen: &GeneratorIndex) -> Scalar {
        self.terms.get(gen).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, gen: GeneratorIndex, c: Scalar) {
        debug_assert!(gen.valid_in(self.sector));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&gen) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&gen);
                }
            }
            None => {
                self.terms.insert(gen, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.sector);
        }
        AlgebraElement {
            sector: self.sector,
            terms: self.terms.iter().map(|(&g, v)| (g, v * c)).collect(),
        }
    }

    pub fn add(&self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.sector, rhs.sector, "sector mismatch in element sum");
        let mut out = self.clone();
        for (&g, c) in &rhs.terms {
            out.add_term(g, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &AlgebraElement) -> AlgebraElement {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    /// Even iff the support lies in `{L, W, C1, C2}`, odd iff it lies in
    /// `{G}`; the zero element counts as even.
    pub fn parity(&self) -> Parity {
        let any_odd = self.terms.keys().any(|g| g.is_odd());
        let any_even = self.terms.keys().any(|g| !g.is_odd());
        match (any_even, any_odd) {
            (true, true) => Parity::Mixed,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }
}

impl fmt::Display for AlgebraElement {
    /// Deterministic form sorted by `(kind, idx2)`, e.g. `-4*L[0] + 1/2*C1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (gen, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = crate::poly::coeff_sign_magnitude(c);
            if i == 0 {
                if sign {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if sign { " - " } else { " + " })?;
            }
            match mag {
                Some(m) => write!(f, "{}*{}", m, gen)?,
                None => write!(f, "{}", gen)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn rational(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

/// Bracket of two basis symbols in a common sector.
fn bracket_generators(
    sector: Sector,
    x: &GeneratorIndex,
    y: &GeneratorIndex,
) -> AlgebraElement {
    use GeneratorKind::*;
    let mut out = AlgebraElement::zero(sector);
    let (i, j) = (x.idx2, y.idx2);
    match (x.kind, y.kind) {
        (L, L) => {
            // (n - m) L_{m+n} + ((m^3 - m)/12) delta C1
            let coeff = rational(j - i, 2);
            out.add_term(GeneratorIndex { kind: L, idx2: i + j }, coeff);
            if i + j == 0 {
                out.add_term(GeneratorIndex { kind: C1, idx2: 0 }, ll_cocycle(i));
            }
        }
        (L, W) => {
            let coeff = rational(j - i, 2);
            out.add_term(GeneratorIndex { kind: W, idx2: i + j }, coeff);
            if i + j == 0 {
                out.add_term(GeneratorIndex { kind: C2, idx2: 0 }, ll_cocycle(i));
            }
        }
        (W, L) => {
            return bracket_generators(sector, y, x).scale(&Scalar::from_int(-1));
        }
        (L, G) => {
            // (r - m/2) G_{m+r}: with doubled indices, (2 idx2(G) - idx2(L)) / 4
            let coeff = rational(2 * j - i, 4);
            out.add_term(GeneratorIndex { kind: G, idx2: i + j }, coeff);
        }
        (G, L) => {
            return bracket_generators(sector, y, x).scale(&Scalar::from_int(-1));
        }
        (G, G) => {
            out.add_term(GeneratorIndex { kind: W, idx2: i + j }, Scalar::from_int(2));
            if i + j == 0 {
                out.add_term(GeneratorIndex { kind: C2, idx2: 0 }, gg_cocycle(i));
            }
        }
        // [W, W] = [W, G] = [G, W] = 0; C1, C2 central.
        _ => {}
    }
    out
}

/// `(m^3 - m)/12` with `m = idx2/2`.
fn ll_cocycle(idx2: i64) -> Scalar {
    let m = Rational::new(BigInt::from(idx2), BigInt::from(2));
    let cube = &m * &m * &m;
    Scalar::from_rational((cube - m) / Rational::from_integer(BigInt::from(12)))
}

/// `(1 - 4r^2)/12` with `r = idx2/2`; in doubled form `(1 - idx2^2)/12`.
fn gg_cocycle(idx2: i64) -> Scalar {
    Scalar::from_rational(Rational::new(
        BigInt::from(1 - idx2 * idx2),
        BigInt::from(12),
    ))
}

/// The superbracket, extended bilinearly over the terms of both arguments.
pub fn superbracket(
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    if x.sector != y.sector {
        return Err(AlgebraError::SectorMismatch {
            expected: x.sector,
            got: y.sector,
        });
    }
    let mut out = AlgebraElement::zero(x.sector);
    for (gx, cx) in &x.terms {
        for (gy, cy) in &y.terms {
            let part = bracket_generators(x.sector, gx, gy);
            let factor = cx * cy;
            for (&g, c) in &part.terms {
                out.add_term(g, c * &factor);
            }
        }
    }
    Ok(out)
}

/// Brackets usable by the verification sweeps; the standard implementation
/// is [`SuperBracket`], and deliberately broken variants live in
/// [`crate::faults`] to demonstrate sweep power.
pub trait Bracket {
    fn bracket(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError>;
}

/// The bracket defined in this module.
pub struct SuperBracket;

impl Bracket for SuperBracket {
    fn bracket(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        superbracket(x, y)
    }
}

/// The embedding of the Neveu-Schwarz algebra into the Ramond algebra:
///
/// ```text
/// L_m -> (1/2) L_{2m}     (plus -(1/16) C1 when m = 0)
/// W_m -> (1/2) W_{2m}     (plus -(1/16) C2 when m = 0)
/// G_r -> (sqrt2/2) G_{2r}
/// C_i -> 2 C_i
/// ```
///
/// The central corrections on `L_0`, `W_0`, `C_i` make this an exact
/// homomorphism of the centrally extended algebras; they act as zero on
/// every module built here, so the restricted action only sees the
/// index-doubling part.
pub fn sigma(x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    if x.sector != Sector::NeveuSchwarz {
        return Err(AlgebraError::SectorMismatch {
            expected: Sector::NeveuSchwarz,
            got: x.sector,
        });
    }
    use GeneratorKind::*;
    let half = rational(1, 2);
    let central_shift = rational(-1, 16);
    let two = Scalar::from_int(2);
    let mut out = AlgebraElement::zero(Sector::Ramond);
    for (g, c) in &x.terms {
        match g.kind {
            L => {
                out.add_term(GeneratorIndex { kind: L, idx2: 2 * g.idx2 }, c * &half);
                if g.idx2 == 0 {
                    out.add_term(GeneratorIndex { kind: C1, idx2: 0 }, c * &central_shift);
                }
            }
            W => {
                out.add_term(GeneratorIndex { kind: W, idx2: 2 * g.idx2 }, c * &half);
                if g.idx2 == 0 {
                    out.add_term(GeneratorIndex { kind: C2, idx2: 0 }, c * &central_shift);
                }
            }
            G => {
                out.add_term(
                    GeneratorIndex { kind: G, idx2: 2 * g.idx2 },
                    c * &Scalar::inv_sqrt2(),
                );
            }
            C1 => out.add_term(GeneratorIndex { kind: C1, idx2: 0 }, c * &two),
            C2 => out.add_term(GeneratorIndex { kind: C2, idx2: 0 }, c * &two),
        }
    }
    Ok(out)
}
