//! Deliberate single-site mutations of the bracket, action, and map
//! formulas. Each variant changes exactly one site of one formula; the
//! fault-injection suite runs every variant against the sweeps and asserts
//! that at least one sweep catches it. A sweep that cannot kill any mutant
//! of the formulas it guards has no power, so this module is part of the
//! verification contract, not test scaffolding.
//!
//! Mutants are expressed as the true operation plus an explicit correction
//! term, which keeps each mutation auditable as single-site.

use crate::algebra::{
    sigma, superbracket, AlgebraElement, AlgebraError, Bracket, GeneratorKind, Sector,
};
use crate::modules::{
    act_ramond, psi, quotient_act, ModuleAction, ModuleError, ModuleParams, QuotientAction,
    QuotientVector, SuperVector,
};
use crate::poly::{divided_difference, h_m, Poly1, Poly2};
use crate::scalar::Scalar;

/// Single-site mutations of the four bracket families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketFault {
    /// `[L_m, L_n]`: drop the central `C1` term entirely.
    LlDropCentral,
    /// `[L_m, L_n]`: coefficient `(n-m)` becomes `(n+m)`.
    LlSymmetricCoefficient,
    /// `[L_m, W_n]`: coefficient `(n-m)` becomes `(n-2m)`.
    LwCoefficient,
    /// `[L_m, G_r]`: coefficient `(r - m/2)` becomes `(r - m)`.
    LgCoefficient,
    /// `[G_r, G_s]`: `2 W_{r+s}` becomes `W_{r+s}`.
    GgHalfScale,
}

/// The true superbracket plus the correction of one [`BracketFault`].
pub struct MutatedBracket(pub BracketFault);

impl Bracket for MutatedBracket {
    fn bracket(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        let mut out = superbracket(x, y)?;
        let sector = out.sector();
        for (gx, cx) in x.terms() {
            for (gy, cy) in y.terms() {
                let factor = cx * cy;
                let (i, j) = (gx.idx2, gy.idx2);
                match (self.0, gx.kind, gy.kind) {
                    (BracketFault::LlDropCentral, GeneratorKind::L, GeneratorKind::L) => {
                        if i + j == 0 {
                            let omega = ll_cocycle_value(i);
                            out = out.add(
                                &AlgebraElement::c1(sector).scale(&(&-&omega * &factor)),
                            );
                        }
                    }
                    (BracketFault::LlSymmetricCoefficient, GeneratorKind::L, GeneratorKind::L) => {
                        // (n+m) - (n-m) = 2m = idx2 of the first argument
                        let delta = Scalar::from_int(i);
                        out = out.add(
                            &AlgebraElement::l(sector, (i + j) / 2)
                                .scale(&(&delta * &factor)),
                        );
                    }
                    (BracketFault::LwCoefficient, GeneratorKind::L, GeneratorKind::W) => {
                        // (n-2m) - (n-m) = -m
                        let delta = Scalar::from_ratio(-i, 2);
                        out = out.add(
                            &AlgebraElement::w(sector, (i + j) / 2)
                                .scale(&(&delta * &factor)),
                        );
                    }
                    (BracketFault::LgCoefficient, GeneratorKind::L, GeneratorKind::G) => {
                        // (r-m) - (r-m/2) = -m/2
                        let delta = Scalar::from_ratio(-i, 4);
                        out = out.add(
                            &AlgebraElement::g(sector, i + j)
                                .expect("sum index keeps parity")
                                .scale(&(&delta * &factor)),
                        );
                    }
                    (BracketFault::GgHalfScale, GeneratorKind::G, GeneratorKind::G) => {
                        out = out.add(
                            &AlgebraElement::w(sector, (i + j) / 2).scale(&(&-&factor).clone()),
                        );
                    }
                    _ => {}
                }
            }
        }
        Ok(out)
    }
}

fn ll_cocycle_value(idx2: i64) -> Scalar {
    let m = Scalar::from_ratio(idx2, 2);
    let num = &(&m * &m * &m) - &m;
    &num * &Scalar::from_ratio(1, 12)
}

/// Single-site mutations of the Ramond action formulas, one per formula
/// (L/W/G/C on the even and odd parts), plus two extra kill switches for
/// the invariance and closure probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamondFault {
    /// L on even: derivative factor `(u - m a)` becomes `(u + m a)`.
    LEvenDerivativeFactor,
    /// L on odd: the `-m/2` in the multiplier is dropped.
    LOddDropHalfShift,
    /// W on even: the shift `f(u, s-m)` becomes `f(u, s+m)`.
    WEvenShiftSign,
    /// W on odd: the action is doubled.
    WOddDoubled,
    /// G on even: the shift `f(u, s-m)` becomes `f(u, s)`.
    GEvenDropShift,
    /// G on even: the action is zeroed (kills the closure probe).
    GEvenZero,
    /// G on odd: `(u - 2 m a)` becomes `(u - m a)`.
    GOddAlphaCoefficient,
    /// C_i on even: acts as the identity instead of zero.
    CEvenIdentity,
    /// C_i on odd: acts as the identity instead of zero.
    COddIdentity,
    /// L on even: derivative factor `(u - m a)` becomes `1`
    /// (kills the pi-invariance probe at alpha = 0).
    LEvenBareDerivative,
}

/// The true Ramond action plus the correction of one [`RamondFault`].
pub struct MutatedRamondAction {
    pub params: ModuleParams,
    pub fault: RamondFault,
}

impl ModuleAction for MutatedRamondAction {
    fn kind(&self) -> Sector {
        Sector::Ramond
    }

    fn act(&self, x: &AlgebraElement, v: &SuperVector) -> Result<SuperVector, ModuleError> {
        let base = act_ramond(&self.params, x, v)?;
        let mut even = Poly2::zero();
        let mut odd = Poly2::zero();
        let alpha = self.params.alpha();
        for (gen, c) in x.terms() {
            let m = gen.idx2 / 2;
            let ms = Scalar::from_int(m);
            let lam_m = self
                .params
                .lambda()
                .pow(m)
                .expect("lambda nonzero by construction");
            let coeff = &lam_m * c;
            match (self.fault, gen.kind) {
                (RamondFault::LEvenDerivativeFactor, GeneratorKind::L) => {
                    // ((u+ma) - (u-ma)) * (-m lam^m) d/du f(u,s-m) = -2 m^2 a lam^m d/du ...
                    let d = v.even().shift_v2(&ms).d_dv1();
                    let scale = &(&Scalar::from_int(-2 * m * m) * alpha) * &coeff;
                    even = &even + &d.scale(&scale);
                }
                (RamondFault::LEvenBareDerivative, GeneratorKind::L) => {
                    // (1 - (u - ma)) * (-m lam^m) d/du f(u,s-m)
                    let d = v.even().shift_v2(&ms).d_dv1();
                    let lin = &(&Poly2::one() - &Poly2::var1())
                        + &Poly2::constant(&ms * alpha);
                    even = &even + &(&lin * &d).scale(&(&-&ms * &coeff));
                }
                (RamondFault::LOddDropHalfShift, GeneratorKind::L) => {
                    // dropping -m/2 adds +m/2 times the shifted odd part
                    let shifted = v.odd().shift_v2(&ms);
                    odd = &odd + &shifted.scale(&(&Scalar::from_ratio(m, 2) * &coeff));
                }
                (RamondFault::WEvenShiftSign, GeneratorKind::W) => {
                    let lin = &Poly2::var1() - &Poly2::constant(&ms * alpha);
                    let wrong = v.even().shift_v2(&-&ms);
                    let right = v.even().shift_v2(&ms);
                    even = &even + &(&lin * &(&wrong - &right)).scale(&coeff);
                }
                (RamondFault::WOddDoubled, GeneratorKind::W) => {
                    let lin = &Poly2::var1() - &Poly2::constant(&ms * alpha);
                    odd = &odd + &(&lin * &v.odd().shift_v2(&ms)).scale(&coeff);
                }
                (RamondFault::GEvenDropShift, GeneratorKind::G) => {
                    let delta = &v.even().clone() - &v.even().shift_v2(&ms);
                    odd = &odd + &delta.scale(&coeff);
                }
                (RamondFault::GEvenZero, GeneratorKind::G) => {
                    odd = &odd - &v.even().shift_v2(&ms).scale(&coeff);
                }
                (RamondFault::GOddAlphaCoefficient, GeneratorKind::G) => {
                    // (u - ma) - (u - 2ma) = +ma
                    let shifted = v.odd().shift_v2(&ms);
                    even = &even + &shifted.scale(&(&(&ms * alpha) * &coeff));
                }
                (RamondFault::CEvenIdentity, GeneratorKind::C1 | GeneratorKind::C2) => {
                    even = &even + &v.even().scale(c);
                }
                (RamondFault::COddIdentity, GeneratorKind::C1 | GeneratorKind::C2) => {
                    odd = &odd + &v.odd().scale(c);
                }
                _ => {}
            }
        }
        Ok(base.add(&SuperVector::new(Sector::Ramond, even, odd)))
    }
}

/// Embedding mutation: `G_r -> G_{2r}` without the `1/sqrt2` scale.
pub fn mutated_sigma_g_unscaled(x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    let mut out = sigma(x)?;
    for (gen, c) in x.terms() {
        if gen.kind == GeneratorKind::G {
            let missing = &Scalar::one() - &Scalar::inv_sqrt2();
            out = out.add(
                &AlgebraElement::g(Sector::Ramond, 2 * gen.idx2)
                    .expect("doubled index is even")
                    .scale(&(&missing * c)),
            );
        }
    }
    Ok(out)
}

/// Intertwiner mutation: the odd part is scaled by `sqrt(lambda)` instead of
/// `sqrt(lambda/2)`.
pub fn mutated_psi_odd_unscaled(
    p_ns: &ModuleParams,
    v: &SuperVector,
) -> Result<SuperVector, ModuleError> {
    let base = psi(p_ns, v)?;
    Ok(SuperVector::new(
        Sector::Ramond,
        base.even().clone(),
        base.odd().scale(&Scalar::sqrt2()),
    ))
}

/// Single-site mutations of the quotient class action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientFault {
    /// `L_m class(g) = lam^m (s + m(h(0)-i)) g(s-m)` loses its `s` term
    /// (kills the closure branch).
    DropSTerm,
    /// A stray `+m` enters the multiplier
    /// (kills the invariance branch).
    ExtraLinearWeight,
}

pub struct MutatedQuotientAction {
    pub params: ModuleParams,
    pub fault: QuotientFault,
}

impl QuotientAction for MutatedQuotientAction {
    fn act(
        &self,
        x: &AlgebraElement,
        v: &QuotientVector,
    ) -> Result<QuotientVector, ModuleError> {
        let base = quotient_act(&self.params, x, v)?;
        let mut delta = Poly2::zero();
        for (gen, c) in x.terms() {
            if gen.kind != GeneratorKind::L {
                continue;
            }
            let m = gen.idx2 / 2;
            let lam_m = self
                .params
                .lambda()
                .pow(m)
                .expect("lambda nonzero by construction");
            let shifted = v.poly().shift_v2(&Scalar::from_int(m));
            match self.fault {
                QuotientFault::DropSTerm => {
                    delta = &delta - &(&Poly2::var2() * &shifted).scale(&(&lam_m * c));
                }
                QuotientFault::ExtraLinearWeight => {
                    delta = &delta + &shifted.scale(&(&(&Scalar::from_int(m) * &lam_m) * c));
                }
            }
        }
        Ok(base.add(&QuotientVector::new(v.index(), delta)))
    }
}

/// Family mutation: the divided-difference weight `m(m-1)` becomes `m(m+1)`.
pub fn mutated_h_m_weight(h: &Poly1, alpha: &Scalar, m: i64) -> Poly1 {
    let base = h_m(h, alpha, m);
    let dd = divided_difference(h, alpha);
    // m(m+1) - m(m-1) = 2m: subtract the extra -2m * alpha * dd
    &base - &dd.scale(&(&Scalar::from_int(2 * m) * alpha))
}
