//! The non-weight polynomial modules over both super-BMS3 sectors: the
//! generator actions, the sector-crossing intertwiner, quotients of the
//! graded submodule chain, and recovery of module parameters from a
//! black-box action.
//!
//! Ramond carrier: `C[t^2,s] (+) t C[t^2,s]`. The even part is stored over
//! `(v1, v2) = (u, s)` with `u := t^2`; the odd part stores the cofactor of
//! `t`, also over `(u, s)`. Neveu-Schwarz carrier: `C[t,s] (+) C[y,x]`, the
//! even part over `(t, s)` and the odd part over `(y, x)`.
//!
//! Generator actions (even part shown first, odd second; `m` integral,
//! `r` half-integral, `C_i` act as zero):
//!
//! Ramond:
//! ```text
//! L_m f = lam^m (s + h_m(u)) f(u, s-m) - m lam^m (u - m a) d/du f(u, s-m)
//! L_m (t k) = lam^m (s - m/2 + h_m(u)) t k(u, s-m) - m lam^m (u - m a) t d/du k(u, s-m)
//! W_m f = lam^m (u - m a) f(u, s-m)         W_m (t k) = lam^m (u - m a) t k(u, s-m)
//! G_m f = lam^m t f(u, s-m)                 G_m (t k) = lam^m (u - 2 m a) k(u, s-m)
//! ```
//!
//! Neveu-Schwarz: `L_m`, `W_m` act by the same formulas on each part (with
//! `x - m/2` on the odd part), and
//! ```text
//! G_r f = lam^(r-1/2) f(y, x-r)             G_r k = lam^(r+1/2) (t - 2 r a) k(t, s-r)
//! ```
//! where `lam^(r±1/2)` is computed from the supplied square root of lambda.

use std::fmt;

use thiserror::Error;

use crate::algebra::{
    sigma, AlgebraElement, AlgebraError, GeneratorKind, Sector,
};
use crate::poly::{h_m, Poly1, Poly2};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("sqrt_lambda does not square to lambda")]
    SqrtMismatch,
    #[error("action requires sqrt_lambda for half-integer powers of lambda")]
    MissingSqrtLambda,
    #[error("sector mismatch: expected {expected}, got {got}")]
    SectorMismatch { expected: Sector, got: Sector },
    #[error("vector kind mismatch: expected {expected}, got {got}")]
    KindMismatch { expected: Sector, got: Sector },
    #[error("inconsistent action oracle: {0}")]
    InconsistentOracle(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The data `(lambda, alpha, h)` defining one module, together with its
/// sector and, when half-integer powers of lambda are needed, a square root
/// of lambda validated at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleParams {
    lambda: Scalar,
    alpha: Scalar,
    h: Poly1,
    sector: Sector,
    sqrt_lambda: Option<Scalar>,
}

impl ModuleParams {
    pub fn new(
        lambda: Scalar,
        alpha: Scalar,
        h: Poly1,
        sector: Sector,
        sqrt_lambda: Option<Scalar>,
    ) -> Result<Self, ModuleError> {
        if lambda.is_zero() {
            return Err(ModuleError::ZeroLambda);
        }
        if let Some(sl) = &sqrt_lambda {
            if &(sl * sl) != &lambda {
                return Err(ModuleError::SqrtMismatch);
            }
        }
        Ok(ModuleParams {
            lambda,
            alpha,
            h,
            sector,
            sqrt_lambda,
        })
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn h(&self) -> &Poly1 {
        &self.h
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn sqrt_lambda(&self) -> Option<&Scalar> {
        self.sqrt_lambda.as_ref()
    }

    fn lambda_pow(&self, m: i64) -> Scalar {
        self.lambda.pow(m).expect("lambda nonzero by construction")
    }

    fn sqrt_lambda_pow(&self, e: i64) -> Result<Scalar, ModuleError> {
        let sl = self
            .sqrt_lambda
            .as_ref()
            .ok_or(ModuleError::MissingSqrtLambda)?;
        Ok(sl.pow(e).expect("sqrt_lambda nonzero since lambda is"))
    }

    /// `h_m` embedded as a bivariate polynomial in `v1`.
    fn h_m_poly(&self, m: i64) -> Poly2 {
        h_m(&self.h, &self.alpha, m).into_poly2()
    }
}

impl fmt::Debug for ModuleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleParams(sector={}, lambda={}, alpha={}, h={})",
            self.sector, self.lambda, self.alpha, self.h
        )
    }
}

/// A module element: an (even, odd) pair of polynomials tagged with its
/// sector convention. See the module docs for what the stored variables
/// denote in each sector.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperVector {
    kind: Sector,
    even: Poly2,
    odd: Poly2,
}

impl SuperVector {
    pub fn new(kind: Sector, even: Poly2, odd: Poly2) -> Self {
        SuperVector { kind, even, odd }
    }

    pub fn zero(kind: Sector) -> Self {
        SuperVector::new(kind, Poly2::zero(), Poly2::zero())
    }

    /// The cyclic vector `1` (even part 1, odd part 0).
    pub fn one(kind: Sector) -> Self {
        SuperVector::new(kind, Poly2::one(), Poly2::zero())
    }

    pub fn basis_even(kind: Sector, e1: u32, e2: u32) -> Self {
        SuperVector::new(kind, Poly2::monomial(Scalar::one(), e1, e2), Poly2::zero())
    }

    pub fn basis_odd(kind: Sector, e1: u32, e2: u32) -> Self {
        SuperVector::new(kind, Poly2::zero(), Poly2::monomial(Scalar::one(), e1, e2))
    }

    pub fn kind(&self) -> Sector {
        self.kind
    }

    pub fn even(&self) -> &Poly2 {
        &self.even
    }

    pub fn odd(&self) -> &Poly2 {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn add(&self, rhs: &SuperVector) -> SuperVector {
        assert_eq!(self.kind, rhs.kind, "kind mismatch in vector sum");
        SuperVector::new(self.kind, &self.even + &rhs.even, &self.odd + &rhs.odd)
    }

    pub fn sub(&self, rhs: &SuperVector) -> SuperVector {
        assert_eq!(self.kind, rhs.kind, "kind mismatch in vector difference");
        SuperVector::new(self.kind, &self.even - &rhs.even, &self.odd - &rhs.odd)
    }

    pub fn scale(&self, c: &Scalar) -> SuperVector {
        SuperVector::new(self.kind, self.even.scale(c), self.odd.scale(c))
    }

    /// Variable names for printing, per sector convention.
    pub fn var_names(kind: Sector) -> ((&'static str, &'static str), (&'static str, &'static str)) {
        match kind {
            Sector::Ramond => (("u", "s"), ("u", "s")),
            Sector::NeveuSchwarz => (("t", "s"), ("y", "x")),
        }
    }
}

impl fmt::Display for SuperVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((e1, e2), (o1, o2)) = SuperVector::var_names(self.kind);
        write!(
            f,
            "even: {} ; odd: {}",
            self.even.display_with(e1, e2),
            self.odd.display_with(o1, o2)
        )
    }
}

impl fmt::Debug for SuperVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.kind, self)
    }
}

fn check_sector(expected: Sector, x: &AlgebraElement) -> Result<(), ModuleError> {
    if x.sector() != expected {
        return Err(ModuleError::SectorMismatch {
            expected,
            got: x.sector(),
        });
    }
    Ok(())
}

fn check_kind(expected: Sector, v: &SuperVector) -> Result<(), ModuleError> {
    if v.kind() != expected {
        return Err(ModuleError::KindMismatch {
            expected,
            got: v.kind(),
        });
    }
    Ok(())
}

/// `L_m` on one polynomial part:
/// `lam^m (v2 [- m/2] + h_m(v1)) p(v1, v2-m) - m lam^m (v1 - m alpha) d/dv1 p(v1, v2-m)`.
fn l_part(
    part: &Poly2,
    m: i64,
    lam_m: &Scalar,
    alpha: &Scalar,
    hm: &Poly2,
    half_shift: bool,
) -> Poly2 {
    if part.is_zero() {
        return Poly2::zero();
    }
    let ms = Scalar::from_int(m);
    let shifted = part.shift_v2(&ms);
    let mut coeff = &Poly2::var2() + hm;
    if half_shift {
        coeff = &coeff - &Poly2::constant(Scalar::from_ratio(m, 2));
    }
    let first = (&coeff * &shifted).scale(lam_m);
    if m == 0 {
        return first;
    }
    let lin = &Poly2::var1() - &Poly2::constant(&ms * alpha);
    let second = (&lin * &shifted.d_dv1()).scale(&(&-&ms * lam_m));
    &first + &second
}

/// `W_m` on one polynomial part: `lam^m (v1 - m alpha) p(v1, v2-m)`.
fn w_part(part: &Poly2, m: i64, lam_m: &Scalar, alpha: &Scalar) -> Poly2 {
    if part.is_zero() {
        return Poly2::zero();
    }
    let ms = Scalar::from_int(m);
    let shifted = part.shift_v2(&ms);
    let lin = &Poly2::var1() - &Poly2::constant(&ms * alpha);
    (&lin * &shifted).scale(lam_m)
}

/// The Ramond action, extended linearly over the terms of `x`.
pub fn act_ramond(
    p: &ModuleParams,
    x: &AlgebraElement,
    v: &SuperVector,
) -> Result<SuperVector, ModuleError> {
    if p.sector != Sector::Ramond {
        return Err(ModuleError::SectorMismatch {
            expected: Sector::Ramond,
            got: p.sector,
        });
    }
    check_sector(Sector::Ramond, x)?;
    check_kind(Sector::Ramond, v)?;

    let mut even = Poly2::zero();
    let mut odd = Poly2::zero();
    for (gen, c) in x.terms() {
        let m = gen.idx2 / 2;
        match gen.kind {
            GeneratorKind::L => {
                let lam_m = p.lambda_pow(m);
                let hm = p.h_m_poly(m);
                even = &even + &l_part(&v.even, m, &lam_m, &p.alpha, &hm, false).scale(c);
                odd = &odd + &l_part(&v.odd, m, &lam_m, &p.alpha, &hm, true).scale(c);
            }
            GeneratorKind::W => {
                let lam_m = p.lambda_pow(m);
                even = &even + &w_part(&v.even, m, &lam_m, &p.alpha).scale(c);
                odd = &odd + &w_part(&v.odd, m, &lam_m, &p.alpha).scale(c);
            }
            GeneratorKind::G => {
                let lam_m = p.lambda_pow(m);
                let ms = Scalar::from_int(m);
                // G_m f = lam^m t f(u, s-m): lands in the odd cofactor
                odd = &odd + &v.even.shift_v2(&ms).scale(&(&lam_m * c));
                // G_m (t k) = lam^m (u - 2 m alpha) k(u, s-m)
                if !v.odd.is_zero() {
                    let lin = &Poly2::var1()
                        - &Poly2::constant(&Scalar::from_int(2 * m) * &p.alpha);
                    even = &even + &(&lin * &v.odd.shift_v2(&ms)).scale(&(&lam_m * c));
                }
            }
            GeneratorKind::C1 | GeneratorKind::C2 => {}
        }
    }
    Ok(SuperVector::new(Sector::Ramond, even, odd))
}

/// The Neveu-Schwarz action, extended linearly over the terms of `x`.
pub fn act_ns(
    p: &ModuleParams,
    x: &AlgebraElement,
    v: &SuperVector,
) -> Result<SuperVector, ModuleError> {
    if p.sector != Sector::NeveuSchwarz {
        return Err(ModuleError::SectorMismatch {
            expected: Sector::NeveuSchwarz,
            got: p.sector,
        });
    }
    check_sector(Sector::NeveuSchwarz, x)?;
    check_kind(Sector::NeveuSchwarz, v)?;

    let mut even = Poly2::zero();
    let mut odd = Poly2::zero();
    for (gen, c) in x.terms() {
        match gen.kind {
            GeneratorKind::L => {
                let m = gen.idx2 / 2;
                let lam_m = p.lambda_pow(m);
                let hm = p.h_m_poly(m);
                even = &even + &l_part(&v.even, m, &lam_m, &p.alpha, &hm, false).scale(c);
                odd = &odd + &l_part(&v.odd, m, &lam_m, &p.alpha, &hm, true).scale(c);
            }
            GeneratorKind::W => {
                let m = gen.idx2 / 2;
                let lam_m = p.lambda_pow(m);
                even = &even + &w_part(&v.even, m, &lam_m, &p.alpha).scale(c);
                odd = &odd + &w_part(&v.odd, m, &lam_m, &p.alpha).scale(c);
            }
            GeneratorKind::G => {
                // r = idx2/2 is half-integral; shift amount r, powers via sqrt_lambda
                let r = Scalar::from_ratio(gen.idx2, 2);
                // G_r f(t,s) = lam^(r-1/2) f(y, x-r): even -> odd verbatim
                if !v.even.is_zero() {
                    let pw = p.sqrt_lambda_pow(gen.idx2 - 1)?;
                    odd = &odd + &v.even.shift_v2(&r).scale(&(&pw * c));
                }
                // G_r k(y,x) = lam^(r+1/2) (t - 2 r alpha) k(t, s-r)
                if !v.odd.is_zero() {
                    let pw = p.sqrt_lambda_pow(gen.idx2 + 1)?;
                    let lin = &Poly2::var1()
                        - &Poly2::constant(&Scalar::from_int(gen.idx2) * &p.alpha);
                    even = &even + &(&lin * &v.odd.shift_v2(&r)).scale(&(&pw * c));
                }
            }
            GeneratorKind::C1 | GeneratorKind::C2 => {}
        }
    }
    Ok(SuperVector::new(Sector::NeveuSchwarz, even, odd))
}

/// The Ramond module viewed as a Neveu-Schwarz module through the embedding:
/// `x` acts as `sigma(x)`.
pub fn act_restricted(
    p: &ModuleParams,
    x: &AlgebraElement,
    v: &SuperVector,
) -> Result<SuperVector, ModuleError> {
    let mapped = sigma(x)?;
    act_ramond(p, &mapped, v)
}

/// A black-box module action, as consumed by the verification sweeps and by
/// [`extract_params`]. Implemented by [`ModuleParams`] (dispatching on its
/// sector) and by the deliberately broken actions in [`crate::faults`].
pub trait ModuleAction {
    fn kind(&self) -> Sector;
    fn act(&self, x: &AlgebraElement, v: &SuperVector) -> Result<SuperVector, ModuleError>;
}

impl ModuleAction for ModuleParams {
    fn kind(&self) -> Sector {
        self.sector
    }

    fn act(&self, x: &AlgebraElement, v: &SuperVector) -> Result<SuperVector, ModuleError> {
        match self.sector {
            Sector::Ramond => act_ramond(self, x, v),
            Sector::NeveuSchwarz => act_ns(self, x, v),
        }
    }
}

/// The intertwiner from the Neveu-Schwarz module over `lambda` to the Ramond
/// module over `sqrt(lambda)`:
///
/// ```text
/// f(t,s)  ->  f(u/2, s/2)
/// k(y,x)  ->  sqrt(lambda/2) t k(u/2, s/2)
/// ```
pub fn psi(p_ns: &ModuleParams, v: &SuperVector) -> Result<SuperVector, ModuleError> {
    check_kind(Sector::NeveuSchwarz, v)?;
    let sl = p_ns
        .sqrt_lambda
        .as_ref()
        .ok_or(ModuleError::MissingSqrtLambda)?;
    let half = Scalar::from_ratio(1, 2);
    let even = v.even.substitute(&half, 1, &half);
    let odd_scale = sl * &Scalar::inv_sqrt2(); // sqrt(lambda/2)
    let odd = v.odd.substitute(&half, 1, &half).scale(&odd_scale);
    Ok(SuperVector::new(Sector::Ramond, even, odd))
}

/// Inverse of [`psi`]; `psi_inv(psi(v)) = v` exactly.
pub fn psi_inv(p_ns: &ModuleParams, v: &SuperVector) -> Result<SuperVector, ModuleError> {
    check_kind(Sector::Ramond, v)?;
    let sl = p_ns
        .sqrt_lambda
        .as_ref()
        .ok_or(ModuleError::MissingSqrtLambda)?;
    let two = Scalar::from_int(2);
    let even = v.even.substitute(&two, 1, &two);
    let odd_scale = (sl * &Scalar::inv_sqrt2())
        .inv()
        .expect("sqrt_lambda nonzero since lambda is");
    let odd = v.odd.substitute(&two, 1, &two).scale(&odd_scale);
    Ok(SuperVector::new(Sector::NeveuSchwarz, even, odd))
}

/// The Neveu-Schwarz polynomial `g` paired with a Ramond `h` by the family
/// condition `g_m(t/2) = h_{2m}(t)/2` for all integers `m`: explicitly
/// `g(u) = h_2(2u)/2`.
pub fn transport_h(h: &Poly1, alpha: &Scalar) -> Poly1 {
    let h2 = h_m(h, alpha, 2);
    h2.substitute_var(&Scalar::from_int(2))
        .scale(&Scalar::from_ratio(1, 2))
}

/// A class `(t^2)^i g(s)` in the quotient of consecutive graded submodules.
/// The polynomial is stored over `v2 = s` (no `v1` exponents).
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientVector {
    i: u32,
    g: Poly2,
}

impl QuotientVector {
    pub fn new(i: u32, g: Poly2) -> Self {
        assert!(
            g.terms().all(|(&(e1, _), _)| e1 == 0),
            "quotient class polynomial must be univariate in s"
        );
        QuotientVector { i, g }
    }

    /// The class of `(t^2)^i * s^k`.
    pub fn basis(i: u32, k: u32) -> Self {
        QuotientVector::new(i, Poly2::monomial(Scalar::one(), 0, k))
    }

    pub fn index(&self) -> u32 {
        self.i
    }

    pub fn poly(&self) -> &Poly2 {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    pub fn add(&self, rhs: &QuotientVector) -> QuotientVector {
        assert_eq!(self.i, rhs.i, "quotient index mismatch");
        QuotientVector::new(self.i, &self.g + &rhs.g)
    }

    pub fn scale(&self, c: &Scalar) -> QuotientVector {
        QuotientVector::new(self.i, self.g.scale(c))
    }

    /// Project a Ramond vector onto the class space: the odd part and all
    /// even terms with `u`-exponent above `i` are quotiented away. Returns
    /// `None` when the even part has a term below `u^i` (not in the
    /// submodule).
    pub fn project_from(v: &SuperVector, i: u32) -> Option<QuotientVector> {
        let mut g = Poly2::zero();
        for (&(e1, e2), c) in v.even().terms() {
            if e1 < i {
                return None;
            }
            if e1 == i {
                g = &g + &Poly2::monomial(c.clone(), 0, e2);
            }
        }
        Some(QuotientVector::new(i, g))
    }
}

impl fmt::Display for QuotientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{} * ({})", self.i, self.g.display_with("u", "s"))
    }
}

impl fmt::Debug for QuotientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Action on the quotient class space:
/// `L_m class(g) = lam^m (s + m(h(0) - i)) g(s-m)`; `W_m`, `C_i`, and `G_m`
/// (whose image is entirely quotiented away) act as zero.
pub fn quotient_act(
    p: &ModuleParams,
    x: &AlgebraElement,
    v: &QuotientVector,
) -> Result<QuotientVector, ModuleError> {
    check_sector(Sector::Ramond, x)?;
    let h0 = p.h.eval(&Scalar::zero());
    let d = &h0 - &Scalar::from_int(v.i as i64);
    let mut out = Poly2::zero();
    for (gen, c) in x.terms() {
        if gen.kind != GeneratorKind::L {
            continue;
        }
        let m = gen.idx2 / 2;
        let lam_m = p.lambda_pow(m);
        let shifted = v.g.shift_v2(&Scalar::from_int(m));
        let coeff = &Poly2::var2() + &Poly2::constant(&Scalar::from_int(m) * &d);
        out = &out + &(&coeff * &shifted).scale(&(&lam_m * c));
    }
    Ok(QuotientVector::new(v.i, out))
}

/// Actions on the quotient class space, abstracted for the sweeps; the
/// standard implementation is [`ModuleParams`] via [`quotient_act`].
pub trait QuotientAction {
    fn act(&self, x: &AlgebraElement, v: &QuotientVector)
        -> Result<QuotientVector, ModuleError>;
}

impl QuotientAction for ModuleParams {
    fn act(
        &self,
        x: &AlgebraElement,
        v: &QuotientVector,
    ) -> Result<QuotientVector, ModuleError> {
        quotient_act(self, x, v)
    }
}

/// Recover `(lambda, alpha, h)` from a black-box action by sampling it on
/// the cyclic vector: `W_1 . 1 = lambda (v1 - alpha) 1` yields `lambda` and
/// `alpha`; `L_1 . 1 = lambda (v2 + h(v1)) 1` yields `h`; the samples
/// `L_m . 1` for `m = 2..degree_bound` must then reproduce the `h_m` family
/// exactly or the oracle is rejected.
pub fn extract_params(
    oracle: &dyn ModuleAction,
    kind: Sector,
    degree_bound: u32,
) -> Result<(Scalar, Scalar, Poly1), ModuleError> {
    let one = SuperVector::one(kind);
    let inconsistent = |msg: &str| ModuleError::InconsistentOracle(msg.to_string());

    let w1 = oracle.act(&AlgebraElement::w(kind, 1), &one)?;
    if !w1.odd().is_zero() || w1.even().degree_v2() > 0 || w1.even().degree_v1() > 1 {
        return Err(inconsistent(
            "W_1 . 1 is not of the form lambda*(v1 - alpha)",
        ));
    }
    let lambda = w1.even().coeff(1, 0);
    if lambda.is_zero() {
        return Err(inconsistent("W_1 . 1 has no v1 term"));
    }
    let alpha = &-&w1.even().coeff(0, 0) / &lambda;

    let l1 = oracle.act(&AlgebraElement::l(kind, 1), &one)?;
    if !l1.odd().is_zero() {
        return Err(inconsistent("L_1 . 1 has an odd component"));
    }
    let lambda_inv = lambda.inv().expect("nonzero checked above");
    let h_candidate = &l1.even().scale(&lambda_inv) - &Poly2::var2();
    if h_candidate.terms().any(|(&(_, e2), _)| e2 != 0) {
        return Err(inconsistent(
            "L_1 . 1 is not of the form lambda*(v2 + h(v1))",
        ));
    }
    let h = Poly1::from_poly2(h_candidate);
    if h.degree() > degree_bound {
        return Err(inconsistent("recovered h exceeds the degree bound"));
    }

    for m in 2..=i64::from(degree_bound) {
        let lm = oracle.act(&AlgebraElement::l(kind, m), &one)?;
        let lam_m_inv = lambda.pow(-m).expect("nonzero checked above");
        let sampled = &lm.even().scale(&lam_m_inv) - &Poly2::var2();
        let expected = h_m(&h, &alpha, m).into_poly2();
        if !lm.odd().is_zero() || sampled != expected {
            return Err(inconsistent(
                "L_m . 1 samples do not reproduce the h_m family",
            ));
        }
    }

    Ok((lambda, alpha, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn ramond_params(lambda: i64, alpha: i64, h: Poly1) -> ModuleParams {
        ModuleParams::new(c(lambda), c(alpha), h, Sector::Ramond, None).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            ModuleParams::new(c(0), c(1), Poly1::zero(), Sector::Ramond, None),
            Err(ModuleError::ZeroLambda)
        );
        assert_eq!(
            ModuleParams::new(c(4), c(0), Poly1::zero(), Sector::NeveuSchwarz, Some(c(3))),
            Err(ModuleError::SqrtMismatch)
        );
        assert!(
            ModuleParams::new(c(2), c(0), Poly1::zero(), Sector::NeveuSchwarz, Some(Scalar::sqrt2()))
                .is_ok()
        );
    }

    #[test]
    fn ramond_action_examples() {
        let r = Sector::Ramond;
        let p = ramond_params(1, 1, Poly1::zero());
        let one = SuperVector::one(r);

        // W_1 . 1 = lambda (u - alpha) 1
        let got = act_ramond(&p, &AlgebraElement::w(r, 1), &one).unwrap();
        let expect = SuperVector::new(
            r,
            &Poly2::var1() - &Poly2::one(),
            Poly2::zero(),
        );
        assert_eq!(got, expect);

        // L_0 f = s f
        let f = SuperVector::basis_even(r, 2, 1);
        let got = act_ramond(&p, &AlgebraElement::l(r, 0), &f).unwrap();
        assert_eq!(got, SuperVector::basis_even(r, 2, 2));

        // G_0 (t . 1) = u 1
        let todd = SuperVector::basis_odd(r, 0, 0);
        let got = act_ramond(&p, &AlgebraElement::g(r, 0).unwrap(), &todd).unwrap();
        assert_eq!(got, SuperVector::basis_even(r, 1, 0));

        // G_2 . 1 = lambda^2 t 1
        let p2 = ramond_params(3, 1, Poly1::zero());
        let got = act_ramond(&p2, &AlgebraElement::g(r, 4).unwrap(), &one).unwrap();
        assert_eq!(got, SuperVector::basis_odd(r, 0, 0).scale(&c(9)));
    }

    #[test]
    fn ns_action_examples() {
        let ns = Sector::NeveuSchwarz;
        let p = ModuleParams::new(c(2), c(1), Poly1::zero(), ns, Some(Scalar::sqrt2())).unwrap();
        let one = SuperVector::one(ns);

        // G_{1/2} . 1_even = 1_odd
        let g_half = AlgebraElement::g(ns, 1).unwrap();
        let got = act_ns(&p, &g_half, &one).unwrap();
        assert_eq!(got, SuperVector::basis_odd(ns, 0, 0));

        // G_{1/2} . 1_odd = lambda (t - alpha) 1_even
        let one_odd = SuperVector::basis_odd(ns, 0, 0);
        let got = act_ns(&p, &g_half, &one_odd).unwrap();
        let expect = SuperVector::new(
            ns,
            (&Poly2::var1() - &Poly2::one()).scale(&c(2)),
            Poly2::zero(),
        );
        assert_eq!(got, expect);

        // L_0 k = x k
        let k = SuperVector::basis_odd(ns, 1, 1);
        let got = act_ns(&p, &AlgebraElement::l(ns, 0), &k).unwrap();
        assert_eq!(got, SuperVector::basis_odd(ns, 1, 2));
    }

    #[test]
    fn ns_action_requires_sqrt_lambda() {
        let ns = Sector::NeveuSchwarz;
        let p = ModuleParams::new(c(2), c(0), Poly1::zero(), ns, None).unwrap();
        let g = AlgebraElement::g(ns, 1).unwrap();
        assert_eq!(
            act_ns(&p, &g, &SuperVector::one(ns)),
            Err(ModuleError::MissingSqrtLambda)
        );
        // L and W need no square root
        assert!(act_ns(&p, &AlgebraElement::l(ns, 2), &SuperVector::one(ns)).is_ok());
    }

    #[test]
    fn restricted_action_examples() {
        let r = Sector::Ramond;
        let ns = Sector::NeveuSchwarz;
        let p = ramond_params(3, 1, Poly1::var());
        let one = SuperVector::one(r);

        // sigma(L_1) acts as (1/2) L_2
        let via_restricted = act_restricted(&p, &AlgebraElement::l(ns, 1), &one).unwrap();
        let direct = act_ramond(&p, &AlgebraElement::l(r, 2), &one).unwrap();
        assert_eq!(via_restricted, direct.scale(&Scalar::from_ratio(1, 2)));

        // sigma(G_{1/2}) f = (sqrt2/2) lambda t f(u, s-1)
        let f = SuperVector::basis_even(r, 1, 1); // u s
        let got = act_restricted(&p, &AlgebraElement::g(ns, 1).unwrap(), &f).unwrap();
        let shifted = f.even().shift_v2(&c(1));
        let expect = SuperVector::new(
            r,
            Poly2::zero(),
            shifted.scale(&(&c(3) * &Scalar::inv_sqrt2())),
        );
        assert_eq!(got, expect);

        // central elements act as zero through sigma
        let got = act_restricted(&p, &AlgebraElement::c1(ns), &one).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn psi_examples() {
        let ns = Sector::NeveuSchwarz;
        let p = ModuleParams::new(c(4), c(0), Poly1::zero(), ns, Some(c(2))).unwrap();

        assert_eq!(
            psi(&p, &SuperVector::one(ns)).unwrap(),
            SuperVector::one(Sector::Ramond)
        );

        // s . 1_even -> s/2 . 1
        let s_even = SuperVector::basis_even(ns, 0, 1);
        assert_eq!(
            psi(&p, &s_even).unwrap(),
            SuperVector::basis_even(Sector::Ramond, 0, 1).scale(&Scalar::from_ratio(1, 2))
        );

        // 1_odd -> sqrt(lambda/2) t 1 = sqrt2 t 1 for lambda = 4
        let one_odd = SuperVector::basis_odd(ns, 0, 0);
        assert_eq!(
            psi(&p, &one_odd).unwrap(),
            SuperVector::basis_odd(Sector::Ramond, 0, 0).scale(&Scalar::sqrt2())
        );
    }

    #[test]
    fn psi_round_trips() {
        let ns = Sector::NeveuSchwarz;
        let p = ModuleParams::new(c(2), c(1), Poly1::var(), ns, Some(Scalar::sqrt2())).unwrap();
        for e1 in 0..3u32 {
            for e2 in 0..3u32 {
                for v in [SuperVector::basis_even(ns, e1, e2), SuperVector::basis_odd(ns, e1, e2)] {
                    let back = psi_inv(&p, &psi(&p, &v).unwrap()).unwrap();
                    assert_eq!(back, v);
                }
            }
        }
    }

    #[test]
    fn transport_examples() {
        let alpha = c(3);
        assert!(transport_h(&Poly1::zero(), &alpha).is_zero());

        // h = t: g(u) = 2u - alpha
        let g = transport_h(&Poly1::var(), &alpha);
        let expect = &Poly1::monomial(c(2), 1) - &Poly1::constant(alpha.clone());
        assert_eq!(g, expect);

        // constant h transports to itself
        let g = transport_h(&Poly1::constant(c(5)), &alpha);
        assert_eq!(g, Poly1::constant(c(5)));
    }

    #[test]
    fn quotient_action_examples() {
        let r = Sector::Ramond;
        // h = 2 (constant), i = 0: h(0) - i = 2
        let p = ramond_params(1, 0, Poly1::constant(c(2)));
        let cls = QuotientVector::basis(0, 0);

        // L_0 class(g) = class(s g)
        let got = quotient_act(&p, &AlgebraElement::l(r, 0), &cls).unwrap();
        assert_eq!(got, QuotientVector::basis(0, 1));

        // W_5 acts as zero
        let got = quotient_act(&p, &AlgebraElement::w(r, 5), &cls).unwrap();
        assert!(got.is_zero());

        // L_1 class(1) = lambda (s + 2) class(1)
        let got = quotient_act(&p, &AlgebraElement::l(r, 1), &cls).unwrap();
        let expect = QuotientVector::new(
            0,
            &Poly2::var2() + &Poly2::constant(c(2)),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn quotient_agrees_with_projected_action() {
        let r = Sector::Ramond;
        let p = ramond_params(2, 0, &Poly1::var() + &Poly1::constant(c(1)));
        for i in [1u32, 2] {
            for k in 0..3u32 {
                let cls = QuotientVector::basis(i, k);
                let lifted = SuperVector::basis_even(r, i, k);
                for m in -3i64..=3 {
                    let on_class = quotient_act(&p, &AlgebraElement::l(r, m), &cls).unwrap();
                    let on_module = act_ramond(&p, &AlgebraElement::l(r, m), &lifted).unwrap();
                    let projected = QuotientVector::project_from(&on_module, i).unwrap();
                    assert_eq!(on_class, projected, "i={i} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn extract_round_trip() {
        let h = &Poly1::monomial(c(1), 2) + &Poly1::constant(c(1));
        let p = ramond_params(3, 1, h.clone());
        let (lambda, alpha, hh) = extract_params(&p, Sector::Ramond, 3).unwrap();
        assert_eq!(lambda, c(3));
        assert_eq!(alpha, c(1));
        assert_eq!(hh, h);

        let trivial = ramond_params(1, 0, Poly1::zero());
        let (lambda, alpha, hh) = extract_params(&trivial, Sector::Ramond, 1).unwrap();
        assert_eq!(lambda, c(1));
        assert_eq!(alpha, c(0));
        assert!(hh.is_zero());
    }

    #[test]
    fn extract_rejects_corrupted_oracle() {
        struct Corrupted;
        impl ModuleAction for Corrupted {
            fn kind(&self) -> Sector {
                Sector::Ramond
            }
            fn act(
                &self,
                _x: &AlgebraElement,
                v: &SuperVector,
            ) -> Result<SuperVector, ModuleError> {
                // identity map: W_1 . 1 has no v1 term
                Ok(v.clone())
            }
        }
        assert!(matches!(
            extract_params(&Corrupted, Sector::Ramond, 2),
            Err(ModuleError::InconsistentOracle(_))
        ));
    }

    #[test]
    fn freeness_witness_on_cyclic_vector() {
        let r = Sector::Ramond;
        let p = ramond_params(2, 1, Poly1::var());
        let one = SuperVector::one(r);
        // L_0, W_0, G_0 act on 1 as multiplication by s, u, t
        assert_eq!(
            act_ramond(&p, &AlgebraElement::l(r, 0), &one).unwrap(),
            SuperVector::basis_even(r, 0, 1)
        );
        assert_eq!(
            act_ramond(&p, &AlgebraElement::w(r, 0), &one).unwrap(),
            SuperVector::basis_even(r, 1, 0)
        );
        assert_eq!(
            act_ramond(&p, &AlgebraElement::g(r, 0).unwrap(), &one).unwrap(),
            SuperVector::basis_odd(r, 0, 0)
        );
    }

    #[test]
    fn g0_squared_is_w0() {
        let r = Sector::Ramond;
        let p = ramond_params(2, 1, Poly1::var());
        let g0 = AlgebraElement::g(r, 0).unwrap();
        let w0 = AlgebraElement::w(r, 0);
        for e1 in 0..3u32 {
            for e2 in 0..3u32 {
                for v in [SuperVector::basis_even(r, e1, e2), SuperVector::basis_odd(r, e1, e2)] {
                    let twice = act_ramond(&p, &g0, &act_ramond(&p, &g0, &v).unwrap()).unwrap();
                    let direct = act_ramond(&p, &w0, &v).unwrap();
                    assert_eq!(twice, direct);
                }
            }
        }
    }
}
