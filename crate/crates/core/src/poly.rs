//! Sparse bivariate polynomials over [`Scalar`], plus the univariate view,
//! the exact divided difference, and the shifted polynomial family `h_m`
//! together with its defining identity check.
//!
//! The two abstract variables are called `v1` and `v2`; what they denote
//! (`t^2`/`t`/`y` and `s`/`x`) depends on the enclosing module kind.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Zero};

use crate::scalar::{Rational, Scalar};

/// Sparse bivariate polynomial: exponent pair `(e1, e2)` -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::monomial(Scalar::one(), 0, 0)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    /// The variable `v1`.
    pub fn var1() -> Self {
        Poly2::monomial(Scalar::one(), 1, 0)
    }

    /// The variable `v2`.
    pub fn var2() -> Self {
        Poly2::monomial(Scalar::one(), 0, 1)
    }

    pub fn monomial(c: Scalar, e1: u32, e2: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> Scalar {
        self.terms
            .get(&(e1, e2))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn degree_v1(&self) -> u32 {
        self.terms.keys().map(|&(e1, _)| e1).max().unwrap_or(0)
    }

    pub fn degree_v2(&self) -> u32 {
        self.terms.keys().map(|&(_, e2)| e2).max().unwrap_or(0)
    }

    fn insert_term(&mut self, key: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v * c))
                .collect(),
        }
    }

    /// Multiply by the monomial `v1^e1 * v2^e2`.
    pub fn mul_monomial(&self, e1: u32, e2: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + e1, b + e2), v.clone()))
                .collect(),
        }
    }

    /// Substitute `v2 -> v2 - m`, expanding by the binomial theorem.
    pub fn shift_v2(&self, m: &Scalar) -> Poly2 {
        if m.is_zero() {
            return self.clone();
        }
        let neg_m = -m;
        // rows[b] = coefficients of (v2 - m)^b
        let max_b = self.degree_v2() as usize;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(max_b + 1);
        rows.push(vec![Scalar::one()]);
        for b in 1..=max_b {
            let prev = &rows[b - 1];
            let mut row = vec![Scalar::zero(); b + 1];
            for (j, c) in prev.iter().enumerate() {
                // (v2 - m) * v2^j
                row[j + 1] += c;
                let shifted = c * &neg_m;
                row[j] += &shifted;
            }
            rows.push(row);
        }
        let mut out = Poly2::zero();
        for (&(a, b), c) in &self.terms {
            for (j, w) in rows[b as usize].iter().enumerate() {
                out.insert_term((a, j as u32), c * w);
            }
        }
        out
    }

    /// Formal partial derivative with respect to `v1`.
    pub fn d_dv1(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                out.insert_term((a - 1, b), c * &Scalar::from_int(a as i64));
            }
        }
        out
    }

    /// Simultaneous substitution `v1 -> c1 * v1^e`, `v2 -> c2 * v2`.
    pub fn substitute(&self, c1: &Scalar, e: u32, c2: &Scalar) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, b), c) in &self.terms {
            let factor = c
                * &c1.pow(a as i64).expect("nonnegative exponent")
                * c2.pow(b as i64).expect("nonnegative exponent");
            out.insert_term((a * e, b), factor);
        }
        out
    }

    /// Evaluate at `(x, y)`.
    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (&(a, b), c) in &self.terms {
            acc += &(c * &x.pow(a as i64).unwrap() * y.pow(b as i64).unwrap());
        }
        acc
    }

    /// Terms sorted graded-lexicographically, highest first, for printing.
    fn sorted_for_display(&self) -> Vec<(&(u32, u32), &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|((a1, b1), _), ((a2, b2), _)| {
            (a2 + b2, a2).cmp(&(a1 + b1, a1))
        });
        v
    }

    /// Render with the given variable names, e.g. `3/2*u^2*s + sqrt2*s`.
    pub fn display_with(&self, v1: &str, v2: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(a, b), c)) in self.sorted_for_display().into_iter().enumerate() {
            let (sign, mag) = coeff_sign_magnitude(c);
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if let Some(m) = mag {
                factors.push(m);
            }
            if a > 0 {
                factors.push(if a == 1 { v1.to_string() } else { format!("{v1}^{a}") });
            }
            if b > 0 {
                factors.push(if b == 1 { v2.to_string() } else { format!("{v2}^{b}") });
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Split a coefficient into a display sign and an optional magnitude factor.
/// `None` means the factor is an elided `1`. Mixed scalars (both components
/// nonzero) render parenthesized with the sign kept inside.
pub(crate) fn coeff_sign_magnitude(c: &Scalar) -> (bool, Option<String>) {
    use num::Signed;
    let a = c.rational_part();
    let b = c.sqrt2_part();
    if !a.is_zero() && !b.is_zero() {
        return (false, Some(format!("({c})")));
    }
    if b.is_zero() {
        let neg = a.is_negative();
        let mag = a.abs();
        if mag.is_one() {
            (neg, None)
        } else {
            (neg, Some(Scalar::from_rational(mag).to_string()))
        }
    } else {
        let neg = b.is_negative();
        let mag = Scalar::new(Rational::zero(), b.abs());
        (neg, Some(mag.to_string()))
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_term(k, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_term(k, -c);
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.insert_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $fn:ident) => {
        impl $trait for Poly2 {
            type Output = Poly2;
            fn $fn(self, rhs: Poly2) -> Poly2 {
                (&self).$fn(&rhs)
            }
        }
        impl $trait<&Poly2> for Poly2 {
            type Output = Poly2;
            fn $fn(self, rhs: &Poly2) -> Poly2 {
                (&self).$fn(rhs)
            }
        }
        impl $trait<Poly2> for &Poly2 {
            type Output = Poly2;
            fn $fn(self, rhs: Poly2) -> Poly2 {
                self.$fn(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("v1", "v2"))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Univariate polynomial in `v1` (every term has `e2 = 0`).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly1(Poly2);

impl Poly1 {
    pub fn zero() -> Self {
        Poly1(Poly2::zero())
    }

    pub fn one() -> Self {
        Poly1(Poly2::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly1(Poly2::constant(c))
    }

    pub fn var() -> Self {
        Poly1(Poly2::var1())
    }

    pub fn monomial(c: Scalar, e: u32) -> Self {
        Poly1(Poly2::monomial(c, e, 0))
    }

    /// Build from coefficients in ascending degree order.
    pub fn from_coeffs(coeffs: &[Scalar]) -> Self {
        let mut p = Poly2::zero();
        for (e, c) in coeffs.iter().enumerate() {
            p.insert_term((e as u32, 0), c.clone());
        }
        Poly1(p)
    }

    /// Reinterpret a bivariate polynomial as univariate. Panics if any term
    /// involves `v2`; use only where the invariant is structural.
    pub fn from_poly2(p: Poly2) -> Self {
        assert!(
            p.terms.keys().all(|&(_, e2)| e2 == 0),
            "polynomial is not univariate in v1"
        );
        Poly1(p)
    }

    pub fn as_poly2(&self) -> &Poly2 {
        &self.0
    }

    pub fn into_poly2(self) -> Poly2 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.0.degree_v1()
    }

    pub fn coeff(&self, e: u32) -> Scalar {
        self.0.coeff(e, 0)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.eval(x, &Scalar::zero())
    }

    pub fn derivative(&self) -> Poly1 {
        Poly1(self.0.d_dv1())
    }

    pub fn scale(&self, c: &Scalar) -> Poly1 {
        Poly1(self.0.scale(c))
    }

    /// Substitute `v1 -> c * v1`.
    pub fn substitute_var(&self, c: &Scalar) -> Poly1 {
        Poly1(self.0.substitute(c, 1, &Scalar::one()))
    }

    pub fn display_with(&self, v1: &str) -> String {
        self.0.display_with(v1, "?")
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        Poly1(&self.0 + &rhs.0)
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        Poly1(&self.0 - &rhs.0)
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        Poly1(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("t"))
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The exact divided difference `(h(t) - h(alpha)) / (t - alpha)`, computed
/// by the closed summation form; the division is always exact.
pub fn divided_difference(h: &Poly1, alpha: &Scalar) -> Poly1 {
    let mut out = Poly2::zero();
    for (&(k, _), c) in h.0.terms() {
        // c * t^k contributes c * sum_{j<k} alpha^{k-1-j} t^j
        for j in 0..k {
            let pw = alpha.pow((k - 1 - j) as i64).unwrap();
            out.insert_term((j, 0), c * &pw);
        }
    }
    Poly1(out)
}

/// The polynomial family `h_m(t) = m h(t) - m(m-1) alpha (h(t)-h(alpha))/(t-alpha)`.
pub fn h_m(h: &Poly1, alpha: &Scalar, m: i64) -> Poly1 {
    let ms = Scalar::from_int(m);
    let factor = &ms * &Scalar::from_int(m - 1) * alpha;
    let first = h.scale(&ms);
    if factor.is_zero() {
        return first;
    }
    let dd = divided_difference(h, alpha);
    &first - &dd.scale(&factor)
}

/// Result of checking the `h_m` family identity
/// `n h_n - m h_m + n(t - n alpha) h_m' - m(t - m alpha) h_n' = (n-m) h_{m+n}`.
#[derive(Clone, Debug)]
pub struct HIdentityCheck {
    pub passed: bool,
    /// `lhs - rhs`; zero exactly when the identity holds.
    pub residual: Poly1,
}

pub fn check_h_identity(h: &Poly1, alpha: &Scalar, m: i64, n: i64) -> HIdentityCheck {
    let hm = h_m(h, alpha, m);
    let hn = h_m(h, alpha, n);
    let hmn = h_m(h, alpha, m + n);
    let residual = h_identity_residual(alpha, m, n, &hm, &hn, &hmn);
    HIdentityCheck {
        passed: residual.is_zero(),
        residual,
    }
}

/// The identity residual given precomputed family members; callers sweeping
/// many `(m, n)` pairs build the `h_k` table once and reuse it.
pub(crate) fn h_identity_residual(
    alpha: &Scalar,
    m: i64,
    n: i64,
    hm: &Poly1,
    hn: &Poly1,
    hmn: &Poly1,
) -> Poly1 {
    let t = Poly1::var();
    let ms = Scalar::from_int(m);
    let ns = Scalar::from_int(n);
    let lin_n = &t - &Poly1::constant(&ns * alpha); // t - n*alpha
    let lin_m = &t - &Poly1::constant(&ms * alpha); // t - m*alpha
    let lhs = &(&hn.scale(&ns) - &hm.scale(&ms))
        + &(&(&lin_n * &hm.derivative()).scale(&ns) - &(&lin_m * &hn.derivative()).scale(&ms));
    let rhs = hmn.scale(&(&ns - &ms));
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn ring_basics() {
        let v1 = Poly2::var1();
        let v2 = Poly2::var2();
        assert_eq!(&(&v1 + &v2) + &(&v1 - &v2), v1.scale(&c(2)));
        assert_eq!(&v1 * &v2, Poly2::monomial(c(1), 1, 1));
        let one = Poly2::one();
        assert_eq!(&(&v1 + &one) * &(&v1 - &one), &Poly2::monomial(c(1), 2, 0) - &one);
    }

    #[test]
    fn shift_examples() {
        let v2sq = Poly2::monomial(c(1), 0, 2);
        let expect = {
            let mut p = Poly2::monomial(c(1), 0, 2);
            p.insert_term((0, 1), c(-2));
            p.insert_term((0, 0), c(1));
            p
        };
        assert_eq!(v2sq.shift_v2(&c(1)), expect);
        assert_eq!(Poly2::var1().shift_v2(&Scalar::sqrt2()), Poly2::var1());

        // oracle: (v2 - 2)^3 by repeated multiplication
        let lin = &Poly2::var2() - &Poly2::constant(c(2));
        let cubed = &(&lin * &lin) * &lin;
        assert_eq!(Poly2::monomial(c(1), 0, 3).shift_v2(&c(2)), cubed);
        assert_eq!(cubed.display_with("v1", "v2"), "v2^3 - 6*v2^2 + 12*v2 - 8");
    }

    #[test]
    fn shift_round_trips() {
        let p = {
            let mut p = Poly2::monomial(c(3), 2, 2);
            p.insert_term((1, 0), Scalar::sqrt2());
            p.insert_term((0, 3), Scalar::from_ratio(1, 2));
            p
        };
        let m = &c(2) + &Scalar::sqrt2();
        assert_eq!(p.shift_v2(&m).shift_v2(&(-&m)), p);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            Poly2::monomial(c(1), 2, 1).d_dv1(),
            Poly2::monomial(c(2), 1, 1)
        );
        assert_eq!(Poly2::monomial(c(1), 0, 3).d_dv1(), Poly2::zero());
        // oracle: expand (v1+v2)^2 = v1^2 + 2 v1 v2 + v2^2, differentiate termwise
        let sum = &Poly2::var1() + &Poly2::var2();
        let sq = &sum * &sum;
        let expect = &Poly2::monomial(c(2), 1, 0) + &Poly2::monomial(c(2), 0, 1);
        assert_eq!(sq.d_dv1(), expect);
    }

    #[test]
    fn substitute_examples() {
        let half = Scalar::from_ratio(1, 2);
        let p = &Poly2::var1() + &Poly2::var2();
        let got = p.substitute(&half, 2, &half);
        let expect = &Poly2::monomial(half.clone(), 2, 0) + &Poly2::monomial(half.clone(), 0, 1);
        assert_eq!(got, expect);

        let p2 = Poly2::monomial(c(1), 2, 0);
        assert_eq!(
            p2.substitute(&half, 2, &Scalar::one()),
            Poly2::monomial(Scalar::from_ratio(1, 4), 4, 0)
        );

        let p3 = Poly2::monomial(c(1), 1, 1);
        assert_eq!(
            p3.substitute(&half, 2, &half),
            Poly2::monomial(Scalar::from_ratio(1, 4), 2, 1)
        );
    }

    #[test]
    fn divided_difference_examples() {
        let alpha = Scalar::sqrt2();
        assert_eq!(divided_difference(&Poly1::var(), &alpha), Poly1::one());

        let tsq = Poly1::monomial(c(1), 2);
        let expect = &Poly1::var() + &Poly1::constant(alpha.clone());
        assert_eq!(divided_difference(&tsq, &alpha), expect);

        // oracle: verify q(t)(t - alpha) = h(t) - h(alpha) by long multiplication
        let h = &Poly1::monomial(c(1), 3) + &Poly1::var(); // t^3 + t
        let a = c(2);
        let q = divided_difference(&h, &a);
        let lin = &Poly1::var() - &Poly1::constant(a.clone());
        let back = &(&q * &lin) + &Poly1::constant(h.eval(&a));
        assert_eq!(back, h);
        let frozen = Poly1::from_coeffs(&[c(5), c(2), c(1)]); // t^2 + 2t + 5
        assert_eq!(q, frozen);
    }

    #[test]
    fn h_family_examples() {
        let h = &Poly1::monomial(c(1), 2) + &Poly1::constant(c(3));
        let alpha = c(1);
        assert!(h_m(&h, &alpha, 0).is_zero());
        assert_eq!(h_m(&h, &alpha, 1), h);
        // h = t: h_2 = 2t - 2*alpha
        let lin = Poly1::var();
        let a = Scalar::sqrt2();
        let expect = &lin.scale(&c(2)) - &Poly1::constant(&c(2) * &a);
        assert_eq!(h_m(&lin, &a, 2), expect);
    }

    #[test]
    fn h_identity_examples() {
        let tsq = Poly1::monomial(c(1), 2);
        assert!(check_h_identity(&tsq, &c(1), 1, -1).passed);

        // m = n makes both sides vanish identically
        let h = &Poly1::monomial(c(2), 3) + &Poly1::var();
        assert!(check_h_identity(&h, &Scalar::sqrt2(), 3, 3).passed);

        let cube = Poly1::monomial(c(1), 3);
        assert!(check_h_identity(&cube, &c(2), 3, -2).passed);
    }

    #[test]
    fn display_ordering() {
        let mut p = Poly2::monomial(Scalar::from_ratio(3, 2), 2, 1);
        p.insert_term((0, 1), Scalar::sqrt2());
        assert_eq!(p.display_with("v1", "v2"), "3/2*v1^2*v2 + sqrt2*v2");
        assert_eq!(Poly2::zero().display_with("u", "s"), "0");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Poly2> {
            proptest::collection::vec(
                ((0u32..3, 0u32..3), -4i64..=4),
                0..5,
            )
            .prop_map(|terms| {
                let mut p = Poly2::zero();
                for ((e1, e2), n) in terms {
                    p.insert_term((e1, e2), Scalar::from_int(n));
                }
                p
            })
        }

        fn arb_shift() -> impl Strategy<Value = Scalar> {
            (-3i64..=3, -2i64..=2).prop_map(|(a, b)| {
                &Scalar::from_int(a) + &(&Scalar::from_int(b) * &Scalar::sqrt2())
            })
        }

        proptest! {
            #[test]
            fn shift_is_ring_hom(p in arb_poly(), q in arb_poly(), m in arb_shift()) {
                let lhs = (&p * &q).shift_v2(&m);
                let rhs = &p.shift_v2(&m) * &q.shift_v2(&m);
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!((&p + &q).shift_v2(&m), &p.shift_v2(&m) + &q.shift_v2(&m));
            }

            #[test]
            fn derivative_commutes_with_shift(p in arb_poly(), m in arb_shift()) {
                prop_assert_eq!(p.shift_v2(&m).d_dv1(), p.d_dv1().shift_v2(&m));
            }

            #[test]
            fn derivative_leibniz(p in arb_poly(), q in arb_poly()) {
                let lhs = (&p * &q).d_dv1();
                let rhs = &(&p.d_dv1() * &q) + &(&p * &q.d_dv1());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn divided_difference_identity(coeffs in proptest::collection::vec(-4i64..=4, 0..5), a in arb_shift()) {
                let h = Poly1::from_coeffs(&coeffs.iter().map(|&n| Scalar::from_int(n)).collect::<Vec<_>>());
                let q = divided_difference(&h, &a);
                let lin = &Poly1::var() - &Poly1::constant(a.clone());
                let back = &(&q * &lin) + &Poly1::constant(h.eval(&a));
                prop_assert_eq!(back, h);
            }
        }
    }
}
