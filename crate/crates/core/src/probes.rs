//! Verification sweeps and simplicity/submodule experiments.
//!
//! Every sweep walks a fixed finite grid in a deterministic order
//! (kind, idx2, basis index ascending), checks an exact identity at each
//! cell, and reports the first failing cell as a counterexample. Sweeps are
//! parameterized over the bracket / action / map under test (the `_with`
//! variants) so that the deliberately broken implementations in
//! [`crate::faults`] can demonstrate that each sweep has the power to catch
//! each class of defect.

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::algebra::{
    sigma, superbracket, AlgebraElement, AlgebraError, Bracket, Parity, Sector, SuperBracket,
};
use crate::linalg::{vectorize, SpanBasis, Truncation};
use crate::modules::{
    act_ramond, psi, psi_inv, transport_h, ModuleAction, ModuleError, ModuleParams,
    QuotientAction, QuotientVector, SuperVector,
};
use crate::poly::{h_identity_residual, h_m, Poly1};
use crate::scalar::{Rational, Scalar};
use num::BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbeError {
    #[error("pi-invariance probe requires alpha = 0")]
    AlphaNonzero,
    #[error("closure probe requires a nonzero seed")]
    ZeroSeed,
    #[error("quotient index must be a positive integer")]
    InvalidPiIndex,
    #[error("transport family condition failed at m = {m}")]
    TransportConditionFailed { m: i64 },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// First failing grid cell of a sweep.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    /// Which identity failed (a sweep may check several families).
    pub identity: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

/// Outcome of one sweep or probe.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl ProbeReport {
    fn new(
        name: &str,
        checked: u64,
        counterexample: Option<Counterexample>,
        data: Option<serde_json::Value>,
    ) -> Self {
        assert!(checked > 0, "a probe must check at least one case");
        ProbeReport {
            name: name.to_string(),
            passed: counterexample.is_none(),
            checked,
            counterexample,
            data,
        }
    }
}

/// All homogeneous generators of a sector with `|idx2| <= 2 * idx_bound`, in
/// grid order: `L` then `W` then `G` (idx2 ascending), then `C1`, `C2`.
pub fn generators(sector: Sector, idx_bound: u32) -> Vec<AlgebraElement> {
    let b = 2 * idx_bound as i64;
    let mut out = Vec::new();
    for idx2 in (-b..=b).filter(|i| i % 2 == 0) {
        out.push(AlgebraElement::l(sector, idx2 / 2));
    }
    for idx2 in (-b..=b).filter(|i| i % 2 == 0) {
        out.push(AlgebraElement::w(sector, idx2 / 2));
    }
    let g_parity = match sector {
        Sector::Ramond => 0,
        Sector::NeveuSchwarz => 1,
    };
    for idx2 in (-b..=b).filter(|i| i.rem_euclid(2) == g_parity) {
        out.push(AlgebraElement::g(sector, idx2).expect("parity checked"));
    }
    out.push(AlgebraElement::c1(sector));
    out.push(AlgebraElement::c2(sector));
    out
}

fn pair_sign(x: &AlgebraElement, y: &AlgebraElement) -> Scalar {
    if x.parity() == Parity::Odd && y.parity() == Parity::Odd {
        Scalar::from_int(-1)
    } else {
        Scalar::from_int(1)
    }
}

/// Superalgebra-law sweep: supersymmetry on all generator pairs, pinned
/// normalization of the central terms on opposite-index pairs, and the
/// super-Jacobi identity on all generator triples. Exact throughout.
pub fn sweep_super_jacobi(sector: Sector, idx_bound: u32) -> ProbeReport {
    sweep_super_jacobi_with(&SuperBracket, sector, idx_bound)
}

pub fn sweep_super_jacobi_with(
    bracket: &dyn Bracket,
    sector: Sector,
    idx_bound: u32,
) -> ProbeReport {
    let gens = generators(sector, idx_bound);
    let mut checked = 0u64;
    let mut cex: Option<Counterexample> = None;
    let mut note_failure = |identity: &str,
                            inputs: Vec<String>,
                            lhs: &AlgebraElement,
                            rhs: &AlgebraElement,
                            cex: &mut Option<Counterexample>| {
        if cex.is_none() {
            *cex = Some(Counterexample {
                identity: identity.to_string(),
                inputs,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                residual: lhs.sub(rhs).to_string(),
            });
        }
    };

    // supersymmetry: [x,y] = -(-1)^{|x||y|} [y,x]
    for x in &gens {
        for y in &gens {
            checked += 1;
            let lhs = bracket.bracket(x, y).expect("sector uniform");
            let rhs = bracket
                .bracket(y, x)
                .expect("sector uniform")
                .scale(&-&pair_sign(x, y));
            if lhs != rhs {
                note_failure(
                    "supersymmetry",
                    vec![x.to_string(), y.to_string()],
                    &lhs,
                    &rhs,
                    &mut cex,
                );
            }
        }
    }

    // normalization anchors: restate the central coefficients independently
    // and compare against the bracket on opposite-index pairs
    let anchor_cases = central_anchors(sector, idx_bound);
    for (x, y, expected) in &anchor_cases {
        checked += 1;
        let got = bracket.bracket(x, y).expect("sector uniform");
        if &got != expected {
            note_failure(
                "normalization",
                vec![x.to_string(), y.to_string()],
                &got,
                expected,
                &mut cex,
            );
        }
    }

    // super-Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    for x in &gens {
        for y in &gens {
            for z in &gens {
                checked += 1;
                let lhs = bracket
                    .bracket(x, &bracket.bracket(y, z).expect("sector uniform"))
                    .expect("sector uniform");
                let rhs = bracket
                    .bracket(&bracket.bracket(x, y).expect("sector uniform"), z)
                    .expect("sector uniform")
                    .add(
                        &bracket
                            .bracket(y, &bracket.bracket(x, z).expect("sector uniform"))
                            .expect("sector uniform")
                            .scale(&pair_sign(x, y)),
                    );
                if lhs != rhs {
                    note_failure(
                        "super-jacobi",
                        vec![x.to_string(), y.to_string(), z.to_string()],
                        &lhs,
                        &rhs,
                        &mut cex,
                    );
                }
            }
        }
    }

    ProbeReport::new("super_jacobi", checked, cex, None)
}

/// Expected values of `[L_m, L_{-m}]`, `[L_m, W_{-m}]`, `[G_r, G_{-r}]`,
/// rebuilt from the structure-constant formulas independently of the
/// bracket implementation.
fn central_anchors(
    sector: Sector,
    idx_bound: u32,
) -> Vec<(AlgebraElement, AlgebraElement, AlgebraElement)> {
    let mut out = Vec::new();
    let twelve = Rational::from_integer(BigInt::from(12));
    for m in 1..=idx_bound as i64 {
        let mr = Rational::from_integer(BigInt::from(m));
        let omega = Scalar::from_rational((&mr * &mr * &mr - &mr) / &twelve);
        let x = AlgebraElement::l(sector, m);
        let expect_ll = AlgebraElement::l(sector, 0)
            .scale(&Scalar::from_int(-2 * m))
            .add(&AlgebraElement::c1(sector).scale(&omega));
        out.push((x.clone(), AlgebraElement::l(sector, -m), expect_ll));
        let expect_lw = AlgebraElement::w(sector, 0)
            .scale(&Scalar::from_int(-2 * m))
            .add(&AlgebraElement::c2(sector).scale(&omega));
        out.push((x, AlgebraElement::w(sector, -m), expect_lw));
    }
    let g_parity = match sector {
        Sector::Ramond => 0,
        Sector::NeveuSchwarz => 1,
    };
    for idx2 in (g_parity.max(0)..=2 * idx_bound as i64)
        .filter(|i| i.rem_euclid(2) == g_parity)
    {
        let omega = Scalar::from_rational(Rational::new(
            BigInt::from(1 - idx2 * idx2),
            BigInt::from(12),
        ));
        let expect = AlgebraElement::w(sector, 0)
            .scale(&Scalar::from_int(2))
            .add(&AlgebraElement::c2(sector).scale(&omega));
        out.push((
            AlgebraElement::g(sector, idx2).expect("parity matches sector"),
            AlgebraElement::g(sector, -idx2).expect("parity matches sector"),
            expect,
        ));
    }
    out
}

/// Module-axiom sweep: `x(yv) - (-1)^{|x||y|} y(xv) = [x,y]v` on all
/// homogeneous generator pairs and all monomial seeds of the window.
pub fn sweep_module_axioms(
    params: &ModuleParams,
    idx_bound: u32,
    tr: &Truncation,
) -> Result<ProbeReport, ProbeError> {
    sweep_module_axioms_with(params, &SuperBracket, idx_bound, tr)
}

pub fn sweep_module_axioms_with(
    action: &dyn ModuleAction,
    bracket: &dyn Bracket,
    idx_bound: u32,
    tr: &Truncation,
) -> Result<ProbeReport, ProbeError> {
    let kind = action.kind();
    let gens = generators(kind, idx_bound);
    let seeds = tr.basis_vectors(kind);
    let mut checked = 0u64;
    let mut cex: Option<Counterexample> = None;

    for x in &gens {
        for y in &gens {
            let sign = pair_sign(x, y);
            let br = bracket.bracket(x, y)?;
            for v in &seeds {
                checked += 1;
                let xy = action.act(x, &action.act(y, v)?)?;
                let yx = action.act(y, &action.act(x, v)?)?;
                let lhs = xy.sub(&yx.scale(&sign));
                let rhs = action.act(&br, v)?;
                if lhs != rhs && cex.is_none() {
                    cex = Some(Counterexample {
                        identity: "module-axiom".to_string(),
                        inputs: vec![x.to_string(), y.to_string(), v.to_string()],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                        residual: lhs.sub(&rhs).to_string(),
                    });
                }
            }
        }
    }

    Ok(ProbeReport::new("module_axioms", checked, cex, None))
}

/// Generate the submodule closure of a seed inside the window: apply every
/// generator to every newly inserted vector, discard images that escape the
/// window, and iterate to a fixed point. The reported dimension is a lower
/// bound on the true closure's intersection with the window; the probe
/// passes when it reaches the full window dimension.
pub fn closure_probe(
    action: &dyn ModuleAction,
    seed: &SuperVector,
    idx_bound: u32,
    tr: &Truncation,
) -> Result<ProbeReport, ProbeError> {
    if seed.is_zero() {
        return Err(ProbeError::ZeroSeed);
    }
    let gens = generators(action.kind(), idx_bound);
    let mut span = SpanBasis::new(tr.dimension());
    let mut frontier: Vec<SuperVector> = Vec::new();
    let mut checked = 0u64;
    let mut discarded = 0u64;

    let (coords, overflow) = vectorize(seed, tr);
    if overflow {
        discarded += 1;
    } else if span.insert(coords) {
        frontier.push(seed.clone());
    }

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for g in &gens {
                checked += 1;
                let image = action.act(g, v)?;
                if image.is_zero() {
                    continue;
                }
                let (coords, overflow) = vectorize(&image, tr);
                if overflow {
                    discarded += 1;
                    continue;
                }
                if span.insert(coords) {
                    next.push(image);
                }
            }
        }
        frontier = next;
    }

    let dimension = span.rank();
    let full_dimension = tr.dimension();
    let cex = if dimension == full_dimension {
        None
    } else {
        Some(Counterexample {
            identity: "closure-full".to_string(),
            inputs: vec![seed.to_string()],
            lhs: format!("dimension {dimension}"),
            rhs: format!("dimension {full_dimension}"),
            residual: format!("{} basis directions unreached", full_dimension - dimension),
        })
    };
    let data = json!({
        "dimension": dimension,
        "full_dimension": full_dimension,
        "full": dimension == full_dimension,
        "discarded_overflow": discarded,
    });
    Ok(ProbeReport::new("closure", checked.max(1), cex, Some(data)))
}

/// For alpha = 0, verify that the graded subspace with even part divisible
/// by `u^i` is invariant: every generator image of every window monomial of
/// the subspace stays inside it. Images are checked exactly, untruncated.
pub fn pi_invariance_probe(
    params: &ModuleParams,
    i: u32,
    idx_bound: u32,
    tr: &Truncation,
) -> Result<ProbeReport, ProbeError> {
    if !params.alpha().is_zero() {
        return Err(ProbeError::AlphaNonzero);
    }
    if i == 0 {
        return Err(ProbeError::InvalidPiIndex);
    }
    let r = Sector::Ramond;
    let gens = generators(r, idx_bound);
    let mut seeds = Vec::new();
    for b in tr.basis() {
        if b.odd || b.e1 >= i {
            seeds.push(if b.odd {
                SuperVector::basis_odd(r, b.e1, b.e2)
            } else {
                SuperVector::basis_even(r, b.e1, b.e2)
            });
        }
    }
    let mut checked = 0u64;
    let mut cex: Option<Counterexample> = None;
    for v in &seeds {
        for g in &gens {
            checked += 1;
            let image = act_ramond(params, g, v)?;
            let escaped: Vec<String> = image
                .even()
                .terms()
                .filter(|(&(e1, _), _)| e1 < i)
                .map(|(&(e1, e2), c)| format!("{c}*u^{e1}*s^{e2}"))
                .collect();
            if !escaped.is_empty() && cex.is_none() {
                cex = Some(Counterexample {
                    identity: "pi-invariance".to_string(),
                    inputs: vec![g.to_string(), v.to_string()],
                    lhs: image.to_string(),
                    rhs: format!("even part divisible by u^{i}"),
                    residual: escaped.join(" + "),
                });
            }
        }
    }
    let data = json!({ "i": i, "seeds": seeds.len() });
    Ok(ProbeReport::new("pi_invariance", checked, cex, Some(data)))
}

/// Quotient simplicity probe. When `h(0) != i` the closure of the class of
/// `1` under `L_m` must reach every class `s^k`, `k <= s_deg`; when
/// `h(0) = i` the subspace `s C[s]` is verified invariant, witnessing a
/// proper nonzero invariant subspace.
pub fn quotient_simplicity_probe(
    params: &ModuleParams,
    i: u32,
    idx_bound: u32,
    s_deg: u32,
) -> Result<ProbeReport, ProbeError> {
    quotient_simplicity_probe_with(params, params, i, idx_bound, s_deg)
}

pub fn quotient_simplicity_probe_with(
    action: &dyn QuotientAction,
    params: &ModuleParams,
    i: u32,
    idx_bound: u32,
    s_deg: u32,
) -> Result<ProbeReport, ProbeError> {
    let r = Sector::Ramond;
    let h0 = params.h().eval(&Scalar::zero());
    let d = &h0 - &Scalar::from_int(i as i64);
    let gens: Vec<AlgebraElement> = (-(idx_bound as i64)..=idx_bound as i64)
        .map(|m| AlgebraElement::l(r, m))
        .collect();
    let mut checked = 0u64;
    let mut cex: Option<Counterexample> = None;

    if !d.is_zero() {
        // closure branch
        let dim = s_deg as usize + 1;
        let mut span = SpanBasis::new(dim);
        let vectorize_class = |v: &QuotientVector| -> Option<Vec<Scalar>> {
            if v.poly().degree_v2() > s_deg {
                return None;
            }
            Some((0..=s_deg).map(|k| v.poly().coeff(0, k)).collect())
        };
        let seed = QuotientVector::basis(i, 0);
        let mut frontier = Vec::new();
        if span.insert(vectorize_class(&seed).expect("seed inside window")) {
            frontier.push(seed.clone());
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for g in &gens {
                    checked += 1;
                    let image = action.act(g, v)?;
                    if image.is_zero() {
                        continue;
                    }
                    let Some(coords) = vectorize_class(&image) else {
                        continue;
                    };
                    if span.insert(coords) {
                        next.push(image);
                    }
                }
            }
            frontier = next;
        }
        if !span.is_full() {
            cex = Some(Counterexample {
                identity: "quotient-closure-full".to_string(),
                inputs: vec![seed.to_string()],
                lhs: format!("dimension {}", span.rank()),
                rhs: format!("dimension {dim}"),
                residual: format!("{} class directions unreached", dim - span.rank()),
            });
        }
        let data = json!({
            "branch": "closure",
            "dimension": span.rank(),
            "full_dimension": dim,
        });
        Ok(ProbeReport::new(
            "quotient_simplicity",
            checked.max(1),
            cex,
            Some(data),
        ))
    } else {
        // invariance branch: s C[s] is stable under every L_m
        for k in 0..=s_deg {
            let v = QuotientVector::basis(i, k + 1);
            for g in &gens {
                checked += 1;
                let image = action.act(g, &v)?;
                let constant = image.poly().coeff(0, 0);
                if !constant.is_zero() && cex.is_none() {
                    cex = Some(Counterexample {
                        identity: "quotient-s-invariance".to_string(),
                        inputs: vec![g.to_string(), v.to_string()],
                        lhs: image.to_string(),
                        rhs: "class divisible by s".to_string(),
                        residual: constant.to_string(),
                    });
                }
            }
        }
        let data = json!({ "branch": "invariance" });
        Ok(ProbeReport::new(
            "quotient_simplicity",
            checked,
            cex,
            Some(data),
        ))
    }
}

/// Sector-embedding sweep: the embedding is a homomorphism on every
/// generator pair, and injective on the generator basis.
pub fn sweep_sigma_hom(idx_bound: u32) -> ProbeReport {
    sweep_sigma_hom_with(&|x| sigma(x), &SuperBracket, idx_bound)
}

type SigmaFn<'a> = &'a dyn Fn(&AlgebraElement) -> Result<AlgebraElement, AlgebraError>;

pub fn sweep_sigma_hom_with(
    sigma_fn: SigmaFn<'_>,
    bracket: &dyn Bracket,
    idx_bound: u32,
) -> ProbeReport {
    let gens = generators(Sector::NeveuSchwarz, idx_bound);
    let mut checked = 0u64;
    let mut cex: Option<Counterexample> = None;
    for x in &gens {
        for y in &gens {
            checked += 1;
            let lhs = sigma_fn(&bracket.bracket(x, y).expect("NS uniform"))
                .expect("NS element");
            let rhs = bracket
                .bracket(&sigma_fn(x).expect("NS element"), &sigma_fn(y).expect("NS element"))
                .expect("Ramond uniform");
            if lhs != rhs && cex.is_none() {
                cex = Some(Counterexample {
                    identity: "sigma-homomorphism".to_string(),
                    inputs: vec![x.to_string(), y.to_string()],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    residual: lhs.sub(&rhs).to_string(),
                });
            }
        }
    }
    // injectivity on the generator basis: images nonzero and pairwise distinct
    let images: Vec<AlgebraElement> = gens.iter().map(|g| sigma_fn(g).expect("NS element")).collect();
    for (i, x) in images.iter().enumerate() {
        checked += 1;
        if x.is_zero() && cex.is_none() {
            cex = Some(Counterexample {
                identity: "sigma-injectivity".to_string(),
                inputs: vec![gens[i].to_string()],
                lhs: "0".to_string(),
                rhs: "nonzero image".to_string(),
                residual: "generator mapped to zero".to_string(),
            });
        }
        for (j, y) in images.iter().enumerate().skip(i + 1) {
            if x == y && cex.is_none() {
                cex = Some(Counterexample {
                    identity: "sigma-injectivity".to_string(),
                    inputs: vec![gens[i].to_string(), gens[j].to_string()],
                    lhs: x.to_string(),
                    rhs: y.to_string(),
                    residual: "distinct generators with equal images".to_string(),
                });
            }
        }
    }
    ProbeReport::new("sigma_hom", checked, cex, None)
}

type PsiFn<'a> = &'a dyn Fn(&SuperVector) -> Result<SuperVector, ModuleError>;

/// Intertwiner sweep. Checks, in order: the transported polynomial satisfies
/// the family condition `g_m(t/2) = h_{2m}(t)/2` for `|m| <= idx_bound`;
/// the intertwining identity `psi(x . v) = sigma(x) . psi(v)` on the
/// generator/monomial grid; and that the substitution round-trips bijectively
/// on the window.
pub fn sweep_psi_intertwiner(
    h: &Poly1,
    alpha: &Scalar,
    lambda: &Scalar,
    sqrt_lambda: &Scalar,
    idx_bound: u32,
    tr: &Truncation,
) -> Result<ProbeReport, ProbeError> {
    let (p_ns, p_r) = psi_module_pair(h, alpha, lambda, sqrt_lambda, idx_bound)?;
    let psi_fn = |v: &SuperVector| psi(&p_ns, v);
    let (mut checked, mut cex) = psi_intertwine_grid(&psi_fn, &p_ns, &p_r, idx_bound, tr)?;

    // bijectivity: the inverse substitution round-trips on window monomials
    for v in tr.basis_vectors(Sector::NeveuSchwarz) {
        checked += 1;
        let back = psi_inv(&p_ns, &psi(&p_ns, &v)?)?;
        if back != v && cex.is_none() {
            cex = Some(Counterexample {
                identity: "psi-bijectivity".to_string(),
                inputs: vec![v.to_string()],
                lhs: back.to_string(),
                rhs: v.to_string(),
                residual: back.sub(&v).to_string(),
            });
        }
    }
    for v in tr.basis_vectors(Sector::Ramond) {
        checked += 1;
        let back = psi(&p_ns, &psi_inv(&p_ns, &v)?)?;
        if back != v && cex.is_none() {
            cex = Some(Counterexample {
                identity: "psi-bijectivity".to_string(),
                inputs: vec![v.to_string()],
                lhs: back.to_string(),
                rhs: v.to_string(),
                residual: back.sub(&v).to_string(),
            });
        }
    }
    Ok(ProbeReport::new("psi_intertwiner", checked, cex, None))
}

/// Variant with the intertwining map under test supplied by the caller;
/// used by the fault-injection suite.
pub fn sweep_psi_intertwiner_with(
    psi_fn: PsiFn<'_>,
    h: &Poly1,
    alpha: &Scalar,
    lambda: &Scalar,
    sqrt_lambda: &Scalar,
    idx_bound: u32,
    tr: &Truncation,
) -> Result<ProbeReport, ProbeError> {
    let (p_ns, p_r) = psi_module_pair(h, alpha, lambda, sqrt_lambda, idx_bound)?;
    let (checked, cex) = psi_intertwine_grid(psi_fn, &p_ns, &p_r, idx_bound, tr)?;
    Ok(ProbeReport::new("psi_intertwiner", checked, cex, None))
}

fn psi_module_pair(
    h: &Poly1,
    alpha: &Scalar,
    lambda: &Scalar,
    sqrt_lambda: &Scalar,
    idx_bound: u32,
) -> Result<(ModuleParams, ModuleParams), ProbeError> {
    let g = transport_h(h, alpha);
    // family condition first
    for m in -(idx_bound as i64)..=idx_bound as i64 {
        let lhs = h_m(&g, alpha, m).substitute_var(&Scalar::from_ratio(1, 2));
        let rhs = h_m(h, alpha, 2 * m).scale(&Scalar::from_ratio(1, 2));
        if lhs != rhs {
            return Err(ProbeError::TransportConditionFailed { m });
        }
    }
    let p_ns = ModuleParams::new(
        lambda.clone(),
        alpha.clone(),
        g,
        Sector::NeveuSchwarz,
        Some(sqrt_lambda.clone()),
    )?;
    let p_r = ModuleParams::new(
        sqrt_lambda.clone(),
        alpha.clone(),
        h.clone(),
        Sector::Ramond,
        None,
    )?;
    Ok((p_ns, p_r))
}

fn psi_intertwine_grid(
    psi_fn: PsiFn<'_>,
    p_ns: &ModuleParams,
    p_r: &ModuleParams,
    idx_bound: u32,
    tr: &Truncation,
) -> Result<(u64, Option<Counterexample>), ProbeError> {
    let gens = generators(Sector::NeveuSchwarz, idx_bound);
    let seeds = tr.basis_vectors(Sector::NeveuSchwarz);
    let mut checked = 0u64;
    let mut cex = None;
    for x in &gens {
        let mapped = sigma(x)?;
        for v in &seeds {
            checked += 1;
            let lhs = psi_fn(&p_ns.act(x, v)?)?;
            let rhs = act_ramond(p_r, &mapped, &psi_fn(v)?)?;
            if lhs != rhs && cex.is_none() {
                cex = Some(Counterexample {
                    identity: "psi-intertwining".to_string(),
                    inputs: vec![x.to_string(), v.to_string()],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    residual: lhs.sub(&rhs).to_string(),
                });
            }
        }
    }
    Ok((checked, cex))
}

/// Sweep of the `h_m` family identity over `m, n` in `[-bound, bound]`,
/// with the family table built once.
pub fn sweep_h_identity(h: &Poly1, alpha: &Scalar, bound: u32) -> ProbeReport {
    sweep_h_identity_with(&|h, a, m| h_m(h, a, m), h, alpha, bound)
}

type HmFn<'a> = &'a dyn Fn(&Poly1, &Scalar, i64) -> Poly1;

pub fn sweep_h_identity_with(
    hm_fn: HmFn<'_>,
    h: &Poly1,
    alpha: &Scalar,
    bound: u32,
) -> ProbeReport {
    let b = bound as i64;
    let table: Vec<Poly1> = (-2 * b..=2 * b).map(|k| hm_fn(h, alpha, k)).collect();
    let at = |k: i64| -> &Poly1 { &table[(k + 2 * b) as usize] };
    let mut checked = 0u64;
    let mut cex = None;
    for m in -b..=b {
        for n in -b..=b {
            checked += 1;
            let residual = h_identity_residual(alpha, m, n, at(m), at(n), at(m + n));
            if !residual.is_zero() && cex.is_none() {
                cex = Some(Counterexample {
                    identity: "h-family".to_string(),
                    inputs: vec![format!("h = {h}"), format!("alpha = {alpha}"), format!("m = {m}"), format!("n = {n}")],
                    lhs: "see residual".to_string(),
                    rhs: "0".to_string(),
                    residual: residual.to_string(),
                });
            }
        }
    }
    ProbeReport::new("h_identity", checked, cex, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly1;

    fn c(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn generator_grid_sizes() {
        assert_eq!(generators(Sector::Ramond, 4).len(), 9 + 9 + 9 + 2);
        assert_eq!(generators(Sector::NeveuSchwarz, 4).len(), 9 + 9 + 8 + 2);
    }

    #[test]
    fn jacobi_sweep_small_bounds() {
        for sector in [Sector::Ramond, Sector::NeveuSchwarz] {
            let report = sweep_super_jacobi(sector, 2);
            assert!(report.passed, "{:?}", report.counterexample);
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn module_axiom_sweep_small_grid() {
        let tr = Truncation::new(2, 2, true);
        let p = ModuleParams::new(c(1), c(1), Poly1::var(), Sector::Ramond, None).unwrap();
        let report = sweep_module_axioms(&p, 2, &tr).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);

        // alpha = 0 is still a module
        let p0 = ModuleParams::new(c(2), c(0), Poly1::zero(), Sector::Ramond, None).unwrap();
        let report = sweep_module_axioms(&p0, 2, &tr).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);

        let pns = ModuleParams::new(
            c(2),
            c(1),
            Poly1::var(),
            Sector::NeveuSchwarz,
            Some(Scalar::sqrt2()),
        )
        .unwrap();
        let report = sweep_module_axioms(&pns, 2, &tr).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);
    }

    #[test]
    fn closure_reaches_full_window_when_simple() {
        let p = ModuleParams::new(c(1), c(1), Poly1::zero(), Sector::Ramond, None).unwrap();
        let tr = Truncation::new(2, 2, true);
        let seed = SuperVector::one(Sector::Ramond);
        let report = closure_probe(&p, &seed, 2, &tr).unwrap();
        assert!(report.passed);
        assert_eq!(report.data.as_ref().unwrap()["dimension"], 18);
    }

    #[test]
    fn closure_stays_proper_for_alpha_zero() {
        let p = ModuleParams::new(c(1), c(0), Poly1::zero(), Sector::Ramond, None).unwrap();
        let tr = Truncation::new(2, 2, true);
        // seed u . 1: with alpha = 0 no operator lowers the u-degree, so the
        // window closure stays inside the e1 >= 1 columns (12 of 18)
        let seed = SuperVector::basis_even(Sector::Ramond, 1, 0);
        let report = closure_probe(&p, &seed, 2, &tr).unwrap();
        assert!(!report.passed);
        assert_eq!(report.data.as_ref().unwrap()["dimension"], 12);
    }

    #[test]
    fn closure_rejects_zero_seed() {
        let p = ModuleParams::new(c(1), c(1), Poly1::zero(), Sector::Ramond, None).unwrap();
        let tr = Truncation::new(1, 1, true);
        assert_eq!(
            closure_probe(&p, &SuperVector::zero(Sector::Ramond), 1, &tr),
            Err(ProbeError::ZeroSeed)
        );
    }

    #[test]
    fn pi_invariance_cases() {
        let tr = Truncation::new(3, 2, true);
        let p = ModuleParams::new(c(1), c(0), Poly1::var(), Sector::Ramond, None).unwrap();
        let report = pi_invariance_probe(&p, 1, 3, &tr).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);

        let p2 = ModuleParams::new(c(1), c(0), Poly1::zero(), Sector::Ramond, None).unwrap();
        let report = pi_invariance_probe(&p2, 2, 2, &tr).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);

        let bad = ModuleParams::new(c(1), c(1), Poly1::zero(), Sector::Ramond, None).unwrap();
        assert_eq!(
            pi_invariance_probe(&bad, 1, 2, &tr),
            Err(ProbeError::AlphaNonzero)
        );
        assert_eq!(
            pi_invariance_probe(&p2, 0, 2, &tr),
            Err(ProbeError::InvalidPiIndex)
        );
    }

    #[test]
    fn quotient_probe_both_branches() {
        // h = 2 constant, i = 0: h(0) - i = 2, closure must fill all degrees
        let p = ModuleParams::new(c(1), c(0), Poly1::constant(c(2)), Sector::Ramond, None).unwrap();
        let report = quotient_simplicity_probe(&p, 0, 2, 4).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);
        assert_eq!(report.data.as_ref().unwrap()["branch"], "closure");

        // h = 1 constant, i = 1: h(0) = i, s C[s] invariant
        let p2 = ModuleParams::new(c(1), c(0), Poly1::constant(c(1)), Sector::Ramond, None).unwrap();
        let report = quotient_simplicity_probe(&p2, 1, 2, 4).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);
        assert_eq!(report.data.as_ref().unwrap()["branch"], "invariance");
    }

    #[test]
    fn sigma_hom_sweep() {
        let report = sweep_sigma_hom(2);
        assert!(report.passed, "{:?}", report.counterexample);
    }

    #[test]
    fn psi_sweep_small() {
        let tr = Truncation::new(2, 2, true);
        let report =
            sweep_psi_intertwiner(&Poly1::zero(), &c(1), &c(4), &c(2), 2, &tr).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);

        // exercises sqrt2 arithmetic
        let report =
            sweep_psi_intertwiner(&Poly1::var(), &c(0), &c(2), &Scalar::sqrt2(), 2, &tr).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);

        // guard: sqrt mismatch
        assert_eq!(
            sweep_psi_intertwiner(&Poly1::zero(), &c(1), &c(4), &c(3), 2, &tr),
            Err(ProbeError::Module(ModuleError::SqrtMismatch))
        );
    }

    #[test]
    fn h_identity_sweep() {
        let h = &Poly1::monomial(c(1), 3) + &Poly1::var();
        let report = sweep_h_identity(&h, &Scalar::sqrt2(), 3);
        assert!(report.passed, "{:?}", report.counterexample);
        assert_eq!(report.checked, 49);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = sweep_super_jacobi(Sector::Ramond, 1);
        let b = sweep_super_jacobi(Sector::Ramond, 1);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
