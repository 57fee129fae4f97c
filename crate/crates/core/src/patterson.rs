//! The explicit genus-2 b-group family, its hyperelliptic extension to a
//! `(0,6;2,2,2,2,2,2)` group, the `(0,6)` family `F` with its conjugator
//! `E`, and the affine Patterson isomorphisms between the deformation
//! spaces.

use crate::error::Error;
use crate::marked::{MarkedBGroup, Word};
use crate::moebius::{Cplx, ExtComplex, MoebiusMap};
use crate::triangle::{Nu, Signature};
use crate::Result;

fn check_upper(name: &str, z: Cplx) -> Result<()> {
    if z.im > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveImaginary(format!("{} = {}", name, z)))
    }
}

fn a1() -> MoebiusMap {
    MoebiusMap::from_reals(-1.0, -2.0, 0.0, -1.0).expect("A1")
}

fn c1(t1: Cplx) -> MoebiusMap {
    let i = Cplx::i();
    MoebiusMap::new(i * t1, i, i, Cplx::new(0.0, 0.0)).expect("C1")
}

fn a3(t2: Cplx) -> MoebiusMap {
    let one = Cplx::new(1.0, 0.0);
    MoebiusMap::new(
        -one - 2.0 * t2 * (one - t2),
        -2.0 * (one - t2) * (one - t2),
        2.0 * t2 * t2,
        -one + 2.0 * t2 * (one - t2),
    )
    .expect("A3")
}

/// The half-twist product `C₃·A₂^{-1/2}`, the display that pins down `C₃`.
fn c3_a2_half_inv(t2: Cplx, t3: Cplx) -> MoebiusMap {
    let i = Cplx::i();
    let one = Cplx::new(1.0, 0.0);
    let t22 = t2 * t2;
    MoebiusMap::new(
        i * (-one + 2.0 * t2 - t2 * t3 + t22 * t3),
        i * (2.0 * one - t3 - 2.0 * t2 - t22 * t3 + 2.0 * t2 * t3),
        i * (2.0 * t2 + t22 * t3),
        i * (one - 2.0 * t2 + t2 * t3 - t22 * t3),
    )
    .expect("C3·A2^{-1/2}")
}

/// `[C₁⁻¹, A₁] = C₁⁻¹A₁C₁A₁⁻¹`, which equals `[[1,-2],[2,-3]]` for every
/// value of the handle coordinate.
fn a2_commutator(c1m: &MoebiusMap, a1m: &MoebiusMap) -> MoebiusMap {
    c1m.inverse()
        .compose(a1m)
        .compose(c1m)
        .compose(&a1m.inverse())
}

/// The genus-2 terminal regular b-group for handle coordinates
/// `(τ₁, τ₂, τ₃)`: generators `A₁ = z+2`, `C₁ = i[[τ₁,1],[1,0]]`, the
/// accidental parabolic `A₂ = [C₁⁻¹,A₁]`, `A₃`, and `C₃` reconstructed as
/// `(C₃A₂^{-1/2})·A₂^{1/2}`. Relations: the `A₂` definition and the
/// surface relation `[A₁,C₁⁻¹]∘[A₃⁻¹,C₃⁻¹] = I`.
pub fn genus2_group(t1: Cplx, t2: Cplx, t3: Cplx) -> Result<MarkedBGroup> {
    check_upper("tau1", t1)?;
    check_upper("tau2", t2)?;
    check_upper("tau3", t3)?;
    let a1m = a1();
    let c1m = c1(t1);
    let a2m = a2_commutator(&c1m, &a1m);
    let a2_half = a2m.parabolic_sqrt()?;
    let a3m = a3(t2);
    let c3m = c3_a2_half_inv(t2, t3).compose(&a2_half);

    let relations = vec![
        // A2 · [C1⁻¹,A1]⁻¹
        Word::new(vec![("A2", 1), ("A1", 1), ("C1", -1), ("A1", -1), ("C1", 1)]),
        // [A1,C1⁻¹] ∘ [A3⁻¹,C3⁻¹]
        Word::new(vec![
            ("A1", 1),
            ("C1", -1),
            ("A1", -1),
            ("C1", 1),
            ("A3", -1),
            ("C3", -1),
            ("A3", 1),
            ("C3", 1),
        ]),
    ];

    Ok(MarkedBGroup {
        signature: Signature::new(2, vec![]),
        generators: vec![
            ("A1".to_string(), a1m),
            ("C1".to_string(), c1m),
            ("A2".to_string(), a2m),
            ("A3".to_string(), a3m),
            ("C3".to_string(), c3m),
        ],
        relations,
        accidental_parabolics: vec!["A1".to_string(), "A2".to_string(), "A3".to_string()],
        coordinates: vec![t1, t2, t3],
        partition_label: "genus-2 three-curve partition (handle, separating, handle)".to_string(),
        warnings: Vec::new(),
        anchors: vec![
            ("a".to_string(), ExtComplex::Infinity),
            ("b".to_string(), ExtComplex::finite(0.0, 0.0)),
            ("c".to_string(), ExtComplex::finite(1.0, 0.0)),
        ],
    })
}

/// The six order-2 words of the hyperelliptic extension, over the
/// extension's generator names. The last one is the cone element closing
/// the six-fold product relation.
pub fn extended_order2_words() -> Vec<Word> {
    vec![
        // A2^{-1/2} C1^{-1}
        Word::new(vec![("C1A2h", -1)]),
        // C1 A2^{1/2} A1
        Word::new(vec![("C1A2h", 1), ("A1inv", -1)]),
        // A1^{-1} A2^{-1/2}
        Word::new(vec![("A1inv", 1), ("A2h", -1)]),
        // A2^{1/2} A3
        Word::new(vec![("A2h", 1), ("A3inv", -1)]),
        // C3 A2^{-1/2}
        Word::new(vec![("C3A2hinv", 1)]),
        // A2^{1/2} C3^{-1} A3^{-1}
        Word::new(vec![("C3A2hinv", -1), ("A3inv", 1)]),
    ]
}

/// The `(0,6;2⁶)` extension of the genus-2 group by the hyperelliptic
/// lift `A₂^{1/2}`: generators `C₁A₂^{1/2}`, `A₁⁻¹`, `A₂^{1/2}`, `A₃⁻¹`,
/// `C₃A₂^{-1/2}`. The six order-2 cone words and their product relation
/// are recorded as relations (each word squared evaluates to the
/// identity).
pub fn extended_genus2_group(t1: Cplx, t2: Cplx, t3: Cplx) -> Result<MarkedBGroup> {
    let base = genus2_group(t1, t2, t3)?;
    let a1m = *base.generator("A1").expect("A1");
    let c1m = *base.generator("C1").expect("C1");
    let a2m = *base.generator("A2").expect("A2");
    let a3m = *base.generator("A3").expect("A3");
    let a2_half = a2m.parabolic_sqrt()?;
    let c3a2hinv = c3_a2_half_inv(t2, t3);

    let mut relations: Vec<Word> = extended_order2_words()
        .into_iter()
        .map(|w| w.concat(&w))
        .collect();
    // the six cone involutions multiply to the identity
    let product = extended_order2_words()
        .into_iter()
        .fold(Word(Vec::new()), |acc, w| acc.concat(&w));
    relations.push(product);

    Ok(MarkedBGroup {
        signature: Signature::new(0, vec![Nu::Finite(2); 6]),
        generators: vec![
            ("C1A2h".to_string(), c1m.compose(&a2_half)),
            ("A1inv".to_string(), a1m.inverse()),
            ("A2h".to_string(), a2_half),
            ("A3inv".to_string(), a3m.inverse()),
            ("C3A2hinv".to_string(), c3a2hinv),
        ],
        relations,
        accidental_parabolics: vec![
            "A1inv".to_string(),
            "A2h".to_string(),
            "A3inv".to_string(),
        ],
        coordinates: vec![t1, t2, t3],
        partition_label: "hyperelliptic quotient of the genus-2 partition".to_string(),
        warnings: Vec::new(),
        anchors: base.anchors.clone(),
    })
}

/// The `(0,6;2⁶)` family `F` in its own coordinates `(α, β, γ)`:
/// generators `D₁ = i[[-1,0],[0,1]]`, `B₁ = z+2` (as `[[-1,-2],[0,-1]]`),
/// `B₂`, `B₃`, `D₄`. Requires `β ≠ 0`; chart coordinates with
/// non-positive imaginary part are reported as warnings.
pub fn zero_six_group(alpha: Cplx, beta: Cplx, gamma: Cplx) -> Result<MarkedBGroup> {
    if beta.norm() == 0.0 {
        return Err(Error::DegenerateTriple("beta must be nonzero".to_string()));
    }
    let i = Cplx::i();
    let one = Cplx::new(1.0, 0.0);
    let d1 = MoebiusMap::new(-i, Cplx::new(0.0, 0.0), Cplx::new(0.0, 0.0), i)?;
    let b1 = MoebiusMap::from_reals(-1.0, -2.0, 0.0, -1.0)?;
    let b2 = MoebiusMap::new(-one - alpha, alpha * alpha, -one, -one + alpha)?;
    let b3 = MoebiusMap::new(
        -one + 2.0 * beta + 2.0 * alpha * beta * beta,
        -2.0 * (one + alpha * beta) * (one + alpha * beta),
        2.0 * beta * beta,
        -one - 2.0 * beta - 2.0 * alpha * beta * beta,
    )?;
    let d4 = MoebiusMap::new(
        i * (-one - 2.0 * alpha * beta + 2.0 * alpha * gamma + 2.0 * gamma / beta),
        i * (-2.0 * (one + alpha * beta) * (-alpha * beta * beta + gamma + alpha * beta * gamma)
            / (beta * beta)),
        i * (2.0 * gamma - 2.0 * beta),
        i * (one + 2.0 * alpha * beta - 2.0 * alpha * gamma - 2.0 * gamma / beta),
    )?;

    let charts = zero_six_charts(alpha, beta, gamma);
    let mut warnings = Vec::new();
    for (k, z) in charts.iter().enumerate() {
        if z.im <= 0.0 {
            warnings.push(format!(
                "chart coordinate z{} = {} is not in the upper half plane",
                k + 1,
                z
            ));
        }
    }

    Ok(MarkedBGroup {
        signature: Signature::new(0, vec![Nu::Finite(2); 6]),
        generators: vec![
            ("D1".to_string(), d1),
            ("B1".to_string(), b1),
            ("B2".to_string(), b2),
            ("B3".to_string(), b3),
            ("D4".to_string(), d4),
        ],
        relations: vec![
            Word::new(vec![("D1", 2)]),
            Word::new(vec![("D4", 2)]),
        ],
        accidental_parabolics: vec!["B1".to_string(), "B2".to_string(), "B3".to_string()],
        coordinates: vec![alpha, beta, gamma],
        partition_label: "(0,6;2^6) three-curve chain".to_string(),
        warnings,
        anchors: Vec::new(),
    })
}

/// The chart `(z₁, z₂, z₃) = (α, 1+β, 1−γ/β²)` of the `(0,6)` family.
pub fn zero_six_charts(alpha: Cplx, beta: Cplx, gamma: Cplx) -> [Cplx; 3] {
    [
        alpha,
        Cplx::new(1.0, 0.0) + beta,
        Cplx::new(1.0, 0.0) - gamma / (beta * beta),
    ]
}

/// The conjugator `E(z) = −z + 1 + α` between the `(0,6)` family and the
/// hyperelliptic extension; an involution in PSL(2,ℂ).
pub fn conjugator_e(alpha: Cplx) -> MoebiusMap {
    MoebiusMap::new(
        Cplx::new(-1.0, 0.0),
        Cplx::new(1.0, 0.0) + alpha,
        Cplx::new(0.0, 0.0),
        Cplx::new(1.0, 0.0),
    )
    .expect("E is invertible")
}

/// The Patterson isomorphism `T(2,0) ≅ T(0,6;2⁶)` in horocyclic
/// coordinates: `(τ₁,τ₂,τ₃) ↦ (τ₁/2, 1+τ₂, 1+τ₃/2)`.
pub fn patterson_map(t1: Cplx, t2: Cplx, t3: Cplx) -> [Cplx; 3] {
    let one = Cplx::new(1.0, 0.0);
    [t1 / 2.0, one + t2, one + t3 / 2.0]
}

/// `T(1,1;∞) ≅ T(0,4;∞,2,2,2)`: `τ₁ ↦ τ₁/2`.
pub fn corollary_map_11(t1: Cplx) -> Cplx {
    t1 / 2.0
}

/// `T(1,2;∞,∞) ≅ T(0,5;∞,2,2,2,2)`: `(τ₁,τ₂) ↦ (τ₁/2, 1+τ₂)`.
pub fn corollary_map_12(t1: Cplx, t2: Cplx) -> (Cplx, Cplx) {
    (t1 / 2.0, Cplx::new(1.0, 0.0) + t2)
}

/// The substitutions expressing the `(0,6)` coordinates in terms of the
/// genus-2 ones: `α = τ₁/2`, `β = τ₂`, `γ = −τ₂²τ₃/2`.
pub fn zero_six_coordinates_from_taus(t1: Cplx, t2: Cplx, t3: Cplx) -> [Cplx; 3] {
    [t1 / 2.0, t2, -t2 * t2 * t3 / 2.0]
}

/// One matched generator pair in the conjugation verification.
#[derive(Debug, Clone)]
pub struct GeneratorMatch {
    pub f_name: String,
    pub target_name: String,
    pub residual: f64,
    /// Whether the match used the inverse of the target (the marking
    /// conventions leave each identification defined up to inversion).
    pub inverted: bool,
}

/// Full numeric verification of the conjugation systems behind the
/// Patterson isomorphism at one coordinate triple.
#[derive(Debug, Clone)]
pub struct PattersonReport {
    pub taus: [Cplx; 3],
    pub alpha_beta_gamma: [Cplx; 3],
    pub z_image: [Cplx; 3],
    pub matches: Vec<GeneratorMatch>,
    pub chart_residual: f64,
    pub tol: f64,
}

impl PattersonReport {
    pub fn all_matched(&self) -> bool {
        self.chart_residual <= self.tol && self.matches.iter().all(|m| m.residual <= self.tol)
    }
}

/// Builds the extension and the `(0,6)` family with the substituted
/// coordinates, conjugates every `F`-generator by `E(z) = −z+1+α`, and
/// matches it against the corresponding extension generator up to
/// elementwise inversion.
pub fn patterson_verification(t1: Cplx, t2: Cplx, t3: Cplx, tol: f64) -> Result<PattersonReport> {
    let ext = extended_genus2_group(t1, t2, t3)?;
    let [alpha, beta, gamma] = zero_six_coordinates_from_taus(t1, t2, t3);
    let f = zero_six_group(alpha, beta, gamma)?;
    let e = conjugator_e(alpha);

    let pairing = [
        ("D1", "C1A2h"),
        ("B1", "A1inv"),
        ("B2", "A2h"),
        ("B3", "A3inv"),
        ("D4", "C3A2hinv"),
    ];
    let mut matches = Vec::new();
    for (f_name, t_name) in pairing {
        let fg = f.generator(f_name).expect("F generator");
        let tg = ext.generator(t_name).expect("extension generator");
        let conj = fg.conjugate_by(&e);
        let d_direct = conj.psl_dist(tg);
        let d_inv = conj.psl_dist(&tg.inverse());
        let (residual, inverted) = if d_direct <= d_inv {
            (d_direct, false)
        } else {
            (d_inv, true)
        };
        matches.push(GeneratorMatch {
            f_name: f_name.to_string(),
            target_name: t_name.to_string(),
            residual,
            inverted,
        });
    }

    let charts = zero_six_charts(alpha, beta, gamma);
    let z_image = patterson_map(t1, t2, t3);
    let chart_residual = (charts[2] - z_image[2]).norm();

    Ok(PattersonReport {
        taus: [t1, t2, t3],
        alpha_beta_gamma: [alpha, beta, gamma],
        z_image,
        matches,
        chart_residual,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::check_relations;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn grid() -> Vec<[Cplx; 3]> {
        let mut pts = Vec::new();
        for a in 2..=6 {
            for b in 2..=6 {
                for g in 2..=6 {
                    pts.push([c(0.0, a as f64), c(0.0, b as f64), c(0.0, g as f64)]);
                }
            }
        }
        pts
    }

    #[test]
    fn a2_is_the_fixed_commutator() {
        for t1 in [c(0.0, 4.0), c(1.0, 2.0), c(-0.5, 3.3)] {
            let g = genus2_group(t1, c(0.0, 4.0), c(0.0, 4.0)).unwrap();
            let a2 = g.generator("A2").unwrap();
            assert!(a2.psl_eq(&MoebiusMap::from_reals(1.0, -2.0, 2.0, -3.0).unwrap(), 1e-10));
        }
    }

    #[test]
    fn half_twist_squares_to_a2() {
        let g = genus2_group(c(0.0, 4.0), c(0.0, 4.0), c(0.0, 4.0)).unwrap();
        let a2 = g.generator("A2").unwrap();
        let half = a2.parabolic_sqrt().unwrap();
        assert!(half.psl_eq(&MoebiusMap::from_reals(0.0, 1.0, -1.0, 2.0).unwrap(), 1e-12));
        assert!(half.compose(&half).psl_eq(a2, 1e-12));
    }

    #[test]
    fn relations_hold_on_grid() {
        for taus in grid() {
            let g = genus2_group(taus[0], taus[1], taus[2]).unwrap();
            let report = check_relations(&g, 1e-8).unwrap();
            assert!(report.all_passed(), "{:?} at {:?}", report, taus);
        }
    }

    #[test]
    fn reconstructed_c3_has_unit_determinant() {
        for taus in grid().into_iter().step_by(7) {
            let g = genus2_group(taus[0], taus[1], taus[2]).unwrap();
            let c3 = g.generator("C3").unwrap();
            assert!((c3.det() - c(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn extension_displays_and_order2_words() {
        let (t1, t2, t3) = (c(0.0, 4.0), c(0.0, 4.0), c(0.0, 4.0));
        let g = extended_genus2_group(t1, t2, t3).unwrap();
        // C1·A2^{1/2} = i[[-1, 2+τ₁],[0,1]]
        let want = MoebiusMap::new(
            -Cplx::i(),
            Cplx::i() * (c(2.0, 0.0) + t1),
            c(0.0, 0.0),
            Cplx::i(),
        )
        .unwrap();
        assert!(g.generator("C1A2h").unwrap().psl_eq(&want, 1e-12));

        let table = g.generator_table();
        for w in extended_order2_words() {
            let m = w.evaluate(&table).unwrap();
            assert!(
                m.trace().norm() < 1e-9,
                "word {} has trace {}",
                w,
                m.trace()
            );
        }
        assert!(check_relations(&g, 1e-8).unwrap().all_passed());
        // A2h is parabolic and squares to A2
        let a2h = g.generator("A2h").unwrap();
        let base = genus2_group(t1, t2, t3).unwrap();
        assert!(a2h
            .compose(a2h)
            .psl_eq(base.generator("A2").unwrap(), 1e-12));
    }

    #[test]
    fn extension_order2_words_trace_zero_on_grid() {
        for taus in grid() {
            let g = extended_genus2_group(taus[0], taus[1], taus[2]).unwrap();
            let table = g.generator_table();
            for w in extended_order2_words() {
                let m = w.evaluate(&table).unwrap();
                assert!(m.trace().norm() <= 1e-8, "{} at {:?}", w, taus);
            }
        }
    }

    #[test]
    fn misprinted_c3_breaks_the_surface_relation() {
        // the historically printed C₃ drops the square on τ₂ in three
        // entries; with it in place of the reconstructed matrix, the
        // surface relation fails loudly
        let (t1, t2, t3) = (c(0.0, 4.0), c(0.0, 4.0), c(0.0, 4.0));
        let mut g = genus2_group(t1, t2, t3).unwrap();
        let i = Cplx::i();
        let one = Cplx::new(1.0, 0.0);
        let misprint = MoebiusMap::new(
            i * (t3 * t2 * t2 + 2.0 * (one - t3) * t2 + t3 - 2.0 * one),
            i * (-t3 * t2 + (3.0 * t3 - 2.0 * one) * t2 - 2.0 * t3 + 3.0 * one),
            i * (t3 * t2 + (2.0 * one - t3) * t2 - one),
            i * (-t3 * t2 - 2.0 * (one - t3) * t2 + 2.0 * one),
        )
        .unwrap();
        for (name, m) in g.generators.iter_mut() {
            if name == "C3" {
                *m = misprint;
            }
        }
        let report = check_relations(&g, 1e-6).unwrap();
        let surface = &report.entries[1];
        assert_eq!(surface.status, crate::verify::CheckStatus::Fail);
        assert!(surface.residual > 1e-2, "residual {}", surface.residual);
    }

    #[test]
    fn zero_six_element_types() {
        let (a, b, g) = (c(0.0, 2.0), c(0.0, 3.0), c(0.0, 18.0));
        let f = zero_six_group(a, b, g).unwrap();
        for name in ["D1", "D4"] {
            let m = f.generator(name).unwrap();
            assert!(m.trace().norm() < 1e-10, "{}", name);
            assert!(m.compose(m).is_identity(1e-10));
        }
        for name in ["B1", "B2", "B3"] {
            let m = f.generator(name).unwrap();
            assert!((m.trace_sq() - 4.0).norm() < 1e-10, "{}", name);
            assert!((m.det() - c(1.0, 0.0)).norm() < 1e-10);
        }
        assert!(zero_six_group(a, c(0.0, 0.0), g).is_err());
    }

    #[test]
    fn conjugator_e_is_an_involution() {
        let alpha = c(0.3, 1.2);
        let e = conjugator_e(alpha);
        assert!(e.compose(&e).is_identity(1e-12));
        let img = e.apply(ExtComplex::finite(0.0, 0.0));
        assert!(img.chordal(&ExtComplex::Finite(c(1.0, 0.0) + alpha)) < 1e-12);
    }

    #[test]
    fn e_conjugates_b2_to_the_half_twist() {
        // independent of the coordinates
        for t1 in [c(0.0, 4.0), c(1.0, 3.0)] {
            let alpha = t1 / 2.0;
            let f = zero_six_group(alpha, c(0.0, 4.0), c(0.0, 32.0)).unwrap();
            let e = conjugator_e(alpha);
            let conj = f.generator("B2").unwrap().conjugate_by(&e);
            let half = MoebiusMap::from_reals(0.0, 1.0, -1.0, 2.0).unwrap();
            assert!(conj.psl_eq(&half, 1e-10) || conj.psl_eq(&half.inverse(), 1e-10));
        }
    }

    #[test]
    fn patterson_map_values_and_structure() {
        let img = patterson_map(c(0.0, 2.0), c(0.0, 2.0), c(0.0, 2.0));
        assert!((img[0] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((img[1] - c(1.0, 2.0)).norm() < 1e-15);
        assert!((img[2] - c(1.0, 1.0)).norm() < 1e-15);
        // half-plane preserving in each coordinate
        for z in img {
            assert!(z.im > 0.0);
        }
        // corollary maps restrict it
        assert!((corollary_map_11(c(0.0, 2.0)) - c(0.0, 1.0)).norm() < 1e-15);
        let (u, v) = corollary_map_12(c(0.0, 2.0), c(0.0, 3.0));
        assert!((u - c(0.0, 1.0)).norm() < 1e-15);
        assert!((v - c(1.0, 3.0)).norm() < 1e-15);
    }

    #[test]
    fn chart_identity_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t2 = c(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..4.0));
            let t3 = c(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..4.0));
            let [_, beta, gamma] = zero_six_coordinates_from_taus(c(0.0, 1.0), t2, t3);
            let z3 = Cplx::new(1.0, 0.0) - gamma / (beta * beta);
            assert!((z3 - (Cplx::new(1.0, 0.0) + t3 / 2.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugation_systems_on_grid() {
        for taus in grid() {
            let report = patterson_verification(taus[0], taus[1], taus[2], 1e-8).unwrap();
            assert!(report.all_matched(), "{:?}", report);
        }
    }

    #[test]
    fn hyperelliptic_lift_normalizes_the_group() {
        // A₂^{1/2} conjugates each generator into a short word of the
        // group: brute-force word search up to length 5.
        let (t1, t2, t3) = (c(0.0, 4.0), c(0.0, 4.0), c(0.0, 4.0));
        let g = genus2_group(t1, t2, t3).unwrap();
        let a2h = g.generator("A2").unwrap().parabolic_sqrt().unwrap();
        let gens: Vec<(String, MoebiusMap)> = ["A1", "C1", "A3", "C3"]
            .iter()
            .map(|n| (n.to_string(), *g.generator(n).unwrap()))
            .collect();

        let mut words: Vec<(Vec<(usize, i64)>, MoebiusMap)> = vec![(vec![], MoebiusMap::identity())];
        let mut all = Vec::new();
        for _ in 0..5 {
            let mut next = Vec::new();
            for (w, m) in &words {
                for (gi, (_, gm)) in gens.iter().enumerate() {
                    for s in [1i64, -1] {
                        if let Some(&(li, ls)) = w.last() {
                            if li == gi && ls == -s {
                                continue;
                            }
                        }
                        let mut w2 = w.clone();
                        w2.push((gi, s));
                        let m2 = m.compose(&if s == 1 { *gm } else { gm.inverse() });
                        next.push((w2, m2));
                    }
                }
            }
            all.extend(next.iter().cloned());
            words = next;
        }
        // commutation with A2 comes first
        let a2 = g.generator("A2").unwrap();
        assert!(a2h
            .compose(a2)
            .psl_eq(&a2.compose(&a2h), 1e-10));
        for (name, gm) in &gens {
            let target = a2h.compose(gm).compose(&a2h.inverse());
            let hit = all.iter().find(|(_, m)| m.psl_eq(&target, 1e-8));
            assert!(hit.is_some(), "no word of length ≤ 5 matches A2h·{}·A2h⁻¹", name);
        }
    }
}
