//! Cross-cutting verification: relation checking, necessary discreteness
//! probes (Shimizu–Leutbecher and Jørgensen), canonicality audits, and
//! limit-set sampling.
//!
//! The probes only ever certify failure: a passing probe means "no
//! obstruction found", never discreteness.

use crate::error::Error;
use crate::marked::MarkedBGroup;
use crate::moebius::{Classification, Cplx, ExtComplex, MoebiusMap};
use crate::Result;

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Borderline,
    Uncertified,
}

/// One named check with its measured residual.
#[derive(Debug, Clone)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    pub residual: f64,
    pub detail: String,
}

impl CheckEntry {
    pub fn new(name: &str, status: CheckStatus, residual: f64, detail: String) -> Self {
        CheckEntry {
            name: name.to_string(),
            status,
            residual: residual.max(0.0),
            detail,
        }
    }

    pub fn passed(name: &str, residual: f64, detail: String) -> Self {
        Self::new(name, CheckStatus::Pass, residual, detail)
    }

    pub fn failed(name: &str, residual: f64, detail: String) -> Self {
        Self::new(name, CheckStatus::Fail, residual, detail)
    }

    pub fn graded(name: &str, pass: bool, residual: f64, detail: String) -> Self {
        Self::new(
            name,
            if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            residual,
            detail,
        )
    }
}

/// A list of check results.
#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == CheckStatus::Pass)
    }

    pub fn any_failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == CheckStatus::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Evaluates every relation word of the group; the residual is the
/// entrywise distance of the evaluated word to ±identity.
pub fn check_relations(group: &MarkedBGroup, tol: f64) -> Result<VerificationReport> {
    let table = group.generator_table();
    let mut report = VerificationReport::new();
    for (i, word) in group.relations.iter().enumerate() {
        let m = word.evaluate(&table)?;
        let residual = m.psl_dist(&MoebiusMap::identity());
        report.push(CheckEntry::graded(
            &format!("relation[{}] {}", i, word),
            residual <= tol,
            residual,
            "word should evaluate to the identity".to_string(),
        ));
    }
    Ok(report)
}

/// Classifies each declared accidental parabolic.
pub fn check_accidental_parabolics(group: &MarkedBGroup, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new();
    for name in &group.accidental_parabolics {
        match group.generator(name) {
            Some(m) => {
                let residual = (m.trace_sq() - 4.0).norm();
                report.push(CheckEntry::graded(
                    &format!("parabolic[{}]", name),
                    residual <= tol,
                    residual,
                    "accidental parabolic must have trace² = 4".to_string(),
                ));
            }
            None => report.push(CheckEntry::failed(
                &format!("parabolic[{}]", name),
                1.0,
                "name not in the generator list".to_string(),
            )),
        }
    }
    report
}

/// Shimizu–Leutbecher probe: with `A` conjugated to `z ↦ z+1` and
/// `B = [[a,b],[c,d]]`, a discrete group needs `c = 0` or `|c| ≥ 1`.
/// Fail certifies non-discreteness; pass only reports no obstruction.
/// The criterion is evaluated after normalization, so it is
/// conjugation-invariant.
pub fn shimizu_probe(a: &MoebiusMap, b: &MoebiusMap) -> Result<VerificationReport> {
    match a.classify_coarse() {
        Classification::Parabolic => {}
        other => return Err(Error::NotParabolic(format!("{:?}", other))),
    }
    let fix = a.fixed_points()?;
    // move the fixed point to ∞
    let to_inf = match fix[0] {
        ExtComplex::Infinity => MoebiusMap::identity(),
        ExtComplex::Finite(p) => MoebiusMap::new(
            Cplx::new(0.0, 0.0),
            -Cplx::new(1.0, 0.0),
            Cplx::new(1.0, 0.0),
            -p,
        )?,
    };
    let a1 = a.conjugate_by(&to_inf);
    // a1 = z + t; rescale to z + 1
    let (pa, pb, _, pd) = a1.entries();
    let t = pb / pa; // representative with a = d = ±1
    debug_assert!((pa - pd).norm() < 1e-9);
    let scale = MoebiusMap::new(
        Cplx::new(1.0, 0.0) / t,
        Cplx::new(0.0, 0.0),
        Cplx::new(0.0, 0.0),
        Cplx::new(1.0, 0.0),
    )?;
    let norm = scale.compose(&to_inf);
    let b_n = b.conjugate_by(&norm);
    let c_abs = {
        let (_, _, cc, _) = b_n.entries();
        cc.norm()
    };
    let mut report = VerificationReport::new();
    let tol = 1e-9;
    let entry = if c_abs <= tol {
        CheckEntry::passed(
            "shimizu",
            0.0,
            "c = 0: B fixes the parabolic fixed point; no obstruction found".to_string(),
        )
    } else if c_abs >= 1.0 - tol && c_abs <= 1.0 + tol {
        CheckEntry::new(
            "shimizu",
            CheckStatus::Borderline,
            (c_abs - 1.0).abs(),
            format!("|c| = {} sits on the Shimizu boundary", c_abs),
        )
    } else if c_abs > 1.0 {
        CheckEntry::passed(
            "shimizu",
            0.0,
            format!("|c| = {} ≥ 1; no obstruction found", c_abs),
        )
    } else {
        CheckEntry::failed(
            "shimizu",
            1.0 - c_abs,
            format!("0 < |c| = {} < 1: the pair generates a non-discrete group", c_abs),
        )
    };
    report.push(entry);
    Ok(report)
}

/// Jørgensen probe: a discrete non-elementary two-generator group
/// satisfies `|tr²A − 4| + |tr[A,B] − 2| ≥ 1`. Fail means non-discrete
/// or elementary; pass only reports no obstruction.
pub fn jorgensen_probe(a: &MoebiusMap, b: &MoebiusMap) -> VerificationReport {
    let comm_trace = crate::moebius::commutator_trace(a, b);
    let value = (a.trace_sq() - 4.0).norm() + (comm_trace - 2.0).norm();
    let mut report = VerificationReport::new();
    let tol = 1e-9;
    let entry = if value >= 1.0 + tol {
        CheckEntry::passed(
            "jorgensen",
            0.0,
            format!("|tr²A−4| + |tr[A,B]−2| = {} ≥ 1; no obstruction found", value),
        )
    } else if value >= 1.0 - tol {
        CheckEntry::new(
            "jorgensen",
            CheckStatus::Borderline,
            (value - 1.0).abs(),
            format!("value {} sits on the Jørgensen boundary", value),
        )
    } else {
        CheckEntry::failed(
            "jorgensen",
            1.0 - value,
            format!(
                "|tr²A−4| + |tr[A,B]−2| = {} < 1: non-discrete or elementary",
                value
            ),
        )
    };
    report.push(entry);
    report
}

/// A deduplicated sample of limit points with its provenance metadata.
#[derive(Debug, Clone)]
pub struct PointCloud {
    pub points: Vec<Cplx>,
    pub group_label: String,
    pub max_word_length: usize,
    pub generator_count: usize,
    /// true when the enumeration was cut off by the point cap
    pub truncated: bool,
}

/// Dedup resolution for sampled points.
const DEDUP_RESOLUTION: f64 = 1e-6;

/// Default cap on sampled points.
pub const DEFAULT_POINT_CAP: usize = 200_000;

/// Samples the limit set by collecting fixed points of reduced words up
/// to `max_len` over the generators and their inverses, enumerated in
/// shortlex order with immediate-inverse cancellation only. Fixed points
/// of finite-order (elliptic) words are omitted: they are not limit
/// points. Points are deduplicated at resolution 1e-6 and capped at
/// `cap`; ∞ is dropped.
pub fn limit_set_sample(group: &MarkedBGroup, max_len: usize, cap: usize) -> PointCloud {
    let gens: Vec<MoebiusMap> = group.generators.iter().map(|(_, m)| *m).collect();
    let mut letters: Vec<MoebiusMap> = Vec::new();
    for g in &gens {
        letters.push(*g);
        letters.push(g.inverse());
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut points: Vec<Cplx> = Vec::new();
    let mut truncated = false;

    let mut visit = |m: &MoebiusMap, points: &mut Vec<Cplx>, truncated: &mut bool| -> bool {
        match m.classify_coarse() {
            Classification::Parabolic | Classification::Loxodromic => {}
            _ => return true,
        }
        if let Ok(fps) = m.fixed_points() {
            for fp in fps {
                if let ExtComplex::Finite(z) = fp {
                    let key = (
                        (z.re / DEDUP_RESOLUTION).round() as i64,
                        (z.im / DEDUP_RESOLUTION).round() as i64,
                    );
                    if seen.insert(key) {
                        if points.len() >= cap {
                            *truncated = true;
                            return false;
                        }
                        points.push(z);
                    }
                }
            }
        }
        true
    };

    // breadth-first levels: reduced words of exact length L, in the
    // lexicographic order induced by the letter indices
    let mut level: Vec<(MoebiusMap, usize)> = Vec::new();
    'outer: for length in 1..=max_len {
        if letters.is_empty() {
            break;
        }
        let mut next = Vec::new();
        if length == 1 {
            for (li, letter) in letters.iter().enumerate() {
                if !visit(letter, &mut points, &mut truncated) {
                    break 'outer;
                }
                next.push((*letter, li));
            }
        } else {
            for (m, last) in &level {
                for (li, letter) in letters.iter().enumerate() {
                    if li == last ^ 1 {
                        continue; // immediate-inverse cancellation
                    }
                    let word = m.compose(letter);
                    if !visit(&word, &mut points, &mut truncated) {
                        break 'outer;
                    }
                    next.push((word, li));
                }
            }
        }
        level = next;
    }

    PointCloud {
        points,
        group_label: format!("{}", group.signature),
        max_word_length: max_len,
        generator_count: gens.len(),
        truncated,
    }
}

/// Best-fit residual of a circle-or-line through the points, in the
/// inversive-distance normalization `b² + c² − 4ad = 1` of the algebraic
/// circle equation `a(x²+y²) + bx + cy + d = 0`. Small residuals mean the
/// cloud lies on one circle (or line); the 1e-3 threshold used by callers
/// is a documented heuristic.
pub fn circle_fit_residual(points: &[Cplx]) -> f64 {
    if points.len() < 4 {
        return 0.0;
    }
    // scatter matrix of (|z|², x, y, 1)
    let mut m = [[0.0f64; 4]; 4];
    for z in points {
        let w = [z.norm_sqr(), z.re, z.im, 1.0];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += w[i] * w[j];
            }
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v /= points.len() as f64;
        }
    }
    let (evals, evecs) = jacobi_eigen_4x4(m);
    // smallest eigenvalue = mean squared algebraic residual at ‖v‖ = 1
    let mut best = f64::INFINITY;
    for k in 0..4 {
        let v = evecs[k];
        let pratt = v[1] * v[1] + v[2] * v[2] - 4.0 * v[0] * v[3];
        if pratt <= 1e-14 {
            continue; // point circles and imaginary circles are not admissible
        }
        let res = (evals[k].max(0.0) / pratt).sqrt();
        best = best.min(res);
    }
    if best.is_finite() {
        best
    } else {
        f64::INFINITY
    }
}

/// Eigen decomposition of a symmetric 4×4 matrix by cyclic Jacobi
/// rotations. Returns (eigenvalues, rows of eigenvectors).
#[allow(clippy::needless_range_loop)]
fn jacobi_eigen_4x4(mut a: [[f64; 4]; 4]) -> ([f64; 4], [[f64; 4]; 4]) {
    let mut v = [[0.0; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if a[i][j].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (a[j][j] - a[i][i]) / a[i][j];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let (aik, ajk) = (a[i][k], a[j][k]);
                    a[i][k] = c * aik - s * ajk;
                    a[j][k] = s * aik + c * ajk;
                }
                for k in 0..4 {
                    let (aki, akj) = (a[k][i], a[k][j]);
                    a[k][i] = c * aki - s * akj;
                    a[k][j] = s * aki + c * akj;
                }
                for k in 0..4 {
                    let (vik, vjk) = (v[i][k], v[j][k]);
                    v[i][k] = c * vik - s * vjk;
                    v[j][k] = s * vik + c * vjk;
                }
            }
        }
    }
    ([a[0][0], a[1][1], a[2][2], a[3][3]], v)
}

/// Names of the group-level checks the verifier can run.
pub fn registered_checks() -> Vec<&'static str> {
    vec!["relations", "parabolics", "shimizu", "jorgensen"]
}

/// Runs the named checks against a marked group. `shimizu` probes every
/// (declared parabolic, other generator) pair; `jorgensen` probes every
/// unordered generator pair.
pub fn run_group_checks(
    group: &MarkedBGroup,
    checks: &[&str],
    tol: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for check in checks {
        match *check {
            "relations" => report.extend(check_relations(group, tol)?),
            "parabolics" => report.extend(check_accidental_parabolics(group, tol)),
            "shimizu" => {
                for (pn, pm) in &group.generators {
                    if pm.classify_coarse() != Classification::Parabolic {
                        continue;
                    }
                    for (on, om) in &group.generators {
                        if pn == on {
                            continue;
                        }
                        let mut sub = shimizu_probe(pm, om)?;
                        for e in sub.entries.iter_mut() {
                            e.name = format!("shimizu[{},{}]", pn, on);
                        }
                        report.extend(sub);
                    }
                }
            }
            "jorgensen" => {
                for i in 0..group.generators.len() {
                    for j in (i + 1)..group.generators.len() {
                        let (n1, m1) = &group.generators[i];
                        let (n2, m2) = &group.generators[j];
                        let mut sub = jorgensen_probe(m1, m2);
                        for e in sub.entries.iter_mut() {
                            e.name = format!("jorgensen[{},{}]", n1, n2);
                        }
                        report.extend(sub);
                    }
                }
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown check {:?} (known: {:?})",
                    other,
                    registered_checks()
                )))
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::Word;
    use crate::triangle::{canonical_generators, std_params, Nu, Signature, TriangleGroupSpec};

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn triangle_group(nu: [Nu; 3]) -> MarkedBGroup {
        let spec = TriangleGroupSpec::new(nu, std_params());
        let (a, b) = canonical_generators(&spec).unwrap();
        MarkedBGroup {
            signature: Signature::new(0, nu.to_vec()),
            generators: vec![("A".to_string(), a), ("B".to_string(), b)],
            relations: vec![],
            accidental_parabolics: vec![],
            coordinates: vec![],
            partition_label: "triangle".to_string(),
            warnings: vec![],
            anchors: vec![],
        }
    }

    #[test]
    fn empty_relation_list_passes() {
        let g = triangle_group([Nu::Infinity; 3]);
        let report = check_relations(&g, 1e-9).unwrap();
        assert!(report.entries.is_empty());
        assert!(report.all_passed());
    }

    #[test]
    fn unresolved_generator_name_errors() {
        let mut g = triangle_group([Nu::Infinity; 3]);
        g.relations.push(Word::new(vec![("nope", 1)]));
        assert!(check_relations(&g, 1e-9).is_err());
    }

    #[test]
    fn shimizu_examples() {
        // canonical (∞,3,3) pair passes
        let spec = TriangleGroupSpec::new(
            [Nu::Infinity, Nu::Finite(3), Nu::Finite(3)],
            std_params(),
        );
        let (a, b) = canonical_generators(&spec).unwrap();
        assert!(shimizu_probe(&a, &b).unwrap().all_passed());

        // |c| = 0.3 fails
        let unit = MoebiusMap::translation(c(1.0, 0.0));
        let bad = MoebiusMap::new(c(1.0, 0.0), c(0.0, 0.0), c(0.3, 0.0), c(1.0, 0.0)).unwrap();
        assert!(shimizu_probe(&unit, &bad).unwrap().any_failed());

        // identity partner passes through the c = 0 branch
        assert!(shimizu_probe(&unit, &MoebiusMap::identity())
            .unwrap()
            .all_passed());

        // non-parabolic first argument errors
        assert!(shimizu_probe(&MoebiusMap::from_reals(2.0, 1.0, 1.0, 1.0).unwrap(), &unit).is_err());
    }

    #[test]
    fn shimizu_is_conjugation_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let unit = MoebiusMap::translation(c(1.0, 0.0));
        let bad = MoebiusMap::new(c(1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        for _ in 0..50 {
            let t = MoebiusMap::new(
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            );
            let t = match t {
                Ok(t) => t,
                Err(_) => continue,
            };
            let verdict = shimizu_probe(&unit.conjugate_by(&t), &bad.conjugate_by(&t))
                .unwrap()
                .any_failed();
            assert!(verdict, "conjugation changed the Shimizu verdict");
        }
    }

    #[test]
    fn jorgensen_examples() {
        let spec = TriangleGroupSpec::new(
            [Nu::Finite(2), Nu::Finite(3), Nu::Finite(7)],
            std_params(),
        );
        let (a, b) = canonical_generators(&spec).unwrap();
        assert!(jorgensen_probe(&a, &b).all_passed());

        // a near-identity pair fails
        let eps = MoebiusMap::new(c(1.0, 0.0), c(1e-4, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(jorgensen_probe(&eps, &eps).any_failed());
    }

    #[test]
    fn probes_pass_for_all_small_canonical_pairs() {
        let vals: Vec<Nu> = (2..=12u64)
            .map(Nu::Finite)
            .chain(std::iter::once(Nu::Infinity))
            .collect();
        for &x in &vals {
            for &y in &vals {
                for &z in &vals {
                    let nu = [x, y, z];
                    let sig = Signature::new(0, nu.to_vec());
                    if sig.signature_type() != crate::triangle::SignatureType::Hyperbolic {
                        continue;
                    }
                    let spec = TriangleGroupSpec::new(nu, std_params());
                    let (a, b) = canonical_generators(&spec).unwrap();
                    assert!(
                        !jorgensen_probe(&a, &b).any_failed(),
                        "jorgensen obstruction at {:?}",
                        nu
                    );
                    if x == Nu::Infinity {
                        assert!(
                            !shimizu_probe(&a, &b).unwrap().any_failed(),
                            "shimizu obstruction at {:?}",
                            nu
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn limit_set_of_fuchsian_block_is_real() {
        let g = triangle_group([Nu::Infinity; 3]);
        let cloud = limit_set_sample(&g, 8, DEFAULT_POINT_CAP);
        assert!(cloud.points.len() > 100);
        for z in &cloud.points {
            assert!(z.im.abs() < 1e-3, "off-axis point {}", z);
        }
        assert!(circle_fit_residual(&cloud.points) < 1e-3);
    }

    #[test]
    fn limit_set_monotone_in_word_length() {
        let g = triangle_group([Nu::Infinity, Nu::Finite(3), Nu::Finite(5)]);
        let small = limit_set_sample(&g, 3, DEFAULT_POINT_CAP);
        let large = limit_set_sample(&g, 5, DEFAULT_POINT_CAP);
        assert!(large.points.len() >= small.points.len());
        let keys: std::collections::BTreeSet<(i64, i64)> = large
            .points
            .iter()
            .map(|z| ((z.re / 1e-6).round() as i64, (z.im / 1e-6).round() as i64))
            .collect();
        for z in &small.points {
            let key = ((z.re / 1e-6).round() as i64, (z.im / 1e-6).round() as i64);
            assert!(keys.contains(&key));
        }
    }

    #[test]
    fn limit_set_empty_for_identity_group() {
        let g = MarkedBGroup {
            signature: Signature::new(0, vec![]),
            generators: vec![("I".to_string(), MoebiusMap::identity())],
            relations: vec![],
            accidental_parabolics: vec![],
            coordinates: vec![],
            partition_label: "trivial".to_string(),
            warnings: vec![],
            anchors: vec![],
        };
        let cloud = limit_set_sample(&g, 6, 1000);
        assert!(cloud.points.is_empty());
    }

    #[test]
    fn limit_set_cap_truncates() {
        let g = triangle_group([Nu::Infinity; 3]);
        let cloud = limit_set_sample(&g, 8, 50);
        assert_eq!(cloud.points.len(), 50);
        assert!(cloud.truncated);
    }

    #[test]
    fn circle_fit_on_circles_lines_and_clouds() {
        // exact circle
        let circle: Vec<Cplx> = (0..200)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 200.0;
                c(0.7 + 2.0 * t.cos(), -0.3 + 2.0 * t.sin())
            })
            .collect();
        assert!(circle_fit_residual(&circle) < 1e-6);
        // exact line
        let line: Vec<Cplx> = (0..200).map(|k| c(k as f64 * 0.1 - 10.0, 0.0)).collect();
        assert!(circle_fit_residual(&line) < 1e-6);
        // genuinely planar cloud
        let cloud: Vec<Cplx> = (0..100)
            .map(|k| c((k as f64 * 0.37).sin() * 3.0, (k as f64 * 0.73).cos() * 2.0))
            .collect();
        assert!(circle_fit_residual(&cloud) > 1e-2);
    }

    #[test]
    fn genus2_limit_set_is_not_a_circle() {
        let g = crate::patterson::genus2_group(c(0.0, 4.0), c(0.0, 4.0), c(0.0, 4.0)).unwrap();
        let small = limit_set_sample(&g, 4, DEFAULT_POINT_CAP);
        let cloud = limit_set_sample(&g, 6, DEFAULT_POINT_CAP);
        assert!(cloud.points.len() > small.points.len());
        assert!(circle_fit_residual(&cloud.points) > 1e-2);
    }

    #[test]
    fn group_check_registry() {
        let g = triangle_group([Nu::Infinity; 3]);
        let report = run_group_checks(&g, &registered_checks(), 1e-9).unwrap();
        assert!(report.all_passed(), "{:?}", report);
        assert!(run_group_checks(&g, &["bogus"], 1e-9).is_err());
    }
}

