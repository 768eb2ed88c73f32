//! Reproducibility audit: one check per acceptance criterion, shared by the
//! `verify-paper` command and the acceptance test target.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::duality::{check_prop_polar, polar_dual, same_cycle, saddle_correspondence, DualityError};
use crate::equilibria::{classify, maxwell_check};
use crate::fixtures;
use crate::generator::{verify_mono_monostatic, Generator, GeneratorError};
use crate::geometry::AngleClass;
use crate::polyhedron::{FaceVector, Polyhedron, WeightedPolyhedron};
use crate::sampling::{
    random_interior_point, random_spherical_triple, random_tetrahedron, random_weighted_polyhedron, rng,
};
use crate::monostatic::{
    find_obtuse_cycles, find_obtuse_paths, monostable_weighting, monounstable_weighting, ObtuseCycle,
};
use crate::tipping::{heights_strictly_decrease, tip_path};
use crate::vertex_links::{
    admissible_pair, classify_spherical_triangle, vertex_signature, ArcClass, SphericalTriangleClass,
    ADMISSIBLE_SIGNATURES,
};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

/// Sample sizes and seed for the randomized criteria.
#[derive(Debug, Clone, Copy)]
pub struct AuditConfig {
    pub seed: u64,
    pub tetrahedra: usize,
    pub polyhedra: usize,
    pub spherical: usize,
    pub max_generated: usize,
}

impl AuditConfig {
    pub fn full(seed: u64) -> Self {
        AuditConfig { seed, tetrahedra: 10_000, polyhedra: 1000, spherical: 100_000, max_generated: 12 }
    }

    /// Reduced samples for smoke runs; the verdicts of timed criteria are
    /// not comparable with the full configuration.
    pub fn quick(seed: u64) -> Self {
        AuditConfig { seed, tetrahedra: 500, polyhedra: 50, spherical: 5000, max_generated: 8 }
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn result(id: u8, name: &'static str, passed: bool, detail: String, elapsed: Duration) -> CriterionResult {
    CriterionResult { id, name, passed, detail, elapsed_ms: ms(elapsed) }
}

/// Sorted vertex signatures `[m, n]` of a tetrahedron.
pub fn signature_multiset(t: &Polyhedron) -> Vec<(u8, u8)> {
    let mut s: Vec<(u8, u8)> = (0..4).map(|v| vertex_signature(t, v).expect("tetrahedron").pair()).collect();
    s.sort_unstable();
    s
}

/// Signature multisets that the case analysis allows for a mono-unstable
/// tetrahedron but then rules out.
pub const FORBIDDEN_CASES: [(&str, [(u8, u8); 4]); 3] = [
    ("II", [(0, 0), (1, 1), (1, 1), (2, 2)]),
    ("IV", [(0, 1), (1, 1), (1, 1), (2, 3)]),
    ("V", [(1, 1), (1, 1), (1, 1), (1, 1)]),
];

pub fn forbidden_case(sig: &[(u8, u8)]) -> Option<&'static str> {
    FORBIDDEN_CASES.iter().find(|(_, s)| s.as_slice() == sig).map(|(n, _)| *n)
}

/// Parts of the spherical triangle lemma that `c` violates, by number. Only
/// meaningful for triangles without quarter arcs or right angles.
pub fn lemma_violations(c: &SphericalTriangleClass) -> Vec<u8> {
    let mut out = Vec::new();
    let acute = c.acute_angles();
    let long = c.long_edges();
    if acute == 3 && c.short_edges() != 3 {
        out.push(1);
    }
    if acute == 1 {
        let i = c.angles.iter().position(|&a| a == AngleClass::Acute).expect("one acute angle");
        if c.short_edges() != 1 || c.edges[i] != ArcClass::Short {
            out.push(2);
        }
    }
    if long == 3 && c.obtuse_angles() != 3 {
        out.push(3);
    }
    if long == 1 {
        let i = c.edges.iter().position(|&e| e == ArcClass::Long).expect("one long edge");
        if c.obtuse_angles() != 1 || c.angles[i] != AngleClass::Obtuse {
            out.push(4);
        }
    }
    if c.short_edges() == 3 && c.obtuse_angles() > 1 {
        out.push(5);
    }
    out
}

/// Results over one seeded sample of random tetrahedra.
#[derive(Debug, Clone, Default)]
pub struct TetrahedronSurvey {
    pub samples: usize,
    pub with_path: usize,
    pub with_cycle: usize,
    pub with_both: usize,
    /// Failures of "path exists iff all four faces can be loaded".
    pub equivalence_failures: Vec<String>,
    pub monostable: Vec<WeightedPolyhedron>,
    pub monostable_u_not_2: usize,
    pub monounstable: Vec<WeightedPolyhedron>,
    pub monounstable_failures: Vec<String>,
    pub monounstable_s_not_2: usize,
    pub random_ties: usize,
    pub random_u1: usize,
    pub cycle_free_u1: usize,
    pub forbidden_with_u1: Vec<&'static str>,
    pub elapsed: Duration,
}

pub fn survey_tetrahedra(seed: u64, samples: usize) -> TetrahedronSurvey {
    let start = Instant::now();
    let mut r = rng(seed);
    let mut s = TetrahedronSurvey { samples, ..Default::default() };
    for i in 0..samples {
        let t = random_tetrahedron(&mut r);
        let path = !find_obtuse_paths(&t).expect("tetrahedron").is_empty();
        let cycles = find_obtuse_cycles(&t).expect("tetrahedron");
        let cycle = !cycles.is_empty();
        s.with_path += usize::from(path);
        s.with_cycle += usize::from(cycle);
        s.with_both += usize::from(path && cycle);

        let loaded: Vec<_> = (0..4).map(|f| monostable_weighting(&t, f)).collect();
        let all_loaded = loaded.iter().all(|w| w.is_ok());
        if path != all_loaded {
            let errs: Vec<String> = loaded.iter().filter_map(|w| w.as_ref().err().map(|e| e.to_string())).collect();
            s.equivalence_failures.push(format!("sample {i}: path={path}, errors {errs:?}"));
        }
        for w in loaded.into_iter().flatten() {
            if w.report.unstable() != 2 {
                s.monostable_u_not_2 += 1;
            }
            s.monostable.push(w.weighted);
        }

        if let Some(&c) = cycles.first() {
            match monounstable_weighting(&t, c) {
                Ok(w) => {
                    if w.report.stable() != 2 {
                        s.monounstable_s_not_2 += 1;
                    }
                    if let Some(case) = forbidden_case(&signature_multiset(&t)) {
                        s.forbidden_with_u1.push(case);
                    }
                    s.monounstable.push(w.weighted);
                }
                Err(e) => s.monounstable_failures.push(format!("sample {i}: {e}")),
            }
        }

        let o = random_interior_point(&mut r, &t);
        let wp = WeightedPolyhedron::new(t, o).expect("interior point");
        let rep = classify(&wp);
        if !rep.is_reliable() {
            s.random_ties += 1;
            continue;
        }
        if !path && rep.stable() == 1 {
            s.equivalence_failures.push(format!("sample {i}: no path but a random center is monostable"));
        }
        if rep.unstable() == 1 {
            s.random_u1 += 1;
            if !cycle {
                s.cycle_free_u1 += 1;
            }
            if let Some(case) = forbidden_case(&signature_multiset(wp.shape())) {
                s.forbidden_with_u1.push(case);
            }
        }
    }
    s.elapsed = start.elapsed();
    s
}

pub fn criterion_1() -> CriterionResult {
    let name = "monostable reference tetrahedron";
    let start = Instant::now();
    let f = fixtures::t0();
    let outcome = f.weighted().map(|wp| classify(&wp));
    let elapsed = start.elapsed();
    match outcome {
        Ok(r) => {
            let ok = r.stable_faces == [3] && r.unstable() == 2 && r.saddles() == 1 && r.is_reliable();
            let fast = elapsed < Duration::from_millis(1);
            let detail = format!(
                "S={:?} U={:?} H={} in {:.3} ms",
                r.stable_faces,
                r.unstable_vertices,
                r.saddles(),
                ms(elapsed)
            );
            result(1, name, ok && fast, detail, elapsed)
        }
        Err(e) => result(1, name, false, format!("fixture center rejected: {e}"), elapsed),
    }
}

pub fn criterion_2() -> CriterionResult {
    let start = Instant::now();
    let f = fixtures::nine_centers();
    let mut seen = BTreeMap::new();
    let mut bad = Vec::new();
    for (label, c) in &f.named_centers {
        let digits: Vec<usize> = label[1..].chars().filter_map(|d| d.to_digit(10).map(|x| x as usize)).collect();
        match WeightedPolyhedron::new(f.shape.clone(), c.clone()) {
            Ok(wp) => {
                let r = classify(&wp);
                seen.insert((r.stable(), r.unstable()), *label);
                if (r.stable(), r.unstable()) != (digits[0], digits[1]) || !r.is_reliable() || !maxwell_check(&r) {
                    bad.push(format!("{label}: S={} U={}", r.stable(), r.unstable()));
                }
            }
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let full = (2..=4).all(|s| (2..=4).all(|u| seen.contains_key(&(s, u))));
    let fast = elapsed < Duration::from_millis(10);
    let detail = format!("{} distinct (S,U); mismatches {bad:?}; {:.2} ms", seen.len(), ms(elapsed));
    result(2, "nine centers", bad.is_empty() && full && fast, detail, elapsed)
}

pub fn criterion_3() -> CriterionResult {
    let start = Instant::now();
    let f = fixtures::seed585();
    let (ok, detail) = match f.weighted() {
        Ok(wp) => {
            let r = classify(&wp);
            let fv = wp.shape().face_vector();
            let ok = r.is_reliable() && (r.stable(), r.saddles(), r.unstable()) == (1, 0, 1) && fv == FaceVector::new(5, 8, 5);
            (ok, format!("S={} H={} U={} face vector {fv}", r.stable(), r.saddles(), r.unstable()))
        }
        Err(e) => (false, e.to_string()),
    };
    result(3, "mono-monostatic seed", ok, detail, start.elapsed())
}

pub fn criterion_4(cfg: &AuditConfig) -> CriterionResult {
    let start = Instant::now();
    let mut r = rng(cfg.seed.wrapping_add(4));
    let (mut checked, mut ties, mut bad) = (0, 0, 0);
    for _ in 0..cfg.polyhedra {
        let wp = random_weighted_polyhedron(&mut r);
        let rep = classify(&wp);
        if !rep.is_reliable() {
            ties += 1;
            continue;
        }
        checked += 1;
        if !maxwell_check(&rep) {
            bad += 1;
        }
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(10);
    let detail = format!("{checked} checked, {ties} with ties, {bad} violations, {:.0} ms", ms(elapsed));
    result(4, "Maxwell relation", bad == 0 && checked > 0 && fast, detail, elapsed)
}

pub fn criterion_5(s: &TetrahedronSurvey) -> CriterionResult {
    let fast = s.elapsed < Duration::from_secs(60);
    let detail = format!(
        "{} tetrahedra, {} with an obtuse path, {} counterexamples {:?}, {:.0} ms",
        s.samples,
        s.with_path,
        s.equivalence_failures.len(),
        s.equivalence_failures.iter().take(3).collect::<Vec<_>>(),
        ms(s.elapsed)
    );
    result(5, "obtuse path iff monostable on every face", s.equivalence_failures.is_empty() && fast, detail, s.elapsed)
}

pub fn criterion_6(s: &TetrahedronSurvey) -> CriterionResult {
    let ok = s.monostable_u_not_2 == 0 && s.monounstable_s_not_2 == 0 && s.monounstable_failures.is_empty();
    let detail = format!(
        "{} monostable weightings ({} with U != 2), {} mono-unstable ({} with S != 2), {} construction failures",
        s.monostable.len(),
        s.monostable_u_not_2,
        s.monounstable.len(),
        s.monounstable_s_not_2,
        s.monounstable_failures.len()
    );
    result(6, "monostable implies two unstable, and dually", ok, detail, Duration::ZERO)
}

pub fn criterion_7(s: &TetrahedronSurvey) -> CriterionResult {
    let ok = s.with_both == 0 && s.forbidden_with_u1.is_empty();
    let detail = format!(
        "{} with both a path and a cycle; forbidden cases seen with U=1: {:?} (over {} random and {} constructed U=1 instances)",
        s.with_both,
        s.forbidden_with_u1,
        s.random_u1,
        s.monounstable.len()
    );
    result(7, "path and cycle are exclusive", ok, detail, Duration::ZERO)
}

pub fn criterion_8(s: &TetrahedronSurvey) -> CriterionResult {
    let start = Instant::now();
    let mut bad = Vec::new();
    for f in [fixtures::cycle_case_i(), fixtures::cycle_case_iii()] {
        match monounstable_weighting(&f.shape, ObtuseCycle([0, 1, 2, 3])) {
            Ok(w) if w.report.unstable_vertices == [0] => {}
            Ok(w) => bad.push(format!("{}: U={:?}", f.name, w.report.unstable_vertices)),
            Err(e) => bad.push(format!("{}: {e}", f.name)),
        }
    }
    let ok = bad.is_empty() && s.cycle_free_u1 == 0;
    let detail = format!(
        "fixture failures {bad:?}; {} cycle-free samples with U=1 under random centers",
        s.cycle_free_u1
    );
    result(8, "obtuse cycle iff mono-unstable", ok, detail, start.elapsed())
}

pub fn criterion_9(cfg: &AuditConfig) -> CriterionResult {
    let start = Instant::now();
    let mut r = rng(cfg.seed.wrapping_add(9));
    let (mut checked, mut ties, mut bad, mut involution_bad, mut saddle_match) = (0, 0, 0, 0, 0);
    for _ in 0..cfg.polyhedra {
        let wp = random_weighted_polyhedron(&mut r);
        let (d, _) = polar_dual(&wp);
        let (dd, _) = polar_dual(&d);
        let shifted = wp.shape().translated(&-wp.center());
        let same = dd.shape().vertices() == shifted.vertices()
            && dd.shape().faces().iter().zip(shifted.faces()).all(|(a, b)| same_cycle(a, b))
            && d.shape().face_vector() == wp.shape().face_vector().dual();
        if !same {
            involution_bad += 1;
        }
        match check_prop_polar(&wp) {
            Ok(true) => checked += 1,
            Ok(false) => {
                checked += 1;
                bad += 1;
            }
            Err(DualityError::DegenerateClassification) => ties += 1,
        }
        if saddle_correspondence(&wp) == Ok(true) {
            saddle_match += 1;
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{checked} checked, {ties} with ties, {bad} correspondence failures, {involution_bad} double-dual mismatches; saddles corresponded on {saddle_match}"
    );
    result(9, "polar duality", bad == 0 && involution_bad == 0 && checked > 0, detail, elapsed)
}

fn tipping_failures(wp: &WeightedPolyhedron) -> Vec<String> {
    let r = classify(wp);
    let mut out = Vec::new();
    for start in 0..wp.shape().num_faces() {
        match tip_path(wp, start) {
            Ok(p) => {
                if r.stable_faces != [p.terminal_face] {
                    out.push(format!("face {start} ended on {}", p.terminal_face));
                }
                if p.steps.len() > 3 {
                    out.push(format!("face {start} took {} steps", p.steps.len()));
                }
                if !heights_strictly_decrease(wp, &p) {
                    out.push(format!("face {start}: height did not decrease"));
                }
            }
            Err(e) => out.push(format!("face {start}: {e}")),
        }
    }
    out
}

pub fn criterion_10(s: &TetrahedronSurvey) -> CriterionResult {
    let start = Instant::now();
    let reference = match fixtures::t0().weighted() {
        Ok(wp) => tipping_failures(&wp),
        Err(e) => vec![format!("reference fixture: {e}")],
    };
    let mut generated = vec![fixtures::obtuse_path_demo().weighted().expect("demo fixture is valid")];
    generated.extend(s.monostable.iter().cloned());
    let failures: Vec<String> = generated.iter().flat_map(tipping_failures).collect();
    let ok = reference.is_empty() && failures.is_empty();
    let detail = format!(
        "reference: {reference:?}; {} generated monostable weightings, failures {:?}",
        generated.len(),
        failures.iter().take(3).collect::<Vec<_>>()
    );
    result(10, "tipping reaches the unique stable face", ok, detail, start.elapsed())
}

pub fn criterion_11(cfg: &AuditConfig) -> CriterionResult {
    let start = Instant::now();
    let mut g = Generator::new();
    let (mut built, mut bad) = (0, Vec::new());
    for f in 4..=cfg.max_generated {
        for v in 4..=cfg.max_generated {
            let fv = FaceVector::from_faces_vertices(f, v);
            if !fv.is_legal() || (f, v) == (4, 4) {
                continue;
            }
            match g.generate(f, v) {
                Ok(c) if c.weighted.shape().face_vector() == fv && verify_mono_monostatic(&c.weighted) => built += 1,
                Ok(_) => bad.push(format!("{fv}: verification failed")),
                Err(e) => bad.push(format!("{fv}: {e}")),
            }
        }
    }
    let rejects = g.generate(4, 4).err() == Some(GeneratorError::ExcludedTetrahedron);
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(60);
    let detail = format!(
        "{built} face vectors built, failures {bad:?}, (4,6,4) rejected: {rejects}, fallback bends {}, {:.0} ms",
        g.fallbacks.len(),
        ms(elapsed)
    );
    result(11, "every legal face vector but the tetrahedron's", bad.is_empty() && rejects && fast, detail, elapsed)
}

pub fn criterion_12(cfg: &AuditConfig) -> CriterionResult {
    let start = Instant::now();
    let mut r = rng(cfg.seed.wrapping_add(12));
    let (mut generic, mut special) = (0, 0);
    let mut violations: BTreeMap<u8, usize> = BTreeMap::new();
    let mut cells: BTreeMap<(u8, u8), usize> = BTreeMap::new();
    let mut classify_one = |r: &mut _| -> Option<(u8, u8)> {
        let [a, b, c] = random_spherical_triple(r);
        let class = classify_spherical_triangle(&a, &b, &c).ok()?;
        if !class.is_generic() {
            return None;
        }
        for part in lemma_violations(&class) {
            *violations.entry(part).or_default() += 1;
        }
        Some((class.long_edges() as u8, class.obtuse_angles() as u8))
    };
    for _ in 0..cfg.spherical {
        match classify_one(&mut r) {
            Some(cell) => {
                generic += 1;
                *cells.entry(cell).or_default() += 1;
            }
            None => special += 1,
        }
    }
    // Keep searching for witnesses of rare cells, without counting them
    // towards the lemma sample.
    let mut extra = 0;
    while ADMISSIBLE_SIGNATURES.iter().any(|c| !cells.contains_key(c)) && extra < 10 * cfg.spherical {
        if let Some(cell) = classify_one(&mut r) {
            *cells.entry(cell).or_default() += 1;
        }
        extra += 1;
    }
    let missing: Vec<_> = ADMISSIBLE_SIGNATURES.iter().filter(|c| !cells.contains_key(c)).collect();
    let forbidden: Vec<_> = cells.keys().filter(|(l, o)| !admissible_pair(*l, *o)).collect();
    let ok = violations.is_empty() && missing.is_empty() && forbidden.is_empty();
    let detail = format!(
        "{generic} generic triangles ({special} skipped), violations by part {violations:?}, cells {cells:?}, missing witnesses {missing:?}, extra draws {extra}"
    );
    result(12, "spherical triangle lemma and admissible table", ok, detail, start.elapsed())
}

/// Runs every criterion in order.
pub fn run_all(cfg: &AuditConfig) -> Vec<CriterionResult> {
    let survey = survey_tetrahedra(cfg.seed.wrapping_add(5), cfg.tetrahedra);
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(cfg),
        criterion_5(&survey),
        criterion_6(&survey),
        criterion_7(&survey),
        criterion_8(&survey),
        criterion_9(cfg),
        criterion_10(&survey),
        criterion_11(cfg),
        criterion_12(cfg),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_checker_flags_a_bad_class() {
        use crate::geometry::AngleClass::*;
        let bad = SphericalTriangleClass { edges: [ArcClass::Long; 3], angles: [Obtuse, Obtuse, Acute] };
        assert_eq!(lemma_violations(&bad), vec![2, 3]);
        let good = SphericalTriangleClass { edges: [ArcClass::Short; 3], angles: [Acute; 3] };
        assert!(lemma_violations(&good).is_empty());
    }

    #[test]
    fn forbidden_cases_are_recognized() {
        assert_eq!(forbidden_case(&[(1, 1); 4]), Some("V"));
        assert_eq!(forbidden_case(&[(0, 1), (1, 1), (1, 1), (1, 1)]), None);
    }

    #[test]
    fn small_survey_is_consistent() {
        let s = survey_tetrahedra(11, 300);
        assert!(s.equivalence_failures.is_empty(), "{:?}", s.equivalence_failures);
        assert_eq!(s.with_both, 0);
    }
}
