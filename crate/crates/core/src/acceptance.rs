//! The acceptance suite: eleven criteria, each a list of named checks.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{divide_form, form_square_root, FieldSpec, GfElem, MPoly, ScalarK, TriForm, UPoly, XYZ};
use crate::families::{build_family, invariant, is_strange, FamilyParams, Tag};
use crate::fibres::{
    closed_form_singular_point, delta_invariant, delta_of_germ, parameter_grid, scan, singular_locus, specialize_fibre,
    Bounds, FibreClass, Fibration, PlaneCurveFq, TangentType, UV,
};
use crate::isomorphisms::{apply_iso, check_iso, iso_maps, random_witness, IsoWitness};
use crate::resolution::{covering_check, covering_check_with, dynkin_type, resolve_pencil, PencilSpec, ResolutionReport};
use crate::rng::{self, Rng64};
use crate::tower::{
    invert_model_map, is_nonhyperelliptic, raw_model_params, to_quartic_model, validate_presentation, verify_breve_relation,
    TowerKind, TowerPresentation,
};

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement being reproduced.
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, anchor: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), anchor: anchor.into(), pass, detail: detail.into() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, anchor: &str, got: T, want: T) -> Self {
        let pass = got == want;
        let detail = if pass { format!("{got:?}") } else { format!("got {got:?}, expected {want:?}") };
        Check::new(name, anchor, pass, detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
    pub budget_ms: Option<u128>,
}

impl CriterionResult {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.budget_ms.map_or(true, |b| self.elapsed_ms < b)
    }

    /// One line: id, verdict, title and the failing checks.
    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let mut s = format!(
            "criterion {:>2}: {} {} ({} checks, {} ms)",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len(),
            self.elapsed_ms
        );
        if let Some(b) = self.budget_ms.filter(|b| self.elapsed_ms >= *b) {
            s.push_str(&format!(" over budget of {b} ms"));
        }
        if !failed.is_empty() {
            s.push_str(&format!(" failing: {}", failed.join(", ")));
        }
        s
    }
}

pub const CRITERIA: [(u32, &str, Option<u64>); 11] = [
    (1, "resolution counts", Some(10)),
    (2, "fibre divisors", None),
    (3, "intersection data", None),
    (4, "Dynkin and Kodaira labels", None),
    (5, "covering identity", None),
    (6, "isomorphism suite", Some(60)),
    (7, "degenerate fibres", None),
    (8, "generic fibres", None),
    (9, "delta oracle", None),
    (10, "kernel oracles", Some(30)),
    (11, "tower consistency", None),
];

/// Runs one criterion; `None` for an unknown id.
pub fn run_criterion(id: u32, seed: u64) -> Option<CriterionResult> {
    let (_, title, budget) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let checks = match id {
        1 => resolution_counts(),
        2 => fibre_divisors(),
        3 => intersection_data(),
        4 => dynkin_labels(),
        5 => covering(),
        6 => isomorphism_suite(seed),
        7 => degenerate_fibres(),
        8 => generic_fibres(seed),
        9 => delta_oracle(),
        10 => kernel_oracles(seed),
        _ => tower_consistency(seed),
    };
    Some(CriterionResult {
        id,
        title,
        checks,
        elapsed_ms: start.elapsed().as_millis(),
        budget_ms: budget.map(|s| Duration::from_secs(s).as_millis()),
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, seed)).collect()
}

fn fail(name: &str, anchor: &str, e: impl std::fmt::Display) -> Vec<Check> {
    vec![Check::new(name, anchor, false, e.to_string())]
}

fn pencils() -> Result<(ResolutionReport, ResolutionReport), crate::resolution::ResolutionError> {
    Ok((resolve_pencil(&PencilSpec::quartic())?, resolve_pencil(&PencilSpec::cubic())?))
}

fn f2() -> FieldSpec {
    FieldSpec::binary()
}

fn member(t0: u64, t1: u64) -> [GfElem; 2] {
    [f2().elem(t0), f2().elem(t1)]
}

fn resolution_counts() -> Vec<Check> {
    const A: &str = "chains of 4 and 12 blowups for the quartic pencil, 2 and 7 for the cubic pencil";
    let (q, c) = match pencils() {
        Ok(r) => r,
        Err(e) => return fail("resolve", A, e),
    };
    let pts = |r: &ResolutionReport| r.base_points.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    vec![
        Check::eq("quartic base points", A, pts(&q), vec!["(1:0:0)".into(), "(0:0:1)".into()]),
        Check::eq("quartic counts", A, q.counts.clone(), vec![4, 12]),
        Check::eq("cubic base points", A, pts(&c), vec!["(1:0:0)".into(), "(0:1:0)".into()]),
        Check::eq("cubic counts", A, c.counts.clone(), vec![2, 7]),
    ]
}

fn fibre_divisors() -> Vec<Check> {
    let (q, c) = match pencils() {
        Ok(r) => r,
        Err(e) => return fail("resolve", "fibre divisors", e),
    };
    let m = |d: Vec<(String, u32)>| d.into_iter().map(|(_, k)| k).collect::<Vec<_>>();
    vec![
        Check::eq("quartic (1:0)", "W + 2E1 + 2E2 + E3", m(q.fibre_divisor(member(1, 0))), vec![1, 2, 2, 1]),
        Check::eq(
            "quartic (0:1)",
            "3X + Z + 2F1 + 4F2 + 6F3 + 8F4 + 7F5 + ... + F11",
            m(q.fibre_divisor(member(0, 1))),
            vec![3, 1, 2, 4, 6, 8, 7, 6, 5, 4, 3, 2, 1],
        ),
        Check::eq(
            "cubic (0:1)",
            "2X' + Z' + 2F'1 + 3F'2 + 4F'3 + 3F'4 + 2F'5 + F'6",
            m(c.fibre_divisor(member(0, 1))),
            vec![2, 1, 2, 3, 4, 3, 2, 1],
        ),
    ]
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|k| format!("{prefix}{k}")).collect()
}

fn intersection_data() -> Vec<Check> {
    const M: &str = "intersection matrix of W, E1, E2, E3";
    let (q, c) = match pencils() {
        Ok(r) => r,
        Err(e) => return fail("resolve", M, e),
    };
    let dot = |r: &ResolutionReport, a: &str, b: &str| r.intersection(a, b).ok();
    let mut out = vec![
        Check::eq(
            "matrix",
            M,
            q.intersection_matrix(&["W", "E1", "E2", "E3"]).ok(),
            Some(vec![vec![-6, 2, 1, 0], vec![2, -2, 1, 0], vec![1, 1, -2, 1], vec![0, 0, 1, -2]]),
        ),
        Check::eq("E.E and F.F", "E.E = F.F = -1", [dot(&q, "E4", "E4"), dot(&q, "F12", "F12")], [Some(-1); 2]),
        Check::eq("X.X and Z.Z", "X.X = Z.Z = -3", [dot(&q, "X", "X"), dot(&q, "Z", "Z")], [Some(-3); 2]),
        Check::eq("W.F and Z.E", "W.F = Z.E = 1", [dot(&q, "W", "F12"), dot(&q, "Z", "E4")], [Some(1); 2]),
    ];
    let chains = [(&q, [names("E", 1..=3), names("F", 1..=11)].concat()), (&c, [names("E'", 1..=1), names("F'", 1..=6)].concat())];
    for (r, chain) in chains {
        let bad: Vec<&String> = chain.iter().filter(|n| dot(r, n, n) != Some(-2)).collect();
        out.push(Check::new(
            format!("{} chain curves", r.pencil),
            "non-horizontal exceptional curves have self-intersection -2",
            bad.is_empty(),
            format!("{} curves, deviating: {bad:?}", chain.len()),
        ));
    }
    for r in [&q, &c] {
        for t in [member(1, 0), member(0, 1)] {
            let d = r.fibre_divisor(t);
            let dots = r.divisor_dot_components(&d).unwrap_or_default();
            let ok = dots.len() == d.len() && dots.iter().all(|(_, v)| *v == 0);
            out.push(Check::new(
                format!("{} ({}:{}) orthogonality", r.pencil, t[0], t[1]),
                "a fibre meets each of its components with intersection number zero",
                ok,
                format!("{dots:?}"),
            ));
        }
        out.push(Check::eq(format!("{} general member", r.pencil), "general members have self-intersection zero", dot(r, "G", "G"), Some(0)));
    }
    out
}

fn dynkin_labels() -> Vec<Check> {
    const A: &str = "rational double points of type A3 and A11; fibres of type Ã1* and Ẽ7";
    let (q, c) = match pencils() {
        Ok(r) => r,
        Err(e) => return fail("resolve", A, e),
    };
    let label = |r: &ResolutionReport, ns: &[String]| {
        let ns: Vec<&str> = ns.iter().map(String::as_str).collect();
        dynkin_type(r, &ns).map(|l| l.to_string()).ok()
    };
    let special = c.fibre_divisor(member(0, 1)).into_iter().map(|(n, _)| n).collect::<Vec<_>>();
    let kodaira = |r: &ResolutionReport, ns: &[String]| {
        let ns: Vec<&str> = ns.iter().map(String::as_str).collect();
        dynkin_type(r, &ns).ok().and_then(|l| l.kodaira())
    };
    let w_e = vec!["W'".to_string(), "E'1".to_string()];
    vec![
        Check::eq("E1..E3", A, label(&q, &names("E", 1..=3)), Some("A3".into())),
        Check::eq("F1..F11", A, label(&q, &names("F", 1..=11)), Some("A11".into())),
        Check::eq("W', E'1", A, label(&c, &w_e), Some("Ã1*".into())),
        Check::eq("W'.E'1", "W' and E'1 meet with intersection number 2", (c.intersection("W'", "E'1").ok(), c.meeting_points("W'", "E'1").ok()), (Some(2), Some(1))),
        Check::eq("cubic (0:1)", A, label(&c, &special), Some("Ẽ7".into())),
        Check::eq("Kodaira symbols", A, (kodaira(&c, &w_e), kodaira(&c, &special)), (Some("III".into()), Some("III*".into()))),
    ]
}

fn covering() -> Vec<Check> {
    const A: &str = "(x:y:z) -> (x^2:y^2:xz) composed with the cubic pencil map";
    let r = match covering_check() {
        Ok(r) => r,
        Err(e) => return fail("identity", A, e),
    };
    let cover = |s: &str| r.curves.iter().find(|c| c.source == s).map(|c| (c.target.clone(), c.degree, c.inseparable));
    let id = [0, 1, 2].map(|i| MPoly::var(f2(), XYZ, i));
    vec![
        Check::eq("common factor", A, r.common_factor.clone(), "x^2".into()),
        Check::eq("Z onto Z'", "Z, W map onto Z', W' by inseparable morphisms of degree two", cover("Z"), Some(("Z'".into(), 2, true))),
        Check::eq("W onto W'", "Z, W map onto Z', W' by inseparable morphisms of degree two", cover("W"), Some(("W'".into(), 2, true))),
        Check::new("identity control", A, covering_check_with(&id).is_err(), "the identity map is rejected"),
    ]
}

fn random_params(r: &mut Rng64, tag: Tag, f: FieldSpec) -> FamilyParams {
    loop {
        let v: [ScalarK; 4] = std::array::from_fn(|_| rng::scalar(r, f, 2));
        let mut p = FamilyParams::new(tag, v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
        if tag == Tag::IV {
            p.d = ScalarK::zero(f);
        }
        if p.validate().is_ok() {
            return p;
        }
    }
}

fn isomorphism_suite(seed: u64) -> Vec<Check> {
    const A: &str = "explicit isomorphisms between models of one family";
    let mut out = Vec::new();
    for m in [1, 2] {
        let f = FieldSpec::smallest(m).expect("small field");
        for tag in [Tag::III, Tag::IV, Tag::V] {
            let mut r = rng::stream(seed, &format!("iso-{m}-{tag}"));
            let (mut verified, mut closed, mut preserved) = (0, 0, 0);
            let mut first_error = String::new();
            for _ in 0..100 {
                let p = random_params(&mut r, tag, f);
                let model = build_family(&p).expect("validated");
                let w = random_witness(&mut r, &p);
                match apply_iso(&model, &w) {
                    Ok(t) => {
                        closed += 1;
                        verified += check_iso(&model, &t.params, &w).is_ok() as usize;
                        preserved += (invariant(&t.params) == invariant(&p)) as usize;
                    }
                    Err(e) if first_error.is_empty() => first_error = e.to_string(),
                    Err(_) => {}
                }
            }
            let field = format!("GF({})", f.size());
            out.push(Check::new(format!("{tag} over {field}(t) closure"), A, closed == 100, format!("{closed}/100 {first_error}")));
            out.push(Check::new(format!("{tag} over {field}(t) verify"), A, verified == 100, format!("{verified}/100")));
            if tag != Tag::IV {
                out.push(Check::new(format!("{tag} over {field}(t) invariant"), A, preserved == 100, format!("{preserved}/100")));
            }
            let p = random_params(&mut r, tag, f);
            let model = build_family(&p).expect("validated");
            let id = IsoWitness::identity(tag, f);
            let fixed = apply_iso(&model, &id).map(|t| t == model).unwrap_or(false);
            let maps = iso_maps(&id, &p).map(|m| m.is_identity()).unwrap_or(false);
            out.push(Check::new(format!("{tag} over {field}(t) identity"), A, fixed && maps, format!("fixed {fixed}, identity maps {maps}")));
        }
    }
    out
}

/// Parameters on which the member is not an integral quartic.
fn expected_degenerate(fib: Fibration, p: &[GfElem]) -> bool {
    match fib {
        Fibration::Pi3 => p[1].is_zero() || p[2].is_zero(),
        Fibration::Pi4 => false,
        Fibration::Pi5 => p[3].is_zero() || (p[0] * p[1]).is_zero(),
        Fibration::QuarticPencil | Fibration::CubicPencil => p[0].is_zero(),
    }
}

fn expected_multiplicity(fib: Fibration, p: &[GfElem]) -> Option<u32> {
    let one = |x: GfElem| x.is_one();
    match fib {
        Fibration::Pi3 => Some(if one(p[1] * p[2].pow(3)) { 3 } else { 2 }),
        Fibration::Pi4 => Some(if p[1].is_zero() { 3 } else { 2 }),
        Fibration::Pi5 => Some(if one(p[0] * p[1] * p[1] * p[3] * p[3]) { 3 } else { 2 }),
        _ => None,
    }
}

fn show(p: &[GfElem]) -> String {
    format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn degenerate_fibres() -> Vec<Check> {
    let mut out = Vec::new();
    let cases: [(Fibration, &str, &str, fn(&[GfElem]) -> bool, fn(&FibreClass) -> bool); 4] = [
        (Fibration::Pi3, "b = 0", "a conic plus a double line", |p| p[1].is_zero(), |c| c.variant() == "ConicPlusDoubleLine"),
        (Fibration::Pi5, "d = 0", "a double conic", |p| p[3].is_zero(), |c| c.variant() == "DoubleConic"),
        (Fibration::QuarticPencil, "(0:1)", "a line plus a triple line", |p| p[0].is_zero(), |c| c.variant() == "LinePlusTripleLine"),
        (Fibration::Pi4, "b = 0", "an integral quartic with a triple point", |p| p[1].is_zero(), |c| {
            matches!(c, FibreClass::IntegralQuartic { multiplicity: 3, .. })
        }),
    ];
    for m in [1, 2] {
        let f = FieldSpec::smallest(m).expect("small field");
        for (fib, slice, anchor, on_slice, ok) in &cases {
            let pts: Vec<Vec<GfElem>> = parameter_grid(*fib, f).into_iter().filter(|p| on_slice(p)).collect();
            let entries = scan(*fib, f, &pts, &Bounds::default());
            let bad: Vec<String> = entries
                .iter()
                .filter(|e| !e.class.as_ref().map(|c| ok(c)).unwrap_or(false))
                .map(|e| format!("{} -> {:?}", show(&e.params), e.class.as_ref().map(|c| c.variant())))
                .collect();
            out.push(Check::new(
                format!("{fib} {slice} over GF({})", f.size()),
                anchor,
                bad.is_empty() && !entries.is_empty(),
                format!("{} members; {}", entries.len(), bad.first().cloned().unwrap_or_default()),
            ));
        }
    }
    out
}

fn expected_tangent(fib: Fibration) -> TangentType {
    match fib {
        Fibration::Pi3 | Fibration::Pi5 => TangentType::Bitangent22,
        _ => TangentType::Hyperflex4,
    }
}

#[derive(Default)]
struct Tally {
    integral: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            self.failures.push(what());
        }
    }
}

fn fibre_suite(fib: Fibration, f: FieldSpec, pts: &[Vec<GfElem>]) -> Check {
    let mut t = Tally::default();
    for e in scan(fib, f, pts, &Bounds::default()) {
        let p = &e.params;
        let class = match e.class {
            Ok(c) => c,
            Err(err) => {
                t.failures.push(format!("{}: {err}", show(p)));
                continue;
            }
        };
        let FibreClass::IntegralQuartic { sing_point, multiplicity, delta, tangent_type, .. } = class else {
            t.check(expected_degenerate(fib, p), || format!("{} unexpectedly {}", show(p), class.variant()));
            continue;
        };
        t.integral += 1;
        t.check(!expected_degenerate(fib, p), || format!("{} unexpectedly integral", show(p)));
        let closed = closed_form_singular_point(fib, p);
        t.check(sing_point.degree() == 1 && closed.map(|c| crate::fibres::PointFq::rational(c)) == Some(sing_point), || {
            format!("{}: singular point {sing_point}", show(p))
        });
        if let Some(m) = expected_multiplicity(fib, p) {
            t.check(m == multiplicity, || format!("{}: multiplicity {multiplicity}", show(p)));
        }
        t.check(delta == 3, || format!("{}: delta {delta}", show(p)));
        let strange = specialize_fibre(fib, f, p).ok().and_then(|c| is_strange(&c.form).ok());
        t.check(strange == Some(true), || format!("{}: not strange", show(p)));
        t.check(tangent_type == Some(expected_tangent(fib)), || format!("{}: tangent {tangent_type:?}", show(p)));
    }
    Check::new(
        format!("{fib} over GF({})", f.size()),
        "unique singular point at the closed-form location, delta 3, strange, uniform tangent contact",
        t.failures.is_empty() && t.integral > 0,
        format!("{} members, {} integral; {}", pts.len(), t.integral, t.failures.first().cloned().unwrap_or_default()),
    )
}

fn generic_fibres(seed: u64) -> Vec<Check> {
    let fibs = [Fibration::Pi3, Fibration::Pi4, Fibration::Pi5, Fibration::QuarticPencil];
    let f4 = FieldSpec::smallest(2).expect("GF(4)");
    let f16 = FieldSpec::smallest(4).expect("GF(16)");
    let mut out: Vec<Check> = fibs.iter().map(|&fib| fibre_suite(fib, f4, &parameter_grid(fib, f4))).collect();
    for fib in fibs {
        let pts = if fib.is_pencil() {
            parameter_grid(fib, f16)
        } else {
            let mut r = rng::stream(seed, &format!("fibres-{fib}"));
            (0..128).map(|_| (0..fib.arity()).map(|_| rng::gf(&mut r, f16)).collect()).collect()
        };
        out.push(fibre_suite(fib, f16, &pts));
    }
    out
}

fn delta_oracle() -> Vec<Check> {
    const A: &str = "delta 3 at the quartic's singular point and 1 at the cusp of the cubic";
    let germ = |terms: &[([u16; 3], u64)]| {
        let t: Vec<([u16; 3], GfElem)> = terms.iter().map(|(m, c)| (*m, f2().elem(*c))).collect();
        MPoly::from_terms(f2(), UV, &t)
    };
    let d = |g: MPoly<GfElem>| delta_of_germ(&g).map(|r| r.delta).ok();
    let mut out = vec![
        Check::eq("y^4 + z^3", A, d(germ(&[([4, 0, 0], 1), ([0, 3, 0], 1)])), Some(3)),
        Check::eq("y^2 + z^3", A, d(germ(&[([2, 0, 0], 1), ([0, 3, 0], 1)])), Some(1)),
    ];
    for m in [1, 2] {
        let f = FieldSpec::smallest(m).expect("small field");
        for (fib, want) in [(Fibration::CubicPencil, 1), (Fibration::QuarticPencil, 3)] {
            let deltas: Vec<Option<u32>> = parameter_grid(fib, f)
                .into_iter()
                .filter(|p| !p[0].is_zero())
                .map(|p| {
                    let c: PlaneCurveFq = specialize_fibre(fib, f, &p).ok()?;
                    let locus = singular_locus(&c, 2).ok()?;
                    let [s] = locus.as_slice() else { return None };
                    delta_invariant(&c, s).ok().map(|r| r.delta)
                })
                .collect();
            let ok = deltas.iter().all(|d| *d == Some(want));
            out.push(Check::new(format!("{fib} members over GF({})", f.size()), A, ok, format!("{deltas:?}")));
        }
    }
    out
}

fn random_form(r: &mut Rng64, f: FieldSpec, deg: u16) -> TriForm {
    loop {
        let mut terms = Vec::new();
        for i in 0..=deg {
            for j in 0..=deg - i {
                terms.push(([i, j, deg - i - j], rng::scalar(r, f, 2)));
            }
        }
        let g = MPoly::from_terms(f, XYZ, &terms);
        if !g.is_zero() {
            return g;
        }
    }
}

fn kernel_oracles(seed: u64) -> Vec<Check> {
    let f = f2();
    let polys = |deg: usize| (0u64..1 << (deg + 1)).map(move |b| UPoly::from_bits(f, (0..=deg).map(|i| (b >> i) & 1).collect()));
    let frac = |n: UPoly, d: UPoly| ScalarK::new(n, d).ok();
    let squares: HashSet<String> = polys(1)
        .flat_map(|n| polys(1).filter_map(move |d| frac(n.clone(), d)))
        .map(|y| y.square().to_string())
        .collect();
    let mut mismatches = Vec::new();
    let mut total = 0;
    for n in polys(3) {
        for d in polys(3) {
            if let Some(x) = frac(n.clone(), d) {
                total += 1;
                if x.is_square() != squares.contains(&x.to_string()) {
                    mismatches.push(x.to_string());
                }
            }
        }
    }
    let mut out = vec![Check::new(
        "is_square against squaring",
        "squares in F2(t) of numerator and denominator degree at most 3",
        mismatches.is_empty(),
        format!("{total} fractions, {} squares; {mismatches:?}", squares.len()),
    )];
    let mut r = rng::stream(seed, "kernel-forms");
    let (mut roots, mut quotients, mut converse) = (0, 0, 0);
    for _ in 0..500 {
        let deg = 1 + (rng::gf(&mut r, f).bits() as u16);
        let a = random_form(&mut r, f, deg);
        let b = random_form(&mut r, f, 1);
        roots += (form_square_root(&a.pow(2)).as_ref() == Some(&a)) as usize;
        quotients += (divide_form(&a.mul(&b), &b) == Ok(Some(a.clone()))) as usize;
        converse += form_square_root(&a).map_or(true, |s| s.pow(2) == a) as usize;
    }
    let a = "reconstruction identities on seeded random forms";
    out.push(Check::new("square root of a square", a, roots == 500, format!("{roots}/500")));
    out.push(Check::new("exact quotient", a, quotients == 500, format!("{quotients}/500")));
    out.push(Check::new("square root squares back", a, converse == 500, format!("{converse}/500")));
    out
}

fn random_presentation(r: &mut Rng64, kind: TowerKind, f: FieldSpec, nonhyperelliptic: bool) -> TowerPresentation {
    loop {
        let consts = kind.constant_names().iter().map(|_| rng::scalar(r, f, 2)).collect();
        let Ok(p) = TowerPresentation::new(kind, consts) else { continue };
        if validate_presentation(&p).is_ok() && (!nonhyperelliptic || is_nonhyperelliptic(&p)) {
            return p;
        }
    }
}

fn tower_consistency(seed: u64) -> Vec<Check> {
    let f = f2();
    let mut r = rng::stream(seed, "tower");
    let mut out = Vec::new();

    let ok = (0..50)
        .filter(|_| {
            let q = random_params(&mut r, Tag::III, f);
            invert_model_map(&q).and_then(|p| to_quartic_model(&p)).as_ref() == Ok(&q)
        })
        .count();
    out.push(Check::new("model map after inverse", "the parameter map is a bijection", ok == 50, format!("{ok}/50")));

    let ok = (0..50)
        .filter(|_| {
            let mut p = random_presentation(&mut r, TowerKind::A, f, true);
            p = crate::tower::normalize(&p).expect("B1 nonzero");
            to_quartic_model(&p).and_then(|q| invert_model_map(&q)).as_ref() == Ok(&p)
        })
        .count();
    out.push(Check::new("inverse after model map", "the parameter map is a bijection", ok == 50, format!("{ok}/50")));

    for kind in [TowerKind::A, TowerKind::B, TowerKind::C] {
        let ok = (0..50).filter(|_| verify_breve_relation(&random_presentation(&mut r, kind, f, true))).count();
        out.push(Check::new(format!("{kind:?} relation"), "the relation satisfied by the breve generators", ok == 50, format!("{ok}/50")));
        let ok = (0..50)
            .filter(|_| {
                let p = random_presentation(&mut r, kind, f, false);
                let builds = raw_model_params(&p).ok().map_or(false, |q| build_family(&q).is_ok());
                is_nonhyperelliptic(&p) == builds
            })
            .count();
        out.push(Check::new(
            format!("{kind:?} hyperellipticity"),
            "non-hyperelliptic exactly when the derived model is a valid quartic",
            ok == 50,
            format!("{ok}/50"),
        ));
    }
    out
}
