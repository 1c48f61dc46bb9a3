//! Acceptance gate: one PASS/FAIL line per criterion. All comparisons are
//! exact; runtime limits are pinned per criterion. The process exits nonzero
//! when a criterion fails that is not listed in `KNOWN_RED`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rackcoh::complex::{Cochain, Coefficients, Complex, Variant};
use rackcoh::cup::{ring_structure, CupContext};
use rackcoh::homlin;
use rackcoh::rack::{Builtin, Rack, RackError};
use rackcoh::scalar::{Ring, Scalar};
use rackcoh::verify::{self, graded_commutator, homotopy_defect, Suite, SuiteConfig};
use rackcoh::word::{words, WordEngine};

/// Criteria expected to stay red; see the decisions ledger.
const KNOWN_RED: &[usize] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome { pass, detail: detail.into() }
    }
}

fn builtin(spec: &str) -> Rack {
    Rack::builtin(&spec.parse::<Builtin>().unwrap()).unwrap()
}

const ALL_BUILTINS: &[&str] = &[
    "trivial:1",
    "trivial:2",
    "trivial:3",
    "trivial:4",
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "cyclic:3",
    "cyclic:4",
    "conjugation:S3",
];

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn run_suite(suite: Suite, spec: &str, cfg: &SuiteConfig) -> (bool, usize, Option<String>) {
    let rep = verify::run(suite, &builtin(spec), spec, cfg).unwrap();
    let checks = rep.checks.iter().map(|c| c.checks).sum();
    let witness = rep.witness().map(|(n, w)| format!("{spec} {n}: {w}"));
    (rep.passed, checks, witness)
}

fn witness_is_genuine(t: &[Vec<usize>], err: &RackError) -> bool {
    let n = t.len();
    match *err {
        RackError::R1Violation { y } => {
            let mut col: Vec<usize> = (0..n).map(|x| t[x][y]).collect();
            col.sort_unstable();
            col.dedup();
            col.len() != n
        }
        RackError::R2Violation { x, y, z } => t[t[x][y]][z] != t[t[x][z]][t[y][z]],
        _ => false,
    }
}

fn axiom_gate() -> Outcome {
    let start = Instant::now();
    let mut mutations = 0;
    let mut rejected = 0;
    for spec in ALL_BUILTINS {
        let r = builtin(spec);
        let table = r.table();
        if !common::is_rack_table(&table) {
            return Outcome::new(false, format!("{spec} fails the reference axiom check"));
        }
        let quandle = (0..r.size()).all(|x| table[x][x] == x);
        if r.is_quandle() != quandle {
            return Outcome::new(false, format!("{spec}: is_quandle disagrees"));
        }
        for x in 0..r.size() {
            for y in 0..r.size() {
                if r.size() == 1 {
                    continue;
                }
                let t = common::mutate(&table, x, y);
                mutations += 1;
                match (Rack::from_table(&t), common::is_rack_table(&t)) {
                    (Ok(_), true) => {}
                    (Err(e), false) if witness_is_genuine(&t, &e) => rejected += 1,
                    (res, expect) => {
                        return Outcome::new(false, format!("{spec} mutated at ({x},{y}): got {res:?}, rack = {expect}"))
                    }
                }
            }
        }
    }
    if builtin("cyclic:4").is_quandle() {
        return Outcome::new(false, "cyclic:4 reported as a quandle");
    }
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    Outcome::new(
        fast,
        format!("{} builtins pass R1/R2; {rejected}/{mutations} mutations rejected with genuine witnesses; {time}", ALL_BUILTINS.len()),
    )
}

fn square_zero() -> Outcome {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let mut total = 0;
    let mut small_elapsed = Duration::ZERO;
    for spec in ALL_BUILTINS {
        let (ok, checks, witness) = run_suite(Suite::SquareZero, spec, &cfg);
        if !ok {
            return Outcome::new(false, witness.unwrap_or_default());
        }
        total += checks;
        if builtin(spec).size() <= 4 {
            small_elapsed = start.elapsed();
        }
    }
    let (fast, time) = within(small_elapsed, Duration::from_secs(30));
    Outcome::new(
        fast,
        format!("∂_n∂_(n+1) = 0 for n+1 ≤ 4: {total} matrix products over all builtins, both variants, trivial/singleton/Y=X; |X| ≤ 4 in {time}"),
    )
}

fn word_identities() -> Outcome {
    let cfg = SuiteConfig::default();
    let mut total = 0;
    for spec in ["trivial:1", "trivial:2", "trivial:3", "dihedral:3", "cyclic:3"] {
        let (ok, checks, witness) = run_suite(Suite::Words, spec, &cfg);
        if !ok {
            return Outcome::new(false, witness.unwrap_or_default());
        }
        total += checks;
    }
    Outcome::new(true, format!("d² = 0, Leibniz, Δ multiplicative, coassociative, coderivation: {total} checks, 0 failures"))
}

fn coproduct_formula() -> Outcome {
    if words(3, 4).len() != 81 {
        return Outcome::new(false, "word enumeration at length 4 over R_3 is not 81");
    }
    let cfg = SuiteConfig::default();
    let mut total = 0;
    for spec in ["dihedral:3", "dihedral:4"] {
        let (ok, checks, witness) = run_suite(Suite::Coproduct, spec, &cfg);
        if !ok {
            return Outcome::new(false, witness.unwrap_or_default());
        }
        total += checks;
    }
    Outcome::new(true, format!("closed formula = multiplicative Δ term by term on {total} monomials (e-words ≤ 4 over R_3, R_4)"))
}

fn homotopy() -> Outcome {
    let cfg = SuiteConfig::default();
    let mut literal = 0;
    let mut reversed = 0;
    let mut words_checked = 0;
    let mut first_literal_failure = None;
    for spec in ["trivial:1", "trivial:2", "trivial:3", "dihedral:3", "cyclic:3"] {
        let eng = WordEngine::new(builtin(spec));
        for len in 1..=3 {
            for w in words(eng.rack().size(), len) {
                let u = eng.element(eng.monomial(&[], &w).unwrap());
                let defect = homotopy_defect(&eng, &u).unwrap();
                let delta = eng.coproduct(&u).unwrap();
                let flipped = eng.flipped_coproduct(&u).unwrap();
                words_checked += 1;
                if defect == &flipped - &delta {
                    literal += 1;
                } else if first_literal_failure.is_none() {
                    first_literal_failure = Some(format!("{spec} e{w:?}"));
                }
                if defect == &delta - &flipped {
                    reversed += 1;
                }
            }
        }
    }
    let mut rest = 0;
    for spec in ["trivial:1", "trivial:2", "trivial:3", "dihedral:3", "cyclic:3"] {
        let (ok, checks, witness) = run_suite(Suite::Homotopy, spec, &cfg);
        if !ok {
            return Outcome::new(false, witness.unwrap_or_default());
        }
        rest += checks;
    }
    Outcome::new(
        literal == words_checked,
        format!(
            "dh+hd = τΔ−Δ holds on {literal}/{words_checked} e-words (first failure {}); dh+hd = Δ−τΔ holds on {reversed}/{words_checked}; splittings and closed form: {rest} checks pass",
            first_literal_failure.unwrap_or_else(|| "none".into())
        ),
    )
}

fn value(c: &Complex, f: &Cochain, t: &[usize]) -> Scalar {
    c.evaluate(f, t)[0].clone()
}

/// Checks the degree-one and degree-two product formulas on every pair of
/// indicator cochains.
fn low_degree_formulas(spec: &str) -> Result<usize, String> {
    let r = builtin(spec);
    let n = r.size();
    let op = |a: usize, b: usize| r.op(a, b);
    let ctx = CupContext::new(r.clone(), Variant::Rack, Ring::Rationals).unwrap();
    let c = ctx.target();
    let mut checks = 0;
    for p in [1usize, 2] {
        let dim = c.dim(p).unwrap();
        let basis: Vec<Cochain> = (0..dim).map(|k| CupContext::indicator(c, Ring::Rationals, p, k).unwrap()).collect();
        for f in &basis {
            for g in &basis {
                let fg = ctx.cup(f, g).unwrap();
                for t in common::tuples(n, 2 * p, false) {
                    let expect = if p == 1 {
                        let (x, y) = (t[0], t[1]);
                        -(value(c, f, &[x]) * value(c, g, &[y])) + value(c, f, &[y]) * value(c, g, &[op(x, y)])
                    } else {
                        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
                        let term = |a: &[usize], b: &[usize]| value(c, f, a) * value(c, g, b);
                        term(&[x, y], &[z, w]) + term(&[z, w], &[op(op(x, z), w), op(op(y, z), w)])
                            - term(&[x, z], &[op(y, z), w])
                            + term(&[x, w], &[op(y, w), op(z, w)])
                            + term(&[y, z], &[op(op(x, y), z), w])
                            - term(&[y, w], &[op(op(x, y), w), op(z, w)])
                    };
                    checks += 1;
                    if value(c, &fg, &t) != expect {
                        return Err(format!("{spec} p=q={p} at {t:?}"));
                    }
                }
            }
        }
    }
    Ok(checks)
}

fn cup_laws() -> Outcome {
    let cfg = SuiteConfig { cup_total: 5, ..SuiteConfig::default() };
    let mut total = 0;
    for spec in ["dihedral:3", "trivial:2"] {
        let rep = verify::run(Suite::Cup, &builtin(spec), spec, &cfg).unwrap();
        for name in ["(f⌣g)⌣h = f⌣(g⌣h)", "D(f⌣g) = Df⌣g + (−1)^p f⌣Dg, D = (−1)^|f| d*"] {
            let Some(check) = rep.checks.iter().find(|c| c.name == name) else {
                return Outcome::new(false, format!("{spec}: suite has no check {name}"));
            };
            if check.failures > 0 || check.checks == 0 {
                return Outcome::new(false, format!("{spec} {name}: {:?}", check.witness));
            }
            total += check.checks;
        }
        if !rep.passed {
            return Outcome::new(false, rep.witness().map(|(n, w)| format!("{spec} {n}: {w}")).unwrap_or_default());
        }
        match low_degree_formulas(spec) {
            Ok(n) => total += n,
            Err(e) => return Outcome::new(false, format!("closed formula differs: {e}")),
        }
    }
    Outcome::new(
        true,
        format!("associativity p+q+r ≤ 5, super-derivation p+q ≤ 3, p=q=1 and p=q=2 expansions on R_3 and trivial:2: {total} checks"),
    )
}

fn cocycle_basis(c: &Complex, p: usize) -> Vec<Cochain> {
    let d = c.coboundary_matrix(p).unwrap().to_ring(Ring::Rationals);
    homlin::kernel_basis(&d)
        .unwrap()
        .into_iter()
        .map(|values| Cochain { degree: p, ring: Ring::Rationals, values })
        .collect()
}

fn graded_commutativity() -> Outcome {
    let mut pairs = 0;
    for spec in ["dihedral:3", "dihedral:4"] {
        let ctx = CupContext::new(builtin(spec), Variant::Rack, Ring::Rationals).unwrap();
        let c = ctx.target();
        let bases: Vec<Vec<Cochain>> = (0..=2).map(|p| cocycle_basis(c, p)).collect();
        for p in 0..=2 {
            for q in 0..=2 {
                for f in &bases[p] {
                    for g in &bases[q] {
                        let commutator = graded_commutator(&ctx, f, g).unwrap();
                        // H has degree p+q−1, so degree zero needs no homotopy.
                        if p + q == 0 {
                            if !commutator.is_zero() {
                                return Outcome::new(false, format!("{spec}: 0-cochains do not commute"));
                            }
                            pairs += 1;
                            continue;
                        }
                        let h = ctx.homotopy_cochain(f, g).unwrap();
                        if c.apply_coboundary(&h).unwrap() != commutator {
                            return Outcome::new(false, format!("{spec}: d*H ≠ commutator in degrees ({p},{q})"));
                        }
                        pairs += 1;
                    }
                }
            }
        }
        let rs = ring_structure(&ctx, 4, 6).unwrap();
        if let Some(w) = rs.graded_commutativity_witness() {
            return Outcome::new(false, format!("{spec}: structure constants not graded commutative at {w:?}"));
        }
    }
    for spec in ["trivial:1", "trivial:2", "trivial:3"] {
        let ctx = CupContext::new(builtin(spec), Variant::Rack, Ring::Rationals).unwrap();
        let c = ctx.target();
        for p in 0..=2 {
            for q in 0..=2 {
                for a in 0..c.dim(p).unwrap() {
                    for b in 0..c.dim(q).unwrap() {
                        let f = CupContext::indicator(c, Ring::Rationals, p, a).unwrap();
                        let g = CupContext::indicator(c, Ring::Rationals, q, b).unwrap();
                        if !graded_commutator(&ctx, &f, &g).unwrap().is_zero() {
                            return Outcome::new(false, format!("{spec}: cochain-level commutator nonzero in ({p},{q})"));
                        }
                    }
                }
            }
        }
    }
    let ctx = CupContext::new(builtin("dihedral:3"), Variant::Rack, Ring::Rationals).unwrap();
    let c = ctx.target();
    let f = CupContext::indicator(c, Ring::Rationals, 1, 0).unwrap();
    let g = CupContext::indicator(c, Ring::Rationals, 1, 1).unwrap();
    let at = value(c, &graded_commutator(&ctx, &f, &g).unwrap(), &[0, 1]);
    if at != Scalar::from_integer(BigInt::from(-1)) {
        return Outcome::new(false, format!("R_3 indicator commutator at (0,1) is {at}, expected -1"));
    }
    Outcome::new(
        true,
        format!("d*H(f,g) = f⌣g − (−1)^pq g⌣f on {pairs} cocycle pairs (R_3, R_4, p,q ≤ 2); ring constants graded commutative; trivial racks commute at cochain level; R_3 commutator at (0,1) = -1"),
    )
}

fn regression() -> Outcome {
    let start = Instant::now();
    let trivial = |c: &Complex, n| c.homology(n, Ring::Integers).unwrap();
    for m in 1..=4usize {
        let c = Complex::new(Rack::trivial(m), Variant::Rack, Coefficients::Trivial).unwrap();
        for n in 1..=4u32 {
            let h = trivial(&c, n as usize);
            if h.betti != m.pow(n) || !h.torsion.is_empty() {
                return Outcome::new(false, format!("trivial:{m} H_{n} = {h}"));
            }
        }
    }
    let r3 = Complex::new(Rack::dihedral(3), Variant::Rack, Coefficients::Trivial).unwrap();
    let bettis: Vec<usize> = (1..=3).map(|n| r3.homology(n, Ring::Rationals).unwrap().betti).collect();
    if bettis != [1, 1, 1] {
        return Outcome::new(false, format!("R_3 betti {bettis:?}"));
    }
    for (spec, orbits) in [("dihedral:3", 1), ("dihedral:4", 2), ("trivial:3", 3)] {
        let c = Complex::new(builtin(spec), Variant::Rack, Coefficients::Trivial).unwrap();
        let h1 = c.cohomology(1, Ring::Rationals).unwrap().betti;
        if h1 != orbits {
            return Outcome::new(false, format!("{spec}: dim H^1 = {h1}, expected {orbits}"));
        }
    }
    let q3 = Complex::new(Rack::dihedral(3), Variant::Quandle, Coefficients::Trivial).unwrap();
    let h3 = q3.homology(3, Ring::Integers).unwrap();
    if h3.torsion != [BigInt::from(3)] {
        return Outcome::new(false, format!("H_3^Q(R_3; Z) = {h3}"));
    }
    // The same values from the dense reference implementation.
    let r = Rack::dihedral(3);
    let dense = |n: usize, quandle: bool| common::to_big(&common::dense_boundary(&r, None, n, quandle));
    for n in 1..=3 {
        let (betti, _) = common::homology(&dense(n, false), &dense(n + 1, false), r3.dim(n).unwrap());
        if betti != 1 {
            return Outcome::new(false, format!("reference disagrees: R_3 betti_{n} = {betti}"));
        }
    }
    let (_, torsion) = common::homology(&dense(3, true), &dense(4, true), q3.dim(3).unwrap());
    if torsion != [BigInt::from(3)] {
        return Outcome::new(false, format!("reference disagrees: quandle torsion {torsion:?}"));
    }
    let (fast, time) = within(start.elapsed(), Duration::from_secs(300));
    Outcome::new(
        fast,
        format!("trivial:m H_n = Z^(m^n) (m,n ≤ 4); R_3 betti (1,1,1); dim H^1 = 1/2/3; H_3^Q(R_3;Z) torsion (3); confirmed by dense reference; {time}"),
    )
}

fn quandle_quotient() -> Outcome {
    let cfg = SuiteConfig { max_degree: 4, ..SuiteConfig::default() };
    let mut total = 0;
    for spec in ["dihedral:3", "conjugation:S3"] {
        let (ok, checks, witness) = run_suite(Suite::Quandle, spec, &cfg);
        if !ok {
            return Outcome::new(false, witness.unwrap_or_default());
        }
        total += checks;
        let r = builtin(spec);
        let c = Complex::new(r.clone(), Variant::Quandle, Coefficients::Trivial).unwrap();
        for n in 1..=4 {
            let ours: Vec<Vec<i64>> = c
                .boundary_matrix(n)
                .unwrap()
                .matrix
                .to_dense()
                .iter()
                .map(|row| row.iter().map(|v| i64::try_from(v.to_integer()).unwrap()).collect())
                .collect();
            if ours != common::dense_boundary(&r, None, n, true) {
                return Outcome::new(false, format!("{spec}: quandle ∂_{n} differs from the reference"));
            }
            total += 1;
        }
    }
    Outcome::new(true, format!("π commutes with d, Δ and h; quandle ∂ = induced map for n ≤ 4 on R_3 and conjugation:S3: {total} checks"))
}

fn rackcoh(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_rackcoh")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> Outcome {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let file = dir.join("acceptance-r4.txt");
    std::fs::write(&file, "rack 4\n0 2 0 2\n3 1 3 1\n2 0 2 0\n1 3 1 3\n").unwrap();
    let file = file.to_string_lossy().into_owned();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--json", "homology", "--builtin", "dihedral:3", "--ring", "Z", "--max-degree", "4"],
        vec!["--json", "homology", "--builtin", "dihedral:3", "--quandle", "--max-degree", "4", "--coefficients", "self"],
        vec!["--json", "homology", "--rack", &file, "--ring", "Fp:3", "--max-degree", "3", "--cohomology"],
        vec!["--json", "ring", "--builtin", "dihedral:4", "--max-degree", "3"],
        vec!["--json", "ring", "--builtin", "trivial:2", "--max-degree", "3", "--ring", "Fp:5"],
    ];
    for args in &cases {
        let first = rackcoh(args);
        for _ in 0..2 {
            if rackcoh(args) != first {
                return Outcome::new(false, format!("output differs between runs: {args:?}"));
            }
        }
    }
    Outcome::new(true, format!("{} homology/ring configurations, 3 runs each, byte-identical JSON", cases.len()))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "axiom gate", axiom_gate),
        (2, "boundary squares to zero", square_zero),
        (3, "word-engine identities", word_identities),
        (4, "closed coproduct formula", coproduct_formula),
        (5, "homotopy identities", homotopy),
        (6, "cup product laws", cup_laws),
        (7, "graded commutativity", graded_commutativity),
        (8, "regression values", regression),
        (9, "quandle quotient", quandle_quotient),
        (10, "determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut unexpected = Vec::new();
    for (n, name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        let note = if !outcome.pass && KNOWN_RED.contains(&n) { " [known red]" } else { "" };
        println!("criterion {n:>2} {status} {name}{note}: {} [{:.2}s]", outcome.detail, start.elapsed().as_secs_f64());
        if !outcome.pass && !KNOWN_RED.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
