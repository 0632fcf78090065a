//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.
//! Criterion 5 contains one clause that no datum can satisfy; it is reported as
//! FAIL and the test checks that it fails for exactly that reason.

mod common;

use std::time::{Duration, Instant};

use floer_gamma::cobordism::{compose_tilde, verify_functoriality, verify_tilde_chain_map, CobordismDatum};
use floer_gamma::equivariant::{verify_triangle, TruncationWindow};
use floer_gamma::fixtures;
use floer_gamma::floer_datum::FloerDatum;
use floer_gamma::gamma::{check_cs_trichotomy, gamma, gamma_profile, h_invariant};
use floer_gamma::lattice::{
    bound_from_class, e8, gamma_upper_bounds_from_lattice, minimal_norm, signed_sum_with, ClassBound,
    LatticeData, LatticeError,
};
use floer_gamma::morse_minmax::{evaluate_class, MorseError};
use floer_gamma::novikov::{ExtendedRat, Rat};
use floer_gamma::sample::{
    random_datum, random_datum_with_shape, random_lattice, random_morse_complex, random_trivial_extension,
};
use floer_gamma::seifert::{gamma_prediction, sweep, whitehead_double_bounds, SeifertData};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const WINDOW: (usize, usize) = (6, 4);

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.check(t < limit, format!("took {t:?}, limit {limit:?}"));
    }
}

fn fin(r: Rat) -> ExtendedRat {
    ExtendedRat::Finite(r)
}

fn datum(name: &str) -> FloerDatum {
    fixtures::datum(name).expect("bundled datum")
}

fn cobordism(name: &str) -> CobordismDatum {
    CobordismDatum::from_json_str(fixtures::file(name).unwrap(), &fixtures::datum).unwrap()
}

fn window() -> TruncationWindow {
    TruncationWindow::new(WINDOW.0, WINDOW.1).unwrap()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let s3 = datum("s3");
    let sigma = datum("sigma_2_3_5");
    for k in -4..=4 {
        let want = if k > 0 { ExtendedRat::Inf } else { fin(Rat::zero()) };
        o.check(gamma(&s3, k).unwrap().value == want, format!("S3 gamma({k})"));
        let want = match k {
            1 => fin(Rat::new(1, 120)),
            2 => fin(Rat::new(49, 120)),
            k if k > 2 => ExtendedRat::Inf,
            _ => fin(Rat::zero()),
        };
        o.check(gamma(&sigma, k).unwrap().value == want, format!("Sigma gamma({k})"));
    }
    o.check(h_invariant(&s3) == Ok(0), "h(S3)");
    o.check(h_invariant(&sigma) == Ok(1), "h(Sigma)");
    o.check(h_invariant(&datum("neg_sigma_2_3_5")) == Ok(-1), "h(-Sigma)");
    let remark = datum("remark_nonpositive");
    // dα = λ^{r1} β and D2(1) = λ^{r2} β.
    let (a, b) = (remark.index_of("alpha").unwrap(), remark.index_of("beta").unwrap());
    let r1 = remark.d.get(b, a).mdeg();
    let r2 = remark.d2.get(b, 0).mdeg();
    let g0 = gamma(&remark, 0).unwrap().value;
    let expected = fin(r1.finite().unwrap() - r2.finite().unwrap());
    o.check(g0 == expected && g0 == fin(Rat::new(1, 4)), format!("remark gamma(0) = {g0}"));
    for k in (-4..=4).filter(|&k| k != 0) {
        let v = gamma(&remark, k).unwrap().value;
        o.check(v == fin(Rat::zero()) || v == ExtendedRat::Inf, format!("remark gamma({k}) = {v}"));
    }
    o.within(start, Duration::from_secs(1));
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let rep = sweep(&[3, 4], 2000);
    o.check(rep.tuples > 1000, format!("only {} tuples", rep.tuples));
    o.check(rep.family_checked > 0, "no (p, q, pqk -/+ 1) triples");
    o.check(rep.max_residual < 1e-6, format!("residual {}", rep.max_residual));
    o.check(rep.min_r >= -1, format!("min R {}", rep.min_r));
    for f in rep.failures.iter().take(5) {
        o.check(false, format!("{:?}: closed form {} vs cotangent {}", f.orders, f.closed_form, f.cotangent));
    }
    o.check(rep.failures.is_empty(), format!("{} failures", rep.failures.len()));
    o.within(start, Duration::from_secs(30));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let computed = gamma(&datum("sigma_2_3_5"), 1).unwrap().value;
    let predicted = gamma_prediction(&[SeifertData::new(&[2, 3, 5]).unwrap()]).unwrap().value;
    o.check(computed == fin(predicted.clone()), format!("{computed} vs {predicted}"));
    o.check(predicted == Rat::new(1, 120), format!("prediction {predicted}"));
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let w = window();
    for d in fixtures::all_data() {
        let rep = verify_triangle(&d, &w);
        o.check(rep.is_ok(), format!("{}: {rep}", d.name));
    }
    let mut rng = StdRng::seed_from_u64(4);
    for i in 0..100 {
        let d = random_datum(&mut rng, &format!("random{i}"));
        let rep = verify_triangle(&d, &w);
        o.check(rep.is_ok(), format!("{}: {rep}", d.name));
    }
    o.within(start, Duration::from_secs(10));
    o
}

/// Returns the outcome and whether the Δ1-only Σ(2,3,5) → S³ clause failed exactly as documented.
fn criterion_5() -> (Outcome, bool) {
    let mut o = Outcome::new();
    let w = window();
    for d in fixtures::all_data() {
        let id = CobordismDatum::identity(&d);
        o.check(verify_tilde_chain_map(&id).is_ok(), format!("identity on {}", d.name));
        let rep = verify_functoriality(&id, &w);
        o.check(rep.is_ok(), format!("identity functoriality on {}: {rep}", d.name));
    }

    // φ = 0 into S³ forces c·D1 = -Δ1∘d = 0, impossible since D1 ≠ 0 on Σ(2,3,5).
    let to_s3 = cobordism("delta1_sigma_to_s3");
    let tilde = verify_tilde_chain_map(&to_s3);
    let documented = tilde.violations.len() == 1 && tilde.violations[0].check.starts_with("D1'∘φ");
    o.check(tilde.is_ok(), format!("delta1_sigma_to_s3 rejected: {tilde}"));

    let self_map = cobordism("delta1_sigma_self");
    o.check(verify_tilde_chain_map(&self_map).is_ok(), "delta1_sigma_self tilde identities");
    o.check(verify_functoriality(&self_map, &w).is_ok(), "delta1_sigma_self functoriality");

    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..50 {
        let d = random_datum(&mut rng, &format!("random{i}"));
        let (a, b, c) = (
            random_trivial_extension(&mut rng, &d),
            random_trivial_extension(&mut rng, &d),
            random_trivial_extension(&mut rng, &d),
        );
        let id = CobordismDatum::identity(&d);
        o.check(compose_tilde(&id, &a).unwrap() == a, format!("left unit {i}"));
        o.check(compose_tilde(&a, &id).unwrap() == a, format!("right unit {i}"));
        let left = compose_tilde(&compose_tilde(&a, &b).unwrap(), &c).unwrap();
        let right = compose_tilde(&a, &compose_tilde(&b, &c).unwrap()).unwrap();
        o.check(left == right, format!("associativity {i}"));
        o.check(verify_tilde_chain_map(&left).is_ok(), format!("composite {i} is a chain map"));
    }
    (o, documented)
}

fn random_data(seed: u64, count: usize) -> Vec<(FloerDatum, i64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (d, shape) = random_datum_with_shape(&mut rng, &format!("random{i}"));
            (d, shape.threshold())
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let fixture_thresholds = [("s3", 0), ("sigma_2_3_5", 2), ("neg_sigma_2_3_5", -2), ("remark_nonpositive", 0)];
    let mut cases: Vec<(FloerDatum, i64)> = fixture_thresholds.iter().map(|(n, t)| (datum(n), *t)).collect();
    cases.extend(random_data(6, 200));
    for (d, expected) in &cases {
        let profile = gamma_profile(d, -4, 4).unwrap();
        o.check(profile.windows(2).all(|w| w[0].1 <= w[1].1), format!("{} not monotone", d.name));
        let last_finite = profile.iter().filter(|(_, v)| v.is_finite()).map(|(k, _)| *k).max().unwrap_or(-5);
        let h = h_invariant(d).unwrap();
        o.check(last_finite == 2 * h, format!("{}: threshold {last_finite}, h {h}", d.name));
        o.check(last_finite == *expected, format!("{}: threshold {last_finite}, expected {expected}", d.name));
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let mut cases = fixtures::all_data();
    cases.extend(random_data(7, 200).into_iter().map(|(d, _)| d));
    for d in &cases {
        let rep = check_cs_trichotomy(d, -4, 4).unwrap();
        o.check(rep.is_ok(), format!("{}: {rep}", d.name));
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let l = e8();
    let mn = minimal_norm(&l);
    o.check(mn.norm == 2, format!("m(E8) = {}", mn.norm));
    o.check(mn.vectors.len() == 240, format!("{} minimal vectors", mn.vectors.len()));
    let cb = bound_from_class(&l, &mn.vectors[0], None).unwrap();
    let ok = matches!(&cb, ClassBound::Bound { n0: 1, bound, .. } if *bound == Rat::new(1, 2));
    o.check(ok, format!("E8 class bound {cb:?}"));
    for n in 1..=4 {
        let d = LatticeData::diagonal(&vec![-1; n]).unwrap();
        o.check(gamma_upper_bounds_from_lattice(&d).is_none(), format!("-I{n} gives a bound"));
    }

    let mut rng = StdRng::seed_from_u64(8);
    let mut tested = 0;
    while tested < 100 {
        let l = random_lattice(&mut rng, 4);
        let n = l.rank();
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        if p.iter().all(|&c| c == 0) {
            continue;
        }
        let e = common::minimal_in_class(&l, &p);
        let m = (l.q(&e).rem_euclid(2) + 2 * rng.gen_range(0..2)) as u32;
        let xi: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let twist = (m > 0).then_some(xi.as_slice());
        let salt: i64 = rng.gen_range(1..1000);
        let flip = move |v: &[i64]| v.iter().enumerate().map(|(i, c)| (i as i64 + 1) * c * salt).sum::<i64>() % 2 == 0;
        match signed_sum_with(&l, &e, twist, m, &|_| false) {
            Ok(base) => {
                tested += 1;
                let flipped = signed_sum_with(&l, &e, twist, m, &flip).unwrap();
                o.check(flipped == base, format!("{:?} e = {e:?}: {base} vs {flipped}", l.gram()));
            }
            Err(LatticeError::SmallNorm(_)) => {}
            Err(err) => o.check(false, format!("{err}")),
        }
    }
    o.within(start, Duration::from_secs(5));
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let w = whitehead_double_bounds(2, 3).unwrap();
    o.check(w.lower == Rat::new(1, 552) && w.upper == Rat::new(1, 264), format!("[{}, {}]", w.lower, w.upper));
    let (p, q) = (2, 3);
    let pq = p * q;
    let displayed = [Rat::new(1, 4 * pq * (4 * pq - 1)), Rat::new(1, 2 * pq * (4 * pq - 1)), Rat::new(1, 4 * pq * (2 * pq - 1))];
    o.check(w.candidates == displayed, format!("candidates {:?}", w.candidates));
    o.check(displayed == [Rat::new(1, 552), Rat::new(1, 276), Rat::new(1, 264)], "substituted values");
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = StdRng::seed_from_u64(10);
    let mut evaluated = 0;
    for i in 0..200 {
        let (m, classes) = random_morse_complex(&mut rng, false);
        o.check(m.len() <= 10, format!("complex {i} too large"));
        for sigma in classes {
            match (evaluate_class(&m, &sigma), common::morse_oracle(&m, &sigma)) {
                (Ok(v), Some(w)) => {
                    evaluated += 1;
                    o.check(v == w, format!("complex {i} {sigma:?}: {v} vs {w}"));
                }
                (Err(MorseError::NullHomologous), None) => {}
                (got, want) => o.check(false, format!("complex {i} {sigma:?}: {got:?} vs {want:?}")),
            }
        }
    }
    o.check(evaluated > 200, format!("only {evaluated} nontrivial classes"));
    for i in 0..50 {
        let (m, classes) = random_morse_complex(&mut rng, true);
        for sigma in classes {
            let idx = m.generators.iter().zip(&sigma).find(|(_, &c)| c != 0).unwrap().0.index;
            match evaluate_class(&m, &sigma) {
                Ok(v) => o.check(v == Rat::int(idx as i64), format!("self-indexing {i}: {v} != {idx}")),
                Err(e) => o.check(e == MorseError::NullHomologous, format!("self-indexing {i}: {e}")),
            }
        }
    }
    o
}

fn line(n: usize, title: &str, o: &Outcome) -> String {
    let mut s = format!("criterion {n:>2}: {} {title}", if o.ok { "PASS" } else { "FAIL" });
    for note in o.notes.iter().take(8) {
        s.push_str(&format!("\n               {note}"));
    }
    s
}

#[test]
fn acceptance() {
    let (c5, c5_documented) = criterion_5();
    let results = [
        (1, "golden values", criterion_1()),
        (2, "R-invariant cross-formula audit", criterion_2()),
        (3, "Seifert/gamma concordance", criterion_3()),
        (4, "triangle verification", criterion_4()),
        (5, "cobordism functoriality", c5),
        (6, "gamma monotonicity and threshold = 2h", criterion_6()),
        (7, "CS trichotomy", criterion_7()),
        (8, "lattice", criterion_8()),
        (9, "Whitehead bounds", criterion_9()),
        (10, "Morse min-max", criterion_10()),
    ];
    for (n, title, o) in &results {
        println!("{}", line(*n, title, o));
    }

    // Criterion 5 is red only because of the unsatisfiable Δ1-only Σ(2,3,5) → S³ clause.
    for (n, _, o) in &results {
        if *n == 5 {
            assert!(c5_documented, "delta1_sigma_to_s3 no longer fails identity (2) alone");
            assert_eq!(o.notes.len(), 1, "criterion 5 has unexpected failures: {:?}", o.notes);
        } else {
            assert!(o.ok, "criterion {n} failed: {:?}", o.notes);
        }
    }
}
