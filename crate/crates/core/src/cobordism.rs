//! Cobordism maps between Floer data: the 3×3 tilde map
//! `[[φ,0,0],[Δ1,c,0],[μ,Δ2,φ]]`, the induced maps on Ĉ, Č and C̄ with their
//! homotopies, verification, and chain-level composition.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivariant::{
    bar_basis, check_basis, check_d, hat_basis, hat_d, map_i, map_j, map_p, x_action_bar, x_action_check, x_action_hat,
    BarElement, CheckElement, Checker, HatElement, TruncationWindow,
};
use crate::floer_datum::{
    chain_add, chain_is_zero, fill_entries, report_nonzero, residue, validate, zero_chain, Chain, DatumError, EntryJson,
    FloerDatum, FromJson, LambdaMatrix, ToJson, ValidationReport,
};
use crate::gamma::{eta_lower_bound, gamma, GammaError};
use crate::novikov::{mdeg_tuple, ExtendedRat, NovikovElement, Rat};

#[derive(Debug, Error)]
pub enum CobordismError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot resolve datum `{0}`")]
    UnknownDatum(String),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error("c must be a positive integer")]
    ZeroC,
    #[error("target `{0}` of the first cobordism differs from source `{1}` of the second")]
    Mismatch(String, String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CobordismJson {
    pub source: String,
    pub target: String,
    pub c: u64,
    #[serde(default)]
    pub phi: Vec<EntryJson>,
    #[serde(default)]
    pub mu: Vec<EntryJson>,
    #[serde(default)]
    pub delta1: Vec<FromJson>,
    #[serde(default)]
    pub delta2: Vec<ToJson>,
}

/// `phi` and `mu` are `target × source`, `delta1` is `1 × source`, `delta2` is `target × 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismDatum {
    pub source_ref: String,
    pub target_ref: String,
    pub source: FloerDatum,
    pub target: FloerDatum,
    pub phi: LambdaMatrix,
    pub mu: LambdaMatrix,
    pub delta1: LambdaMatrix,
    pub delta2: LambdaMatrix,
    pub c: u64,
}

impl CobordismDatum {
    /// All maps zero and the given `c`.
    pub fn trivial(source: &FloerDatum, target: &FloerDatum, c: u64) -> Self {
        let (n, m) = (source.len(), target.len());
        CobordismDatum {
            source_ref: source.name.clone(),
            target_ref: target.name.clone(),
            source: source.clone(),
            target: target.clone(),
            phi: LambdaMatrix::zero(m, n),
            mu: LambdaMatrix::zero(m, n),
            delta1: LambdaMatrix::zero(1, n),
            delta2: LambdaMatrix::zero(m, 1),
            c,
        }
    }

    pub fn identity(datum: &FloerDatum) -> Self {
        let mut cob = Self::trivial(datum, datum, 1);
        cob.phi = LambdaMatrix::identity(datum.len());
        cob
    }

    pub fn c_element(&self) -> NovikovElement {
        NovikovElement::constant(Rat::int(self.c as i64))
    }

    /// Parses the JSON form; `resolve` maps the `source`/`target` strings to data.
    pub fn from_json_str(s: &str, resolve: &dyn Fn(&str) -> Option<FloerDatum>) -> Result<Self, CobordismError> {
        let raw: CobordismJson = serde_json::from_str(s)?;
        Self::from_json(&raw, resolve)
    }

    pub fn from_json(raw: &CobordismJson, resolve: &dyn Fn(&str) -> Option<FloerDatum>) -> Result<Self, CobordismError> {
        let source = resolve(&raw.source).ok_or_else(|| CobordismError::UnknownDatum(raw.source.clone()))?;
        let target = resolve(&raw.target).ok_or_else(|| CobordismError::UnknownDatum(raw.target.clone()))?;
        if raw.c == 0 {
            return Err(CobordismError::ZeroC);
        }
        let mut cob = Self::trivial(&source, &target, raw.c);
        cob.source_ref = raw.source.clone();
        cob.target_ref = raw.target.clone();
        let src = |s: &str| source.index_of(s);
        let tgt = |s: &str| target.index_of(s);
        let unit = |s: &str| if s.is_empty() { Some(0) } else { None };
        let pairs = |v: &[EntryJson]| v.iter().map(|e| (e.from.clone(), e.to.clone(), e.terms.clone())).collect::<Vec<_>>();
        fill_entries(&mut cob.phi, &pairs(&raw.phi), &tgt, &src, "phi")?;
        fill_entries(&mut cob.mu, &pairs(&raw.mu), &tgt, &src, "mu")?;
        let d1: Vec<_> = raw.delta1.iter().map(|e| (e.from.clone(), String::new(), e.terms.clone())).collect();
        fill_entries(&mut cob.delta1, &d1, &unit, &src, "delta1")?;
        let d2: Vec<_> = raw.delta2.iter().map(|e| (String::new(), e.to.clone(), e.terms.clone())).collect();
        fill_entries(&mut cob.delta2, &d2, &tgt, &unit, "delta2")?;
        Ok(cob)
    }

    pub fn to_json(&self) -> CobordismJson {
        let sname = |i: usize| self.source.generators[i].name.clone();
        let tname = |i: usize| self.target.generators[i].name.clone();
        let terms = crate::floer_datum::element_to_terms;
        let entries = |m: &LambdaMatrix| -> Vec<EntryJson> {
            m.entries().map(|(&(r, c), a)| EntryJson { from: sname(c), to: tname(r), terms: terms(a) }).collect()
        };
        CobordismJson {
            source: self.source_ref.clone(),
            target: self.target_ref.clone(),
            c: self.c,
            phi: entries(&self.phi),
            mu: entries(&self.mu),
            delta1: self.delta1.entries().map(|(&(_, c), a)| FromJson { from: sname(c), terms: terms(a) }).collect(),
            delta2: self.delta2.entries().map(|(&(r, _), a)| ToJson { to: tname(r), terms: terms(a) }).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("cobordism serializes")
    }

    fn apply_u_pow(datum: &FloerDatum, v: &[NovikovElement], k: usize) -> Chain {
        let mut v = v.to_vec();
        for _ in 0..k {
            if chain_is_zero(&v) {
                break;
            }
            v = datum.apply_u(&v);
        }
        v
    }

    fn u_src(&self, v: &[NovikovElement], k: usize) -> Chain {
        Self::apply_u_pow(&self.source, v, k)
    }

    fn u_tgt(&self, v: &[NovikovElement], k: usize) -> Chain {
        Self::apply_u_pow(&self.target, v, k)
    }

    fn d2_src(&self, a: &NovikovElement) -> Chain {
        self.source.apply_d2(a)
    }

    fn delta1(&self, v: &[NovikovElement]) -> NovikovElement {
        self.delta1.apply(v).pop().unwrap_or_else(NovikovElement::zero)
    }

    fn delta2(&self, a: &NovikovElement) -> Chain {
        self.delta2.apply(std::slice::from_ref(a))
    }

    fn d1_tgt(&self, v: &[NovikovElement]) -> NovikovElement {
        self.target.apply_d1(v)
    }

    /// `D1' U'^j μ U^k (α)`.
    fn d1_mu(&self, alpha: &[NovikovElement], j: usize, k: usize) -> NovikovElement {
        let v = self.u_src(alpha, k);
        if chain_is_zero(&v) {
            return NovikovElement::zero();
        }
        self.d1_tgt(&self.u_tgt(&self.mu.apply(&v), j))
    }

    /// Coefficient of `x^m` (`m <= -1`) in the series S by which C̄ maps are multiplication.
    fn series_coeff(&self, m: i64) -> NovikovElement {
        let one = NovikovElement::one();
        let d2one = self.d2_src(&one);
        let q = (-m - 1) as usize;
        let mut s = self.delta1(&self.u_src(&d2one, q)).add(&self.d1_tgt(&self.u_tgt(&self.delta2(&one), q)));
        for j in -(-m - 1)..=-1 {
            let k = m - j;
            if k > -1 {
                continue;
            }
            s = s.add(&self.d1_mu(&d2one, (-j - 1) as usize, (-k - 1) as usize));
        }
        s
    }

    /// The series S truncated at depth `depth`: index 0 is `c`, index `q` is the `x^{-q}` coefficient.
    pub fn series(&self, depth: usize) -> Vec<NovikovElement> {
        let mut s = vec![self.c_element()];
        s.extend((1..=depth).map(|q| self.series_coeff(-(q as i64))));
        s
    }
}

impl fmt::Display for CobordismDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (c = {})", self.source_ref, self.target_ref, self.c)
    }
}

/// Grading and support constraints; both data must validate.
pub fn check_preconditions(cob: &CobordismDatum) -> ValidationReport {
    let mut rep = ValidationReport::ok();
    for (label, d) in [("source", &cob.source), ("target", &cob.target)] {
        let r = validate(d);
        if !r.is_ok() {
            rep.push("precondition", format!("{label} datum `{}` is not valid: {r}", d.name));
        }
    }
    if cob.c == 0 {
        rep.push("precondition", "c must be at least 1");
    }
    let gs = |i: usize| cob.source.grading(i) as i64;
    let gt = |i: usize| cob.target.grading(i) as i64;
    let sn = |i: usize| cob.source.generators[i].name.clone();
    let tn = |i: usize| cob.target.generators[i].name.clone();
    for (&(r, c), _) in cob.phi.entries() {
        if gs(c) != gt(r) {
            rep.push("precondition", format!("phi entry {} -> {} does not preserve grading", sn(c), tn(r)));
        }
    }
    for (&(r, c), _) in cob.mu.entries() {
        if residue(gs(c) - 3) != gt(r) as u8 {
            rep.push("precondition", format!("mu entry {} -> {} does not have degree -3", sn(c), tn(r)));
        }
    }
    for (&(_, c), _) in cob.delta1.entries() {
        if gs(c) != 1 {
            rep.push("precondition", format!("delta1 is nonzero on {} of grading {}", sn(c), gs(c)));
        }
    }
    for (&(r, _), _) in cob.delta2.entries() {
        if gt(r) != 4 {
            rep.push("precondition", format!("delta2 lands in {} of grading {}", tn(r), gt(r)));
        }
    }
    rep
}

/// The four component identities of `M' D = D' M'`.
pub fn verify_tilde_chain_map(cob: &CobordismDatum) -> ValidationReport {
    let pre = check_preconditions(cob);
    if !pre.is_ok() {
        return pre;
    }
    let (s, t) = (&cob.source, &cob.target);
    let c = cob.c_element();
    let sn = |i: usize| s.generators[i].name.clone();
    let tn = |i: usize| t.generators[i].name.clone();
    let one = |_: usize| "1".to_string();
    let mut rep = ValidationReport::ok();

    let e1 = cob.phi.compose(&s.d).sub(&t.d.compose(&cob.phi));
    report_nonzero(&mut rep, "φ∘d = d'∘φ", &e1, &tn, &sn);
    let e2 = t.d1.compose(&cob.phi).sub(&cob.delta1.compose(&s.d)).sub(&s.d1.scale(&c));
    report_nonzero(&mut rep, "D1'∘φ = Δ1∘d + c·D1", &e2, &one, &sn);
    let e3 = cob.phi.compose(&s.d2).sub(&t.d2.scale(&c)).add(&t.d.compose(&cob.delta2));
    report_nonzero(&mut rep, "φ∘D2 = c·D2' - d'∘Δ2", &e3, &tn, &one);
    let e4 = cob
        .phi
        .compose(&s.u)
        .sub(&t.u.compose(&cob.phi))
        .sub(&t.d2.compose(&cob.delta1))
        .add(&t.d.compose(&cob.mu))
        .add(&cob.mu.compose(&s.d))
        .add(&cob.delta2.compose(&s.d1));
    report_nonzero(&mut rep, "φ∘U - U'∘φ = D2'∘Δ1 - d'∘μ - μ∘d - Δ2∘D1", &e4, &tn, &sn);
    rep
}

/// ĈW on an element of Ĉ(source).
pub fn hat_map(cob: &CobordismDatum, w: &TruncationWindow, e: &HatElement) -> HatElement {
    let n = w.n;
    let mut chain = cob.phi.apply(&e.chain);
    let d2a: Vec<Chain> = e.poly.iter().map(|a| cob.d2_src(a)).collect();
    for (i, a) in e.poly.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        chain = chain_add(&chain, &cob.u_tgt(&cob.delta2(a), i));
        for k in 0..i {
            let v = cob.u_src(&d2a[i], i - 1 - k);
            chain = chain_add(&chain, &cob.u_tgt(&cob.mu.apply(&v), k));
        }
    }
    let c = cob.c_element();
    let mut poly: Vec<NovikovElement> = e.poly.iter().map(|a| a.mul(&c)).collect();
    for i in 0..n {
        let mut s = NovikovElement::zero();
        for k in i + 1..=n {
            let a = &e.poly[k];
            if a.is_zero() {
                continue;
            }
            s = s.add(&cob.d1_tgt(&cob.u_tgt(&cob.delta2(a), k - i - 1)));
            s = s.add(&cob.delta1(&cob.u_src(&d2a[k], k - i - 1)));
        }
        for j in i + 1..n {
            for k in j + 1..=n {
                if !e.poly[k].is_zero() {
                    s = s.add(&cob.d1_mu(&d2a[k], j - i - 1, k - j - 1));
                }
            }
        }
        poly[i] = poly[i].add(&s);
    }
    HatElement { chain, poly }
}

/// Multiplies a Laurent tail (`coeff(i)` for `i <= -1`) and optional nonnegative part by S.
fn times_series(cob: &CobordismDatum, w: &TruncationWindow, z: &BarElement) -> BarElement {
    let s = cob.series(w.t + w.n);
    let mut out = BarElement::zero(w);
    for i in z.low()..=z.high() {
        let a = z.get(i);
        if a.is_zero() {
            continue;
        }
        for (q, sq) in s.iter().enumerate() {
            let deg = i - q as i64;
            if deg < out.low() {
                break;
            }
            if !sq.is_zero() {
                out.add_at(deg, &a.mul(sq));
            }
        }
    }
    out
}

/// barCW: multiplication by the window-truncated series S.
pub fn bar_map(cob: &CobordismDatum, w: &TruncationWindow, z: &BarElement) -> BarElement {
    times_series(cob, w, z)
}

/// čW on an element of Č(source).
pub fn check_map(cob: &CobordismDatum, w: &TruncationWindow, e: &CheckElement) -> CheckElement {
    let t = w.t as i64;
    let mut tailz = BarElement::zero(w);
    for j in 1..=t {
        tailz.set(-j, e.coeff(-j).clone());
    }
    let prod = times_series(cob, w, &tailz);
    let mut tail = Vec::with_capacity(w.t);
    for q in 1..=t {
        let i = -q;
        let mut a = cob.delta1(&cob.u_src(&e.chain, (q - 1) as usize));
        for j in i + 1..=-1 {
            a = a.add(&cob.d1_mu(&e.chain, (-j - 1) as usize, (j - i - 1) as usize));
        }
        tail.push(a.add(&prod.get(i)));
    }
    CheckElement { chain: cob.phi.apply(&e.chain), tail }
}

/// 𝔎(α, poly) = (μα, Δ1(α) x^0).
pub fn homotopy_hat(cob: &CobordismDatum, w: &TruncationWindow, e: &HatElement) -> HatElement {
    let mut out = HatElement::zero(cob.target.len(), w);
    out.chain = cob.mu.apply(&e.chain);
    out.poly[0] = cob.delta1(&e.chain);
    out
}

/// 𝔏(α, tail) = (μα + Δ2(a_{-1}), 0).
pub fn homotopy_check(cob: &CobordismDatum, w: &TruncationWindow, e: &CheckElement) -> CheckElement {
    let mut out = CheckElement::zero(cob.target.len(), w);
    out.chain = chain_add(&cob.mu.apply(&e.chain), &cob.delta2(e.coeff(-1)));
    out
}

/// K: Ĉ(source) → C̄(target).
pub fn homotopy_k(cob: &CobordismDatum, w: &TruncationWindow, e: &HatElement) -> BarElement {
    let mut out = BarElement::zero(w);
    let t = w.t as i64;
    for i in 1..=t {
        out.add_at(-i, &cob.delta1(&cob.u_src(&e.chain, (i - 1) as usize)));
    }
    for j in 1..t {
        for k in 1..=t - j {
            out.add_at(-j - k, &cob.d1_mu(&e.chain, (j - 1) as usize, (k - 1) as usize));
        }
    }
    out
}

/// L: C̄(source) → Č(target).
pub fn homotopy_l(cob: &CobordismDatum, w: &TruncationWindow, z: &BarElement) -> CheckElement {
    let mut chain = zero_chain(cob.target.len());
    for i in 0..=w.n {
        let a = z.get(i as i64);
        if a.is_zero() {
            continue;
        }
        chain = chain_add(&chain, &cob.u_tgt(&cob.delta2(&a), i));
        let d2a = cob.d2_src(&a);
        for j in 0..i {
            chain = chain_add(&chain, &cob.u_tgt(&cob.mu.apply(&cob.u_src(&d2a, i - 1 - j)), j));
        }
    }
    let mut out = CheckElement::zero(cob.target.len(), w);
    out.chain = chain;
    out
}

/// Checks every functoriality identity on a spanning set of the window.
pub fn verify_functoriality(cob: &CobordismDatum, w: &TruncationWindow) -> ValidationReport {
    let pre = verify_tilde_chain_map(cob);
    if !pre.is_ok() {
        let mut rep = ValidationReport::ok();
        rep.push("precondition", format!("tilde map is not a chain map: {pre}"));
        return rep;
    }
    let (s, t) = (&cob.source, &cob.target);
    let label = format!("{cob}");
    let mut c = Checker { report: ValidationReport::ok(), low: w.low(), datum_name: &label };

    for (name, e) in hat_basis(s.len(), w, w.n - 1) {
        let img = hat_map(cob, w, &e);
        c.hat("d̂'∘ĈW = ĈW∘d̂", &name, hat_d(t, w, &img).sub(&hat_map(cob, w, &hat_d(s, w, &e))));
        match (x_action_hat(t, w, &img), x_action_hat(s, w, &e)) {
            (Ok(x_img), Ok(xe)) => {
                let lhs = x_img.sub(&hat_map(cob, w, &xe));
                let dk = homotopy_hat(cob, w, &hat_d(s, w, &e));
                let kd = hat_d(t, w, &homotopy_hat(cob, w, &e));
                c.hat("x∘ĈW - ĈW∘x = 𝔎∘d̂ + d̂'∘𝔎", &name, lhs.sub(&dk.add(&kd)));
            }
            (Err(err), _) | (_, Err(err)) => c.overflow("x∘ĈW - ĈW∘x = 𝔎∘d̂ + d̂'∘𝔎", &name, err),
        }
        let lhs = map_p(t, w, &img).sub(&bar_map(cob, w, &map_p(s, w, &e)));
        c.bar("p'∘ĈW - barCW∘p = K∘d̂", &name, lhs.sub(&homotopy_k(cob, w, &hat_d(s, w, &e))));
    }
    for (name, e) in check_basis(s.len(), w, w.t - 2) {
        let img = check_map(cob, w, &e);
        c.check("ď'∘čW = čW∘ď", &name, check_d(t, w, &img).sub(&check_map(cob, w, &check_d(s, w, &e))));
        let lhs = x_action_check(t, w, &img).sub(&check_map(cob, w, &x_action_check(s, w, &e)));
        let rhs = homotopy_check(cob, w, &check_d(s, w, &e)).add(&check_d(t, w, &homotopy_check(cob, w, &e)));
        c.check("x∘čW - čW∘x = 𝔏∘ď + ď'∘𝔏", &name, lhs.sub(&rhs));
        c.hat("j'∘čW = ĈW∘j", &name, map_j(w, &img).sub(&hat_map(cob, w, &map_j(w, &e))));
    }
    for (name, z) in bar_basis(w, w.low(), w.n as i64 - 1) {
        let img = bar_map(cob, w, &z);
        match (x_action_bar(&z), x_action_bar(&img)) {
            (Ok(xz), Ok(ximg)) => c.bar("barCW∘x = x∘barCW", &name, bar_map(cob, w, &xz).sub(&ximg)),
            (Err(err), _) | (_, Err(err)) => c.overflow("barCW∘x = x∘barCW", &name, err),
        }
        let lhs = map_i(t, w, &img).sub(&check_map(cob, w, &map_i(s, w, &z)));
        c.check("i'∘barCW - čW∘i = ď'∘L", &name, lhs.sub(&check_d(t, w, &homotopy_l(cob, w, &z))));
    }
    c.report
}

/// Smallest observed `mdeg(ĈW(e)) - mdeg(e)` over the hat basis; `None` if every image vanishes.
pub fn measure_mdeg_drop(cob: &CobordismDatum, w: &TruncationWindow) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for (_, e) in hat_basis(cob.source.len(), w, w.n) {
        let out = hat_map(cob, w, &e);
        let before = mdeg_tuple(e.chain.iter().chain(e.poly.iter()));
        let after = mdeg_tuple(out.chain.iter().chain(out.poly.iter()));
        if let (ExtendedRat::Finite(a), ExtendedRat::Finite(b)) = (&after, &before) {
            let d = a - b;
            best = Some(match best {
                Some(x) if x <= d => x,
                _ => d,
            });
        }
    }
    best
}

/// The tilde-level composite `second ∘ first`.
pub fn compose_tilde(first: &CobordismDatum, second: &CobordismDatum) -> Result<CobordismDatum, CobordismError> {
    if first.target != second.source {
        return Err(CobordismError::Mismatch(first.target_ref.clone(), second.source_ref.clone()));
    }
    let (c1, c2) = (first.c_element(), second.c_element());
    Ok(CobordismDatum {
        source_ref: first.source_ref.clone(),
        target_ref: second.target_ref.clone(),
        source: first.source.clone(),
        target: second.target.clone(),
        phi: second.phi.compose(&first.phi),
        delta1: second.delta1.compose(&first.phi).add(&first.delta1.scale(&c2)),
        delta2: second.phi.compose(&first.delta2).add(&second.delta2.scale(&c1)),
        mu: second.mu.compose(&first.phi).add(&second.delta2.compose(&first.delta1)).add(&second.phi.compose(&first.mu)),
        c: first.c * second.c,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub k: i64,
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub source: ExtendedRat,
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub target: ExtendedRat,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaComparison {
    pub rows: Vec<ComparisonRow>,
    #[serde(serialize_with = "crate::cli::ser_opt_display")]
    pub eta_lb: Option<Rat>,
    pub eta_note: Option<String>,
}

impl GammaComparison {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Per k, whether Γ_target(k) ≤ Γ_source(k) (k ≥ 1) or Γ_target(k) ≤ max(Γ_source(k), 0) (k ≤ 0).
pub fn gamma_comparison(cob: &CobordismDatum, k_min: i64, k_max: i64) -> Result<GammaComparison, GammaError> {
    let mut rows = Vec::new();
    for k in k_min..=k_max {
        let gs = gamma(&cob.source, k)?.value;
        let gt = gamma(&cob.target, k)?.value;
        let bound = if k >= 1 { gs.clone() } else { gs.clone().max(ExtendedRat::Finite(Rat::zero())) };
        rows.push(ComparisonRow { k, holds: gt <= bound, source: gs, target: gt });
    }
    let (eta_lb, eta_note) = match eta_lower_bound(&cob.source, &cob.target) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(GammaComparison { rows, eta_lb, eta_note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::{deg_bar, map_p};
    use crate::fixtures::{datum, file};

    fn w() -> TruncationWindow {
        TruncationWindow::new(6, 4).unwrap()
    }

    fn load(name: &str) -> CobordismDatum {
        CobordismDatum::from_json_str(file(name).unwrap(), &datum).unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn identity_cobordisms_verify() {
        for d in crate::fixtures::all_data() {
            let id = CobordismDatum::identity(&d);
            assert!(verify_tilde_chain_map(&id).is_ok());
            let rep = verify_functoriality(&id, &w());
            assert!(rep.is_ok(), "{}: {rep}", d.name);
        }
    }

    #[test]
    fn identity_hat_map_is_identity() {
        let s = datum("sigma_2_3_5").unwrap();
        let id = CobordismDatum::identity(&s);
        let mut e = HatElement::generator(2, 1, &w());
        e.poly[2] = NovikovElement::lambda(r("1/3"));
        assert_eq!(hat_map(&id, &w(), &e), e);
    }

    #[test]
    fn trivial_sphere_cobordism() {
        let s3 = datum("s3").unwrap();
        let cob = CobordismDatum::trivial(&s3, &s3, 3);
        assert!(verify_tilde_chain_map(&cob).is_ok());
        assert!(verify_functoriality(&cob, &w()).is_ok());
        let z = BarElement::x_power(-2, &w());
        let out = bar_map(&cob, &w(), &z);
        assert_eq!(out.get(-2), NovikovElement::constant(r("3")));
        assert_eq!(deg_bar(&out), deg_bar(&z));
    }

    #[test]
    fn lambda_scaled_identity() {
        let s = datum("sigma_2_3_5").unwrap();
        let mut cob = CobordismDatum::identity(&s);
        cob.phi = LambdaMatrix::scalar(2, &NovikovElement::lambda(r("1")));
        // c is an integer, so the Λ-summand is not rescaled and only the D1 identity breaks.
        let rep = verify_tilde_chain_map(&cob);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.first().unwrap().check, "D1'∘φ = Δ1∘d + c·D1");
    }

    #[test]
    fn delta1_only_fixture_fails_identity_two() {
        let cob = load("delta1_sigma_to_s3");
        assert_eq!(cob.delta1.get(0, 0), NovikovElement::lambda(r("1/120")));
        let rep = verify_tilde_chain_map(&cob);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.first().unwrap().check, "D1'∘φ = Δ1∘d + c·D1");
        let out = check_map(&cob, &w(), &CheckElement::generator(2, 0, &w()));
        assert!(out.chain.is_empty());
        assert_eq!(out.coeff(-1), &NovikovElement::lambda(r("1/120")));
        assert!(out.tail[1..].iter().all(|a| a.is_zero()));
    }

    #[test]
    fn delta1_self_fixture_verifies() {
        let cob = load("delta1_sigma_self");
        assert!(verify_tilde_chain_map(&cob).is_ok());
        let rep = verify_functoriality(&cob, &w());
        assert!(rep.is_ok(), "{rep}");
    }

    #[test]
    fn broken_functoriality_is_detected() {
        // A nonzero φ into S³-like zero target is fine, but a bad μ grading is a precondition failure.
        let s = datum("sigma_2_3_5").unwrap();
        let mut cob = CobordismDatum::identity(&s);
        cob.mu.add_entry(0, 0, NovikovElement::one());
        let rep = verify_functoriality(&cob, &w());
        assert_eq!(rep.first().unwrap().check, "precondition");
    }

    #[test]
    fn composition_laws() {
        let s = datum("sigma_2_3_5").unwrap();
        let id = CobordismDatum::identity(&s);
        let x = load("delta1_sigma_self");
        assert_eq!(compose_tilde(&id, &id).unwrap(), id);
        let left = compose_tilde(&id, &x).unwrap();
        let right = compose_tilde(&x, &id).unwrap();
        assert_eq!((&left.phi, &left.delta1, &left.mu, left.c), (&x.phi, &x.delta1, &x.mu, x.c));
        assert_eq!((&right.phi, &right.delta1, &right.mu, right.c), (&x.phi, &x.delta1, &x.mu, x.c));
        let xx = compose_tilde(&x, &x).unwrap();
        assert!(verify_tilde_chain_map(&xx).is_ok());
        assert_eq!(xx.delta1.get(0, 0), NovikovElement::monomial(r("2"), r("1/120")));
        let s3 = datum("s3").unwrap();
        let two = CobordismDatum::trivial(&s3, &s3, 2);
        assert_eq!(compose_tilde(&two, &two).unwrap().c, 4);
        let other = CobordismDatum::identity(&datum("neg_sigma_2_3_5").unwrap());
        assert!(compose_tilde(&id, &other).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cob = load("delta1_sigma_self");
        let back = CobordismDatum::from_json_str(&cob.to_json_string(), &datum).unwrap();
        assert_eq!(back, cob);
    }

    #[test]
    fn gamma_comparison_examples() {
        let s = datum("sigma_2_3_5").unwrap();
        let rep = gamma_comparison(&CobordismDatum::identity(&s), -2, 3).unwrap();
        assert!(rep.all_hold());
        assert!(rep.rows.iter().all(|r| r.source == r.target));
        assert_eq!(rep.eta_lb, Some(Rat::zero()));
        let rep = gamma_comparison(&load("s3_to_sigma_2_3_5"), -2, 3).unwrap();
        assert!(rep.all_hold());
        let k1 = rep.rows.iter().find(|r| r.k == 1).unwrap();
        assert_eq!(k1.source, ExtendedRat::Inf);
        assert_eq!(k1.target, ExtendedRat::Finite(r("1/120")));
        let rep = gamma_comparison(&load("delta1_sigma_to_s3"), -2, 3).unwrap();
        assert!(!rep.rows.iter().find(|r| r.k == 1).unwrap().holds);
    }

    #[test]
    fn p_then_bar_preserves_degree_shape() {
        let cob = load("delta1_sigma_self");
        let e = HatElement::x_power(2, 3, &w());
        let z = map_p(&cob.source, &w(), &e);
        assert_eq!(deg_bar(&bar_map(&cob, &w(), &z)).unwrap(), deg_bar(&z).unwrap());
        assert!(measure_mdeg_drop(&cob, &w()).is_some());
    }
}
