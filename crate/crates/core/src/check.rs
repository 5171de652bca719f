//! Named check suites and the machine-readable report they produce.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::braid::{
    eta, hecke_check, intertwiner_check, perturbed_rmatrix, q_antisymmetric, q_antisymmetric_space, rmatrix, sigma, theta, ybe_check,
    ybe_holds,
};
use crate::cuntz::{random_scalar, CuntzElement};
use crate::error::{Error, Result};
use crate::fock::{oracle_is_zero, representation_axioms_hold, OracleConfig};
use crate::qmatrix::{
    antipode_check, antipode_u, coact, dual_act_many, frt_rules, is_cofixed, pairing, pairing_welldefined,
    perturbed_relation_detected, qdet, reduced_mul, rll_check, sl_quotient_reduce, CoactionElement, QMatElement,
};
use crate::uq::{act_word, antipode_rep_word, is_fixed, rep_relations_check, LieData, UqWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Relations,
    Ybe,
    Braid,
    Fixed,
    Cofixed,
    FixedEqCofixed,
    Duality,
    FrtConfluence,
    Qdet,
    Antipode,
    Rll,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Relations,
        Suite::Ybe,
        Suite::Braid,
        Suite::Fixed,
        Suite::Cofixed,
        Suite::FixedEqCofixed,
        Suite::Duality,
        Suite::FrtConfluence,
        Suite::Qdet,
        Suite::Antipode,
        Suite::Rll,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Ybe => "ybe",
            Suite::Braid => "braid",
            Suite::Fixed => "fixed",
            Suite::Cofixed => "cofixed",
            Suite::FixedEqCofixed => "fixed-eq-cofixed",
            Suite::Duality => "duality",
            Suite::FrtConfluence => "frt-confluence",
            Suite::Qdet => "qdet",
            Suite::Antipode => "antipode",
            Suite::Rll => "rll",
            Suite::Oracle => "oracle",
        }
    }

    /// Default inclusive range of `d` (for `relations`, the rank plus one).
    pub fn default_d_range(self) -> (usize, usize) {
        match self {
            Suite::Relations | Suite::Ybe => (2, 4),
            Suite::FixedEqCofixed | Suite::Duality | Suite::Rll => (2, 2),
            _ => (2, 3),
        }
    }

    fn default_wordlen(self) -> usize {
        match self {
            Suite::Duality => 2,
            _ => 3,
        }
    }

    fn default_random(self) -> usize {
        match self {
            Suite::FrtConfluence => 100,
            Suite::Oracle => 200,
            _ => 50,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Parameters shared by all suites; `None` selects the suite default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub d_range: Option<(usize, usize)>,
    pub strands: Option<usize>,
    pub wordlen: Option<usize>,
    /// Number of random samples (elements, triples or equalities).
    pub random: Option<usize>,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { d_range: None, strands: None, wordlen: None, random: None, seed: 20240613 }
    }
}

impl SuiteParams {
    pub fn with_d(mut self, lo: usize, hi: usize) -> Self {
        self.d_range = Some((lo, hi));
        self
    }

    pub fn with_wordlen(mut self, l: usize) -> Self {
        self.wordlen = Some(l);
        self
    }

    pub fn with_random(mut self, n: usize) -> Self {
        self.random = Some(n);
        self
    }

    pub fn with_strands(mut self, n: usize) -> Self {
        self.strands = Some(n);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    /// Present exactly when the case fails.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Human-readable summary, one line per case.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            let _ = write!(s, "{mark} {}/{} ({:.1} ms)", self.suite, c.id, c.wall_time_ms);
            if let Some(w) = &c.witness {
                let _ = write!(s, "\n     witness: {w}");
            }
            s.push('\n');
        }
        let passed = self.cases.iter().filter(|c| c.pass).count();
        let _ = writeln!(s, "{}: {passed}/{} cases passed", self.suite, self.cases.len());
        s
    }
}

enum Outcome {
    Pass,
    Fail(Value),
}

fn verdict(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

struct Runner {
    cases: Vec<CaseResult>,
}

impl Runner {
    fn case(&mut self, id: String, params: Value, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = f();
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let (pass, witness) = match outcome {
            Ok(Outcome::Pass) => (true, None),
            Ok(Outcome::Fail(w)) => (false, Some(w)),
            Err(e) => (false, Some(json!({ "error": e.to_string() }))),
        };
        let params = match params {
            Value::Object(m) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        self.cases.push(CaseResult { id, params, pass, witness, wall_time_ms });
    }
}

fn element_json(x: &CuntzElement) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

/// The default corpus with the expected fixed-point verdicts.
pub fn default_corpus(d: usize) -> Result<Vec<(String, CuntzElement, bool)>> {
    let t1 = theta(d, 1)?.element;
    let t2 = theta(d, 2)?.element;
    let sq = q_antisymmetric(d)?;
    Ok(vec![
        ("1".into(), CuntzElement::one(d), true),
        ("s1".into(), CuntzElement::s(d, 1)?, false),
        ("theta1".into(), t1.clone(), true),
        ("theta2".into(), t2, true),
        ("Sq".into(), sq.clone(), true),
        ("theta1*Sq".into(), t1.try_mul(&sq)?, true),
        ("theta1^2".into(), t1.try_mul(&t1)?, true),
    ])
}

/// Random elements of total word length at most 2; every third one is a
/// random combination of fixed elements so both verdicts occur.
fn random_elements(d: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CuntzElement>> {
    let t1 = theta(d, 1)?.element;
    let fixed_basis = [CuntzElement::one(d), t1.clone(), t1.try_mul(&t1)?];
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if k % 3 == 2 {
            let mut x = CuntzElement::zero(d);
            for b in &fixed_basis {
                if rng.gen_bool(0.7) {
                    x = x.try_add(&b.scale(&random_scalar(rng)))?;
                }
            }
            out.push(x);
        } else {
            let terms = rng.gen_range(1..=3);
            out.push(CuntzElement::random(d, 2, terms, rng));
        }
    }
    Ok(out)
}

fn check_d_range(suite: Suite, p: &SuiteParams) -> Result<(usize, usize)> {
    let (lo, hi) = p.d_range.unwrap_or_else(|| suite.default_d_range());
    if lo < 2 || lo > hi || hi > 4 {
        return Err(Error::InvalidParameter(format!(
            "d range {lo}..{hi} must satisfy 2 <= lo <= hi <= 4"
        )));
    }
    Ok((lo, hi))
}

/// Runs one suite; cases are returned sorted by id.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<CheckReport> {
    let suite: Suite = name.parse()?;
    let (lo, hi) = check_d_range(suite, params)?;
    let wordlen = params.wordlen.unwrap_or_else(|| suite.default_wordlen());
    if wordlen > 4 {
        return Err(Error::InvalidParameter(format!("word length {wordlen} exceeds 4")));
    }
    let strands = params.strands.unwrap_or(3);
    if !(1..=4).contains(&strands) {
        return Err(Error::InvalidParameter(format!("strands {strands} outside 1..=4")));
    }
    let random = params.random.unwrap_or_else(|| suite.default_random());
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut r = Runner { cases: Vec::new() };
    for d in lo..=hi {
        match suite {
            Suite::Relations => relations(&mut r, d),
            Suite::Ybe => ybe(&mut r, d),
            Suite::Braid => braid(&mut r, d, strands),
            Suite::Fixed => fixed(&mut r, d, false),
            Suite::Cofixed => fixed(&mut r, d, true),
            Suite::FixedEqCofixed => fixed_eq_cofixed(&mut r, d, random, &mut rng),
            Suite::Duality => duality(&mut r, d, wordlen, random, &mut rng),
            Suite::FrtConfluence => frt_confluence(&mut r, d, random, &mut rng),
            Suite::Qdet => qdet_suite(&mut r, d, wordlen),
            Suite::Antipode => antipode_suite(&mut r, d, wordlen),
            Suite::Rll => rll(&mut r, d, wordlen),
            Suite::Oracle => oracle(&mut r, d, random, &mut rng),
        }
    }
    r.cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(CheckReport { suite: suite.name().to_string(), cases: r.cases })
}

fn relations(r: &mut Runner, n: usize) {
    for depth in 1..=2 {
        r.case(format!("n={n}/depth={depth}"), json!({ "n": n, "depth": depth }), || {
            let rep = rep_relations_check(&LieData::sl(n)?, depth)?;
            let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            Ok(verdict(failed.is_empty(), || json!({ "failed_relations": failed })))
        });
    }
}

fn ybe(r: &mut Runner, d: usize) {
    r.case(format!("d={d}"), json!({ "d": d }), || {
        Ok(verdict(ybe_check(d)?, || json!({ "rmatrix": format!("{:?}", rmatrix(d).ok()) })))
    });
    r.case(format!("d={d}/perturbed-control"), json!({ "d": d, "expected": false }), || {
        Ok(verdict(!ybe_holds(&perturbed_rmatrix(d)?)?, || json!("perturbed R satisfies the YBE")))
    });
}

fn braid(r: &mut Runner, d: usize, strands: usize) {
    let thetas: Result<Vec<CuntzElement>> = (1..=strands).map(|i| theta(d, i).map(|t| t.element)).collect();
    let thetas = match thetas {
        Ok(t) => t,
        Err(e) => {
            r.case(format!("d={d}/construct"), json!({ "d": d }), || Err(e));
            return;
        }
    };
    for i in 1..strands {
        r.case(format!("d={d}/adjacent/{i},{}", i + 1), json!({ "d": d, "i": i }), || {
            let (a, b) = (&thetas[i - 1], &thetas[i]);
            let lhs = a.try_mul(b)?.try_mul(a)?;
            let rhs = b.try_mul(a)?.try_mul(b)?;
            Ok(verdict(lhs.equals(&rhs), || element_json(&lhs.try_sub(&rhs).unwrap_or(lhs.clone()).compact())))
        });
    }
    for i in 1..=strands {
        for j in i + 2..=strands {
            r.case(format!("d={d}/distant/{i},{j}"), json!({ "d": d, "i": i, "j": j }), || {
                let (a, b) = (&thetas[i - 1], &thetas[j - 1]);
                let lhs = a.try_mul(b)?;
                let rhs = b.try_mul(a)?;
                Ok(verdict(lhs.equals(&rhs), || element_json(&lhs.try_sub(&rhs).unwrap_or(lhs.clone()).compact())))
            });
        }
    }
    r.case(format!("d={d}/intertwiner"), json!({ "d": d }), || {
        Ok(verdict(intertwiner_check(d)?, || json!("sigma does not commute with (pi x pi) Delta")))
    });
    r.case(format!("d={d}/hecke"), json!({ "d": d }), || {
        let h = hecke_check(d)?;
        Ok(verdict(h.minimal_polynomial_ok, || json!({ "dim_q": h.dim_q, "dim_minus_q_inv": h.dim_minus_q_inv })))
    });
    r.case(format!("d={d}/eta-multiplicative"), json!({ "d": d }), || {
        let s = sigma(d)?;
        let rm = rmatrix(d)?;
        let lhs = eta(2, &s)?.try_mul(&eta(2, &rm)?)?;
        let rhs = eta(2, &s.mul(&rm)?)?;
        Ok(verdict(lhs.equals(&rhs), || element_json(&lhs.try_sub(&rhs).unwrap_or(lhs.clone()))))
    });
}

fn fixed(r: &mut Runner, d: usize, co: bool) {
    if !co {
        r.case(format!("d={d}/Sq-space-dimension"), json!({ "d": d, "expected": 1 }), || {
            let dim = q_antisymmetric_space(d)?.len();
            Ok(verdict(dim == 1, || json!({ "dimension": dim })))
        });
    }
    let corpus = match default_corpus(d) {
        Ok(c) => c,
        Err(e) => {
            r.case(format!("d={d}/corpus"), json!({ "d": d }), || Err(e));
            return;
        }
    };
    for (name, x, expected) in corpus {
        r.case(format!("d={d}/{name}"), json!({ "d": d, "element": name, "expected": expected }), || {
            let observed = if co { is_cofixed(&x)? } else { is_fixed(&LieData::sl(d)?, &x)? };
            Ok(verdict(observed == expected, || json!({ "observed": observed, "element": element_json(&x) })))
        });
    }
}

fn fixed_eq_cofixed(r: &mut Runner, d: usize, random: usize, rng: &mut ChaCha8Rng) {
    let mut items: Vec<(String, CuntzElement)> = match default_corpus(d) {
        Ok(c) => c.into_iter().map(|(n, x, _)| (n, x)).collect(),
        Err(e) => {
            r.case(format!("d={d}/corpus"), json!({ "d": d }), || Err(e));
            return;
        }
    };
    match random_elements(d, random, rng) {
        Ok(xs) => items.extend(xs.into_iter().enumerate().map(|(k, x)| (format!("random{k:03}"), x))),
        Err(e) => r.case(format!("d={d}/random"), json!({ "d": d }), || Err(e)),
    }
    for (name, x) in items {
        r.case(format!("d={d}/{name}"), json!({ "d": d, "element": x.to_string() }), || {
            let f = is_fixed(&LieData::sl(d)?, &x)?;
            let c = is_cofixed(&x)?;
            Ok(verdict(f == c, || json!({ "fixed": f, "cofixed": c, "element": element_json(&x) })))
        });
    }
}

fn duality(r: &mut Runner, d: usize, wordlen: usize, random: usize, rng: &mut ChaCha8Rng) {
    r.case(format!("d={d}/pairing-welldefined"), json!({ "d": d, "wordlen": wordlen }), || {
        let rep = pairing_welldefined(d, wordlen)?;
        Ok(verdict(rep.pass(), || json!({ "nonzero": rep.failures.iter().take(5).collect::<Vec<_>>() })))
    });
    r.case(format!("d={d}/pairing-perturbed-control"), json!({ "d": d, "expected": false }), || {
        Ok(verdict(perturbed_relation_detected(d, 2)?, || json!("a perturbed relation pairs to zero")))
    });
    let mut items: Vec<(String, CuntzElement)> = match default_corpus(d) {
        Ok(c) => c.into_iter().map(|(n, x, _)| (n, x)).collect(),
        Err(e) => {
            r.case(format!("d={d}/corpus"), json!({ "d": d }), || Err(e));
            return;
        }
    };
    let n_random = random.saturating_sub(items.len());
    match random_elements(d, n_random, rng) {
        Ok(xs) => items.extend(xs.into_iter().enumerate().map(|(k, x)| (format!("random{k:03}"), x))),
        Err(e) => r.case(format!("d={d}/random"), json!({ "d": d }), || Err(e)),
    }
    let words = match LieData::sl(d) {
        Ok(g) => g.words_up_to(wordlen),
        Err(_) => Vec::new(),
    };
    for (name, x) in items {
        r.case(
            format!("d={d}/{name}"),
            json!({ "d": d, "wordlen": wordlen, "words": words.len(), "element": x.to_string() }),
            || {
                let g = LieData::sl(d)?;
                let duals = dual_act_many(&words, &x)?;
                for (a, lhs) in words.iter().zip(duals) {
                    let rhs = act_word(&g, a, &x)?;
                    if !lhs.equals(&rhs) {
                        return Ok(Outcome::Fail(json!({
                            "word": a.to_string(),
                            "dual_act": element_json(&lhs),
                            "act": element_json(&rhs),
                        })));
                    }
                }
                Ok(Outcome::Pass)
            },
        );
    }
}

fn frt_confluence(r: &mut Runner, d: usize, random: usize, rng: &mut ChaCha8Rng) {
    r.case(format!("d={d}/overlaps"), json!({ "d": d }), || {
        let sys = frt_rules(d)?;
        let c = sys.confluence();
        Ok(verdict(c.confluent(), || json!({ "overlaps": c.overlaps, "failures": format!("{:?}", c.failures) })))
    });
    let mut triples = Vec::with_capacity(random);
    for _ in 0..random {
        let mut t = Vec::with_capacity(3);
        for _ in 0..3 {
            let n = rng.gen_range(1..=2);
            t.push(QMatElement::random(d, 2, n, rng));
        }
        triples.push(t);
    }
    r.case(format!("d={d}/associativity"), json!({ "d": d, "triples": random }), || {
        for t in triples {
            let (x, y, z) = (t[0].clone()?, t[1].clone()?, t[2].clone()?);
            let lhs = x.mul(&y)?.mul(&z)?;
            let rhs = x.mul(&y.mul(&z)?)?;
            if lhs != rhs {
                return Ok(Outcome::Fail(json!({
                    "x": x.to_string(), "y": y.to_string(), "z": z.to_string(),
                    "difference": serde_json::to_value(lhs.sub(&rhs)?).unwrap_or(Value::Null),
                })));
            }
        }
        Ok(Outcome::Pass)
    });
}

fn qdet_suite(r: &mut Runner, d: usize, wordlen: usize) {
    r.case(format!("d={d}/pairing-counit"), json!({ "d": d, "wordlen": wordlen }), || {
        let det = qdet(d)?;
        for a in LieData::sl(d)?.words_up_to(wordlen) {
            let v = pairing(&det, &a)?;
            if v != a.counit() {
                return Ok(Outcome::Fail(json!({ "word": a.to_string(), "value": v.to_string() })));
            }
        }
        Ok(Outcome::Pass)
    });
    r.case(format!("d={d}/reduces-to-one"), json!({ "d": d }), || {
        let red = sl_quotient_reduce(&qdet(d)?)?;
        Ok(verdict(red.is_one(), || json!({ "reduced": red.to_string() })))
    });
    r.case(format!("d={d}/central"), json!({ "d": d }), || {
        let det = qdet(d)?;
        for i in 1..=d as u8 {
            for j in 1..=d as u8 {
                let u = QMatElement::generator(d, i, j)?;
                if det.mul(&u)? != u.mul(&det)? {
                    return Ok(Outcome::Fail(json!({ "generator": format!("u{i}{j}") })));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    r.case(format!("d={d}/group-like"), json!({ "d": d }), || {
        let det = qdet(d)?;
        let words = LieData::sl(d)?.words_up_to(1);
        for a in &words {
            for b in &words {
                let ab = UqWord::new([a.factors(), b.factors()].concat());
                let lhs = pairing(&det, &ab)?;
                let rhs = pairing(&det, a)? * pairing(&det, b)?;
                if lhs != rhs {
                    return Ok(Outcome::Fail(json!({ "a": a.to_string(), "b": b.to_string() })));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    r.case(format!("d={d}/reduce-qdet-times-u11"), json!({ "d": d }), || {
        let u11 = QMatElement::generator(d, 1, 1)?;
        let red = reduced_mul(&qdet(d)?, &u11)?;
        Ok(verdict(red == u11, || json!({ "reduced": red.to_string() })))
    });
}

fn antipode_suite(r: &mut Runner, d: usize, wordlen: usize) {
    r.case(format!("d={d}/inverse"), json!({ "d": d }), || {
        Ok(verdict(antipode_check(d)?, || json!("U gamma0(U) or gamma0(U) U differs from the identity")))
    });
    r.case(format!("d={d}/star-s-coaction"), json!({ "d": d }), || {
        for i in 1..=d as u8 {
            for j in 1..=d as u8 {
                let p = coact(&CuntzElement::s_star(d, i)?)?.mul(&coact(&CuntzElement::s(d, j)?)?)?;
                let expect = if i == j { CuntzElement::one(d) } else { CuntzElement::zero(d) };
                if !p.equals(&CoactionElement::from_first_leg(&expect)) {
                    return Ok(Outcome::Fail(json!({ "i": i, "j": j, "product": p.to_string() })));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    let len = wordlen.min(2);
    r.case(format!("d={d}/pairing"), json!({ "d": d, "wordlen": len }), || {
        let g = LieData::sl(d)?;
        for a in g.words_up_to(len) {
            let m = antipode_rep_word(&g, &a)?;
            for i in 1..=d as u8 {
                for j in 1..=d as u8 {
                    let v = pairing(&antipode_u(d, i, j)?, &a)?;
                    if &v != m.get(i as usize - 1, j as usize - 1) {
                        return Ok(Outcome::Fail(json!({ "word": a.to_string(), "i": i, "j": j, "value": v.to_string() })));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });
}

fn rll(r: &mut Runner, d: usize, degree: usize) {
    let rep = match rll_check(d, degree) {
        Ok(rep) => rep,
        Err(e) => {
            r.case(format!("d={d}/rll"), json!({ "d": d }), || Err(e));
            return;
        }
    };
    for (k, (label, ok)) in rep.variants.iter().enumerate() {
        r.case(format!("d={d}/variant{k}"), json!({ "d": d, "degree": degree, "relation": label }), || {
            Ok(verdict(*ok, || json!({ "relation": label })))
        });
    }
    r.case(format!("d={d}/annihilates-frt-relations"), json!({ "d": d }), || {
        Ok(verdict(rep.annihilates_relations, || json!("some L functional is nonzero on an FRT relation")))
    });
    r.case(format!("d={d}/perturbed-control"), json!({ "d": d, "expected": false }), || {
        Ok(verdict(rep.control_rejected, || json!("perturbed R+ satisfies the RLL relation")))
    });
}

/// A random pair of symbolically equal elements, produced by a known identity.
fn random_equality(d: usize, rng: &mut ChaCha8Rng) -> Result<(String, CuntzElement, CuntzElement)> {
    let el = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=3);
        CuntzElement::random(d, 2, n, rng)
    };
    let (a, b, c) = (el(rng), el(rng), el(rng));
    Ok(match rng.gen_range(0..5) {
        0 => {
            let m = a.leveled().max_co_length() + rng.gen_range(0..=1);
            ("level".into(), a.clone(), a.level(m)?)
        }
        1 => ("compact".into(), a.clone(), a.compact()),
        2 => ("associativity".into(), a.try_mul(&b)?.try_mul(&c)?, a.try_mul(&b.try_mul(&c)?)?),
        3 => ("star-antihom".into(), a.try_mul(&b)?.star(), b.star().try_mul(&a.star())?),
        _ => ("distributivity".into(), a.try_mul(&b.try_add(&c)?)?, a.try_mul(&b)?.try_add(&a.try_mul(&c)?)?),
    })
}

fn oracle(r: &mut Runner, d: usize, random: usize, rng: &mut ChaCha8Rng) {
    r.case(format!("d={d}/representation-axioms"), json!({ "d": d }), || {
        let cfg = OracleConfig::new(d, (d as u128).pow(5), vec![num_rational::BigRational::new(3.into(), 2.into())])?;
        Ok(verdict(representation_axioms_hold(&cfg)?, || json!("digit-coding representation violates a Cuntz relation")))
    });
    let mut eqs = Vec::with_capacity(random);
    for _ in 0..random {
        let pts = OracleConfig::random_points(5, rng);
        eqs.push((random_equality(d, rng), pts));
    }
    r.case(format!("d={d}/equalities"), json!({ "d": d, "samples": random, "q_points": 5 }), || {
        for (eq, pts) in eqs {
            let (kind, x, y) = eq?;
            let diff = x.try_sub(&y)?;
            if !x.equals(&y) {
                return Ok(Outcome::Fail(json!({ "kind": kind, "symbolic": false, "difference": element_json(&diff) })));
            }
            let cfg = OracleConfig::for_element(&diff, pts)?;
            if !oracle_is_zero(&cfg, &diff)? {
                return Ok(Outcome::Fail(json!({ "kind": kind, "oracle": false, "difference": element_json(&diff) })));
            }
        }
        Ok(Outcome::Pass)
    });
    let n_neq = (random / 4).max(1);
    let mut neqs = Vec::with_capacity(n_neq);
    while neqs.len() < n_neq {
        let n = rng.gen_range(1..=3);
        let x = CuntzElement::random(d, 2, n, rng);
        if !x.is_zero() {
            neqs.push((x, OracleConfig::random_points(5, rng)));
        }
    }
    r.case(format!("d={d}/inequalities"), json!({ "d": d, "samples": n_neq, "q_points": 5 }), || {
        for (x, pts) in neqs {
            let cfg = OracleConfig::for_element(&x, pts)?;
            if oracle_is_zero(&cfg, &x)? {
                return Ok(Outcome::Fail(json!({ "element": element_json(&x) })));
            }
        }
        Ok(Outcome::Pass)
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_and_bad_ranges() {
        assert_eq!(run_suite("nope", &SuiteParams::default()), Err(Error::UnknownSuite("nope".into())));
        assert!(matches!(run_suite("ybe", &SuiteParams::default().with_d(3, 2)), Err(Error::InvalidParameter(_))));
        assert!(matches!(run_suite("ybe", &SuiteParams::default().with_d(1, 2)), Err(Error::InvalidParameter(_))));
        assert!(matches!(run_suite("braid", &SuiteParams::default().with_strands(9)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn ybe_report_is_sorted_and_passes() {
        let r = run_suite("ybe", &SuiteParams::default().with_d(2, 3)).unwrap();
        assert!(r.pass());
        assert!(r.cases.windows(2).all(|w| w[0].id < w[1].id));
        assert!(r.cases.iter().all(|c| c.witness.is_none()));
    }

    #[test]
    fn fixed_corpus_marks_s1_as_expected_negative() {
        let r = run_suite("fixed", &SuiteParams::default().with_d(2, 2)).unwrap();
        assert!(r.pass(), "{}", r.to_text());
        let s1 = r.cases.iter().find(|c| c.id == "d=2/s1").unwrap();
        assert_eq!(s1.params["expected"], json!(false));
    }

    #[test]
    fn failing_case_carries_witness() {
        let mut r = Runner { cases: Vec::new() };
        r.case("x".into(), json!({}), || Ok(Outcome::Fail(json!("w"))));
        r.case("y".into(), json!({}), || Err(Error::DivisionByZero));
        r.case("z".into(), json!({}), || Ok(Outcome::Pass));
        assert_eq!(r.cases[0].witness, Some(json!("w")));
        assert!(r.cases[1].witness.is_some() && !r.cases[1].pass);
        assert!(r.cases[2].witness.is_none() && r.cases[2].pass);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = run_suite("relations", &SuiteParams::default().with_d(2, 2)).unwrap();
        let back: CheckReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
