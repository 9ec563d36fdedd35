//! Exhaustive verification of the structural properties over all of `S_n`.
//!
//! Each check runs a per-permutation test in parallel and merges results in
//! lexicographic order, so reports do not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{betti_numbers, build_lattice, region_count};
use crate::bruhat::{self, bruhat_leq_with, interval_size, Criterion};
use crate::chromatics::{acyclic_orientations, chromatic_identity_holds, chromatic_polynomial, opy_chromatic, IntPolynomial};
use crate::error::{Error, Result};
use crate::patterns::{find_reduction_pair, is_chromobruhatic, is_smooth, reduction_step, PairKind};
use crate::perm::{Permutation, ReducedExpression};
use crate::phi::{injective, surjective, verify_characterization, verify_going_down, PhiMap};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Check {
    ConjectureA,
    ConjectureB,
    PhiInjective,
    PhiSurjectiveIff,
    GoingDown,
    Characterization,
    Betti,
    ChromaticIdentity,
    Opy,
    Recurrences,
    HullVsStandard,
    WeakChain,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::ConjectureA,
        Check::ConjectureB,
        Check::PhiInjective,
        Check::PhiSurjectiveIff,
        Check::GoingDown,
        Check::Characterization,
        Check::Betti,
        Check::ChromaticIdentity,
        Check::Opy,
        Check::Recurrences,
        Check::HullVsStandard,
        Check::WeakChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ConjectureA => "conjectureA",
            Check::ConjectureB => "conjectureB",
            Check::PhiInjective => "phi-injective",
            Check::PhiSurjectiveIff => "phi-surjective-iff",
            Check::GoingDown => "going-down",
            Check::Characterization => "characterization",
            Check::Betti => "betti",
            Check::ChromaticIdentity => "chromatic-identity",
            Check::Opy => "opy",
            Check::Recurrences => "recurrences",
            Check::HullVsStandard => "hull-vs-standard",
            Check::WeakChain => "weak-chain",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Check::ConjectureA => "re(w) <= br(w)",
            Check::ConjectureB => "re(w) = br(w) iff w avoids 4231, 35142, 42513, 351624",
            Check::PhiInjective => "chains map injectively into [e, w]",
            Check::PhiSurjectiveIff => "chains cover [e, w] iff w avoids the four patterns",
            Check::GoingDown => "partial products descend from w and images sit at distance m",
            Check::Characterization => "al(u, w) = l'(u w^-1) for all u <= w iff w avoids the four patterns",
            Check::Betti => "partial sums of Schubert Betti numbers are bounded by arrangement Betti numbers",
            Check::ChromaticIdentity => "distance polynomial equals (-q)^n chi(-1/q) iff w avoids the four patterns",
            Check::Opy => "chi equals prod (t - e_i) for smooth w",
            Check::Recurrences => "br and ao satisfy the reduction-pair recurrences",
            Check::HullVsStandard => "right-hull containment decides Bruhat order below avoiding w",
            Check::WeakChain => "avoiding w reach e through avoiding two-sided weak covers",
        }
    }

    /// Largest supported `n`. Checks that enumerate intervals stop at 6; the
    /// counting checks go to 8.
    pub fn ceiling(self, expr: ExprRule) -> usize {
        match self {
            Check::ConjectureA | Check::ConjectureB | Check::Opy => 8,
            Check::Recurrences | Check::WeakChain => 7,
            Check::PhiInjective if expr == ExprRule::All => 5,
            _ => 6,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Which reduced expressions feed the lattice constructions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExprRule {
    #[default]
    Canonical,
    All,
}

impl ExprRule {
    fn expressions(self, w: &Permutation) -> Vec<ReducedExpression> {
        match self {
            ExprRule::Canonical => vec![ReducedExpression::canonical(w)],
            ExprRule::All => ReducedExpression::all_for(w),
        }
    }
}

impl fmt::Display for ExprRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExprRule::Canonical => "canonical",
            ExprRule::All => "all",
        })
    }
}

impl FromStr for ExprRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(ExprRule::Canonical),
            "all" => Ok(ExprRule::All),
            _ => Err(Error::Parse { token: s.to_string() }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub expr: ExprRule,
    /// `None` keeps every counterexample.
    pub counterexample_cap: Option<usize>,
    pub timing: bool,
    /// Eager invariant checks on every chain image.
    pub phi_checks: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: None,
            expr: ExprRule::Canonical,
            counterexample_cap: Some(DEFAULT_COUNTEREXAMPLE_CAP),
            timing: false,
            phi_checks: true,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub w: Permutation,
    pub detail: String,
}

/// Outcome of one exhaustive check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub check: String,
    pub description: String,
    pub n: usize,
    pub expr: ExprRule,
    pub population: u64,
    pub pass: bool,
    /// Number of failing permutations, before the cap.
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Set when an internal invariant broke and the run stopped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aborted: Option<String>,
    /// Counters summed over the population.
    pub payload: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} n={} expr={}: {} ({} permutations, {} failures)\n  {}\n",
            self.check,
            self.n,
            self.expr,
            if self.pass { "PASS" } else { "FAIL" },
            self.population,
            self.failures,
            self.description
        );
        for (key, value) in &self.payload {
            out += &format!("  {key} = {value}\n");
        }
        if let Some(reason) = &self.aborted {
            out += &format!("  aborted: {reason}\n");
        }
        for c in &self.counterexamples {
            out += &format!("  counterexample {}: {}\n", c.w, c.detail);
        }
        if let Some(ms) = self.elapsed_ms {
            out += &format!("  elapsed {ms} ms\n");
        }
        out
    }
}

/// Result of testing one permutation.
#[derive(Default)]
struct Outcome {
    failure: Option<String>,
    counters: Vec<(&'static str, u64)>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome::default()
    }

    fn fail_if(bad: bool, detail: impl FnOnce() -> String) -> Self {
        Outcome {
            failure: bad.then(detail),
            counters: Vec::new(),
        }
    }

    fn count(mut self, key: &'static str, value: u64) -> Self {
        self.counters.push((key, value));
        self
    }
}

/// Runs `check` over all of `S_n`.
pub fn run_check(check: Check, n: usize, options: &VerifyOptions) -> Result<VerifyReport> {
    let ceiling = check.ceiling(options.expr);
    if n > ceiling {
        return Err(Error::CeilingExceeded {
            check: check.name().to_string(),
            n,
            ceiling,
        });
    }
    let population: Vec<Permutation> = Permutation::all(n)?.collect();
    let start = Instant::now();
    let sweep = || -> Vec<Result<Outcome>> { population.par_iter().map(|w| test_one(check, w, options)).collect() };
    let results = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvariantViolation(e.to_string()))?
            .install(sweep),
        None => sweep(),
    };

    let mut payload = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut failures = 0u64;
    let mut aborted = None;
    for (w, result) in population.iter().zip(results) {
        match result {
            Ok(outcome) => {
                for (key, value) in outcome.counters {
                    *payload.entry(key.to_string()).or_insert(0) += value;
                }
                if let Some(detail) = outcome.failure {
                    failures += 1;
                    if options.counterexample_cap.map_or(true, |cap| counterexamples.len() < cap) {
                        counterexamples.push(Counterexample { w: *w, detail });
                    }
                }
            }
            Err(e) => {
                failures += 1;
                counterexamples.push(Counterexample {
                    w: *w,
                    detail: e.to_string(),
                });
                aborted = Some(format!("{w}: {e}"));
                break;
            }
        }
    }
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        check: check.name().to_string(),
        description: check.description().to_string(),
        n,
        expr: options.expr,
        population: population.len() as u64,
        pass: failures == 0,
        failures,
        counterexamples,
        aborted,
        payload,
        elapsed_ms: options.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn test_one(check: Check, w: &Permutation, options: &VerifyOptions) -> Result<Outcome> {
    let expr = options.expr;
    let map = |e: &ReducedExpression| PhiMap::new(w, e).map(|m| m.with_checks(options.phi_checks));
    match check {
        Check::ConjectureA => {
            let (re, br) = (region_count(w), interval_size(w));
            Ok(Outcome::fail_if(re > br, || format!("re = {re} > br = {br}")).count("equalities", u64::from(re == br)))
        }
        Check::ConjectureB => {
            let (re, br) = (region_count(w), interval_size(w));
            let avoiding = is_chromobruhatic(w);
            Ok(Outcome::fail_if((re == br) != avoiding, || format!("re = {re}, br = {br}, avoiding = {avoiding}"))
                .count("avoiding", u64::from(avoiding)))
        }
        Check::PhiInjective => {
            let expressions = expr.expressions(w);
            for e in &expressions {
                if !injective(&map(e)?)? {
                    return Err(Error::InvariantViolation(format!("two chains share an image under {e}")));
                }
            }
            Ok(Outcome::pass().count("expressions", expressions.len() as u64))
        }
        Check::PhiSurjectiveIff => {
            let avoiding = is_chromobruhatic(w);
            let mut missed_total = 0;
            let mut mismatch = None;
            for e in expr.expressions(w) {
                let (surjective, missed) = surjective(&map(&e)?)?;
                missed_total += missed.len() as u64;
                if surjective != avoiding && mismatch.is_none() {
                    mismatch = Some(format!("surjective = {surjective} under {e}, avoiding = {avoiding}"));
                }
            }
            Ok(Outcome {
                failure: mismatch,
                counters: vec![("avoiding", u64::from(avoiding)), ("missed", missed_total)],
            })
        }
        Check::GoingDown => {
            for e in expr.expressions(w) {
                if !verify_going_down(w, &e)? {
                    return Ok(Outcome::fail_if(true, || format!("a chain under {e} does not descend")));
                }
            }
            Ok(Outcome::pass())
        }
        Check::Characterization => {
            let ok = verify_characterization(w);
            Ok(Outcome::fail_if(!ok, || "distance equality disagrees with pattern avoidance".into())
                .count("avoiding", u64::from(is_chromobruhatic(w))))
        }
        Check::Betti => {
            if !is_chromobruhatic(w) {
                return Ok(Outcome::pass().count("skipped", 1));
            }
            let failure = betti_failure(w, expr)?;
            Ok(Outcome {
                failure,
                counters: vec![("checked", 1)],
            })
        }
        Check::ChromaticIdentity => {
            let holds = chromatic_identity_holds(w);
            let avoiding = is_chromobruhatic(w);
            Ok(Outcome::fail_if(holds != avoiding, || format!("identity holds = {holds}, avoiding = {avoiding}"))
                .count("holds", u64::from(holds)))
        }
        Check::Opy => {
            if !is_smooth(w) {
                return Ok(Outcome::pass().count("skipped", 1));
            }
            let (formula, chi) = (opy_chromatic(w)?, chromatic_polynomial(&w.inversion_graph()));
            Ok(Outcome::fail_if(formula != chi, || format!("product {formula} but chi = {chi}")).count("smooth", 1))
        }
        Check::Recurrences => recurrence_outcome(w),
        Check::HullVsStandard => {
            if !is_chromobruhatic(w) {
                return Ok(Outcome::pass().count("skipped", 1));
            }
            for u in Permutation::all(w.n())? {
                let by_hull = bruhat_leq_with(&u, w, Criterion::RightHull)?;
                if by_hull != bruhat_leq_with(&u, w, Criterion::RankMatrix)? {
                    return Ok(Outcome::fail_if(true, || format!("criteria disagree at u = {u}")));
                }
            }
            let permanent = bruhat::interval_size_by_permanent(w)?;
            let br = bruhat::interval_size_by_filter(w);
            Ok(Outcome::fail_if(permanent != br, || format!("hull permanent {permanent} but br = {br}"))
                .count("pairs", (1..=w.n() as u64).product()))
        }
        Check::WeakChain => {
            if !is_chromobruhatic(w) {
                return Ok(Outcome::pass().count("skipped", 1));
            }
            let chain = bruhat::weak_chain_to_identity(w, is_chromobruhatic);
            Ok(Outcome::fail_if(chain.is_none(), || "no chain of avoiding weak covers reaches e".into()))
        }
    }
}

/// Betti numbers of the Schubert variety: `b[k] = |{u <= w : l(u) = k}|`.
pub fn schubert_betti(w: &Permutation) -> Vec<u64> {
    let mut b = vec![0u64; w.length() + 1];
    for u in bruhat::interval(w) {
        b[u.length()] += 1;
    }
    b
}

/// The three partial-sum inequalities at every `r`, with equality at the
/// largest `r` of each family. Returns the first violation.
pub fn betti_inequalities(schubert: &[u64], arrangement: &[u64]) -> Option<String> {
    let l = schubert.len() as i64 - 1;
    let b = |k: i64| if (0..=l).contains(&k) { schubert[k as usize] } else { 0 };
    let beta = |i: i64| arrangement.get(i as usize).copied().unwrap_or(0);
    // (family, step, offset, maximal r)
    let families: [(&str, i64, i64, i64); 3] = [("(1)", 1, 0, l), ("(2)", 2, 0, l / 2), ("(3)", 2, 1, (l - 1).div_euclid(2))];
    for (name, step, offset, r_max) in families {
        let (mut left, mut right) = (0u64, 0u64);
        for r in 0..=l.max(0) {
            left += b(l - step * r - offset);
            right += beta(step * r + offset);
            if left > right {
                return Some(format!("inequality {name} fails at r = {r}: {left} > {right}"));
            }
            if r == r_max && left != right {
                return Some(format!("inequality {name} is strict at maximal r = {r}: {left} < {right}"));
            }
        }
    }
    None
}

fn betti_failure(w: &Permutation, expr: ExprRule) -> Result<Option<String>> {
    let schubert = schubert_betti(w);
    for e in expr.expressions(w) {
        let arrangement = betti_numbers(&build_lattice(w, &e)?)?;
        if let Some(problem) = betti_inequalities(&schubert, &arrangement) {
            return Ok(Some(problem));
        }
    }
    Ok(None)
}

fn chi_or_one(p: Option<Permutation>) -> IntPolynomial {
    p.map_or_else(IntPolynomial::one, |p| chromatic_polynomial(&p.inversion_graph()))
}

fn recurrence_outcome(w: &Permutation) -> Result<Outcome> {
    if w.is_identity() || !is_chromobruhatic(w) {
        return Ok(Outcome::pass().count("skipped", 1));
    }
    let Some(hit) = find_reduction_pair(w) else {
        return Ok(Outcome::fail_if(true, || "no reduction pair".into()));
    };
    let step = reduction_step(&hit.target, &hit.pair)?;
    let br = |p: Option<Permutation>| p.map_or(1, |p| interval_size(&p));
    let ao = |p: Option<Permutation>| p.map_or(1, |p| acyclic_orientations(&p.inversion_graph()));
    let pi = Some(hit.target);
    let (rho, minus_y) = (Some(step.rho), Some(step.minus_y));
    let mut problems = Vec::new();
    match hit.pair.kind {
        PairKind::Light => {
            if br(pi) != br(rho) + br(minus_y) {
                problems.push("light br recurrence");
            }
            if ao(pi) != ao(rho) + ao(minus_y) {
                problems.push("light ao recurrence");
            }
        }
        PairKind::Heavy => {
            let (minus_x, minus_xy) = (step.minus_x, step.minus_xy);
            if br(pi) + br(minus_xy) != br(rho) + br(minus_x) + br(minus_y) {
                problems.push("heavy br recurrence");
            }
            if ao(pi) + ao(minus_xy) != ao(rho) + ao(minus_x) + ao(minus_y) {
                problems.push("heavy ao recurrence");
            }
            let lhs = &chi_or_one(rho) - &chi_or_one(pi);
            let rhs = &(&chi_or_one(minus_x) + &chi_or_one(minus_y)) - &chi_or_one(minus_xy).shift(1);
            if lhs != rhs {
                problems.push("heavy colouring identity");
            }
        }
    }
    if !is_chromobruhatic(&step.rho) {
        problems.push("reduction left the class");
    }
    let kind = match hit.pair.kind {
        PairKind::Light => "light",
        PairKind::Heavy => "heavy",
    };
    Ok(Outcome {
        failure: (!problems.is_empty()).then(|| format!("{} on {}: {}", kind, hit.symmetry, problems.join(", "))),
        counters: vec![(kind, 1)],
    })
}
