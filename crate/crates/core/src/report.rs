//! Single-permutation analysis and the golden comparison for `w = 4132`.

use serde::Serialize;

use crate::arrangement::{betti_numbers, build_lattice, IntersectionLattice};
use crate::bruhat::{directed_distance, interval_size};
use crate::chromatics::{acyclic_orientations, chromatic_identity_rhs, chromatic_polynomial, distance_poly, IntPolynomial};
use crate::error::{Error, Result};
use crate::patterns::{find_reduction_pair, is_chromobruhatic, is_smooth, witness_below, ReductionHit};
use crate::perm::{Permutation, ReducedExpression};
use crate::phi::{phi_table, verify_surjective, PhiRow};
use crate::verify::{schubert_betti, SCHEMA_VERSION};

/// Largest `n` accepted by [`analyze`]; the chain table alone has up to `n!` rows.
pub const ANALYZE_CEILING: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoverRow {
    pub lower: String,
    pub upper: String,
    pub label: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LatticeSummary {
    pub hyperplanes: Vec<String>,
    pub elements: Vec<String>,
    pub covers: Vec<CoverRow>,
}

impl LatticeSummary {
    pub fn of(lattice: &IntersectionLattice) -> Self {
        let name = |k: usize| lattice.element(k).to_string();
        let covers = (0..lattice.len())
            .flat_map(|a| {
                lattice.covers(a).iter().map(move |c| CoverRow {
                    lower: name(a),
                    upper: name(c.upper),
                    label: c.label,
                })
            })
            .collect();
        LatticeSummary {
            hyperplanes: lattice.hyperplanes().iter().map(|t| t.to_string()).collect(),
            elements: lattice.elements().iter().map(|x| x.to_string()).collect(),
            covers,
        }
    }

    /// Elements one per line, a blank line, then `lower < upper [label]`.
    pub fn to_text(&self) -> String {
        let mut out: String = self.elements.iter().map(|e| format!("{e}\n")).collect();
        out.push('\n');
        for c in &self.covers {
            out += &format!("{} < {} [{}]\n", c.lower, c.upper, c.label);
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WitnessSummary {
    pub pattern: Permutation,
    pub positions: Vec<usize>,
    pub u: Permutation,
    /// `al(u, w)`.
    pub directed_distance: u32,
    /// `l'(u w^-1)`.
    pub absolute_length: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Analysis {
    pub schema_version: u32,
    pub permutation: Permutation,
    pub n: usize,
    pub length: usize,
    pub absolute_length: usize,
    pub inversions: Vec<(usize, usize)>,
    pub reduced_expression: String,
    pub reflections: Vec<String>,
    pub br: u64,
    pub re: u64,
    pub ao: u64,
    pub br_equals_re: bool,
    pub chromobruhatic: bool,
    pub smooth: bool,
    pub chromatic: IntPolynomial,
    pub distance: IntPolynomial,
    pub chromatic_identity: bool,
    pub betti: Vec<u64>,
    pub schubert_betti: Vec<u64>,
    pub opy_exponents: Option<Vec<usize>>,
    pub reduction_pair: Option<ReductionHit>,
    pub witness: Option<WitnessSummary>,
    pub lattice: LatticeSummary,
    pub chains: Vec<PhiRow>,
    /// Elements of `[e, w]` that no chain reaches.
    pub missed: Vec<Permutation>,
}

pub fn analyze(w: &Permutation) -> Result<Analysis> {
    if w.n() > ANALYZE_CEILING {
        return Err(Error::CeilingExceeded {
            check: "analyze".into(),
            n: w.n(),
            ceiling: ANALYZE_CEILING,
        });
    }
    let expr = ReducedExpression::canonical(w);
    let lattice = build_lattice(w, &expr)?;
    let betti = betti_numbers(&lattice)?;
    let chains = phi_table(w, &expr)?;
    let (_, missed) = verify_surjective(w, &expr)?;
    let graph = w.inversion_graph();
    let (br, re) = (interval_size(w), chains.len() as u64);
    let smooth = is_smooth(w);
    let witness = match witness_below(w) {
        Some(found) => Some(WitnessSummary {
            directed_distance: directed_distance(&found.u, w)?,
            absolute_length: found.u.compose(&w.inverse())?.absolute_length(),
            pattern: found.pattern,
            positions: found.positions,
            u: found.u,
        }),
        None => None,
    };
    let distance = distance_poly(w);
    Ok(Analysis {
        schema_version: SCHEMA_VERSION,
        permutation: *w,
        n: w.n(),
        length: w.length(),
        absolute_length: w.absolute_length(),
        inversions: w.inversions(),
        reduced_expression: expr.to_string(),
        reflections: expr.reflection_sequence()?.iter().map(|t| t.to_string()).collect(),
        br,
        re,
        ao: acyclic_orientations(&graph),
        br_equals_re: br == re,
        chromobruhatic: is_chromobruhatic(w),
        smooth,
        chromatic: chromatic_polynomial(&graph),
        chromatic_identity: distance == chromatic_identity_rhs(w),
        distance,
        betti,
        schubert_betti: schubert_betti(w),
        opy_exponents: smooth.then(|| w.opy_exponents()),
        reduction_pair: find_reduction_pair(w),
        witness,
        lattice: LatticeSummary::of(&lattice),
        chains,
        missed,
    })
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl Analysis {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: String| out += &format!("{key:<20}{value}\n");
        line("permutation", self.permutation.to_string());
        line("length", self.length.to_string());
        line("absolute length", self.absolute_length.to_string());
        line(
            "inversions",
            self.inversions.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" "),
        );
        line("reduced expression", self.reduced_expression.clone());
        line("reflections", join(&self.reflections, " "));
        line("br", self.br.to_string());
        line("re", self.re.to_string());
        line("ao", self.ao.to_string());
        line("br = re", if self.br_equals_re { "yes".into() } else { "NO".into() });
        line("chromobruhatic", self.chromobruhatic.to_string());
        line("smooth", self.smooth.to_string());
        line("chromatic", self.chromatic.render("t"));
        line("distance", self.distance.render("q"));
        line("chromatic identity", self.chromatic_identity.to_string());
        line("betti (lattice)", join(&self.betti, " "));
        line("betti (schubert)", join(&self.schubert_betti, " "));
        if let Some(e) = &self.opy_exponents {
            line("exponents", join(e, " "));
        }
        match &self.reduction_pair {
            Some(hit) => line(
                "reduction pair",
                format!(
                    "{:?} in {} = {}: x = ({},{}), y = ({},{})",
                    hit.pair.kind, hit.symmetry, hit.target, hit.pair.x.row, hit.pair.x.col, hit.pair.y.row, hit.pair.y.col
                ),
            ),
            None => line("reduction pair", "none".into()),
        }
        if let Some(wit) = &self.witness {
            line(
                "witness",
                format!(
                    "u = {} from {} at {:?}: al(u,w) = {}, l'(uw^-1) = {}",
                    wit.u, wit.pattern, wit.positions, wit.directed_distance, wit.absolute_length
                ),
            );
        }
        out += "\nlattice\n";
        out += &self.lattice.to_text();
        out += "\nchains\n";
        for row in &self.chains {
            out += &row.to_line();
            out.push('\n');
        }
        if !self.missed.is_empty() {
            out += &format!("\nmissed {}\n", join(&self.missed, " "));
        }
        out
    }
}

const LATTICE_FIXTURE: &str = include_str!("../fixtures/lattice_4132.txt");
const CHAINS_FIXTURE: &str = include_str!("../fixtures/chains_4132.txt");
const DISTANCE_FIXTURE: &str = include_str!("../fixtures/distance_4132.txt");
const CHROMATIC_FIXTURE: &str = include_str!("../fixtures/chromatic_4132.txt");

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GoldenItem {
    pub name: String,
    pub pass: bool,
    /// Mismatching lines, empty on success.
    pub diff: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GoldenReport {
    pub schema_version: u32,
    pub permutation: Permutation,
    pub pass: bool,
    pub items: Vec<GoldenItem>,
}

impl GoldenReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out += &format!("{} {}\n", if item.pass { "PASS" } else { "FAIL" }, item.name);
            for d in &item.diff {
                out += &format!("    {d}\n");
            }
        }
        out += if self.pass { "golden: PASS\n" } else { "golden: FAIL\n" };
        out
    }
}

/// Line-by-line comparison.
pub fn line_diff(expected: &str, actual: &str) -> Vec<String> {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    let mut out = Vec::new();
    for k in 0..e.len().max(a.len()) {
        match (e.get(k), a.get(k)) {
            (Some(x), Some(y)) if x == y => {}
            (Some(x), Some(y)) => out.push(format!("line {}: expected `{x}`, got `{y}`", k + 1)),
            (Some(x), None) => out.push(format!("line {}: missing `{x}`", k + 1)),
            (None, Some(y)) => out.push(format!("line {}: unexpected `{y}`", k + 1)),
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Parses a product of linear factors such as `(t-1)t(t+2)`.
pub fn parse_factored(text: &str) -> Result<IntPolynomial> {
    let bad = |tok: &str| Error::Parse { token: tok.to_string() };
    let mut poly = IntPolynomial::one();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(tail) = rest.strip_prefix('t') {
            poly = poly.mul_linear(0);
            rest = tail;
        } else if let Some(tail) = rest.strip_prefix("(t") {
            let close = tail.find(')').ok_or_else(|| bad(rest))?;
            let constant: i64 = tail[..close].parse().map_err(|_| bad(&tail[..close]))?;
            poly = poly.mul_linear(-constant);
            rest = &tail[close + 1..];
        } else {
            return Err(bad(rest));
        }
    }
    Ok(poly)
}

fn item(name: &str, expected: &str, actual: &str) -> GoldenItem {
    let diff = line_diff(expected, actual);
    GoldenItem {
        name: name.to_string(),
        pass: diff.is_empty(),
        diff,
    }
}

/// Regenerates the worked example for `4132` and compares it byte for byte
/// with the embedded fixtures.
pub fn golden() -> Result<GoldenReport> {
    let w: Permutation = "4132".parse()?;
    let expr = ReducedExpression::canonical(&w);
    let lattice = build_lattice(&w, &expr)?;
    let table: String = phi_table(&w, &expr)?.iter().map(|r| r.to_line() + "\n").collect();
    let chi = chromatic_polynomial(&w.inversion_graph());
    let distance = distance_poly(&w);
    let mut chromatic_lines = CHROMATIC_FIXTURE.lines();
    let factored = parse_factored(chromatic_lines.next().unwrap_or_default())?;

    let count = |name: &str, expected: u64, actual: u64| item(name, &expected.to_string(), &actual.to_string());
    let items = vec![
        item("lattice", LATTICE_FIXTURE, &LatticeSummary::of(&lattice).to_text()),
        count("lattice elements", 10, lattice.len() as u64),
        item("chain table", CHAINS_FIXTURE, &table),
        count("chain rows", 12, table.lines().count() as u64),
        count("br", 12, interval_size(&w)),
        count("re", 12, crate::arrangement::region_count(&w)),
        item("distance polynomial", DISTANCE_FIXTURE.trim_end(), &distance.render("q")),
        item("chromatic polynomial", chromatic_lines.next().unwrap_or_default(), &chi.render("t")),
        item("chromatic factorization", &factored.render("t"), &chi.render("t")),
        item("chromatic identity", &distance.render("q"), &chromatic_identity_rhs(&w).render("q")),
    ];
    Ok(GoldenReport {
        schema_version: SCHEMA_VERSION,
        permutation: w,
        pass: items.iter().all(|i| i.pass),
        items,
    })
}
