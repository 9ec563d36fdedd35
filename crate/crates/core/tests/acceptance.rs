//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use chromobruhat::arrangement::{betti_numbers, build_lattice, decreasing_chains, mobius_values, region_count};
use chromobruhat::bruhat;
use chromobruhat::chromatics::{acyclic_orientations, chromatic_identity_rhs, chromatic_polynomial, distance_poly, opy_chromatic};
use chromobruhat::patterns::{find_reduction_pair, reduction_step, PairKind};
use chromobruhat::phi::{distance_gaps, phi_table, verify_characterization, verify_going_down, verify_injective};
use chromobruhat::report::golden;
use chromobruhat::verify::{run_check, Check, VerifyOptions};
use chromobruhat::{IntPolynomial, Permutation, ReducedExpression};

use common::*;

fn within(start: Instant, budget: Duration) -> (bool, String) {
    let elapsed = start.elapsed();
    (elapsed <= budget, format!("{:.2?} of {:.0?}", elapsed, budget))
}

fn criterion_1() -> bool {
    let start = Instant::now();
    let w: Permutation = "4132".parse().unwrap();
    let expr = ReducedExpression::canonical(&w);
    let mut ok = expr.to_string() == "s1s2s3s2";
    ok &= bruhat::interval_size(&w) == 12 && region_count(&w) == 12;
    let lattice = build_lattice(&w, &expr).unwrap();
    ok &= lattice.len() == 10;
    let label = |a: &str, b: &str| {
        lattice.cover_label(lattice.index_of(&a.parse().unwrap()).unwrap(), lattice.index_of(&b.parse().unwrap()).unwrap())
    };
    let labels = [
        ("1|2|3|4", "12|3|4", 1),
        ("1|2|3|4", "13|2|4", 2),
        ("1|2|3|4", "14|2|3", 3),
        ("1|2|3|4", "1|2|34", 4),
        ("12|3|4", "123|4", 2),
        ("12|3|4", "124|3", 3),
        ("12|3|4", "12|34", 4),
        ("13|2|4", "123|4", 1),
        ("13|2|4", "134|2", 4),
        ("14|2|3", "124|3", 1),
        ("14|2|3", "134|2", 4),
        ("1|2|34", "12|34", 1),
        ("1|2|34", "134|2", 3),
        ("123|4", "1234", 4),
        ("124|3", "1234", 4),
        ("12|34", "1234", 3),
        ("134|2", "1234", 1),
    ];
    ok &= labels.iter().all(|&(a, b, l)| label(a, b) == Some(l));
    ok &= (0..lattice.len()).map(|a| lattice.covers(a).len()).sum::<usize>() == labels.len();
    let table: Vec<(String, String)> =
        phi_table(&w, &expr).unwrap().into_iter().map(|r| (r.word, r.image.to_string())).collect();
    let expected = [
        ("e", "4132"),
        ("t1", "1432"),
        ("t1t2", "1342"),
        ("t1t2t4", "1243"),
        ("t1t3", "1234"),
        ("t1t3t4", "1324"),
        ("t1t4", "1423"),
        ("t2", "3142"),
        ("t2t4", "2143"),
        ("t3", "2134"),
        ("t3t4", "3124"),
        ("t4", "4123"),
    ];
    ok &= table.len() == 12 && table.iter().zip(expected).all(|((a, b), (c, d))| a == c && b == d);
    let chi = chromatic_polynomial(&w.inversion_graph());
    ok &= chi == IntPolynomial::from_roots([1, 0, 1, 2]);
    let distance = distance_poly(&w);
    ok &= distance == IntPolynomial::new(vec![1, 4, 5, 2]);
    ok &= chromatic_identity_rhs(&w) == distance;
    ok &= golden().unwrap().pass;
    let (fast, time) = within(start, Duration::from_secs(1));
    report(1, "worked example for 4132", ok && fast, &time)
}

fn criterion_2() -> bool {
    let start = Instant::now();
    let mut ok = true;
    let mut total = 0;
    for n in 2..=7 {
        for w in Permutation::all(n).unwrap() {
            total += 1;
            if region_count(&w) > bruhat::interval_size(&w) {
                println!("    re > br at {w}");
                ok = false;
            }
        }
    }
    let (fast, time) = within(start, Duration::from_secs(120));
    report(2, "re(w) <= br(w) on S_2..S_7", ok && fast, &format!("{total} permutations, {time}"))
}

fn criterion_3() -> bool {
    let start = Instant::now();
    let mut ok = true;
    let mut equal = 0;
    for n in 1..=6 {
        for w in perms(n) {
            let p = to_perm(&w);
            let same = region_count(&p) == bruhat::interval_size(&p);
            equal += u64::from(same);
            if same != avoids_four(&w) {
                println!("    equality {same} disagrees with avoidance at {p}");
                ok = false;
            }
        }
    }
    let (fast, time) = within(start, Duration::from_secs(60));
    report(3, "re(w) = br(w) iff w avoids the four patterns, n <= 6", ok && fast, &format!("{equal} equalities, {time}"))
}

fn criterion_4() -> bool {
    let mut ok = true;
    for w in Permutation::all(6).unwrap() {
        ok &= verify_injective(&w, &ReducedExpression::canonical(&w)).unwrap();
    }
    let mut expressions = 0;
    for w in Permutation::all(4).unwrap() {
        for e in ReducedExpression::all_for(&w) {
            expressions += 1;
            ok &= verify_injective(&w, &e).unwrap();
        }
    }
    report(4, "chains map injectively", ok, &format!("S6 canonical, {expressions} expressions on S4"))
}

fn criterion_5() -> bool {
    let mut ok = true;
    let mut count = 0;
    for n in 1..=5 {
        for w in perms(n) {
            count += 1;
            let p = to_perm(&w);
            ok &= verify_going_down(&p, &ReducedExpression::canonical(&p)).unwrap();
            ok &= verify_characterization(&p);
            // oracle: distances over all of S_n against l'(u w^-1) = n - #cycles
            if n <= 4 {
                let equal = perms(n).iter().filter(|u| bruhat_leq(u, &w)).all(|u| {
                    distances_from(u)[&w] == n - cycle_count(&times_inverse(u, &w))
                });
                ok &= equal == avoids_four(&w);
                ok &= equal == distance_gaps(&p).is_empty();
            }
        }
    }
    report(5, "going-down and distance characterization, n <= 5", ok, &format!("{count} permutations"))
}

fn criterion_6() -> bool {
    let mut ok = true;
    let (mut light, mut heavy) = (0, 0);
    let br = |p: Option<Permutation>| p.map_or(1, |p| common::interval_size(&p.one_line()));
    let ao = |p: Option<Permutation>| p.map_or(1, |p| acyclic_orientations(&p.inversion_graph()));
    let chi = |p: Option<Permutation>| p.map_or_else(IntPolynomial::one, |p| chromatic_polynomial(&p.inversion_graph()));
    for w in perms(6).into_iter().filter(|w| avoids_four(w)) {
        let p = to_perm(&w);
        if p.is_identity() {
            continue;
        }
        let Some(hit) = find_reduction_pair(&p) else {
            println!("    no reduction pair for {p}");
            ok = false;
            continue;
        };
        let s = reduction_step(&hit.target, &hit.pair).unwrap();
        let pi = Some(hit.target);
        match hit.pair.kind {
            PairKind::Light => {
                light += 1;
                ok &= br(pi) == br(Some(s.rho)) + br(Some(s.minus_y));
                ok &= ao(pi) == ao(Some(s.rho)) + ao(Some(s.minus_y));
            }
            PairKind::Heavy => {
                heavy += 1;
                ok &= br(pi) + br(s.minus_xy) == br(Some(s.rho)) + br(s.minus_x) + br(Some(s.minus_y));
                ok &= ao(pi) + ao(s.minus_xy) == ao(Some(s.rho)) + ao(s.minus_x) + ao(Some(s.minus_y));
                let lhs = &chi(Some(s.rho)) - &chi(pi);
                let rhs = &(&chi(s.minus_x) + &chi(Some(s.minus_y))) - &chi(s.minus_xy).shift(1);
                ok &= lhs == rhs;
            }
        }
    }
    report(6, "reduction recurrences on avoiding S6", ok, &format!("{light} light, {heavy} heavy"))
}

fn criterion_7() -> bool {
    let mut ok = true;
    let mut smooth = 0;
    for w in perms(7).into_iter().filter(|w| is_smooth(w)) {
        smooth += 1;
        let p = to_perm(&w);
        ok &= opy_chromatic(&p).unwrap() == chromatic_polynomial(&p.inversion_graph());
    }
    report(7, "product formula for smooth S7", ok, &format!("{smooth} smooth permutations"))
}

fn criterion_8() -> bool {
    let mut ok = true;
    let mut checked = 0;
    for w in perms(5).into_iter().filter(|w| avoids_four(w)) {
        checked += 1;
        let p = to_perm(&w);
        let l = length(&w) as i64;
        let mut b = vec![0u64; l as usize + 1];
        for u in perms(5).iter().filter(|u| bruhat_leq(u, &w)) {
            b[length(u)] += 1;
        }
        let beta = betti_numbers(&build_lattice(&p, &ReducedExpression::canonical(&p)).unwrap()).unwrap();
        let bk = |k: i64| if (0..=l).contains(&k) { b[k as usize] } else { 0 };
        let betak = |i: i64| if i >= 0 { beta.get(i as usize).copied().unwrap_or(0) } else { 0 };
        for (step, offset, r_max) in [(1, 0, l), (2, 0, l / 2), (2, 1, (l - 1).div_euclid(2))] {
            let mut left_sum = 0;
            let mut right_sum = 0;
            for r in 0..=l {
                left_sum += bk(l - step * r - offset);
                right_sum += betak(step * r + offset);
                ok &= left_sum <= right_sum;
                if r == r_max {
                    ok &= left_sum == right_sum;
                }
            }
        }
    }
    report(8, "Betti partial-sum inequalities on avoiding S5", ok, &format!("{checked} permutations"))
}

fn criterion_9() -> bool {
    let mut ok = true;
    for w in perms(5) {
        let p = to_perm(&w);
        let lattice = build_lattice(&p, &ReducedExpression::canonical(&p)).unwrap();
        let zaslavsky: u64 = mobius_values(&lattice).unwrap().iter().sum();
        let chi = chromatic_polynomial(&p.inversion_graph());
        let sign = if w.len() % 2 == 0 { 1 } else { -1 };
        let by_chi = (sign * chi.eval(-1)) as u64;
        let brute = common::acyclic_orientations(w.len(), &inversion_edges(&w));
        ok &= zaslavsky == by_chi && by_chi == brute;
        ok &= decreasing_chains(&lattice).len() as u64 == brute;
    }
    let mut avoiding = 0;
    for w in perms(6).into_iter().filter(|w| avoids_four(w)) {
        avoiding += 1;
        ok &= bruhat::interval_size_by_permanent(&to_perm(&w)).unwrap() == common::interval_size(&w);
    }
    report(9, "independent counts agree", ok, &format!("S5 regions, {avoiding} avoiding S6 permanents"))
}

fn criterion_10() -> bool {
    let mut failed = Vec::new();
    for check in Check::ALL {
        let r = run_check(check, 5, &VerifyOptions::default()).unwrap();
        if !r.pass {
            failed.push(check.name());
        }
    }
    let detail = if failed.is_empty() { "all 12 checks on S5".to_string() } else { failed.join(", ") };
    report(10, "exhaustive property checks", failed.is_empty(), &detail)
}

fn main() {
    let criteria: [fn() -> bool; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let passed = criteria.iter().filter(|c| c()).count();
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
