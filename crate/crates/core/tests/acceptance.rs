// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Thresholds and tolerances are pinned below.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use hedra_core::graphon::{self, Graphon};
use hedra_core::hypercore::combinatorics::{binom, enumerate_injections, for_each_subset};
use hedra_core::hypercore::{read_hgr, write_hgr, Color, Hypergraph, Morphism, Palette};
use hedra_core::obstructions::{self as obs, CorruptionSpec, SearchBudget};
use hedra_core::properties::builtins::{self, is_complete_bipartite, is_total_order};
use hedra_core::properties::{
    enumerate_hypergraphs, find_monochromatic, local_satisfaction, random_hypergraph, read_hgp, write_hgp, Mode,
    Property,
};
use hedra_core::repairs::{repair_bipartite, repair_total_order, OrderRepair};
use hedra_core::rng;
use hedra_core::rules::{
    anchor_order, bipartite_delete, identity_copy, random_hash, read_hgt, verify_entailment_upto, write_hgt,
    EntailmentMode, LazyModification, LocalRule, TableRule,
};

type Verdict = (bool, String);
type Criterion = (&'static str, fn() -> Verdict);

fn digraph() -> Arc<Palette> {
    Arc::new(Palette::digraph())
}

fn test_palettes() -> Vec<Arc<Palette>> {
    vec![
        digraph(),
        Arc::new(Palette::uniform(3, 2).unwrap()),
        Arc::new(obs::leq3_palette()),
        Arc::new(Palette::new(vec![2, 3]).unwrap()),
    ]
}

fn c1_functoriality() -> Verdict {
    let mut failures = 0u64;
    let mut checks = 0u64;
    let mut r = rng::rng(1);
    for pal in test_palettes() {
        for n in 1..=6 {
            for _ in 0..2 {
                let g = random_hypergraph(&pal, n, &mut r);
                // pullback composition
                for m in 0..=n.min(4) {
                    for phi in enumerate_injections(m, n) {
                        let phi = Morphism::new(phi, n).unwrap();
                        let gp = g.pullback(&phi).unwrap();
                        for l in 0..=m.min(3) {
                            for psi in enumerate_injections(l, m) {
                                let psi = Morphism::new(psi, m).unwrap();
                                let lhs = gp.pullback(&psi).unwrap();
                                let rhs = g.pullback(&phi.compose(&psi).unwrap()).unwrap();
                                checks += 1;
                                failures += (lhs != rhs) as u64;
                            }
                        }
                    }
                }
                // restriction nesting
                for s in 0..=n {
                    for_each_subset(n, s, |outer| {
                        let h = g.restrict(outer).unwrap();
                        for t in 0..=s {
                            for_each_subset(s, t, |inner| {
                                let direct: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
                                checks += 1;
                                failures += (h.restrict(inner).unwrap() != g.restrict(&direct).unwrap()) as u64;
                            });
                        }
                    });
                }
            }
        }
    }
    // soundness and heredity over every digraph on at most 4 vertices
    let hereditary: Vec<Property> = ["total-order", "triangle-free", "bipartite", "complete-bipartite", "complete", "undirected"]
        .iter()
        .map(|n| builtins::by_name(n).unwrap())
        .collect();
    let tetra = {
        let mut t = Hypergraph::new_undirected(Palette::uniform(3, 2).unwrap(), 4);
        for_each_subset(4, 3, |s| t.set_subset(s, 1).unwrap());
        Property::forbidden("no-tetrahedron", Palette::uniform(3, 2).unwrap(), vec![t]).unwrap()
    };
    let digraphs = |n: usize| -> Vec<Hypergraph> { enumerate_hypergraphs(digraph(), n, 1 << 12).unwrap().collect() };
    let undirected3 = |n: usize| -> Vec<Hypergraph> {
        let mut triples = vec![];
        for_each_subset(n, 3, |s| triples.push(s.to_vec()));
        (0u32..1 << triples.len())
            .map(|bits| {
                let mut g = Hypergraph::new_undirected(Palette::uniform(3, 2).unwrap(), n);
                for (i, t) in triples.iter().enumerate() {
                    g.set_subset(t, (bits >> i & 1) as Color).unwrap();
                }
                g
            })
            .collect()
    };
    let mut audits: Vec<(Property, Vec<Hypergraph>)> = vec![];
    for p in hereditary {
        audits.push((p, (1..=4).flat_map(digraphs).collect()));
    }
    audits.push((tetra, (1..=5).flat_map(undirected3).collect()));
    for (p, graphs) in &audits {
        for g in graphs {
            if !p.obeys(g).unwrap() {
                continue;
            }
            let n = g.n();
            for size in 1..=n {
                let s = local_satisfaction(p, g, size, Mode::Exact).unwrap();
                checks += 1;
                failures += (s.fraction != 1.0) as u64;
                for_each_subset(n, size, |w| {
                    checks += 1;
                    failures += !p.obeys(&g.restrict(w).unwrap()).unwrap() as u64;
                });
            }
        }
    }
    (failures == 0, format!("{checks} checks, {failures} failures"))
}

fn c2_ramsey() -> Verdict {
    let mut missing = 0;
    for bits in 0u32..1 << 15 {
        let mut g = Hypergraph::new_undirected(Palette::digraph(), 6);
        let mut k = 0;
        for v in 1..6 {
            for u in 0..v {
                g.set_subset(&[u, v], (bits >> k & 1) as Color).unwrap();
                k += 1;
            }
        }
        if find_monochromatic(&g, 3).unwrap().is_none() {
            missing += 1;
        }
    }
    let mut pentagon = Hypergraph::new_undirected(Palette::digraph(), 5);
    for i in 0..5 {
        pentagon.set_subset(&[i, (i + 1) % 5], 1).unwrap();
    }
    let pent = find_monochromatic(&pentagon, 3).unwrap();
    (
        missing == 0 && pent.is_none(),
        format!("K6 colorings without a monochromatic triangle: {missing} of 32768; pentagon: {pent:?}"),
    )
}

fn c3_entailment() -> Verdict {
    let bip = builtins::by_name("bipartite").unwrap();
    let delete = verify_entailment_upto(&bipartite_delete(), &bip, 4, EntailmentMode::exhaustive()).unwrap();
    let tf = builtins::by_name("triangle-free").unwrap();
    let copy = verify_entailment_upto(&identity_copy(digraph(), 0), &tf, 4, EntailmentMode::exhaustive()).unwrap();
    let size = copy.as_ref().map(|c| c.v_size);
    (
        delete.is_none() && size == Some(3),
        format!("bipartite-delete counterexample: {}; identity-copy fails at |V| = {size:?}", delete.is_some()),
    )
}

const C4_SEEDS: u64 = 100;
const C4_N: usize = 200;
const C4_FLIP: f64 = 0.05;
const C4_A: usize = 30;
const C4_DIST: f64 = 0.1;
const C4_DIST_SEEDS: usize = 95;

fn planted_bipartite(n: usize, flip: f64, seed: u64) -> (Vec<bool>, Hypergraph) {
    use rand::Rng;
    let mut r = rng::stream(seed, 0);
    let side: Vec<bool> = (0..n).map(|_| r.gen()).collect();
    let mut g = Hypergraph::new_undirected(Palette::digraph(), n);
    for v in 1..n {
        for u in 0..v {
            if side[u] != side[v] {
                g.set_subset(&[u, v], 1).unwrap();
            }
        }
    }
    let mut noisy = g.clone();
    let mut rf = rng::stream(seed, 1);
    let mut flips = vec![];
    rng::for_each_bernoulli(&mut rf, binom(n, 2), flip, |i| flips.push(i));
    let mut k = 0;
    let mut next = flips.into_iter().peekable();
    for v in 1..n {
        for u in 0..v {
            if next.peek() == Some(&k) {
                next.next();
                let c = noisy.get2(u, v);
                noisy.set_subset(&[u, v], 1 - c).unwrap();
            }
            k += 1;
        }
    }
    (side, noisy)
}

fn c4_bipartite_repair() -> Verdict {
    let (mut exact, mut close, mut clean_both, mut clean_zero) = (0, 0, 0, 0);
    for seed in 0..C4_SEEDS {
        let (_, g) = planted_bipartite(C4_N, C4_FLIP, seed);
        let r = repair_bipartite(&g, C4_A, seed).unwrap();
        exact += is_complete_bipartite(&r.graph) as usize;
        close += (r.edit_fraction <= C4_DIST) as usize;
        let (side, g0) = planted_bipartite(C4_N, 0.0, seed);
        let r0 = repair_bipartite(&g0, C4_A, seed).unwrap();
        if r0.training.iter().any(|&v| side[v]) && r0.training.iter().any(|&v| !side[v]) {
            clean_both += 1;
            clean_zero += (r0.edit_fraction == 0.0) as usize;
        }
    }
    (
        exact == C4_SEEDS as usize && close >= C4_DIST_SEEDS && clean_both > 0 && clean_zero == clean_both,
        format!(
            "complete bipartite {exact}/{C4_SEEDS}; distance <= {C4_DIST} in {close}/{C4_SEEDS}; clean runs with both sides sampled at distance 0: {clean_zero}/{clean_both}"
        ),
    )
}

const C5_M: usize = 2000;
const C5_SIGMA: f64 = 0.01;
const C5_ANCHORS: usize = 5;
const C5_FOUND: usize = 95;

fn c5_order_obstruction() -> Verdict {
    let (mut found, mut certified, mut tested) = (0, 0, 0);
    for seed in 0..100u64 {
        let (_, g) = obs::gen_corrupted_order(&CorruptionSpec::new(C5_M, C5_SIGMA, seed).unwrap());
        let anchors = rng::sample_subset(&mut rng::stream(seed, 7), C5_M, C5_ANCHORS);
        let phi = Morphism::new(anchors, C5_M).unwrap();
        let rules: Vec<Box<dyn LocalRule>> = vec![
            Box::new(identity_copy(digraph(), C5_ANCHORS)),
            Box::new(anchor_order(C5_ANCHORS)),
            Box::new(random_hash(digraph(), C5_ANCHORS, seed)),
        ];
        let mut any = false;
        for rule in &rules {
            if let Some(rep) = obs::defeat_rule_order(&g, rule.as_ref(), &phi).unwrap() {
                any = true;
                tested += 1;
                certified += rep.clauses.iter().any(|c| c == "output-not-total") as usize;
            }
        }
        found += any as usize;
    }
    (
        found >= C5_FOUND && tested > 0 && certified == tested,
        format!("pair found in {found}/100; rule outputs certified not total: {certified}/{tested}"),
    )
}

const C6_M: usize = 5000;
const C6_SIGMA: f64 = 0.01;
const C6_TRAIN: usize = 50;
const C6_RETRIES: u64 = 1000;
const C6_EDIT: f64 = 0.05;
const C6_LEFTOVER: f64 = 0.02;
const C6_SEEDS: usize = 90;

/// Returns (successful seeds, exact orders, edit ok, leftover ok, draws).
fn order_repair_run(m: usize, sigma: f64, seeds: u64, retries: u64) -> (usize, usize, usize, usize, u64) {
    let (mut ok, mut total, mut edit, mut left, mut draws) = (0, 0, 0, 0, 0);
    for seed in 0..seeds {
        let (_, g) = obs::gen_corrupted_order(&CorruptionSpec::new(m, sigma, seed).unwrap());
        for k in 0..retries {
            draws += 1;
            let OrderRepair::Repaired { graph, report, .. } = repair_total_order(&g, C6_TRAIN, seed << 20 | k).unwrap()
            else {
                continue;
            };
            ok += 1;
            total += is_total_order(&graph) as usize;
            edit += (report.edit_fraction <= C6_EDIT) as usize;
            left += (report.leftover_fraction(m) <= C6_LEFTOVER) as usize;
            break;
        }
    }
    (ok, total, edit, left, draws)
}

fn c6_order_repair() -> Verdict {
    let (ok, total, edit, left, draws) = order_repair_run(C6_M, C6_SIGMA, 100, C6_RETRIES);
    let pass = ok > 0 && total == ok && edit >= C6_SEEDS.min(ok) && left >= C6_SEEDS.min(ok) && ok >= C6_SEEDS;
    // same procedure where the training draw is usually ordered
    let (iok, itotal, iedit, ileft, _) = order_repair_run(C6_M, 1e-4, 10, 20);
    (
        pass,
        format!(
            "successful seeds {ok}/100 after {draws} training draws (at most {C6_RETRIES} per seed); exact orders {total}; \
             edit <= {C6_EDIT} in {edit}; leftover <= {C6_LEFTOVER} in {left}. A 50-vertex sample is totally ordered \
             with probability about 0.98^1225 at sigma 0.01 [info, sigma 1e-4: {iok}/10 repaired, {itotal} exact, \
             edit ok {iedit}, leftover ok {ileft}]"
        ),
    )
}

const C7_BUDGET: u64 = 10_000_000;
const C7_QUAD: usize = 80;
const C7_NINE: usize = 70;

fn c7_quad_nine() -> Verdict {
    let (mut quad, mut nine, mut quad0, mut nine0) = (0, 0, 0, 0);
    for seed in 0..100u64 {
        let (_, g) = obs::gen_leq3(&CorruptionSpec::new(500, 0.02, seed).unwrap()).unwrap();
        let anchors = rng::sample_subset(&mut rng::stream(seed, 7), 500, 4);
        let rule = identity_copy(g.palette_arc().clone(), 4);
        let gp = LazyModification::new(&rule, &g, &anchors).unwrap();
        let found = obs::find_inconsistent_quad(&g, &gp, &anchors, SearchBudget::new(C7_BUDGET, seed)).unwrap();
        quad += found.is_some_and(|r| obs::validate_quad(&g, &gp, &anchors, &r.witness).is_ok()) as usize;

        let (_, g) = obs::gen_3uniform(&CorruptionSpec::new(250, 0.02, seed).unwrap());
        let anchors = rng::sample_subset(&mut rng::stream(seed, 7), 500, 3);
        let rule = identity_copy(g.palette_arc().clone(), 3);
        let gp = LazyModification::new(&rule, &g, &anchors).unwrap();
        let found = obs::find_inconsistent_nine(&g, &gp, &anchors, SearchBudget::new(C7_BUDGET, seed)).unwrap();
        nine += found.is_some_and(|r| obs::validate_nine(&g, &gp, &anchors, &r.witness).is_ok()) as usize;
    }
    for seed in 0..20u64 {
        let (_, g) = obs::gen_leq3(&CorruptionSpec::new(500, 0.0, seed).unwrap()).unwrap();
        let anchors = rng::sample_subset(&mut rng::stream(seed, 7), 500, 4);
        let rule = identity_copy(g.palette_arc().clone(), 4);
        let gp = LazyModification::new(&rule, &g, &anchors).unwrap();
        quad0 += obs::find_inconsistent_quad(&g, &gp, &anchors, SearchBudget::new(C7_BUDGET, seed)).unwrap().is_none() as usize;

        let (_, g) = obs::gen_3uniform(&CorruptionSpec::new(250, 0.0, seed).unwrap());
        let anchors = rng::sample_subset(&mut rng::stream(seed, 7), 500, 3);
        let rule = identity_copy(g.palette_arc().clone(), 3);
        let gp = LazyModification::new(&rule, &g, &anchors).unwrap();
        nine0 += obs::find_inconsistent_nine(&g, &gp, &anchors, SearchBudget::new(C7_BUDGET, seed)).unwrap().is_none() as usize;
    }
    (
        quad >= C7_QUAD && nine >= C7_NINE && quad0 == 20 && nine0 == 20,
        format!("quadruplet {quad}/100, 9-tuple {nine}/100; sigma 0 controls empty: quad {quad0}/20, nine {nine0}/20"),
    )
}

fn c8_orderability() -> Verdict {
    use rand::Rng;
    let mut r = rng::rng(8);
    let pals = [Arc::new(obs::leq3_palette()), Arc::new(obs::uniform3_palette())];
    let (mut agree, mut orderable) = (0, 0);
    for i in 0..500 {
        let pal = &pals[i % 2];
        let n = r.gen_range(3..=7);
        let mut g = Hypergraph::new_undirected(pal.clone(), n);
        let p: f64 = r.gen_range(0.2..0.9);
        for j in 1..=3 {
            let size = pal.size(j) as Color;
            let subsets: Vec<Vec<usize>> = {
                let mut v = vec![];
                for_each_subset(n, j, |s| v.push(s.to_vec()));
                v
            };
            for s in subsets {
                if size > 1 && r.gen_bool(p) {
                    g.set_subset(&s, 1).unwrap();
                }
            }
        }
        let fast = obs::is_consistently_orderable(&g).unwrap().is_orderable();
        agree += (fast == obs::orderable_by_brute_force(&g).unwrap()) as usize;
        orderable += fast as usize;
    }
    let mut clean = 0;
    let mut clean_total = 0;
    for m in 1..=60usize {
        if m % 2 == 0 {
            let (g0, _) = obs::gen_leq3(&CorruptionSpec::new(m, 0.0, m as u64).unwrap()).unwrap();
            clean_total += 1;
            clean += obs::is_consistently_orderable(&g0).unwrap().is_orderable() as usize;
        }
        if m >= 2 {
            let (g1, _) = obs::gen_3uniform(&CorruptionSpec::new(m, 0.0, m as u64).unwrap());
            clean_total += 1;
            clean += obs::is_consistently_orderable(&g1).unwrap().is_orderable() as usize;
        }
    }
    (
        agree == 500 && clean == clean_total,
        format!("agreement {agree}/500 ({orderable} orderable); uncorrupted instances orderable {clean}/{clean_total}"),
    )
}

const C9_DENSITY_SAMPLES: usize = 1_000_000;
const C9_SE: f64 = 3.0;
const C9_EDIT: f64 = 0.05;
const C9_SEEDS: usize = 90;

fn c9_graphon() -> Verdict {
    let half = graphon::triangle_density(&Graphon::constant(0.5).unwrap(), C9_DENSITY_SAMPLES, 9).unwrap();
    let half_ok = (half.mean - 0.125).abs() <= C9_SE * half.std_error;
    let bip = graphon::triangle_density(&Graphon::complete_bipartite(), C9_DENSITY_SAMPLES, 9).unwrap();
    let p = Graphon::complete_bipartite();
    let mut good = 0;
    for seed in 0..100 {
        let (colors, g) = graphon::sample_graphon_graph(&p, 300, seed);
        let (_, rep) = graphon::repair_triangle_free(&g, &colors, &p, 64, 0.1, seed).unwrap();
        good += (rep.residual_triangles == 0 && rep.edit_fraction <= C9_EDIT) as usize;
    }
    (
        half_ok && bip.mean == 0.0 && good >= C9_SEEDS,
        format!(
            "density(1/2) = {} +- {}; density(bipartite) = {}; clean repairs {good}/100",
            half.mean, half.std_error, bip.mean
        ),
    )
}

fn c10_serialization() -> Verdict {
    let mut texts = 0;
    let mut bad = 0;
    let mut check = |a: String, b: String| {
        texts += 1;
        bad += (a != b) as usize;
    };
    for seed in 0..5 {
        for m in [2usize, 7, 20] {
            let spec = CorruptionSpec::new(m, 0.1, seed).unwrap();
            let mut gs = vec![];
            let (a, b) = obs::gen_corrupted_order(&spec);
            gs.extend([a, b]);
            if m % 2 == 0 {
                let (a, b) = obs::gen_leq3(&spec).unwrap();
                gs.extend([a, b]);
            }
            let (a, b) = obs::gen_3uniform(&spec);
            gs.extend([a, b]);
            for name in graphon::NAMES {
                gs.push(graphon::sample_graphon_graph(&Graphon::by_name(name).unwrap(), m, seed).1);
            }
            for pal in test_palettes() {
                gs.push(random_hypergraph(&pal, m.min(6), &mut rng::stream(seed, m as u64)));
            }
            for g in gs {
                let t = write_hgr(&g);
                check(write_hgr(&read_hgr(&t).unwrap()), t);
            }
        }
    }
    for name in builtins::NAMES {
        let p = builtins::by_name(name).unwrap();
        if let Ok(t) = write_hgp(&p) {
            check(write_hgp(&read_hgp(&t).unwrap()).unwrap(), t);
        }
    }
    let mut r = rng::rng(10);
    for m in 1..=6 {
        use rand::Rng;
        let mut v = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..=i {
                let x = (r.gen::<f64>() * 1000.0).round() / 1000.0;
                v[i * m + j] = x;
                v[j * m + i] = x;
            }
        }
        let t = graphon::write_gwn(&Graphon::step(m, v).unwrap()).unwrap();
        check(graphon::write_gwn(&graphon::read_gwn(&t).unwrap()).unwrap(), t);
    }
    let table = TableRule::materialize(&bipartite_delete(), 1 << 20).unwrap();
    let t = write_hgt(&table);
    check(write_hgt(&read_hgt(&t).unwrap()), t);
    (bad == 0, format!("{texts} files, {bad} not byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("functoriality and heredity", c1_functoriality),
        ("Ramsey oracle", c2_ramsey),
        ("entailment finitisation", c3_entailment),
        ("bipartite repair", c4_bipartite_repair),
        ("directed order obstruction", c5_order_obstruction),
        ("order repair", c6_order_repair),
        ("quadruplet and 9-tuple obstructions", c7_quad_nine),
        ("consistent orderability oracle", c8_orderability),
        ("graphon suite", c9_graphon),
        ("serialization", c10_serialization),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let (pass, detail) = f();
        let secs = t.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {}: {name}: {detail} ({secs:.1}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" }
        );
        failed += !pass as usize;
    }
    println!("acceptance: {} of {} criteria failed", failed, only.map_or(10, |_| 1));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
