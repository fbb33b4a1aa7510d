//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prodembed::complex::{direct_product_link_2, product_vertex_link, SimplicialComplex};
use prodembed::geometry::{general_position_check, intersection_parity_maps, GeometricComplex, Parity, RationalPoint};
use prodembed::graph::{
    complete_bipartite, complete_graph, cycle_graph, is_planar, min_embedding_dim, parse_graph, triod, Graph,
};
use prodembed::linking::{
    almost_embedding_check, alternation_criterion, campaign, compose_with_embedding, compute_obstruction,
    cone_lift_pair_parity, disjoint_pairs, k5_into_k33_map, membrane_linking_parity, pair_linking_parity,
    product_instance, random_k5_k33_instance, standard_join_embedding, subdivision_instance, AlmostEmbeddingInstance,
    Cell, CellImage, CampaignKind,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn dimension_table() -> Outcome {
    let start = Instant::now();
    let k5 = complete_graph(5);
    let k33 = complete_bipartite(3, 3);
    let y = triod();
    let table: [(&str, Vec<Graph>, usize, usize, usize); 7] = [
        ("K5", vec![k5.clone()], 0, 0, 3),
        ("K3,3", vec![k33.clone()], 0, 0, 3),
        ("K5 x K5", vec![k5.clone(), k5.clone()], 0, 0, 5),
        ("K5, s=1", vec![k5.clone()], 1, 0, 4),
        ("K5, i=1", vec![k5.clone()], 0, 1, 3),
        ("Y x Y", vec![y.clone(), y], 0, 0, 4),
        ("K5 x K3,3, s=2", vec![k5, k33], 2, 0, 7),
    ];
    for (name, factors, s, i, want) in &table {
        let r = min_embedding_dim(factors, *s, *i).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.d == *want, || format!("{name}: d={} expected {want}", r.d))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("7/7 rows exact in {:.1?}", start.elapsed()))
}

fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    (0u32..1 << pairs.len()).filter_map(move |mask| {
        let edges: Vec<(&str, &str)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &(u, v))| (labels[u].as_str(), labels[v].as_str()))
            .collect();
        let g = Graph::new(&labels, &edges).expect("simple graph");
        g.is_connected().then_some(g)
    })
}

fn planarity() -> Outcome {
    let start = Instant::now();
    let k5 = complete_graph(5);
    let k33 = complete_bipartite(3, 3);
    let rejected = [
        k5.clone(),
        k33.clone(),
        k5.subdivide_edge("1", "2", "s").unwrap(),
        k33.subdivide_edge("a1", "b1", "s").unwrap(),
    ];
    for g in &rejected {
        let p = is_planar(g);
        ensure(!p.planar, || format!("{g} accepted"))?;
        let w = p.witness.as_ref().ok_or("missing witness")?;
        w.validate(g).map_err(|e| format!("bad witness for {g}: {e}"))?;
    }
    let accepted = [
        complete_graph(4),
        triod(),
        cycle_graph(3).unwrap(),
        cycle_graph(8).unwrap(),
    ];
    for g in &accepted {
        ensure(is_planar(g).planar, || format!("{g} rejected"))?;
    }
    let mut checked = 0;
    for n in 1..=6 {
        for g in connected_graphs(n) {
            let p = is_planar(&g);
            let oracle = common::brute_force_planar(&g);
            ensure(p.planar == oracle, || format!("disagreement on {}", g.to_edge_list()))?;
            if let Some(w) = &p.witness {
                w.validate(&g).map_err(|e| format!("bad witness: {e}"))?;
            }
            checked += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("Kuratowski graphs rejected with witnesses; oracle agrees on {checked} connected graphs with <= 6 vertices"))
}

fn standard_embedding() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for n in 1..=3 {
        let e = standard_join_embedding(n, 2024).map_err(|e| e.to_string())?;
        let r = compute_obstruction(&e.complex, None).map_err(|e| e.to_string())?;
        ensure(r.pairs_examined == 3usize.pow(n as u32), || format!("n={n}: {} pairs", r.pairs_examined))?;
        ensure(r.linked_pairs.len() == 1 && r.v == Parity::ONE, || {
            format!("n={n}: {} linked constrained pairs", r.linked_pairs.len())
        })?;
        let pairs = disjoint_pairs(n, None).map_err(|e| e.to_string())?;
        for p in &pairs {
            let cone = pair_linking_parity(&e.complex, p).map_err(|e| e.to_string())?;
            ensure(cone == alternation_criterion(&e, p), || format!("n={n}: {p} disagrees"))?;
        }
        summary.push(format!("n={n}: 1 linked, {} pairs agree", pairs.len()));
    }
    within(start, Duration::from_secs(60))?;
    Ok(summary.join("; "))
}

fn sphere_campaign(n: usize, trials: usize, seed: u64, limit: Duration) -> Outcome {
    let start = Instant::now();
    let r = campaign(CampaignKind::SacksN, n, trials, seed).map_err(|e| e.to_string())?;
    ensure(r.exhausted_seeds.is_empty(), || format!("exhausted seeds {:?}", r.exhausted_seeds))?;
    ensure(r.failing_seeds.is_empty(), || format!("failing seeds {:?}", r.failing_seeds))?;
    ensure(r.cross_check_mismatches.is_empty(), || {
        format!("cone-lift mismatches {:?}", r.cross_check_mismatches)
    })?;
    ensure(r.linked_fraction == 1.0 && r.v_histogram["1"] == trials, || format!("{r:?}"))?;
    within(start, limit)?;
    Ok(format!(
        "{trials}/{trials} trials linked with v=1 (seed {seed}) in {:.1?}",
        start.elapsed()
    ))
}

fn conway_gordon() -> Outcome {
    let start = Instant::now();
    let r = campaign(CampaignKind::ConwayGordonK6, 1, 500, 1).map_err(|e| e.to_string())?;
    ensure(r.exhausted_seeds.is_empty() && r.failing_seeds.is_empty(), || format!("{r:?}"))?;
    ensure(r.linked_fraction == 1.0 && r.v_histogram["1"] == 500, || format!("{r:?}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("500/500 placements linked, odd sum over 10 pairs, in {:.1?}", start.elapsed()))
}

fn random_general_position(c: &SimplicialComplex, d: usize, rng: &mut ChaCha8Rng) -> GeometricComplex {
    loop {
        let pts = (0..c.vertex_count())
            .map(|_| {
                let x: Vec<i64> = (0..d).map(|_| rng.gen_range(-1000..=1000)).collect();
                RationalPoint::from_ints(&x)
            })
            .collect();
        let g = GeometricComplex::from_points(c.clone(), pts, d).unwrap();
        if general_position_check(&g).ok {
            return g;
        }
    }
}

fn polygon(prefix: &str, n: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let edges: Vec<Vec<String>> = (0..n).map(|i| vec![labels[i].clone(), labels[(i + 1) % n].clone()]).collect();
    SimplicialComplex::new(&labels, &edges).unwrap()
}

/// The 3 x 3 grid triangulation of the torus.
fn torus(prefix: &str) -> SimplicialComplex {
    let v = |i: usize, j: usize| format!("{prefix}{}{}", i % 3, j % 3);
    let labels: Vec<String> = (0..3).cartesian_product(0..3).map(|(i, j)| v(i, j)).collect();
    let mut faces = Vec::new();
    for (i, j) in (0..3).cartesian_product(0..3) {
        faces.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
        faces.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
    }
    SimplicialComplex::new(&labels, &faces).unwrap()
}

fn split(g: &GeometricComplex, prefix: char) -> GeometricComplex {
    let c = g.complex();
    let keep: Vec<usize> = (0..c.vertex_count()).filter(|&v| c.label(v).starts_with(prefix)).collect();
    let labels: Vec<&str> = keep.iter().map(|&v| c.label(v)).collect();
    let facets: Vec<Vec<&str>> = c
        .facets()
        .iter()
        .filter(|f| f.iter().all(|v| keep.contains(v)))
        .map(|f| f.iter().map(|&v| c.label(v)).collect())
        .collect();
    let sub = SimplicialComplex::new(&labels, &facets).unwrap();
    let pts = keep.iter().map(|&v| g.point(v).clone()).collect();
    GeometricComplex::from_points(sub, pts, g.ambient_dim()).unwrap()
}

fn closed_manifolds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut crossings = 0usize;
    for trial in 0..100 {
        let both = union(&polygon("a", 5 + trial % 3), &polygon("b", 4 + trial % 4));
        let g = random_general_position(&both, 2, &mut rng);
        let (a, b) = (split(&g, 'a'), split(&g, 'b'));
        let p = intersection_parity_maps(&a, &b).map_err(|e| format!("polygons, trial {trial}: {e}"))?;
        ensure(p == Parity::ZERO, || format!("polygons, trial {trial}: odd"))?;
        crossings += usize::from(crossing_pairs(&a, &b) > 0);
    }
    for trial in 0..100 {
        let both = union(&torus("a"), &torus("b"));
        let g = random_general_position(&both, 4, &mut rng);
        let p = intersection_parity_maps(&split(&g, 'a'), &split(&g, 'b'))
            .map_err(|e| format!("tori, trial {trial}: {e}"))?;
        ensure(p == Parity::ZERO, || format!("tori, trial {trial}: odd"))?;
    }
    Ok(format!("parity 0 for 100 polygon pairs ({crossings} with crossings) and 100 torus pairs in R^4"))
}

/// Number of crossing edge pairs, to show the polygon samples are not
/// trivially disjoint.
fn crossing_pairs(a: &GeometricComplex, b: &GeometricComplex) -> usize {
    let mut n = 0;
    for e in a.complex().facets() {
        for f in b.complex().facets() {
            let s: Vec<RationalPoint> = e.iter().map(|&v| a.point(v).clone()).collect();
            let t: Vec<RationalPoint> = f.iter().map(|&v| b.point(v).clone()).collect();
            n += usize::from(prodembed::geometry::closed_simplices_intersect(&s, &t));
        }
    }
    n
}

fn union(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let labels: Vec<String> = a.labels().iter().chain(b.labels()).cloned().collect();
    let facets: Vec<Vec<String>> = a.facet_labels().into_iter().chain(b.facet_labels()).collect();
    SimplicialComplex::new(&labels, &facets).unwrap()
}

fn almost_embeddings() -> Outcome {
    let start = Instant::now();
    ensure(almost_embedding_check(&k5_into_k33_map()).map_err(|e| e.to_string())?.is_none(), || {
        "K5 -> K3,3 map rejected".into()
    })?;
    let mut instances = 0;
    for seed in 0..20u64 {
        let (a, ta) = random_k5_k33_instance(seed);
        let (b, tb) = match seed % 3 {
            0 => random_k5_k33_instance(seed + 1000),
            1 => subdivision_instance(&cycle_graph(3 + seed as usize % 4).unwrap()),
            _ => subdivision_instance(&complete_graph(4)),
        };
        for inst in [&a, &b] {
            ensure(almost_embedding_check(inst).map_err(|e| e.to_string())?.is_none(), || {
                format!("{} rejected", inst.name)
            })?;
        }
        let p = product_instance(&a, &b).map_err(|e| e.to_string())?;
        ensure(almost_embedding_check(&p).map_err(|e| e.to_string())?.is_none(), || {
            format!("product {} rejected", p.name)
        })?;
        for (inst, target) in [(&a, &ta), (&b, &tb)] {
            let c = compose_with_embedding(inst, target, seed).map_err(|e| e.to_string())?;
            ensure(almost_embedding_check(&c).map_err(|e| e.to_string())?.is_none(), || {
                format!("composition {} rejected", c.name)
            })?;
        }
        instances += 1;
    }
    // control: two disjoint edges folded onto one segment
    let seg = || vec![RationalPoint::from_ints(&[0, 0, 0]), RationalPoint::from_ints(&[5, 0, 0])];
    let folded = AlmostEmbeddingInstance {
        name: "fold".into(),
        cells: vec![
            Cell {
                support: vec!["u".into(), "v".into()],
                image: CellImage::Geometric(vec![seg()]),
            },
            Cell {
                support: vec!["x".into(), "y".into()],
                image: CellImage::Geometric(vec![seg()]),
            },
        ],
    };
    ensure(almost_embedding_check(&folded).map_err(|e| e.to_string())?.is_some(), || {
        "folded map accepted".into()
    })?;
    Ok(format!(
        "K5 -> K3,3 passes; {instances} randomized product and composition instances pass; fold rejected ({:.1?})",
        start.elapsed()
    ))
}

fn link_formula() -> Outcome {
    let factors = [
        complete_graph(4),
        complete_graph(5),
        complete_bipartite(3, 3),
        cycle_graph(4).unwrap(),
    ];
    let mut cases = 0;
    for g in &factors {
        for h in &factors {
            for u in 0..g.vertex_count() {
                for v in 0..h.vertex_count() {
                    let direct = direct_product_link_2(g, h, g.label(u), h.label(v)).map_err(|e| e.to_string())?;
                    let formula = product_vertex_link(&[g.degree(u), h.degree(v)]).map_err(|e| e.to_string())?;
                    let sig = |c: &SimplicialComplex| {
                        c.join_signature().map(|mut s| {
                            s.sort();
                            s
                        })
                    };
                    ensure(
                        sig(&direct) == sig(&formula) && direct.f_vector() == formula.f_vector(),
                        || format!("{} x {} at ({}, {})", g.name(), h.name(), g.label(u), h.label(v)),
                    )?;
                    cases += 1;
                }
            }
        }
    }
    let k5 = parse_graph("k5").unwrap();
    let lk = direct_product_link_2(&k5, &k5, "1", "1").map_err(|e| e.to_string())?;
    ensure(lk.join_signature() == Some(vec![4, 4]), || "K5 x K5 link is not K4,4".into())?;
    Ok(format!("{cases} vertex pairs agree; K5 x K5 gives K4,4"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut membrane = 0;
    let mut lifted = 0;
    for n in 1..=3 {
        let e = standard_join_embedding(n, 99).map_err(|e| e.to_string())?;
        for p in disjoint_pairs(n, None).map_err(|e| e.to_string())? {
            let cone = pair_linking_parity(&e.complex, &p).map_err(|e| e.to_string())?;
            let m = membrane_linking_parity(&e, &p.alpha, &p.beta).map_err(|e| e.to_string())?;
            ensure(m == cone, || format!("membrane n={n} {p}"))?;
            membrane += 1;
            let l = cone_lift_pair_parity(&e.complex, &p).map_err(|e| e.to_string())?;
            ensure(l == cone, || format!("cone lift n={n} {p}"))?;
            lifted += 1;
        }
    }
    for (n, seed) in [(2usize, 5u64), (2, 6), (3, 5)] {
        let g = prodembed::geometry::random_embedding(&prodembed::linking::join_sphere_complex(n), 2 * n - 1, seed)
            .map_err(|e| e.to_string())?;
        for p in disjoint_pairs(n, None).map_err(|e| e.to_string())? {
            let cone = pair_linking_parity(&g, &p).map_err(|e| e.to_string())?;
            let l = cone_lift_pair_parity(&g, &p).map_err(|e| e.to_string())?;
            ensure(l == cone, || format!("cone lift random n={n} seed {seed} {p}"))?;
            lifted += 1;
        }
    }
    Ok(format!(
        "membrane = cone on {membrane} standard pairs; cone lift = cone on {lifted} pairs ({:.1?})",
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("dimension table", Box::new(dimension_table)),
        ("planarity", Box::new(planarity)),
        ("standard embedding n=1..3", Box::new(standard_embedding)),
        (
            "K4,4 campaign (1000 trials)",
            Box::new(|| sphere_campaign(2, 1000, 42, Duration::from_secs(300))),
        ),
        (
            "n=3 campaign (100 trials)",
            Box::new(|| sphere_campaign(3, 100, 9, Duration::from_secs(600))),
        ),
        ("K6 campaign (500 trials)", Box::new(conway_gordon)),
        ("closed manifolds meet evenly", Box::new(closed_manifolds)),
        ("almost embeddings", Box::new(almost_embeddings)),
        ("product link formula", Box::new(link_formula)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
    ];
    let mut results = BTreeMap::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => println!("criterion {:>2} FAIL  {name}: {why}", i + 1),
        }
        results.insert(i + 1, outcome.is_ok());
    }
    let passed = results.values().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
