//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use planar_contraction::certificate::Certificate;
use planar_contraction::graph::families;
use planar_contraction::oracle::{
    derive_apex_from_contraction, min_contractions, solve_exact, verify_certificate, SolveResult,
};
use planar_contraction::pipeline::{
    claim1_refute, classify_si, find_apex_set, find_irrelevant_edge, solve, Irrelevance,
};
use planar_contraction::planarity::{embed, find_kuratowski, is_planar, test_planarity, PlanarityCertificate};
use planar_contraction::walls::{
    elementary_wall, find_wall, generate_instance, pack_subwalls, packing_threshold, Family, Pos,
};
use planar_contraction::{Graph, Instance, VertexId};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn perimeters() -> Result<String, String> {
    for (h, want) in [(2, 14), (3, 22), (4, 30)] {
        let len = elementary_wall(h).unwrap().1.perimeter().len();
        ensure(len == want, format!("h={h}: perimeter {len}, want {want}"))?;
    }
    for h in 2..=20 {
        let len = elementary_wall(h).unwrap().1.perimeter().len();
        ensure(len == 8 * h - 2, format!("h={h}: perimeter {len}"))?;
    }
    Ok("14, 22, 30 and 8h-2 for h <= 20".into())
}

fn random_instance(seed: u64) -> Graph {
    let n = 5 + (seed % 6) as usize;
    let max = (n * (n - 1) / 2).min(18);
    let m = n + (seed as usize * 7) % (max - n + 1);
    generate_instance(&Family::Random { n, m, seed }).unwrap()
}

fn oracle_pipeline_equivalence() -> Result<String, String> {
    let mut yes = 0;
    for seed in 0..300u64 {
        let g = random_instance(seed);
        for k in 0..=2 {
            let inst = Instance::new(g.clone(), k);
            let exact = solve_exact(&inst).map_err(|e| e.to_string())?;
            let (res, trace) = solve(&inst).map_err(|e| e.to_string())?;
            ensure(exact.is_yes() == res.is_yes(), format!("seed {seed}, k={k}: answers differ"))?;
            ensure(verify_certificate(&inst, &exact), format!("seed {seed}, k={k}: oracle certificate invalid"))?;
            let cert = Certificate::from_solve(k, res.clone(), &trace);
            ensure(cert.verify(&g), format!("seed {seed}, k={k}: pipeline certificate invalid"))?;
            if res.is_yes() {
                yes += 1;
                ensure(verify_certificate(&inst, &res), format!("seed {seed}, k={k}: yes-certificate invalid"))?;
            }
        }
    }
    Ok(format!("900 instances agree, {yes} yes-certificates verified"))
}

fn gr_family() -> Result<String, String> {
    for r in 3..=8 {
        let g = generate_instance(&Family::Gr { r }).unwrap();
        ensure(!is_planar(&g), format!("G_{r} planar"))?;
        let (r0, _) = solve(&Instance::new(g.clone(), 0)).map_err(|e| e.to_string())?;
        ensure(!r0.is_yes(), format!("G_{r} yes at k=0"))?;
        let (r1, t) = solve(&Instance::new(g.clone(), 1)).map_err(|e| e.to_string())?;
        let SolveResult::Yes { edges } = &r1 else { return Err(format!("G_{r} no at k=1")) };
        ensure(edges.len() == 1 && edges[0].u < 3 && edges[0].v < 3, format!("G_{r}: {edges:?} not an A-edge"))?;
        ensure(Certificate::from_solve(1, r1.clone(), &t).verify(&g), format!("G_{r}: certificate invalid"))?;
    }
    Ok("r = 3..8: nonplanar, one triangle edge suffices".into())
}

fn gstar_family() -> Result<String, String> {
    let g = generate_instance(&Family::GStar { p: 2 }).unwrap();
    let m = min_contractions(&g, 3).map_err(|e| e.to_string())?;
    ensure(m == Some(1), format!("G*_2 minimum {m:?}"))?;
    let minor = generate_instance(&Family::GStarMinor { p: 2 }).unwrap();
    let capped = min_contractions(&minor, 2).map_err(|e| e.to_string())?;
    ensure(capped.is_none(), format!("subdivision minor solved within cap 2: {capped:?}"))?;
    let exact = min_contractions(&minor, 4).map_err(|e| e.to_string())?;
    ensure(exact.map_or(true, |x| x >= 3), "minimum below p+1")?;
    Ok(format!("G*_2 needs 1; its K5-subdivision minor needs {}", exact.map_or("> 4".into(), |x| x.to_string())))
}

fn subdivided_k5() -> Result<String, String> {
    let g = generate_instance(&Family::SubdividedK5 { p: 3 }).unwrap();
    let s = find_apex_set(&g, 1).ok_or("no apex set of size 1")?;
    ensure(s.len() == 1 && is_planar(&g.delete_vertices(&s).unwrap()), "apex set does not planarize")?;
    let m = min_contractions(&g, 1).map_err(|e| e.to_string())?;
    ensure(m.is_none(), format!("solved within cap 1: {m:?}"))?;
    Ok(format!("apex {s:?}, min_contractions above cap 1"))
}

fn deletion_from_contraction() -> Result<String, String> {
    let mut found = 0;
    let mut seed = 1000u64;
    while found < 100 {
        let g = random_instance(seed);
        seed += 1;
        let inst = Instance::new(g.clone(), 2);
        let SolveResult::Yes { edges } = solve_exact(&inst).map_err(|e| e.to_string())? else { continue };
        if edges.is_empty() {
            continue;
        }
        let (_, count) = g.contract_edge_set(&edges).unwrap();
        let s = derive_apex_from_contraction(&g, &edges).map_err(|e| e.to_string())?;
        let rest = g.delete_vertices(&s).unwrap();
        ensure(s.len() == count, format!("seed {seed}: |S| = {} but {count} contractions", s.len()))?;
        ensure(is_planar(&rest) && common::brute_planar(&rest), format!("seed {seed}: G - S not planar"))?;
        found += 1;
    }
    Ok(format!("100 yes-instances (seeds 1000..{seed})"))
}

fn wall_attach(height: usize, attachments: Vec<Vec<Pos>>) -> Graph {
    generate_instance(&Family::WallPlusApex { height, attachments }).unwrap()
}

fn subdivided_wall(h: usize) -> Graph {
    let mut g = wall_attach(h, vec![]);
    let mut next = g.max_vertex().unwrap() + 1;
    for e in g.edge_list().into_iter().step_by(7) {
        g = g.subdivide(e, 2, next).unwrap();
        next += 2;
    }
    g
}

fn irrelevant_edges_preserve_answers() -> Result<String, String> {
    let p = Pos::new;
    let cases: Vec<(&str, Graph, usize)> = vec![
        ("h45 local apex", wall_attach(45, vec![vec![p(20, 40), p(20, 44), p(22, 40), p(22, 44)]]), 1),
        ("h45 spread apex", wall_attach(45, vec![vec![p(5, 5), p(40, 80), p(22, 45)]]), 1),
        ("h45 apex in one subwall", wall_attach(45, vec![vec![p(11, 23), p(11, 24), p(44, 80), p(44, 81)]]), 1),
        ("h45 apex near two corners", wall_attach(45, vec![vec![p(2, 2), p(2, 3), p(42, 86), p(42, 87)]]), 1),
        ("h11 plain", wall_attach(11, vec![]), 0),
        ("h11 subdivided", subdivided_wall(11), 0),
    ];
    let mut emitted = 0;
    let mut with_edges = 0;
    let mut notes = Vec::new();
    for (name, g, k) in cases {
        let apex = find_apex_set(&g, k).ok_or(format!("{name}: no apex set"))?;
        let mut cur = g.clone();
        let mut here = 0;
        loop {
            match find_irrelevant_edge(&cur, &apex, k, None).map_err(|e| e.to_string())? {
                Irrelevance::Edge { edge, .. } => {
                    let before = solve_exact(&Instance::new(cur.clone(), k)).map_err(|e| e.to_string())?;
                    let next = cur.contract_edge(edge).unwrap();
                    let after = solve_exact(&Instance::new(next.clone(), k)).map_err(|e| e.to_string())?;
                    ensure(before.is_yes() == after.is_yes(), format!("{name}: contracting {edge} changed the answer"))?;
                    cur = next;
                    here += 1;
                }
                _ => break,
            }
        }
        emitted += here;
        if here > 0 {
            with_edges += 1;
        }
        notes.push(format!("{name}: {here}"));
    }
    ensure(with_edges >= 5, format!("only {with_edges} instances emitted edges ({})", notes.join(", ")))?;
    Ok(format!("{emitted} edges checked ({})", notes.join(", ")))
}

fn type1_certificates() -> Result<String, String> {
    let centers = [Pos::new(11, 23), Pos::new(11, 67), Pos::new(33, 23)];
    let near = |c: Pos| vec![c, Pos::new(c.row, c.col + 1)];
    let y = elementary_wall(45).unwrap().0.n() as VertexId;
    let mut notes = Vec::new();
    for wired in [2usize, 3] {
        let att: Vec<Pos> = centers[..wired].iter().flat_map(|&c| near(c)).collect();
        let g = wall_attach(45, vec![att]);
        let k = 1;
        let s = find_apex_set(&g, k).ok_or("no apex set")?;
        ensure(s == BTreeSet::from([y]), format!("unexpected apex set {s:?}"))?;
        let h = g.delete_vertices(&s).unwrap();
        let wall = find_wall(&h, packing_threshold(k) + 1, None).map_err(|e| e.to_string())?.ok_or("no wall")?;
        let inside = wall.peel().unwrap().vertex(Pos::new(0, 0)).unwrap();
        let emb = embed(&h).unwrap().rooted_outside(&wall.perimeter(), inside).map_err(|e| e.to_string())?;
        let packing = pack_subwalls(&wall, k).map_err(|e| e.to_string())?;
        let cls = classify_si(&g, &s, &packing, &emb).map_err(|e| e.to_string())?;
        let cert = claim1_refute(&g, &s, &packing, &emb, &cls, k).map_err(|e| e.to_string())?.ok_or("no certificate")?;
        ensure(cert.structures.len() == wired && cert.structures.len() >= k + 1, "wrong structure count")?;
        for (ws, _) in cert.structures.iter().zip(&cert.edge_sets) {
            ensure(ws.verify(), "witness structure invalid")?;
        }
        for i in 0..cert.edge_sets.len() {
            for j in i + 1..cert.edge_sets.len() {
                ensure(cert.edge_sets[i].is_disjoint(&cert.edge_sets[j]), "edge sets overlap")?;
            }
        }
        ensure(cert.verify(&g, k), "certificate invalid")?;
        if wired == 2 {
            let exact = solve_exact(&Instance::new(g.clone(), k)).map_err(|e| e.to_string())?;
            ensure(!exact.is_yes(), "oracle says yes on the height-45 instance")?;
        }
        notes.push(format!("{wired} wired: l = {}", cert.structures.len()));
    }
    // smaller wall, same shape: apex joined to two far-apart interior vertices
    let small = wall_attach(13, vec![vec![Pos::new(3, 5), Pos::new(3, 6), Pos::new(10, 21), Pos::new(10, 22)]]);
    let exact = solve_exact(&Instance::new(small, 1)).map_err(|e| e.to_string())?;
    ensure(!exact.is_yes(), "oracle says yes on the height-13 analogue")?;
    notes.push("oracle NO at h=45 and h=13".into());
    Ok(notes.join(", "))
}

fn planarity_module() -> Result<String, String> {
    for (name, g) in [
        ("K5", families::complete(5)),
        ("K3,3", families::complete_bipartite(3, 3)),
        ("Petersen", families::petersen()),
    ] {
        let ks = find_kuratowski(&g).map_err(|e| e.to_string())?;
        ensure(ks.validate(&g), format!("{name}: invalid Kuratowski certificate"))?;
    }
    let grid = families::grid(10, 10);
    let emb = embed(&grid).ok_or("grid not planar")?;
    ensure(emb.is_euler_consistent() && emb.faces().len() == 82, "grid faces")?;
    for h in 2..=12 {
        let (g, _) = elementary_wall(h).unwrap();
        let emb = embed(&g).ok_or("wall not planar")?;
        ensure(emb.is_euler_consistent() && emb.faces().len() == h * h + 1, format!("wall {h} faces"))?;
    }
    let mut checked = 0;
    let mut check = |g: &Graph| -> Result<(), String> {
        let brute = common::brute_planar(g);
        match test_planarity(g) {
            PlanarityCertificate::Planar(emb) => {
                ensure(brute, format!("embedding claimed for nonplanar {:?}", g.edge_list()))?;
                ensure(emb.is_euler_consistent(), "embedding violates Euler")?;
            }
            PlanarityCertificate::NonPlanar(ks) => {
                ensure(!brute, format!("Kuratowski claimed for planar {:?}", g.edge_list()))?;
                ensure(ks.validate(g), "invalid Kuratowski subdivision")?;
            }
        }
        checked += 1;
        Ok(())
    };
    for n in 1..=6 {
        for g in common::all_graphs(n) {
            check(&g)?;
        }
    }
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for i in 0..3000u64 {
        let g = common::random_graph(7, 30 + i % 60, &mut state);
        check(&g)?;
    }
    Ok(format!("certificates valid; {checked} graphs agree with brute-force minor search"))
}

fn main() {
    let criteria: Vec<(u32, &str, Check, Duration)> = vec![
        (1, "wall perimeters", perimeters, Duration::from_secs(1)),
        (2, "oracle-pipeline equivalence", oracle_pipeline_equivalence, Duration::from_secs(300)),
        (3, "G_r family", gr_family, Duration::from_secs(10)),
        (4, "G*_p family", gstar_family, Duration::from_secs(120)),
        (5, "subdivided K5", subdivided_k5, Duration::from_secs(60)),
        (6, "deletion set from contractions", deletion_from_contraction, Duration::from_secs(120)),
        (7, "irrelevant edges", irrelevant_edges_preserve_answers, Duration::from_secs(900)),
        (8, "type-1 certificates", type1_certificates, Duration::from_secs(600)),
        (9, "planarity module", planarity_module, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {id} PASS  {name} ({elapsed:.1?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL  {name} ({elapsed:.1?}): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
