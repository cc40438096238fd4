use super::*;
use crate::graph::families::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonplanar_cert(g: &Graph) -> KuratowskiSubdivision {
    match test_planarity(g) {
        PlanarityCertificate::NonPlanar(k) => k,
        PlanarityCertificate::Planar(_) => panic!("expected nonplanar"),
    }
}

fn planar_emb(g: &Graph) -> Embedding {
    match test_planarity(g) {
        PlanarityCertificate::Planar(e) => e,
        PlanarityCertificate::NonPlanar(_) => panic!("expected planar"),
    }
}

#[test]
fn k4_has_four_faces() {
    let e = planar_emb(&complete(4));
    assert_eq!(e.faces().len(), 4);
    assert!(e.faces().iter().all(|f| f.len() == 3));
    assert!(e.is_euler_consistent());
}

#[test]
fn c4_has_two_square_faces() {
    let e = planar_emb(&cycle(4));
    assert_eq!(e.faces().len(), 2);
    assert!(e.faces().iter().all(|f| f.len() == 4));
}

#[test]
fn k5_certificate_is_itself() {
    let k = nonplanar_cert(&complete(5));
    assert_eq!(k.kind, KuratowskiKind::K5);
    assert!(k.paths.iter().all(|p| p.len() == 2));
    assert!(k.validate(&complete(5)));
    assert!(k.witness_structure().verify());
}

#[test]
fn k33_certificate() {
    let g = complete_bipartite(3, 3);
    let k = nonplanar_cert(&g);
    assert_eq!(k.kind, KuratowskiKind::K33);
    assert!(k.validate(&g));
    assert!(k.witness_structure().verify());
}

#[test]
fn petersen_is_k33_kind() {
    let g = petersen();
    let k = nonplanar_cert(&g);
    assert_eq!(k.kind, KuratowskiKind::K33);
    assert!(k.validate(&g));
    assert!(k.witness_structure().verify());
}

#[test]
fn k6_gives_k5_on_five_vertices() {
    let g = complete(6);
    let k = find_kuratowski(&g).unwrap();
    assert!(k.validate(&g));
    assert!(k.as_graph().is_subgraph_of(&g));
}

#[test]
fn subdivided_k33_paths_have_length_two() {
    let g = subdivide_all(&complete_bipartite(3, 3), 1);
    let k = find_kuratowski(&g).unwrap();
    assert_eq!(k.kind, KuratowskiKind::K33);
    assert!(k.paths.iter().all(|p| p.len() == 3));
    assert!(k.validate(&g));
}

#[test]
fn find_kuratowski_on_planar_is_not_applicable() {
    assert_eq!(find_kuratowski(&grid(4, 4)).unwrap_err(), Error::NotApplicable);
}

#[test]
fn grid_faces() {
    let e = planar_emb(&grid(10, 10));
    assert!(e.is_euler_consistent());
    assert_eq!(e.faces().len(), 180 - 100 + 2);
    assert_eq!(e.faces()[e.outer_face()].len(), 36);
}

#[test]
fn disconnected_and_isolated() {
    let mut g = complete(4).union(&cycle(5).shifted(10));
    g.add_vertex(99);
    let e = planar_emb(&g);
    assert!(e.is_euler_consistent());
    assert_eq!(e.component_count(), 3);
    // 4 + 2 + 1
    assert_eq!(e.faces().len(), 7);
}

#[test]
fn outer_cycle_interior_is_everything_else() {
    let g = grid(5, 5);
    let e = planar_emb(&g);
    let outer = e.faces()[e.outer_face()].walk.clone();
    let r = e.cycle_interior(&outer).unwrap();
    assert_eq!(r.interior.len(), 25 - 16);
    assert!(r.exterior.is_empty());
}

#[test]
fn k4_triangle_interior_depends_on_outer_face() {
    // for each choice of outer face, a facial triangle either bounds an
    // empty region or contains the fourth vertex
    let e = planar_emb(&complete(4));
    for outer in 0..4 {
        let rooted = e.with_outer_face(outer).unwrap();
        for (f, face) in e.faces().iter().enumerate() {
            let r = rooted.cycle_interior(&face.walk).unwrap();
            let fourth: BTreeSet<_> = (0..4).filter(|v| !face.walk.contains(v)).collect();
            if f == outer {
                assert_eq!(r.interior, fourth);
                assert!(r.exterior.is_empty());
            } else {
                assert!(r.interior.is_empty());
                assert_eq!(r.exterior, fourth);
            }
        }
    }
}

#[test]
fn cycle_interior_rejects_non_cycles() {
    let e = planar_emb(&grid(3, 3));
    assert!(matches!(e.cycle_interior(&[0, 1]), Err(Error::InvalidCycle(_))));
    assert!(matches!(e.cycle_interior(&[0, 1, 2, 5]), Err(Error::InvalidCycle(_))));
    assert!(matches!(e.cycle_interior(&[0, 1, 4, 1]), Err(Error::InvalidCycle(_))));
}

#[test]
fn malformed_rotation_is_rejected() {
    let rot = BTreeMap::from([(0, vec![1]), (1, vec![])]);
    assert!(matches!(Embedding::from_rotation(rot), Err(Error::Inconsistent(_))));
}

#[test]
fn contraction_keeps_planarity() {
    let g = grid(4, 5);
    for e in g.edges() {
        assert!(is_planar(&g.contract_edge(e).unwrap()));
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: u32, p: f64) -> Graph {
    let mut g = Graph::with_vertices(0..n, std::iter::empty()).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

#[test]
fn random_graphs_are_certified_both_ways() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..400 {
        let n = rng.gen_range(1..40);
        let p = rng.gen_range(0.02..0.35);
        let g = random_graph(&mut rng, n, p);
        match test_planarity(&g) {
            PlanarityCertificate::Planar(e) => {
                assert!(e.is_euler_consistent(), "case {i}");
                assert_eq!(e.graph(), g);
            }
            PlanarityCertificate::NonPlanar(k) => {
                assert!(k.validate(&g), "case {i}");
                assert!(k.witness_structure().verify(), "case {i}");
            }
        }
    }
}

#[test]
fn random_maximal_planar_graphs_embed() {
    // stacked triangulations are planar with 3n - 6 edges
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(4..200u32);
        let mut g = complete(3);
        let mut faces = vec![[0u32, 1, 2], [0, 1, 2]];
        for v in 3..n {
            let i = rng.gen_range(0..faces.len());
            let [a, b, c] = faces.swap_remove(i);
            for w in [a, b, c] {
                g.add_edge(v, w).unwrap();
            }
            faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
        }
        assert_eq!(g.m() as u32, 3 * n - 6);
        let e = embed(&g).expect("stacked triangulation is planar");
        assert!(e.faces().iter().all(|f| f.len() == 3));
        // one more edge breaks it whenever it is not already present
        let extra = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !g.has_edge(a, b));
        if let Some((a, b)) = extra {
            let mut h = g.clone();
            h.add_edge(a, b).unwrap();
            assert!(!is_planar(&h));
        }
    }
}
