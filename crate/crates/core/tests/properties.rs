use ncg_core::graph::{are_isomorphic, fingerprint, noncommuting_graph};
use ncg_core::structure::{center, centralizer, conjugacy_classes, is_nilpotent, quotient};
use ncg_core::{direct_product, parse_group_address, FiniteGroup};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const SMALL: [&str; 14] = [
    "cyclic:6",
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "dicyclic:2",
    "dicyclic:3",
    "alternating:4",
    "heisenberg:3",
    "affine:5",
    "semidihedral:4",
    "modular:4",
    "gendihedral:3",
    "sl2:3",
];

fn group(addr: &str) -> FiniteGroup {
    parse_group_address(addr).unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Same group with elements 1.. shuffled; identity stays at 0.
fn relabel(g: &FiniteGroup, seed: u64) -> FiniteGroup {
    let n = g.order();
    let mut perm: Vec<usize> = (1..n).collect();
    perm.shuffle(&mut StdRng::seed_from_u64(seed));
    perm.insert(0, 0);
    let mut inverse = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    let rows: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).map(|b| perm[g.mul(inverse[a], inverse[b])]).collect()).collect();
    FiniteGroup::from_cayley_table(&rows, format!("{}~{seed}", g.name())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn table_axioms(addr in prop::sample::select(&SMALL[..])) {
        let g = group(addr);
        let n = g.order();
        prop_assert!(g.validate().is_ok());
        for a in g.elements() {
            prop_assert_eq!(g.mul(0, a), a);
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
            let mut row: Vec<usize> = (0..n).map(|b| g.mul(a, b)).collect();
            row.sort_unstable();
            prop_assert_eq!(row, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn regular_representation_rebuilds(addr in prop::sample::select(&SMALL[..])) {
        let g = group(addr);
        let gens: Vec<Vec<usize>> = g.elements().map(|x| g.regular_permutation(x)).collect();
        let h = FiniteGroup::from_permutation_generators(g.order(), &gens, "regular").unwrap();
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(h.element_orders(), g.element_orders());
    }

    #[test]
    fn product_orders_are_lcms(a in prop::sample::select(&SMALL[..8]), b in prop::sample::select(&["cyclic:2", "cyclic:3", "dihedral:3"][..])) {
        let (g, h) = (group(a), group(b));
        let p = direct_product(&g, &h).unwrap();
        prop_assert_eq!(p.order(), g.order() * h.order());
        for x in g.elements() {
            for y in h.elements() {
                let (ox, oy) = (g.element_order(x), h.element_order(y));
                prop_assert_eq!(p.element_order(x * h.order() + y), ox / gcd(ox, oy) * oy);
            }
        }
    }

    #[test]
    fn class_equation_and_degrees(addr in prop::sample::select(&SMALL[..])) {
        let g = group(addr);
        let classes = conjugacy_classes(&g);
        prop_assert_eq!(classes.sizes.iter().sum::<usize>(), g.order());
        for &s in &classes.sizes {
            prop_assert_eq!(g.order() % s, 0);
        }
        prop_assert_eq!(classes.center_size, center(&g).order());
        if g.is_abelian() {
            return Ok(());
        }
        let graph = noncommuting_graph(&g).unwrap();
        for (i, &x) in graph.vertices().iter().enumerate() {
            prop_assert_eq!(graph.degrees()[i], g.order() - centralizer(&g, x).order());
        }
    }

    #[test]
    fn relabeling_preserves_the_graph(addr in prop::sample::select(&SMALL[1..]), seed in any::<u64>()) {
        let g = group(addr);
        let h = relabel(&g, seed);
        let (a, b) = (noncommuting_graph(&g).unwrap(), noncommuting_graph(&h).unwrap());
        prop_assert_eq!(fingerprint(&a), fingerprint(&b));
        let iso = are_isomorphic(&a, &b).unwrap().expect("relabeled copy");
        prop_assert!(iso.verify(&a, &b));
        let back = are_isomorphic(&b, &a).unwrap().expect("symmetric");
        prop_assert!(back.verify(&b, &a));
    }

    #[test]
    fn nilpotent_quotients_stay_nilpotent(addr in prop::sample::select(&["dihedral:4", "dicyclic:2", "heisenberg:3", "dihedral:8", "dicyclic:4", "modular:4", "semidihedral:5"][..])) {
        let g = group(addr);
        prop_assert!(is_nilpotent(&g));
        let q = quotient(&g, &center(&g)).unwrap();
        prop_assert!(is_nilpotent(&q.group));
    }
}

#[test]
fn generalized_quaternion_has_one_involution() {
    for n in [2, 4, 8] {
        let g = group(&format!("dicyclic:{n}"));
        let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1, "dicyclic:{n}");
    }
}

/// All 5x5 Latin squares with first row and column 0..5 (identity at 0),
/// found by backtracking.
fn normalized_latin_squares(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn fill(sq: &mut Vec<Vec<usize>>, cell: usize, n: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if cell == n * n {
            out.push(sq.clone());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            return fill(sq, cell + 1, n, out);
        }
        for v in 0..n {
            if (0..c).all(|k| sq[r][k] != v) && (0..r).all(|k| sq[k][c] != v) {
                sq[r][c] = v;
                fill(sq, cell + 1, n, out);
            }
        }
        sq[r][c] = usize::MAX;
    }
    let mut sq = vec![vec![usize::MAX; n]; n];
    for (i, row) in sq.iter_mut().enumerate() {
        row[0] = i;
    }
    sq[0] = (0..n).collect();
    let mut out = Vec::new();
    fill(&mut sq, 0, n, &mut out);
    out
}

#[test]
fn non_associative_latin_squares_are_rejected() {
    let squares = normalized_latin_squares(5);
    assert_eq!(squares.len(), 56);
    let mut groups = 0;
    for sq in &squares {
        let associative =
            (0..5).all(|a| (0..5).all(|b| (0..5).all(|c| sq[sq[a][b]][c] == sq[a][sq[b][c]])));
        let built = FiniteGroup::from_cayley_table(sq, "loop");
        if associative {
            groups += 1;
            assert!(built.is_ok());
        } else {
            assert!(matches!(built, Err(ncg_core::Error::NotAssociative { .. })), "{sq:?}");
        }
    }
    // Only labelings of the cyclic group survive: 4! relabelings of the
    // non-identity elements modulo its 4 automorphisms.
    assert_eq!(groups, 6);
}
