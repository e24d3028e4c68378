//! Centers, centralizers, conjugacy classes, series, normal subgroups,
//! quotients, centralizer partitions, Frobenius structure and p-group profiles.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arith::{self, gcd, prime_power};
use crate::error::{Error, Result};
use crate::group::{subgroup_closure, FiniteGroup, Subgroup};

/// Default cap on group order for normal-subgroup and Frobenius searches.
pub const DEFAULT_NORMAL_SEARCH_CAP: usize = 512;

/// Conjugacy classes ordered by smallest member; class 0 is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub classes: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<usize>,
    pub center_size: usize,
}

impl ClassData {
    /// Class sizes as a sorted multiset.
    pub fn sorted_sizes(&self) -> Vec<usize> {
        let mut s = self.sizes.clone();
        s.sort_unstable();
        s
    }

    /// Distinct class sizes, ascending.
    pub fn distinct_sizes(&self) -> Vec<usize> {
        let mut s = self.sorted_sizes();
        s.dedup();
        s
    }
}

/// Conjugacy classes, computed once per group and cached on it.
pub fn conjugacy_classes(g: &FiniteGroup) -> &ClassData {
    g.classes.get_or_init(|| compute_classes(g))
}

fn compute_classes(g: &FiniteGroup) -> ClassData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in g.elements() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = Vec::new();
        for a in g.elements() {
            let y = g.conjugate(x, a);
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                class.push(y);
            }
        }
        class.sort_unstable();
        let centralizer_size = g.elements().filter(|&y| g.commutes(x, y)).count();
        assert_eq!(class.len() * centralizer_size, n, "orbit-stabilizer failed in {}", g.name());
        classes.push(class);
    }
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let center_size = sizes.iter().filter(|&&s| s == 1).count();
    ClassData { classes, sizes, class_of, center_size }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let data = conjugacy_classes(g);
    let members = data.classes.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    Subgroup::from_members_unchecked(g.order(), members)
}

pub fn centralizer(g: &FiniteGroup, x: usize) -> Subgroup {
    let members = g.elements().filter(|&y| g.commutes(x, y)).collect();
    Subgroup::from_members_unchecked(g.order(), members)
}

/// Elements commuting with every member of `h`.
pub fn centralizer_of(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members = g.elements().filter(|&y| h.members().iter().all(|&x| g.commutes(x, y))).collect();
    Subgroup::from_members_unchecked(g.order(), members)
}

/// `Z(H)` for a subgroup `H`, as a subgroup of the parent.
pub fn center_of(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members = h
        .members()
        .iter()
        .copied()
        .filter(|&y| h.members().iter().all(|&x| g.commutes(x, y)))
        .collect();
    Subgroup::from_members_unchecked(g.order(), members)
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.members().iter().all(|&x| g.elements().all(|a| h.contains(g.conjugate(x, a))))
}

/// `C^a = a^-1 C a`
pub fn conjugate_subgroup(g: &FiniteGroup, c: &Subgroup, a: usize) -> Subgroup {
    let members = c.members().iter().map(|&x| g.conjugate(x, a)).collect();
    Subgroup::from_members_unchecked(g.order(), members)
}

/// The element-wise product set `A B`, sorted.
pub fn product_set(g: &FiniteGroup, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut mask = FixedBitSet::with_capacity(g.order());
    for &x in a {
        for &y in b {
            mask.insert(g.mul(x, y));
        }
    }
    mask.ones().collect()
}

/// `[H, K]`, generated by all `[h, k]`.
pub fn commutator_subgroup(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut seed = FixedBitSet::with_capacity(g.order());
    for &x in h.members() {
        for &y in k.members() {
            seed.insert(g.commutator(x, y));
        }
    }
    subgroup_closure(g, &seed.ones().collect::<Vec<_>>())
}

/// `<[c, a] : c in C>` with `[c, a] = c^-1 a^-1 c a`.
pub fn commutator_with_element(g: &FiniteGroup, c: &Subgroup, a: usize) -> Subgroup {
    let seed: Vec<usize> = c.members().iter().map(|&x| g.commutator(x, a)).collect();
    subgroup_closure(g, &seed)
}

/// `G = G^(0) > G' > G'' > ...` until it stabilizes.
pub fn derived_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let last = series.last().expect("non-empty");
        let next = commutator_subgroup(g, last, last);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).last().is_some_and(Subgroup::is_trivial)
}

/// `Z_0 = 1 <= Z(G) = Z_1 <= Z_2 <= ...` until it stabilizes.
pub fn upper_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::trivial(g)];
    loop {
        let last = series.last().expect("non-empty");
        if last.is_whole() {
            return series;
        }
        let members = g
            .elements()
            .filter(|&x| g.elements().all(|y| last.contains(g.commutator(x, y))))
            .collect();
        let next = Subgroup::from_members_unchecked(g.order(), members);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

/// Length of the upper central series, or `None` if it stops below `G`.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    let series = upper_central_series(g);
    series.last().expect("non-empty").is_whole().then(|| series.len() - 1)
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    nilpotency_class(g).is_some()
}

pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    normal_subgroups_capped(g, DEFAULT_NORMAL_SEARCH_CAP)
}

/// All normal subgroups, sorted by order then member set.
///
/// Breadth-first search over unions of conjugacy classes: every normal
/// subgroup is the join of the classes it contains, so joining one class at a
/// time from `{0}` reaches all of them.
pub fn normal_subgroups_capped(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderLimitExceeded { limit: cap });
    }
    let classes = &conjugacy_classes(g).classes;
    let n = g.order();
    let trivial = Subgroup::trivial(g);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.members().to_vec()]);
    let mut found = vec![trivial.clone()];
    let mut queue = VecDeque::from([trivial]);
    while let Some(current) = queue.pop_front() {
        for class in classes.iter().skip(1) {
            if current.contains(class[0]) {
                continue;
            }
            let mut union = current.members().to_vec();
            union.extend_from_slice(class);
            // Lagrange: the join has order at least the smallest divisor of
            // |G| not below the union size, so a union past |G|/2 generates G
            let smallest = (union.len()..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n);
            let joined = if smallest == n { Subgroup::whole(g) } else { subgroup_closure(g, &union) };
            if seen.insert(joined.members().to_vec()) {
                debug_assert!(n.is_multiple_of(joined.order()));
                found.push(joined.clone());
                queue.push_back(joined);
            }
        }
    }
    found.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    Ok(found)
}

/// A quotient group with its projection map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset index of `x`.
    pub projection: Vec<usize>,
    /// Smallest member of each coset.
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// All elements of `G` mapping into the given subgroup of the quotient.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let members = (0..self.projection.len()).filter(|&x| h.contains(self.projection[x])).collect();
        Subgroup::from_members_unchecked(self.projection.len(), members)
    }
}

/// `G/N` with cosets ordered by their smallest member.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(x);
        for &m in n.members() {
            projection[g.mul(x, m)] = id;
        }
    }
    let name = format!("{}/{}", g.name(), n.order());
    let reps = &representatives;
    let proj = &projection;
    let group = FiniteGroup::from_rule(name, reps.len(), |a, b| proj[g.mul(reps[a], reps[b])]);
    for x in g.elements() {
        for y in g.elements() {
            if projection[g.mul(x, y)] != group.mul(projection[x], projection[y]) {
                return Err(Error::Internal("quotient projection is not a homomorphism".into()));
            }
        }
    }
    Ok(Quotient { group, projection, representatives })
}

/// Distinct centralizers of non-central elements.
#[derive(Debug, Clone, Serialize)]
pub struct CentralizerPartition {
    pub components: Vec<Subgroup>,
    pub center: Subgroup,
    pub is_ac: bool,
}

impl CentralizerPartition {
    /// Number of components; equals the clique number when the group is AC.
    pub fn omega(&self) -> usize {
        self.components.len()
    }

    /// Checks the partition invariants of an AC group, including the
    /// counting identity `|G| = -(omega - 1)|Z| + sum |S|`.
    pub fn verify(&self, g: &FiniteGroup) -> std::result::Result<(), String> {
        if !self.is_ac {
            return Err("group is not AC".into());
        }
        for (i, a) in self.components.iter().enumerate() {
            if !a.is_abelian(g) {
                return Err(format!("component {i} is not abelian"));
            }
            for (j, b) in self.components.iter().enumerate().skip(i + 1) {
                if a.intersection(b) != self.center {
                    return Err(format!("components {i} and {j} meet outside the center"));
                }
            }
        }
        let mut covered = self.center.mask();
        for c in &self.components {
            covered.union_with(&c.mask());
        }
        if covered.count_ones(..) != g.order() {
            return Err("components do not cover the group".into());
        }
        let z = self.center.order() as i64;
        let total: i64 = self.components.iter().map(|c| c.order() as i64).sum();
        if -(self.omega() as i64 - 1) * z + total != g.order() as i64 {
            return Err("counting identity fails".into());
        }
        Ok(())
    }
}

pub fn ac_partition(g: &FiniteGroup) -> Result<CentralizerPartition> {
    let z = center(g);
    if z.is_whole() {
        return Err(Error::AbelianGroup(g.name().to_string()));
    }
    let mut components: Vec<Subgroup> = Vec::new();
    let mut seen = HashSet::new();
    for x in g.elements().filter(|&x| !z.contains(x)) {
        let c = centralizer(g, x);
        if seen.insert(c.members().to_vec()) {
            components.push(c);
        }
    }
    components.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    let is_ac = components.iter().all(|c| c.is_abelian(g));
    let partition = CentralizerPartition { components, center: z, is_ac };
    if is_ac {
        partition.verify(g).map_err(|e| Error::Internal(format!("{}: {e}", g.name())))?;
    }
    Ok(partition)
}

pub fn is_ac_group(g: &FiniteGroup) -> bool {
    ac_partition(g).is_ok_and(|p| p.is_ac)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusStructure {
    pub kernel: Subgroup,
    pub complement: Subgroup,
}

impl FrobeniusStructure {
    /// Checks every structural invariant against `g`.
    pub fn verify(&self, g: &FiniteGroup) -> std::result::Result<(), String> {
        let (f, k) = (&self.kernel, &self.complement);
        if !is_normal(g, f) {
            return Err("kernel is not normal".into());
        }
        if !f.intersection(k).is_trivial() {
            return Err("kernel and complement intersect nontrivially".into());
        }
        if f.order() * k.order() != g.order() {
            return Err("|F||K| != |G|".into());
        }
        if let Some(x) = kernel_condition_failure(g, f) {
            return Err(format!("centralizer of kernel element {x} leaves the kernel"));
        }
        if (f.order() - 1) % k.order() != 0 {
            return Err("|K| does not divide |F| - 1".into());
        }
        Ok(())
    }
}

/// First non-identity `x` in `f` with `C_G(x)` not inside `f`.
pub(crate) fn kernel_condition_failure(g: &FiniteGroup, f: &Subgroup) -> Option<usize> {
    f.members()
        .iter()
        .copied()
        .skip(1)
        .find(|&x| g.elements().any(|y| g.commutes(x, y) && !f.contains(y)))
}

pub fn frobenius_structure(g: &FiniteGroup) -> Result<Option<FrobeniusStructure>> {
    frobenius_structure_capped(g, DEFAULT_NORMAL_SEARCH_CAP)
}

/// Finds a proper nontrivial normal subgroup containing the centralizers of
/// its non-identity elements (largest order first, then smallest member set)
/// and a complement to it.
pub fn frobenius_structure_capped(g: &FiniteGroup, cap: usize) -> Result<Option<FrobeniusStructure>> {
    let normals = normal_subgroups_capped(g, cap)?;
    let mut candidates: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| !n.is_trivial() && !n.is_whole() && kernel_condition_failure(g, n).is_none())
        .collect();
    candidates.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members().cmp(b.members())));
    let Some(kernel) = candidates.first() else {
        return Ok(None);
    };
    let complement = find_complement(g, kernel).ok_or(Error::KernelFoundNoComplement { kernel_order: kernel.order() })?;
    Ok(Some(FrobeniusStructure { kernel: (*kernel).clone(), complement }))
}

/// A subgroup `K` with `K n N = 1` and `|K||N| = |G|`, for normal `N`.
///
/// Backtracks over one representative per uncovered coset of `N`, growing the
/// candidate by closure and rejecting any closure that meets `N` nontrivially.
pub fn find_complement(g: &FiniteGroup, n: &Subgroup) -> Option<Subgroup> {
    let target = g.order() / n.order();
    let coset_of = coset_labels(g, n);
    let mut visited = HashSet::new();
    complement_search(g, n, &coset_of, target, Subgroup::trivial(g), &mut visited)
}

fn coset_labels(g: &FiniteGroup, n: &Subgroup) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in g.elements() {
        if label[x] == usize::MAX {
            for &m in n.members() {
                label[g.mul(x, m)] = next;
            }
            next += 1;
        }
    }
    label
}

fn complement_search(
    g: &FiniteGroup,
    n: &Subgroup,
    coset_of: &[usize],
    target: usize,
    current: Subgroup,
    visited: &mut HashSet<Vec<usize>>,
) -> Option<Subgroup> {
    if current.order() == target {
        return Some(current);
    }
    let covered: HashSet<usize> = current.members().iter().map(|&x| coset_of[x]).collect();
    let next_coset = g.elements().map(|x| coset_of[x]).find(|c| !covered.contains(c))?;
    for x in g.elements().filter(|&x| coset_of[x] == next_coset) {
        let mut seed = current.members().to_vec();
        seed.push(x);
        let grown = subgroup_closure(g, &seed);
        if grown.order() > target || grown.members().iter().skip(1).any(|&y| n.contains(y)) {
            continue;
        }
        if !visited.insert(grown.members().to_vec()) {
            continue;
        }
        if let Some(found) = complement_search(g, n, coset_of, target, grown, visited) {
            return Some(found);
        }
    }
    None
}

/// Numeric invariants of a non-abelian p-group of order `p^n` with center
/// of order `p^r` and distinct non-central class sizes `p^a_1 < ... < p^a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PGroupProfile {
    pub p: u64,
    pub n: u32,
    pub r: u32,
    pub a_list: Vec<u32>,
    /// `gcd(a_1, ..., a_k, n - r)`
    pub u: u32,
}

pub fn p_group_profile(g: &FiniteGroup) -> Result<PGroupProfile> {
    let (p, n) = prime_power(g.order() as u64).ok_or_else(|| Error::NotPGroup(g.name().to_string()))?;
    let data = conjugacy_classes(g);
    if data.center_size == g.order() {
        return Err(Error::AbelianGroup(g.name().to_string()));
    }
    let r = arith::valuation(data.center_size as u64, p);
    let a_list: Vec<u32> = data
        .distinct_sizes()
        .into_iter()
        .filter(|&s| s > 1)
        .map(|s| arith::valuation(s as u64, p))
        .collect();
    let u = a_list.iter().fold((n - r) as u64, |acc, &a| gcd(acc, a as u64)) as u32;
    let profile = PGroupProfile { p, n, r, a_list, u };
    debug_assert!(profile.r >= 1 && profile.r < profile.n && profile.u >= 1);
    debug_assert!(profile.a_list.iter().all(|&a| a >= 1 && a < n && a % u == 0));
    Ok(profile)
}

/// Order-24 class-size signature of `S_4`.
pub const S4_CLASS_SIZES: [usize; 5] = [1, 3, 6, 6, 8];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{matrix_group, parse_group_address, MatrixKind};

    fn g(addr: &str) -> FiniteGroup {
        parse_group_address(addr).unwrap()
    }

    fn brute_center(g: &FiniteGroup) -> Vec<usize> {
        g.elements().filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x))).collect()
    }

    #[test]
    fn centers() {
        assert_eq!(center(&g("symmetric:3")).members(), &[0]);
        let d4 = g("dihedral:4");
        assert_eq!(center(&d4).members(), brute_center(&d4).as_slice());
        assert_eq!(center(&d4).members(), &[0, 2]);
        assert!(center(&g("cyclic:6")).is_whole());
    }

    #[test]
    fn centralizers() {
        let s3 = g("dihedral:3");
        assert_eq!(centralizer(&s3, 3).order(), 2);
        let d4 = g("dihedral:4");
        // s = index 4, r^2 s = index 6
        assert_eq!(centralizer(&d4, 4).members(), &[0, 2, 4, 6]);
        assert!(centralizer(&d4, 0).is_whole());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(conjugacy_classes(&g("dicyclic:2")).sorted_sizes(), vec![1, 1, 2, 2, 2]);
        assert_eq!(conjugacy_classes(&g("symmetric:3")).sorted_sizes(), vec![1, 2, 3]);
        assert_eq!(conjugacy_classes(&g("cyclic:5")).sorted_sizes(), vec![1; 5]);
        let heis = g("heisenberg:3");
        let h = conjugacy_classes(&heis);
        assert_eq!(h.center_size, 3);
        assert!(h.sizes.iter().all(|&s| s == 1 || s == 3));
    }

    #[test]
    fn solvability() {
        assert!(is_solvable(&g("symmetric:4")));
        assert!(!is_solvable(&g("alternating:5")));
        assert_eq!(derived_series(&g("alternating:5")).len(), 1);
        assert!(is_solvable(&g("heisenberg:5")));
    }

    #[test]
    fn nilpotency() {
        assert_eq!(nilpotency_class(&g("dihedral:4")), Some(2));
        let d8 = g("dihedral:8");
        assert_eq!(nilpotency_class(&d8), Some(3));
        assert_eq!(upper_central_series(&d8)[2].order(), 4);
        assert_eq!(nilpotency_class(&g("symmetric:3")), None);
        assert_eq!(upper_central_series(&g("symmetric:3")).len(), 1);
        assert_eq!(nilpotency_class(&g("cyclic:4")), Some(1));
    }

    #[test]
    fn normal_subgroup_search() {
        let sizes = |addr: &str| normal_subgroups(&g(addr)).unwrap().iter().map(Subgroup::order).collect::<Vec<_>>();
        assert_eq!(sizes("symmetric:3"), vec![1, 3, 6]);
        assert_eq!(sizes("dicyclic:2"), vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(sizes("alternating:5"), vec![1, 60]);
        assert_eq!(sizes("symmetric:4"), vec![1, 4, 12, 24]);
        assert!(matches!(normal_subgroups_capped(&g("symmetric:4"), 10), Err(Error::OrderLimitExceeded { limit: 10 })));
    }

    #[test]
    fn quotients() {
        let d4 = g("dihedral:4");
        let q = quotient(&d4, &center(&d4)).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.group.exponent(), 2);
        assert_eq!(q.representatives, vec![0, 1, 4, 5]);
        let same = quotient(&d4, &Subgroup::trivial(&d4)).unwrap();
        assert_eq!(same.group.to_rows(), d4.to_rows());
        let sl = matrix_group(MatrixKind::Special, 2, 3).unwrap();
        let a4 = quotient(&sl, &center(&sl)).unwrap().group;
        assert_eq!(a4.order(), 12);
        assert_eq!(center(&a4).order(), 1);
        let s = Subgroup::from_members_unchecked(8, vec![0, 4]);
        assert_eq!(quotient(&d4, &s).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn commutators_with_elements() {
        let d4 = g("dihedral:4");
        let c = Subgroup::from_members_unchecked(8, vec![0, 4]);
        assert_eq!(commutator_with_element(&d4, &c, 1).members(), &[0, 2]);
        assert!(commutator_with_element(&d4, &center(&d4), 5).is_trivial());
        let s3 = g("dihedral:3");
        let rotations = subgroup_closure(&s3, &[1]);
        assert_eq!(commutator_with_element(&s3, &rotations, 3), rotations);
    }

    #[test]
    fn partitions() {
        let p = ac_partition(&g("dihedral:3")).unwrap();
        assert!(p.is_ac);
        assert_eq!(p.components.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![2, 2, 2, 3]);
        let p = ac_partition(&g("dihedral:4")).unwrap();
        assert_eq!(p.components.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![4, 4, 4]);
        let s4 = g("symmetric:4");
        let p = ac_partition(&s4).unwrap();
        assert!(!p.is_ac);
        assert!(p.components.iter().any(|c| c.order() == 8 && !c.is_abelian(&s4)));
        assert!(matches!(ac_partition(&g("cyclic:4")), Err(Error::AbelianGroup(_))));
    }

    #[test]
    fn frobenius_detection() {
        let s3g = g("symmetric:3");
        let s3 = frobenius_structure(&s3g).unwrap().unwrap();
        assert_eq!((s3.kernel.order(), s3.complement.order()), (3, 2));
        let a4g = g("alternating:4");
        let a4 = frobenius_structure(&a4g).unwrap().unwrap();
        assert_eq!((a4.kernel.order(), a4.complement.order()), (4, 3));
        a4.verify(&a4g).unwrap();
        assert!(frobenius_structure(&g("dihedral:4")).unwrap().is_none());
        let f20 = frobenius_structure(&g("affine:5")).unwrap().unwrap();
        assert_eq!((f20.kernel.order(), f20.complement.order()), (5, 4));
        let gd = frobenius_structure(&g("gendihedral:3")).unwrap().unwrap();
        assert_eq!((gd.kernel.order(), gd.complement.order()), (9, 2));
    }

    #[test]
    fn profiles() {
        let q8 = p_group_profile(&g("dicyclic:2")).unwrap();
        assert_eq!(q8, PGroupProfile { p: 2, n: 3, r: 1, a_list: vec![1], u: 1 });
        let d8 = p_group_profile(&g("dihedral:8")).unwrap();
        assert_eq!(d8, PGroupProfile { p: 2, n: 4, r: 1, a_list: vec![1, 2], u: 1 });
        let h3 = p_group_profile(&g("heisenberg:3")).unwrap();
        assert_eq!(h3, PGroupProfile { p: 3, n: 3, r: 1, a_list: vec![1], u: 1 });
        assert!(matches!(p_group_profile(&g("symmetric:3")), Err(Error::NotPGroup(_))));
        assert!(matches!(p_group_profile(&g("cyclic:8")), Err(Error::AbelianGroup(_))));
    }
}
