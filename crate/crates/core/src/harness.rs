//! Machine checks of the structural facts relating a group to its
//! non-commuting graph, the solvable AC-group classifier, and the scan for
//! groups with isomorphic non-commuting graphs.
//!
//! Every check returns a [`CheckResult`] whose witness carries enough detail
//! to recompute the verdict with the `structure` and `graph` operations.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{self, divides, divisors, prime_power};
use crate::error::{Error, Result};
use crate::graph::{
    are_isomorphic_capped, fingerprint, max_clique_capped, noncommuting_graph, Fingerprint, IsoMap, NCGraph,
    DEFAULT_CLIQUE_CAP, DEFAULT_ISO_CAP,
};
use crate::group::{subgroup_closure, FiniteGroup, Subgroup};
use crate::structure::{
    ac_partition, center, center_of, centralizer, commutator_with_element, conjugacy_classes, conjugate_subgroup,
    frobenius_structure_capped, is_nilpotent, is_normal, is_solvable, nilpotency_class,
    normal_subgroups_capped, p_group_profile, product_set, quotient, PGroupProfile, DEFAULT_NORMAL_SEARCH_CAP,
    S4_CLASS_SIZES,
};

pub const LEMMA_2_1: &str = "lemma2.1";
pub const LEMMA_2_4: &str = "lemma2.4";
pub const LEMMA_2_5: &str = "lemma2.5";
pub const LEMMA_2_6: &str = "lemma2.6";
pub const PROP_2_7: &str = "prop2.7";
pub const LEMMA_2_8: &str = "lemma2.8";
pub const FROBENIUS: &str = "frobenius";
pub const CLASSIFY: &str = "classify";
pub const THEOREM_1_2: &str = "theorem1.2";
pub const CONJECTURE_1_1: &str = "conjecture1.1";

/// Check ids that apply to one group at a time.
pub const SINGLE_GROUP_CHECKS: [&str; 6] = [LEMMA_2_5, LEMMA_2_6, PROP_2_7, LEMMA_2_8, FROBENIUS, CLASSIFY];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub subjects: Vec<String>,
    pub status: Status,
    pub witness: Value,
}

impl CheckResult {
    fn new(check: &str, subjects: &[&str], status: Status, witness: Value) -> Self {
        Self { check: check.to_string(), subjects: subjects.iter().map(|s| s.to_string()).collect(), status, witness }
    }

    fn not_applicable(check: &str, subjects: &[&str], reason: impl Into<String>) -> Self {
        Self::new(check, subjects, Status::NotApplicable, json!({ "reason": reason.into() }))
    }

    fn verdict(check: &str, subjects: &[&str], ok: bool, witness: Value) -> Self {
        Self::new(check, subjects, if ok { Status::Pass } else { Status::Fail }, witness)
    }
}

/// Resource limits shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub clique_cap: usize,
    pub iso_cap: usize,
    pub normal_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { clique_cap: DEFAULT_CLIQUE_CAP, iso_cap: DEFAULT_ISO_CAP, normal_cap: DEFAULT_NORMAL_SEARCH_CAP }
    }
}

fn z_order(g: &FiniteGroup) -> usize {
    conjugacy_classes(g).center_size
}

fn is_nonabelian_p_group(g: &FiniteGroup) -> bool {
    prime_power(g.order() as u64).is_some() && !g.is_abelian()
}

/// Divisibility of centralizer orders across a graph isomorphism, and the
/// order equality it forces when `|Z(G)| >= |Z(H)|` and some non-central `g`
/// has `|C_G(g)|^2 >= |G| |Z(G)|`.
///
/// `iso` maps positions of `noncommuting_graph(g)` to positions of
/// `noncommuting_graph(h)`.
pub fn check_lemma_2_1(g: &FiniteGroup, h: &FiniteGroup, iso: &IsoMap) -> Result<CheckResult> {
    let (ga, hb) = (noncommuting_graph(g)?, noncommuting_graph(h)?);
    if !iso.verify(&ga, &hb) {
        return Err(Error::InvalidIso(format!("{} -> {}", g.name(), h.name())));
    }
    let subjects = [g.name(), h.name()];
    let (zg, zh) = (z_order(g) as i128, z_order(h) as i128);
    for (x, y) in iso.element_pairs(&ga, &hb) {
        let class_size = (g.order() / centralizer(g, x).order()) as i128;
        let ch = centralizer(h, y).order() as i128;
        let rhs = (class_size - 1) * (zh - zg);
        if !divides(ch, rhs) {
            let w = json!({ "part": 1, "g": x, "h": y, "centralizer_h": ch, "class_size_g": class_size, "z_g": zg, "z_h": zh, "rhs": rhs });
            return Ok(CheckResult::new(LEMMA_2_1, &subjects, Status::Fail, w));
        }
    }
    let big_centralizer = (zg >= zh)
        .then(|| {
            ga.vertices()
                .iter()
                .copied()
                .find(|&x| (centralizer(g, x).order() as i128).pow(2) >= g.order() as i128 * zg)
        })
        .flatten();
    let part2_holds = big_centralizer.is_none() || g.order() == h.order();
    let witness = json!({
        "z_g": zg,
        "z_h": zh,
        "rhs_zero": zg == zh,
        "pairs_checked": ga.vertex_count(),
        "part2_element": big_centralizer,
        "order_g": g.order(),
        "order_h": h.order(),
    });
    Ok(CheckResult::verdict(LEMMA_2_1, &subjects, part2_holds, witness))
}

/// Every divisor of `p^r (p^u - 1)`: the possible center orders of a group
/// whose non-commuting graph matches that of the profiled p-group.
pub fn compatible_center_orders(profile: &PGroupProfile) -> Vec<u64> {
    divisors(profile.p.pow(profile.r) * (profile.p.pow(profile.u) - 1))
}

/// `|Z(H)|` must be among [`compatible_center_orders`] of `p`'s profile.
pub fn check_lemma_2_4(p: &FiniteGroup, h: &FiniteGroup) -> CheckResult {
    let subjects = [p.name(), h.name()];
    let Ok(profile) = p_group_profile(p) else {
        return CheckResult::not_applicable(LEMMA_2_4, &subjects, "first subject is not a non-abelian p-group");
    };
    let allowed = compatible_center_orders(&profile);
    let z = z_order(h) as u64;
    let bound = profile.p.pow(profile.r) * (profile.p.pow(profile.u) - 1);
    let witness = json!({ "profile": profile, "bound": bound, "z_h": z });
    CheckResult::verdict(LEMMA_2_4, &subjects, allowed.contains(&z), witness)
}

/// `omega(G) = 1 (mod p)` for AC groups with `G/Z(G)` of order a power of `p`.
pub fn check_lemma_2_5(g: &FiniteGroup, limits: &Limits) -> CheckResult {
    let subjects = [g.name()];
    let Ok(partition) = ac_partition(g) else {
        return CheckResult::not_applicable(LEMMA_2_5, &subjects, "abelian");
    };
    if !partition.is_ac {
        return CheckResult::not_applicable(LEMMA_2_5, &subjects, "not an AC-group");
    }
    let index = (g.order() / partition.center.order()) as u64;
    let Some((p, _)) = prime_power(index) else {
        return CheckResult::not_applicable(LEMMA_2_5, &subjects, format!("|G/Z| = {index} is not a prime power"));
    };
    let omega = partition.omega();
    let graph = noncommuting_graph(g).expect("non-abelian");
    let clique = match max_clique_capped(&graph, limits.clique_cap) {
        Ok(c) => c.len(),
        Err(e) => return CheckResult::not_applicable(LEMMA_2_5, &subjects, format!("skipped: {e}")),
    };
    let ok = omega as u64 % p == 1 && clique == omega;
    let witness = json!({ "p": p, "omega": omega, "max_clique": clique, "center": partition.center.order() });
    CheckResult::verdict(LEMMA_2_5, &subjects, ok, witness)
}

/// Outcome of one `(C, a)` instance of the permutable-conjugate identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugateProduct {
    /// `C C^a != C^a C`
    NotPermutable,
    Holds,
    Fails { product: Vec<usize>, expected: Vec<usize> },
}

/// When `C C^a = C^a C`, the product equals `C <[C, a]>`.
pub fn lemma_2_6_instance(g: &FiniteGroup, c: &Subgroup, a: usize) -> ConjugateProduct {
    let ca = conjugate_subgroup(g, c, a);
    let left = product_set(g, c.members(), ca.members());
    if left != product_set(g, ca.members(), c.members()) {
        return ConjugateProduct::NotPermutable;
    }
    let commutators = commutator_with_element(g, c, a);
    let right = product_set(g, c.members(), commutators.members());
    if left == right {
        ConjugateProduct::Holds
    } else {
        ConjugateProduct::Fails { product: left, expected: right }
    }
}

pub fn check_lemma_2_6(g: &FiniteGroup, c: &Subgroup, a: usize) -> CheckResult {
    let subjects = [g.name()];
    match lemma_2_6_instance(g, c, a) {
        ConjugateProduct::NotPermutable => CheckResult::not_applicable(LEMMA_2_6, &subjects, "C C^a != C^a C"),
        ConjugateProduct::Holds => CheckResult::new(LEMMA_2_6, &subjects, Status::Pass, json!({ "c": c.members(), "a": a })),
        ConjugateProduct::Fails { product, expected } => CheckResult::new(
            LEMMA_2_6,
            &subjects,
            Status::Fail,
            json!({ "c": c.members(), "a": a, "c_ca": product, "c_commutators": expected }),
        ),
    }
}

/// Subgroups generated by at most `max_generators` elements (1 or 2),
/// deduplicated and sorted.
pub fn small_generated_subgroups(g: &FiniteGroup, max_generators: usize) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut add = |s: Subgroup| {
        if seen.insert(s.members().to_vec()) {
            out.push(s);
        }
    };
    add(Subgroup::trivial(g));
    for x in g.elements() {
        if max_generators >= 1 {
            add(subgroup_closure(g, &[x]));
        }
        if max_generators >= 2 {
            for y in x + 1..g.order() {
                add(subgroup_closure(g, &[x, y]));
            }
        }
    }
    out.sort();
    out
}

/// Exhaustive sweep over every subgroup generated by at most
/// `max_generators` elements and every `a` in `G`.
pub fn check_lemma_2_6_exhaustive(g: &FiniteGroup, max_generators: usize) -> CheckResult {
    let subjects = [g.name()];
    let subgroups = small_generated_subgroups(g, max_generators);
    let mut applicable = 0u64;
    let mut instances = 0u64;
    for c in &subgroups {
        for a in g.elements() {
            instances += 1;
            match lemma_2_6_instance(g, c, a) {
                ConjugateProduct::NotPermutable => {}
                ConjugateProduct::Holds => applicable += 1,
                ConjugateProduct::Fails { product, expected } => {
                    let w = json!({ "c": c.members(), "a": a, "c_ca": product, "c_commutators": expected });
                    return CheckResult::new(LEMMA_2_6, &subjects, Status::Fail, w);
                }
            }
        }
    }
    let witness = json!({ "subgroups": subgroups.len(), "instances": instances, "permutable": applicable, "max_generators": max_generators });
    if applicable == 0 {
        return CheckResult::new(LEMMA_2_6, &subjects, Status::NotApplicable, witness);
    }
    CheckResult::new(LEMMA_2_6, &subjects, Status::Pass, witness)
}

/// In a nilpotent AC-group of class above 2, exactly one centralizer of a
/// non-central element is normal, and it has maximal order.
pub fn check_prop_2_7(g: &FiniteGroup) -> CheckResult {
    let subjects = [g.name()];
    let class = match nilpotency_class(g) {
        Some(c) if c > 2 => c,
        Some(c) => return CheckResult::not_applicable(PROP_2_7, &subjects, format!("nilpotency class {c}")),
        None => return CheckResult::not_applicable(PROP_2_7, &subjects, "not nilpotent"),
    };
    let partition = ac_partition(g).expect("class > 2 is non-abelian");
    if !partition.is_ac {
        return CheckResult::not_applicable(PROP_2_7, &subjects, "not an AC-group");
    }
    let normal: Vec<&Subgroup> = partition.components.iter().filter(|c| is_normal(g, c)).collect();
    let largest = partition.components.iter().map(Subgroup::order).max().unwrap_or(0);
    let ok = normal.len() == 1 && normal[0].order() >= largest;
    let witness = json!({
        "nilpotency_class": class,
        "components": partition.omega(),
        "normal_components": normal.iter().map(|c| c.members()).collect::<Vec<_>>(),
        "largest_component": largest,
    });
    CheckResult::verdict(PROP_2_7, &subjects, ok, witness)
}

/// In a p-group of class exactly 2 every class-size exponent is at most `r`.
///
/// For p-groups of higher class the row is not applicable, and the witness
/// records whether some exponent exceeds `r` (showing the hypothesis is
/// needed).
pub fn check_lemma_2_8(g: &FiniteGroup) -> CheckResult {
    let subjects = [g.name()];
    let profile = match p_group_profile(g) {
        Ok(p) => p,
        Err(e) => return CheckResult::not_applicable(LEMMA_2_8, &subjects, e.to_string()),
    };
    let class = nilpotency_class(g).expect("p-groups are nilpotent");
    let exceeds = profile.a_list.iter().any(|&a| a > profile.r);
    if class != 2 {
        let w = json!({ "reason": format!("nilpotency class {class}"), "profile": profile, "exceeds_r": exceeds });
        return CheckResult::new(LEMMA_2_8, &subjects, Status::NotApplicable, w);
    }
    CheckResult::verdict(LEMMA_2_8, &subjects, !exceeds, json!({ "profile": profile }))
}

/// Kernel condition, `|K|` dividing `|F| - 1`, and the sub-Frobenius groups
/// `K F_1` for every normal `1 < F_1 <= F`.
pub fn check_frobenius(g: &FiniteGroup, limits: &Limits) -> Result<CheckResult> {
    let subjects = [g.name()];
    let Some(fs) = frobenius_structure_capped(g, limits.normal_cap)? else {
        return Ok(CheckResult::not_applicable(FROBENIUS, &subjects, "no Frobenius kernel"));
    };
    let (f, k) = (&fs.kernel, &fs.complement);
    let mut witness = json!({ "kernel": f.members(), "complement": k.members() });
    if let Err(reason) = fs.verify(g) {
        witness["violation"] = json!(reason);
        return Ok(CheckResult::new(FROBENIUS, &subjects, Status::Fail, witness));
    }
    let mut sub_kernels = Vec::new();
    for f1 in normal_subgroups_capped(g, limits.normal_cap)? {
        if f1.is_trivial() || !f1.is_subset_of(f) {
            continue;
        }
        let seed: Vec<usize> = k.members().iter().chain(f1.members()).copied().collect();
        let h1 = subgroup_closure(g, &seed);
        let ok = h1.order() == k.order() * f1.order()
            && f1.intersection(k).is_trivial()
            && f1.members().iter().skip(1).all(|&x| h1.members().iter().all(|&y| !g.commutes(x, y) || f1.contains(y)));
        sub_kernels.push(f1.order());
        if !ok {
            witness["violation"] = json!({ "sub_kernel": f1.members(), "generated_order": h1.order() });
            return Ok(CheckResult::new(FROBENIUS, &subjects, Status::Fail, witness));
        }
    }
    witness["sub_kernel_orders"] = json!(sub_kernels);
    Ok(CheckResult::new(FROBENIUS, &subjects, Status::Pass, witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ACType {
    H1,
    H2,
    H3,
    H4,
    H5,
}

/// Numeric data of an H5 group `H` with kernel preimage `F`:
/// `|F| = b q^kappa`, `|C_F(f)| = b q^nu`, `|Z(H)| = b q^omega_exp`,
/// `|H| = a q^kappa`, `|K| = a q^omega_exp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H5Profile {
    pub q: u64,
    pub kappa: u32,
    pub nu_list: Vec<u32>,
    pub omega_exp: u32,
    pub a: u64,
    pub b: u64,
    /// Reported only: `kappa - max(nu) <= omega_exp`.
    pub class_equation_bound: bool,
}

impl H5Profile {
    pub fn invariants_hold(&self) -> bool {
        let exps_ok = self.omega_exp >= 1 && self.nu_list.iter().all(|&nu| self.omega_exp < nu && nu < self.kappa);
        exps_ok && self.a.is_multiple_of(self.b) && arith::gcd(self.a, self.q) == 1 && arith::gcd(self.b, self.q) == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum ACParameters {
    H1 { normal: Subgroup },
    H2 { kernel: Subgroup, complement: Subgroup },
    H3 { quotient_class_sizes: Vec<usize> },
    H4 { abelian: Subgroup, prime_power: Subgroup, prime: u64 },
    H5 { kernel: Subgroup, complement: Subgroup, complement_abelian: bool, profile: H5Profile },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ACClass {
    pub type_tag: ACType,
    pub parameters: ACParameters,
    /// Clique number predicted by the type's formula.
    pub predicted_omega: usize,
    /// Component count of the centralizer partition.
    pub partition_omega: usize,
}

/// Assigns one of the types H1-H5 to a non-abelian solvable AC-group,
/// testing H4, H1, H3, then H2/H5.
pub fn classify_ac(g: &FiniteGroup, limits: &Limits) -> Result<ACClass> {
    let partition = ac_partition(g)?;
    if !is_solvable(g) {
        return Err(Error::NotSolvable(g.name().to_string()));
    }
    if !partition.is_ac {
        return Err(Error::NotACGroup(g.name().to_string()));
    }
    let z = &partition.center;
    let n = g.order();
    let class = |type_tag, parameters, predicted_omega| ACClass {
        type_tag,
        parameters,
        predicted_omega,
        partition_omega: partition.omega(),
    };

    // H4: G = A x Q with A abelian and Q of prime-power order
    for (q, _) in arith::factorize(n as u64) {
        let is_q_power = |k: usize| prime_power(k as u64).is_some_and(|(p, _)| p == q) || k == 1;
        let q_part: Vec<usize> = g.elements().filter(|&x| is_q_power(g.element_order(x))).collect();
        let a_part: Vec<usize> = z.members().iter().copied().filter(|&x| arith::gcd(g.element_order(x) as u64, q) == 1).collect();
        if q_part.len() * a_part.len() != n {
            continue;
        }
        let sylow = subgroup_closure(g, &q_part);
        if sylow.order() != q_part.len() {
            continue;
        }
        let abelian = Subgroup::from_members_unchecked(n, a_part);
        let q_group = sylow.to_group(g, format!("{}[{q}]", g.name()));
        let omega_q = ac_partition(&q_group)?.omega();
        return Ok(class(ACType::H4, ACParameters::H4 { abelian, prime_power: sylow, prime: q }, omega_q));
    }

    let normals = normal_subgroups_capped(g, limits.normal_cap)?;
    // H1: non-nilpotent with an abelian normal subgroup of prime index
    if !is_nilpotent(g) {
        let found = normals.iter().find(|m| arith::is_prime((n / m.order()) as u64) && m.is_abelian(g));
        if let Some(m) = found {
            let predicted = m.order() / z.order() + 1;
            return Ok(class(ACType::H1, ACParameters::H1 { normal: m.clone() }, predicted));
        }
    }

    let central_quotient = quotient(g, z)?;
    let qg = &central_quotient.group;
    // H3: G/Z isomorphic to S4, recognized by order and class sizes
    let quotient_sizes = conjugacy_classes(qg).sorted_sizes();
    if qg.order() == 24 && quotient_sizes == S4_CLASS_SIZES {
        return Ok(class(ACType::H3, ACParameters::H3 { quotient_class_sizes: quotient_sizes }, 13));
    }

    // H2 / H5: G/Z Frobenius
    if let Some(fs) = frobenius_structure_capped(qg, limits.normal_cap)? {
        let kernel = central_quotient.preimage(&fs.kernel);
        let complement = central_quotient.preimage(&fs.complement);
        let index = kernel.order() / z.order();
        if kernel.is_abelian(g) && complement.is_abelian(g) {
            return Ok(class(ACType::H2, ACParameters::H2 { kernel, complement }, index + 1));
        }
        if !kernel.is_abelian(g) && center_of(g, &kernel) == *z {
            if let Some((q, _)) = prime_power(index as u64) {
                let f_group = kernel.to_group(g, format!("{}[F]", g.name()));
                let omega_f = ac_partition(&f_group)?.omega();
                let profile = h5_profile(g, &kernel, &complement, z, q)?;
                let complement_abelian = complement.is_abelian(g);
                let params = ACParameters::H5 { kernel, complement, complement_abelian, profile };
                return Ok(class(ACType::H5, params, index + omega_f));
            }
        }
    }
    Err(Error::Unclassifiable(g.name().to_string()))
}

fn h5_profile(g: &FiniteGroup, f: &Subgroup, k: &Subgroup, z: &Subgroup, q: u64) -> Result<H5Profile> {
    let kappa = arith::valuation(f.order() as u64, q);
    let b = f.order() as u64 / q.pow(kappa);
    let omega_exp = arith::valuation(z.order() as u64, q);
    let a = g.order() as u64 / q.pow(kappa);
    let mut nu_list = Vec::new();
    for &x in f.members().iter().filter(|&&x| !z.contains(x)) {
        let c = centralizer(g, x).intersection(f).order() as u64;
        let nu = arith::valuation(c, q);
        if c != b * q.pow(nu) {
            return Err(Error::Internal(format!("{}: |C_F(f)| = {c} is not b q^nu", g.name())));
        }
        nu_list.push(nu);
    }
    nu_list.sort_unstable();
    nu_list.dedup();
    if z.order() as u64 != b * q.pow(omega_exp) || k.order() as u64 != a * q.pow(omega_exp) {
        return Err(Error::Internal(format!("{}: H5 orders are inconsistent", g.name())));
    }
    let max_nu = nu_list.iter().copied().max().unwrap_or(kappa);
    Ok(H5Profile { q, kappa, nu_list, omega_exp, a, b, class_equation_bound: kappa - max_nu <= omega_exp })
}

/// Classification row: the predicted clique number must equal both the
/// partition count and the exact clique number of the graph.
pub fn check_classify(g: &FiniteGroup, limits: &Limits) -> CheckResult {
    let subjects = [g.name()];
    let class = match classify_ac(g, limits) {
        Ok(c) => c,
        Err(e @ Error::Unclassifiable(_)) => {
            return CheckResult::new(CLASSIFY, &subjects, Status::Fail, json!({ "error": e.to_string() }))
        }
        Err(e) => return CheckResult::not_applicable(CLASSIFY, &subjects, e.to_string()),
    };
    let graph = noncommuting_graph(g).expect("AC-groups here are non-abelian");
    let clique = match max_clique_capped(&graph, limits.clique_cap) {
        Ok(c) => c.len(),
        Err(e) => return CheckResult::not_applicable(CLASSIFY, &subjects, format!("skipped: {e}")),
    };
    let h5_ok = match &class.parameters {
        ACParameters::H5 { profile, .. } => profile.invariants_hold(),
        _ => true,
    };
    let ok = class.predicted_omega == clique && class.partition_omega == clique && h5_ok;
    let mut witness = serde_json::to_value(&class).expect("serializable");
    witness["max_clique"] = json!(clique);
    CheckResult::verdict(CLASSIFY, &subjects, ok, witness)
}

/// Runs a single-group check by id.
pub fn run_single_check(check: &str, g: &FiniteGroup, limits: &Limits) -> Result<CheckResult> {
    Ok(match check {
        LEMMA_2_5 => check_lemma_2_5(g, limits),
        LEMMA_2_6 => check_lemma_2_6_exhaustive(g, 2),
        PROP_2_7 => check_prop_2_7(g),
        LEMMA_2_8 => check_lemma_2_8(g),
        FROBENIUS => check_frobenius(g, limits)?,
        CLASSIFY => check_classify(g, limits),
        other => return Err(Error::Internal(format!("{other} is not a single-group check"))),
    })
}

/// Runs one check over every group on the current rayon pool. Errors become
/// `not_applicable` rows naming the error. Output is sorted by subjects and
/// check id, so it does not depend on the number of threads.
pub fn sweep(check: &str, groups: &[FiniteGroup], limits: &Limits) -> Vec<CheckResult> {
    let mut rows: Vec<CheckResult> = groups
        .par_iter()
        .map(|g| {
            run_single_check(check, g, limits)
                .unwrap_or_else(|e| CheckResult::not_applicable(check, &[g.name()], format!("skipped: {e}")))
        })
        .collect();
    sort_rows(&mut rows);
    rows
}

pub fn sort_rows(rows: &mut [CheckResult]) {
    rows.sort_by(|a, b| (&a.subjects, &a.check).cmp(&(&b.subjects, &b.check)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct ScanOptions {
    pub limits: Limits,
    /// Only pairs with a non-abelian p-group member (the theorem scan).
    pub p_group_only: bool,
}


#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub a: String,
    pub b: String,
    pub order_a: usize,
    pub order_b: usize,
    pub center_a: usize,
    pub center_b: usize,
    pub p_group_member: bool,
    /// `THEOREM-VIOLATION` and/or `CONJECTURE-VIOLATION` flags.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipRecord {
    pub subjects: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    /// Isomorphism classes of graphs with at least two members.
    pub classes: Vec<Vec<String>>,
    pub pairs: Vec<PairRecord>,
    pub skipped: Vec<SkipRecord>,
    pub rows: Vec<CheckResult>,
}

impl PairReport {
    pub fn violations(&self) -> usize {
        self.pairs.iter().map(|p| p.violations.len()).sum()
    }
}

struct BucketOutcome {
    classes: Vec<Vec<(usize, IsoMap)>>,
    skipped: Vec<SkipRecord>,
}

/// Finds all pairs of groups with isomorphic non-commuting graphs.
///
/// Graphs are bucketed by fingerprint; inside a bucket each graph is compared
/// to one representative per known class, and pairs within a class get a
/// certificate composed through the representative (re-verified).
pub fn scan_pairs(groups: &[FiniteGroup], options: &ScanOptions) -> Result<PairReport> {
    let mut skipped = Vec::new();
    let candidates: Vec<&FiniteGroup> = groups
        .iter()
        .filter(|g| {
            let abelian = g.is_abelian();
            if abelian {
                skipped.push(SkipRecord { subjects: vec![g.name().to_string()], reason: "abelian".into() });
            }
            !abelian
        })
        .collect();
    let graphs: Vec<(NCGraph, Fingerprint)> = candidates
        .par_iter()
        .map(|g| {
            let graph = noncommuting_graph(g).expect("non-abelian");
            let fp = fingerprint(&graph);
            (graph, fp)
        })
        .collect();
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, (_, fp)) in graphs.iter().enumerate() {
        buckets.entry(fp).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().filter(|b| b.len() > 1).collect();
    let outcomes: Vec<BucketOutcome> = buckets
        .par_iter()
        .map(|bucket| {
            let mut classes: Vec<Vec<(usize, IsoMap)>> = Vec::new();
            let mut skipped = Vec::new();
            for &i in bucket {
                let mut placed = false;
                for class in classes.iter_mut() {
                    let rep = class[0].0;
                    match are_isomorphic_capped(&graphs[rep].0, &graphs[i].0, options.limits.iso_cap) {
                        Ok(Some(map)) => {
                            class.push((i, map));
                            placed = true;
                            break;
                        }
                        Ok(None) => {}
                        Err(e) => skipped.push(SkipRecord {
                            subjects: vec![candidates[rep].name().to_string(), candidates[i].name().to_string()],
                            reason: e.to_string(),
                        }),
                    }
                }
                if !placed {
                    let n = graphs[i].0.vertex_count();
                    classes.push(vec![(i, IsoMap::identity(n))]);
                }
            }
            BucketOutcome { classes, skipped }
        })
        .collect();

    let mut classes = Vec::new();
    let mut pair_jobs = Vec::new();
    for outcome in outcomes {
        skipped.extend(outcome.skipped);
        for class in outcome.classes.into_iter().filter(|c| c.len() > 1) {
            let mut names: Vec<String> = class.iter().map(|(i, _)| candidates[*i].name().to_string()).collect();
            names.sort();
            classes.push(names);
            for x in 0..class.len() {
                for y in x + 1..class.len() {
                    let (i, ref mi) = class[x];
                    let (j, ref mj) = class[y];
                    // rep -> i inverted, then rep -> j
                    pair_jobs.push((i, j, mi.inverse().then(mj)));
                }
            }
        }
    }
    classes.sort();

    let results: Vec<Result<(PairRecord, Vec<CheckResult>)>> = pair_jobs
        .par_iter()
        .filter(|(i, j, _)| {
            !options.p_group_only || is_nonabelian_p_group(candidates[*i]) || is_nonabelian_p_group(candidates[*j])
        })
        .map(|(i, j, map)| {
            let (ga, gb) = (&graphs[*i].0, &graphs[*j].0);
            if !map.verify(ga, gb) {
                return Err(Error::InvalidIso(format!("composed certificate {} -> {}", ga.source(), gb.source())));
            }
            pair_rows(candidates[*i], candidates[*j], map, options)
        })
        .collect();
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    for r in results {
        let (pair, pair_rows) = r?;
        pairs.push(pair);
        rows.extend(pair_rows);
    }
    pairs.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    sort_rows(&mut rows);
    skipped.sort_by(|x, y| (&x.subjects, &x.reason).cmp(&(&y.subjects, &y.reason)));
    Ok(PairReport { classes, pairs, skipped, rows })
}

fn pair_rows(a: &FiniteGroup, b: &FiniteGroup, map: &IsoMap, options: &ScanOptions) -> Result<(PairRecord, Vec<CheckResult>)> {
    // orient by name so the record is independent of bucket order
    let (a, b, map) = if a.name() <= b.name() { (a, b, map.clone()) } else { (b, a, map.inverse()) };
    let subjects = [a.name(), b.name()];
    let p_member = is_nonabelian_p_group(a) || is_nonabelian_p_group(b);
    let same_order = a.order() == b.order();
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    let orders = json!({ "order_a": a.order(), "order_b": b.order(), "z_a": z_order(a), "z_b": z_order(b) });
    if p_member {
        if !same_order {
            violations.push("THEOREM-VIOLATION".to_string());
        }
        rows.push(CheckResult::verdict(THEOREM_1_2, &subjects, same_order, orders.clone()));
        for (p, h) in [(a, b), (b, a)] {
            if is_nonabelian_p_group(p) {
                rows.push(check_lemma_2_4(p, h));
            }
        }
        rows.push(check_lemma_2_1(a, b, &map)?);
        rows.push(check_lemma_2_1(b, a, &map.inverse())?);
    }
    if !options.p_group_only {
        if !same_order {
            violations.push("CONJECTURE-VIOLATION".to_string());
        }
        rows.push(CheckResult::verdict(CONJECTURE_1_1, &subjects, same_order, orders));
    }
    let record = PairRecord {
        a: a.name().to_string(),
        b: b.name().to_string(),
        order_a: a.order(),
        order_b: b.order(),
        center_a: z_order(a),
        center_b: z_order(b),
        p_group_member: p_member,
        violations,
    };
    Ok((record, rows))
}

/// Counts of each status.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

pub fn summarize(rows: &[CheckResult]) -> Summary {
    let mut s = Summary::default();
    for r in rows {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::NotApplicable => s.not_applicable += 1,
        }
    }
    s
}

/// One JSON object per row, then `{"summary": {...}}`, newline-terminated.
pub fn render_report(rows: &[CheckResult]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("serializable"));
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(&json!({ "summary": summarize(rows) })).expect("serializable"));
    out.push('\n');
    out
}

/// `ncg profile` payload: the p-group profile and compatible center orders.
pub fn profile_report(g: &FiniteGroup) -> Result<Value> {
    let profile = p_group_profile(g)?;
    let compatible = compatible_center_orders(&profile);
    Ok(json!({ "group": g.name(), "profile": profile, "compatible_center_orders": compatible, "center": center(g).order() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::parse_group_address;
    use crate::graph::are_isomorphic;

    fn g(addr: &str) -> FiniteGroup {
        parse_group_address(addr).unwrap()
    }

    fn iso(a: &FiniteGroup, b: &FiniteGroup) -> IsoMap {
        are_isomorphic(&noncommuting_graph(a).unwrap(), &noncommuting_graph(b).unwrap()).unwrap().unwrap()
    }

    #[test]
    fn lemma_2_1_on_d4_q8() {
        let (d4, q8) = (g("dihedral:4"), g("dicyclic:2"));
        let r = check_lemma_2_1(&d4, &q8, &iso(&d4, &q8)).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.witness["rhs_zero"], true);
        // r has |C|^2 = 16 = |G||Z|
        assert_eq!(r.witness["part2_element"], 1);
        let same = check_lemma_2_1(&d4, &d4, &IsoMap::identity(6)).unwrap();
        assert_eq!(same.status, Status::Pass);
        let bad = IsoMap { forward: vec![0, 0, 1, 2, 3, 4] };
        assert!(matches!(check_lemma_2_1(&d4, &q8, &bad), Err(Error::InvalidIso(_))));
    }

    #[test]
    fn center_orders() {
        let profile = |addr: &str| p_group_profile(&g(addr)).unwrap();
        assert_eq!(compatible_center_orders(&profile("dicyclic:2")), vec![1, 2]);
        assert_eq!(compatible_center_orders(&profile("dihedral:8")), vec![1, 2]);
        assert_eq!(compatible_center_orders(&profile("heisenberg:3")), vec![1, 2, 3, 6]);
    }

    #[test]
    fn lemma_2_5_rows() {
        let limits = Limits::default();
        let d4 = check_lemma_2_5(&g("dihedral:4"), &limits);
        assert_eq!((d4.status, d4.witness["omega"].as_u64()), (Status::Pass, Some(3)));
        let h = check_lemma_2_5(&g("heisenberg:3"), &limits);
        assert_eq!((h.status, h.witness["omega"].as_u64()), (Status::Pass, Some(4)));
        assert_eq!(check_lemma_2_5(&g("symmetric:3"), &limits).status, Status::NotApplicable);
        assert_eq!(check_lemma_2_5(&g("symmetric:4"), &limits).status, Status::NotApplicable);
    }

    #[test]
    fn lemma_2_6_rows() {
        let d4 = g("dihedral:4");
        let c = Subgroup::from_members_unchecked(8, vec![0, 4]);
        let r = check_lemma_2_6(&d4, &c, 1);
        assert_eq!(r.status, Status::Pass);
        let ca = conjugate_subgroup(&d4, &c, 1);
        assert_eq!(product_set(&d4, c.members(), ca.members()), vec![0, 2, 4, 6]);
        let inside = check_lemma_2_6(&d4, &subgroup_closure(&d4, &[1]), 3);
        assert_eq!(inside.status, Status::Pass);
        // <s> and its conjugate by r do not permute in S3
        let s3 = g("dihedral:3");
        let c = Subgroup::from_members_unchecked(6, vec![0, 3]);
        assert_eq!(check_lemma_2_6(&s3, &c, 1).status, Status::NotApplicable);
    }

    #[test]
    fn prop_2_7_rows() {
        let d8 = check_prop_2_7(&g("dihedral:8"));
        assert_eq!(d8.status, Status::Pass);
        assert_eq!(d8.witness["largest_component"], 8);
        assert_eq!(d8.witness["normal_components"].as_array().unwrap().len(), 1);
        assert_eq!(check_prop_2_7(&g("dicyclic:4")).status, Status::Pass);
        assert_eq!(check_prop_2_7(&g("dihedral:4")).status, Status::NotApplicable);
    }

    #[test]
    fn lemma_2_8_rows() {
        assert_eq!(check_lemma_2_8(&g("dihedral:4")).status, Status::Pass);
        assert_eq!(check_lemma_2_8(&g("heisenberg:3")).status, Status::Pass);
        let d8 = check_lemma_2_8(&g("dihedral:8"));
        assert_eq!(d8.status, Status::NotApplicable);
        assert_eq!(d8.witness["exceeds_r"], true);
    }

    #[test]
    fn frobenius_rows() {
        let limits = Limits::default();
        for (addr, kernel) in [("symmetric:3", 3), ("alternating:4", 4), ("gendihedral:3", 9), ("affine:5", 5)] {
            let r = check_frobenius(&g(addr), &limits).unwrap();
            assert_eq!(r.status, Status::Pass, "{addr}: {}", r.witness);
            assert_eq!(r.witness["kernel"].as_array().unwrap().len(), kernel);
        }
        let gd = check_frobenius(&g("gendihedral:3"), &limits).unwrap();
        // four normal C3 subgroups plus the kernel itself
        assert_eq!(gd.witness["sub_kernel_orders"], json!([3, 3, 3, 3, 9]));
        assert_eq!(check_frobenius(&g("dihedral:4"), &limits).unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn classifier() {
        let limits = Limits::default();
        let cases = [
            ("symmetric:3", ACType::H1, 4),
            ("affine:5", ACType::H2, 6),
            ("gl2:3", ACType::H3, 13),
            ("cyclic:3*dihedral:4", ACType::H4, 3),
            ("sl2:3", ACType::H5, 7),
        ];
        for (addr, tag, omega) in cases {
            let class = classify_ac(&g(addr), &limits).unwrap();
            assert_eq!((class.type_tag, class.predicted_omega), (tag, omega), "{addr}");
            assert_eq!(check_classify(&g(addr), &limits).status, Status::Pass, "{addr}");
        }
        let sl = classify_ac(&g("sl2:3"), &limits).unwrap();
        let ACParameters::H5 { kernel, complement, profile, .. } = sl.parameters else { panic!("not H5") };
        assert_eq!((kernel.order(), complement.order()), (8, 6));
        assert_eq!((profile.q, profile.kappa, profile.omega_exp, profile.a, profile.b), (2, 3, 1, 3, 1));
        assert_eq!(profile.nu_list, vec![2]);
        assert!(matches!(classify_ac(&g("symmetric:4"), &limits), Err(Error::NotACGroup(_))));
        assert!(matches!(classify_ac(&g("alternating:5"), &limits), Err(Error::NotSolvable(_))));
    }

    #[test]
    fn pair_scan_small() {
        let groups = vec![g("dihedral:4"), g("dicyclic:2"), g("symmetric:3")];
        let report = scan_pairs(&groups, &ScanOptions::default()).unwrap();
        assert_eq!(report.classes, vec![vec!["dicyclic:2".to_string(), "dihedral:4".to_string()]]);
        assert_eq!(report.pairs.len(), 1);
        assert_eq!(report.violations(), 0);
        assert!(report.rows.iter().all(|r| r.status == Status::Pass));
        let one = scan_pairs(&groups[..1], &ScanOptions::default()).unwrap();
        assert!(one.pairs.is_empty() && one.rows.is_empty());
        let none = scan_pairs(&[g("symmetric:3"), g("dihedral:4")], &ScanOptions::default()).unwrap();
        assert!(none.pairs.is_empty());
        let abelian = scan_pairs(&[g("cyclic:4")], &ScanOptions::default()).unwrap();
        assert_eq!(abelian.skipped.len(), 1);
    }

    #[test]
    fn report_rendering() {
        let rows = vec![check_prop_2_7(&g("dihedral:8")), check_prop_2_7(&g("dihedral:4"))];
        let text = render_report(&rows);
        let last = text.lines().last().unwrap();
        assert_eq!(last, r#"{"summary":{"fail":0,"not_applicable":1,"pass":1}}"#);
        assert!(text.lines().next().unwrap().starts_with(r#"{"check":"prop2.7","subjects":["dihedral:8"],"status":"pass""#));
    }
}
