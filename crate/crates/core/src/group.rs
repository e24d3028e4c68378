//! Finite groups stored as Cayley tables.
//!
//! Every group keeps the identity at index 0 and carries a dense `order x order`
//! multiplication table together with an inverse table. All downstream
//! structure (centralizers, classes, graphs) is computed from the table.

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::structure::ClassData;

/// Default bound on the order of groups built by closure or products.
pub const DEFAULT_ORDER_CAP: usize = 20_000;
/// Associativity is checked on every triple up to this order.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
/// Number of random triples checked above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
pub const ASSOCIATIVITY_SAMPLES: usize = 1_000_000;

const ASSOCIATIVITY_SEED: u64 = 0x6e63_6700;

/// How associativity was established by [`FiniteGroup::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssociativityCheck {
    Exhaustive { triples: u64 },
    Sampled { triples: u64 },
}

impl std::fmt::Display for AssociativityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exhaustive { triples } => write!(f, "exhaustive ({triples} triples)"),
            Self::Sampled { triples } => write!(f, "sampled ({triples} random triples)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Option<Vec<usize>>,
    pub(crate) classes: OnceLock<ClassData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.table == other.table
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and wraps it as a group.
    ///
    /// The identity must already sit at index 0; associativity is checked
    /// exhaustively up to order 512 and by 10^6 seeded random triples above.
    pub fn from_cayley_table(rows: &[Vec<usize>], name: impl Into<String>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if order > u32::MAX as usize {
            return Err(Error::OrderLimitExceeded { limit: u32::MAX as usize });
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(Error::NotSquare { row, len: entries.len(), expected: order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange { row, col, value, order });
                }
                table.push(value as u32);
            }
        }
        check_latin(&table, order)?;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or(Error::NoIdentity)?;
        if identity != 0 {
            return Err(Error::NoIdentityAtZero { identity });
        }
        check_associative(&table, order)?;
        let inverses = compute_inverses(&table, order)?;
        Ok(Self::from_parts(name.into(), order, table, inverses, None))
    }

    /// Builds a group from a table already known to be a group table with
    /// identity 0 (products of permutations, matrices, or closed formulas).
    pub(crate) fn from_trusted_table(name: String, order: usize, table: Vec<u32>, generators: Option<Vec<usize>>) -> Self {
        let inverses = compute_inverses(&table, order).expect("trusted table has inverses");
        Self::from_parts(name, order, table, inverses, generators)
    }

    /// Builds a trusted table from a closed-form multiplication rule.
    pub(crate) fn from_rule(name: String, order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        Self::from_trusted_table(name, order, table, None)
    }

    fn from_parts(name: String, order: usize, table: Vec<u32>, inverses: Vec<u32>, generators: Option<Vec<usize>>) -> Self {
        Self { name, order, table, inverses, generators, classes: OnceLock::new() }
    }

    /// Re-runs the complete invariant suite on this group's table.
    pub fn validate(&self) -> Result<AssociativityCheck> {
        let n = self.order;
        check_latin(&self.table, n)?;
        if (0..n).any(|x| self.mul(0, x) != x || self.mul(x, 0) != x) {
            return Err(Error::NoIdentity);
        }
        for x in 0..n {
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(Error::NoInverse { element: x });
            }
        }
        check_associative(&self.table, n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x] as usize
    }

    /// `a^-1 x a`
    #[inline]
    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(self.inv(a), x), a)
    }

    /// `[x, y] = x^-1 y^-1 x y`
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    #[inline]
    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.commutes(x, y)))
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { index: x, order: self.order })
        }
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        orders.sort_unstable();
        orders
    }

    pub fn exponent(&self) -> usize {
        self.elements().fold(1u64, |acc, x| arith::lcm(acc, self.element_order(x) as u64)) as usize
    }

    /// The table as nested rows (`rows[a][b] = a*b`).
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|row| row.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Right-regular permutation `y -> y*x` as an image array.
    pub fn regular_permutation(&self, x: usize) -> Vec<usize> {
        (0..self.order).map(|y| self.mul(y, x)).collect()
    }

    /// Builds the group generated by permutations given as 0-based image
    /// arrays, with the default closure cap.
    pub fn from_permutation_generators(degree: usize, gens: &[Vec<usize>], name: impl Into<String>) -> Result<Self> {
        Self::from_permutation_generators_capped(degree, gens, name, DEFAULT_ORDER_CAP)
    }

    /// Closure of the generators by breadth-first right multiplication.
    ///
    /// Permutations compose left to right: `(a*b)[i] = b[a[i]]`. Elements are
    /// indexed in discovery order, so the identity is index 0.
    pub fn from_permutation_generators_capped(
        degree: usize,
        gens: &[Vec<usize>],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if !is_permutation(g, degree) {
                return Err(Error::NotAPermutation { generator: i, degree });
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
        // parent[b] = (p, g) with b = p * gens[g]
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        // right[g][x] = x * gens[g]
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut cursor = 0;
        while cursor < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let image: Vec<u32> = elements[cursor].iter().map(|&i| g[i as usize] as u32).collect();
                let target = match index.get(&image) {
                    Some(&t) => t,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::OrderLimitExceeded { limit: cap });
                        }
                        let t = elements.len();
                        index.insert(image.clone(), t);
                        elements.push(image);
                        parent.push((cursor, gi));
                        t
                    }
                };
                right[gi].push(target as u32);
            }
            cursor += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (p, gi) = parent[b];
                table[a * n + b] = right[gi][table[a * n + p] as usize];
            }
        }
        let generator_indices = gens.iter().map(|g| {
            let key: Vec<u32> = g.iter().map(|&i| i as u32).collect();
            index[&key]
        });
        let generator_indices = generator_indices.collect();
        Ok(Self::from_trusted_table(name.into(), n, table, Some(generator_indices)))
    }
}

/// Direct product with the default order cap.
///
/// The pair `(g, h)` is stored at index `g*|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_capped(g, h, DEFAULT_ORDER_CAP)
}

pub fn direct_product_capped(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let order = g.order().checked_mul(h.order()).filter(|&n| n <= cap);
    let order = order.ok_or(Error::OrderLimitExceeded { limit: cap })?;
    let m = h.order();
    let mut product = FiniteGroup::from_rule(format!("{}*{}", g.name(), h.name()), order, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    });
    if let (Some(gg), Some(hg)) = (g.generators(), h.generators()) {
        let gens = gg.iter().map(|&x| x * m).chain(hg.iter().copied()).collect();
        product.generators = Some(gens);
    }
    Ok(product)
}

/// A subgroup as a sorted member set of a parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    #[serde(skip)]
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps a member set without checking closure. Members are sorted.
    pub fn from_members_unchecked(parent_order: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { parent_order, members }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self { parent_order: g.order(), members: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self { parent_order: g.order(), members: g.elements().collect() }
    }

    pub fn from_mask(parent_order: usize, mask: &FixedBitSet) -> Self {
        Self { parent_order, members: mask.ones().collect() }
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn mask(&self) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.parent_order);
        for &x in &self.members {
            mask.insert(x);
        }
        mask
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup { parent_order: self.parent_order, members }
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.members.iter().enumerate().all(|(i, &x)| self.members[i + 1..].iter().all(|&y| g.commutes(x, y)))
    }

    /// Checks the subgroup invariants, including Lagrange's theorem.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        let fail = |msg: &str| Err(Error::Internal(format!("subgroup of {}: {msg}", g.name())));
        if self.parent_order != g.order() {
            return fail("parent order mismatch");
        }
        if !self.contains(0) {
            return fail("missing identity");
        }
        for &x in &self.members {
            if !self.contains(g.inv(x)) {
                return fail("not closed under inverses");
            }
            for &y in &self.members {
                if !self.contains(g.mul(x, y)) {
                    return fail("not closed under multiplication");
                }
            }
        }
        if !g.order().is_multiple_of(self.order()) {
            return fail("order does not divide the group order");
        }
        Ok(())
    }

    /// The subgroup as a group in its own right, members re-indexed in
    /// ascending order (so the identity stays at 0).
    pub fn to_group(&self, g: &FiniteGroup, name: impl Into<String>) -> FiniteGroup {
        let position: HashMap<usize, usize> = self.members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let members = &self.members;
        FiniteGroup::from_rule(name.into(), members.len(), |a, b| position[&g.mul(members[a], members[b])])
    }
}

/// Smallest subgroup containing `seed`.
pub fn subgroup_closure(g: &FiniteGroup, seed: &[usize]) -> Subgroup {
    let mut seen = FixedBitSet::with_capacity(g.order());
    seen.insert(0);
    let mut members = vec![0];
    let mut cursor = 0;
    while cursor < members.len() {
        let x = members[cursor];
        for &s in seed {
            let y = g.mul(x, s);
            if !seen.put(y) {
                members.push(y);
            }
        }
        cursor += 1;
    }
    Subgroup::from_members_unchecked(g.order(), members)
}

fn is_permutation(images: &[usize], degree: usize) -> bool {
    if images.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    images.iter().all(|&i| i < degree && !std::mem::replace(&mut seen[i], true))
}

fn check_latin(table: &[u32], n: usize) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for row in 0..n {
        for col in 0..n {
            let v = table[row * n + col] as usize;
            if seen[v] == row {
                return Err(Error::NotLatinSquare { axis: "row", index: row });
            }
            seen[v] = row;
        }
    }
    seen.fill(usize::MAX);
    for col in 0..n {
        for row in 0..n {
            let v = table[row * n + col] as usize;
            if seen[v] == col {
                return Err(Error::NotLatinSquare { axis: "column", index: col });
            }
            seen[v] = col;
        }
    }
    Ok(())
}

fn check_associative(table: &[u32], n: usize) -> Result<AssociativityCheck> {
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let check = |a: usize, b: usize, c: usize| {
        if mul(mul(a, b), c) == mul(a, mul(b, c)) {
            Ok(())
        } else {
            Err(Error::NotAssociative { a, b, c })
        }
    };
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(AssociativityCheck::Exhaustive { triples: (n as u64).pow(3) })
    } else {
        let mut rng = StdRng::seed_from_u64(ASSOCIATIVITY_SEED);
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
        }
        Ok(AssociativityCheck::Sampled { triples: ASSOCIATIVITY_SAMPLES as u64 })
    }
}

fn compute_inverses(table: &[u32], n: usize) -> Result<Vec<u32>> {
    (0..n)
        .map(|x| {
            let y = table[x * n..(x + 1) * n].iter().position(|&v| v == 0).ok_or(Error::NoInverse { element: x })?;
            if table[y * n + x] != 0 {
                return Err(Error::NoInverse { element: x });
            }
            Ok(y as u32)
        })
        .collect()
}
