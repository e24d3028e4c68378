//! Built-in group families and the `family:param` addressing syntax.
//!
//! Element indexing per family:
//!
//! | family | order | index layout |
//! |---|---|---|
//! | `cyclic:n` | n | `k` is `r^k` |
//! | `dihedral:n` | 2n | `k` is `r^k`, `n+k` is `s r^k`, with `r^k s = s r^-k` |
//! | `dicyclic:n` | 4n | `k` is `a^k`, `2n+k` is `x a^k`, with `x^2 = a^n`, `a x = x a^-1` |
//! | `semidihedral:k` | 2^k | as dihedral with `m = 2^(k-1)` and `r^j s = s r^(j(m/2-1))` |
//! | `modular:k` | 2^k | as dihedral with `m = 2^(k-1)` and `r^j s = s r^(j(m/2+1))` |
//! | `symmetric:n` | n! | permutations of `0..n` in lexicographic order of image arrays |
//! | `alternating:n` | n!/2 | even permutations in lexicographic order |
//! | `heisenberg:p` | p^3 | `a p^2 + b p + c` is the unitriangular matrix with entries `(a, b, c)` |
//! | `affine:p` | p(p-1) | `(u-1) p + c` is the map `x -> u x + c` over `Z/p` |
//! | `gendihedral:m` | 2m^2 | `e m^2 + x m + y` is `s^e t(x, y)` in `(C_m x C_m) : C_2`, `s` inverting |
//! | `gl2:p`, `sl2:p` | | identity first, then matrices `[[a,b],[c,d]]` in lexicographic order of `(a,b,c,d)` |
//!
//! Permutations and affine maps compose left to right: `(f*g)(x) = g(f(x))`.
//! A product address `A*B` builds the direct product with pair `(a, b)` at
//! index `a*|B| + b`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup};

/// Largest parameter accepted by `symmetric` and `alternating`.
pub const MAX_PERMUTATION_DEGREE: usize = 7;
/// Largest prime accepted by the 2x2 matrix groups.
pub const MAX_MATRIX_PRIME: u64 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cyclic,
    Dihedral,
    Dicyclic,
    Symmetric,
    Alternating,
    Heisenberg,
    Semidihedral,
    Modular,
    Affine,
    Gendihedral,
    Gl2,
    Sl2,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Cyclic,
        Family::Dihedral,
        Family::Dicyclic,
        Family::Symmetric,
        Family::Alternating,
        Family::Heisenberg,
        Family::Semidihedral,
        Family::Modular,
        Family::Affine,
        Family::Gendihedral,
        Family::Gl2,
        Family::Sl2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Dicyclic => "dicyclic",
            Family::Symmetric => "symmetric",
            Family::Alternating => "alternating",
            Family::Heisenberg => "heisenberg",
            Family::Semidihedral => "semidihedral",
            Family::Modular => "modular",
            Family::Affine => "affine",
            Family::Gendihedral => "gendihedral",
            Family::Gl2 => "gl2",
            Family::Sl2 => "sl2",
        }
    }

    /// Group order for a parameter, or `None` when the parameter is invalid.
    pub fn order_for(self, param: usize) -> Option<usize> {
        let pow2 = |k: usize| (k < 30).then(|| 1usize << k);
        match self {
            Family::Cyclic => (param >= 1).then_some(param),
            Family::Dihedral => (param >= 1).then(|| 2 * param),
            Family::Dicyclic => (param >= 2).then(|| 4 * param),
            Family::Symmetric => (1..=MAX_PERMUTATION_DEGREE).contains(&param).then(|| (1..=param).product()),
            Family::Alternating => (1..=MAX_PERMUTATION_DEGREE)
                .contains(&param)
                .then(|| ((1..=param).product::<usize>() / 2).max(1)),
            Family::Heisenberg => (param > 2 && is_prime(param as u64)).then(|| param.pow(3)),
            Family::Semidihedral | Family::Modular => (param >= 4).then(|| pow2(param)).flatten(),
            Family::Affine => is_prime(param as u64).then(|| param * (param - 1)),
            Family::Gendihedral => (param >= 1).then(|| 2 * param * param),
            Family::Gl2 => (is_prime(param as u64) && param as u64 <= MAX_MATRIX_PRIME)
                .then(|| (param * param - 1) * (param * param - param)),
            Family::Sl2 => (is_prime(param as u64) && param as u64 <= MAX_MATRIX_PRIME)
                .then(|| param * (param * param - 1)),
        }
    }

    /// Parameters whose group order is at most `max_order`, ascending.
    pub fn params_up_to(self, max_order: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut param = 1;
        loop {
            match self.order_for(param) {
                Some(order) if order > max_order => break,
                Some(_) => out.push(param),
                None if self.is_bounded() && param > MAX_PERMUTATION_DEGREE.max(MAX_MATRIX_PRIME as usize) => break,
                None => {}
            }
            param += 1;
            if param > max_order + 1 {
                break;
            }
        }
        out
    }

    fn is_bounded(self) -> bool {
        matches!(self, Family::Symmetric | Family::Alternating | Family::Gl2 | Family::Sl2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

fn bad(family: Family, reason: impl Into<String>) -> Error {
    Error::BadParameter { family: family.as_str().to_string(), reason: reason.into() }
}

/// Builds a member of a built-in family. The group is named `family:param`.
pub fn standard_family(family: Family, param: usize) -> Result<FiniteGroup> {
    let name = format!("{family}:{param}");
    let group = match family {
        Family::Cyclic => {
            if param == 0 {
                return Err(bad(family, "order must be positive"));
            }
            FiniteGroup::from_rule(name, param, |a, b| (a + b) % param)
        }
        Family::Dihedral => {
            if param == 0 {
                return Err(bad(family, "n must be positive"));
            }
            cyclic_by_involution(name, param, param - 1)
        }
        Family::Dicyclic => {
            if param < 2 {
                return Err(bad(family, "n must be at least 2"));
            }
            dicyclic(name, param)
        }
        Family::Symmetric | Family::Alternating => {
            if !(1..=MAX_PERMUTATION_DEGREE).contains(&param) {
                return Err(bad(family, format!("degree must be in 1..={MAX_PERMUTATION_DEGREE}")));
            }
            permutation_group(name, param, family == Family::Alternating)
        }
        Family::Heisenberg => {
            if param == 2 || !is_prime(param as u64) {
                return Err(bad(family, "p must be an odd prime"));
            }
            heisenberg(name, param)
        }
        Family::Semidihedral | Family::Modular => {
            if !(4..30).contains(&param) {
                return Err(bad(family, "k must be in 4..30"));
            }
            let m = 1usize << (param - 1);
            let twist = if family == Family::Semidihedral { m / 2 - 1 } else { m / 2 + 1 };
            cyclic_by_involution(name, m, twist)
        }
        Family::Affine => {
            if !is_prime(param as u64) {
                return Err(bad(family, "p must be prime"));
            }
            affine(name, param)
        }
        Family::Gendihedral => {
            if param == 0 {
                return Err(bad(family, "m must be positive"));
            }
            generalized_dihedral(name, param)
        }
        Family::Gl2 | Family::Sl2 => {
            let kind = if family == Family::Gl2 { MatrixKind::General } else { MatrixKind::Special };
            return matrix_group(kind, 2, param as u64);
        }
    };
    Ok(group)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// GL: all invertible matrices
    General,
    /// SL: determinant one
    Special,
}

/// `GL(2, p)` or `SL(2, p)` for a prime `p <= 13`, named `gl2:p` / `sl2:p`.
pub fn matrix_group(kind: MatrixKind, dim: usize, p: u64) -> Result<FiniteGroup> {
    let family = match kind {
        MatrixKind::General => Family::Gl2,
        MatrixKind::Special => Family::Sl2,
    };
    if dim != 2 {
        return Err(bad(family, "only 2x2 matrices are supported"));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_MATRIX_PRIME {
        return Err(bad(family, format!("p must be at most {MAX_MATRIX_PRIME}")));
    }
    let p = p as usize;
    let det = |[a, b, c, d]: [usize; 4]| (a * d + p * p - b * c) % p;
    let mut matrices = vec![[1, 0, 0, 1]];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    let keep = match kind {
                        MatrixKind::General => det(m) != 0,
                        MatrixKind::Special => det(m) == 1,
                    };
                    if keep && m != [1, 0, 0, 1] {
                        matrices.push(m);
                    }
                }
            }
        }
    }
    let encode = |[a, b, c, d]: [usize; 4]| ((a * p + b) * p + c) * p + d;
    let mut index = vec![usize::MAX; p.pow(4)];
    for (i, &m) in matrices.iter().enumerate() {
        index[encode(m)] = i;
    }
    let n = matrices.len();
    let name = format!("{family}:{p}");
    Ok(FiniteGroup::from_rule(name, n, |x, y| {
        let [a, b, c, d] = matrices[x];
        let [e, f, g, h] = matrices[y];
        index[encode([(a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p])]
    }))
}

/// `C_m : C_2` where the involution `s` acts by `r -> r^twist` (twist^2 = 1 mod m).
fn cyclic_by_involution(name: String, m: usize, twist: usize) -> FiniteGroup {
    FiniteGroup::from_rule(name, 2 * m, |x, y| {
        let (e, k) = (x / m, x % m);
        let (f, l) = (y / m, y % m);
        let k = if f == 1 { k * twist % m } else { k };
        ((e + f) % 2) * m + (k + l) % m
    })
}

fn dicyclic(name: String, n: usize) -> FiniteGroup {
    let m = 2 * n;
    FiniteGroup::from_rule(name, 2 * m, |x, y| {
        let (i, k) = (x / m, x % m);
        let (j, l) = (y / m, y % m);
        match (i, j) {
            (_, 0) => i * m + (k + l) % m,
            (0, _) => m + (l + m - k) % m,
            _ => (n + l + m - k) % m,
        }
    })
}

fn heisenberg(name: String, p: usize) -> FiniteGroup {
    FiniteGroup::from_rule(name, p * p * p, |x, y| {
        let (a, b, c) = (x / (p * p), x / p % p, x % p);
        let (d, e, f) = (y / (p * p), y / p % p, y % p);
        ((a + d) % p) * p * p + ((b + e) % p) * p + (c + f + a * e) % p
    })
}

fn affine(name: String, p: usize) -> FiniteGroup {
    FiniteGroup::from_rule(name, p * (p - 1), |x, y| {
        let (u, c) = (x / p + 1, x % p);
        let (v, d) = (y / p + 1, y % p);
        (u * v % p - 1) * p + (v * c + d) % p
    })
}

fn generalized_dihedral(name: String, m: usize) -> FiniteGroup {
    let mm = m * m;
    FiniteGroup::from_rule(name, 2 * mm, |x, y| {
        let (e, a, b) = (x / mm, x / m % m, x % m);
        let (f, c, d) = (y / mm, y / m % m, y % m);
        let (a, b) = if f == 1 { ((m - a) % m, (m - b) % m) } else { (a, b) };
        ((e + f) % 2) * mm + ((a + c) % m) * m + (b + d) % m
    })
}

fn permutation_group(name: String, degree: usize, even_only: bool) -> FiniteGroup {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..degree).collect();
    loop {
        if !even_only || is_even(&current) {
            perms.push(current.clone());
        }
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&i| b[i]).collect() };
    FiniteGroup::from_rule(name, perms.len(), |x, y| index[&compose(&perms[x], &perms[y])])
}

fn is_even(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Parses `family:param`, or a `*`-separated product of such terms.
pub fn parse_group_address(address: &str) -> Result<FiniteGroup> {
    let mut factors = address.split('*').map(|term| {
        let (family, param) = term.trim().split_once(':').ok_or_else(|| Error::UnknownGroup(address.to_string()))?;
        let family: Family = family.parse().map_err(|_| Error::UnknownGroup(address.to_string()))?;
        let param: usize = param.parse().map_err(|_| Error::UnknownGroup(address.to_string()))?;
        standard_family(family, param)
    });
    let first = factors.next().ok_or_else(|| Error::UnknownGroup(address.to_string()))??;
    factors.try_fold(first, |acc, next| direct_product(&acc, &next?))
}

/// Non-abelian built-in groups of order at most `max_order` from the given
/// families, plus direct products `cyclic:k * G` (k = 2..5) with those groups.
///
/// Sorted by name. Distinct names may describe isomorphic groups
/// (`dihedral:3`, `symmetric:3`, `affine:3`, `gl2:2`).
pub fn builtin_catalog(families: &[Family], max_order: usize) -> Result<Vec<FiniteGroup>> {
    let mut base = Vec::new();
    for &family in families {
        for param in family.params_up_to(max_order) {
            let g = standard_family(family, param)?;
            if !g.is_abelian() {
                base.push(g);
            }
        }
    }
    let mut groups = Vec::new();
    if families.contains(&Family::Cyclic) {
        for k in 2..=5 {
            let c = standard_family(Family::Cyclic, k)?;
            for g in base.iter().filter(|g| g.order() * k <= max_order) {
                groups.push(direct_product(&c, g)?);
            }
        }
    }
    groups.extend(base);
    groups.sort_by(|a, b| a.name().cmp(b.name()));
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::center;

    #[test]
    fn family_orders() {
        for (family, param, order) in [
            (Family::Cyclic, 5, 5),
            (Family::Dihedral, 4, 8),
            (Family::Dicyclic, 3, 12),
            (Family::Symmetric, 4, 24),
            (Family::Alternating, 5, 60),
            (Family::Heisenberg, 3, 27),
            (Family::Semidihedral, 4, 16),
            (Family::Modular, 4, 16),
            (Family::Affine, 5, 20),
            (Family::Gendihedral, 3, 18),
            (Family::Gl2, 3, 48),
            (Family::Sl2, 3, 24),
        ] {
            let g = standard_family(family, param).unwrap();
            assert_eq!(g.order(), order, "{family}:{param}");
            assert_eq!(family.order_for(param), Some(order));
            g.validate().unwrap();
        }
    }

    #[test]
    fn matrix_group_orders() {
        assert_eq!(matrix_group(MatrixKind::General, 2, 2).unwrap().order(), 6);
        assert_eq!(matrix_group(MatrixKind::General, 2, 3).unwrap().order(), 48);
        assert_eq!(matrix_group(MatrixKind::Special, 2, 3).unwrap().order(), 24);
        assert_eq!(matrix_group(MatrixKind::General, 2, 4).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(matrix_group(MatrixKind::General, 3, 2), Err(Error::BadParameter { .. })));
        assert!(matches!(matrix_group(MatrixKind::Special, 2, 17), Err(Error::BadParameter { .. })));
    }

    #[test]
    fn bad_parameters() {
        assert!(standard_family(Family::Dicyclic, 1).is_err());
        assert!(standard_family(Family::Heisenberg, 2).is_err());
        assert!(standard_family(Family::Heisenberg, 9).is_err());
        assert!(standard_family(Family::Symmetric, 8).is_err());
        assert!(standard_family(Family::Cyclic, 0).is_err());
    }

    #[test]
    fn dihedral_indexing() {
        let d4 = standard_family(Family::Dihedral, 4).unwrap();
        let (r, s) = (1, 4);
        assert_eq!(d4.mul(r, s), d4.mul(s, d4.inv(r)));
        assert_eq!(center(&d4).members(), &[0, 2]);
    }

    #[test]
    fn quaternion_center() {
        let q8 = standard_family(Family::Dicyclic, 2).unwrap();
        assert_eq!(center(&q8).order(), 2);
        assert_eq!(q8.element_orders(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn lexicographic_permutations() {
        let s3 = standard_family(Family::Symmetric, 3).unwrap();
        // [0,2,1] * [1,0,2]: i -> b[a[i]] = [1,2,0] which is index 3 in lex order
        assert_eq!(s3.mul(1, 2), 3);
        let a4 = standard_family(Family::Alternating, 4).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(standard_family(Family::Alternating, 1).unwrap().order(), 1);
    }

    #[test]
    fn addresses() {
        let g = parse_group_address("cyclic:3*dihedral:4").unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.name(), "cyclic:3*dihedral:4");
        assert_eq!(center(&g).order(), 6);
        assert!(parse_group_address("nosuch:3").is_err());
        assert!(parse_group_address("dihedral").is_err());
        assert!(parse_group_address("dihedral:x").is_err());
    }

    #[test]
    fn catalog_contents() {
        let all = builtin_catalog(&Family::ALL, 16).unwrap();
        let names: Vec<&str> = all.iter().map(|g| g.name()).collect();
        for expected in ["dihedral:4", "dicyclic:2", "dihedral:8", "dicyclic:4", "cyclic:2*dihedral:4", "cyclic:2*dicyclic:2"] {
            assert!(names.contains(&expected), "{expected} missing from {names:?}");
        }
        assert!(all.iter().all(|g| !g.is_abelian() && g.order() <= 16));
        assert!(names.windows(2).all(|w| w[0] < w[1]));
    }
}
