//! Named group constructions and the structured input format.
//!
//! A `GroupSpec` is a small JSON document:
//!
//! ```json
//! {"type": "catalog", "name": "heisenberg", "params": {"p": 3}}
//! {"type": "permutation", "degree": 3, "generators": [[1, 2, 0]]}
//! {"type": "cayley", "table": [[0, 1], [1, 0]]}
//! {"type": "product", "factors": [ ... ]}
//! ```
//!
//! Product specs may nest up to depth 4.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{direct_product, Group};
use crate::is_small_prime;

pub const MAX_SPEC_DEPTH: usize = 4;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Catalog {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, u64>,
    },
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Cayley {
        table: Vec<Vec<usize>>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

const CATALOG_NAMES: &[&str] = &[
    "cyclic",
    "elem_ab",
    "heisenberg",
    "modular",
    "c9_rtimes_c9",
    "dihedral",
    "quaternion8",
    "sl23",
];

/// Parse and validate a spec document.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let spec: GroupSpec =
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    validate_spec(&spec, 1)?;
    Ok(spec)
}

fn validate_spec(spec: &GroupSpec, depth: usize) -> Result<()> {
    if depth > MAX_SPEC_DEPTH {
        return Err(Error::InvalidSpec(format!(
            "product nesting exceeds depth {MAX_SPEC_DEPTH}"
        )));
    }
    match spec {
        GroupSpec::Catalog { name, .. } => {
            if !CATALOG_NAMES.contains(&name.as_str()) {
                return Err(Error::UnknownCatalog(name.clone()));
            }
        }
        GroupSpec::Permutation { degree, generators } => {
            if *degree == 0 {
                return Err(Error::InvalidSpec("degree must be positive".into()));
            }
            for g in generators {
                if g.len() != *degree {
                    return Err(Error::InvalidSpec(format!(
                        "permutation {g:?} does not have length {degree}"
                    )));
                }
            }
        }
        GroupSpec::Cayley { table } => {
            if table.is_empty() || table.iter().any(|row| row.len() != table.len()) {
                return Err(Error::InvalidSpec("cayley table must be square".into()));
            }
        }
        GroupSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::InvalidSpec(
                    "product needs at least one factor".into(),
                ));
            }
            for f in factors {
                validate_spec(f, depth + 1)?;
            }
        }
    }
    Ok(())
}

/// Realize a spec as a concrete group.
pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    match spec {
        GroupSpec::Catalog { name, params } => build_catalog(name, params),
        GroupSpec::Permutation { degree, generators } => {
            Group::from_permutations(*degree, generators)
        }
        GroupSpec::Cayley { table } => Group::from_cayley(table),
        GroupSpec::Product { factors } => {
            let mut groups = factors.iter().map(build_group);
            let mut acc = groups.next().expect("validated nonempty")?;
            for g in groups {
                acc = direct_product(&acc, &g?)?.group;
            }
            Ok(acc)
        }
    }
}

fn get_param(params: &BTreeMap<String, u64>, key: &str) -> Result<u64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::InvalidSpec(format!("missing catalog parameter `{key}`")))
}

fn prime_param(params: &BTreeMap<String, u64>) -> Result<u32> {
    let p = get_param(params, "p")?;
    let p = u32::try_from(p).map_err(|_| Error::BadPrime(u32::MAX))?;
    if !is_small_prime(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(p)
}

fn build_catalog(name: &str, params: &BTreeMap<String, u64>) -> Result<Group> {
    match name {
        "cyclic" => cyclic(get_param(params, "n")? as usize),
        "elem_ab" => elem_ab(prime_param(params)?, get_param(params, "n")? as usize),
        "heisenberg" => heisenberg(prime_param(params)?),
        "modular" => modular(prime_param(params)?),
        "c9_rtimes_c9" => c9_rtimes_c9(),
        "dihedral" => dihedral(get_param(params, "order")? as usize),
        "quaternion8" => quaternion8(),
        "sl23" => sl23(),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

/// Z/n with table (i + j) mod n.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 || n > crate::group::MAX_CLOSURE {
        return Err(Error::InvalidSpec(format!("cyclic order {n} out of range")));
    }
    let table: Vec<u32> = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
        .collect();
    let gens = if n == 1 { vec![0] } else { vec![1] };
    Group::from_parts(n, table, gens)
}

/// (Z/p)^n with componentwise addition; indices are base-p digits.
pub fn elem_ab(p: u32, n: usize) -> Result<Group> {
    let order = (p as usize)
        .checked_pow(n as u32)
        .filter(|&o| o <= crate::group::MAX_CLOSURE)
        .ok_or(Error::CapExceeded {
            what: "elementary abelian order",
            order: usize::MAX,
            cap: crate::group::MAX_CLOSURE,
        })?;
    let add = |i: usize, j: usize| -> usize {
        let (mut i, mut j) = (i, j);
        let mut digits = vec![0usize; n];
        for d in (0..n).rev() {
            digits[d] = (i % p as usize + j % p as usize) % p as usize;
            i /= p as usize;
            j /= p as usize;
        }
        digits.iter().fold(0, |acc, &d| acc * p as usize + d)
    };
    let table: Vec<u32> = (0..order)
        .flat_map(|i| (0..order).map(move |j| add(i, j) as u32))
        .collect();
    let gens: Vec<usize> = (0..n)
        .map(|k| (p as usize).pow((n - 1 - k) as u32))
        .collect();
    let gens = if gens.is_empty() { vec![0] } else { gens };
    Group::from_parts(order, table, gens)
}

/// UT(3, p): unipotent upper-triangular 3x3 matrices over F_p, as triples
/// (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
pub fn heisenberg(p: u32) -> Result<Group> {
    let p = p as usize;
    let order = p * p * p;
    let idx = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut table = vec![0u32; order * order];
    for a1 in 0..p {
        for b1 in 0..p {
            for c1 in 0..p {
                let i = idx(a1, b1, c1);
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            let j = idx(a2, b2, c2);
                            let k = idx((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p);
                            table[i * order + j] = k as u32;
                        }
                    }
                }
            }
        }
    }
    Group::from_parts(order, table, vec![idx(1, 0, 0), idx(0, 1, 0)])
}

/// The modular group of order p^3 and exponent p^2:
/// <a, b | a^(p^2) = b^p = 1, b a b^-1 = a^(1+p)>.
#[allow(clippy::needless_range_loop)]
pub fn modular(p: u32) -> Result<Group> {
    let p = p as usize;
    let m = p * p;
    let order = m * p;
    let idx = |i: usize, j: usize| i * p + j;
    // b^j a b^-j = a^((1+p)^j)
    let mut twist = vec![1usize; p];
    for j in 1..p {
        twist[j] = twist[j - 1] * (1 + p) % m;
    }
    let mut table = vec![0u32; order * order];
    for i1 in 0..m {
        for j1 in 0..p {
            let x = idx(i1, j1);
            for i2 in 0..m {
                for j2 in 0..p {
                    let y = idx(i2, j2);
                    let k = idx((i1 + i2 * twist[j1]) % m, (j1 + j2) % p);
                    table[x * order + y] = k as u32;
                }
            }
        }
    }
    Group::from_parts(order, table, vec![idx(1, 0), idx(0, 1)])
}

/// <a, b | a^9 = b^9 = 1, b a b^-1 = a^4>, of order 81.
#[allow(clippy::needless_range_loop)]
pub fn c9_rtimes_c9() -> Result<Group> {
    let order = 81;
    let idx = |i: usize, j: usize| i * 9 + j;
    let mut twist = [1usize; 9];
    for j in 1..9 {
        twist[j] = twist[j - 1] * 4 % 9;
    }
    let mut table = vec![0u32; order * order];
    for i1 in 0..9 {
        for j1 in 0..9 {
            let x = idx(i1, j1);
            for i2 in 0..9 {
                for j2 in 0..9 {
                    let y = idx(i2, j2);
                    let k = idx((i1 + i2 * twist[j1]) % 9, (j1 + j2) % 9);
                    table[x * order + y] = k as u32;
                }
            }
        }
    }
    Group::from_parts(order, table, vec![idx(1, 0), idx(0, 1)])
}

/// Dihedral group of order 2^n (given as `order`), n >= 2.
pub fn dihedral(order: usize) -> Result<Group> {
    if order < 4 || !order.is_power_of_two() {
        return Err(Error::InvalidSpec(format!(
            "dihedral order must be a power of two >= 4, got {order}"
        )));
    }
    let m = order / 2;
    let idx = |i: usize, j: usize| i * 2 + j;
    let mut table = vec![0u32; order * order];
    for i1 in 0..m {
        for j1 in 0..2 {
            let x = idx(i1, j1);
            for i2 in 0..m {
                for j2 in 0..2 {
                    let y = idx(i2, j2);
                    let rot = if j1 == 0 {
                        (i1 + i2) % m
                    } else {
                        (i1 + m - i2) % m
                    };
                    table[x * order + y] = idx(rot, (j1 + j2) % 2) as u32;
                }
            }
        }
    }
    Group::from_parts(order, table, vec![idx(1, 0), idx(0, 1)])
}

/// The quaternion group <a, b | a^4 = 1, b^2 = a^2, b a b^-1 = a^-1>.
pub fn quaternion8() -> Result<Group> {
    let order = 8;
    let idx = |m: usize, n: usize| m * 2 + n;
    let mut table = vec![0u32; order * order];
    for m1 in 0..4 {
        for n1 in 0..2 {
            let x = idx(m1, n1);
            for m2 in 0..4 {
                for n2 in 0..2 {
                    let y = idx(m2, n2);
                    let twisted = if n1 == 0 { m2 } else { (4 - m2) % 4 };
                    let carry = if n1 + n2 >= 2 { 2 } else { 0 };
                    table[x * order + y] = idx((m1 + twisted + carry) % 4, (n1 + n2) % 2) as u32;
                }
            }
        }
    }
    Group::from_parts(order, table, vec![idx(1, 0), idx(0, 1)])
}

/// SL(2, 3) acting on the 8 nonzero vectors of F_3^2 (lexicographic order).
pub fn sl23() -> Result<Group> {
    let vectors: Vec<(u32, u32)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&v| v != (0, 0))
        .collect();
    let pos = |v: (u32, u32)| vectors.iter().position(|&w| w == v).unwrap();
    let act = |m: [[u32; 2]; 2]| -> Vec<usize> {
        vectors
            .iter()
            .map(|&(x, y)| {
                pos((
                    (m[0][0] * x + m[0][1] * y) % 3,
                    (m[1][0] * x + m[1][1] * y) % 3,
                ))
            })
            .collect()
    };
    let s = act([[1, 1], [0, 1]]);
    let t = act([[0, 2], [1, 0]]);
    Group::from_permutations(8, &[s, t])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_catalog_spec() {
        let spec =
            parse_spec(r#"{"type":"catalog","name":"heisenberg","params":{"p":3}}"#).unwrap();
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
    }

    #[test]
    fn parse_modular_spec() {
        let spec = parse_spec(r#"{"type":"catalog","name":"modular","params":{"p":3}}"#).unwrap();
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
        assert_eq!((0..27).map(|x| g.element_order(x)).max(), Some(9));
    }

    #[test]
    fn parse_product_spec() {
        let spec = parse_spec(
            r#"{"type":"product","factors":[
                {"type":"catalog","name":"cyclic","params":{"n":2}},
                {"type":"catalog","name":"cyclic","params":{"n":2}}]}"#,
        )
        .unwrap();
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 4);
        assert!((1..4).all(|x| g.element_order(x) == 2));
    }

    #[test]
    fn unknown_catalog_name_is_rejected() {
        let err = parse_spec(r#"{"type":"catalog","name":"sporadic","params":{}}"#).unwrap_err();
        assert!(matches!(err, Error::UnknownCatalog(_)));
    }

    #[test]
    fn malformed_permutation_is_rejected() {
        let err =
            parse_spec(r#"{"type":"permutation","degree":3,"generators":[[0,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn nesting_depth_is_capped() {
        let mut spec = r#"{"type":"catalog","name":"cyclic","params":{"n":2}}"#.to_string();
        for _ in 0..4 {
            spec = format!(r#"{{"type":"product","factors":[{spec}]}}"#);
        }
        assert!(matches!(parse_spec(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn c9_rtimes_c9_shape() {
        let g = c9_rtimes_c9().unwrap();
        assert_eq!(g.order(), 81);
        assert!(!g.is_abelian());
        assert_eq!(g.center().order(), 9);
        assert_eq!(g.commutator_subgroup().order(), 3);
        // the defining relation b a b^-1 = a^4
        let (a, b) = (9, 1);
        assert_eq!(g.conj(b, a), g.pow(a, 4));
    }

    #[test]
    fn dihedral_and_quaternion_shapes() {
        let d8 = dihedral(8).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.center().order(), 2);
        assert_eq!((0..8).filter(|&x| d8.element_order(x) == 2).count(), 5);

        let q8 = quaternion8().unwrap();
        assert_eq!(q8.center().order(), 2);
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 2).count(), 1);

        assert!(dihedral(6).is_err());
    }

    #[test]
    fn sl23_shape() {
        let g = sl23().unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.commutator_subgroup().order(), 8);
    }
}
