//! Finite groups as validated Cayley tables.
//!
//! Elements are dense indices `0..order` with the identity always at index
//! 0, so multiplication is a table lookup and every derived object (coset
//! lists, class representatives, bases) is picked by smallest-index-first
//! rules, making all outputs reproducible.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest closure we are willing to build from permutation generators.
pub const MAX_CLOSURE: usize = 10_000;
/// Orders up to this bound get an exhaustive associativity check; larger
/// tables are sampled on 10^6 pseudo-random triples (fixed seed).
pub const MAX_EXHAUSTIVE_ASSOC: usize = 256;

const ASSOC_SAMPLES: usize = 1_000_000;
const ASSOC_SEED: u64 = 0x9e3779b97f4a7c15;

/// An immutable finite group on indices `0..order`, identity at 0.
#[derive(Clone, Debug)]
pub struct Group {
    order: usize,
    table: Vec<u32>, // row-major: table[i * order + j] = i * j
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    /// Conjugate `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Commutator `x y x^-1 y^-1`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut n = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            n += 1;
        }
        n
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// True when |G| is a power of p (the trivial group counts).
    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order;
        while n.is_multiple_of(p as usize) {
            n /= p as usize;
        }
        n == 1
    }

    pub fn trivial() -> Group {
        Group {
            order: 1,
            table: vec![0],
            inverse: vec![0],
            generators: vec![0],
        }
    }

    /// Validated construction from a flat table. The generator list must
    /// actually generate.
    pub fn from_parts(order: usize, table: Vec<u32>, generators: Vec<usize>) -> Result<Group> {
        assert_eq!(table.len(), order * order);
        for (k, &v) in table.iter().enumerate() {
            if v as usize >= order {
                return Err(Error::EntryOutOfRange {
                    element: v as usize,
                    order,
                    row: k / order,
                });
            }
        }
        // identity row and column
        for i in 0..order {
            if table[i] as usize != i || table[i * order] as usize != i {
                return Err(Error::IdentityAxiom { witness: i });
            }
        }
        // inverses: two-sided
        let mut inverse = vec![0u32; order];
        for i in 0..order {
            let j = (0..order)
                .find(|&j| table[i * order + j] == 0)
                .ok_or(Error::MissingInverse { element: i })?;
            if table[j * order + i] != 0 {
                return Err(Error::MissingInverse { element: i });
            }
            inverse[i] = j as u32;
        }
        let mul = |i: usize, j: usize| table[i * order + j] as usize;
        if order <= MAX_EXHAUSTIVE_ASSOC {
            for i in 0..order {
                for j in 0..order {
                    let ij = mul(i, j);
                    for k in 0..order {
                        if mul(ij, k) != mul(i, mul(j, k)) {
                            return Err(Error::AssociativityAxiom { i, j, k });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED);
            for _ in 0..ASSOC_SAMPLES {
                let i = rng.random_range(0..order);
                let j = rng.random_range(0..order);
                let k = rng.random_range(0..order);
                if mul(mul(i, j), k) != mul(i, mul(j, k)) {
                    return Err(Error::AssociativityAxiom { i, j, k });
                }
            }
        }
        // the generators must reach every element
        let mut gens: Vec<usize> = generators;
        gens.retain(|&g| g < order);
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::NotGenerated);
        }
        Ok(Group {
            order,
            table,
            inverse,
            generators: gens,
        })
    }

    /// Construction for tables derived from an already-validated group
    /// (quotients, subgroups re-indexed as groups). Skips the axiom sweep.
    pub(crate) fn from_parts_trusted(
        order: usize,
        table: Vec<u32>,
        generators: Vec<usize>,
    ) -> Group {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0u32; order];
        for i in 0..order {
            let j = (0..order)
                .find(|&j| table[i * order + j] == 0)
                .expect("derived table has inverses");
            inverse[i] = j as u32;
        }
        Group {
            order,
            table,
            inverse,
            generators,
        }
    }

    /// BFS closure of permutation generators acting on `0..degree`.
    /// Element order is the BFS insertion order from the identity, which
    /// makes the index assignment deterministic.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Group> {
        for g in gens {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&v| {
                    if v >= degree || seen[v] {
                        false
                    } else {
                        seen[v] = true;
                        true
                    }
                });
            if !ok {
                return Err(Error::NonBijectiveGenerator {
                    degree,
                    perm: g.clone(),
                });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        // (f * g)(v) = f(g(v))
        let compose =
            |f: &[usize], g: &[usize]| -> Vec<usize> { g.iter().map(|&v| f[v]).collect() };
        let mut next = 0;
        while next < elems.len() {
            let cur = elems[next].clone();
            for g in gens {
                let prod = compose(&cur, g);
                if !index.contains_key(&prod) {
                    if elems.len() == MAX_CLOSURE {
                        return Err(Error::ClosureCapExceeded { cap: MAX_CLOSURE });
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            next += 1;
        }
        let order = elems.len();
        let mut table = vec![0u32; order * order];
        for i in 0..order {
            for j in 0..order {
                let prod = compose(&elems[i], &elems[j]);
                table[i * order + j] = index[&prod] as u32;
            }
        }
        let gen_indices: Vec<usize> = {
            let mut v: Vec<usize> = gens.iter().map(|g| index[g]).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let gen_indices = if gen_indices.is_empty() {
            vec![0]
        } else {
            gen_indices
        };
        Group::from_parts(order, table, gen_indices)
    }

    /// Validated construction from a nested Cayley table; the generator set
    /// is taken to be all elements.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Group> {
        let order = table.len();
        if order == 0 || table.iter().any(|row| row.len() != order) {
            return Err(Error::MalformedTable(
                "table must be square and nonempty".into(),
            ));
        }
        let flat: Vec<u32> = table
            .iter()
            .flat_map(|row| row.iter().map(|&v| v as u32))
            .collect();
        Group::from_parts(order, flat, (0..order).collect())
    }

    /// `{ y : xy = yx }`.
    pub fn centralizer(&self, x: usize) -> Subgroup {
        assert!(x < self.order);
        let members = (0..self.order)
            .filter(|&y| self.mul(x, y) == self.mul(y, x))
            .collect();
        Subgroup { members }
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order)
            .filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        Subgroup { members }
    }

    /// Conjugacy classes, each sorted, ordered by smallest member; the
    /// representative of a class is its smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if assigned[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn class_representatives(&self) -> Vec<usize> {
        self.conjugacy_classes().into_iter().map(|c| c[0]).collect()
    }

    /// Smallest subgroup containing `seed`, provided the seed set is closed
    /// under conjugation (then the closure is automatically normal).
    fn closure_of(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut list = vec![0usize];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !member[s] {
                member[s] = true;
                list.push(s);
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            // multiply against everything currently in the subgroup
            let mut i = 0;
            while i < list.len() {
                let h = list[i];
                for y in [self.mul(x, h), self.mul(h, x)] {
                    if !member[y] {
                        member[y] = true;
                        list.push(y);
                        queue.push(y);
                    }
                }
                i += 1;
            }
        }
        list.sort_unstable();
        list
    }

    /// Normal closure of all commutators `[x, y]`.
    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut seed = Vec::new();
        for x in 0..self.order {
            for y in 0..x {
                seed.push(self.commutator(x, y));
            }
        }
        seed.sort_unstable();
        seed.dedup();
        Subgroup {
            members: self.closure_of(&seed),
        }
    }

    /// p-Frattini subgroup: normal closure of all p-th powers and all
    /// commutators. May be the whole group, e.g. when p does not divide |G|.
    pub fn frattini_p(&self, p: u32) -> Subgroup {
        let mut seed = Vec::new();
        for x in 0..self.order {
            seed.push(self.pow(x, p as usize));
            for y in 0..x {
                seed.push(self.commutator(x, y));
            }
        }
        seed.sort_unstable();
        seed.dedup();
        Subgroup {
            members: self.closure_of(&seed),
        }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order).all(|g| h.members.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// Quotient by a normal subgroup: cosets ordered by smallest member (so
    /// the identity coset is index 0) together with the projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, GroupHom)> {
        self.expect_subgroup(n)?;
        if let Some((g, x)) = (0..self.order).find_map(|g| {
            n.members
                .iter()
                .find(|&&x| !n.contains(self.conj(g, x)))
                .map(|&x| (g, x))
        }) {
            return Err(Error::NotNormal {
                conjugator: g,
                element: x,
            });
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &h in &n.members {
                coset_of[self.mul(h, x)] = c;
            }
        }
        let q_order = reps.len();
        let mut table = vec![0u32; q_order * q_order];
        for i in 0..q_order {
            for j in 0..q_order {
                table[i * q_order + j] = coset_of[self.mul(reps[i], reps[j])] as u32;
            }
        }
        let gens = {
            let mut v: Vec<usize> = self.generators.iter().map(|&g| coset_of[g]).collect();
            v.sort_unstable();
            v.dedup();
            if v.is_empty() {
                v.push(0)
            }
            v
        };
        let quotient = Group::from_parts_trusted(q_order, table, gens);
        let images: Vec<usize> = coset_of;
        let proj = GroupHom::new(self, &quotient, images)?;
        Ok((quotient, proj))
    }

    /// Re-index a subgroup as a standalone group; element `k` of the result
    /// is `h.members()[k]` in the parent.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<Group> {
        self.expect_subgroup(h)?;
        let m = h.members.len();
        let pos: HashMap<usize, usize> =
            h.members.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = pos[&self.mul(h.members[i], h.members[j])] as u32;
            }
        }
        Ok(Group::from_parts_trusted(m, table, (0..m).collect()))
    }

    /// Right transversal of `h`: smallest element of each right coset `Hg`,
    /// in ascending order, so the identity comes first.
    pub fn right_transversal(&self, h: &Subgroup) -> Result<Vec<usize>> {
        self.expect_subgroup(h)?;
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in &h.members {
                covered[self.mul(x, g)] = true;
            }
        }
        Ok(reps)
    }

    fn expect_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.members.first() != Some(&0) || h.members.iter().any(|&x| x >= self.order) {
            return Err(Error::NotASubgroup { x: 0, y: 0 });
        }
        for &x in &h.members {
            for &y in &h.members {
                if !h.contains(self.mul(x, y)) {
                    return Err(Error::NotASubgroup { x, y });
                }
            }
        }
        Ok(())
    }
}

/// A subgroup stored as a sorted member list (identity included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validate a member list against a parent group.
    pub fn new(parent: &Group, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if !members.contains(&0) {
            members.insert(0, 0);
        }
        let sg = Subgroup { members };
        parent.expect_subgroup(&sg)?;
        Ok(sg)
    }

    pub fn whole(parent: &Group) -> Subgroup {
        Subgroup {
            members: (0..parent.order()).collect(),
        }
    }

    pub fn trivial() -> Subgroup {
        Subgroup { members: vec![0] }
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

    /// Position of a parent element in the member list.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }
}

/// A verified homomorphism given element-wise.
#[derive(Clone, Debug)]
pub struct GroupHom {
    images: Vec<usize>,
    target_order: usize,
}

impl GroupHom {
    pub fn new(source: &Group, target: &Group, images: Vec<usize>) -> Result<GroupHom> {
        assert_eq!(images.len(), source.order());
        if images[0] != 0 {
            return Err(Error::NotAHomomorphism { i: 0, j: 0 });
        }
        if images.iter().any(|&v| v >= target.order()) {
            return Err(Error::NotAHomomorphism { i: 0, j: 0 });
        }
        for i in 0..source.order() {
            for j in 0..source.order() {
                if images[source.mul(i, j)] != target.mul(images[i], images[j]) {
                    return Err(Error::NotAHomomorphism { i, j });
                }
            }
        }
        Ok(GroupHom {
            images,
            target_order: target.order(),
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Members of the kernel, sorted.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&x| self.images[x] == 0)
            .collect()
    }

    /// Smallest preimage of a target element, if any.
    pub fn preimage(&self, y: usize) -> Option<usize> {
        self.images.iter().position(|&v| v == y)
    }
}

/// A direct product together with its injections and projections.
pub struct DirectProduct {
    pub group: Group,
    pub inject: [GroupHom; 2],
    pub project: [GroupHom; 2],
}

/// Direct product on index pairs, flattened as `(a, b) -> a * |g2| + b`.
pub fn direct_product(g1: &Group, g2: &Group) -> Result<DirectProduct> {
    let (n1, n2) = (g1.order(), g2.order());
    let order = n1
        .checked_mul(n2)
        .filter(|&n| n <= MAX_CLOSURE)
        .ok_or(Error::CapExceeded {
            what: "direct product order",
            order: n1.saturating_mul(n2),
            cap: MAX_CLOSURE,
        })?;
    let mut table = vec![0u32; order * order];
    for a1 in 0..n1 {
        for b1 in 0..n2 {
            let i = a1 * n2 + b1;
            for a2 in 0..n1 {
                for b2 in 0..n2 {
                    let j = a2 * n2 + b2;
                    table[i * order + j] = (g1.mul(a1, a2) * n2 + g2.mul(b1, b2)) as u32;
                }
            }
        }
    }
    let mut gens: Vec<usize> = g1.generators().iter().map(|&g| g * n2).collect();
    gens.extend(g2.generators().iter().copied());
    gens.sort_unstable();
    gens.dedup();
    let group = Group::from_parts(order, table, gens)?;
    let inj1 = GroupHom::new(g1, &group, (0..n1).map(|a| a * n2).collect())?;
    let inj2 = GroupHom::new(g2, &group, (0..n2).collect())?;
    let proj1 = GroupHom::new(&group, g1, (0..order).map(|i| i / n2).collect())?;
    let proj2 = GroupHom::new(&group, g2, (0..order).map(|i| i % n2).collect())?;
    Ok(DirectProduct {
        group,
        inject: [inj1, inj2],
        project: [proj1, proj2],
    })
}

/// Coordinates on an elementary abelian p-group: a greedy smallest-index
/// basis and the induced bijection with F_p^d.
#[derive(Clone, Debug)]
pub struct ElemAbStructure {
    prime: u32,
    dim: usize,
    order: usize,
    basis: Vec<usize>,
    coords: Vec<Vec<u32>>,
}

impl ElemAbStructure {
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coords_of(&self, x: usize) -> &[u32] {
        &self.coords[x]
    }

    /// The element with the given coordinates.
    pub fn element_of(&self, coords: &[u32]) -> usize {
        assert_eq!(coords.len(), self.dim);
        self.coords
            .iter()
            .position(|c| c == coords)
            .expect("coords is a bijection onto F_p^d")
    }
}

/// Deterministic coordinates for an elementary abelian group of exponent p:
/// scan elements in index order, keeping each one independent of the span
/// so far.
pub fn elem_ab_structure(g: &Group, p: u32) -> Result<ElemAbStructure> {
    let n = g.order();
    if !g.is_p_group(p) || !g.is_abelian() || (1..n).any(|x| g.pow(x, p as usize) != 0) {
        return Err(Error::NotElementaryAbelian { p });
    }
    let mut basis = Vec::new();
    let mut span: HashMap<usize, Vec<u32>> = HashMap::new();
    span.insert(0, Vec::new());
    for x in 1..n {
        if span.contains_key(&x) {
            continue;
        }
        basis.push(x);
        let snapshot: Vec<(usize, Vec<u32>)> = span.iter().map(|(&e, c)| (e, c.clone())).collect();
        for (elem, coords) in snapshot {
            let mut cur = elem;
            for k in 1..p {
                cur = g.mul(cur, x);
                let mut c = coords.clone();
                c.push(k);
                span.insert(cur, c);
            }
            let mut c0 = coords;
            c0.push(0);
            span.insert(elem, c0);
        }
    }
    let dim = basis.len();
    let mut coords = vec![Vec::new(); n];
    for (elem, mut c) in span {
        c.resize(dim, 0);
        coords[elem] = c;
    }
    debug_assert_eq!((p as usize).pow(dim as u32), n);
    Ok(ElemAbStructure {
        prime: p,
        dim,
        order: n,
        basis,
        coords,
    })
}

/// The p-Frattini quotient bundle: Phi_p(G), A = G/Phi_p(G), the projection
/// and coordinates on A. This is the shared entry point of the analysis
/// pipeline.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
    pub prime: u32,
    pub subgroup: Subgroup,
    pub quotient: Group,
    pub proj: GroupHom,
    pub coords: ElemAbStructure,
}

impl FrattiniQuotient {
    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// Coordinates of the class of a group element.
    pub fn class_coords(&self, x: usize) -> &[u32] {
        self.coords.coords_of(self.proj.apply(x))
    }
}

pub fn frattini_quotient(g: &Group, p: u32) -> Result<FrattiniQuotient> {
    let phi = g.frattini_p(p);
    let (quotient, proj) = g.quotient(&phi)?;
    let coords = elem_ab_structure(&quotient, p)?;
    Ok(FrattiniQuotient {
        prime: p,
        subgroup: phi,
        quotient,
        proj,
        coords,
    })
}
