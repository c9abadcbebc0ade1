//! Two independent verification engines for solvability.
//!
//! The first works inside `HH^1(kA)` for elementary abelian A, decomposed
//! as one copy of the dual of A per group element. A homogeneous element
//! is a pair (functional, vertex) with bracket
//! `[(phi, a), (psi, b)] = (phi(b) psi - psi(a) phi, a + b)`, and the image
//! algebra of the analysis pipeline is a graded subalgebra spanned by
//! reduced-transfer functionals.
//!
//! The second engine is a from-scratch computation of `Der(kG)` by solving
//! the Leibniz constraints over F_p, with inner derivations spanned by the
//! commutator maps; solvability of the quotient is decided by iterating
//! `S_{i+1} = [S_i, S_i] + Inner`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp::{dot_mod, is_zero_vec, FpSubspace};
use crate::gamma::{decode_vertex, encode_vertex};
use crate::group::Group;
use crate::transfer::{analyze_transfers, h_components, TransferAnalysis};

/// Largest group order the Leibniz derivation solver accepts.
pub const MAX_ORACLE_ORDER: usize = 32;

/// A homogeneous element (functional, vertex) of the graded algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElem {
    pub vertex: Vec<u32>,
    pub functional: Vec<u32>,
}

impl LieElem {
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.functional)
    }
}

/// `[(phi, a), (psi, b)] = (phi(b) psi - psi(a) phi, a + b)`.
pub fn bracket(p: u32, x: &LieElem, y: &LieElem) -> LieElem {
    assert_eq!(x.vertex.len(), y.vertex.len());
    let phi_b = dot_mod(&x.functional, &y.vertex, p);
    let psi_a = dot_mod(&y.functional, &x.vertex, p);
    let functional: Vec<u32> = x
        .functional
        .iter()
        .zip(&y.functional)
        .map(|(&phi, &psi)| {
            ((phi_b as u64 * psi as u64 + (p - psi_a) as u64 * phi as u64) % p as u64) as u32
        })
        .collect();
    let vertex: Vec<u32> = x
        .vertex
        .iter()
        .zip(&y.vertex)
        .map(|(&a, &b)| (a + b) % p)
        .collect();
    LieElem { vertex, functional }
}

/// Iterated adjoint action `ad(x)^n(y)`.
pub fn ad_power(p: u32, x: &LieElem, y: &LieElem, n: usize) -> LieElem {
    let mut acc = y.clone();
    for _ in 0..n {
        acc = bracket(p, x, &acc);
    }
    acc
}

/// Closed form of `ad((phi,a))^n((psi,b))` valid when `phi(a) = 0`:
/// `phi(b)^(n-1) (phi(b) psi - n psi(a) phi, a^n b)`.
pub fn ad_power_closed(p: u32, x: &LieElem, y: &LieElem, n: usize) -> LieElem {
    assert!(n >= 1);
    debug_assert_eq!(dot_mod(&x.functional, &x.vertex, p), 0);
    let phi_b = dot_mod(&x.functional, &y.vertex, p) as u64;
    let psi_a = dot_mod(&y.functional, &x.vertex, p) as u64;
    let mut lead = 1u64;
    for _ in 0..n - 1 {
        lead = lead * phi_b % p as u64;
    }
    let n_mod = (n as u64) % p as u64;
    let functional: Vec<u32> = x
        .functional
        .iter()
        .zip(&y.functional)
        .map(|(&phi, &psi)| {
            let inner = (phi_b * psi as u64
                + (p as u64 - n_mod % p as u64) * psi_a % p as u64 * phi as u64)
                % p as u64;
            (lead * inner % p as u64) as u32
        })
        .collect();
    let vertex: Vec<u32> = x
        .vertex
        .iter()
        .zip(&y.vertex)
        .map(|(&a, &b)| ((n as u64 * a as u64 + b as u64) % p as u64) as u32)
        .collect();
    LieElem { vertex, functional }
}

/// The BV operator on a homogeneous element: `Delta((phi, a)) = -phi(a) a`;
/// returns the scalar coefficient at the vertex a.
pub fn bv_delta(p: u32, x: &LieElem) -> u32 {
    (p - dot_mod(&x.functional, &x.vertex, p)) % p
}

/// A graded subalgebra of `HH^1(kA)`: one row-reduced functional space per
/// vertex that carries anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieBasis {
    p: u32,
    dim: usize,
    grades: BTreeMap<usize, FpSubspace>,
}

impl GradedLieBasis {
    pub fn new(p: u32, dim: usize) -> Self {
        GradedLieBasis {
            p,
            dim,
            grades: BTreeMap::new(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_dim(&self) -> usize {
        self.grades.values().map(|s| s.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn grade(&self, vertex: usize) -> Option<&FpSubspace> {
        self.grades.get(&vertex)
    }

    pub fn grade_dims(&self) -> BTreeMap<usize, usize> {
        self.grades.iter().map(|(&v, s)| (v, s.dim())).collect()
    }

    pub fn insert(&mut self, elem: &LieElem) -> bool {
        if elem.is_zero() {
            return false;
        }
        let v = encode_vertex(&elem.vertex, self.p);
        let grown = self
            .grades
            .entry(v)
            .or_insert_with(|| FpSubspace::empty(self.p, self.dim))
            .insert(&elem.functional);
        if !grown && self.grades[&v].is_zero() {
            self.grades.remove(&v);
        }
        grown
    }

    pub fn contains(&self, elem: &LieElem) -> bool {
        if elem.is_zero() {
            return true;
        }
        let v = encode_vertex(&elem.vertex, self.p);
        self.grades
            .get(&v)
            .is_some_and(|s| s.contains(&elem.functional))
    }

    /// Homogeneous basis vectors in (vertex, row) order.
    pub fn basis_elems(&self) -> Vec<LieElem> {
        let mut out = Vec::with_capacity(self.total_dim());
        for (&v, space) in &self.grades {
            let vertex = decode_vertex(v, self.p, self.dim);
            for row in space.basis() {
                out.push(LieElem {
                    vertex: vertex.clone(),
                    functional: row.clone(),
                });
            }
        }
        out
    }
}

/// Build the image algebra from the transfer analysis; the span is checked
/// to be closed under the bracket.
pub fn h_from_transfers(ta: &TransferAnalysis) -> GradedLieBasis {
    let p = ta.fq.prime;
    let dim = ta.fq.dim();
    let mut h = GradedLieBasis::new(p, dim);
    for comp in h_components(ta) {
        for row in comp.space.basis() {
            h.insert(&LieElem {
                vertex: comp.vertex.clone(),
                functional: row.clone(),
            });
        }
    }
    let basis = h.basis_elems();
    for x in &basis {
        for y in &basis {
            let z = bracket(p, x, y);
            assert!(
                h.contains(&z),
                "image algebra must be closed under the bracket"
            );
        }
    }
    h
}

pub fn build_h(g: &Group, p: u32) -> Result<GradedLieBasis> {
    Ok(h_from_transfers(&analyze_transfers(g, p)?))
}

/// A derived or lower-central series: the terms, their total dimensions,
/// and whether the series reached zero before stabilizing.
#[derive(Clone, Debug)]
pub struct LieSeries {
    pub dims: Vec<usize>,
    pub terms: Vec<GradedLieBasis>,
    pub reached_zero: bool,
}

impl LieSeries {
    /// First index with dimension zero, when the series gets there.
    pub fn length(&self) -> Option<usize> {
        self.reached_zero.then(|| self.dims.len() - 1)
    }
}

fn span_of_brackets(p: u32, left: &[LieElem], right: &[LieElem], dim: usize) -> GradedLieBasis {
    let mut out = GradedLieBasis::new(p, dim);
    for x in left {
        for y in right {
            out.insert(&bracket(p, x, y));
        }
    }
    out
}

fn run_series(l: &GradedLieBasis, step: impl Fn(&GradedLieBasis) -> GradedLieBasis) -> LieSeries {
    let mut terms = vec![l.clone()];
    let mut dims = vec![l.total_dim()];
    let mut reached_zero = l.total_dim() == 0;
    while !reached_zero {
        let cur = terms.last().expect("nonempty");
        let next = step(cur);
        let nd = next.total_dim();
        let stagnant = nd == cur.total_dim();
        dims.push(nd);
        terms.push(next);
        if nd == 0 {
            reached_zero = true;
        } else if stagnant {
            break;
        }
    }
    LieSeries {
        dims,
        terms,
        reached_zero,
    }
}

/// `D^0 = L, D^(i+1) = [D^i, D^i]`, dimensions until zero or stabilization.
pub fn derived_series(l: &GradedLieBasis) -> LieSeries {
    let p = l.p;
    let dim = l.dim;
    run_series(l, |cur| {
        let basis = cur.basis_elems();
        span_of_brackets(p, &basis, &basis, dim)
    })
}

/// `C^0 = L, C^n = [L, C^(n-1)]`.
pub fn lower_central_series(l: &GradedLieBasis) -> LieSeries {
    let p = l.p;
    let dim = l.dim;
    let whole = l.basis_elems();
    run_series(l, |cur| {
        span_of_brackets(p, &whole, &cur.basis_elems(), dim)
    })
}

pub fn is_nilpotent(l: &GradedLieBasis) -> bool {
    lower_central_series(l).reached_zero
}

/// Minimal n with `D^n(L)` nilpotent, or None when no derived term is.
pub fn ss_rank(l: &GradedLieBasis) -> Option<usize> {
    let series = derived_series(l);
    series.terms.iter().position(is_nilpotent)
}

/// The derivation algebra of kG in the group-element basis, with the inner
/// derivations picked out. Matrices are stored flat; entry `(i, j)` is the
/// coefficient of g_i in the image of g_j.
pub struct DerivationSpace {
    p: u32,
    order: usize,
    basis: Vec<Vec<u32>>,
    inner: Vec<Vec<u32>>,
}

impl DerivationSpace {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn derivation_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn inner_dim(&self) -> usize {
        self.inner.len()
    }

    pub fn hh1_dim(&self) -> usize {
        self.basis.len() - self.inner.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn inner(&self) -> &[Vec<u32>] {
        &self.inner
    }
}

/// Solve `D(gh) = D(g) h + g D(h)` over F_p. Constraints are imposed for
/// g in a generating set and h arbitrary, which determines derivations on
/// the whole group; each solution is then verified against every pair.
pub fn full_der_algebra(g: &Group, p: u32) -> Result<DerivationSpace> {
    let n = g.order();
    if n > MAX_ORACLE_ORDER {
        return Err(Error::CapExceeded {
            what: "derivation oracle order",
            order: n,
            cap: MAX_ORACLE_ORDER,
        });
    }
    let unknowns = n * n;
    let gens = g.generators();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(gens.len() * unknowns);
    for &s in gens {
        for h in 0..n {
            let sh = g.mul(s, h);
            for k in 0..n {
                let mut row = vec![0u32; unknowns];
                let mut bump = |i: usize, j: usize, c: u32| {
                    row[i * n + j] = (row[i * n + j] + c) % p;
                };
                bump(k, sh, 1);
                bump(g.mul(k, g.inv(h)), s, p - 1);
                bump(g.mul(g.inv(s), k), h, p - 1);
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let constraint = crate::fp::FpMatrix::from_rows(p, unknowns, rows);
    let basis_raw = constraint.nullspace();
    // soundness check: every solution must obey Leibniz on all pairs
    for d in &basis_raw {
        for x in 0..n {
            for y in 0..n {
                let xy = g.mul(x, y);
                for k in 0..n {
                    let lhs = d[k * n + xy];
                    let rhs = (d[g.mul(k, g.inv(y)) * n + x] + d[g.mul(g.inv(x), k) * n + y]) % p;
                    assert_eq!(lhs, rhs, "derivation solver produced a non-derivation");
                }
            }
        }
    }
    let mut der_space = FpSubspace::empty(p, unknowns);
    for v in &basis_raw {
        der_space.insert(v);
    }
    let mut inner_space = FpSubspace::empty(p, unknowns);
    for x in 0..n {
        let mut v = vec![0u32; unknowns];
        for h in 0..n {
            let xh = g.mul(x, h);
            let hx = g.mul(h, x);
            v[xh * n + h] = (v[xh * n + h] + 1) % p;
            v[hx * n + h] = (v[hx * n + h] + p - 1) % p;
        }
        inner_space.insert(&v);
    }
    for v in inner_space.basis() {
        assert!(
            der_space.contains(v),
            "inner derivations must be derivations"
        );
    }
    Ok(DerivationSpace {
        p,
        order: n,
        basis: der_space.basis().to_vec(),
        inner: inner_space.basis().to_vec(),
    })
}

fn mat_mul(a: &[u32], b: &[u32], n: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k] as u64;
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let cell = &mut out[i * n + j];
                *cell = ((*cell as u64 + aik * b[k * n + j] as u64) % p as u64) as u32;
            }
        }
    }
    out
}

fn mat_commutator(a: &[u32], b: &[u32], n: usize, p: u32) -> Vec<u32> {
    let ab = mat_mul(a, b, n, p);
    let ba = mat_mul(b, a, n, p);
    ab.iter().zip(&ba).map(|(&x, &y)| (x + p - y) % p).collect()
}

/// Verdict of the full oracle on `HH^1(kG) = Der / Inner`.
#[derive(Clone, Debug)]
pub struct OracleVerdict {
    /// Dimensions of the derived series of the quotient.
    pub dims: Vec<usize>,
    pub solvable: bool,
    pub derived_length: Option<usize>,
}

/// Iterate `S_0 = Der, S_(i+1) = [S_i, S_i] + Inner`; the quotient is
/// solvable exactly when the chain descends to the inner derivations.
pub fn hh1_quotient_solvable(ds: &DerivationSpace) -> OracleVerdict {
    let (n, p) = (ds.order, ds.p);
    let unknowns = n * n;
    let mut current = FpSubspace::empty(p, unknowns);
    for v in &ds.basis {
        current.insert(v);
    }
    let mut inner = FpSubspace::empty(p, unknowns);
    for v in &ds.inner {
        inner.insert(v);
    }
    let mut dims = vec![current.dim() - inner.dim()];
    loop {
        if current.dim() == inner.dim() {
            let dl = dims.len() - 1;
            return OracleVerdict {
                dims,
                solvable: true,
                derived_length: Some(dl),
            };
        }
        let basis = current.basis();
        let mut next = inner.clone();
        for i in 0..basis.len() {
            for j in 0..i {
                next.insert(&mat_commutator(&basis[i], &basis[j], n, p));
            }
        }
        let stagnant = next.dim() == current.dim();
        dims.push(next.dim() - inner.dim());
        current = next;
        if stagnant {
            return OracleVerdict {
                dims,
                solvable: false,
                derived_length: None,
            };
        }
    }
}
