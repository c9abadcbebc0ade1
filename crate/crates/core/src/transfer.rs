//! The transfer homomorphism `tr_H^G : G -> H/H'` and its F_p-linear
//! reduction on Frattini quotients.
//!
//! For a coset transversal `t_1, ..., t_m` of H in G, the transfer of `x`
//! is the product of the factors `g_[i]` determined by `t_i x = g_[i] t_j`,
//! taken in transversal order; its class mod H' does not depend on the
//! transversal. Reducing mod the p-Frattini subgroup of a centralizer
//! `C = C_G(x)` turns the transfer into a linear map
//! `A = G/Phi_p(G) -> C/Phi_p(C)`, which is the edge and component data of
//! the gamma graph.

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, FpSubspace};
use crate::group::{frattini_quotient, FrattiniQuotient, Group, GroupHom, Subgroup};

/// Transfer data for a fixed subgroup H of G: the transversal, coset
/// lookup, and the quotient H/H' that values live in.
pub struct TransferMap<'g> {
    group: &'g Group,
    sub: Subgroup,
    sub_group: Group,
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
    quotient: Group,
    proj: GroupHom,
}

impl<'g> TransferMap<'g> {
    pub fn new(group: &'g Group, h: &Subgroup) -> Result<Self> {
        let transversal = group.right_transversal(h)?;
        Self::with_transversal(group, h, transversal)
    }

    /// Build with a caller-supplied right transversal (any order, any
    /// representatives); the H/H' values must come out the same.
    pub fn with_transversal(
        group: &'g Group,
        h: &Subgroup,
        transversal: Vec<usize>,
    ) -> Result<Self> {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        for (i, &t) in transversal.iter().enumerate() {
            for &x in h.members() {
                let y = group.mul(x, t);
                if coset_of[y] != usize::MAX {
                    return Err(Error::InvalidSpec(format!(
                        "transversal entries {t} and {} share a coset",
                        transversal[coset_of[y]]
                    )));
                }
                coset_of[y] = i;
            }
        }
        if coset_of.contains(&usize::MAX) {
            return Err(Error::InvalidSpec(
                "transversal does not cover the group".into(),
            ));
        }
        let sub_group = group.subgroup_as_group(h)?;
        let derived = sub_group.commutator_subgroup();
        let (quotient, proj) = sub_group.quotient(&derived)?;
        Ok(TransferMap {
            group,
            sub: h.clone(),
            sub_group,
            transversal,
            coset_of,
            quotient,
            proj,
        })
    }

    /// The quotient H/H' that transfer values live in.
    pub fn quotient(&self) -> &Group {
        &self.quotient
    }

    /// H re-indexed as a standalone group.
    pub fn sub_group(&self) -> &Group {
        &self.sub_group
    }

    /// The transfer factor product as an element of the parent group
    /// (always a member of H; only its class mod H' is canonical).
    pub fn eval_raw(&self, x: usize) -> usize {
        let mut product = 0usize;
        for &t in &self.transversal {
            let tx = self.group.mul(t, x);
            let target = self.transversal[self.coset_of[tx]];
            let factor = self.group.mul(tx, self.group.inv(target));
            debug_assert!(self.sub.contains(factor));
            product = self.group.mul(product, factor);
        }
        product
    }

    /// Transfer value as an element of H/H'.
    pub fn eval(&self, x: usize) -> usize {
        self.quotient_class_of_member(self.eval_raw(x))
    }

    /// Image in H/H' of a parent element that lies in H.
    pub fn quotient_class_of_member(&self, member: usize) -> usize {
        let k = self.sub.index_of(member).expect("element of H");
        self.proj.apply(k)
    }
}

/// Transfer of `x` along `H <= G`, as an element index of H/H'.
pub fn transfer_element(g: &Group, h: &Subgroup, x: usize) -> Result<usize> {
    Ok(TransferMap::new(g, h)?.eval(x))
}

/// The F_p-linear reduction of `tr_{C_G(x)}^G`: a `d_x x d` matrix from
/// coordinates on A = G/Phi_p(G) to coordinates on C/Phi_p(C).
#[derive(Clone, Debug)]
pub struct ReducedTransfer {
    /// The group element the centralizer was taken at.
    pub rep: usize,
    /// Coordinates of the class q(rep) in A.
    pub source_vertex: Vec<u32>,
    pub matrix: FpMatrix,
}

pub fn reduced_transfer(g: &Group, fq: &FrattiniQuotient, x: usize) -> Result<ReducedTransfer> {
    let c = g.centralizer(x);
    let matrix = if c.order() == g.order() {
        // central element: the transfer G -> G is the identity, so the
        // reduction is the coordinate map of A itself
        FpMatrix::identity(fq.prime, fq.dim())
    } else {
        reduced_transfer_matrix(g, fq, &c)?
    };
    Ok(ReducedTransfer {
        rep: x,
        source_vertex: fq.class_coords(x).to_vec(),
        matrix,
    })
}

/// The generic path: evaluate the transfer on preimages of the A-basis and
/// read coordinates in C/Phi_p(C). Columns are checked to be independent
/// of the chosen preimage.
fn reduced_transfer_matrix(g: &Group, fq: &FrattiniQuotient, c: &Subgroup) -> Result<FpMatrix> {
    let p = fq.prime;
    let c_grp = g.subgroup_as_group(c)?;
    let cfq = frattini_quotient(&c_grp, p)?;
    let d_x = cfq.dim();
    let d = fq.dim();
    let tm = TransferMap::new(g, c)?;
    let mut matrix = FpMatrix::zeros(p, d_x, d);
    for (k, &basis_elem) in fq.coords.basis().iter().enumerate() {
        let mut column: Option<Vec<u32>> = None;
        let mut checked = 0;
        for y in 0..g.order() {
            if fq.proj.apply(y) != basis_elem {
                continue;
            }
            let raw = tm.eval_raw(y);
            let c_idx = c.index_of(raw).expect("transfer lands in the centralizer");
            let col = cfq.class_coords(c_idx).to_vec();
            match &column {
                None => column = Some(col),
                Some(first) => assert_eq!(
                    first, &col,
                    "reduced transfer must not depend on the preimage"
                ),
            }
            checked += 1;
            if checked == 2 {
                break;
            }
        }
        let column = column.expect("projection is surjective");
        for (r, &v) in column.iter().enumerate() {
            matrix.set(r, k, v);
        }
    }
    Ok(matrix)
}

/// Reduced transfers for every conjugacy-class representative, plus the
/// shared Frattini-quotient data. All graph and Lie computations run off
/// this bundle.
pub struct TransferAnalysis {
    pub fq: FrattiniQuotient,
    pub class_reps: Vec<usize>,
    pub transfers: Vec<ReducedTransfer>,
}

pub fn analyze_transfers(g: &Group, p: u32) -> Result<TransferAnalysis> {
    let fq = frattini_quotient(g, p)?;
    let class_reps = g.class_representatives();
    let transfers = class_reps
        .iter()
        .map(|&x| reduced_transfer(g, &fq, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransferAnalysis {
        fq,
        class_reps,
        transfers,
    })
}

/// The graded component `h_a`: the span of all reduced-transfer functionals
/// whose representative maps to the vertex `a`, as a subspace of the dual
/// of A.
#[derive(Clone, Debug)]
pub struct HComponent {
    pub vertex: Vec<u32>,
    pub space: FpSubspace,
}

/// All components, indexed by encoded vertex.
pub fn h_components(ta: &TransferAnalysis) -> Vec<HComponent> {
    let p = ta.fq.prime;
    let d = ta.fq.dim();
    let count = (p as usize).pow(d as u32);
    let mut spaces: Vec<FpSubspace> = vec![FpSubspace::empty(p, d); count];
    for rt in &ta.transfers {
        let v = crate::gamma::encode_vertex(&rt.source_vertex, p);
        spaces[v].merge(&rt.matrix.row_space());
    }
    spaces
        .into_iter()
        .enumerate()
        .map(|(v, space)| HComponent {
            vertex: crate::gamma::decode_vertex(v, p, d),
            space,
        })
        .collect()
}

/// Single-vertex variant of `h_components`.
pub fn h_component(g: &Group, fq: &FrattiniQuotient, a: &[u32]) -> Result<HComponent> {
    assert_eq!(a.len(), fq.dim());
    let mut space = FpSubspace::empty(fq.prime, fq.dim());
    for x in g.class_representatives() {
        if fq.class_coords(x) == a {
            space.merge(&reduced_transfer(g, fq, x)?.matrix.row_space());
        }
    }
    Ok(HComponent {
        vertex: a.to_vec(),
        space,
    })
}

/// Right-hand side of the product-group transfer identity: componentwise
/// transfers raised to the size of the other factor's conjugacy class.
pub struct ProductTransferSides {
    pub left_quotient: Group,
    pub left_value: usize,
    pub right_quotient: Group,
    pub right_value: usize,
}

pub fn product_transfer_check(
    p1: &Group,
    p2: &Group,
    x: usize,
    y: usize,
    a: usize,
    b: usize,
) -> Result<ProductTransferSides> {
    let class_size = |g: &Group, z: usize| -> usize {
        let mut class: Vec<usize> = (0..g.order()).map(|w| g.conj(w, z)).collect();
        class.sort_unstable();
        class.dedup();
        class.len()
    };
    let left = TransferMap::new(p1, &p1.centralizer(x))?;
    let right = TransferMap::new(p2, &p2.centralizer(y))?;
    let left_value = left.quotient().pow(left.eval(a), class_size(p2, y));
    let right_value = right.quotient().pow(right.eval(b), class_size(p1, x));
    Ok(ProductTransferSides {
        left_quotient: left.quotient.clone(),
        left_value,
        right_quotient: right.quotient.clone(),
        right_value,
    })
}
