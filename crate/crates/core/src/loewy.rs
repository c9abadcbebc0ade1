//! Radical filtration of kP for p-groups: powers of the augmentation
//! ideal, the Loewy length, and the derived-length upper bound it yields.

use crate::error::{Error, Result};
use crate::fp::FpSubspace;
use crate::group::Group;

/// Largest group order the filtration accepts; each step is cubic in it.
pub const MAX_LOEWY_ORDER: usize = 512;

/// Dimensions of `J^n` for n = 0, 1, ... down to zero.
#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    pub dims: Vec<usize>,
    pub loewy_length: usize,
}

/// For a p-group the radical is the augmentation ideal, spanned by the
/// vectors `g - e`; each power is the span of products of those spanning
/// vectors with the previous step's basis.
pub fn loewy(g: &Group, p: u32) -> Result<RadicalFiltration> {
    let n = g.order();
    if !g.is_p_group(p) {
        return Err(Error::NotPGroup { order: n, p });
    }
    if n > MAX_LOEWY_ORDER {
        return Err(Error::CapExceeded {
            what: "loewy order",
            order: n,
            cap: MAX_LOEWY_ORDER,
        });
    }
    let mut current = FpSubspace::empty(p, n);
    for x in 1..n {
        let mut v = vec![0u32; n];
        v[x] = 1;
        v[0] = p - 1;
        current.insert(&v);
    }
    let mut dims = vec![n, current.dim()];
    while !current.is_zero() {
        let mut next = FpSubspace::empty(p, n);
        for x in 1..n {
            for b in current.basis() {
                // (x - e) * b: the left-translate of b by x, minus b
                let mut w = vec![0u32; n];
                for (h, &coeff) in b.iter().enumerate() {
                    if coeff != 0 {
                        let xh = g.mul(x, h);
                        w[xh] = (w[xh] + coeff) % p;
                        w[h] = (w[h] + p - coeff) % p;
                    }
                }
                next.insert(&w);
            }
        }
        debug_assert!(next.dim() < current.dim(), "J is nilpotent for p-groups");
        dims.push(next.dim());
        current = next;
    }
    let loewy_length = dims
        .iter()
        .position(|&d| d == 0)
        .expect("filtration ends at zero");
    Ok(RadicalFiltration { dims, loewy_length })
}

/// `log2(loewy_length - 1) + longest_path`; requires a Loewy length of at
/// least 2, i.e. a nontrivial group.
pub fn dl_upper_bound(loewy_length: usize, longest_path: usize) -> f64 {
    assert!(loewy_length >= 2);
    ((loewy_length - 1) as f64).log2() + longest_path as f64
}
