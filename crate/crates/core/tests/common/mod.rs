//! Shared fixtures for the integration suites.

use hh1_core::catalog;
use hh1_core::group::direct_product;
use hh1_core::Group;

pub fn product(g1: &Group, g2: &Group) -> Group {
    direct_product(g1, g2).unwrap().group
}

/// All 3-group fixtures of order <= 81.
pub fn p3_fixtures() -> Vec<(String, Group)> {
    let c3 = catalog::cyclic(3).unwrap();
    let c9 = catalog::cyclic(9).unwrap();
    let c27 = catalog::cyclic(27).unwrap();
    let ut33 = catalog::heisenberg(3).unwrap();
    let m27 = catalog::modular(3).unwrap();
    vec![
        ("C3".into(), c3.clone()),
        ("C9".into(), c9.clone()),
        ("C27".into(), c27.clone()),
        ("C81".into(), catalog::cyclic(81).unwrap()),
        ("C3xC3".into(), catalog::elem_ab(3, 2).unwrap()),
        ("C3xC3xC3".into(), catalog::elem_ab(3, 3).unwrap()),
        ("C3^4".into(), catalog::elem_ab(3, 4).unwrap()),
        ("C3xC9".into(), product(&c3, &c9)),
        ("C9xC9".into(), product(&c9, &c9)),
        ("C3xC27".into(), product(&c3, &c27)),
        ("UT33".into(), ut33.clone()),
        ("M27".into(), m27.clone()),
        ("C9:C9".into(), catalog::c9_rtimes_c9().unwrap()),
        ("UT33xC3".into(), product(&ut33, &c3)),
        ("M27xC3".into(), product(&m27, &c3)),
    ]
}

/// 2-group fixtures small enough for the derivation oracle.
pub fn p2_fixtures() -> Vec<(String, Group)> {
    let c2 = catalog::cyclic(2).unwrap();
    let c4 = catalog::cyclic(4).unwrap();
    let q8 = catalog::quaternion8().unwrap();
    let d8 = catalog::dihedral(8).unwrap();
    vec![
        ("C2".into(), c2.clone()),
        ("C4".into(), c4.clone()),
        ("C8".into(), catalog::cyclic(8).unwrap()),
        ("C16".into(), catalog::cyclic(16).unwrap()),
        ("C2xC2".into(), catalog::elem_ab(2, 2).unwrap()),
        ("C2xC2xC2".into(), catalog::elem_ab(2, 3).unwrap()),
        ("C2^4".into(), catalog::elem_ab(2, 4).unwrap()),
        ("C2xC4".into(), product(&c2, &c4)),
        ("D8".into(), d8.clone()),
        ("Q8".into(), q8.clone()),
        ("D16".into(), catalog::dihedral(16).unwrap()),
        ("Q8xC2".into(), product(&q8, &c2)),
    ]
}
