//! Rings given by a transcribed multiplication table.

use num_bigint::BigInt;

use crate::ring::{BasisInfo, RingSpec};

/// Upper triangle of the table for `a(Z_2[Z/4])`, rows `c2..c9`; `c1` is the
/// identity. Entries are `(index, coefficient)` lists over `c1..c9`.
const Z2Z4_ROWS: [&[&[(usize, i64)]]; 8] = [
    // c2 * c2..c9
    &[&[(1, 1)], &[(3, 1)], &[(4, 1)], &[(6, 1)], &[(5, 1)], &[(7, 1)], &[(8, 1)], &[(9, 1)]],
    // c3 * c3..c9
    &[&[(4, 2)], &[(3, 2)], &[(4, 1), (9, 1)], &[(4, 1), (9, 1)], &[(3, 1), (4, 1), (9, 1)], &[(3, 1), (4, 1), (9, 1)], &[(9, 2)]],
    // c4 * c4..c9
    &[&[(4, 2)], &[(3, 1), (9, 1)], &[(3, 1), (9, 1)], &[(3, 1), (4, 1), (9, 1)], &[(3, 1), (4, 1), (9, 1)], &[(9, 2)]],
    // c5 * c5..c9
    &[&[(1, 1), (9, 2)], &[(2, 1), (9, 2)], &[(8, 1), (9, 2)], &[(7, 1), (9, 2)], &[(9, 3)]],
    // c6 * c6..c9
    &[&[(1, 1), (9, 2)], &[(8, 1), (9, 2)], &[(7, 1), (9, 2)], &[(9, 3)]],
    // c7 * c7..c9
    &[&[(7, 1), (8, 1), (9, 2)], &[(7, 1), (8, 1), (9, 2)], &[(9, 4)]],
    // c8 * c8..c9
    &[&[(7, 1), (8, 1), (9, 2)], &[(9, 4)]],
    // c9 * c9
    &[&[(9, 4)]],
];

/// The nine indecomposable `Z_2`-free `Z_2[Z/4]`-lattices `c1..c9`, all
/// self-dual, with `c9` the only projective.
pub fn z2_z4_integral() -> RingSpec {
    let dims = [1, 1, 2, 2, 3, 3, 4, 4, 4];
    let basis: Vec<BasisInfo> =
        (0..9).map(|i| BasisInfo::new(format!("c{}", i + 1), dims[i], i, if i == 8 { 1 } else { 0 })).collect();
    let mut pairs = Vec::new();
    for j in 0..9 {
        pairs.push(((0, j), vec![(j, BigInt::from(1))]));
    }
    for (r, row) in Z2Z4_ROWS.iter().enumerate() {
        let i = r + 1;
        for (off, terms) in row.iter().enumerate() {
            let j = i + off;
            pairs.push(((i, j), terms.iter().map(|&(k, c)| (k - 1, BigInt::from(c))).collect()));
        }
    }
    RingSpec::from_pairs("a(Z_2[Z/4])", 0, true, basis, pairs).expect("transcribed table is complete")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::ring::verify_axioms;

    #[test]
    fn printed_products() {
        let r = z2_z4_integral();
        let c = |k: usize| Element::<BigInt>::basis(r.lookup(&format!("c{k}")).unwrap());
        let mut want = c(2);
        want.add_term(r.lookup("c9").unwrap(), BigInt::from(2));
        assert_eq!(r.multiply(&c(5), &c(6)).unwrap(), want);
        assert_eq!(r.multiply(&c(3), &c(3)).unwrap(), c(4).scale(&BigInt::from(2)));
        let diff = c(7).sub(&c(8));
        assert!(r.multiply(&diff, &diff).unwrap().is_zero());
    }

    #[test]
    fn axioms_hold() {
        let report = verify_axioms(&z2_z4_integral(), 100);
        assert!(report.all_passed(), "{:?}", report.first_failure());
        assert_eq!(report.mode, "exhaustive");
    }
}
