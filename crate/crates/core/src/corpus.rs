//! A curated list of soluble groups of order at most 100.

use crate::builder::{self, AffineGroup, NamedGroup};
use crate::error::Result;
use crate::fp::FpMatrix;

fn affine(p: u32, rows: &[&[Vec<i64>]]) -> Result<AffineGroup> {
    let dim = rows[0].len();
    let mats = rows
        .iter()
        .map(|r| FpMatrix::from_rows(p, r))
        .collect::<Result<Vec<_>>>()?;
    AffineGroup::new(p, dim, mats)
}

/// Soluble groups used for the property suites, in increasing order.
pub fn soluble_corpus() -> Result<Vec<NamedGroup>> {
    use builder::{cyclic, dicyclic, dihedral, direct_product, elementary_abelian, symmetric};
    let plain = NamedGroup::plain;
    let aff = NamedGroup::affine;
    let mut out = Vec::new();
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12] {
        out.push(plain(&format!("C{n}"), cyclic(n)?));
    }
    out.push(plain("C2^2", elementary_abelian(2, 2)?));
    out.push(plain("C2^3", elementary_abelian(2, 3)?));
    out.push(plain("C2^4", elementary_abelian(2, 4)?));
    out.push(plain("C3^2", elementary_abelian(3, 2)?));
    out.push(plain("C3^3", elementary_abelian(3, 3)?));
    out.push(plain("C2xC4", direct_product(&cyclic(2)?, &cyclic(4)?)?));
    out.push(plain("C2xC6", direct_product(&cyclic(2)?, &cyclic(6)?)?));
    out.push(plain("C4xC4", direct_product(&cyclic(4)?, &cyclic(4)?)?));
    out.push(plain("S3", symmetric(3)?));
    out.push(plain("D8", dihedral(4)?));
    out.push(plain("Q8", dicyclic(2)?));
    out.push(plain("D10", dihedral(5)?));
    out.push(plain("Dic12", dicyclic(3)?));
    out.push(plain("A4", builder::alternating(4)?));
    out.push(plain("D12", dihedral(6)?));
    out.push(plain("D14", dihedral(7)?));
    out.push(plain("D16", dihedral(8)?));
    out.push(plain("Q16", dicyclic(4)?));
    out.push(plain("D18", dihedral(9)?));
    out.push(plain("D20", dihedral(10)?));
    out.push(plain("C3xS3", direct_product(&cyclic(3)?, &symmetric(3)?)?));
    out.push(plain("C2xD8", direct_product(&cyclic(2)?, &dihedral(4)?)?));
    out.push(aff("C3^2:C2", builder::c3c3_c2()?));
    out.push(aff("F20", affine(5, &[&[vec![2]]])?));
    out.push(aff("C7:C3", affine(7, &[&[vec![2]]])?));
    out.push(aff("AGL(1,7)", affine(7, &[&[vec![3]]])?));
    out.push(plain("S4", symmetric(4)?));
    out.push(plain("SL(2,3)", builder::sl2_3()?));
    out.push(plain("C2xA4", direct_product(&cyclic(2)?, &builder::alternating(4)?)?));
    out.push(plain("Q8xC3", direct_product(&dicyclic(2)?, &cyclic(3)?)?));
    out.push(plain("S3xC5", direct_product(&symmetric(3)?, &cyclic(5)?)?));
    out.push(plain("C2xS4", direct_product(&cyclic(2)?, &symmetric(4)?)?));
    out.push(plain("GL(2,3)", builder::linear_action_on_nonzero(&[
        FpMatrix::from_rows(3, &[vec![1, 1], vec![0, 1]])?,
        FpMatrix::from_rows(3, &[vec![1, 0], vec![1, 1]])?,
        FpMatrix::from_rows(3, &[vec![-1, 0], vec![0, 1]])?,
    ])?));
    out.push(plain("S3xS3", direct_product(&symmetric(3)?, &symmetric(3)?)?));
    out.push(aff("C3^2:C4", affine(3, &[&[vec![0, -1], vec![1, 0]]])?));
    out.push(aff("F2^3:C7", affine(2, &[&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]])?));
    out.push(aff("F3^2:Q8", builder::fp2_q8(3)?));
    out.push(aff("C5^2:C3", affine(5, &[&[vec![0, 1], vec![-1, -1]]])?));
    out.push(aff(
        "F2^4:C5",
        affine(2, &[&[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1]]])?,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_orders() {
        let c = soluble_corpus().unwrap();
        assert!(c.len() >= 25);
        let orders: Vec<u128> = c.iter().map(|g| g.group.order()).collect();
        assert!(orders.iter().all(|&o| o <= 100));
        let by_name = |n: &str| c.iter().find(|g| g.name == n).unwrap().group.order();
        assert_eq!(by_name("F20"), 20);
        assert_eq!(by_name("C7:C3"), 21);
        assert_eq!(by_name("AGL(1,7)"), 42);
        assert_eq!(by_name("C3^2:C4"), 36);
        assert_eq!(by_name("F2^3:C7"), 56);
        assert_eq!(by_name("C5^2:C3"), 75);
        assert_eq!(by_name("F2^4:C5"), 80);
        assert_eq!(by_name("GL(2,3)"), 48);
        for g in &c {
            assert!(g.group.is_soluble().unwrap(), "{}", g.name);
        }
    }
}
