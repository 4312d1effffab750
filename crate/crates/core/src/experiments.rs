//! Corpus scans for statements that are not known in general. Results are
//! reported, never asserted.

use serde::{Deserialize, Serialize};

use crate::builder::{self, NamedGroup};
use crate::corpus;
use crate::error::Result;
use crate::igen::mi_additivity_check;
use crate::suite::lattice_analysis;
use crate::PermGroup;

/// `m` is found by exhaustive search up to this order (chief series beyond, when soluble).
pub const SEARCH_LIMIT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRow {
    pub name: String,
    pub order: usize,
    pub soluble: bool,
    pub d_i: usize,
    pub m_i: usize,
    pub m: Option<usize>,
    /// `m_I <= m`, when `m` is known.
    pub m_i_at_most_m: Option<bool>,
    pub irb_is_interval: bool,
    /// Intersection of the maximal members of the class-set family equals the
    /// intersection of all members.
    pub frat_i_variants_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRow {
    pub left: String,
    pub right: String,
    pub sum: usize,
    pub product: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scan {
    pub groups: Vec<GroupRow>,
    pub products: Vec<ProductRow>,
    /// One line per observed counterexample.
    pub counterexamples: Vec<String>,
}

fn insoluble() -> Result<Vec<NamedGroup>> {
    Ok(vec![
        NamedGroup::plain("Alt(5)", builder::alternating(5)?),
        NamedGroup::plain("Sym(5)", builder::symmetric(5)?),
        NamedGroup::plain("PSL(2,7)", builder::psl2(7)?),
        NamedGroup::plain("Alt(6)", builder::alternating(6)?),
        NamedGroup::plain("PSL(2,11)", builder::psl2(11)?),
        NamedGroup::plain("L2(8)", builder::l2_8()?),
    ])
}

fn factors() -> Result<Vec<(&'static str, PermGroup)>> {
    Ok(vec![
        ("C2", builder::cyclic(2)?),
        ("C3", builder::cyclic(3)?),
        ("C4", builder::cyclic(4)?),
        ("C2^2", builder::elementary_abelian(2, 2)?),
        ("S3", builder::symmetric(3)?),
        ("D8", builder::dihedral(4)?),
        ("Q8", builder::dicyclic(2)?),
        ("A4", builder::alternating(4)?),
    ])
}

pub fn open_question_scan(budget: usize) -> Result<Scan> {
    let mut groups = Vec::new();
    let mut counterexamples = Vec::new();
    for ng in corpus::soluble_corpus()?.into_iter().chain(insoluble()?) {
        let (a, _) = lattice_analysis(&ng.group, budget)?;
        let irb = a.family.irb();
        let d_i = a.family.d_i().0;
        let m = a.m(SEARCH_LIMIT)?.map(|x| x.0);
        let row = GroupRow {
            name: ng.name.clone(),
            order: a.group.order(),
            soluble: a.is_soluble()?,
            d_i,
            m_i: irb.m_i,
            m,
            m_i_at_most_m: m.map(|m| irb.m_i <= m),
            irb_is_interval: irb.sizes.iter().copied().eq(d_i..=irb.m_i),
            frat_i_variants_agree: a.family.frat_i() == a.family.frat_i_all(),
        };
        if row.m_i_at_most_m == Some(false) {
            counterexamples.push(format!("{}: m_I = {} > m = {}", row.name, row.m_i, m.unwrap_or(0)));
        }
        if !row.irb_is_interval {
            counterexamples.push(format!("{}: irb_I {:?} is not an interval", row.name, irb.sizes));
        }
        if !row.frat_i_variants_agree {
            counterexamples.push(format!("{}: Frat_I variants differ", row.name));
        }
        groups.push(row);
    }
    let fs = factors()?;
    let mut products = Vec::new();
    for (i, (ln, l)) in fs.iter().enumerate() {
        for (rn, r) in &fs[i..] {
            if (l.order() * r.order()) as usize > budget {
                continue;
            }
            let c = mi_additivity_check(l, r, budget)?;
            if !c.equal {
                counterexamples.push(format!(
                    "{ln} x {rn}: m_I(product) = {} but the sum is {}",
                    c.product, c.sum
                ));
            }
            products.push(ProductRow {
                left: ln.to_string(),
                right: rn.to_string(),
                sum: c.sum,
                product: c.product,
            });
        }
    }
    Ok(Scan {
        groups,
        products,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_runs() {
        let s = open_question_scan(crate::lattice::DEFAULT_LATTICE_BUDGET).unwrap();
        let a5 = s.groups.iter().find(|r| r.name == "Alt(5)").unwrap();
        assert_eq!((a5.m_i, a5.m), (2, Some(3)));
        let s5 = s.groups.iter().find(|r| r.name == "Sym(5)").unwrap();
        assert_eq!((s5.d_i, s5.m_i, s5.m), (2, 3, Some(4)));
        assert_eq!(s.products.len(), 36);
    }
}
