//! Conjugacy classes and sets of classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{Elem, FiniteGroup, Subgroup};

pub type ClassId = usize;

pub const MAX_CLASSES: usize = 128;

/// A set of conjugacy class ids, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassSet(u128);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 128 {
            ClassSet(u128::MAX)
        } else {
            ClassSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(c: ClassId) -> Self {
        ClassSet(1u128 << c)
    }

    pub fn from_ids(ids: impl IntoIterator<Item = ClassId>) -> Self {
        ids.into_iter().fold(ClassSet::EMPTY, |s, c| s.with(c))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn from_bits(bits: u128) -> Self {
        ClassSet(bits)
    }

    pub fn contains(self, c: ClassId) -> bool {
        self.0 >> c & 1 == 1
    }

    #[must_use]
    pub fn with(self, c: ClassId) -> Self {
        ClassSet(self.0 | 1u128 << c)
    }

    #[must_use]
    pub fn without(self, c: ClassId) -> Self {
        ClassSet(self.0 & !(1u128 << c))
    }

    pub fn union(self, o: ClassSet) -> Self {
        ClassSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ClassSet) -> Self {
        ClassSet(self.0 & o.0)
    }

    pub fn difference(self, o: ClassSet) -> Self {
        ClassSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ClassSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = ClassId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    pub fn to_vec(self) -> Vec<ClassId> {
        self.iter().collect()
    }
}

impl fmt::Debug for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Conjugacy classes sorted by (element order, class size, representative),
/// with class 0 the identity. Representatives are the least element ids.
#[derive(Clone, Debug)]
pub struct ClassTable {
    reps: Vec<Elem>,
    sizes: Vec<usize>,
    orders: Vec<u32>,
    class_of: Vec<ClassId>,
    members: Vec<Vec<Elem>>,
    inverse_class: Vec<ClassId>,
}

impl ClassTable {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let n = g.order();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<Vec<Elem>> = Vec::new();
        for x in g.elements() {
            if class_of[x as usize] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut orbit = vec![x];
            class_of[x as usize] = id;
            let mut i = 0;
            while i < orbit.len() {
                for &s in g.generators() {
                    let y = g.conj(orbit[i], s);
                    if class_of[y as usize] == usize::MAX {
                        class_of[y as usize] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        if raw.len() > MAX_CLASSES {
            return Err(Error::Capacity(format!(
                "{} conjugacy classes, at most {MAX_CLASSES} supported",
                raw.len()
            )));
        }
        raw.sort_by_key(|c| (g.elem_order(c[0]), c.len(), c[0]));
        for (id, c) in raw.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = id;
            }
        }
        let inverse_class = raw
            .iter()
            .map(|c| class_of[g.inv(c[0]) as usize])
            .collect();
        Ok(ClassTable {
            reps: raw.iter().map(|c| c[0]).collect(),
            sizes: raw.iter().map(|c| c.len()).collect(),
            orders: raw.iter().map(|c| g.elem_order(c[0])).collect(),
            class_of,
            members: raw,
            inverse_class,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, c: ClassId) -> Elem {
        self.reps[c]
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn size(&self, c: ClassId) -> usize {
        self.sizes[c]
    }

    pub fn elem_order(&self, c: ClassId) -> u32 {
        self.orders[c]
    }

    pub fn class_of(&self, x: Elem) -> ClassId {
        self.class_of[x as usize]
    }

    pub fn members(&self, c: ClassId) -> &[Elem] {
        &self.members[c]
    }

    /// Class of the inverses of the elements of `c`.
    pub fn inverse_class(&self, c: ClassId) -> ClassId {
        self.inverse_class[c]
    }

    pub fn all(&self) -> ClassSet {
        ClassSet::full(self.len())
    }

    /// All classes except the identity class.
    pub fn nontrivial(&self) -> ClassSet {
        self.all().without(0)
    }

    pub fn classes_of(&self, elems: impl IntoIterator<Item = Elem>) -> ClassSet {
        elems
            .into_iter()
            .fold(ClassSet::EMPTY, |s, x| s.with(self.class_of(x)))
    }

    /// The classes of `G` meeting a subgroup.
    pub fn fusion(&self, h: &Subgroup) -> ClassSet {
        self.classes_of(h.iter())
    }

    /// Elements of the union of the given classes.
    pub fn union_elements(&self, set: ClassSet) -> Vec<Elem> {
        let mut v: Vec<Elem> = set
            .iter()
            .flat_map(|c| self.members[c].iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// Number of elements in the union of the given classes.
    pub fn union_size(&self, set: ClassSet) -> usize {
        set.iter().map(|c| self.sizes[c]).sum()
    }

    /// 1-based label, so the identity class is `C1`.
    pub fn label(c: ClassId) -> String {
        format!("C{}", c + 1)
    }
}

/// Classes of `G` meeting a permutation subgroup given by generators.
pub fn class_fusion(
    g: &FiniteGroup,
    table: &ClassTable,
    h: &crate::bsgs::PermGroup,
) -> Result<ClassSet> {
    let sub = g.subgroup_of(h)?;
    Ok(table.fusion(&sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::finite::DEFAULT_ELEMENT_BUDGET;
    use crate::perm::Perm;

    #[test]
    fn alt5_classes() {
        let g = FiniteGroup::new(&builder::alternating(5).unwrap(), DEFAULT_ELEMENT_BUDGET).unwrap();
        let t = ClassTable::new(&g).unwrap();
        assert_eq!(t.len(), 5);
        let shape: Vec<(u32, usize)> = (0..5).map(|c| (t.elem_order(c), t.size(c))).collect();
        assert_eq!(shape, vec![(1, 1), (2, 15), (3, 20), (5, 12), (5, 12)]);
        assert_eq!(t.inverse_class(3), 3);
        assert_eq!(t.inverse_class(1), 1);
        let total: usize = (0..5).map(|c| t.size(c)).sum();
        assert_eq!(total, 60);
        let five = g.id_of(&Perm::parse("(1,2,3,4,5)", 5).unwrap()).unwrap();
        let sq = g.mul(five, five);
        assert_ne!(t.class_of(five), t.class_of(sq));
        assert_eq!(t.class_of(five), t.class_of(g.inv(five)));
    }

    #[test]
    fn fusion_of_a4() {
        let g = FiniteGroup::new(&builder::alternating(5).unwrap(), DEFAULT_ELEMENT_BUDGET).unwrap();
        let t = ClassTable::new(&g).unwrap();
        let a4 = builder::alternating(4).unwrap();
        let gens: Vec<Perm> = a4
            .generators()
            .iter()
            .map(|p| {
                let mut im: Vec<usize> = p.images().iter().map(|&x| x as usize).collect();
                im.push(4);
                Perm::from_images(im).unwrap()
            })
            .collect();
        let h = crate::bsgs::PermGroup::new(5, &gens).unwrap();
        assert_eq!(class_fusion(&g, &t, &h).unwrap(), ClassSet::from_ids([0, 1, 2]));
        let bad = crate::bsgs::PermGroup::new(5, &[Perm::parse("(1,2)", 5).unwrap()]).unwrap();
        assert!(matches!(class_fusion(&g, &t, &bad), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn class_set_ops() {
        let a = ClassSet::from_ids([1, 3, 5]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.to_vec(), vec![1, 3, 5]);
        assert!(ClassSet::singleton(3).is_subset(a));
        assert_eq!(a.without(3), ClassSet::from_ids([1, 5]));
        assert_eq!(ClassSet::full(128).len(), 128);
        assert_eq!(format!("{a:?}"), "{1, 3, 5}");
    }
}
