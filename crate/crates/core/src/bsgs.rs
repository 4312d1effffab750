//! Permutation groups with a base and strong generating set built by the
//! deterministic Schreier-Sims algorithm.

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the level point to `x`.
    transversal: Vec<Option<Perm>>,
    inverse: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[point] = Some(Perm::identity(degree));
        inverse[point] = Some(Perm::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            inverse,
        }
    }

    fn add_generator(&mut self, g: Perm) {
        self.gens.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.image(x);
                if self.transversal[y].is_none() {
                    let t = self.transversal[x].as_ref().unwrap().then(g);
                    self.inverse[y] = Some(t.inverse());
                    self.transversal[y] = Some(t);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
    order: u128,
}

impl PermGroup {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: &[Perm]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let generators: Vec<Perm> = gens.to_vec();
        let mut levels: Vec<Level> = Vec::new();
        for g in generators.iter().filter(|g| !g.is_identity()) {
            if levels.iter().all(|l| g.image(l.point) == l.point) {
                levels.push(Level::new(g.first_moved_point().unwrap(), degree));
            }
        }
        for i in 0..levels.len() {
            let fixing: Vec<Perm> = generators
                .iter()
                .filter(|g| !g.is_identity())
                .filter(|g| levels[..i].iter().all(|l| g.image(l.point) == l.point))
                .cloned()
                .collect();
            levels[i].gens = fixing;
            levels[i].rebuild_orbit();
        }
        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let lv = i as usize;
            let mut restart = None;
            let orbit = levels[lv].orbit.clone();
            'scan: for &x in &orbit {
                let gens = levels[lv].gens.clone();
                for s in &gens {
                    let ux = levels[lv].transversal[x].as_ref().unwrap();
                    let y = s.image(x);
                    let h = ux.then(s).then(levels[lv].inverse[y].as_ref().unwrap());
                    let (res, j) = strip(&levels, h, lv + 1);
                    if j < levels.len() || !res.is_identity() {
                        if j == levels.len() {
                            let pt = res.first_moved_point().unwrap();
                            levels.push(Level::new(pt, degree));
                        }
                        for level in levels.iter_mut().take(j + 1).skip(lv + 1) {
                            level.add_generator(res.clone());
                        }
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        let mut order: u128 = 1;
        for l in &levels {
            order = order
                .checked_mul(l.orbit.len() as u128)
                .ok_or_else(|| Error::Capacity("group order exceeds 128 bits".into()))?;
        }
        Ok(PermGroup {
            degree,
            generators,
            levels,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: 1,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Sizes of the basic orbits along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        let (res, j) = strip(&self.levels, g.clone(), 0);
        Ok(j == self.levels.len() && res.is_identity())
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orb = vec![start];
            let mut i = 0;
            while i < orb.len() {
                let x = orb[i];
                for g in &self.generators {
                    let y = g.image(x);
                    if !seen[y] {
                        seen[y] = true;
                        orb.push(y);
                    }
                }
                i += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// Whether the set of points is mapped to itself by every element.
    pub fn stabilizes_set(&self, points: &[usize]) -> Result<bool> {
        let mut inside = vec![false; self.degree];
        for &p in points {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
            inside[p] = true;
        }
        Ok(self
            .generators
            .iter()
            .all(|g| points.iter().all(|&p| inside[g.image(p)])))
    }

    /// All elements in lexicographic order of image lists.
    pub fn elements(&self, budget: u128) -> Result<Vec<Perm>> {
        if self.order > budget {
            return Err(Error::budget("element", self.order, budget));
        }
        let mut elems = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for x in &elems {
                for &pt in &level.orbit {
                    next.push(x.then(level.transversal[pt].as_ref().unwrap()));
                }
            }
            elems = next;
        }
        elems.sort_unstable();
        Ok(elems)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> Result<PermGroup> {
        let mut n = PermGroup::new(self.degree, gens)?;
        loop {
            let mut added = None;
            'outer: for h in n.generators() {
                for g in &self.generators {
                    let c = h.conjugate(g)?;
                    if !n.contains(&c)? {
                        added = Some(c);
                        break 'outer;
                    }
                }
            }
            match added {
                Some(c) => {
                    let mut gs = n.generators.clone();
                    gs.push(c);
                    n = PermGroup::new(self.degree, &gs)?;
                }
                None => return Ok(n),
            }
        }
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_soluble(&self) -> Result<bool> {
        let mut g = self.clone();
        loop {
            if g.order() == 1 {
                return Ok(true);
            }
            let d = g.derived_subgroup()?;
            if d.order() == g.order() {
                return Ok(false);
            }
            g = d;
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }
}

/// Sifts `g` through levels starting at `from`; returns the residue and the
/// index of the level where sifting stopped (`levels.len()` if it went through).
fn strip(levels: &[Level], mut g: Perm, from: usize) -> (Perm, usize) {
    for (j, level) in levels.iter().enumerate().skip(from) {
        let b = g.image(level.point);
        match &level.inverse[b] {
            Some(inv) => g = g.then(inv),
            None => return (g, j),
        }
    }
    (g, levels.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn small_orders() {
        let s4 = PermGroup::new(4, &[p("(1,2,3,4)", 4), p("(1,2)", 4)]).unwrap();
        assert_eq!(s4.order(), 24);
        let a5 = PermGroup::new(5, &[p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)]).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.contains(&p("(1,2)(3,4)", 5)).unwrap());
        assert!(!a5.contains(&p("(1,2)", 5)).unwrap());
        let t = PermGroup::new(3, &[]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.elements(10).unwrap(), vec![Perm::identity(3)]);
    }

    #[test]
    fn elements_sorted_and_budget() {
        let s3 = PermGroup::new(3, &[p("(1,2,3)", 3), p("(1,2)", 3)]).unwrap();
        let e = s3.elements(100).unwrap();
        assert_eq!(e.len(), 6);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
        assert!(e[0].is_identity());
        assert!(matches!(s3.elements(5), Err(Error::Budget { .. })));
    }

    #[test]
    fn orbits_and_set_stabilizer() {
        let g = PermGroup::new(6, &[p("(1,2)(3,4)", 6), p("(2,3)", 6)]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1, 2, 3], vec![4], vec![5]]);
        assert!(g.stabilizes_set(&[0, 1, 2, 3]).unwrap());
        assert!(!g.stabilizes_set(&[0, 1]).unwrap());
        assert!(g.stabilizes_set(&[9]).is_err());
    }

    #[test]
    fn solubility() {
        let s4 = PermGroup::new(4, &[p("(1,2,3,4)", 4), p("(1,2)", 4)]).unwrap();
        assert!(s4.is_soluble().unwrap());
        let a5 = PermGroup::new(5, &[p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)]).unwrap();
        assert!(!a5.is_soluble().unwrap());
        assert_eq!(a5.derived_subgroup().unwrap().order(), 60);
    }
}

#[cfg(test)]
mod alt29 {
    use super::*;
    use crate::builder::alt29_generators;

    #[test]
    fn degree_29_example() {
        let [a, b, c] = alt29_generators();
        let g = PermGroup::new(29, &[a.clone(), b.clone(), c.clone()]).unwrap();
        let half_fact: u128 = (1..=29u128).product::<u128>() / 2;
        assert_eq!(g.order(), half_fact);
        let ab = PermGroup::new(29, &[a.clone(), b.clone()]).unwrap();
        assert!(ab.stabilizes_set(&[0, 1, 2, 3]).unwrap());
        assert!(!ab.contains(&c).unwrap());
        let bc = PermGroup::new(29, &[b, c.clone()]).unwrap();
        assert!(bc.stabilizes_set(&[0, 1]).unwrap());
        let t = Perm::parse("(2,8)", 29).unwrap();
        let ac = PermGroup::new(29, &[a.conjugate(&t).unwrap(), c]).unwrap();
        assert!(ac.stabilizes_set(&[2, 3, 4, 5, 6, 7]).unwrap());
    }
}
