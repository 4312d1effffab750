//! Linear-algebra test for invariable generation of `A^delta : K`, where `A`
//! is an irreducible `F_p K`-module, and a group-theoretic oracle for it.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::builder::{self, AffineGroup};
use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fp::{self, FpMatrix};
use crate::igen::Analysis;
use crate::lattice::{self, DEFAULT_LATTICE_BUDGET};

/// Largest `|A^delta : K|` the group oracle will build.
pub const ORACLE_BUDGET: usize = 20_000;
/// Largest `|K|` accepted when validating an instance.
const K_LIMIT: usize = 5_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownInstance {
    pub p: u32,
    pub n: usize,
    pub delta: usize,
    pub k_gens: Vec<FpMatrix>,
    pub ys: Vec<FpMatrix>,
    /// `ws[i][j]` is the `j`-th coordinate (in `A`) of the vector paired with `ys[i]`.
    pub ws: Vec<Vec<Vec<u32>>>,
}

impl CrownInstance {
    pub fn t(&self) -> usize {
        self.ys.len()
    }

    /// Checks shapes, irreducibility of `K` and membership of each `y` in `K`.
    pub fn validate(&self) -> Result<()> {
        if !fp::is_prime(self.p) {
            return Err(Error::InvalidParameter(format!("{} is not prime", self.p)));
        }
        if self.n == 0 || self.k_gens.is_empty() {
            return Err(Error::InvalidParameter("need n > 0 and at least one generator".into()));
        }
        let square = |m: &FpMatrix| m.p() == self.p && m.rows() == self.n && m.cols() == self.n;
        if !self.k_gens.iter().all(|m| square(m) && m.is_invertible()) {
            return Err(Error::InvalidParameter("K generators must be invertible n x n".into()));
        }
        if !fp::is_irreducible(&self.k_gens) {
            return Err(Error::InvalidParameter("K does not act irreducibly".into()));
        }
        if self.ws.len() != self.ys.len() {
            return Err(Error::InvalidParameter("need one w per y".into()));
        }
        for w in &self.ws {
            if w.len() != self.delta || w.iter().any(|v| v.len() != self.n || v.iter().any(|&x| x >= self.p)) {
                return Err(Error::InvalidParameter("each w must be delta vectors of length n".into()));
            }
        }
        let k = fp::matrix_group(&self.k_gens, K_LIMIT)?;
        for y in &self.ys {
            if !square(y) || k.binary_search(y).is_err() {
                return Err(Error::InvalidParameter("y is not an element of K".into()));
            }
        }
        Ok(())
    }

    /// Parses the text format: a `crown p n delta t` header followed by
    /// `kgen`, `y` and `w` blocks (`n`, `n` and `delta` rows respectively).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 5 || h[0] != "crown" {
            return Err(Error::parse(ln, "expected 'crown p n delta t'"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, "bad header number"));
        let (p, n, delta, t) = (num(h[1])? as u32, num(h[2])?, num(h[3])?, num(h[4])?);
        if !fp::is_prime(p) {
            return Err(Error::parse(ln, format!("{p} is not prime")));
        }
        let mut k_gens = Vec::new();
        let mut ys = Vec::new();
        let mut ws = Vec::new();
        let read_rows = |count: usize, width: usize, lines: &mut dyn Iterator<Item = (usize, &str)>| {
            let mut rows = Vec::new();
            for _ in 0..count {
                let (ln, l) = lines.next().ok_or_else(|| Error::parse(0, "truncated block"))?;
                let row: Vec<i64> = l
                    .split_whitespace()
                    .map(|x| x.parse().map_err(|_| Error::parse(ln, "bad entry")))
                    .collect::<Result<_>>()?;
                if row.len() != width {
                    return Err(Error::parse(ln, format!("expected {width} entries")));
                }
                rows.push(row);
            }
            Ok::<_, Error>(rows)
        };
        while let Some((ln, l)) = lines.next() {
            let kind = l.split_whitespace().next().unwrap();
            match kind {
                "kgen" => k_gens.push(FpMatrix::from_rows(p, &read_rows(n, n, &mut lines)?)?),
                "y" => ys.push(FpMatrix::from_rows(p, &read_rows(n, n, &mut lines)?)?),
                "w" => ws.push(
                    read_rows(delta, n, &mut lines)?
                        .into_iter()
                        .map(|r| r.into_iter().map(|x| fp::reduce(x, p)).collect())
                        .collect(),
                ),
                _ => return Err(Error::parse(ln, format!("unknown block {kind:?}"))),
            }
        }
        if ys.len() != t {
            return Err(Error::parse(0, format!("expected {t} y blocks, found {}", ys.len())));
        }
        if ws.is_empty() && delta == 0 {
            ws = vec![Vec::new(); t];
        }
        let inst = CrownInstance {
            p,
            n,
            delta,
            k_gens,
            ys,
            ws,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("crown {} {} {} {}\n", self.p, self.n, self.delta, self.t());
        let mat = |s: &mut String, m: &FpMatrix| {
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        };
        for (i, k) in self.k_gens.iter().enumerate() {
            let _ = writeln!(s, "kgen {}", i + 1);
            mat(&mut s, k);
        }
        for (i, y) in self.ys.iter().enumerate() {
            let _ = writeln!(s, "y {}", i + 1);
            mat(&mut s, y);
        }
        if self.delta > 0 {
            for (i, w) in self.ws.iter().enumerate() {
                let _ = writeln!(s, "w {}", i + 1);
                for v in w {
                    let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "{}", row.join(" "));
                }
            }
        }
        s
    }
}

/// `End_K(A)`, the commutant of `K` in `M_n(F_p)`, verified to be a field.
#[derive(Clone, Debug)]
pub struct EndField {
    pub basis: Vec<FpMatrix>,
    /// `mult[i][j]` holds the coordinates of `basis[i] * basis[j]`.
    pub mult: Vec<Vec<Vec<u32>>>,
}

impl EndField {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn combination(&self, coeffs: &[u32]) -> FpMatrix {
        let first = &self.basis[0];
        let mut m = FpMatrix::zero(first.p(), first.rows(), first.cols());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m = m.add(&b.scale(*c));
        }
        m
    }
}

pub fn end_field(k_gens: &[FpMatrix]) -> Result<EndField> {
    let first = k_gens
        .first()
        .ok_or_else(|| Error::InvalidParameter("no generators".into()))?;
    let (p, n) = (first.p(), first.rows());
    // unknown X has entry (a, b) at index a * n + b; equations X M - M X = 0
    let mut rows = Vec::new();
    for m in k_gens {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0i64; n * n];
                for k in 0..n {
                    row[i * n + k] += m.get(k, j) as i64;
                    row[k * n + j] -= m.get(i, k) as i64;
                }
                rows.push(row);
            }
        }
    }
    let sys = FpMatrix::from_rows(p, &rows)?;
    let basis: Vec<FpMatrix> = sys
        .nullspace()
        .into_iter()
        .map(|v| {
            let r: Vec<Vec<i64>> = (0..n)
                .map(|i| v[i * n..(i + 1) * n].iter().map(|&x| x as i64).collect())
                .collect();
            FpMatrix::from_rows(p, &r).unwrap()
        })
        .collect();
    let e = basis.len();
    let mut field = EndField {
        basis,
        mult: Vec::new(),
    };
    let elems: Vec<(Vec<u32>, FpMatrix)> = fp::all_vectors(p, e)
        .into_iter()
        .map(|c| {
            let m = field.combination(&c);
            (c, m)
        })
        .collect();
    for (c, m) in &elems {
        if c.iter().any(|&x| x != 0) && !m.is_invertible() {
            return Err(Error::InvalidParameter(
                "endomorphism ring is not a field (module is reducible)".into(),
            ));
        }
    }
    let mut mult = vec![vec![Vec::new(); e]; e];
    for i in 0..e {
        for j in 0..e {
            let prod = field.basis[i].mul(&field.basis[j]);
            if prod != field.basis[j].mul(&field.basis[i]) {
                return Err(Error::InvalidParameter("endomorphism ring is not commutative".into()));
            }
            let coords = elems
                .iter()
                .find(|(_, m)| *m == prod)
                .map(|(c, _)| c.clone())
                .ok_or_else(|| Error::InvalidParameter("commutant is not closed".into()))?;
            mult[i][j] = coords;
        }
    }
    if n % e != 0 {
        return Err(Error::InvalidParameter("field degree does not divide n".into()));
    }
    field.mult = mult;
    Ok(field)
}

/// `[y, A]`: the row space of `y - 1`.
pub fn commutator_space(y: &FpMatrix) -> Vec<Vec<u32>> {
    y.sub(&FpMatrix::identity(y.p(), y.rows())).row_space()
}

/// `C_A(y)`: vectors fixed by `y`.
pub fn fixed_space(y: &FpMatrix) -> Vec<Vec<u32>> {
    y.sub(&FpMatrix::identity(y.p(), y.rows())).left_nullspace()
}

/// Invariable generation of the `K` elements `ys`, checked in `K` itself.
pub fn k_igen_check(k_gens: &[FpMatrix], ys: &[FpMatrix]) -> Result<bool> {
    let k = KGroup::new(k_gens)?;
    k.igen(ys)
}

/// `K` as a permutation group on the nonzero vectors, with its `M*` family.
pub struct KGroup {
    analysis: Analysis,
}

impl KGroup {
    pub fn new(k_gens: &[FpMatrix]) -> Result<Self> {
        let perm = builder::linear_action_on_nonzero(k_gens)?;
        let g = FiniteGroup::new(&perm, K_LIMIT as u128)?;
        Ok(KGroup {
            analysis: Analysis::from_lattice(g, DEFAULT_LATTICE_BUDGET)?,
        })
    }

    pub fn igen(&self, ys: &[FpMatrix]) -> Result<bool> {
        let ids = ys
            .iter()
            .map(|y| {
                let p = builder::linear_action_on_nonzero(std::slice::from_ref(y))?;
                self.analysis
                    .group
                    .id_of(&p.generators()[0])
                    .ok_or_else(|| Error::InvalidParameter("y is not an element of K".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.analysis.igen_check(&ids)
    }
}

/// Whether the elements `y_i w_i` invariably generate `A^delta : K`, decided
/// by rank: `e * delta + dim B == dim(F-span(rows) + B)` with `B` the sum of
/// the spaces `[y_i, A]` placed blockwise.
pub fn igen_matrix_check(inst: &CrownInstance, assume_y_igen: bool) -> Result<bool> {
    if !assume_y_igen && !k_igen_check(&inst.k_gens, &inst.ys)? {
        return Err(Error::InvalidParameter(
            "the y elements do not invariably generate K".into(),
        ));
    }
    if inst.delta == 0 {
        return Ok(true);
    }
    let field = end_field(&inst.k_gens)?;
    Ok(rank_condition(inst, &field, &block_commutators(inst), &inst.ws))
}

fn block_commutators(inst: &CrownInstance) -> Vec<Vec<u32>> {
    let (n, t) = (inst.n, inst.t());
    let mut b = Vec::new();
    for (i, y) in inst.ys.iter().enumerate() {
        for v in commutator_space(y) {
            let mut row = vec![0u32; n * t];
            row[i * n..(i + 1) * n].copy_from_slice(&v);
            b.push(row);
        }
    }
    b
}

fn rank_condition(
    inst: &CrownInstance,
    field: &EndField,
    b: &[Vec<u32>],
    ws: &[Vec<Vec<u32>>],
) -> bool {
    let (p, n, t) = (inst.p, inst.n, inst.t());
    let mut rows: Vec<Vec<u32>> = b.to_vec();
    for j in 0..inst.delta {
        for x in &field.basis {
            let mut row = Vec::with_capacity(n * t);
            for w in ws.iter().take(t) {
                row.extend(x.apply(&w[j]));
            }
            rows.push(row);
        }
    }
    fp::span_dim(p, n * t, &rows) == field.dim() * inst.delta + b.len()
}

/// Whether suitable `w` exist for the given `y`: `delta <= sum dim_F C_A(y_i)`.
pub fn exists_w_check(inst: &CrownInstance) -> Result<bool> {
    let field = end_field(&inst.k_gens)?;
    let total: usize = inst.ys.iter().map(|y| fixed_space(y).len()).sum();
    Ok(inst.delta * field.dim() <= total)
}

/// Decides existence of suitable `w` by trying every choice.
pub fn exists_w_exhaustive(inst: &CrownInstance) -> Result<bool> {
    if inst.delta == 0 {
        return Ok(true);
    }
    let field = end_field(&inst.k_gens)?;
    let b = block_commutators(inst);
    let (p, n, t, d) = (inst.p, inst.n, inst.t(), inst.delta);
    let coords = n * d * t;
    let total = (p as u64).checked_pow(coords as u32).unwrap_or(u64::MAX);
    if total > 20_000_000 {
        return Err(Error::budget("w enumeration", total, 20_000_000u64));
    }
    for idx in 0..total {
        let flat = fp::index_to_vector(idx as usize, p, coords);
        let ws: Vec<Vec<Vec<u32>>> = (0..t)
            .map(|i| {
                (0..d)
                    .map(|j| flat[(i * d + j) * n..(i * d + j + 1) * n].to_vec())
                    .collect()
            })
            .collect();
        if rank_condition(inst, &field, &b, &ws) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Builds `A^delta : K` as an affine group and tests invariable generation of
/// the elements `y_i w_i` from its maximal subgroups.
pub fn oracle_check(inst: &CrownInstance) -> Result<bool> {
    if inst.delta == 0 {
        return k_igen_check(&inst.k_gens, &inst.ys);
    }
    let (p, n, d) = (inst.p, inst.n, inst.delta);
    let k_order = fp::matrix_group(&inst.k_gens, K_LIMIT)?.len();
    let order = (p as usize).pow((n * d) as u32) * k_order;
    if order > ORACLE_BUDGET {
        return Err(Error::budget("crown oracle", order as u128, ORACLE_BUDGET as u128));
    }
    let linear: Vec<FpMatrix> = inst.k_gens.iter().map(|k| k.block_diagonal(d)).collect();
    let a = AffineGroup::new(p, n * d, linear)?;
    let g = FiniteGroup::new(&a.group, ORACLE_BUDGET as u128)?;
    let maximals = lattice::maximal_subgroups_affine(&g, &a, DEFAULT_LATTICE_BUDGET)?;
    let ids = inst
        .ys
        .iter()
        .zip(&inst.ws)
        .map(|(y, w)| {
            let v: Vec<u32> = w.concat();
            g.id_of(&a.map(&y.block_diagonal(d), &v))
                .ok_or_else(|| Error::InvalidParameter("element outside the group".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let covered = maximals.iter().any(|m| {
        let mut union = FixedBitSet::with_capacity(g.order());
        for c in &m.conjugates {
            union.union_with(c);
        }
        ids.iter().all(|&x| union.contains(x as usize))
    });
    Ok(!covered)
}

/// Parameters for random instance generation.
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub primes: &'static [u32],
    pub max_n: usize,
    pub max_delta: usize,
    pub max_t: usize,
    pub max_k_order: usize,
    pub max_group_order: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            primes: &[2, 3, 5],
            max_n: 2,
            max_delta: 3,
            max_t: 3,
            max_k_order: 24,
            max_group_order: ORACLE_BUDGET,
        }
    }
}

fn random_matrix(rng: &mut impl Rng, p: u32, n: usize) -> FpMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p) as i64).collect())
            .collect();
        let m = FpMatrix::from_rows(p, &rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random valid instance whose `y` elements invariably generate `K`.
pub fn random_instance(rng: &mut impl Rng, spec: &RandomSpec) -> CrownInstance {
    loop {
        let p = spec.primes[rng.gen_range(0..spec.primes.len())];
        let n = rng.gen_range(1..=spec.max_n);
        let ngens = rng.gen_range(1..=2);
        let k_gens: Vec<FpMatrix> = (0..ngens).map(|_| random_matrix(rng, p, n)).collect();
        let Ok(k) = fp::matrix_group(&k_gens, spec.max_k_order) else {
            continue;
        };
        if k.len() < 2 || !fp::is_irreducible(&k_gens) {
            continue;
        }
        let delta = rng.gen_range(0..=spec.max_delta);
        if (p as usize).pow((n * delta) as u32) * k.len() > spec.max_group_order {
            continue;
        }
        let t = rng.gen_range(1..=spec.max_t);
        let Ok(kg) = KGroup::new(&k_gens) else {
            continue;
        };
        let mut ys = None;
        for _ in 0..20 {
            let cand: Vec<FpMatrix> = (0..t).map(|_| k[rng.gen_range(0..k.len())].clone()).collect();
            if kg.igen(&cand).unwrap_or(false) {
                ys = Some(cand);
                break;
            }
        }
        let Some(ys) = ys else {
            continue;
        };
        let ws = (0..t)
            .map(|_| {
                (0..delta)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            vec![0; n]
                        } else {
                            (0..n).map(|_| rng.gen_range(0..p)).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        return CrownInstance {
            p,
            n,
            delta,
            k_gens,
            ys,
            ws,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q8_instance(ws: Vec<Vec<Vec<u32>>>) -> CrownInstance {
        let [i, j] = builder::quaternion_matrices(3).unwrap();
        CrownInstance {
            p: 3,
            n: 2,
            delta: 1,
            k_gens: vec![i.clone(), j.clone()],
            ys: vec![i, j, FpMatrix::identity(3, 2)],
            ws,
        }
    }

    #[test]
    fn quaternion_crown() {
        let inst = q8_instance(vec![vec![vec![0, 0]], vec![vec![0, 0]], vec![vec![1, 0]]]);
        inst.validate().unwrap();
        assert!(igen_matrix_check(&inst, false).unwrap());
        assert!(oracle_check(&inst).unwrap());
        let zero = q8_instance(vec![vec![vec![0, 0]]; 3]);
        assert!(!igen_matrix_check(&zero, true).unwrap());
        assert!(!oracle_check(&zero).unwrap());
        assert!(exists_w_check(&inst).unwrap());
        assert!(exists_w_exhaustive(&inst).unwrap());
    }

    #[test]
    fn end_field_degrees() {
        let [i, j] = builder::quaternion_matrices(3).unwrap();
        assert_eq!(end_field(&[i.clone(), j]).unwrap().dim(), 1);
        // a Singer cycle of F_9 has commutant F_9
        let s = FpMatrix::from_rows(3, &[vec![0, 1], vec![1, 1]]).unwrap();
        let f = end_field(&[s]).unwrap();
        assert_eq!(f.dim(), 2);
        let d = FpMatrix::from_rows(3, &[vec![1, 0], vec![0, 2]]).unwrap();
        assert!(end_field(&[d]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let inst = q8_instance(vec![vec![vec![0, 0]], vec![vec![0, 0]], vec![vec![1, 0]]]);
        let text = inst.to_text();
        assert_eq!(CrownInstance::parse(&text).unwrap(), inst);
        assert!(CrownInstance::parse("crown 4 1 0 1\n").is_err());
    }

    #[test]
    fn random_instances_agree_with_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let spec = RandomSpec {
            max_delta: 2,
            max_group_order: 2000,
            ..RandomSpec::default()
        };
        for _ in 0..15 {
            let inst = random_instance(&mut rng, &spec);
            inst.validate().unwrap();
            assert_eq!(
                igen_matrix_check(&inst, true).unwrap(),
                oracle_check(&inst).unwrap(),
                "{}",
                inst.to_text()
            );
        }
    }
}
