//! Constructors for the permutation groups used throughout the crate, plus
//! the plain-text group file format.

use std::fmt::Write as _;

use crate::bsgs::PermGroup;
use crate::error::{Error, Result};
use crate::fp::{self, FpMatrix};
use crate::perm::Perm;

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Perm {
    Perm::from_images((0..n).map(f).collect()).expect("valid permutation")
}

fn check_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    check_positive(n, "degree")?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm_from_fn(n, |i| (i + 1) % n));
        gens.push(perm_from_fn(n, |i| match i {
            0 => 1,
            1 => 0,
            _ => i,
        }));
    }
    PermGroup::new(n, &gens)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    check_positive(n, "degree")?;
    let gens: Vec<Perm> = (2..n)
        .map(|k| perm_from_fn(n, |i| match i {
            0 => 1,
            1 => k,
            _ if i == k => 0,
            _ => i,
        }))
        .collect();
    PermGroup::new(n, &gens)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    check_positive(n, "order")?;
    PermGroup::new(n, &[perm_from_fn(n, |i| (i + 1) % n)])
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidParameter("dihedral needs n >= 3".into()));
    }
    PermGroup::new(
        n,
        &[
            perm_from_fn(n, |i| (i + 1) % n),
            perm_from_fn(n, |i| (n - i) % n),
        ],
    )
}

/// Dicyclic group of order `4m` in its regular representation:
/// `<a, x | a^(2m) = 1, x^2 = a^m, x^-1 a x = a^-1>`.
pub fn dicyclic(m: usize) -> Result<PermGroup> {
    check_positive(m, "dicyclic parameter")?;
    let n = 2 * m;
    let idx = |i: usize, j: usize| i % n + n * j;
    let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| -> (usize, usize) {
        if j == 0 {
            ((i + k) % n, l)
        } else if l == 0 {
            ((i + n - k % n) % n, 1)
        } else {
            ((i + n - k % n + m) % n, 0)
        }
    };
    let act = |g: (usize, usize)| {
        perm_from_fn(2 * n, |pt| {
            let (i, j) = (pt % n, pt / n);
            let (a, b) = mul((i, j), g);
            idx(a, b)
        })
    };
    PermGroup::new(2 * n, &[act((1, 0)), act((0, 1))])
}

/// Regular representation of `C_p^k` on `p^k` points.
pub fn elementary_abelian(p: u32, k: usize) -> Result<PermGroup> {
    if !fp::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(AffineGroup::new(p, k, Vec::new())?.group)
}

/// `G x H` acting on the disjoint union of their point sets.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let (a, b) = (g.degree(), h.degree());
    let mut gens = Vec::new();
    for x in g.generators() {
        gens.push(perm_from_fn(a + b, |i| if i < a { x.image(i) } else { i }));
    }
    for y in h.generators() {
        gens.push(perm_from_fn(a + b, |i| if i < a { i } else { a + y.image(i - a) }));
    }
    PermGroup::new(a + b, &gens)
}

/// `V : K` with `V = F_p^d` acting by translations and `K` generated by
/// invertible matrices acting on row vectors.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub p: u32,
    pub dim: usize,
    pub linear: Vec<FpMatrix>,
    pub group: PermGroup,
}

impl AffineGroup {
    pub fn new(p: u32, dim: usize, linear: Vec<FpMatrix>) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        for m in &linear {
            if m.p() != p || m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidParameter(format!(
                    "matrix is not {dim}x{dim} over F_{p}"
                )));
            }
            if !m.is_invertible() {
                return Err(Error::InvalidParameter("singular matrix".into()));
            }
        }
        let mut gens = Vec::new();
        for i in 0..dim {
            let mut v = vec![0u32; dim];
            v[i] = 1;
            gens.push(affine_perm(p, dim, &FpMatrix::identity(p, dim), &v));
        }
        for m in &linear {
            gens.push(affine_perm(p, dim, m, &vec![0; dim]));
        }
        let degree = (p as usize).pow(dim as u32);
        let group = PermGroup::new(degree, &gens)?;
        Ok(AffineGroup {
            p,
            dim,
            linear,
            group,
        })
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn translation(&self, v: &[u32]) -> Perm {
        affine_perm(self.p, self.dim, &FpMatrix::identity(self.p, self.dim), v)
    }

    /// The map `x -> x M + v`.
    pub fn map(&self, m: &FpMatrix, v: &[u32]) -> Perm {
        affine_perm(self.p, self.dim, m, v)
    }

    pub fn point(&self, v: &[u32]) -> usize {
        fp::vector_to_index(v, self.p)
    }

    pub fn vector(&self, point: usize) -> Vec<u32> {
        fp::index_to_vector(point, self.p, self.dim)
    }

    /// Linear part and translation vector of an affine permutation.
    pub fn decompose(&self, g: &Perm) -> (FpMatrix, Vec<u32>) {
        let v = self.vector(g.image(0));
        let mut m = FpMatrix::zero(self.p, self.dim, self.dim);
        for i in 0..self.dim {
            let mut e = vec![0u32; self.dim];
            e[i] = 1;
            let img = self.vector(g.image(self.point(&e)));
            for j in 0..self.dim {
                m.set(i, j, (img[j] + self.p - v[j]) % self.p);
            }
        }
        (m, v)
    }
}

pub fn affine_perm(p: u32, dim: usize, m: &FpMatrix, v: &[u32]) -> Perm {
    let degree = (p as usize).pow(dim as u32);
    perm_from_fn(degree, |i| {
        let x = fp::index_to_vector(i, p, dim);
        let y: Vec<u32> = m
            .apply(&x)
            .iter()
            .zip(v)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        fp::vector_to_index(&y, p)
    })
}

/// Finite field of order `q` given by addition and multiplication tables.
struct SmallField {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl SmallField {
    fn prime(p: usize) -> Self {
        let add = (0..p * p).map(|i| (i / p + i % p) % p).collect();
        let mul = (0..p * p).map(|i| (i / p) * (i % p) % p).collect();
        SmallField { q: p, add, mul }
    }

    /// `F_{2^k}` modulo the given polynomial (bit mask including the top term).
    fn binary(k: u32, modulus: usize) -> Self {
        let q = 1usize << k;
        let add = (0..q * q).map(|i| (i / q) ^ (i % q)).collect();
        let mul = (0..q * q)
            .map(|i| {
                let (mut a, mut b, mut r) = (i / q, i % q, 0usize);
                while b > 0 {
                    if b & 1 == 1 {
                        r ^= a;
                    }
                    a <<= 1;
                    if a & q != 0 {
                        a ^= modulus;
                    }
                    b >>= 1;
                }
                r
            })
            .collect();
        SmallField { q, add, mul }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    fn inv(&self, a: usize) -> usize {
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    fn primitive(&self) -> usize {
        (2..self.q)
            .find(|&g| {
                let mut x = g;
                let mut k = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    k += 1;
                }
                k == self.q - 1
            })
            .unwrap_or(1)
    }

    /// `z -> (a z + b) / (c z + d)` on the projective line, infinity = `q`.
    fn mobius(&self, a: usize, b: usize, c: usize, d: usize) -> Perm {
        let q = self.q;
        perm_from_fn(q + 1, |z| {
            if z == q {
                return if c == 0 { q } else { self.mul(a, self.inv(c)) };
            }
            let num = self.add(self.mul(a, z), b);
            let den = self.add(self.mul(c, z), d);
            if den == 0 {
                q
            } else {
                self.mul(num, self.inv(den))
            }
        })
    }

    fn psl2(&self) -> Result<PermGroup> {
        let g = self.primitive();
        let g2 = self.mul(g, g);
        let one = 1;
        let minus_one = self.neg(1);
        let gens = [
            self.mobius(one, one, 0, one),
            self.mobius(g2, 0, 0, one),
            self.mobius(0, minus_one, one, 0),
        ];
        PermGroup::new(self.q + 1, &gens)
    }
}

/// `PSL(2, p)` acting on the `p + 1` points of the projective line.
pub fn psl2(p: u32) -> Result<PermGroup> {
    if !fp::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    SmallField::prime(p as usize).psl2()
}

/// `L_2(8)` on 9 points, with `F_8 = F_2[x]/(x^3 + x + 1)`.
pub fn l2_8() -> Result<PermGroup> {
    SmallField::binary(3, 0b1011).psl2()
}

/// Möbius map `z -> (a z + b) / (c z + d)` over `F_p`, infinity = `p`.
pub fn mobius_prime(p: u32, a: i64, b: i64, c: i64, d: i64) -> Perm {
    let f = SmallField::prime(p as usize);
    let r = |x: i64| fp::reduce(x, p) as usize;
    f.mobius(r(a), r(b), r(c), r(d))
}

/// Images of the quaternion units `i, j` in `SL(2, p)` for odd `p`.
pub fn quaternion_matrices(p: u32) -> Result<[FpMatrix; 2]> {
    if p == 2 || !fp::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    let target = p - 1;
    let (a, b) = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .find(|&(a, b)| (a * a + b * b) % p == target)
        .expect("-1 is a sum of two squares");
    let (a, b) = (a as i64, b as i64);
    Ok([
        FpMatrix::from_rows(p, &[vec![a, b], vec![b, -a]])?,
        FpMatrix::from_rows(p, &[vec![0, -1], vec![1, 0]])?,
    ])
}

/// `F_p^2 : Q_8`.
pub fn fp2_q8(p: u32) -> Result<AffineGroup> {
    AffineGroup::new(p, 2, quaternion_matrices(p)?.to_vec())
}

/// `F_13^2 : Dic12` with `Dic12 = <diag(4, 10), [[0,1],[-1,0]]>`.
pub fn f13sq_dic12() -> Result<AffineGroup> {
    let a = FpMatrix::from_rows(13, &[vec![4, 0], vec![0, 10]])?;
    let x = FpMatrix::from_rows(13, &[vec![0, 1], vec![-1, 0]])?;
    AffineGroup::new(13, 2, vec![a, x])
}

/// 2x2 matrix over `F_4` written over `F_2`, entries given as `(c0, c1)` for `c0 + c1 w`.
fn f4_matrix(entries: [[(i64, i64); 2]; 2]) -> FpMatrix {
    let block = |(c0, c1): (i64, i64)| -> [[i64; 2]; 2] {
        // multiplication by c0 + c1 w on the basis (1, w), w^2 = w + 1
        [[c0, c1], [c1, c0 + c1]]
    };
    let mut rows = vec![vec![0i64; 4]; 4];
    for (bi, row) in entries.iter().enumerate() {
        for (bj, &e) in row.iter().enumerate() {
            let b = block(e);
            for i in 0..2 {
                for j in 0..2 {
                    rows[2 * bi + i][2 * bj + j] = b[i][j];
                }
            }
        }
    }
    FpMatrix::from_rows(2, &rows).expect("valid matrix")
}

/// `ASL(2, 4) = F_2^4 : SL(2, 4)` on 16 points.
pub fn asl2_4() -> Result<AffineGroup> {
    let gens = vec![
        f4_matrix([[(1, 0), (1, 0)], [(0, 0), (1, 0)]]),
        f4_matrix([[(1, 0), (0, 1)], [(0, 0), (1, 0)]]),
        f4_matrix([[(1, 0), (0, 0)], [(1, 0), (1, 0)]]),
    ];
    AffineGroup::new(2, 4, gens)
}

/// `C_3^2 : C_2` with the involution acting as `-1`.
pub fn c3c3_c2() -> Result<AffineGroup> {
    AffineGroup::new(3, 2, vec![FpMatrix::from_rows(3, &[vec![-1, 0], vec![0, -1]])?])
}

/// A group given by named generators on a fixed number of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<(String, Perm)>,
}

impl GroupSpec {
    pub fn group(&self) -> Result<PermGroup> {
        let gens: Vec<Perm> = self.generators.iter().map(|(_, p)| p.clone()).collect();
        PermGroup::new(self.degree, &gens)
    }

    pub fn from_group(g: &PermGroup) -> Self {
        GroupSpec {
            degree: g.degree(),
            generators: g
                .generators()
                .iter()
                .enumerate()
                .map(|(i, p)| (format!("g{}", i + 1), p.clone()))
                .collect(),
        }
    }

    /// Parses `degree N` followed by `name = cycles` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut generators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            match degree {
                None => {
                    let rest = line
                        .strip_prefix("degree")
                        .ok_or_else(|| Error::parse(line_no, "expected 'degree N'"))?;
                    let n: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad degree"))?;
                    degree = Some(n);
                }
                Some(n) => {
                    let (name, cycles) = line
                        .split_once('=')
                        .ok_or_else(|| Error::parse(line_no, "expected 'name = cycles'"))?;
                    let name = name.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(Error::parse(line_no, "bad generator name"));
                    }
                    let perm = Perm::parse(cycles, n)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    generators.push((name.to_string(), perm));
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::parse(1, "missing 'degree N' line"))?;
        Ok(GroupSpec { degree, generators })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for (name, p) in &self.generators {
            let _ = writeln!(s, "{name} = {p}");
        }
        s
    }
}

/// Parses an affine group file: `affine p d` then `matrix <label>` blocks of `d` rows.
pub fn parse_affine(text: &str) -> Result<AffineGroup> {
    let mut header = None;
    let mut mats: Vec<Vec<Vec<i64>>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if header.is_none() {
            if toks.len() != 3 || toks[0] != "affine" {
                return Err(Error::parse(line_no, "expected 'affine p d'"));
            }
            let p: u32 = toks[1].parse().map_err(|_| Error::parse(line_no, "bad p"))?;
            let d: usize = toks[2].parse().map_err(|_| Error::parse(line_no, "bad d"))?;
            header = Some((p, d));
            continue;
        }
        if toks[0] == "matrix" {
            mats.push(Vec::new());
            continue;
        }
        let cur = mats
            .last_mut()
            .ok_or_else(|| Error::parse(line_no, "row outside a matrix block"))?;
        let row: Vec<i64> = toks
            .iter()
            .map(|t| t.parse().map_err(|_| Error::parse(line_no, "bad entry")))
            .collect::<Result<_>>()?;
        cur.push(row);
    }
    let (p, d) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
    let mut linear = Vec::new();
    for rows in mats {
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::parse(0, format!("matrix must be {d}x{d}")));
        }
        linear.push(FpMatrix::from_rows(p, &rows)?);
    }
    AffineGroup::new(p, d, linear)
}

/// A group with an optional affine structure, as returned by [`builtin`].
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
    pub affine: Option<AffineGroup>,
}

impl NamedGroup {
    pub fn plain(name: &str, group: PermGroup) -> Self {
        NamedGroup {
            name: name.to_string(),
            group,
            affine: None,
        }
    }

    pub fn affine(name: &str, a: AffineGroup) -> Self {
        NamedGroup {
            name: name.to_string(),
            group: a.group.clone(),
            affine: Some(a),
        }
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "c3c3xc2",
    "q8",
    "f3sq_q8",
    "f5sq_q8",
    "f13sq_dic12",
    "asl2_4",
    "l2_8",
    "s3xc5",
    "sl2_3",
    "a5xa5",
];

pub fn builtin(name: &str) -> Result<NamedGroup> {
    Ok(match name {
        "c3c3xc2" => NamedGroup::affine(name, c3c3_c2()?),
        "q8" => NamedGroup::plain(name, dicyclic(2)?),
        "f3sq_q8" => NamedGroup::affine(name, fp2_q8(3)?),
        "f5sq_q8" => NamedGroup::affine(name, fp2_q8(5)?),
        "f13sq_dic12" => NamedGroup::affine(name, f13sq_dic12()?),
        "asl2_4" => NamedGroup::affine(name, asl2_4()?),
        "l2_8" => NamedGroup::plain(name, l2_8()?),
        "s3xc5" => NamedGroup::plain(name, direct_product(&symmetric(3)?, &cyclic(5)?)?),
        "sl2_3" => NamedGroup::plain(name, sl2_3()?),
        "a5xa5" => NamedGroup::plain(name, direct_product(&alternating(5)?, &alternating(5)?)?),
        _ => return Err(Error::InvalidParameter(format!("unknown builtin group {name:?}"))),
    })
}

/// `SL(2, 3)` acting on the 8 nonzero vectors of `F_3^2`.
pub fn sl2_3() -> Result<PermGroup> {
    let gens = [
        FpMatrix::from_rows(3, &[vec![1, 1], vec![0, 1]])?,
        FpMatrix::from_rows(3, &[vec![1, 0], vec![1, 1]])?,
    ];
    linear_action_on_nonzero(&gens)
}

/// Action of invertible matrices on the nonzero row vectors.
pub fn linear_action_on_nonzero(gens: &[FpMatrix]) -> Result<PermGroup> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidParameter("no generators".into()))?;
    let (p, n) = (first.p(), first.rows());
    let total = (p as usize).pow(n as u32);
    let perms: Vec<Perm> = gens
        .iter()
        .map(|m| {
            perm_from_fn(total - 1, |i| {
                let v = fp::index_to_vector(i + 1, p, n);
                fp::vector_to_index(&m.apply(&v), p) - 1
            })
        })
        .collect();
    PermGroup::new(total - 1, &perms)
}

/// The three generators of the degree-29 alternating group used in the examples.
pub fn alt29_generators() -> [Perm; 3] {
    let n = 29;
    let a = Perm::parse(
        "(2,3,4)(5,6,7)(8,9,10,11,12,13,14,15,16,17,18)(19,20,21,22,23,24,25,26,27,28,29)",
        n,
    )
    .unwrap();
    let b = Perm::parse(
        "(1,2)(3,4)(5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29)",
        n,
    )
    .unwrap();
    let c = Perm::parse(
        "(1,2)(3,4,5,6,7,8)(9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29)",
        n,
    )
    .unwrap();
    [a, b, c]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(alternating(1).unwrap().order(), 1);
        assert_eq!(cyclic(7).unwrap().order(), 7);
        assert_eq!(dihedral(5).unwrap().order(), 10);
        assert_eq!(dicyclic(3).unwrap().order(), 12);
        assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
        assert_eq!(psl2(5).unwrap().order(), 60);
        assert_eq!(psl2(7).unwrap().order(), 168);
        assert_eq!(psl2(41).unwrap().order(), 34440);
        assert_eq!(l2_8().unwrap().order(), 504);
        assert_eq!(fp2_q8(3).unwrap().group.order(), 72);
        assert_eq!(fp2_q8(5).unwrap().group.order(), 200);
        assert_eq!(f13sq_dic12().unwrap().group.order(), 2028);
        assert_eq!(asl2_4().unwrap().group.order(), 960);
        assert_eq!(c3c3_c2().unwrap().group.order(), 18);
        assert_eq!(sl2_3().unwrap().order(), 24);
        let s3c5 = builtin("s3xc5").unwrap();
        assert_eq!(s3c5.group.order(), 30);
    }

    #[test]
    fn dicyclic_relations() {
        let g = dicyclic(3).unwrap();
        let (a, x) = (&g.generators()[0], &g.generators()[1]);
        assert_eq!(a.order(), 6);
        assert_eq!(x.then(x), a.pow(3));
        assert_eq!(a.conjugate(x).unwrap(), a.inverse());
    }

    #[test]
    fn quaternion_images() {
        for p in [3, 5, 7, 13] {
            let [i, j] = quaternion_matrices(p).unwrap();
            let minus = FpMatrix::identity(p, 2).scale(p - 1);
            assert_eq!(i.mul(&i), minus);
            assert_eq!(j.mul(&j), minus);
            let k = i.mul(&j);
            assert_eq!(k.mul(&k), minus);
        }
    }

    #[test]
    fn group_file_round_trip() {
        let text = "# a comment\ndegree 5\na = (1,2,3)\nb = (1,2)(4,5) # trailing\n";
        let spec = GroupSpec::parse(text).unwrap();
        assert_eq!(spec.degree, 5);
        assert_eq!(spec.generators.len(), 2);
        assert_eq!(GroupSpec::parse(&spec.to_text()).unwrap(), spec);
        assert!(matches!(
            GroupSpec::parse("degree 3\na = (1,4)"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(GroupSpec::parse("a = (1,2)").is_err());
    }

    #[test]
    fn affine_file() {
        let text = "affine 3 2\nmatrix minus\n2 0\n0 2\n";
        assert_eq!(parse_affine(text).unwrap().group.order(), 18);
        assert!(parse_affine("affine 4 2\n").is_err());
    }

    #[test]
    fn affine_decomposition() {
        let a = fp2_q8(3).unwrap();
        let m = &a.linear[0];
        let v = vec![2, 1];
        let g = a.map(m, &v);
        assert_eq!(a.decompose(&g), (m.clone(), v));
    }

    #[test]
    fn alt29_data() {
        let [a, b, c] = alt29_generators();
        assert!(a.is_even() && b.is_even() && c.is_even());
    }
}
