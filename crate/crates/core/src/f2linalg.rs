//! Exact linear algebra over the two-element field.
//!
//! Matrices are stored as packed bit rows (`u64` words) and reduced by
//! word-parallel XOR. On top of [`BitMatrix`] sit finite graded vector spaces
//! ([`GradedVS`]) and degree-homogeneous maps between them ([`LinMap`]).
//! A block of a `LinMap` in source degree `d` has one row per target basis
//! element in degree `d + shift` and one column per source basis element, so
//! images are column spans and kernels are null spaces.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("degree {degree} outside 0..={trunc}")]
    DegreeOutOfRange { degree: i64, trunc: usize },
    #[error("incompatible shapes: {0}")]
    IncompatibleShapes(String),
    #[error("duplicate basis label {label:?} in degree {degree}")]
    DuplicateLabel { degree: usize, label: String },
}

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over F2 packed into words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b & 1 == 1);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector(")?;
        for b in self.to_bits() {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// Dense matrix over F2 with packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from rows of 0/1 entries; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has wrong length");
            for (c, &b) in row.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for r in v.ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row(&self, r: usize) -> F2Vector {
        F2Vector {
            len: self.cols,
            words: self.data[r * self.stride..(r + 1) * self.stride].to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        let mut out = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let row = &self.data[r * self.stride..(r + 1) * self.stride];
            let parity = row
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::IncompatibleShapes(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (dst, src) = (r * out.stride, k * rhs.stride);
                    for w in 0..out.stride {
                        out.data[dst + w] ^= rhs.data[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let (s, d) = (src * self.stride, dst * self.stride);
        for w in from_word..self.stride {
            let x = self.data[s + w];
            self.data[d + w] ^= x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let (wi, mask) = (c / WORD, 1u64 << (c % WORD));
            let Some(found) = (pr..self.rows).find(|&r| self.data[r * self.stride + wi] & mask != 0)
            else {
                continue;
            };
            self.swap_rows(pr, found);
            let start = if full { 0 } else { pr + 1 };
            for r in start..self.rows {
                if r != pr && self.data[r * self.stride + wi] & mask != 0 {
                    self.xor_row_into(pr, r, wi);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().eliminate(false).len()
    }

    pub fn rref(&self) -> Echelon {
        let mut matrix = self.clone();
        let pivots = matrix.eliminate(true);
        Echelon { matrix, pivots }
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let Echelon { matrix, pivots } = self.rref();
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = F2Vector::unit(self.cols, free);
                for (i, &p) in pivots.iter().enumerate() {
                    if matrix.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn image_basis(&self) -> Vec<F2Vector> {
        self.rref()
            .pivots
            .into_iter()
            .map(|c| self.column(c))
            .collect()
    }

    /// Debug text: one line of 0/1 per row.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{}", self.dump())
    }
}

/// Reduces vectors modulo a fixed subspace and reads off coordinates in a
/// chosen complement, giving an explicit quotient `V / W`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ambient: usize,
    reducer: Echelon,
    complement: Vec<usize>,
}

impl QuotientMap {
    /// Quotient of `F2^ambient` by the span of `spanning`.
    pub fn new(ambient: usize, spanning: &[F2Vector]) -> Self {
        let mut rows = BitMatrix::zeros(spanning.len(), ambient);
        for (r, v) in spanning.iter().enumerate() {
            assert_eq!(v.len(), ambient);
            for c in v.ones() {
                rows.set(r, c, true);
            }
        }
        let reducer = rows.rref();
        let pivot_set: HashSet<usize> = reducer.pivots.iter().copied().collect();
        let complement = (0..ambient).filter(|c| !pivot_set.contains(c)).collect();
        QuotientMap {
            ambient,
            reducer,
            complement,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn subspace_dim(&self) -> usize {
        self.reducer.pivots.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient coordinates left free by the subspace; they index the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// The normal form of `v` modulo the subspace.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut out = v.clone();
        for (i, &p) in self.reducer.pivots.iter().enumerate() {
            if out.get(p) {
                out.xor_assign(&self.reducer.matrix.row(i));
            }
        }
        out
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &F2Vector) -> F2Vector {
        let r = self.reduce(v);
        let mut q = F2Vector::zeros(self.complement.len());
        for (j, &c) in self.complement.iter().enumerate() {
            if r.get(c) {
                q.set(j, true);
            }
        }
        q
    }

    /// The projection as a `quotient_dim × ambient` matrix.
    pub fn matrix(&self) -> BitMatrix {
        let cols: Vec<F2Vector> = (0..self.ambient)
            .map(|c| self.project(&F2Vector::unit(self.ambient, c)))
            .collect();
        BitMatrix::from_columns(self.quotient_dim(), &cols)
    }
}

/// Finite graded vector space over F2 with labelled bases in degrees `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVS {
    labels: Vec<Vec<String>>,
}

impl GradedVS {
    pub fn new(labels: Vec<Vec<String>>) -> Result<Self, LinAlgError> {
        if labels.is_empty() {
            return Err(LinAlgError::IncompatibleShapes(
                "a graded space needs at least degree 0".into(),
            ));
        }
        for (degree, ls) in labels.iter().enumerate() {
            let mut seen = HashSet::new();
            for l in ls {
                if !seen.insert(l) {
                    return Err(LinAlgError::DuplicateLabel {
                        degree,
                        label: l.clone(),
                    });
                }
            }
        }
        Ok(GradedVS { labels })
    }

    /// Unlabelled space with generated labels `e{d}_{i}`.
    pub fn from_dims(dims: &[usize]) -> Self {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(d, &n)| (0..n).map(|i| format!("e{d}_{i}")).collect())
            .collect();
        GradedVS::new(labels).expect("generated labels are distinct")
    }

    /// The space concentrated in a single degree.
    pub fn concentrated(trunc: usize, degree: usize, labels: Vec<String>) -> Result<Self, LinAlgError> {
        if degree > trunc {
            return Err(LinAlgError::DegreeOutOfRange {
                degree: degree as i64,
                trunc,
            });
        }
        let mut all = vec![Vec::new(); trunc + 1];
        all[degree] = labels;
        GradedVS::new(all)
    }

    pub fn trunc_degree(&self) -> usize {
        self.labels.len() - 1
    }

    /// Dimension in `degree`; zero outside `0..=N`.
    pub fn dim(&self, degree: i64) -> usize {
        if degree < 0 {
            return 0;
        }
        self.labels.get(degree as usize).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        self.labels.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }
}

/// Degree-homogeneous linear map with a single global degree shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    source: GradedVS,
    target: GradedVS,
    shift: i64,
    blocks: BTreeMap<usize, BitMatrix>,
}

impl LinMap {
    pub fn new(
        source: GradedVS,
        target: GradedVS,
        shift: i64,
        blocks: BTreeMap<usize, BitMatrix>,
    ) -> Result<Self, LinAlgError> {
        for (&d, m) in &blocks {
            if d > source.trunc_degree() {
                return Err(LinAlgError::DegreeOutOfRange {
                    degree: d as i64,
                    trunc: source.trunc_degree(),
                });
            }
            let want = (target.dim(d as i64 + shift), source.dim(d as i64));
            if (m.rows(), m.cols()) != want {
                return Err(LinAlgError::IncompatibleShapes(format!(
                    "block in degree {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(LinMap {
            source,
            target,
            shift,
            blocks,
        })
    }

    pub fn zero(source: GradedVS, target: GradedVS, shift: i64) -> Self {
        LinMap {
            source,
            target,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: GradedVS) -> Self {
        let blocks = (0..=space.trunc_degree())
            .map(|d| (d, BitMatrix::identity(space.dim(d as i64))))
            .collect();
        LinMap {
            source: space.clone(),
            target: space,
            shift: 0,
            blocks,
        }
    }

    pub fn source(&self) -> &GradedVS {
        &self.source
    }

    pub fn target(&self) -> &GradedVS {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    fn check_degree(&self, degree: i64) -> Result<usize, LinAlgError> {
        let trunc = self.source.trunc_degree();
        if degree < 0 || degree as usize > trunc {
            return Err(LinAlgError::DegreeOutOfRange { degree, trunc });
        }
        Ok(degree as usize)
    }

    /// The block out of source degree `degree` (zero when absent).
    pub fn block(&self, degree: i64) -> Result<BitMatrix, LinAlgError> {
        let d = self.check_degree(degree)?;
        Ok(self.blocks.get(&d).cloned().unwrap_or_else(|| {
            BitMatrix::zeros(self.target.dim(degree + self.shift), self.source.dim(degree))
        }))
    }

    pub fn rank(&self, degree: i64) -> Result<usize, LinAlgError> {
        let d = self.check_degree(degree)?;
        Ok(self.blocks.get(&d).map_or(0, BitMatrix::rank))
    }

    pub fn kernel_basis(&self, degree: i64) -> Result<Vec<F2Vector>, LinAlgError> {
        Ok(self.block(degree)?.kernel_basis())
    }

    pub fn image_basis(&self, degree: i64) -> Result<Vec<F2Vector>, LinAlgError> {
        Ok(self.block(degree)?.image_basis())
    }

    pub fn apply(&self, degree: i64, v: &F2Vector) -> Result<F2Vector, LinAlgError> {
        let block = self.block(degree)?;
        if v.len() != block.cols() {
            return Err(LinAlgError::IncompatibleShapes(format!(
                "vector of length {} in degree {degree} of dimension {}",
                v.len(),
                block.cols()
            )));
        }
        Ok(block.apply(v))
    }

    /// `g ∘ f`.
    pub fn compose(g: &LinMap, f: &LinMap) -> Result<LinMap, LinAlgError> {
        for d in 0..=f.source.trunc_degree() as i64 {
            let mid = d + f.shift;
            if f.target.dim(mid) != g.source.dim(mid) {
                return Err(LinAlgError::IncompatibleShapes(format!(
                    "degree {mid}: f lands in dimension {} but g starts from {}",
                    f.target.dim(mid),
                    g.source.dim(mid)
                )));
            }
        }
        let mut blocks = BTreeMap::new();
        for (&d, fb) in &f.blocks {
            let mid = d as i64 + f.shift;
            if mid < 0 || mid as usize > g.source.trunc_degree() {
                continue;
            }
            if let Some(gb) = g.blocks.get(&(mid as usize)) {
                let prod = gb.mul(fb)?;
                if !prod.is_zero() {
                    blocks.insert(d, prod);
                }
            }
        }
        LinMap::new(f.source.clone(), g.target.clone(), f.shift + g.shift, blocks)
    }

    /// Debug text for every nonzero block.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (d, m) in &self.blocks {
            s.push_str(&format!("degree {d} -> {}\n", *d as i64 + self.shift));
            s.push_str(&m.dump());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn m(rows: &[&[u8]]) -> BitMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn single(block: BitMatrix) -> LinMap {
        let src = GradedVS::from_dims(&[block.cols()]);
        let tgt = GradedVS::from_dims(&[block.rows()]);
        LinMap::new(src, tgt, 0, BTreeMap::from([(0, block)])).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(single(BitMatrix::identity(3)).rank(0).unwrap(), 3);
        assert_eq!(single(BitMatrix::zeros(3, 3)).rank(0).unwrap(), 0);
        assert_eq!(single(m(&[&[1, 1], &[1, 1]])).rank(0).unwrap(), 1);
        assert_eq!(
            single(BitMatrix::identity(2)).rank(1),
            Err(LinAlgError::DegreeOutOfRange { degree: 1, trunc: 0 })
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(single(BitMatrix::identity(3)).kernel_basis(0).unwrap().is_empty());
        let k = single(BitMatrix::zeros(3, 3)).kernel_basis(0).unwrap();
        assert_eq!(k.len(), 3);
        assert_eq!(BitMatrix::from_columns(3, &k).rank(), 3);
        let k = single(m(&[&[1, 1]])).kernel_basis(0).unwrap();
        assert_eq!(k, vec![F2Vector::from_bits(&[1, 1])]);
        assert!(single(BitMatrix::identity(1)).kernel_basis(-1).is_err());
    }

    #[test]
    fn image_examples() {
        assert_eq!(single(BitMatrix::identity(2)).image_basis(0).unwrap().len(), 2);
        assert!(single(BitMatrix::zeros(2, 2)).image_basis(0).unwrap().is_empty());
        assert_eq!(
            single(m(&[&[1, 0], &[1, 0]])).image_basis(0).unwrap(),
            vec![F2Vector::from_bits(&[1, 1])]
        );
    }

    #[test]
    fn compose_examples() {
        let vs = GradedVS::from_dims(&[1, 2, 2]);
        let f = LinMap::new(
            vs.clone(),
            vs.clone(),
            0,
            BTreeMap::from([(1, m(&[&[0, 1], &[1, 1]]))]),
        )
        .unwrap();
        let id = LinMap::identity(vs.clone());
        let fid = LinMap::compose(&id, &f).unwrap();
        assert_eq!(fid.block(1).unwrap(), f.block(1).unwrap());
        let zero = LinMap::zero(vs.clone(), vs.clone(), 0);
        assert_eq!(LinMap::compose(&f, &zero).unwrap().rank(1).unwrap(), 0);

        let up = GradedVS::from_dims(&[1, 1, 1]);
        let s1 = LinMap::new(
            up.clone(),
            up.clone(),
            1,
            BTreeMap::from([(0, BitMatrix::identity(1)), (1, BitMatrix::identity(1))]),
        )
        .unwrap();
        let s2 = LinMap::compose(&s1, &s1).unwrap();
        assert_eq!(s2.shift(), 2);
        assert_eq!(s2.rank(0).unwrap(), 1);
        assert_eq!(s2.rank(1).unwrap(), 0);

        let other = GradedVS::from_dims(&[1, 3, 2]);
        assert!(LinMap::compose(&LinMap::identity(other), &f).is_err());
    }

    #[test]
    fn construction_validation() {
        assert!(matches!(
            GradedVS::new(vec![vec!["a".into(), "a".into()]]),
            Err(LinAlgError::DuplicateLabel { .. })
        ));
        let vs = GradedVS::from_dims(&[1, 2]);
        assert!(LinMap::new(vs.clone(), vs, 0, BTreeMap::from([(1, BitMatrix::zeros(1, 2))])).is_err());
    }

    #[test]
    fn dump_is_rows_of_bits() {
        assert_eq!(m(&[&[1, 0, 1], &[0, 1, 1]]).dump(), "101\n011\n");
    }

    #[test]
    fn quotient_map() {
        let q = QuotientMap::new(3, &[F2Vector::from_bits(&[1, 1, 0])]);
        assert_eq!(q.quotient_dim(), 2);
        assert_eq!(
            q.project(&F2Vector::from_bits(&[1, 1, 0])),
            F2Vector::zeros(2)
        );
        assert_eq!(
            q.project(&F2Vector::from_bits(&[1, 0, 0])),
            q.project(&F2Vector::from_bits(&[0, 1, 0]))
        );
        assert_eq!(q.matrix().rank(), 2);
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = BitMatrix> {
        (1..max, 1..max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(move |rows| BitMatrix::from_rows(c, &rows))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_matrix(90)) {
            let k = a.kernel_basis();
            prop_assert_eq!(k.len() + a.rank(), a.cols());
            for v in &k {
                prop_assert!(a.apply(v).is_zero());
            }
            prop_assert_eq!(a.image_basis().len(), a.rank());
            prop_assert_eq!(a.transpose().rank(), a.rank());
        }

        #[test]
        fn rank_of_product_bounded(a in arb_matrix(40), seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let inner = a.cols();
            let cols = 1 + (seed % 30) as usize;
            let mut b = BitMatrix::zeros(inner, cols);
            for r in 0..inner {
                for c in 0..cols {
                    if rand::Rng::gen_bool(&mut rng, 0.4) { b.set(r, c, true); }
                }
            }
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn rank_independent_of_row_order(a in arb_matrix(70), seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rows: Vec<Vec<u8>> = (0..a.rows()).map(|r| a.row(r).to_bits()).collect();
            rows.shuffle(&mut rng);
            prop_assert_eq!(BitMatrix::from_rows(a.cols(), &rows).rank(), a.rank());
        }
    }
}
