//! Reduced bar construction over F2 for free graded-commutative algebras and
//! the bigraded `Tor_{s,t}(F2, F2)` it computes.
//!
//! A bar word `[a_1|…|a_s]` is a sequence of positive-degree monomials with
//! internal degree `t = Σ|a_i|`. The differential folds adjacent factors,
//! `d[a_1|…|a_s] = Σ_i [a_1|…|a_i a_{i+1}|…|a_s]`; over F2 there are no signs.
//! Folding preserves the total exponent vector of a word, so every block of
//! `d` splits into independent sub-blocks indexed by that multidegree, which
//! is how ranks are computed.
//!
//! Torus factors `F2[Z^r]` never enter the bar complex. They contribute the
//! exterior factor `(1 + σ)^r` and are convolved in afterwards.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::f2linalg::{BitMatrix, F2Vector, GradedVS, LinAlgError, LinMap, QuotientMap};
use crate::series::BiSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error("generator of degree 0 present; the bar construction needs a connected algebra")]
    DegreeZeroGenerator,
    #[error("generator degree {degree} exceeds truncation {trunc}")]
    GeneratorAboveTrunc { degree: usize, trunc: usize },
    #[error("bar complex needs {needed} words, over the cap of {cap}")]
    SizeCap { needed: u128, cap: u128 },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("table covers s ≤ {s_max}, t ≤ {t_max}; total degree {needed} needs both ≥ {needed}")]
    IncompleteTable { s_max: usize, t_max: usize, needed: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Monomials of weighted degree `≤ N` in generators of the given degrees,
/// ordered by degree, then lexicographically on exponent vectors.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    gen_degrees: Vec<usize>,
    trunc: usize,
    exps: Vec<Vec<u32>>,
    degrees: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
    offsets: Vec<usize>,
}

impl MonomialBasis {
    pub fn new(gen_degrees: &[usize], trunc: usize) -> Self {
        let mut by_degree: Vec<Vec<Vec<u32>>> = vec![Vec::new(); trunc + 1];
        let mut cur = vec![0u32; gen_degrees.len()];
        fn rec(
            g: usize,
            deg: usize,
            gens: &[usize],
            trunc: usize,
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<Vec<u32>>>,
        ) {
            if g == gens.len() {
                out[deg].push(cur.clone());
                return;
            }
            let mut d = deg;
            loop {
                rec(g + 1, d, gens, trunc, cur, out);
                if gens[g] == 0 || d + gens[g] > trunc {
                    break;
                }
                d += gens[g];
                cur[g] += 1;
            }
            cur[g] = 0;
        }
        rec(0, 0, gen_degrees, trunc, &mut cur, &mut by_degree);
        let mut exps = Vec::new();
        let mut degrees = Vec::new();
        let mut offsets = Vec::new();
        for (d, mut ms) in by_degree.into_iter().enumerate() {
            ms.sort();
            offsets.push(exps.len());
            degrees.extend(std::iter::repeat_n(d, ms.len()));
            exps.extend(ms);
        }
        offsets.push(exps.len());
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis {
            gen_degrees: gen_degrees.to_vec(),
            trunc,
            exps,
            degrees,
            index,
            offsets,
        }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self, m: usize) -> usize {
        self.degrees[m]
    }

    pub fn exponents(&self, m: usize) -> &[u32] {
        &self.exps[m]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn in_degree(&self, d: usize) -> std::ops::Range<usize> {
        if d > self.trunc {
            return 0..0;
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    /// The product monomial, or `None` above the truncation.
    pub fn multiply(&self, a: usize, b: usize) -> Option<usize> {
        if self.degrees[a] + self.degrees[b] > self.trunc {
            return None;
        }
        let e: Vec<u32> = self.exps[a].iter().zip(&self.exps[b]).map(|(x, y)| x + y).collect();
        self.index_of(&e)
    }

    pub fn label(&self, m: usize) -> String {
        let parts: Vec<String> = self.exps[m]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(g, e)| format!("x{g}^{e}"))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.gen_degrees
    }
}

/// Number of monomials in each degree `0..=N`, saturating.
pub fn monomial_counts(gen_degrees: &[usize], trunc: usize) -> Vec<u128> {
    let mut counts = vec![0u128; trunc + 1];
    counts[0] = 1;
    for &g in gen_degrees {
        if g == 0 || g > trunc {
            continue;
        }
        for d in g..=trunc {
            counts[d] = counts[d].saturating_add(counts[d - g]);
        }
    }
    counts
}

/// Free graded-commutative F2-algebra on generators of positive degree,
/// tensored with a symbolic `F2[Z^torus_rank]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentedAlgebra {
    generator_degrees: Vec<usize>,
    torus_rank: usize,
    trunc: usize,
}

impl PresentedAlgebra {
    pub fn new(mut generator_degrees: Vec<usize>, torus_rank: usize, trunc: usize) -> Result<Self, BarError> {
        if let Some(&degree) = generator_degrees.iter().find(|&&d| d > trunc) {
            return Err(BarError::GeneratorAboveTrunc { degree, trunc });
        }
        generator_degrees.sort_unstable();
        Ok(PresentedAlgebra {
            generator_degrees,
            torus_rank,
            trunc,
        })
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.generator_degrees
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn trunc_degree(&self) -> usize {
        self.trunc
    }

    /// The same generators, truncated lower; generators above `trunc` are dropped.
    pub fn truncated(&self, trunc: usize) -> PresentedAlgebra {
        PresentedAlgebra {
            generator_degrees: self
                .generator_degrees
                .iter()
                .copied()
                .filter(|&d| d <= trunc)
                .collect(),
            torus_rank: self.torus_rank,
            trunc,
        }
    }

    fn require_connected(&self) -> Result<(), BarError> {
        if self.generator_degrees.contains(&0) {
            return Err(BarError::DegreeZeroGenerator);
        }
        Ok(())
    }

    /// The connected part as a primitively generated Hopf algebra.
    pub fn to_hopf(&self) -> Result<crate::hopf::StructuredHopf, crate::hopf::HopfError> {
        crate::hopf::StructuredHopf::polynomial(&self.generator_degrees, self.trunc)
    }
}

/// `[a_1|…|a_s]` with its total exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord {
    pub multidegree: Box<[u32]>,
    pub factors: Box<[u32]>,
}

/// Reduced bar complex with cells `(s, t)` for `s ≤ S`, `t ≤ N`, each built on
/// first use.
pub struct BarComplex {
    algebra: PresentedAlgebra,
    s_max: usize,
    t_max: usize,
    monomials: MonomialBasis,
    cells: BTreeMap<(usize, usize), OnceLock<Vec<BarWord>>>,
}

impl BarComplex {
    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn monomials(&self) -> &MonomialBasis {
        &self.monomials
    }

    /// Basis of the cell `(s, t)` in the fixed order (multidegree, then factors).
    pub fn basis(&self, s: usize, t: usize) -> &[BarWord] {
        match self.cells.get(&(s, t)) {
            Some(cell) => cell.get_or_init(|| self.generate(s, t)),
            None => &[],
        }
    }

    fn generate(&self, s: usize, t: usize) -> Vec<BarWord> {
        let mut out = Vec::new();
        if s == 0 {
            if t == 0 {
                out.push(BarWord {
                    multidegree: vec![0; self.algebra.generator_degrees.len()].into(),
                    factors: Box::new([]),
                });
            }
            return out;
        }
        let mut stack = Vec::with_capacity(s);
        self.extend_words(s, t, &mut stack, &mut out);
        out.sort();
        out
    }

    fn extend_words(&self, s: usize, t: usize, stack: &mut Vec<u32>, out: &mut Vec<BarWord>) {
        if s == 0 {
            if t == 0 {
                let mut md = vec![0u32; self.algebra.generator_degrees.len()];
                for &m in stack.iter() {
                    for (x, e) in md.iter_mut().zip(self.monomials.exponents(m as usize)) {
                        *x += e;
                    }
                }
                out.push(BarWord {
                    multidegree: md.into(),
                    factors: stack.clone().into(),
                });
            }
            return;
        }
        // first factor has degree 1..=t-(s-1)
        if t < s {
            return;
        }
        for d in 1..=t - (s - 1) {
            for m in self.monomials.in_degree(d) {
                stack.push(m as u32);
                self.extend_words(s - 1, t - d, stack, out);
                stack.pop();
            }
        }
    }

    pub fn word_label(&self, w: &BarWord) -> String {
        let parts: Vec<String> = w.factors.iter().map(|&m| self.monomials.label(m as usize)).collect();
        format!("[{}]", parts.join("|"))
    }

    /// `d w` as factor sequences, cancelling pairs.
    pub fn differential_of(&self, factors: &[u32]) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        for i in 0..factors.len().saturating_sub(1) {
            let prod = self
                .monomials
                .multiply(factors[i] as usize, factors[i + 1] as usize)
                .expect("products of a word stay within its degree");
            let mut v = Vec::with_capacity(factors.len() - 1);
            v.extend_from_slice(&factors[..i]);
            v.push(prod as u32);
            v.extend_from_slice(&factors[i + 2..]);
            crate::hopf::toggle(&mut out, v);
        }
        out
    }

    fn position(cell: &[BarWord], multidegree: &[u32], factors: &[u32]) -> Option<usize> {
        cell.binary_search_by(|w| {
            (&*w.multidegree, &*w.factors).cmp(&(multidegree, factors))
        })
        .ok()
    }

    /// The full block `d: (s,t) → (s−1,t)`; rows index the target cell.
    pub fn differential_block(&self, s: usize, t: usize) -> BitMatrix {
        let src = self.basis(s, t);
        if s == 0 {
            return BitMatrix::zeros(0, src.len());
        }
        let tgt = self.basis(s - 1, t);
        let mut m = BitMatrix::zeros(tgt.len(), src.len());
        for (c, w) in src.iter().enumerate() {
            for image in self.differential_of(&w.factors) {
                let r = Self::position(tgt, &w.multidegree, &image).expect("image word exists");
                m.toggle(r, c);
            }
        }
        m
    }

    /// Rank of `d: (s,t) → (s−1,t)`, summed over multidegree sub-blocks.
    pub fn differential_rank(&self, s: usize, t: usize) -> usize {
        if s <= 1 {
            return 0;
        }
        let src = self.basis(s, t);
        let tgt = self.basis(s - 1, t);
        let groups = group_ranges(src);
        groups
            .par_iter()
            .map(|range| {
                let md = &src[range.start].multidegree;
                let lo = tgt.partition_point(|w| w.multidegree < *md);
                let hi = tgt.partition_point(|w| w.multidegree <= *md);
                let tgt_group = &tgt[lo..hi];
                let mut m = BitMatrix::zeros(tgt_group.len(), range.len());
                for (c, w) in src[range.clone()].iter().enumerate() {
                    for image in self.differential_of(&w.factors) {
                        let r = Self::position(tgt_group, md, &image).expect("image word exists");
                        m.toggle(r, c);
                    }
                }
                m.rank()
            })
            .sum()
    }

    /// Verifies `d∘d = 0` on every cell; returns the first failing cell.
    pub fn check_d_squared(&self) -> Result<(), (usize, usize)> {
        for s in 2..=self.s_max {
            for t in 0..=self.t_max {
                for w in self.basis(s, t) {
                    let mut dd = BTreeSet::new();
                    for v in self.differential_of(&w.factors) {
                        for u in self.differential_of(&v) {
                            crate::hopf::toggle(&mut dd, u);
                        }
                    }
                    if !dd.is_empty() {
                        return Err((s, t));
                    }
                }
            }
        }
        Ok(())
    }
}

fn group_ranges(cell: &[BarWord]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=cell.len() {
        if i == cell.len() || cell[i].multidegree != cell[start].multidegree {
            if start < i {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Builds the reduced bar complex of the connected part of `a`.
pub fn build_bar(a: &PresentedAlgebra, s_max: usize, t_max: usize) -> Result<BarComplex, BarError> {
    a.require_connected()?;
    let t_max = t_max.min(a.trunc);
    let gens: Vec<usize> = a.generator_degrees.iter().copied().filter(|&d| d <= t_max).collect();
    let monomials = MonomialBasis::new(&gens, t_max);
    let algebra = PresentedAlgebra {
        generator_degrees: gens,
        torus_rank: a.torus_rank,
        trunc: t_max,
    };
    let cells = (0..=s_max)
        .flat_map(|s| (0..=t_max).map(move |t| ((s, t), OnceLock::new())))
        .collect();
    Ok(BarComplex {
        algebra,
        s_max,
        t_max,
        monomials,
        cells,
    })
}

/// Bar word counts per cell `(s, t)`, `s ≤ s_max`, without building anything.
pub fn bar_cell_sizes(a: &PresentedAlgebra, s_max: usize, t_max: usize) -> Vec<Vec<u128>> {
    let mono = monomial_counts(&a.generator_degrees, t_max);
    let mut sizes = vec![vec![0u128; t_max + 1]; s_max + 1];
    sizes[0][0] = 1;
    for s in 1..=s_max {
        for t in 1..=t_max {
            let mut acc = 0u128;
            for d in 1..=t {
                acc = acc.saturating_add(mono[d].saturating_mul(sizes[s - 1][t - d]));
            }
            sizes[s][t] = acc;
        }
    }
    sizes
}

/// Total number of bar words needed to compute `Tor_{s,t}` for `s ≤ S`, `t ≤ N`.
pub fn bar_size_for_tor(a: &PresentedAlgebra, s_max: usize, t_max: usize) -> u128 {
    bar_cell_sizes(a, s_max + 1, t_max)
        .iter()
        .flatten()
        .fold(0u128, |acc, &x| acc.saturating_add(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Analytic,
}

/// Dimensions of `Tor_{s,t}` for `0 ≤ s ≤ S`, `0 ≤ t ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    s_max: usize,
    t_max: usize,
    dims: Vec<Vec<u64>>,
    provenance: Provenance,
}

impl TorTable {
    pub fn new(dims: Vec<Vec<u64>>, provenance: Provenance) -> Self {
        assert!(!dims.is_empty() && !dims[0].is_empty(), "table needs (0,0)");
        let t_len = dims[0].len();
        assert!(dims.iter().all(|r| r.len() == t_len), "ragged table");
        TorTable {
            s_max: dims.len() - 1,
            t_max: t_len - 1,
            dims,
            provenance,
        }
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn get(&self, s: usize, t: usize) -> u64 {
        self.dims.get(s).and_then(|r| r.get(t)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, s: usize, t: usize, d: u64) {
        self.dims[s][t] = d;
    }

    /// Entries `(s, t)` with `s + t = c` inside the table.
    pub fn anti_diagonal(&self, c: usize) -> Vec<(usize, usize, u64)> {
        (0..=c.min(self.s_max))
            .filter(|&s| c - s <= self.t_max)
            .map(|s| (s, c - s, self.get(s, c - s)))
            .collect()
    }

    /// Poincaré series in total degree `s + t`, keeping degrees `≤ trunc`.
    pub fn total_degree_series(&self, trunc: usize) -> crate::series::TruncSeries {
        let mut c = vec![0u64; trunc + 1];
        for s in 0..=self.s_max {
            for t in 0..=self.t_max {
                if s + t <= trunc {
                    c[s + t] += self.dims[s][t];
                }
            }
        }
        crate::series::TruncSeries::from_coeffs(trunc, c)
    }

    /// Bigraded convolution (the Künneth formula over F2), on the common range.
    pub fn convolve(&self, other: &TorTable) -> TorTable {
        let (sm, tm) = (self.s_max.min(other.s_max), self.t_max.min(other.t_max));
        let mut dims = vec![vec![0u64; tm + 1]; sm + 1];
        for s1 in 0..=sm {
            for t1 in 0..=tm {
                let a = self.dims[s1][t1];
                if a == 0 {
                    continue;
                }
                for s2 in 0..=sm - s1 {
                    for t2 in 0..=tm - t1 {
                        dims[s1 + s2][t1 + t2] += a * other.dims[s2][t2];
                    }
                }
            }
        }
        let provenance = if self.provenance == Provenance::Analytic && other.provenance == Provenance::Analytic {
            Provenance::Analytic
        } else {
            Provenance::Computed
        };
        TorTable::new(dims, provenance)
    }

    /// Multiplies by the exterior algebra `(1 + σ)^r` on torus classes in `(1, 0)`.
    pub fn with_torus(&self, rank: usize) -> TorTable {
        let mut ext = vec![vec![0u64; self.t_max + 1]; self.s_max + 1];
        for (j, row) in ext.iter_mut().enumerate() {
            row[0] = crate::divided_power::binomial(rank as u64, j as u64)
                .to_u64()
                .expect("binomial fits u64");
        }
        let mut out = self.convolve(&TorTable::new(ext, Provenance::Analytic));
        out.provenance = self.provenance;
        out
    }

    /// Aligned grid with `t` decreasing down the rows and `s` across, as in an
    /// `E_1`/`E_2` chart.
    pub fn to_text_grid(&self) -> String {
        let width = self
            .dims
            .iter()
            .flatten()
            .map(|d| d.to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.s_max.to_string().len());
        let tw = self.t_max.to_string().len().max(3);
        let mut out = String::new();
        let _ = write!(out, "{:>tw$} |", "t\\s");
        for s in 0..=self.s_max {
            let _ = write!(out, " {s:>width$}");
        }
        out.push('\n');
        for t in (0..=self.t_max).rev() {
            let _ = write!(out, "{t:>tw$} |");
            for s in 0..=self.s_max {
                let _ = write!(out, " {:>width$}", self.dims[s][t]);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }
}

impl Serialize for TorTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut entries = Vec::new();
        for s in 0..=self.s_max {
            for t in 0..=self.t_max {
                entries.push([s as u64, t as u64, self.dims[s][t]]);
            }
        }
        let mut st = serializer.serialize_struct("TorTable", 2)?;
        st.serialize_field("dims", &entries)?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

/// `Tor_{s,t}` by bar homology, `s ≤ S`, `t ≤ N`, torus factor convolved in.
pub fn tor_dims(a: &PresentedAlgebra, s_max: usize, t_max: usize) -> Result<TorTable, BarError> {
    let bar = build_bar(a, s_max + 1, t_max)?;
    Ok(tor_from_bar(&bar, s_max).with_torus(a.torus_rank))
}

/// As [`tor_dims`], refusing instances whose bar complex exceeds `cap` words.
pub fn tor_dims_capped(a: &PresentedAlgebra, s_max: usize, t_max: usize, cap: u128) -> Result<TorTable, BarError> {
    a.require_connected()?;
    let needed = bar_size_for_tor(&a.truncated(t_max.min(a.trunc)), s_max, t_max.min(a.trunc));
    if needed > cap {
        return Err(BarError::SizeCap { needed, cap });
    }
    tor_dims(a, s_max, t_max)
}

/// Connected `Tor` from an already built complex with `s_max ≥ S + 1`.
pub fn tor_from_bar(bar: &BarComplex, s_max: usize) -> TorTable {
    assert!(bar.s_max > s_max, "need the cell above the top row");
    let t_max = bar.t_max;
    let cells: Vec<(usize, usize)> = (1..=s_max + 1)
        .flat_map(|s| (0..=t_max).map(move |t| (s, t)))
        .collect();
    let ranks: HashMap<(usize, usize), usize> = cells
        .par_iter()
        .map(|&(s, t)| ((s, t), bar.differential_rank(s, t)))
        .collect();
    let mut dims = vec![vec![0u64; t_max + 1]; s_max + 1];
    for (s, row) in dims.iter_mut().enumerate() {
        for (t, entry) in row.iter_mut().enumerate() {
            let c = bar.basis(s, t).len();
            let out = ranks.get(&(s, t)).copied().unwrap_or(0);
            let inc = ranks.get(&(s + 1, t)).copied().unwrap_or(0);
            *entry = (c - out - inc) as u64;
        }
    }
    TorTable::new(dims, Provenance::Computed)
}

/// `∏_g (1 + σ α^{|g|}) · (1 + σ)^r` expanded into a table.
pub fn analytic_tor(a: &PresentedAlgebra, s_max: usize, t_max: usize) -> TorTable {
    let mut b = BiSeries::one(s_max, t_max);
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &g in &a.generator_degrees {
        *mult.entry(g).or_default() += 1;
    }
    for (g, m) in mult {
        b.mul_exterior_factor(g, m);
    }
    b.mul_exterior_factor(0, a.torus_rank as u64);
    let dims = (0..=s_max)
        .map(|s| {
            (0..=t_max)
                .map(|t| b.coeff(s, t).to_u64().expect("Tor dimension fits u64"))
                .collect()
        })
        .collect();
    TorTable::new(dims, Provenance::Analytic)
}

/// Whether the table agrees, in total degrees `≤ ℓ+1`, with the exterior
/// algebra on its own `s = 1` column.
pub fn tor_one_generated_check(table: &TorTable, up_to_degree: usize) -> Result<bool, BarError> {
    let needed = up_to_degree + 1;
    if table.s_max < needed || table.t_max < needed {
        return Err(BarError::IncompleteTable {
            s_max: table.s_max,
            t_max: table.t_max,
            needed,
        });
    }
    let mut b = BiSeries::one(needed, needed);
    for t in 0..=needed {
        b.mul_exterior_factor(t, table.get(1, t));
    }
    for s in 0..=needed {
        for t in 0..=needed - s {
            if b.coeff(s, t) != table.get(s, t).into() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The edge map `Q(A)_ℓ → Tor_{1,ℓ}`, `[a] ↦` class of the bar word `[a]`.
#[derive(Clone, Debug)]
pub struct EdgeHom {
    pub degree: usize,
    pub q_dim: usize,
    pub tor1_dim: usize,
    /// `I_ℓ → Tor_{1,ℓ}` on the monomial basis of degree `ℓ`.
    pub on_ideal: LinMap,
    /// The induced map on indecomposables.
    pub on_indecomposables: LinMap,
}

impl EdgeHom {
    pub fn rank(&self) -> usize {
        self.on_indecomposables.rank(self.degree as i64).expect("degree in range")
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.q_dim
    }

    /// Tor class of a degree-`ℓ` monomial given by its exponent vector.
    pub fn image_of_monomial(&self, bar_mono: &MonomialBasis, exps: &[u32]) -> Option<F2Vector> {
        let m = bar_mono.index_of(exps)?;
        let local = m - bar_mono.in_degree(self.degree).start;
        let n = self.on_ideal.source().dim(self.degree as i64);
        self.on_ideal
            .apply(self.degree as i64, &F2Vector::unit(n, local))
            .ok()
    }
}

pub fn edge_hom(a: &PresentedAlgebra, degree: usize) -> Result<EdgeHom, BarError> {
    if degree == 0 || degree > a.trunc {
        return Err(BarError::DegreeOutOfRange(degree));
    }
    let bar = build_bar(a, 2, degree)?;
    let boundary = bar.differential_block(2, degree);
    edge_hom_with_boundary(&bar, degree, &boundary)
}

/// [`edge_hom`] against an explicit boundary block `d: (2,ℓ) → (1,ℓ)`.
pub fn edge_hom_with_boundary(bar: &BarComplex, degree: usize, boundary: &BitMatrix) -> Result<EdgeHom, BarError> {
    let mono = bar.monomials();
    let ideal: Vec<usize> = mono.in_degree(degree).collect();
    let n = ideal.len();
    let words = bar.basis(1, degree);
    if boundary.rows() != words.len() {
        return Err(LinAlgError::IncompatibleShapes(format!(
            "boundary has {} rows, cell (1,{degree}) has {} words",
            boundary.rows(),
            words.len()
        ))
        .into());
    }
    // position of the one-letter word [m] in the bar cell
    let word_pos: HashMap<u32, usize> = words.iter().enumerate().map(|(i, w)| (w.factors[0], i)).collect();

    let tor1 = QuotientMap::new(words.len(), &boundary.image_basis());
    let mut decomposables = Vec::new();
    for a in 1..degree {
        for x in mono.in_degree(a) {
            for y in mono.in_degree(degree - a) {
                if let Some(p) = mono.multiply(x, y) {
                    decomposables.push(F2Vector::unit(n, p - ideal[0]));
                }
            }
        }
    }
    let q = QuotientMap::new(n, &decomposables);

    let word_of = |local: usize| F2Vector::unit(words.len(), word_pos[&(ideal[local] as u32)]);
    let ideal_cols: Vec<F2Vector> = (0..n).map(|c| tor1.project(&word_of(c))).collect();
    let q_cols: Vec<F2Vector> = q.complement().iter().map(|&c| tor1.project(&word_of(c))).collect();

    let trunc = bar.t_max();
    let labels_ideal: Vec<String> = ideal.iter().map(|&m| mono.label(m)).collect();
    let labels_q: Vec<String> = q.complement().iter().map(|&c| format!("[{}]", labels_ideal[c])).collect();
    let labels_tor: Vec<String> = tor1
        .complement()
        .iter()
        .map(|&c| bar.word_label(&words[c]))
        .collect();
    let src_i = GradedVS::concentrated(trunc, degree, labels_ideal)?;
    let src_q = GradedVS::concentrated(trunc, degree, labels_q)?;
    let tgt = GradedVS::concentrated(trunc, degree, labels_tor)?;
    let on_ideal = LinMap::new(
        src_i,
        tgt.clone(),
        0,
        BTreeMap::from([(degree, BitMatrix::from_columns(tor1.quotient_dim(), &ideal_cols))]),
    )?;
    let on_indecomposables = LinMap::new(
        src_q,
        tgt,
        0,
        BTreeMap::from([(degree, BitMatrix::from_columns(tor1.quotient_dim(), &q_cols))]),
    )?;
    Ok(EdgeHom {
        degree,
        q_dim: q.quotient_dim(),
        tor1_dim: tor1.quotient_dim(),
        on_ideal,
        on_indecomposables,
    })
}
