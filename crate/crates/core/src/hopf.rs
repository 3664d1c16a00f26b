//! Truncated graded Hopf algebras over F2 given by structure constants.
//!
//! A [`StructuredHopf`] has a finite homogeneous basis in degrees `0..=N`,
//! indexed globally in degree-major order. Products and coproducts are kept
//! sparsely: `e_i · e_j = Σ e_k` and `Δ e_k = Σ e_i ⊗ e_j`. Any term that would
//! land above degree `N` is discarded, and every axiom is only asserted in
//! total degree `≤ N`.
//!
//! Group algebras of free abelian groups are never materialized; they are
//! carried by a [`Pi0Descriptor`] next to the connected part.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2linalg::{BitMatrix, F2Vector, GradedVS, LinAlgError, LinMap, QuotientMap};

#[derive(Debug, Error)]
pub enum HopfError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("degree {degree} outside 1..={trunc}")]
    DegreeOutOfRange { degree: usize, trunc: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("coproduct is not cocommutative on {0}")]
    NotCocommutative(String),
    #[error("degree 0 has dimension {0} but no pi0 descriptor accounts for it")]
    NonConnectedWithoutPi0(usize),
    #[error("materialized degree 0 of dimension {dim} conflicts with symbolic pi0 of rank {rank}")]
    Pi0Conflict { dim: usize, rank: usize },
    #[error("antipode recursion inconsistent on {0}")]
    AntipodeInconsistent(String),
    #[error("malformed JSON model: {0}")]
    Json(#[from] serde_json::Error),
}

/// The group of components. `FreeAbelian { rank }` stands for `F2[Z^rank]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pi0Descriptor {
    #[default]
    Trivial,
    FreeAbelian { rank: usize },
}

impl Pi0Descriptor {
    pub fn rank(&self) -> usize {
        match *self {
            Pi0Descriptor::Trivial => 0,
            Pi0Descriptor::FreeAbelian { rank } => rank,
        }
    }
}

/// A sum of basis elements.
pub type Element = BTreeSet<usize>;
/// A sum of pure tensors of basis elements.
pub type Tensor2 = BTreeSet<(usize, usize)>;
pub type Tensor3 = BTreeSet<(usize, usize, usize)>;

pub(crate) fn toggle<T: Ord>(set: &mut BTreeSet<T>, x: T) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

fn xor_into<T: Ord + Clone>(acc: &mut BTreeSet<T>, other: &BTreeSet<T>) {
    for x in other {
        toggle(acc, x.clone());
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredHopf {
    space: GradedVS,
    degree_of: Vec<usize>,
    offsets: Vec<usize>,
    unit: usize,
    counit: Element,
    product: BTreeMap<(usize, usize), Element>,
    coproduct: BTreeMap<usize, Tensor2>,
    pi0: Pi0Descriptor,
}

impl StructuredHopf {
    /// Assembles a structure from raw terms. Repeated terms cancel in pairs and
    /// terms above the truncation are dropped; no axioms are checked here.
    pub fn new(
        space: GradedVS,
        unit: usize,
        counit: impl IntoIterator<Item = usize>,
        product_terms: impl IntoIterator<Item = (usize, usize, usize)>,
        coproduct_terms: impl IntoIterator<Item = (usize, usize, usize)>,
        pi0: Pi0Descriptor,
    ) -> Result<Self, HopfError> {
        let mut degree_of = Vec::new();
        let mut offsets = Vec::new();
        for d in 0..=space.trunc_degree() {
            offsets.push(degree_of.len());
            degree_of.extend(std::iter::repeat_n(d, space.dim(d as i64)));
        }
        offsets.push(degree_of.len());
        let n = degree_of.len();
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(HopfError::InvalidModel(format!("basis index {i} out of range 0..{n}")))
            }
        };
        check(unit)?;
        if degree_of[unit] != 0 {
            return Err(HopfError::InvalidModel("unit must lie in degree 0".into()));
        }
        let mut eps = Element::new();
        for c in counit {
            check(c)?;
            if degree_of[c] != 0 {
                return Err(HopfError::InvalidModel(format!(
                    "counit is nonzero on {} outside degree 0",
                    space_label(&space, &degree_of, &offsets, c)
                )));
            }
            toggle(&mut eps, c);
        }
        let mut product: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for (i, j, k) in product_terms {
            check(i)?;
            check(j)?;
            check(k)?;
            if degree_of[i] + degree_of[j] != degree_of[k] {
                return Err(HopfError::InvalidModel(format!(
                    "product term ({i},{j})->{k} is not homogeneous"
                )));
            }
            toggle(product.entry((i, j)).or_default(), k);
        }
        product.retain(|_, v| !v.is_empty());
        let mut coproduct: BTreeMap<usize, Tensor2> = BTreeMap::new();
        for (k, i, j) in coproduct_terms {
            check(i)?;
            check(j)?;
            check(k)?;
            if degree_of[i] + degree_of[j] != degree_of[k] {
                return Err(HopfError::InvalidModel(format!(
                    "coproduct term {k}->({i},{j}) is not homogeneous"
                )));
            }
            toggle(coproduct.entry(k).or_default(), (i, j));
        }
        coproduct.retain(|_, v| !v.is_empty());
        Ok(StructuredHopf {
            space,
            degree_of,
            offsets,
            unit,
            counit: eps,
            product,
            coproduct,
            pi0,
        })
    }

    /// `F2` alone, truncated at `trunc`.
    pub fn trivial(trunc: usize) -> Self {
        let mut labels = vec![Vec::new(); trunc + 1];
        labels[0].push("1".to_string());
        let space = GradedVS::new(labels).expect("single label");
        StructuredHopf::new(space, 0, [0], [(0, 0, 0)], [(0, 0, 0)], Pi0Descriptor::Trivial)
            .expect("trivial structure is well formed")
    }

    /// `F2[x_1, ..., x_n]` with every generator primitive, monomials of degree `≤ trunc`.
    pub fn polynomial(generator_degrees: &[usize], trunc: usize) -> Result<Self, HopfError> {
        if generator_degrees.contains(&0) {
            return Err(HopfError::InvalidModel("generators must have positive degree".into()));
        }
        let mono = crate::bar_tor::MonomialBasis::new(generator_degrees, trunc);
        let mut labels = vec![Vec::new(); trunc + 1];
        for m in 0..mono.len() {
            labels[mono.degree(m)].push(mono.label(m));
        }
        let space = GradedVS::new(labels)?;
        let mut product = Vec::new();
        let mut coproduct = Vec::new();
        for a in 0..mono.len() {
            for b in 0..mono.len() {
                if let Some(c) = mono.multiply(a, b) {
                    product.push((a, b, c));
                }
            }
            // Δ x^e = Σ_{f ≤ e} Π binom(e_i, f_i) x^f ⊗ x^{e-f}
            let e = mono.exponents(a).to_vec();
            let mut f = vec![0u32; e.len()];
            loop {
                let odd = e
                    .iter()
                    .zip(&f)
                    .all(|(&ei, &fi)| crate::divided_power::binom_mod2(ei as u64, fi as u64) == 1);
                if odd {
                    let g: Vec<u32> = e.iter().zip(&f).map(|(ei, fi)| ei - fi).collect();
                    let left = mono.index_of(&f).expect("divisor in range");
                    let right = mono.index_of(&g).expect("divisor in range");
                    coproduct.push((a, left, right));
                }
                // odometer over f ≤ e
                let mut pos = 0;
                loop {
                    if pos == f.len() {
                        break;
                    }
                    if f[pos] < e[pos] {
                        f[pos] += 1;
                        break;
                    }
                    f[pos] = 0;
                    pos += 1;
                }
                if pos == f.len() {
                    break;
                }
            }
        }
        StructuredHopf::new(space, 0, [0], product, coproduct, Pi0Descriptor::Trivial)
    }

    /// `a ⊗ b` with componentwise structure, truncated at `min` of the truncations.
    pub fn tensor(a: &StructuredHopf, b: &StructuredHopf) -> Result<Self, HopfError> {
        let trunc = a.trunc_degree().min(b.trunc_degree());
        let mut labels = vec![Vec::new(); trunc + 1];
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (d, in_degree) in labels.iter_mut().enumerate() {
            for da in 0..=d {
                for i in a.basis_in_degree(da) {
                    for j in b.basis_in_degree(d - da) {
                        in_degree.push(format!("{}⊗{}", a.label(i), b.label(j)));
                        pairs.push((i, j));
                    }
                }
            }
        }
        let index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
        let space = GradedVS::new(labels)?;
        let mut product = Vec::new();
        let mut coproduct = Vec::new();
        for (n1, &(i1, j1)) in pairs.iter().enumerate() {
            for (n2, &(i2, j2)) in pairs.iter().enumerate() {
                for &ka in a.mul_basis(i1, i2).iter() {
                    for &kb in b.mul_basis(j1, j2).iter() {
                        if let Some(&k) = index.get(&(ka, kb)) {
                            product.push((n1, n2, k));
                        }
                    }
                }
            }
            for &(ai, aj) in a.coproduct_basis(i1).iter() {
                for &(bi, bj) in b.coproduct_basis(j1).iter() {
                    if let (Some(&l), Some(&r)) = (index.get(&(ai, bi)), index.get(&(aj, bj))) {
                        coproduct.push((n1, l, r));
                    }
                }
            }
        }
        let counit = pairs
            .iter()
            .enumerate()
            .filter(|(_, (i, j))| a.counit.contains(i) && b.counit.contains(j))
            .map(|(n, _)| n);
        let unit = index[&(a.unit, b.unit)];
        let pi0 = match a.pi0.rank() + b.pi0.rank() {
            0 => Pi0Descriptor::Trivial,
            r => Pi0Descriptor::FreeAbelian { rank: r },
        };
        StructuredHopf::new(space, unit, counit, product, coproduct, pi0)
    }

    /// The regrading `(−)^φ`: degree `n` moves to degree `2n`, structure constants
    /// unchanged, keeping what lands in degree `≤ N`.
    pub fn frobenius_double(&self) -> StructuredHopf {
        let trunc = self.trunc_degree();
        let mut labels = vec![Vec::new(); trunc + 1];
        for d in 0..=trunc / 2 {
            labels[2 * d] = self.space.labels(d).to_vec();
        }
        let space = GradedVS::new(labels).expect("labels already distinct per degree");
        let keep = self.offsets[trunc / 2 + 1];
        let product = self
            .product
            .iter()
            .filter(|((i, j), _)| *i < keep && *j < keep)
            .flat_map(|(&(i, j), ks)| ks.iter().filter(move |&&k| k < keep).map(move |&k| (i, j, k)));
        let coproduct = self
            .coproduct
            .iter()
            .filter(|(k, _)| **k < keep)
            .flat_map(|(&k, ts)| ts.iter().map(move |&(i, j)| (k, i, j)));
        StructuredHopf::new(
            space,
            self.unit,
            self.counit.iter().copied(),
            product.collect::<Vec<_>>(),
            coproduct.collect::<Vec<_>>(),
            self.pi0,
        )
        .expect("regrading preserves homogeneity")
    }

    pub fn space(&self) -> &GradedVS {
        &self.space
    }

    pub fn trunc_degree(&self) -> usize {
        self.space.trunc_degree()
    }

    pub fn pi0(&self) -> Pi0Descriptor {
        self.pi0
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn counit(&self) -> &Element {
        &self.counit
    }

    pub fn basis_len(&self) -> usize {
        self.degree_of.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degree_of[i]
    }

    pub fn basis_in_degree(&self, d: usize) -> std::ops::Range<usize> {
        if d > self.trunc_degree() {
            return 0..0;
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn label(&self, i: usize) -> &str {
        let d = self.degree_of[i];
        &self.space.labels(d)[i - self.offsets[d]]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        (0..self.basis_len()).find(|&i| self.label(i) == label)
    }

    /// Position of basis element `i` inside its degree.
    pub fn local_index(&self, i: usize) -> usize {
        i - self.offsets[self.degree_of[i]]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        self.product.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn coproduct_basis(&self, k: usize) -> Tensor2 {
        self.coproduct.get(&k).cloned().unwrap_or_default()
    }

    pub fn product_terms(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.product
            .iter()
            .flat_map(|(&(i, j), ks)| ks.iter().map(move |&k| (i, j, k)))
    }

    pub fn coproduct_terms(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.coproduct
            .iter()
            .flat_map(|(&k, ts)| ts.iter().map(move |&(i, j)| (k, i, j)))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::new();
        for &i in a {
            for &j in b {
                if let Some(ks) = self.product.get(&(i, j)) {
                    xor_into(&mut out, ks);
                }
            }
        }
        out
    }

    pub fn coproduct(&self, a: &Element) -> Tensor2 {
        let mut out = Tensor2::new();
        for &k in a {
            if let Some(ts) = self.coproduct.get(&k) {
                xor_into(&mut out, ts);
            }
        }
        out
    }

    /// Product in `H ⊗ H`, dropping terms whose factors leave the truncation.
    pub fn mul_tensor(&self, a: &Tensor2, b: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::new();
        for &(a1, a2) in a {
            for &(b1, b2) in b {
                let (l, r) = (self.mul_basis(a1, b1), self.mul_basis(a2, b2));
                for &x in &l {
                    for &y in &r {
                        toggle(&mut out, (x, y));
                    }
                }
            }
        }
        out
    }

    pub fn counit_of(&self, a: &Element) -> bool {
        a.iter().filter(|i| self.counit.contains(i)).count() % 2 == 1
    }

    pub fn is_connected(&self) -> bool {
        self.space.dim(0) == 1
    }

    /// Toggles the coefficient of `e_k` in `e_i · e_j`.
    pub fn toggle_product_term(&mut self, i: usize, j: usize, k: usize) {
        let entry = self.product.entry((i, j)).or_default();
        toggle(entry, k);
        if entry.is_empty() {
            self.product.remove(&(i, j));
        }
    }

    /// Toggles the coefficient of `e_i ⊗ e_j` in `Δ e_k`.
    pub fn toggle_coproduct_term(&mut self, k: usize, i: usize, j: usize) {
        let entry = self.coproduct.entry(k).or_default();
        toggle(entry, (i, j));
        if entry.is_empty() {
            self.coproduct.remove(&k);
        }
    }

    pub fn toggle_counit(&mut self, i: usize) {
        toggle(&mut self.counit, i);
    }

    /// Labels of a sum, for reports.
    pub fn describe(&self, a: &Element) -> String {
        if a.is_empty() {
            return "0".into();
        }
        a.iter().map(|&i| self.label(i)).collect::<Vec<_>>().join(" + ")
    }

    pub fn describe_tensor(&self, t: &Tensor2) -> String {
        if t.is_empty() {
            return "0".into();
        }
        t.iter()
            .map(|&(i, j)| format!("{}|{}", self.label(i), self.label(j)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn from_json(text: &str) -> Result<Self, HopfError> {
        let model: HopfModelJson = serde_json::from_str(text)?;
        model.into_hopf()
    }

    pub fn to_json_model(&self) -> HopfModelJson {
        let one = |(a, b, c)| [a as i64, b as i64, c as i64, 1];
        HopfModelJson {
            trunc: self.trunc_degree(),
            basis: (0..=self.trunc_degree())
                .map(|d| self.space.labels(d).to_vec())
                .collect(),
            product: self.product_terms().map(one).collect(),
            coproduct: self.coproduct_terms().map(one).collect(),
            pi0: self.pi0,
            unit: Some(self.unit),
            counit: Some(self.counit.iter().copied().collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_model()).expect("model serializes")
    }
}

fn space_label(space: &GradedVS, degree_of: &[usize], offsets: &[usize], i: usize) -> String {
    let d = degree_of[i];
    space.labels(d)[i - offsets[d]].clone()
}

/// On-disk model format. Product entries are `[i, j, k, c]` meaning
/// `e_i · e_j ∋ c·e_k`; coproduct entries `[k, i, j, c]` meaning
/// `Δ e_k ∋ c·e_i ⊗ e_j`; coefficients are reduced mod 2. Indices run over the
/// basis flattened degree by degree. `unit` defaults to the first degree-0
/// element and `counit` to the unit alone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfModelJson {
    pub trunc: usize,
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub product: Vec<[i64; 4]>,
    #[serde(default)]
    pub coproduct: Vec<[i64; 4]>,
    #[serde(default)]
    pub pi0: Pi0Descriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<usize>>,
}

impl HopfModelJson {
    pub fn into_hopf(self) -> Result<StructuredHopf, HopfError> {
        if self.basis.len() > self.trunc + 1 {
            return Err(HopfError::InvalidModel(format!(
                "basis lists {} degrees but trunc is {}",
                self.basis.len(),
                self.trunc
            )));
        }
        let mut labels = self.basis;
        labels.resize(self.trunc + 1, Vec::new());
        let space = GradedVS::new(labels)?;
        if space.dim(0) == 0 {
            return Err(HopfError::InvalidModel("degree 0 is empty".into()));
        }
        let unit = self.unit.unwrap_or(0);
        let counit = self.counit.unwrap_or_else(|| vec![unit]);
        let idx = |x: i64| -> Result<usize, HopfError> {
            usize::try_from(x).map_err(|_| HopfError::InvalidModel(format!("negative index {x}")))
        };
        let mut product = Vec::new();
        for [i, j, k, c] in self.product {
            if c.rem_euclid(2) == 1 {
                product.push((idx(i)?, idx(j)?, idx(k)?));
            }
        }
        let mut coproduct = Vec::new();
        for [k, i, j, c] in self.coproduct {
            if c.rem_euclid(2) == 1 {
                coproduct.push((idx(k)?, idx(i)?, idx(j)?));
            }
        }
        StructuredHopf::new(space, unit, counit, product, coproduct, self.pi0)
    }
}

/// The identity families checked by [`check_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Unit,
    Counit,
    CounitMultiplicative,
    Commutativity,
    Cocommutativity,
    Coassociativity,
    Bialgebra,
    Associativity,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Unit => "unit",
            Axiom::Counit => "counit",
            Axiom::CounitMultiplicative => "counit_multiplicative",
            Axiom::Commutativity => "commutativity",
            Axiom::Cocommutativity => "cocommutativity",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Bialgebra => "bialgebra",
            Axiom::Associativity => "associativity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed identity with the basis elements witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed_axioms(&self) -> BTreeSet<Axiom> {
        self.violations.iter().map(|v| v.axiom).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// Return after the first violation.
    pub stop_at_first: bool,
    /// Only evaluate identities whose witness tuple contains one of these
    /// basis elements. Any violation found this way is a genuine violation.
    pub involving: Option<BTreeSet<usize>>,
}

/// Checks unit, counit, (co)commutativity, (co)associativity and the bialgebra
/// law on every basis tuple within the truncation.
pub fn check_axioms(h: &StructuredHopf) -> AxiomReport {
    check_axioms_with(h, &CheckOptions::default())
}

pub fn check_axioms_with(h: &StructuredHopf, opts: &CheckOptions) -> AxiomReport {
    let mut checker = Checker {
        h,
        opts,
        report: AxiomReport::default(),
    };
    checker.run();
    checker.report
}

struct Checker<'a> {
    h: &'a StructuredHopf,
    opts: &'a CheckOptions,
    report: AxiomReport,
}

impl Checker<'_> {
    fn done(&self) -> bool {
        self.opts.stop_at_first && !self.report.violations.is_empty()
    }

    fn in_scope(&self, witnesses: &[usize]) -> bool {
        match &self.opts.involving {
            None => true,
            Some(set) => witnesses.iter().any(|w| set.contains(w)),
        }
    }

    fn fail(&mut self, axiom: Axiom, witnesses: &[usize]) {
        let witnesses = witnesses.iter().map(|&i| self.h.label(i).to_string()).collect();
        self.report.violations.push(Violation { axiom, witnesses });
    }

    fn run(&mut self) {
        let steps: [fn(&mut Self); 8] = [
            Self::unit,
            Self::counit,
            Self::counit_multiplicative,
            Self::commutativity,
            Self::cocommutativity,
            Self::coassociativity,
            Self::bialgebra,
            Self::associativity,
        ];
        for step in steps {
            if self.done() {
                return;
            }
            step(self);
        }
    }

    fn unit(&mut self) {
        let h = self.h;
        let u = h.unit;
        if self.in_scope(&[u]) && h.coproduct_basis(u) != Tensor2::from([(u, u)]) {
            self.fail(Axiom::Unit, &[u]);
        }
        for x in 0..h.basis_len() {
            if self.done() {
                return;
            }
            if !self.in_scope(&[u, x]) {
                continue;
            }
            let one = Element::from([x]);
            if h.mul_basis(u, x) != one || h.mul_basis(x, u) != one {
                self.fail(Axiom::Unit, &[x]);
            }
        }
    }

    fn counit(&mut self) {
        let h = self.h;
        if self.in_scope(&[h.unit]) && !h.counit.contains(&h.unit) {
            self.fail(Axiom::Counit, &[h.unit]);
        }
        for x in 0..h.basis_len() {
            if self.done() {
                return;
            }
            if !self.in_scope(&[x]) {
                continue;
            }
            let mut left = Element::new();
            let mut right = Element::new();
            for (a, b) in h.coproduct_basis(x) {
                if h.counit.contains(&a) {
                    toggle(&mut left, b);
                }
                if h.counit.contains(&b) {
                    toggle(&mut right, a);
                }
            }
            let one = Element::from([x]);
            if left != one || right != one {
                self.fail(Axiom::Counit, &[x]);
            }
        }
    }

    fn counit_multiplicative(&mut self) {
        let h = self.h;
        let zero: Vec<usize> = h.basis_in_degree(0).collect();
        for &x in &zero {
            for &y in &zero {
                if self.done() {
                    return;
                }
                if !self.in_scope(&[x, y]) {
                    continue;
                }
                let lhs = h.counit_of(&h.mul_basis(x, y));
                if lhs != (h.counit.contains(&x) && h.counit.contains(&y)) {
                    self.fail(Axiom::CounitMultiplicative, &[x, y]);
                }
            }
        }
    }

    fn commutativity(&mut self) {
        let h = self.h;
        let n = h.trunc_degree();
        for x in 0..h.basis_len() {
            for y in x + 1..h.basis_len() {
                if h.degree(x) + h.degree(y) > n {
                    break;
                }
                if self.done() {
                    return;
                }
                if self.in_scope(&[x, y]) && h.mul_basis(x, y) != h.mul_basis(y, x) {
                    self.fail(Axiom::Commutativity, &[x, y]);
                }
            }
        }
    }

    fn cocommutativity(&mut self) {
        let h = self.h;
        for x in 0..h.basis_len() {
            if self.done() {
                return;
            }
            if !self.in_scope(&[x]) {
                continue;
            }
            let d = h.coproduct_basis(x);
            if d.iter().any(|&(a, b)| !d.contains(&(b, a))) {
                self.fail(Axiom::Cocommutativity, &[x]);
            }
        }
    }

    fn coassociativity(&mut self) {
        let h = self.h;
        for x in 0..h.basis_len() {
            if self.done() {
                return;
            }
            if !self.in_scope(&[x]) {
                continue;
            }
            let mut left = Tensor3::new();
            let mut right = Tensor3::new();
            for (a, b) in h.coproduct_basis(x) {
                for (a1, a2) in h.coproduct_basis(a) {
                    toggle(&mut left, (a1, a2, b));
                }
                for (b1, b2) in h.coproduct_basis(b) {
                    toggle(&mut right, (a, b1, b2));
                }
            }
            if left != right {
                self.fail(Axiom::Coassociativity, &[x]);
            }
        }
    }

    fn bialgebra(&mut self) {
        let h = self.h;
        let n = h.trunc_degree();
        for x in 0..h.basis_len() {
            for y in 0..h.basis_len() {
                if h.degree(x) + h.degree(y) > n {
                    break;
                }
                if self.done() {
                    return;
                }
                if !self.in_scope(&[x, y]) {
                    continue;
                }
                let lhs = h.coproduct(&h.mul_basis(x, y));
                let rhs = h.mul_tensor(&h.coproduct_basis(x), &h.coproduct_basis(y));
                if lhs != rhs {
                    self.fail(Axiom::Bialgebra, &[x, y]);
                }
            }
        }
    }

    fn associativity(&mut self) {
        let h = self.h;
        let n = h.trunc_degree();
        for x in 0..h.basis_len() {
            for y in 0..h.basis_len() {
                if h.degree(x) + h.degree(y) > n {
                    break;
                }
                let xy = h.mul_basis(x, y);
                for z in 0..h.basis_len() {
                    if h.degree(x) + h.degree(y) + h.degree(z) > n {
                        break;
                    }
                    if self.done() {
                        return;
                    }
                    if !self.in_scope(&[x, y, z]) {
                        continue;
                    }
                    let left = h.mul(&xy, &Element::from([z]));
                    let right = h.mul(&Element::from([x]), &h.mul_basis(y, z));
                    if left != right {
                        self.fail(Axiom::Associativity, &[x, y, z]);
                    }
                }
            }
        }
    }
}

fn check_degree(h: &StructuredHopf, degree: usize) -> Result<(), HopfError> {
    if degree == 0 || degree > h.trunc_degree() {
        return Err(HopfError::DegreeOutOfRange {
            degree,
            trunc: h.trunc_degree(),
        });
    }
    Ok(())
}

/// Basis (coordinates over the degree-`d` basis) of the primitives
/// `{x : Δx = x⊗1 + 1⊗x}` in degree `d ≥ 1`.
pub fn primitives(h: &StructuredHopf, degree: usize) -> Result<Vec<F2Vector>, HopfError> {
    check_degree(h, degree)?;
    let src: Vec<usize> = h.basis_in_degree(degree).collect();
    let mut rows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in 0..=degree {
        for i in h.basis_in_degree(a) {
            for j in h.basis_in_degree(degree - a) {
                let next = rows.len();
                rows.insert((i, j), next);
            }
        }
    }
    let mut m = BitMatrix::zeros(rows.len(), src.len());
    for (c, &x) in src.iter().enumerate() {
        let mut reduced = h.coproduct_basis(x);
        toggle(&mut reduced, (x, h.unit));
        toggle(&mut reduced, (h.unit, x));
        for t in reduced {
            m.toggle(rows[&t], c);
        }
    }
    Ok(m.kernel_basis())
}

/// Degree-`d` piece of `Q = I/I²` on the connected part.
#[derive(Clone, Debug)]
pub struct Indecomposables {
    pub degree: usize,
    pub ideal_dim: usize,
    pub decomposable_dim: usize,
    pub dim: usize,
    /// `I_d → Q_d`, concentrated in degree `d`.
    pub projection: LinMap,
}

pub fn indecomposables(h: &StructuredHopf, degree: usize) -> Result<Indecomposables, HopfError> {
    check_degree(h, degree)?;
    let basis: Vec<usize> = h.basis_in_degree(degree).collect();
    let n = basis.len();
    let mut products = Vec::new();
    for a in 1..degree {
        for x in h.basis_in_degree(a) {
            for y in h.basis_in_degree(degree - a) {
                let xy = h.mul_basis(x, y);
                if xy.is_empty() {
                    continue;
                }
                let mut v = F2Vector::zeros(n);
                for k in xy {
                    v.toggle(h.local_index(k));
                }
                products.push(v);
            }
        }
    }
    let q = QuotientMap::new(n, &products);
    let trunc = h.trunc_degree();
    let src = GradedVS::concentrated(trunc, degree, h.space.labels(degree).to_vec())?;
    let tgt_labels = q
        .complement()
        .iter()
        .map(|&c| format!("[{}]", h.label(basis[c])))
        .collect();
    let tgt = GradedVS::concentrated(trunc, degree, tgt_labels)?;
    let projection = LinMap::new(src, tgt, 0, BTreeMap::from([(degree, q.matrix())]))?;
    Ok(Indecomposables {
        degree,
        ideal_dim: n,
        decomposable_dim: q.subspace_dim(),
        dim: q.quotient_dim(),
        projection,
    })
}

fn require_cocommutative(h: &StructuredHopf) -> Result<(), HopfError> {
    for x in 0..h.basis_len() {
        let d = h.coproduct_basis(x);
        if d.iter().any(|&(a, b)| !d.contains(&(b, a))) {
            return Err(HopfError::NotCocommutative(h.label(x).to_string()));
        }
    }
    Ok(())
}

/// Class of a symmetric tensor in `ker(1+τ)/im(1+τ)`, read off as the
/// element `Σ x` over its diagonal terms `x⊗x`.
pub fn tate_class(t: &Tensor2) -> Result<Element, HopfError> {
    if t.iter().any(|&(a, b)| !t.contains(&(b, a))) {
        return Err(HopfError::NotCocommutative("tensor is not symmetric".into()));
    }
    Ok(t.iter().filter(|(a, b)| a == b).map(|&(a, _)| a).collect())
}

/// The Verschiebung `v : H → H^φ`, sending `x` of degree `2n` to the Tate class
/// of `Δx` (an element of degree `n` of `H`, placed in degree `2n` of the
/// doubled grading) and odd-degree elements to zero. The target space is
/// [`StructuredHopf::frobenius_double`]'s space.
pub fn verschiebung(h: &StructuredHopf) -> Result<LinMap, HopfError> {
    require_cocommutative(h)?;
    let target = h.frobenius_double();
    let mut blocks = BTreeMap::new();
    for d in (0..=h.trunc_degree()).step_by(2) {
        let src: Vec<usize> = h.basis_in_degree(d).collect();
        let half = d / 2;
        let mut m = BitMatrix::zeros(h.space.dim(half as i64), src.len());
        for (c, &x) in src.iter().enumerate() {
            for y in tate_class(&h.coproduct_basis(x))? {
                m.toggle(h.local_index(y), c);
            }
        }
        blocks.insert(d, m);
    }
    Ok(LinMap::new(h.space.clone(), target.space.clone(), 0, blocks)?)
}

/// `v` applied to an element, as an element of `H` (degree halved).
pub fn verschiebung_element(h: &StructuredHopf, x: &Element) -> Result<Element, HopfError> {
    tate_class(&h.coproduct(x))
}

/// Per-degree dimension of the kernel of `v` on the augmentation ideal.
pub fn verschiebung_kernel_dims(h: &StructuredHopf) -> Result<Vec<usize>, HopfError> {
    let v = verschiebung(h)?;
    let mut dims = vec![0];
    for d in 1..=h.trunc_degree() as i64 {
        dims.push(h.space.dim(d) - v.rank(d)?);
    }
    Ok(dims)
}

/// Checks that `v` is multiplicative and comultiplicative on every basis pair
/// in range, against the doubled structure.
pub fn verschiebung_hopf_map_check(h: &StructuredHopf) -> Result<Vec<Violation>, HopfError> {
    require_cocommutative(h)?;
    let n = h.trunc_degree();
    let v = |x: usize| tate_class(&h.coproduct_basis(x));
    let mut out = Vec::new();
    // H^φ has the same constants, so products of v-images are computed in h
    for x in 0..h.basis_len() {
        for y in 0..h.basis_len() {
            if h.degree(x) + h.degree(y) > n {
                break;
            }
            let lhs = verschiebung_element(h, &h.mul_basis(x, y))?;
            let rhs = h.mul(&v(x)?, &v(y)?);
            if lhs != rhs {
                out.push(Violation {
                    axiom: Axiom::Bialgebra,
                    witnesses: vec![h.label(x).into(), h.label(y).into(), "multiplicative".into()],
                });
            }
        }
        let mut lhs = Tensor2::new();
        for (a, b) in h.coproduct_basis(x) {
            for va in v(a)? {
                for vb in v(b)? {
                    toggle(&mut lhs, (va, vb));
                }
            }
        }
        let rhs = h.coproduct(&v(x)?);
        if lhs != rhs {
            out.push(Violation {
                axiom: Axiom::Bialgebra,
                witnesses: vec![h.label(x).into(), "comultiplicative".into()],
            });
        }
    }
    Ok(out)
}

/// Outcome of [`component_split_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub split: bool,
    /// Rank of the symbolic group-algebra factor `F2[Z^r]` in degree 0.
    pub pi0_rank: usize,
    /// Dimensions of the connected part `h′` by degree.
    pub connected_dims: Vec<usize>,
    pub failures: Vec<String>,
}

/// Checks `H ≅ F2[π₀] ⊗ H′` for a structure whose stored part is the connected
/// component and whose `π₀` is symbolic.
pub fn component_split_check(h: &StructuredHopf) -> Result<SplitReport, HopfError> {
    let dim0 = h.space.dim(0);
    if dim0 != 1 {
        return match h.pi0 {
            Pi0Descriptor::Trivial => Err(HopfError::NonConnectedWithoutPi0(dim0)),
            Pi0Descriptor::FreeAbelian { rank } => Err(HopfError::Pi0Conflict { dim: dim0, rank }),
        };
    }
    let u = h.unit;
    let mut failures = Vec::new();
    if !h.counit.contains(&u) {
        failures.push("counit does not send the unit to 1".to_string());
    }
    if h.coproduct_basis(u) != Tensor2::from([(u, u)]) {
        failures.push("unit is not grouplike".to_string());
    }
    for x in 0..h.basis_len() {
        let one = Element::from([x]);
        if h.mul_basis(u, x) != one || h.mul_basis(x, u) != one {
            failures.push(format!("unit does not act trivially on {}", h.label(x)));
        }
        if x == u {
            continue;
        }
        // x lies in the unit component iff the degree-0 part of Δx is 1⊗x
        let left: Tensor2 = h
            .coproduct_basis(x)
            .into_iter()
            .filter(|&(a, _)| h.degree(a) == 0)
            .collect();
        if left != Tensor2::from([(u, x)]) {
            failures.push(format!("{} is not in the unit component", h.label(x)));
        }
    }
    Ok(SplitReport {
        split: failures.is_empty(),
        pi0_rank: h.pi0.rank(),
        connected_dims: h.space.dims(),
        failures,
    })
}

/// The antipode on the connected part, by `χ(x) = x + Σ χ(x′)x″` over the
/// reduced coproduct, then checked against `Σ x′χ(x″) = ε(x)`.
pub fn antipode(h: &StructuredHopf) -> Result<LinMap, HopfError> {
    if !h.is_connected() {
        return Err(HopfError::NonConnectedWithoutPi0(h.space.dim(0)));
    }
    let u = h.unit;
    let mut chi: Vec<Element> = vec![Element::new(); h.basis_len()];
    chi[u] = Element::from([u]);
    for x in 0..h.basis_len() {
        if x == u {
            continue;
        }
        let mut value = Element::from([x]);
        for (a, b) in h.coproduct_basis(x) {
            if a == x || a == u {
                continue;
            }
            if h.degree(a) >= h.degree(x) {
                return Err(HopfError::AntipodeInconsistent(h.label(x).to_string()));
            }
            let term = h.mul(&chi[a], &Element::from([b]));
            xor_into(&mut value, &term);
        }
        chi[x] = value;
    }
    for x in 0..h.basis_len() {
        let mut lhs = Element::new();
        let mut rhs_l = Element::new();
        for (a, b) in h.coproduct_basis(x) {
            xor_into(&mut lhs, &h.mul(&Element::from([a]), &chi[b]));
            xor_into(&mut rhs_l, &h.mul(&chi[a], &Element::from([b])));
        }
        let expect = if h.counit.contains(&x) {
            Element::from([u])
        } else {
            Element::new()
        };
        if lhs != expect || rhs_l != expect {
            return Err(HopfError::AntipodeInconsistent(h.label(x).to_string()));
        }
    }
    let mut blocks = BTreeMap::new();
    for d in 0..=h.trunc_degree() {
        let basis: Vec<usize> = h.basis_in_degree(d).collect();
        let mut m = BitMatrix::zeros(basis.len(), basis.len());
        for (c, &x) in basis.iter().enumerate() {
            for &y in &chi[x] {
                m.toggle(h.local_index(y), c);
            }
        }
        blocks.insert(d, m);
    }
    Ok(LinMap::new(h.space.clone(), h.space.clone(), 0, blocks)?)
}

/// Evenly graded data over the integers, the input to `Φ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralGraded {
    /// Labels by degree; odd degrees must be empty.
    pub labels: Vec<Vec<String>>,
}

/// An evenly graded Hopf structure over the integers with explicit constants,
/// indices flattened degree by degree as in [`StructuredHopf`].
#[derive(Clone, Debug)]
pub struct IntegralHopf {
    pub graded: IntegralGraded,
    pub unit: usize,
    pub product: Vec<(usize, usize, usize, num_bigint::BigInt)>,
    pub coproduct: Vec<(usize, usize, usize, num_bigint::BigInt)>,
}

/// `Φ^k`: degree `2n` lands in degree `k·n`, reduced mod 2. The result is
/// truncated at `k·⌊N/2⌋` for source truncation `N`.
pub fn phi_regrade(v: &IntegralGraded, k: usize) -> Result<GradedVS, HopfError> {
    if k == 0 {
        return Err(HopfError::InvalidModel("Φ^k needs k ≥ 1".into()));
    }
    if let Some(d) = (0..v.labels.len()).find(|d| d % 2 == 1 && !v.labels[*d].is_empty()) {
        return Err(HopfError::InvalidModel(format!("odd-degree content in degree {d}")));
    }
    let src_trunc = v.labels.len().saturating_sub(1);
    let trunc = k * (src_trunc / 2);
    let mut labels = vec![Vec::new(); trunc + 1];
    for n in 0..=src_trunc / 2 {
        labels[k * n] = v.labels[2 * n].clone();
    }
    Ok(GradedVS::new(labels)?)
}

/// `Φ^k` on structure constants: the regraded space with every integral
/// constant reduced mod 2.
pub fn phi_regrade_hopf(model: &IntegralHopf, k: usize) -> Result<StructuredHopf, HopfError> {
    let space = phi_regrade(&model.graded, k)?;
    let odd = |c: &num_bigint::BigInt| c.bit(0);
    let product: Vec<_> = model
        .product
        .iter()
        .filter(|t| odd(&t.3))
        .map(|t| (t.0, t.1, t.2))
        .collect();
    let coproduct: Vec<_> = model
        .coproduct
        .iter()
        .filter(|t| odd(&t.3))
        .map(|t| (t.0, t.1, t.2))
        .collect();
    StructuredHopf::new(space, model.unit, [model.unit], product, coproduct, Pi0Descriptor::Trivial)
}
