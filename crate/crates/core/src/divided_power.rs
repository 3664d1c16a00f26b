//! The coalgebras `A^1(k)` and their tensor powers `A^n(k)`.
//!
//! `A^1(k)` has basis `β_i(k)` in degree `i·k`, product
//! `β_i β_j = binom(i+j, i) β_{i+j}` (mod 2) and coproduct
//! `Δβ_n = Σ_{i+j=n} β_i ⊗ β_j`. It is the mod 2 reduction, regraded by
//! `Φ^k`, of the integral algebra with `β_i` in degree `2i`.

use num_bigint::BigInt;

use serde::Serialize;

use crate::f2linalg::{F2Vector, GradedVS};
use crate::hopf::{
    verschiebung, verschiebung_element, verschiebung_hopf_map_check, Element, HopfError,
    IntegralGraded, IntegralHopf, Pi0Descriptor, StructuredHopf,
};

/// Parity of `binom(a, b)` by Lucas' theorem: odd iff the bits of `b` are a
/// subset of the bits of `a`.
pub fn binom_mod2(a: u64, b: u64) -> u8 {
    if b > a {
        return 0;
    }
    (b & (a - b) == 0) as u8
}

pub fn beta_label(i: usize, k: usize) -> String {
    format!("b{i}({k})")
}

/// `A^1(k)` truncated at degree `N`.
#[derive(Clone, Debug)]
pub struct DividedPowerAlg {
    weight: usize,
    trunc: usize,
    hopf: StructuredHopf,
}

impl DividedPowerAlg {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn trunc_degree(&self) -> usize {
        self.trunc
    }

    pub fn hopf(&self) -> &StructuredHopf {
        &self.hopf
    }

    pub fn into_hopf(self) -> StructuredHopf {
        self.hopf
    }

    /// Largest `i` with `β_i(k)` inside the truncation.
    pub fn top_index(&self) -> usize {
        self.trunc / self.weight
    }

    /// Basis index of `β_i(k)`, if in range.
    pub fn beta(&self, i: usize) -> Option<usize> {
        (i <= self.top_index()).then_some(i)
    }

    /// `⟨c, x^m⟩` against the polynomial dual on one variable of degree `k`:
    /// the coefficient of `β_m(k)` in `c`. `c` must be homogeneous of degree `m·k`.
    pub fn dual_pairing(&self, c: &Element, m: usize) -> Result<u8, HopfError> {
        let d = m * self.weight;
        if let Some(&bad) = c.iter().find(|&&i| self.hopf.degree(i) != d) {
            return Err(HopfError::InvalidModel(format!(
                "degree mismatch: {} has degree {}, x^{m} pairs with degree {d}",
                self.hopf.label(bad),
                self.hopf.degree(bad)
            )));
        }
        Ok(self.beta(m).is_some_and(|b| c.contains(&b)) as u8)
    }

    /// `⟨v(c), x^m⟩` where `v(c)` lives in `A^1(2k)`; this is the left-hand side
    /// of Frobenius duality `⟨v(c), x^m⟩ = ⟨c, x^{2m}⟩`.
    pub fn verschiebung_pairing(&self, c: &Element, m: usize) -> Result<u8, HopfError> {
        let d = 2 * m * self.weight;
        if c.iter().any(|&i| self.hopf.degree(i) != d) {
            return Err(HopfError::InvalidModel(format!(
                "degree mismatch: expected degree {d}"
            )));
        }
        let vc = verschiebung_element(&self.hopf, c)?;
        // v(c) is expressed in A^1(k) coordinates of degree m·k, i.e. β_m(k)^φ = β_m(2k)
        Ok(vc.contains(&m) as u8)
    }
}

/// `A^1(k)` with `β_i(k)` for `i·k ≤ N`.
pub fn make_a1(k: usize, trunc: usize) -> DividedPowerAlg {
    assert!(k >= 1, "weight must be positive");
    let top = trunc / k;
    let mut labels = vec![Vec::new(); trunc + 1];
    for i in 0..=top {
        labels[i * k].push(beta_label(i, k));
    }
    let space = GradedVS::new(labels).expect("one label per degree");
    let mut product = Vec::new();
    let mut coproduct = Vec::new();
    for i in 0..=top {
        for j in 0..=top - i {
            if binom_mod2((i + j) as u64, i as u64) == 1 {
                product.push((i, j, i + j));
            }
        }
        for a in 0..=i {
            coproduct.push((i, a, i - a));
        }
    }
    let hopf = StructuredHopf::new(space, 0, [0], product, coproduct, Pi0Descriptor::Trivial)
        .expect("A^1(k) constants are homogeneous");
    DividedPowerAlg {
        weight: k,
        trunc,
        hopf,
    }
}

/// `A^n(k) = A^1(k)^{⊗n}`, truncated at `N`.
pub fn make_an(k: usize, n: usize, trunc: usize) -> StructuredHopf {
    assert!(n >= 1, "need at least one tensor factor");
    let a1 = make_a1(k, trunc).into_hopf();
    let mut acc = a1.clone();
    for _ in 1..n {
        acc = StructuredHopf::tensor(&acc, &a1).expect("tensor of well-formed structures");
    }
    acc
}

/// Behaviour of `v` on `A^1(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerschiebungReport {
    pub weight: usize,
    pub trunc: usize,
    /// `v(β_{2n}(k)) = β_n(2k)` for every `2n·k ≤ N`.
    pub even_halving: bool,
    /// `v(β_{2n+1}(k)) = 0`.
    pub odd_vanishing: bool,
    /// Full rank onto every target degree.
    pub surjective: bool,
    /// The doubled target carries exactly the structure of `A^1(2k)`.
    pub target_is_a1_double: bool,
    pub bialgebra_violations: usize,
}

impl VerschiebungReport {
    pub fn holds(&self) -> bool {
        self.even_halving
            && self.odd_vanishing
            && self.surjective
            && self.target_is_a1_double
            && self.bialgebra_violations == 0
    }
}

pub fn a1_verschiebung_report(k: usize, trunc: usize) -> Result<VerschiebungReport, HopfError> {
    let a = make_a1(k, trunc);
    let h = a.hopf();
    let v = verschiebung(h)?;
    let mut even_halving = true;
    let mut odd_vanishing = true;
    for i in 0..=a.top_index() {
        let d = i * k;
        let local = h.local_index(i);
        let image = v.apply(d as i64, &F2Vector::unit(h.space().dim(d as i64), local))?;
        if i % 2 == 0 {
            // the image lies in degree d of the doubled space, whose only basis
            // element is β_{i/2}
            even_halving &= image.ones().collect::<Vec<_>>() == [0];
        } else {
            odd_vanishing &= image.is_zero();
        }
    }
    let target = v.target();
    let mut surjective = true;
    for d in 0..=trunc {
        surjective &= v.rank(d as i64)? == target.dim(d as i64);
    }
    let doubled = h.frobenius_double();
    let direct = make_a1(2 * k, trunc).into_hopf();
    let target_is_a1_double = doubled.space().dims() == direct.space().dims()
        && doubled.product_terms().eq(direct.product_terms())
        && doubled.coproduct_terms().eq(direct.coproduct_terms());
    Ok(VerschiebungReport {
        weight: k,
        trunc,
        even_halving,
        odd_vanishing,
        surjective,
        target_is_a1_double,
        bialgebra_violations: verschiebung_hopf_map_check(h)?.len(),
    })
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The integral `A^1` (`β_i` in degree `2i`, `β_iβ_j = binom(i+j,i)β_{i+j}`)
/// with source truncation `N`, as input to `Φ^k`.
pub fn integral_a1(trunc: usize) -> IntegralHopf {
    let top = trunc / 2;
    let mut labels = vec![Vec::new(); trunc + 1];
    for i in 0..=top {
        labels[2 * i].push(format!("b{i}"));
    }
    let mut product = Vec::new();
    let mut coproduct = Vec::new();
    for i in 0..=top {
        for j in 0..=top - i {
            product.push((i, j, i + j, binomial((i + j) as u64, i as u64)));
        }
        for a in 0..=i {
            coproduct.push((i, a, i - a, BigInt::from(1)));
        }
    }
    IntegralHopf {
        graded: IntegralGraded { labels },
        unit: 0,
        product,
        coproduct,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{antipode, check_axioms, indecomposables, primitives};
    use crate::f2linalg::LinMap;

    #[test]
    fn binom_mod2_examples() {
        assert_eq!(binom_mod2(2, 1), 0);
        assert_eq!(binom_mod2(3, 1), 1);
        for n in 0..50 {
            assert_eq!(binom_mod2(n, 0), 1);
        }
        assert_eq!(binom_mod2(3, 5), 0);
    }

    #[test]
    fn binom_mod2_agrees_with_exact_binomials() {
        for a in 0..=1024u64 {
            for b in 0..=a {
                let exact = binomial(a, b);
                assert_eq!(binom_mod2(a, b), exact.bit(0) as u8, "binom({a},{b})");
            }
        }
    }

    #[test]
    fn a1_products_and_coproducts() {
        let a = make_a1(1, 8);
        let h = a.hopf();
        assert!(h.mul_basis(1, 1).is_empty());
        assert_eq!(h.mul_basis(1, 2), Element::from([3]));
        for k in 1..=3 {
            let a = make_a1(k, 12);
            let d = a.hopf().coproduct_basis(2);
            assert_eq!(d, [(2, 0), (1, 1), (0, 2)].into_iter().collect());
            assert_eq!(a.hopf().degree(2), 2 * k);
        }
    }

    #[test]
    fn an_examples() {
        let a1 = make_a1(2, 10).into_hopf();
        assert_eq!(make_an(2, 1, 10), a1);
        let a2 = make_an(2, 2, 10);
        assert_eq!(a2.space().dim(2), 2);
        let b11 = a2.index_of("b1(2)⊗b1(2)").unwrap();
        assert_eq!(a2.coproduct_basis(b11).len(), 4);
    }

    #[test]
    fn a1_primitives_indecomposables_antipode() {
        let a = make_a1(1, 16);
        let h = a.hopf();
        assert!(check_axioms(h).is_ok());
        assert_eq!(primitives(h, 1).unwrap().len(), 1);
        assert_eq!(primitives(h, 2).unwrap().len(), 0);
        for d in 1..=16usize {
            let q = indecomposables(h, d).unwrap();
            assert_eq!(q.dim, d.is_power_of_two() as usize, "Q_{d}");
        }
        let chi = antipode(h).unwrap();
        // over F2, χ(β_n) = (-1)^n β_n = β_n
        assert_eq!(chi, LinMap::identity(h.space().clone()));
    }

    #[test]
    fn dual_pairing_examples() {
        let a = make_a1(1, 12);
        for m in 0..=12 {
            assert_eq!(a.dual_pairing(&Element::from([m]), m).unwrap(), 1);
        }
        assert_eq!(a.dual_pairing(&Element::from([3]), 3).unwrap(), 1);
        assert!(a.dual_pairing(&Element::from([3]), 2).is_err());
        // ⟨v(β_2(1)), x⟩ = ⟨β_2(1), x^2⟩ = 1
        assert_eq!(a.verschiebung_pairing(&Element::from([2]), 1).unwrap(), 1);
        assert_eq!(a.dual_pairing(&Element::from([2]), 2).unwrap(), 1);
        assert!(a.verschiebung_pairing(&Element::from([3]), 1).is_err());
    }

    #[test]
    fn verschiebung_on_a1() {
        for k in 1..=3 {
            let r = a1_verschiebung_report(k, 24).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn integral_a1_regrades_to_a1k() {
        for k in 1..=3 {
            let n = 12;
            let phi = crate::hopf::phi_regrade_hopf(&integral_a1(2 * (n / k)), k).unwrap();
            let direct = make_a1(k, k * (n / k)).into_hopf();
            assert_eq!(phi.product_terms().collect::<Vec<_>>(), direct.product_terms().collect::<Vec<_>>());
            assert_eq!(phi.coproduct_terms().collect::<Vec<_>>(), direct.coproduct_terms().collect::<Vec<_>>());
            assert_eq!(phi.space().dims(), direct.space().dims());
        }
    }
}
