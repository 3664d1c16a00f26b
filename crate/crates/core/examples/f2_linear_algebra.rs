use std::collections::BTreeMap;

use rwhopf::f2linalg::{BitMatrix, F2Vector, GradedVS, LinMap, QuotientMap};

fn main() {
    let m = BitMatrix::from_rows(4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]);
    println!("M =\n{}rank {}", m.dump(), m.rank());
    for v in m.kernel_basis() {
        println!("kernel vector {:?}", v.to_bits());
    }
    let e = m.rref();
    println!("rref pivots {:?}\n{}", e.pivots, e.matrix.dump());

    // F2^4 modulo the span of the rows
    let rows: Vec<F2Vector> = (0..m.rows()).map(|r| m.row(r)).collect();
    let q = QuotientMap::new(4, &rows);
    println!("quotient dimension {} (complement {:?})", q.quotient_dim(), q.complement());
    println!("e0 + e1 reduces to {:?}", q.reduce(&F2Vector::from_bits(&[1, 1, 0, 0])).to_bits());

    // a degree-preserving map on a small graded space
    let v = GradedVS::from_dims(&[1, 2, 1]);
    let blocks = BTreeMap::from([(1, BitMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]))]);
    let f = LinMap::new(v.clone(), v, 0, blocks).unwrap();
    let ff = LinMap::compose(&f, &f).unwrap();
    println!("rank of f in degree 1: {}, of f∘f: {}", f.rank(1).unwrap(), ff.rank(1).unwrap());
}
