use rwhopf::divided_power::{a1_verschiebung_report, make_a1, make_an};
use rwhopf::hopf::{antipode, indecomposables, primitives, verschiebung, verschiebung_element, Element};

fn main() {
    let k = 2;
    let a = make_a1(k, 16);
    let h = a.hopf();
    for i in 0..=a.top_index() {
        let x = Element::from([i]);
        println!(
            "Δ{} = {}    v = {}",
            h.label(i),
            h.describe_tensor(&h.coproduct(&x)),
            if i % 2 == 0 { h.describe(&verschiebung_element(h, &x).unwrap()) } else { "0".into() }
        );
    }
    println!("b1 * b2 = {}", h.describe(&h.mul_basis(1, 2)));
    println!("b1 * b1 = {}", h.describe(&h.mul_basis(1, 1)));

    for d in (k..=16).step_by(k) {
        let q = indecomposables(h, d).unwrap();
        let p = primitives(h, d).unwrap();
        println!("degree {d:>2}: dim Q = {}, dim P = {}", q.dim, p.len());
    }

    let v = verschiebung(h).unwrap();
    println!("v in degree 8:\n{}", v.block(8).unwrap().dump());
    println!("antipode is the identity: {}", antipode(h).unwrap() == rwhopf::f2linalg::LinMap::identity(h.space().clone()));
    println!("{:?}", a1_verschiebung_report(k, 24).unwrap());

    let a2 = make_an(1, 2, 4);
    println!("A^2(1) has {} basis elements up to degree 4, dims {:?}", a2.basis_len(), a2.space().dims());
}
