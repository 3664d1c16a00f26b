use rwhopf::divided_power::make_a1;
use rwhopf::hopf::{check_axioms, component_split_check, StructuredHopf};

fn main() {
    let poly = StructuredHopf::polynomial(&[1, 2], 4).unwrap();
    println!("F2[x0, x1] to degree 4: dims {:?}", poly.space().dims());
    println!("axioms hold: {}", check_axioms(&poly).is_ok());
    println!("{:?}", component_split_check(&poly).unwrap());

    let json = make_a1(1, 3).into_hopf().to_json();
    println!("{json}");
    let mut h = StructuredHopf::from_json(&json).unwrap();
    h.toggle_coproduct_term(3, 1, 2);
    for v in check_axioms(&h).violations.iter().take(3) {
        println!("violated {}: {:?}", v.axiom, v.witnesses);
    }
}
