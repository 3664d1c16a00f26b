use rwhopf::bar_tor::{analytic_tor, build_bar, edge_hom, tor_dims, tor_one_generated_check, PresentedAlgebra};

fn main() {
    let a = PresentedAlgebra::new(vec![1, 2], 1, 8).unwrap();
    let computed = tor_dims(&a, 4, 8).unwrap();
    let formula = analytic_tor(&a, 4, 8);
    println!("Tor over F2[x1, y2] ⊗ F2[Z]:\n{}", computed.to_text_grid());
    let agree = (0..=4).all(|s| (0..=8).all(|t| computed.get(s, t) == formula.get(s, t)));
    println!("bar homology agrees with the exterior formula: {agree}");
    println!("generated by Tor_1: {}", tor_one_generated_check(&analytic_tor(&a, 8, 8), 6).unwrap());

    let one = PresentedAlgebra::new(vec![3], 0, 6).unwrap();
    let bar = build_bar(&one, 2, 6).unwrap();
    for w in bar.basis(2, 6) {
        let image: Vec<String> = bar
            .differential_of(&w.factors)
            .iter()
            .map(|f| f.iter().map(|&m| bar.monomials().label(m as usize)).collect::<Vec<_>>().join("|"))
            .map(|s| format!("[{s}]"))
            .collect();
        println!("d {} = {}", bar.word_label(w), image.join(" + "));
    }
    let e = edge_hom(&one, 6).unwrap();
    let x2 = e.image_of_monomial(bar.monomials(), &[2]).unwrap();
    println!("x^2 maps to zero in Tor_(1,6): {}", x2.is_zero());
    println!("{}", computed.to_json());
}
