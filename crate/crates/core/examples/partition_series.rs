use rwhopf::series::{binomial_factor, partitions, product_pow, TruncSeries};

fn main() {
    for n in [0, 5, 10, 30, 100] {
        println!("p({n}) = {}", partitions(n));
    }

    let trunc = 8;
    // (1 - a)^-1 (1 - a^2)^-1 (1 - a^3)^-2
    let r = product_pow(
        trunc,
        &[
            (binomial_factor(trunc, 1, -1), -1),
            (binomial_factor(trunc, 2, -1), -1),
            (binomial_factor(trunc, 3, -1), -2),
        ],
    )
    .unwrap();
    println!("R' = {r}");

    let x = TruncSeries::from_coeffs(trunc, [1, 3, 0, -2]);
    let inv = x.inverse().unwrap();
    println!("x = {x}\n1/x = {inv}\nx * 1/x = {}", x.mul(&inv).unwrap());
    println!("x(a^2) = {}", x.substitute_power(2, trunc));
    println!("{}", serde_json::to_string(&r).unwrap());
}
