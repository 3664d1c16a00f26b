use rwhopf::rw_model::{
    eq46_check, hmu_prime_series, induction_check, induction_grid, induction_region, induction_text_table,
    k_series, prop39_4_check, r_prime_series, stable_range_report, RWModel, DEFAULT_BAR_CAP,
};

fn main() {
    let n = 10;
    for k in [-2, 0, 1, 3] {
        let m = RWModel::new(k, n);
        println!("k = {k}: pi0 rank {}, generators {:?}", m.pi0_rank(), m.generators());
        println!("  R'  = {}", r_prime_series(k, n));
        println!("  H'  = {}", hmu_prime_series(k, n));
        println!("  K   = {}", k_series(k, n));
        println!("  K·H' = R': {}, Tor series = K^(2(k+1)): {}", eq46_check(k, n), prop39_4_check(k, n));
    }
    println!("{:?}", stable_range_report(3, n));

    let cell = induction_check(4, 2, 16, Some(DEFAULT_BAR_CAP)).unwrap();
    println!("{}", serde_json::to_string_pretty(&cell).unwrap());

    let reports = induction_grid(&induction_region(1, 6), 16, Some(DEFAULT_BAR_CAP)).unwrap();
    print!("{}", induction_text_table(&reports));
}
