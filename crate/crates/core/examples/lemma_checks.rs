//! Runs the exact and Monte Carlo probability checks and prints JSON lines.

use stabforge::verify::{self, McKind};

fn main() -> stabforge::Result<()> {
    let seed = 2024;
    let sigma = verify::weight_class_rep(2, 1);
    let lines = vec![
        verify::lemma2_check(2, 2, 20, seed)?,
        verify::exact_normalizer_prob(2, 2, 1, &sigma)?,
        verify::exact_coset_prob(2, 1, 1, &verify::weight_class_rep(1, 1), &[1, 0])?,
        verify::mc_prob(&McKind::Normalizer { q: 2, n: 2, ell: 1, sigma }, 20_000, seed)?,
        verify::mc_prob(&McKind::default_collision(2, 2)?, 20_000, seed)?,
    ];
    for r in &lines {
        println!("{}", r.to_json_line());
    }
    println!("any violated: {}", verify::any_violated(&lines));
    Ok(())
}
