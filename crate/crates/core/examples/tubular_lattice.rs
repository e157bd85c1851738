// Numerical invariants of weighted projective lines: Euler characteristic,
// Coxeter period, the average Euler form and slopes of projectives.

use fcy_core::wpl::{rank_degree, slope, summarize, tubular_lattice, tubular_types, WeightType};

pub fn run_example() -> fcy_core::Result<()> {
    for w in [vec![2, 3], vec![2, 3, 5], vec![2, 3, 7]] {
        let s = summarize(&WeightType::new(&w)?)?;
        println!("{w:?}: χ = {}", s.chi);
    }
    for w in tubular_types() {
        let lat = tubular_lattice(&w)?;
        let s = summarize(&w)?;
        println!(
            "{w}: n = {}, Φ^{} = 1, radical rank {}, χ̄ = rk∧deg: {}",
            s.n,
            s.coxeter_order.unwrap_or(0),
            lat.radical_rank(),
            s.identity_check
        );
        let slopes: Vec<String> = (0..lat.dim())
            .map(|v| {
                let p = lat.projective(v);
                let (rk, deg) = rank_degree(&lat, &p);
                slope(&lat, &p).map(|mu| format!("({rk},{deg})→{mu}"))
            })
            .collect::<fcy_core::Result<_>>()?;
        println!("  projectives: {}", slopes.join(" "));
    }
    Ok(())
}

fn main() -> fcy_core::Result<()> {
    run_example()
}
