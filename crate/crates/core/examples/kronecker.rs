// Projectives, the fitting sequence `0 → P_y → P_x → R_f → 0`, and the
// orthogonality of regular modules for the Kronecker quiver.

use fcy_core::rep::{self, ker_coker, kronecker};
use num_rational::BigRational;

pub fn run_example() -> fcy_core::Result<()> {
    let (px, py) = (kronecker::p_x(), kronecker::p_y());
    println!("dim Hom(P_y, P_x) = {}", rep::hom_dim(&py, &px)?);

    let params = [(1, 0), (0, 1), (1, 1), (2, -3)];
    let mut regulars = Vec::new();
    for (l, m) in params {
        let f = kronecker::projective_map(
            &BigRational::from_integer(l.into()),
            &BigRational::from_integer(m.into()),
        )?;
        let (ker, coker) = ker_coker(&f, &py, &px)?;
        println!(
            "f = {l}a + {m}b: ker {:?}, coker {:?}, Hom(P_x, R_f) = {}, Hom(P_y, R_f) = {}",
            ker.dims(),
            coker.dims(),
            rep::hom_dim(&px, &coker)?,
            rep::hom_dim(&py, &coker)?
        );
        regulars.push(coker);
    }
    for (i, a) in regulars.iter().enumerate() {
        let row: Vec<String> = regulars
            .iter()
            .map(|b| rep::hom_ext_dims(a, b).map(|(h, e)| format!("{h}/{e}")))
            .collect::<fcy_core::Result<_>>()?;
        println!("R_{i}: Hom/Ext {}", row.join(" "));
    }
    Ok(())
}

fn main() -> fcy_core::Result<()> {
    run_example()
}
