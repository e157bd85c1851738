// A rank-3 tube: closed-form Hom dimensions against the linear-algebra
// solver, Serre duality, and the Calabi-Yau pair.

use fcy_core::rep;
use fcy_core::tube::{self, is_generalized_1_spherical, mouth, TubeObject};

pub fn run_example() -> fcy_core::Result<()> {
    let r = 3;
    let objs = tube::objects(r, 4);
    let mut agree = 0;
    for x in &objs {
        for y in &objs {
            let (rx, ry) = (x.to_rep(), y.to_rep());
            let hom = rep::hom_dim(&rx, &ry)?;
            let dual = rep::ext1_dim(&ry, &x.tau().to_rep())?;
            if hom == tube::hom_dim(x, y)? && hom == dual {
                agree += 1;
            }
        }
    }
    println!(
        "{agree}/{} pairs satisfy closed form = solver = Ext(Y, τX)",
        objs.len() * objs.len()
    );

    let x = TubeObject::new(r, 0, 5)?;
    let (k, d) = tube::length_gives_homs(&x, &TubeObject::new(r, 1, 4)?)?;
    println!("dim Hom(τ^{k} X, Y) = {d} >= 4/{r}");

    let m = mouth(r);
    println!(
        "mouth {:?} spherical: {:?}",
        m.iter().map(|e| e.socle()).collect::<Vec<_>>(),
        is_generalized_1_spherical(&m)?
    );
    let p = tube::cy_pair(r, 6, 12)?;
    println!("S^{} = [{}]", p.n, p.m);
    Ok(())
}

fn main() -> fcy_core::Result<()> {
    run_example()
}
