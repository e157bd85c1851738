// Slope cuts on the (2,3,6) lattice: classification of sampled classes and
// the direction of morphisms between the two sides.

use fcy_core::torsion::{
    classify, random_effective_class, split_sign_check, Side, SlopeCut, Theta,
};
use fcy_core::wpl::{slope, tubular_lattice, WeightType};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> fcy_core::Result<()> {
    let lat = tubular_lattice(&WeightType::new(&[2, 3, 6])?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let classes: Vec<_> = (0..8)
        .map(|_| random_effective_class(&lat, &mut rng, 3))
        .collect();
    for theta in ["-1", "1/2", "(1/2,2/3)", "inf"] {
        let cut = SlopeCut::new(theta.parse::<Theta>()?);
        let sides: Vec<&str> = classes
            .iter()
            .map(|x| classify(&cut, &lat, x).map(Side::label))
            .collect::<fcy_core::Result<_>>()?;
        println!("θ = {theta:>9}: {}", sides.join(" "));
        let t = classes
            .iter()
            .find(|x| matches!(classify(&cut, &lat, x), Ok(Side::Torsion)));
        let f = classes
            .iter()
            .find(|x| matches!(classify(&cut, &lat, x), Ok(Side::Free)));
        if let (Some(t), Some(f)) = (t, f) {
            let r = split_sign_check(&cut, &lat, t, f)?;
            println!(
                "  μf = {} < μt = {}, χ̄(f,t) = {}",
                slope(&lat, f)?,
                slope(&lat, t)?,
                r.chi_bar_ft
            );
        }
    }
    Ok(())
}

fn main() -> fcy_core::Result<()> {
    run_example()
}
