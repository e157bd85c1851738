// Twists along spherical configurations: the quasi-inverse check on a
// tubular lattice, an explicit twist of a Kronecker module, and the
// sequence of line bundles `L_i`.

use fcy_core::rep::kronecker;
use fcy_core::twist::{
    check_quasi_inverse, dual_twist_explicit, find_l_config, l_sequence, random_spherical_data,
    EulerLattice, SphericalData,
};
use fcy_core::wpl::{tubular_lattice, WeightType};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> fcy_core::Result<()> {
    let lat = tubular_lattice(&WeightType::new(&[2, 2, 2, 2])?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let data = random_spherical_data(&lat, &mut rng, 6)?;
    println!(
        "classes {:?}, σ = {:?}",
        data.classes()
            .iter()
            .map(|c| c.to_i64s())
            .collect::<Vec<_>>(),
        data.sigma()
    );
    match check_quasi_inverse(&lat, &data, &mut rng, 500) {
        Ok(()) => println!("t_E t*_E = id on 500 random vectors"),
        Err(ce) => println!("counterexample: {}", ce.reason),
    }

    let r = kronecker::regular_i64(1, 0)?;
    let t = dual_twist_explicit(std::slice::from_ref(&r), &kronecker::p_y())?;
    let k = EulerLattice::of_quiver(&kronecker::quiver())?;
    let e = SphericalData::new(k.euler(), vec![r.dim_vector()], vec![0])?;
    println!(
        "T*_R(P_y): H^0 {:?}, H^1 {:?}, class {:?} (lattice: {:?})",
        t.degree0.dims(),
        t.shifted.dims(),
        t.class().to_i64s(),
        fcy_core::twist::dual_twist_class(&e, &kronecker::p_y().dim_vector()).to_i64s()
    );

    let cfg = find_l_config(&lat)?;
    let seq = l_sequence(&cfg, 0, 3);
    for (i, row) in seq.indices.iter().zip(&seq.chi) {
        println!(
            "χ(L_{i}, L_j) = {:?}",
            row.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        );
    }
    Ok(())
}

fn main() -> fcy_core::Result<()> {
    run_example()
}
