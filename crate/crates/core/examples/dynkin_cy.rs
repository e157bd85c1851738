// Serre functor periodicity on derived categories of Dynkin quivers.

use fcy_core::derived::{cy_dimension, cy_table, serre, DerivedObject, DynkinQuiver, DynkinType};
use fcy_core::quiver::LatticeVector;

pub fn run_example() -> fcy_core::Result<()> {
    let types = [
        DynkinType::A(2),
        DynkinType::A(4),
        DynkinType::D(4),
        DynkinType::D(5),
        DynkinType::E6,
    ];
    for row in cy_table(&types)? {
        println!(
            "{:>3}: h = {:>2}, S^h = [{}] ({}), fraction {}, smallest pair ({}, {})",
            row.ty,
            row.h,
            row.h_minus_2,
            row.serre_h_is_shift,
            row.reduced,
            row.minimal.n,
            row.minimal.m
        );
    }

    // one orbit by hand: the simple at vertex 0 of A_3
    let q = DynkinQuiver::standard(DynkinType::A(3))?;
    let mut x = DerivedObject::new(LatticeVector::from_i64s(&[1, 0, 0]), 0);
    for i in 1..=4 {
        x = serre(&x, &q);
        println!("S^{i} S_0 = {:?}[{}]", x.root.to_i64s(), x.shift);
    }
    let p = cy_dimension(&q, 64)?;
    println!("A_3 is ({}, {})-Calabi-Yau", p.n, p.m);
    Ok(())
}

fn main() -> fcy_core::Result<()> {
    run_example()
}
