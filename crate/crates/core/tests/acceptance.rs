//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fcy_core::cli::{theta_grid, KRONECKER_PARAMETERS, TUBULAR_WEIGHTS};
use fcy_core::cy::CyPair;
use fcy_core::derived::{
    cy_dimension, positive_roots, serre_power_shift, DynkinQuiver, DynkinType,
};
use fcy_core::linalg::{IntMatrix, QMatrix};
use fcy_core::quiver::{euler_form, matrix_order, LatticeVector, Quiver};
use fcy_core::rep::{self, ker_coker, kronecker, Rep};
use fcy_core::torsion::{classify, random_effective_class, Side, SlopeCut, Theta};
use fcy_core::tube::{self, TubeObject};
use fcy_core::twist::{
    check_quasi_inverse, dual_twist_class, dual_twist_explicit, find_l_config, l_sequence,
    random_spherical_data, twist_class, twist_explicit, EulerLattice, SphericalData,
};
use fcy_core::wpl::{
    euler_characteristic, rank_degree, tubular_lattice, weight_types_up_to, WeightType,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;
const MAX_LENGTH: usize = 8;
const TUBE_RANKS: [usize; 4] = [1, 2, 3, 4];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------- 1

/// Expected `(h, h-2)` per type: Coxeter numbers from the classification.
const DYNKIN_EXPECTED: [(DynkinType, u32, i64); 7] = [
    (DynkinType::A(2), 3, 1),
    (DynkinType::A(3), 4, 2),
    (DynkinType::A(4), 5, 3),
    (DynkinType::A(5), 6, 4),
    (DynkinType::D(4), 6, 4),
    (DynkinType::D(5), 8, 6),
    (DynkinType::E6, 12, 10),
];

fn dynkin_cy_dimensions(pairs: &mut Vec<CyPair>) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (ty, h, m) in DYNKIN_EXPECTED {
        for q in DynkinQuiver::all_orientations(ty).expect("valid type") {
            let order = matrix_order(q.coxeter(), 64);
            if order != Some(h as usize) {
                bad.push(format!("{ty}: ord Φ = {order:?}, expected {h}"));
            }
            // object-level: S^h is the shift [h-2] on every positive root
            if serre_power_shift(&q, h as usize) != Some(m) {
                bad.push(format!("{ty}: S^{h} is not [{m}]"));
            }
            match cy_dimension(&q, 64) {
                Ok(p) => {
                    pairs.push(p);
                    if p != CyPair::new(h, m) {
                        bad.push(format!(
                            "{ty}: cy_dimension = ({}, {}), expected ({h}, {m})",
                            p.n, p.m
                        ));
                    }
                }
                Err(e) => bad.push(format!("{ty}: {e}")),
            }
        }
    }
    bad.sort();
    bad.dedup();
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(5) {
        bad.push(format!("runtime {elapsed:?} >= 5 s"));
    }
    outcome(bad.is_empty(), format!("{elapsed:?} {}", bad.join("; ")))
}

// ---------------------------------------------------------------- 2

fn tube_periodicity(pairs: &mut Vec<CyPair>) -> Outcome {
    let mut bad = Vec::new();
    for r in TUBE_RANKS {
        for x in tube::objects(r, MAX_LENGTH) {
            let mut y = x;
            for _ in 0..r {
                y = y.tau();
            }
            if y != x {
                bad.push(format!("τ^{r} {x:?} = {y:?}"));
            }
        }
        match tube::cy_pair(r, MAX_LENGTH, 4 * r) {
            Ok(p) => {
                pairs.push(p);
                if p != CyPair::new(r as u32, r as i64) {
                    bad.push(format!("rank {r}: pair ({}, {})", p.n, p.m));
                }
            }
            Err(e) => bad.push(format!("rank {r}: {e}")),
        }
    }
    outcome(bad.is_empty(), bad.join("; "))
}

// ---------------------------------------------------------------- 3-5

struct Grid {
    objs: Vec<TubeObject>,
    reps: Vec<Rep>,
}

impl Grid {
    fn new(r: usize) -> Self {
        let objs = tube::objects(r, MAX_LENGTH);
        let reps = objs.iter().map(TubeObject::to_rep).collect();
        Grid { objs, reps }
    }

    fn rep_of(&self, x: &TubeObject) -> &Rep {
        &self.reps[self.objs.iter().position(|o| o == x).expect("in grid")]
    }
}

fn tube_serre_duality(grids: &[Grid]) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for g in grids {
        for (x, rx) in g.objs.iter().zip(&g.reps) {
            let tx = g.rep_of(&x.tau());
            for (y, ry) in g.objs.iter().zip(&g.reps) {
                pairs += 1;
                let ext = rep::ext1_dim(ry, tx).expect("same quiver");
                let hom = rep::hom_dim(rx, ry).expect("same quiver");
                if ext != hom {
                    bad.push(format!("X={x:?} Y={y:?}: Ext(Y,τX)={ext} Hom(X,Y)={hom}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        bad.push(format!("runtime {elapsed:?} >= 60 s"));
    }
    outcome(
        bad.is_empty(),
        format!("{pairs} pairs, {elapsed:?} {}", bad.join("; ")),
    )
}

fn tube_closed_form(grids: &[Grid]) -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for g in grids {
        for (x, rx) in g.objs.iter().zip(&g.reps) {
            for (y, ry) in g.objs.iter().zip(&g.reps) {
                pairs += 1;
                let closed = tube::hom_dim(x, y).expect("same rank");
                let solver = rep::hom_dim(rx, ry).expect("same quiver");
                if closed != solver {
                    bad.push(format!("{x:?},{y:?}: {closed} vs {solver}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} pairs {}", bad.join("; ")))
}

fn tube_length_bound(grids: &[Grid]) -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for g in grids {
        let r = g.objs[0].rank();
        for a in &g.objs {
            for (b, rb) in g.objs.iter().zip(&g.reps) {
                pairs += 1;
                let l = a.length().min(b.length());
                let best = (0..r)
                    .map(|k| rep::hom_dim(g.rep_of(&a.tau_pow(k as i64)), rb).expect("same quiver"))
                    .max()
                    .unwrap_or(0);
                if best * r < l {
                    bad.push(format!("A={a:?} B={b:?}: max dim = {best}, l/r = {l}/{r}"));
                }
                let (k, d) = tube::length_gives_homs(a, b).expect("same rank");
                if d * r < l || k >= r {
                    bad.push(format!("length_gives_homs({a:?},{b:?}) = ({k},{d})"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} pairs {}", bad.join("; ")))
}

// ---------------------------------------------------------------- 6

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn kronecker_facts() -> Outcome {
    let mut bad = Vec::new();
    let (px, py) = (kronecker::p_x(), kronecker::p_y());
    let d = rep::hom_dim(&py, &px).expect("kronecker");
    if d != 2 {
        bad.push(format!("dim Hom(P_y,P_x) = {d}"));
    }
    // every nonzero f, up to the grid: monic with regular cokernel
    let mut cokernels = Vec::new();
    for lambda in -3i64..=3 {
        for mu in -3i64..=3 {
            if lambda == 0 && mu == 0 {
                continue;
            }
            let f = kronecker::projective_map(&q(lambda), &q(mu)).expect("nonzero");
            let (ker, coker) = ker_coker(&f, &py, &px).expect("intertwiner");
            let hx = rep::hom_dim(&px, &coker).expect("kronecker");
            let hy = rep::hom_dim(&py, &coker).expect("kronecker");
            if !ker.is_zero() || coker.dims() != [1, 1] || hx != 1 || hy != 1 {
                bad.push(format!(
                    "f=({lambda},{mu}): ker {:?} coker {:?} Hom {hx},{hy}",
                    ker.dims(),
                    coker.dims()
                ));
            }
            if KRONECKER_PARAMETERS.contains(&(lambda, mu)) {
                cokernels.push(coker);
            }
        }
    }
    for (i, a) in cokernels.iter().enumerate() {
        for (j, b) in cokernels.iter().enumerate() {
            if i != j {
                let he = rep::hom_ext_dims(a, b).expect("kronecker");
                if he != (0, 0) {
                    bad.push(format!("Hom/Ext(R_{i}, R_{j}) = {he:?}"));
                }
            }
        }
    }
    if cokernels.len() != KRONECKER_PARAMETERS.len() {
        bad.push("missing parameter pairs".into());
    }
    outcome(bad.is_empty(), bad.join("; "))
}

// ---------------------------------------------------------------- 7

fn wildness_sign() -> Outcome {
    let mut bad = Vec::new();
    let k3 = Quiver::kronecker(3);
    let d = LatticeVector::from_i64s(&[1, 2]);
    let chi = euler_form(&k3, &d, &d).expect("acyclic");
    if chi != BigInt::from(-1) {
        bad.push(format!("χ((1,2),(1,2)) = {chi}"));
    }
    // the same number from a concrete module through the solver
    let cols: [&[&[i64]]; 3] = [&[&[1], &[0]], &[&[0], &[1]], &[&[1], &[1]]];
    let m = Rep::new(
        k3,
        vec![1, 2],
        cols.iter().map(|c| QMatrix::from_int(c)).collect(),
    )
    .expect("shapes");
    let (h, e) = rep::hom_ext_dims(&m, &m).expect("same quiver");
    if h as i64 - e as i64 != -1 {
        bad.push(format!("solver Hom - Ext = {h} - {e}"));
    }
    let mut roots = 0;
    let types = (1..=8)
        .map(DynkinType::A)
        .chain((4..=8).map(DynkinType::D))
        .chain([DynkinType::E6, DynkinType::E7, DynkinType::E8]);
    for ty in types {
        let dq = DynkinQuiver::standard(ty).expect("valid");
        let rs = positive_roots(&dq);
        let expected = match ty {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E6 => 36,
            DynkinType::E7 => 63,
            DynkinType::E8 => 120,
        };
        if rs.len() != expected {
            bad.push(format!("{ty}: {} roots, expected {expected}", rs.len()));
        }
        for r in &rs {
            roots += 1;
            if euler_form(dq.quiver(), r, r).expect("acyclic") != BigInt::one() {
                bad.push(format!("{ty}: χ({r:?}) ≠ 1"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{roots} roots {}", bad.join("; ")))
}

// ---------------------------------------------------------------- 8

fn cy_fractions_in_unit_interval(pairs: &[CyPair]) -> Outcome {
    let bad: Vec<String> = pairs
        .iter()
        .filter(|p| !(p.m >= 0 && p.m <= i64::from(p.n)))
        .map(|p| format!("({}, {})", p.n, p.m))
        .collect();
    outcome(
        !pairs.is_empty() && bad.is_empty(),
        format!("{} fractions {}", pairs.len(), bad.join("; ")),
    )
}

// ---------------------------------------------------------------- 9

fn average_form(lat: &fcy_core::wpl::TubularLattice) -> QMatrix {
    let p = lat.period();
    let e = lat.euler().to_rational();
    let phi = lat.coxeter().to_rational();
    let mut acc = QMatrix::zeros(e.rows(), e.cols());
    let mut pow = QMatrix::identity(e.rows());
    for _ in 0..p {
        acc = acc.add_mat(&pow.transpose().mul_mat(&e));
        pow = phi.mul_mat(&pow);
    }
    acc.scale(&BigRational::new(1.into(), i64::from(p).into()))
}

fn tubular_numerics() -> Outcome {
    let mut bad = Vec::new();
    let zero: BTreeSet<Vec<u32>> = weight_types_up_to(12)
        .into_iter()
        .filter(|w| euler_characteristic(&WeightType::new(w).expect("weights")).is_zero())
        .collect();
    let expected: BTreeSet<Vec<u32>> = TUBULAR_WEIGHTS.iter().map(|w| w.to_vec()).collect();
    if zero != expected {
        bad.push(format!("χ_H = 0 for {zero:?}"));
    }
    for w in TUBULAR_WEIGHTS {
        let lat = tubular_lattice(&WeightType::new(w).expect("weights")).expect("tubular");
        let n = lat.dim();
        let p = w
            .iter()
            .fold(1usize, |a, &b| num_integer::lcm(a, b as usize));
        let id = IntMatrix::identity(n);
        let periods: Vec<usize> = (1..=p)
            .filter(|&k| lat.coxeter().pow(k as u32) == id)
            .collect();
        if periods.first() != Some(&p) {
            bad.push(format!(
                "{w:?}: Φ^k = id for k in {periods:?}, expected first {p}"
            ));
        }
        let avg = average_form(&lat);
        if &avg != lat.average_form() {
            bad.push(format!("{w:?}: average form differs"));
        }
        let radical = n - avg.rank();
        if radical != n - 2 || lat.radical_rank() != n - 2 {
            bad.push(format!(
                "{w:?}: radical rank {radical} / {}",
                lat.radical_rank()
            ));
        }
        if avg.transpose() != avg.scale(&q(-1)) {
            bad.push(format!("{w:?}: χ̄ not antisymmetric"));
        }
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (LatticeVector::unit(n, i), LatticeVector::unit(n, j));
                let (rx, dx) = rank_degree(&lat, &x);
                let (ry, dy) = rank_degree(&lat, &y);
                let wedge = BigRational::from_integer(rx) * dy - dx * BigRational::from_integer(ry);
                if avg.get(i, j) != &wedge {
                    bad.push(format!("{w:?}: χ̄(e{i},e{j}) = {} ≠ {wedge}", avg.get(i, j)));
                }
            }
        }
    }
    outcome(bad.is_empty(), bad.join("; "))
}

// ---------------------------------------------------------------- 10

fn twist_quasi_inverse() -> Outcome {
    const CONFIGS: usize = 5;
    const SAMPLES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    let mut configs = 0;
    for w in TUBULAR_WEIGHTS {
        let lat = tubular_lattice(&WeightType::new(w).expect("weights")).expect("tubular");
        for _ in 0..CONFIGS {
            let data = match random_spherical_data(&lat, &mut rng, 6) {
                Ok(d) => d,
                Err(e) => {
                    bad.push(format!("{w:?}: {e}"));
                    continue;
                }
            };
            configs += 1;
            if data.r() > 6 {
                bad.push(format!("{w:?}: r = {}", data.r()));
            }
            if let Err(ce) = check_quasi_inverse(&lat, &data, &mut rng, SAMPLES) {
                bad.push(format!("{w:?}: {} at x={:?}", ce.reason, ce.x));
            }
            // formula cross-check against the raw Euler matrix
            let x = fcy_core::twist::random_vector(&mut rng, lat.dim(), 5);
            let mut t = x.clone();
            for e in data.classes() {
                t = &t - &e.scaled(&lat.euler().bilinear(&e.0, &x.0));
            }
            if t != twist_class(&data, &x) {
                bad.push(format!("{w:?}: t_E formula mismatch"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{configs} configurations × {SAMPLES} vectors {}",
            bad.join("; ")
        ),
    )
}

// ---------------------------------------------------------------- 11

fn l_sequence_table() -> Outcome {
    let mut bad = Vec::new();
    for w in TUBULAR_WEIGHTS {
        let lat = tubular_lattice(&WeightType::new(w).expect("weights")).expect("tubular");
        let cfg = match find_l_config(&lat) {
            Ok(c) => c,
            Err(e) => {
                bad.push(format!("{w:?}: {e}"));
                continue;
            }
        };
        let seq = l_sequence(&cfg, -5, 5);
        for (a, &i) in seq.indices.iter().enumerate() {
            for (b, &j) in seq.indices.iter().enumerate() {
                if i > j {
                    continue;
                }
                let chi = lat.chi(&seq.classes[a], &seq.classes[b]);
                if chi != BigInt::from(1 + j - i) {
                    bad.push(format!("{w:?}: χ(L{i},L{j}) = {chi}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), bad.join("; "))
}

// ---------------------------------------------------------------- 12

fn explicit_twist_coherence() -> Outcome {
    let mut bad = Vec::new();
    let mut clean = 0;
    let k = EulerLattice::of_quiver(&kronecker::quiver()).expect("acyclic");
    let objects: Vec<Rep> = (0..4)
        .flat_map(|n| [kronecker::preprojective(n), kronecker::preinjective(n)])
        .chain(
            KRONECKER_PARAMETERS
                .iter()
                .map(|&(l, m)| kronecker::regular_i64(l, m).expect("nonzero")),
        )
        .collect();
    for &(l, m) in &KRONECKER_PARAMETERS {
        let r = kronecker::regular_i64(l, m).expect("nonzero");
        let data = SphericalData::new(k.euler(), vec![r.dim_vector()], vec![0]).expect("spherical");
        let family = std::slice::from_ref(&r);
        for x in &objects {
            let dv = x.dim_vector();
            match twist_explicit(family, x) {
                Ok(t) => {
                    clean += 1;
                    if t.class() != twist_class(&data, &dv) {
                        bad.push(format!("T_R({:?}) class {:?}", x.dims(), t.class()));
                    }
                }
                Err(fcy_core::Error::NonvanishingExt) => {}
                Err(e) => bad.push(e.to_string()),
            }
            match dual_twist_explicit(family, x) {
                Ok(t) => {
                    clean += 1;
                    if t.class() != dual_twist_class(&data, &dv) {
                        bad.push(format!("T*_R({:?}) class {:?}", x.dims(), t.class()));
                    }
                }
                Err(fcy_core::Error::NonvanishingExt) => {}
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    let r = kronecker::regular_i64(1, 0).expect("nonzero");
    match dual_twist_explicit(std::slice::from_ref(&r), &kronecker::p_y()) {
        Ok(t) if t.degree0.is_zero() && t.shifted.dims() == [1, 0] => {}
        Ok(t) => bad.push(format!(
            "T*_R(P_y): ker {:?} coker {:?}",
            t.degree0.dims(),
            t.shifted.dims()
        )),
        Err(e) => bad.push(format!("T*_R(P_y): {e}")),
    }
    if clean < 20 {
        bad.push(format!("only {clean} clean cases"));
    }
    outcome(
        bad.is_empty(),
        format!("{clean} clean cases {}", bad.join("; ")),
    )
}

// ---------------------------------------------------------------- 13

fn side_rank(s: Side) -> u8 {
    match s {
        Side::Free => 0,
        Side::Boundary => 1,
        Side::Torsion => 2,
    }
}

fn torsion_cuts() -> Outcome {
    const PAIRS: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 13);
    let mut bad = Vec::new();
    let mut directional = 0;
    let grid = theta_grid();
    for w in TUBULAR_WEIGHTS {
        let lat = tubular_lattice(&WeightType::new(w).expect("weights")).expect("tubular");
        for _ in 0..PAIRS {
            let pair = [
                random_effective_class(&lat, &mut rng, 4),
                random_effective_class(&lat, &mut rng, 4),
            ];
            let mut sides = Vec::new();
            for theta in &grid {
                let cut = SlopeCut::new(theta.clone());
                let s: Vec<Side> = match pair.iter().map(|x| classify(&cut, &lat, x)).collect() {
                    Ok(s) => s,
                    Err(e) => {
                        bad.push(format!("{w:?} θ={theta}: unclassified ({e})"));
                        continue;
                    }
                };
                if matches!(theta, Theta::Irrational { .. }) && s.contains(&Side::Boundary) {
                    bad.push(format!("{w:?} θ={theta}: boundary hit"));
                }
                let (t, f) = match (s[0], s[1]) {
                    (Side::Torsion, Side::Free) => (&pair[0], &pair[1]),
                    (Side::Free, Side::Torsion) => (&pair[1], &pair[0]),
                    _ => {
                        sides.push(s);
                        continue;
                    }
                };
                directional += 1;
                let (rt, dt) = rank_degree(&lat, t);
                let (rf, df) = rank_degree(&lat, f);
                // μf < μt, cross-multiplied with nonnegative ranks
                let lhs = &df * BigRational::from_integer(rt.clone());
                let rhs = &dt * BigRational::from_integer(rf.clone());
                if !(lhs < rhs || (rt.is_zero() && !rf.is_zero())) {
                    bad.push(format!("{w:?} θ={theta}: slopes not ordered"));
                }
                let chi = lat.chi_bar(f, t);
                if rf.is_positive() && !chi.is_positive() {
                    bad.push(format!("{w:?} θ={theta}: χ̄(f,t) = {chi}"));
                }
                sides.push(s);
            }
            // raising θ along the grid never moves a class from Free towards Torsion
            for which in 0..2 {
                let seq: Vec<u8> = sides.iter().map(|s| side_rank(s[which])).collect();
                if seq.windows(2).any(|p| p[1] > p[0]) {
                    bad.push(format!("{w:?}: not monotone {seq:?}"));
                }
            }
        }
    }
    bad.truncate(10);
    outcome(
        bad.is_empty(),
        format!("{directional} directional pairs {}", bad.join("; ")),
    )
}

fn main() -> ExitCode {
    let mut cy_pairs = Vec::new();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((
        1,
        "Dynkin CY dimensions (h, h-2)",
        dynkin_cy_dimensions(&mut cy_pairs),
    ));
    results.push((
        2,
        "tube periodicity and CY pair (r, r)",
        tube_periodicity(&mut cy_pairs),
    ));
    let grids: Vec<Grid> = TUBE_RANKS.iter().map(|&r| Grid::new(r)).collect();
    results.push((3, "Serre duality in tubes", tube_serre_duality(&grids)));
    results.push((4, "tube closed form = solver", tube_closed_form(&grids)));
    results.push((
        5,
        "length bound dim Hom(τ^k A, B) >= l/r",
        tube_length_bound(&grids),
    ));
    results.push((
        6,
        "Kronecker projectives and regular modules",
        kronecker_facts(),
    ));
    results.push((7, "wildness sign and Dynkin roots", wildness_sign()));
    results.push((
        8,
        "CY fractions in [0, 1]",
        cy_fractions_in_unit_interval(&cy_pairs),
    ));
    results.push((9, "tubular lattice numerics", tubular_numerics()));
    results.push((10, "twist quasi-inverse on K_0", twist_quasi_inverse()));
    results.push((11, "L-sequence Euler table", l_sequence_table()));
    results.push((
        12,
        "explicit twists match classes",
        explicit_twist_coherence(),
    ));
    results.push((13, "slope-cut torsion pairs", torsion_cuts()));
    let mut failures = 0;
    for (n, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failures += usize::from(!o.pass);
        println!("criterion {n:>2} {tag} {name}: {}", o.detail.trim());
    }
    println!(
        "{} of {} criteria pass",
        results.len() - failures,
        results.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
