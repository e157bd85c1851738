//! Verification suites and machine-readable reports.
//!
//! Every case is a pure function of its inputs and a per-case RNG stream
//! derived from the run seed, so a report is reproducible byte for byte
//! apart from `wall_time_ms`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::derived::{cy_dimension, positive_roots, serre_power_shift, DynkinQuiver, DynkinType};
use crate::error::{Error, Result};
use crate::quiver::{euler_form, matrix_order, LatticeVector, Quiver};
use crate::rep::{self, ker_coker, kronecker, Rep};
use crate::torsion::{
    self, classify, random_effective_class, split_sign_check, Side, SlopeCut, Theta,
};
use crate::tube::{self, TubeObject};
use crate::twist::{
    check_quasi_inverse, dual_twist_explicit, find_l_config, l_sequence, random_spherical_data,
    twist_class, twist_explicit, EulerLattice, SphericalData,
};
use crate::wpl::{euler_characteristic, tubular_lattice, weight_types_up_to, WeightType};

pub const SUITES: [&str; 7] = [
    "dynkin",
    "tube",
    "kronecker",
    "wpl",
    "twist",
    "torsion",
    "all",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub inputs: Value,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub wall_time_ms: u128,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random vectors per spherical configuration.
    pub samples: usize,
    /// Random spherical configurations per tubular lattice.
    pub configs: usize,
    /// Random class pairs per torsion cut.
    pub pairs: usize,
    pub ranks: Vec<usize>,
    pub max_length: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 42,
            samples: 1000,
            configs: 3,
            pairs: 200,
            ranks: vec![1, 2, 3, 4],
            max_length: 8,
        }
    }
}

fn case(
    id: impl Into<String>,
    inputs: Value,
    expected: impl Serialize,
    got: impl Serialize,
) -> Case {
    let expected = serde_json::to_value(expected).expect("serializable");
    let got = serde_json::to_value(got).expect("serializable");
    Case {
        id: id.into(),
        inputs,
        pass: expected == got,
        expected,
        got,
    }
}

fn failed(id: impl Into<String>, inputs: Value, expected: impl Serialize, err: Error) -> Case {
    case(id, inputs, expected, json!({ "error": err.to_string() }))
}

type Job = Box<dyn Fn(&mut ChaCha8Rng) -> Case + Send + Sync>;

fn job(f: impl Fn(&mut ChaCha8Rng) -> Case + Send + Sync + 'static) -> Job {
    Box::new(f)
}

/// Runs a named suite. The thread count is capped by `FCY_THREADS` if set.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Report> {
    let start = Instant::now();
    let jobs = jobs_for(name, opts)?;
    let seed = opts.seed;
    let run = || -> Vec<Case> {
        jobs.par_iter()
            .enumerate()
            .map(|(i, job)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                job(&mut rng)
            })
            .collect()
    };
    let cases = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Parse(e.to_string()))?
            .install(run),
        None => run(),
    };
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(Report {
        suite: name.to_string(),
        seed,
        summary: Summary {
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
        },
        cases,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn thread_cap() -> Option<usize> {
    std::env::var("FCY_THREADS")
        .ok()?
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

fn jobs_for(name: &str, opts: &SuiteOptions) -> Result<Vec<Job>> {
    Ok(match name {
        "dynkin" => dynkin_jobs(),
        "tube" => tube_jobs(opts),
        "kronecker" => kronecker_jobs(),
        "wpl" => wpl_jobs(),
        "twist" => twist_jobs(opts),
        "torsion" => torsion_jobs(opts),
        "all" => {
            let mut all = dynkin_jobs();
            all.extend(tube_jobs(opts));
            all.extend(kronecker_jobs());
            all.extend(wpl_jobs());
            all.extend(twist_jobs(opts));
            all.extend(torsion_jobs(opts));
            all
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Coxeter numbers of the Dynkin types, from the classification.
pub fn coxeter_number(ty: DynkinType) -> usize {
    match ty {
        DynkinType::A(n) => n + 1,
        DynkinType::D(n) => 2 * n - 2,
        DynkinType::E6 => 12,
        DynkinType::E7 => 18,
        DynkinType::E8 => 30,
    }
}

pub const DYNKIN_SUITE_TYPES: [DynkinType; 7] = [
    DynkinType::A(2),
    DynkinType::A(3),
    DynkinType::A(4),
    DynkinType::A(5),
    DynkinType::D(4),
    DynkinType::D(5),
    DynkinType::E6,
];

fn dynkin_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for ty in DYNKIN_SUITE_TYPES {
        let h = coxeter_number(ty);
        let inputs = json!({ "type": ty.to_string() });
        let i = inputs.clone();
        jobs.push(job(move |_| {
            let id = format!("dynkin/{ty}/coxeter_order");
            match DynkinQuiver::standard(ty) {
                Ok(q) => case(id, i.clone(), h, matrix_order(q.coxeter(), 64)),
                Err(e) => failed(id, i.clone(), h, e),
            }
        }));
        let i = inputs.clone();
        jobs.push(job(move |_| {
            let id = format!("dynkin/{ty}/serre_power_h");
            match DynkinQuiver::standard(ty) {
                Ok(q) => case(id, i.clone(), h as i64 - 2, serre_power_shift(&q, h)),
                Err(e) => failed(id, i.clone(), h as i64 - 2, e),
            }
        }));
        let i = inputs;
        jobs.push(job(move |_| {
            let id = format!("dynkin/{ty}/minimal_pair_ratio");
            let expected = crate::cy::CyPair::new(h as u32, h as i64 - 2).reduced();
            match DynkinQuiver::standard(ty).and_then(|q| cy_dimension(&q, 64)) {
                Ok(p) => case(id, i.clone(), expected, p.reduced()),
                Err(e) => failed(id, i.clone(), expected, e),
            }
        }));
    }
    jobs.push(job(|_| {
        let counts: Vec<(String, usize)> = DYNKIN_SUITE_TYPES
            .iter()
            .map(|&ty| {
                let q = DynkinQuiver::standard(ty).expect("valid type");
                let ones = positive_roots(&q)
                    .iter()
                    .filter(|d| q.tits_form(d) == BigInt::from(1))
                    .count();
                (ty.to_string(), ones)
            })
            .collect();
        let expected: Vec<(String, usize)> = DYNKIN_SUITE_TYPES
            .iter()
            .map(|&ty| (ty.to_string(), ty.root_count()))
            .collect();
        case("dynkin/roots_have_form_one", json!({}), expected, counts)
    }));
    jobs
}

struct TubeGrid {
    objs: Vec<TubeObject>,
    reps: Vec<Rep>,
}

impl TubeGrid {
    fn new(rank: usize, max_length: usize) -> Self {
        let objs = tube::objects(rank, max_length);
        let reps = objs.iter().map(TubeObject::to_rep).collect();
        TubeGrid { objs, reps }
    }

    fn index(&self, x: &TubeObject) -> usize {
        self.objs
            .iter()
            .position(|o| o == x)
            .expect("object in grid")
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.objs.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    }
}

/// Counts pairs where the solver confirms `dim Ext¹(Y, τX) = dim Hom(X, Y)`.
pub fn tube_serre_agreements(rank: usize, max_length: usize) -> Result<(usize, usize)> {
    let g = TubeGrid::new(rank, max_length);
    let pairs = g.pairs();
    let ok = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<bool> {
            let tx = g.objs[i].tau();
            // τX has the same length as X, so it lies in the grid
            let tx = &g.reps[g.index(&tx)];
            Ok(rep::ext1_dim(&g.reps[j], tx)? == rep::hom_dim(&g.reps[i], &g.reps[j])?)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok((ok.iter().filter(|&&b| b).count(), pairs.len()))
}

/// Counts pairs where the closed-form Hom dimension matches the solver.
pub fn tube_closed_form_agreements(rank: usize, max_length: usize) -> Result<(usize, usize)> {
    let g = TubeGrid::new(rank, max_length);
    let pairs = g.pairs();
    let ok = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<bool> {
            Ok(tube::hom_dim(&g.objs[i], &g.objs[j])? == rep::hom_dim(&g.reps[i], &g.reps[j])?)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok((ok.iter().filter(|&&b| b).count(), pairs.len()))
}

/// Counts pairs `(A, B)` with some `k` giving `r · dim Hom(τ^k A, B) >= min(l_A, l_B)`,
/// Hom dimensions from the solver.
pub fn tube_length_bound_agreements(rank: usize, max_length: usize) -> Result<(usize, usize)> {
    let g = TubeGrid::new(rank, max_length);
    let pairs = g.pairs();
    let ok = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<bool> {
            let (a, b) = (&g.objs[i], &g.objs[j]);
            let l = a.length().min(b.length());
            for k in 0..rank {
                let ta = &g.reps[g.index(&a.tau_pow(k as i64))];
                if rank * rep::hom_dim(ta, &g.reps[j])? >= l {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok((ok.iter().filter(|&&b| b).count(), pairs.len()))
}

fn count_case(id: String, inputs: Value, r: Result<(usize, usize)>) -> Case {
    match r {
        Ok((ok, total)) => case(id, inputs, total, ok),
        Err(e) => failed(id, inputs, "all pairs", e),
    }
}

fn tube_jobs(opts: &SuiteOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    let l = opts.max_length;
    for &r in &opts.ranks {
        let inputs = json!({ "rank": r, "max_length": l });
        let i = inputs.clone();
        jobs.push(job(move |_| {
            let objs = tube::objects(r, l);
            let fixed = objs.iter().filter(|x| x.tau_pow(r as i64) == **x).count();
            case(
                format!("tube/r{r}/tau_period"),
                i.clone(),
                objs.len(),
                fixed,
            )
        }));
        let i = inputs.clone();
        jobs.push(job(move |_| {
            let id = format!("tube/r{r}/cy_pair");
            let expected = json!({ "n": r, "m": r });
            match tube::cy_pair(r, l, 4 * r) {
                Ok(p) => case(id, i.clone(), expected, p),
                Err(e) => failed(id, i.clone(), expected, e),
            }
        }));
        let i = inputs.clone();
        jobs.push(job(move |_| {
            count_case(
                format!("tube/r{r}/serre_duality"),
                i.clone(),
                tube_serre_agreements(r, l),
            )
        }));
        let i = inputs.clone();
        jobs.push(job(move |_| {
            count_case(
                format!("tube/r{r}/closed_form"),
                i.clone(),
                tube_closed_form_agreements(r, l),
            )
        }));
        let i = inputs;
        jobs.push(job(move |_| {
            count_case(
                format!("tube/r{r}/length_bound"),
                i.clone(),
                tube_length_bound_agreements(r, l),
            )
        }));
    }
    jobs
}

pub const KRONECKER_PARAMETERS: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 3)];

/// `(ker dims, coker dims, dim Hom(P_x, R_f), dim Hom(P_y, R_f))` for
/// `f = λa + μb : P_y → P_x`.
pub fn kronecker_fitting(lambda: i64, mu: i64) -> Result<(Vec<usize>, Vec<usize>, usize, usize)> {
    let f = kronecker::projective_map(&BigInt::from(lambda).into(), &BigInt::from(mu).into())?;
    let (ker, coker) = ker_coker(&f, &kronecker::p_y(), &kronecker::p_x())?;
    Ok((
        ker.dims().to_vec(),
        coker.dims().to_vec(),
        rep::hom_dim(&kronecker::p_x(), &coker)?,
        rep::hom_dim(&kronecker::p_y(), &coker)?,
    ))
}

fn kronecker_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![job(|_| {
        let id = "kronecker/hom_py_px";
        match rep::hom_dim(&kronecker::p_y(), &kronecker::p_x()) {
            Ok(d) => case(id, json!({}), 2, d),
            Err(e) => failed(id, json!({}), 2, e),
        }
    })];
    for (lambda, mu) in KRONECKER_PARAMETERS {
        jobs.push(job(move |_| {
            let id = format!("kronecker/fitting/{lambda}:{mu}");
            let inputs = json!({ "lambda": lambda, "mu": mu });
            let expected = json!({ "ker": [0, 0], "coker": [1, 1], "hom_px": 1, "hom_py": 1 });
            match kronecker_fitting(lambda, mu) {
                Ok((k, c, hx, hy)) => case(
                    id,
                    inputs,
                    expected,
                    json!({ "ker": k, "coker": c, "hom_px": hx, "hom_py": hy }),
                ),
                Err(e) => failed(id, inputs, expected, e),
            }
        }));
    }
    jobs.push(job(|_| {
        let regs: Vec<Rep> = KRONECKER_PARAMETERS
            .iter()
            .map(|&(l, m)| kronecker::regular_i64(l, m).expect("nonzero parameter"))
            .collect();
        let mut bad = Vec::new();
        for (i, a) in regs.iter().enumerate() {
            for (j, b) in regs.iter().enumerate() {
                let want = if i == j { (1, 1) } else { (0, 0) };
                match rep::hom_ext_dims(a, b) {
                    Ok(got) if got == want => {}
                    other => bad.push(format!("{i},{j}: {other:?}")),
                }
            }
        }
        case(
            "kronecker/regular_orthogonality",
            json!({ "parameters": KRONECKER_PARAMETERS }),
            Vec::<String>::new(),
            bad,
        )
    }));
    jobs.push(job(|_| {
        let d = LatticeVector::from_i64s(&[1, 2]);
        let id = "kronecker/k3_wild_form";
        match euler_form(&Quiver::kronecker(3), &d, &d) {
            Ok(v) => case(
                id,
                json!({ "arrows": 3, "d": [1, 2] }),
                -1,
                i64::try_from(&v).ok(),
            ),
            Err(e) => failed(id, json!({}), -1, e),
        }
    }));
    jobs
}

pub const TUBULAR_WEIGHTS: [&[u32]; 4] = [&[2, 2, 2, 2], &[3, 3, 3], &[2, 4, 4], &[2, 3, 6]];

fn wpl_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![job(|_| {
        let mut got: Vec<Vec<u32>> = weight_types_up_to(12)
            .into_iter()
            .filter(|w| {
                WeightType::new(w)
                    .map(|w| euler_characteristic(&w).is_zero())
                    .unwrap_or(false)
            })
            .collect();
        let mut expected: Vec<Vec<u32>> = TUBULAR_WEIGHTS.iter().map(|w| w.to_vec()).collect();
        got.sort();
        expected.sort();
        case(
            "wpl/zero_euler_characteristic",
            json!({ "max_weight_sum": 12 }),
            expected,
            got,
        )
    })];
    for w in TUBULAR_WEIGHTS {
        jobs.push(job(move |_| {
            let id = format!("wpl/{}/lattice", join(w));
            let inputs = json!({ "weights": w });
            let n = 2 + w.iter().map(|p| *p as usize - 1).sum::<usize>();
            let p = w.iter().fold(1u32, |a, &b| num_integer::lcm(a, b));
            let expected = json!({
                "coxeter_order": p, "radical_rank": n - 2, "antisymmetric": true, "rank_degree_identity": true
            });
            match WeightType::new(w).and_then(|w| tubular_lattice(&w)) {
                Ok(lat) => case(
                    id,
                    inputs,
                    expected,
                    json!({
                        "coxeter_order": matrix_order(lat.coxeter(), 4 * p as usize),
                        "radical_rank": lat.radical_rank(),
                        "antisymmetric": lat.is_antisymmetric(),
                        "rank_degree_identity": lat.rank_degree_identity_holds(),
                    }),
                ),
                Err(e) => failed(id, inputs, expected, e),
            }
        }));
    }
    jobs
}

fn join(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn twist_jobs(opts: &SuiteOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    for w in TUBULAR_WEIGHTS {
        for c in 0..opts.configs {
            let samples = opts.samples;
            jobs.push(job(move |rng| {
                let id = format!("twist/{}/quasi_inverse/{c}", join(w));
                let mut inputs = json!({ "weights": w, "samples": samples });
                let lat = match WeightType::new(w).and_then(|w| tubular_lattice(&w)) {
                    Ok(lat) => lat,
                    Err(e) => return failed(id, inputs, "ok", e),
                };
                match random_spherical_data(&lat, rng, 6) {
                    Ok(data) => {
                        inputs["classes"] = json!(data.classes());
                        inputs["sigma"] = json!(data.sigma());
                        match check_quasi_inverse(&lat, &data, rng, samples) {
                            Ok(()) => case(id, inputs, "ok", "ok"),
                            Err(ce) => case(id, inputs, "ok", &*ce),
                        }
                    }
                    Err(e) => failed(id, inputs, "ok", e),
                }
            }));
        }
        jobs.push(job(move |_| {
            let id = format!("twist/{}/l_sequence", join(w));
            let inputs = json!({ "weights": w, "range": [-5, 5] });
            let expected: Vec<Vec<i64>> = (-5..=5)
                .map(|i| (-5..=5).map(|j| 1 + j - i).collect())
                .collect();
            match WeightType::new(w)
                .and_then(|w| tubular_lattice(&w))
                .and_then(|l| find_l_config(&l))
            {
                Ok(cfg) => {
                    let seq = l_sequence(&cfg, -5, 5);
                    let got: Vec<Vec<Option<i64>>> = seq
                        .chi
                        .iter()
                        .map(|row| row.iter().map(|v| i64::try_from(v).ok()).collect())
                        .collect();
                    case(id, inputs, expected, got)
                }
                Err(e) => failed(id, inputs, expected, e),
            }
        }));
    }
    jobs.push(job(|_| {
        let expected = json!({ "ker": [0, 0], "coker": [1, 0], "matches_class": true });
        kronecker_dual_twist_case()
            .unwrap_or_else(|e| failed("twist/kronecker/dual_projective", json!({}), expected, e))
    }));
    jobs.push(job(|_| {
        kronecker_twist_injective_case().unwrap_or_else(|e| {
            failed(
                "twist/kronecker/injective",
                json!({}),
                json!({ "matches_class": true }),
                e,
            )
        })
    }));
    jobs
}

fn kronecker_data(r: &Rep) -> Result<SphericalData> {
    let el = EulerLattice::of_quiver(&kronecker::quiver())?;
    SphericalData::new(el.euler(), vec![r.dim_vector()], vec![0])
}

fn kronecker_dual_twist_case() -> Result<Case> {
    let r = kronecker::regular_i64(1, 0)?;
    let t = dual_twist_explicit(std::slice::from_ref(&r), &kronecker::p_y())?;
    let data = kronecker_data(&r)?;
    Ok(case(
        "twist/kronecker/dual_projective",
        json!({ "E": r.dims(), "X": "P_y" }),
        json!({ "ker": [0, 0], "coker": [1, 0], "matches_class": true }),
        json!({
            "ker": t.degree0.dims(),
            "coker": t.shifted.dims(),
            "matches_class": t.class() == crate::twist::dual_twist_class(&data, &kronecker::p_y().dim_vector()),
        }),
    ))
}

fn kronecker_twist_injective_case() -> Result<Case> {
    let r = kronecker::regular_i64(1, 0)?;
    let x = kronecker::i_x();
    let t = twist_explicit(std::slice::from_ref(&r), &x)?;
    let data = kronecker_data(&r)?;
    Ok(case(
        "twist/kronecker/injective",
        json!({ "E": r.dims(), "X": "I_x" }),
        json!({ "matches_class": true }),
        json!({ "matches_class": t.class() == twist_class(&data, &x.dim_vector()) }),
    ))
}

/// The slope grid used for torsion cuts, including an irrational bracket around √2.
pub fn theta_grid() -> Vec<Theta> {
    vec![
        Theta::rational(-1, 1),
        Theta::rational(0, 1),
        Theta::rational(1, 2),
        Theta::irrational(
            BigRational::new(14142.into(), 10000.into()),
            BigRational::new(14143.into(), 10000.into()),
        )
        .expect("nonempty bracket"),
        Theta::Infinity,
    ]
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CutStats {
    pub unclassified: usize,
    pub irrational_boundary_hits: usize,
    pub direction_failures: usize,
    pub pairs_checked: usize,
}

/// Samples `pairs` effective class pairs and checks totality, boundary
/// avoidance for irrational cuts and directional consistency.
pub fn cut_stats(w: &[u32], theta: &Theta, pairs: usize, rng: &mut ChaCha8Rng) -> Result<CutStats> {
    let lat = tubular_lattice(&WeightType::new(w)?)?;
    let cut = SlopeCut::new(theta.clone());
    let mut s = CutStats::default();
    for _ in 0..pairs {
        let a = random_effective_class(&lat, rng, 4);
        let b = random_effective_class(&lat, rng, 4);
        let (ca, cb) = match (classify(&cut, &lat, &a), classify(&cut, &lat, &b)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => {
                s.unclassified += 1;
                continue;
            }
        };
        if theta.is_irrational() {
            s.irrational_boundary_hits +=
                usize::from(ca == Side::Boundary) + usize::from(cb == Side::Boundary);
        }
        let pair = match (ca, cb) {
            (Side::Torsion, Side::Free) => Some((a, b)),
            (Side::Free, Side::Torsion) => Some((b, a)),
            _ => None,
        };
        if let Some((t, f)) = pair {
            s.pairs_checked += 1;
            match split_sign_check(&cut, &lat, &t, &f) {
                Ok(r) if r.pass() => {}
                _ => s.direction_failures += 1,
            }
        }
    }
    Ok(s)
}

/// Raising `θ` along the grid never moves a sampled class from Free to Torsion.
pub fn monotonicity_violations(w: &[u32], samples: usize, rng: &mut ChaCha8Rng) -> Result<usize> {
    let lat = tubular_lattice(&WeightType::new(w)?)?;
    let grid = theta_grid();
    let mut bad = 0;
    for _ in 0..samples {
        let x = random_effective_class(&lat, rng, 4);
        let sides: Vec<Side> = grid
            .iter()
            .map(|t| classify(&SlopeCut::new(t.clone()), &lat, &x))
            .collect::<Result<_>>()?;
        let rank = |s: &Side| match s {
            Side::Torsion => 2,
            Side::Boundary => 1,
            Side::Free => 0,
        };
        if sides.windows(2).any(|p| rank(&p[1]) > rank(&p[0])) {
            bad += 1;
        }
    }
    Ok(bad)
}

fn torsion_jobs(opts: &SuiteOptions) -> Vec<Job> {
    let mut jobs = Vec::new();
    let pairs = opts.pairs;
    for w in TUBULAR_WEIGHTS {
        for theta in theta_grid() {
            jobs.push(job(move |rng| {
                let id = format!("torsion/{}/theta={theta}", join(w));
                let inputs = json!({ "weights": w, "theta": theta, "pairs": pairs });
                let mut expected = CutStats::default();
                match cut_stats(w, &theta, pairs, rng) {
                    Ok(s) => {
                        expected.pairs_checked = s.pairs_checked;
                        case(id, inputs, expected, s)
                    }
                    Err(e) => failed(id, inputs, expected, e),
                }
            }));
        }
        jobs.push(job(move |rng| {
            let id = format!("torsion/{}/monotone", join(w));
            let inputs = json!({ "weights": w, "samples": pairs });
            match monotonicity_violations(w, pairs, rng) {
                Ok(v) => case(id, inputs, 0, v),
                Err(e) => failed(id, inputs, 0, e),
            }
        }));
    }
    jobs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// JSON is the full report; CSV has one row per case, JSON-encoded cells.
pub fn export(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => serde_json::to_vec_pretty(report).expect("report serializes"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "inputs", "expected", "got", "pass"])
                .expect("in-memory write");
            for c in &report.cases {
                w.write_record([
                    c.id.clone(),
                    c.inputs.to_string(),
                    c.expected.to_string(),
                    c.got.to_string(),
                    c.pass.to_string(),
                ])
                .expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistCheck {
    pub lattice: Vec<u32>,
    pub check: String,
    pub seed: u64,
    pub samples: usize,
    pub configurations: usize,
    pub pass: bool,
    pub counterexample: Option<Value>,
}

/// `t_E t*_E = id` and isometry on `samples` vectors for `configs` random
/// spherical configurations of the lattice with the given weights.
pub fn twist_check(
    weights: &[u32],
    seed: u64,
    samples: usize,
    configs: usize,
) -> Result<TwistCheck> {
    let lat = tubular_lattice(&WeightType::new(weights)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexample = None;
    for _ in 0..configs {
        let data = random_spherical_data(&lat, &mut rng, 6)?;
        if let Err(ce) = check_quasi_inverse(&lat, &data, &mut rng, samples) {
            counterexample = Some(serde_json::to_value(&*ce).expect("serializable"));
            break;
        }
    }
    Ok(TwistCheck {
        lattice: weights.to_vec(),
        check: "quasi-inverse".into(),
        seed,
        samples,
        configurations: configs,
        pass: counterexample.is_none(),
        counterexample,
    })
}

/// Parses `"1,0,-2"` into a class.
pub fn parse_class(s: &str) -> Result<LatticeVector> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(LatticeVector)
}

pub fn torsion_query(weights: &[u32], theta: &str, class: &str) -> Result<torsion::TorsionAnswer> {
    let lat = tubular_lattice(&WeightType::new(weights)?)?;
    torsion::query(&lat, theta.parse()?, &parse_class(class)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteOptions {
        SuiteOptions {
            samples: 50,
            configs: 1,
            pairs: 30,
            ranks: vec![1, 2],
            max_length: 4,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn unknown_suite_and_format() {
        assert!(matches!(
            run_suite("nope", &quick()),
            Err(Error::UnknownSuite(_))
        ));
        assert!(matches!(
            "xml".parse::<Format>(),
            Err(Error::UnknownFormat(_))
        ));
    }

    #[test]
    fn dynkin_suite_passes() {
        let r = run_suite("dynkin", &quick()).unwrap();
        assert!(
            r.all_pass(),
            "{:#?}",
            r.cases.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert_eq!(r.summary.total, 3 * DYNKIN_SUITE_TYPES.len() + 1);
    }

    #[test]
    fn export_formats() {
        let r = run_suite("kronecker", &quick()).unwrap();
        assert!(r.all_pass());
        let back: Report = serde_json::from_slice(&export(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
        let csv = String::from_utf8(export(&r, Format::Csv)).unwrap();
        let rows = csv::Reader::from_reader(csv.as_bytes()).records().count();
        assert_eq!(rows, r.cases.len());
    }

    #[test]
    fn same_seed_same_report() {
        let mut a = run_suite("torsion", &quick()).unwrap();
        let mut b = run_suite("torsion", &quick()).unwrap();
        a.wall_time_ms = 0;
        b.wall_time_ms = 0;
        assert_eq!(export(&a, Format::Json), export(&b, Format::Json));
        assert!(a.all_pass());
    }

    #[test]
    fn helpers() {
        assert_eq!(
            parse_class("1, -2,3").unwrap(),
            LatticeVector::from_i64s(&[1, -2, 3])
        );
        assert!(parse_class("1,x").is_err());
        assert!(twist_check(&[2, 2, 2, 2], 1, 20, 2).unwrap().pass);
        let a = torsion_query(&[3, 3, 3], "1/2", "0,1,0,0,0,0,0,0").unwrap();
        assert_eq!(a.class, "T");
    }
}
