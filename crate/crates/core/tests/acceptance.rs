//! One PASS/FAIL line per acceptance criterion. Thresholds are pinned in
//! the constants below; a criterion that does not hold fails its test.

use num_complex::Complex64;
use qwalk::analysis::{
    compare, diffusion_tensor, diffusion_tensor_fd, fit_exponent, group_velocity, linear_fit, phase_error_per_step,
    schrodinger_evolve, PacketModel,
};
use qwalk::cayley::{
    build_ball, builtin_coset, check_homogeneity, coset_reduce, direct_symbol, parse_presentation, CayleyBall,
    CosetStructure, GroupKernel,
};
use qwalk::engine::{make_packet, observables, step_momentum, PacketParams, Projection};
use qwalk::linalg::{c, norm3, unitarity_residual};
use qwalk::lorentz::{dmap, nonlinear_boost, orbit, region_centers, Boost, FMap, FourMomentum, OrbitFamily};
use qwalk::maxwell::{
    check_anticommutators, fock_commutator_check, photon_dispersion, polarization_frame, vacuum_speed,
    FockCheckConfig, Species,
};
use qwalk::walks::{
    binary_rotation_rep, check_isotropy, check_unitarity_conditions, omega, position_kernel, scalar_walk_solutions,
    symbol_matrix, DEFAULT_SCALAR_CAP,
};
use qwalk::{Branch, Chirality, Lattice, WalkSpec, WaveVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

const SEED: u64 = 20_240_601;

const UNITARITY_TOL: f64 = 1e-12;
const UNITARITY_POINTS: usize = 10_000;
const UNITARITY_BUDGET: Duration = Duration::from_secs(10);

const KERNEL_TOL: f64 = 1e-12;
const KERNEL_POINTS: usize = 1_000;
const KERNEL_BUDGET: Duration = Duration::from_secs(5);

const AXIS_TOL: f64 = 1e-14;
const FLAT_TOL: f64 = 1e-12;
const SHIFT_TOL: f64 = 1e-12;

const DRIFT_TOL: f64 = 0.01;
const DIFFUSION_FD_TOL: f64 = 1e-6;

const PACKET_L1_MAX: f64 = 0.05;
const PACKET_MEAN_TOL: f64 = 0.5;
const PACKET_BUDGET: Duration = Duration::from_secs(30);

const MASSLESS_EXPONENT: (f64, f64) = (3.0, 0.3);
const MASSIVE_EXPONENT: (f64, f64) = (3.0, 0.2);
const SCALING_BUDGET: Duration = Duration::from_secs(60);

const BETA_ZERO_TOL: f64 = 1e-12;
const RAPIDITY_TOL: f64 = 1e-8;
const INVARIANCE_TOL: f64 = 1e-9;
const SMALL_K_REL_TOL: f64 = 1e-3;
const ORBIT_CLOSE_TOL: f64 = 1e-8;
const ORBIT_OMEGA_TOL: f64 = 1e-12;

const PHOTON_REL_TOL: f64 = 1e-4;
const SLOPE_REL_TOL: f64 = 0.05;
const ANISOTROPY_MARGIN: f64 = 1e-4;
const FRAME_TOL: f64 = 1e-12;

const FOCK_VACUUM_TOL: f64 = 1e-12;
const FOCK_FILL_CONST: f64 = 2.0;
const FOCK_HALVING: (f64, f64) = (0.4, 0.6);
const FOCK_BUDGET: Duration = Duration::from_secs(60);

const COSET_TOL: f64 = 1e-12;
const CAYLEY_BUDGET: Duration = Duration::from_secs(10);
const SCALAR_BUDGET: Duration = Duration::from_secs(5);

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!("{} [{id:>2}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn weyl(d: usize, ch: Chirality, br: Branch) -> WalkSpec {
    WalkSpec::weyl(d, ch, br).unwrap()
}

fn dirac(d: usize, ch: Chirality, m: f64) -> WalkSpec {
    WalkSpec::dirac(d, ch, Branch::A, m).unwrap()
}

fn chiralities() -> [Chirality; 2] {
    [Chirality::Plus, Chirality::Minus]
}

fn max_over<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> f64) -> f64 {
    items.into_iter().map(f).fold(0.0, f64::max)
}

#[test]
fn criterion_01_unitarity() {
    let t = Instant::now();
    let mut walks = vec![];
    for d in 1..=3 {
        for ch in chiralities() {
            for br in [Branch::A, Branch::B] {
                walks.push(weyl(d, ch, br));
            }
            for m in [0.0, 0.1, 0.4, 0.6, 0.99, 1.0] {
                walks.push(dirac(d, ch, m));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for spec in &walks {
        let pts = spec.lattice().sample_zone(UNITARITY_POINTS, SEED).unwrap();
        worst = worst.max(max_over(&pts, |k| unitarity_residual(&symbol_matrix(k, spec).unwrap())));
    }
    let el = t.elapsed();
    report(
        1,
        "symbol unitarity",
        worst <= UNITARITY_TOL && el < UNITARITY_BUDGET,
        format!("{} walks x {UNITARITY_POINTS} points, max residual {worst:.2e}, {el:.2?}", walks.len()),
    );
}

#[test]
fn criterion_02_transition_kernel() {
    let t = Instant::now();
    let spec = WalkSpec::weyl_plus(3);
    let kernel = position_kernel(&spec);
    let count = kernel.entries.len();
    let pts = Lattice::Bcc.sample_zone(KERNEL_POINTS, SEED).unwrap();
    let recon = max_over(&pts, |k| (kernel.symbol(k).unwrap() - symbol_matrix(k, &spec).unwrap()).norm());
    let cond = check_unitarity_conditions(&kernel);
    let iso = check_isotropy(&kernel, &binary_rotation_rep()).unwrap();
    let el = t.elapsed();
    let pass = count == 8
        && recon <= KERNEL_TOL
        && cond.max_residual <= KERNEL_TOL
        && iso.pass
        && iso.transitive
        && el < KERNEL_BUDGET;
    report(
        2,
        "transition kernel",
        pass,
        format!(
            "{count} matrices, reconstruction {recon:.2e}, unitarity {:.2e}, isotropy {:.2e} transitive={}, {el:.2?}",
            cond.max_residual, iso.conjugation_residual, iso.transitive
        ),
    );
}

#[test]
fn criterion_03_dispersion_identities() {
    let mut axis: f64 = 0.0;
    for ch in chiralities() {
        for br in [Branch::A, Branch::B] {
            let spec = weyl(3, ch, br);
            for j in 0..=1000 {
                let kappa = 3f64.sqrt() * PI * j as f64 / 1000.0;
                let w = omega(&WaveVector::d3(kappa, 0.0, 0.0), &spec).unwrap();
                axis = axis.max((w - kappa / 3f64.sqrt()).abs());
            }
        }
    }

    let mut flat: f64 = 0.0;
    for m in [1.0, -1.0] {
        let spec = dirac(3, Chirality::Plus, m);
        for k in qwalk::lattice::momentum_grid(32, Lattice::Bcc).unwrap().points {
            flat = flat.max((omega(&k, &spec).unwrap() - PI / 2.0).abs());
        }
    }

    let [_, k1, k2, k3] = region_centers();
    let (p, m) = (weyl(3, Chirality::Plus, Branch::A), weyl(3, Chirality::Minus, Branch::A));
    let a = |k: &WaveVector, s: &WalkSpec| symbol_matrix(k, s).unwrap();
    let shift = max_over(Lattice::Bcc.sample_zone(1000, SEED).unwrap(), |k| {
        [
            (a(&k, &p) + a(&k.add(&k1), &m)).norm(),
            (a(&k, &m) - a(&k.add(&k1), &p)).norm(),
            (a(&k, &p) - a(&k.add(&k2), &m)).norm(),
            (a(&k, &m) + a(&k.add(&k2), &p)).norm(),
            (a(&k, &p) + a(&k.add(&k3), &p)).norm(),
            (a(&k, &m) + a(&k.add(&k3), &m)).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    });
    report(
        3,
        "dispersion identities",
        axis <= AXIS_TOL && flat <= FLAT_TOL && shift <= SHIFT_TOL,
        format!("axis {axis:.2e}, |m|=1 flatness {flat:.2e}, shift relations {shift:.2e}"),
    );
}

#[test]
fn criterion_04_drift_values() {
    let d1 = |m: f64| dirac(1, Chirality::Plus, m);
    let (ka, kb) = (WaveVector::d1(3.0 * PI / 10.0), WaveVector::d1(0.1));
    let va = group_velocity(&ka, &d1(0.6)).unwrap()[0];
    let vb = group_velocity(&kb, &d1(0.4)).unwrap()[0];
    let da = diffusion_tensor(&ka, &d1(0.6)).unwrap()[0][0];
    let db = diffusion_tensor(&kb, &d1(0.4)).unwrap()[0][0];
    let fa = diffusion_tensor_fd(&ka, &d1(0.6), 1e-4).unwrap()[0][0];
    let fb = diffusion_tensor_fd(&kb, &d1(0.4), 1e-4).unwrap()[0][0];
    let fd_gap = (da - fa).abs().max((db - fb).abs());
    let pass = (va - 0.73).abs() <= DRIFT_TOL && (vb - 0.22).abs() <= DRIFT_TOL && fd_gap <= DIFFUSION_FD_TOL;
    report(
        4,
        "drift values",
        pass,
        format!(
            "v={va:.4} (0.73), v={vb:.4} (0.22); D={da:.4} vs reported 0.31, D={db:.4} vs reported 2.30 \
             (convention gap, informational); analytic vs FD {fd_gap:.2e}"
        ),
    );
}

#[test]
fn criterion_05_wavepacket() {
    let t = Instant::now();
    let spec = dirac(1, Chirality::Plus, 0.4);
    let k0 = WaveVector::d1(0.1);
    let n = 4096;
    let mut params = PacketParams::gaussian(k0, 20.0, vec![(n / 2) as f64], vec![c(1.0, 0.0), c(0.0, 0.0)]);
    params.projection = Projection::PerFiber;
    let psi = make_packet(&params, n, &spec).unwrap();
    let model = PacketModel::from_walk(&k0, &spec, 1.0).unwrap();

    let walk = step_momentum(&psi, &spec, 200).unwrap();
    let reference = schrodinger_evolve(&psi, &model, 200).unwrap().state;
    let l1 = compare(&walk, &reference).unwrap().l1;

    let v = group_velocity(&k0, &spec).unwrap()[0];
    let x0 = observables(&psi).unwrap().position_mean[0];
    let x500 = observables(&step_momentum(&psi, &spec, 500).unwrap()).unwrap().position_mean[0];
    let drift_gap = (x500 - x0 - v * 500.0).abs();
    let el = t.elapsed();
    report(
        5,
        "wavepacket vs Schrodinger",
        l1 <= PACKET_L1_MAX && drift_gap <= PACKET_MEAN_TOL && el < PACKET_BUDGET,
        format!(
            "L1 at 200 steps {l1:.4} (<= {PACKET_L1_MAX}); mean offset from v*t at 500 steps {drift_gap:.4} \
             (<= {PACKET_MEAN_TOL}); {el:.2?}"
        ),
    );
}

#[test]
fn criterion_06_scaling_laws() {
    let t = Instant::now();
    let decade = |lo: f64| -> Vec<f64> { (0..=10).map(|j| lo * 10f64.powf(j as f64 / 10.0)).collect() };

    let spec = weyl(2, Chirality::Plus, Branch::A);
    let dir = [0.6, 0.8];
    let ks = decade(0.02);
    let errs: Vec<f64> = ks
        .iter()
        .map(|&k| phase_error_per_step(&WaveVector::d2(dir[0] * k, dir[1] * k), &spec, 1).unwrap())
        .collect();
    let massless = fit_exponent(&ks, &errs);

    let ms = decade(0.01);
    let errs: Vec<f64> =
        ms.iter().map(|&m| phase_error_per_step(&WaveVector::d1(0.0), &dirac(1, Chirality::Plus, m), 1).unwrap()).collect();
    let massive = fit_exponent(&ms, &errs);
    let el = t.elapsed();
    let pass = (massless - MASSLESS_EXPONENT.0).abs() <= MASSLESS_EXPONENT.1
        && (massive - MASSIVE_EXPONENT.0).abs() <= MASSIVE_EXPONENT.1
        && el < SCALING_BUDGET;
    report(
        6,
        "error scaling exponents",
        pass,
        format!("massless exponent {massless:.4}, massive exponent {massive:.4}, {el:.2?}"),
    );
}

#[test]
fn criterion_07_lorentz() {
    let spec = WalkSpec::weyl_plus(3);
    let f = FMap::Default;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rand3 = |s: f64| [rng.gen_range(-s..s), rng.gen_range(-s..s), rng.gen_range(-s..s)];

    let ident = Boost::new([0.0; 3]).unwrap();
    let mut beta0: f64 = 0.0;
    for c in region_centers() {
        let r = rand3(0.3);
        let k = c.add(&WaveVector::d3(r[0], r[1], r[2]));
        let kp = nonlinear_boost(&k, &ident, &f, &spec).unwrap();
        beta0 = beta0.max(Lattice::Bcc.bz_wrap(&kp.sub(&k)).unwrap().norm());
    }

    let k = WaveVector::d3(0.2, 0.1, -0.15);
    let dir = [0.3, -0.5, 0.8];
    let b = |eta: f64| Boost::from_rapidity(&dir, eta).unwrap();
    let two = nonlinear_boost(&nonlinear_boost(&k, &b(0.2), &f, &spec).unwrap(), &b(0.3), &f, &spec).unwrap();
    let one = nonlinear_boost(&k, &b(0.5), &f, &spec).unwrap();
    let additivity = two.sub(&one).norm();

    let mut invariance: f64 = 0.0;
    for _ in 0..20 {
        let r = rand3(0.4);
        let k = WaveVector::d3(r[0], r[1], r[2]);
        let v = rand3(1.0);
        let bst = Boost::from_rapidity(&v, 0.3).unwrap();
        let kp = nonlinear_boost(&k, &bst, &f, &spec).unwrap();
        let lhs = dmap(&kp, &f, &spec).unwrap();
        let rhs = bst.apply(&dmap(&k, &f, &spec).unwrap());
        let w = omega(&kp, &spec).unwrap();
        let gap = (lhs.time - rhs.time).abs().max(norm3(&qwalk::linalg::sub3(&lhs.space, &rhs.space)));
        invariance = invariance.max(gap).max((lhs.time - w).abs()).max(lhs_minkowski(&lhs).abs());
    }

    let mut small: f64 = 0.0;
    for beta in [0.05, 0.1, 0.2] {
        for d in [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8], [1.0, 1.0, 1.0]] {
            let k = WaveVector::d3(0.006, -0.0048, 0.0064);
            let bst = Boost::new(scale(&d, beta / norm3(&d))).unwrap();
            let kp = nonlinear_boost(&k, &bst, &f, &spec).unwrap();
            let lin = bst.apply(&FourMomentum { time: k.norm(), space: k.padded() }).space;
            small = small.max(norm3(&qwalk::linalg::sub3(&kp.padded(), &lin)) / norm3(&lin));
        }
    }

    let rows = orbit(
        &WaveVector::d3(0.05, 0.0, 0.0),
        &OrbitFamily::Rotation { axis: [0.0, 0.0, 1.0], samples: 361 },
        &f,
        &spec,
    )
    .unwrap();
    let close = rows.last().unwrap().k.sub(&rows[0].k).norm();
    let w0 = rows[0].omega;
    let flat = max_over(&rows, |r| (r.omega - w0).abs());
    let escaped = rows.iter().any(|r| r.escaped);

    let pass = beta0 <= BETA_ZERO_TOL
        && additivity <= RAPIDITY_TOL
        && invariance <= INVARIANCE_TOL
        && small <= SMALL_K_REL_TOL
        && close <= ORBIT_CLOSE_TOL
        && flat <= ORBIT_OMEGA_TOL
        && !escaped;
    report(
        7,
        "nonlinear Lorentz group",
        pass,
        format!(
            "beta=0 {beta0:.2e}, rapidity additivity {additivity:.2e}, invariance {invariance:.2e}, \
             small-k relative {small:.2e}, orbit closure {close:.2e}, orbit omega spread {flat:.2e}"
        ),
    );
}

fn lhs_minkowski(p: &FourMomentum) -> f64 {
    p.time * p.time - norm3(&p.space).powi(2)
}

fn scale(v: &[f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

#[test]
fn criterion_08_maxwell() {
    let plus = WalkSpec::weyl_plus(3);
    let minus = weyl(3, Chirality::Minus, Branch::A);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut unit = || {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        scale(&v, 1.0 / norm3(&v))
    };

    let mut photon: f64 = 0.0;
    for _ in 0..100 {
        let d = scale(&unit(), 1e-3);
        let w = photon_dispersion(&WaveVector::d3(d[0], d[1], d[2]), &plus).unwrap();
        photon = photon.max((w / 1e-3 - 1.0).abs());
    }

    let diag = [1.0, 1.0, 1.0];
    let slope = |spec: &WalkSpec| {
        let ks: Vec<f64> = (0..10).map(|j| 1e-3 * 10f64.powf(j as f64 / 9.0)).collect();
        let cs: Vec<f64> = ks.iter().map(|&k| vacuum_speed(k, &diag, spec).unwrap() - 1.0).collect();
        linear_fit(&ks, &cs).0
    };
    let (sp, sm) = (slope(&plus), slope(&minus));
    let target = 1.0 / 3f64.sqrt();
    let slope_ok = (sp.abs() - target).abs() <= SLOPE_REL_TOL * target && (sm.abs() - target).abs() <= SLOPE_REL_TOL * target;
    let flips = sp * sm < 0.0;

    let aniso = (vacuum_speed(0.5, &[1.0, 0.0, 0.0], &plus).unwrap() - vacuum_speed(0.5, &diag, &plus).unwrap()).abs();

    let mut frame: f64 = 0.0;
    let mut min_tilt = f64::INFINITY;
    for _ in 0..1000 {
        let d = scale(&unit(), 0.8);
        let fr = polarization_frame(&WaveVector::d3(d[0], d[1], d[2]), &plus).unwrap();
        frame = frame.max(fr.orthonormality_residual());
        min_tilt = min_tilt.min(fr.tilt_n);
    }
    let generic = polarization_frame(&WaveVector::d3(0.8 * 0.48, 0.8 * 0.6, 0.8 * 0.64), &plus).unwrap();
    let tilt_ok = generic.tilt_n > 0.0 && generic.tilt_velocity > 0.0;

    let pass = photon <= PHOTON_REL_TOL && slope_ok && flips && aniso >= ANISOTROPY_MARGIN && frame <= FRAME_TOL && tilt_ok;
    report(
        8,
        "Maxwell dispersion and frames",
        pass,
        format!(
            "photon relative error {photon:.2e}; diagonal slopes {sp:+.4} / {sm:+.4} vs +-{target:.4} (tol 5%) \
             -> {}; sign flip {flips}; anisotropy {aniso:.2e}; frame residual {frame:.2e}; \
             tilt at |k|=0.8 n {:.3e} v {:.3e} (min over random directions {min_tilt:.2e})",
            if slope_ok { "ok" } else { "mismatch" },
            generic.tilt_n,
            generic.tilt_velocity
        ),
    );
}

#[test]
fn criterion_09_fock() {
    let t = Instant::now();
    let vacuum = fock_commutator_check(&FockCheckConfig::new(8, 4)).unwrap().max_deviation;
    let filled = |m: usize, nk: usize| {
        fock_commutator_check(&FockCheckConfig::new(m, nk).with_occupied(vec![(Species::Phi, 0)])).unwrap().max_deviation
    };
    let d4 = filled(8, 4);
    let d8 = filled(16, 8);
    let ratio = d8 / d4;
    let checks = check_anticommutators(16).unwrap();
    let el = t.elapsed();
    let pass = vacuum <= FOCK_VACUUM_TOL
        && d4 <= FOCK_FILL_CONST / 4.0
        && (FOCK_HALVING.0..=FOCK_HALVING.1).contains(&ratio)
        && el < FOCK_BUDGET;
    report(
        9,
        "Fock-space Bose statistics",
        pass,
        format!(
            "vacuum {vacuum:.2e}, filled N_k=4 {d4:.4} (<= {}), N_k=8 {d8:.4}, ratio {ratio:.4}, \
             {checks} anticommutators on 2^16, {el:.2?}",
            FOCK_FILL_CONST / 4.0
        ),
    );
}

fn random_group_kernel(cs: &CosetStructure, rng: &mut ChaCha8Rng) -> GroupKernel {
    let words = ["a", "A", "b", "B", "ab", "e"];
    GroupKernel::scalar(
        words
            .iter()
            .map(|w| {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                (cs.presentation.parse_word(w).unwrap(), z)
            })
            .collect(),
    )
}

#[test]
fn criterion_10_cayley() {
    let t = Instant::now();
    let size = |s: &str, r: usize| build_ball(&parse_presentation(s).unwrap(), r).unwrap().vertices.len();
    let sizes = (
        size("<a,b|abAB>", 3),
        size("<a,b|>", 2),
        size("abelian <h1,h2,h3,h4|h1h2h3h4>", 1),
    );

    let builtins = ["<a,b|abAB>", "<a,b|>", "abelian <h1,h2,h3,h4|h1h2h3h4>", "<a,b|a4,b4,(ab)2>", "<a,b|a2b-2>"];
    let homogeneous = builtins
        .iter()
        .all(|s| check_homogeneity(&build_ball(&parse_presentation(s).unwrap(), 3).unwrap()).pass());
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/mutated_ball.json")).unwrap();
    let mutated: CayleyBall = serde_json::from_str(&text).unwrap();
    let mutated_fails = !check_homogeneity(&mutated).pass();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut coset: f64 = 0.0;
    let mut indices = vec![];
    for name in ["index2", "index4"] {
        let cs = CosetStructure::from_spec(&builtin_coset(name).unwrap()).unwrap();
        indices.push(cs.index());
        let gk = random_group_kernel(&cs, &mut rng);
        let kern = coset_reduce(&gk, &cs).unwrap();
        for k in kern.lattice.sample_zone(1000, SEED).unwrap() {
            coset = coset.max((kern.symbol(&k).unwrap() - direct_symbol(&gk, &cs, &k).unwrap()).norm());
        }
    }
    let el = t.elapsed();
    let pass = sizes == (25, 17, 9)
        && homogeneous
        && mutated_fails
        && indices == [2, 4]
        && coset <= COSET_TOL
        && el < CAYLEY_BUDGET;
    report(
        10,
        "Cayley graphs and coset reduction",
        pass,
        format!(
            "ball sizes {sizes:?}, built-ins homogeneous {homogeneous}, mutated fixture rejected {mutated_fails}, \
             coset indices {indices:?} reconstruction {coset:.2e}, {el:.2?}"
        ),
    );
}

#[test]
fn criterion_11_scalar_triviality() {
    let t = Instant::now();
    let line = vec![[-1, 0, 0], [0, 0, 0], [1, 0, 0]];
    let mut bcc = vec![[0, 0, 0]];
    for g in Lattice::Bcc.generators() {
        bcc.push(g);
        bcc.push([-g[0], -g[1], -g[2]]);
    }
    let z = scalar_walk_solutions(&line, DEFAULT_SCALAR_CAP).unwrap();
    let b = scalar_walk_solutions(&bcc, DEFAULT_SCALAR_CAP).unwrap();
    let el = t.elapsed();
    let pass = z.only_trivial()
        && b.only_trivial()
        && z.single_term.len() == line.len()
        && b.single_term.len() == bcc.len()
        && el < SCALAR_BUDGET;
    report(
        11,
        "scalar walks are trivial",
        pass,
        format!(
            "Z: {} single-displacement solutions, {} undecided; BCC: {} single, {} undecided over {} patterns; {el:.2?}",
            z.single_term.len(),
            z.undecided.len(),
            b.single_term.len(),
            b.undecided.len(),
            b.patterns_examined
        ),
    );
}
