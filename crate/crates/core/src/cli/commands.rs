use super::args::*;
use super::{EXIT_CHECK_FAILED, EXIT_OK};
use crate::analysis::{
    band_fraction, compare, continuum_reference, linear_fit, schrodinger_evolve, trajectory, PacketModel, Reference,
    BAND_WINDOW,
};
use crate::cayley::{
    build_ball_with, builtin_coset, check_homogeneity, coset_reduce, direct_symbol, CosetSpec, CosetStructure,
    GroupKernel,
};
use crate::engine::{make_packet, step_momentum, FieldState, PacketParams, Projection};
use crate::error::{Error, Result};
use crate::io::{header_comment, meta, sink, write_json, Cell, CsvWriter};
use crate::lattice::{momentum_grid, Lattice, WaveVector};
use crate::linalg::{c, norm3, Vec3};
use crate::lorentz::{classify_region, dmap, nonlinear_boost, orbit, Boost, FMap, OrbitFamily};
use crate::maxwell::{
    check_anticommutators, fock_commutator_check, photon_dispersion, photon_group_velocity, photon_helicity,
    polarization_frame, vacuum_speed, Anchor, FockCheckConfig, PlanckUnits, Species, C_LIGHT, HBAR,
};
use crate::walks::{
    binary_rotation_rep, check_isotropy, check_unitarity_conditions, omega, omega_derivatives, position_kernel,
    symbol_matrix, TransitionKernel, WalkSpec,
};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::path::PathBuf;

pub fn dispatch(cli: &Cli) -> Result<i32> {
    let config = serde_json::to_value(&cli.command)?;
    match &cli.command {
        Command::Verify(a) => verify(a, &config),
        Command::Dispersion(a) => dispersion(a, &config),
        Command::Evolve(a) => evolve(a, &config),
        Command::Compare(a) => compare_cmd(a, &config),
        Command::Lorentz(LorentzCmd::Orbit(a)) => lorentz_orbit(a, &config),
        Command::Lorentz(LorentzCmd::Boost(a)) => lorentz_boost(a, &config),
        Command::Maxwell(MaxwellCmd::Dispersion(a)) => maxwell_dispersion(a, &config),
        Command::Maxwell(MaxwellCmd::Speed(a)) => maxwell_speed(a, &config),
        Command::Fock(a) => fock(a, &config),
        Command::Cayley(CayleyCmd::Ball(a)) => cayley_ball(a, &config),
        Command::Cayley(CayleyCmd::Reduce(a)) => cayley_reduce(a, &config),
        Command::Units(a) => units(a, &config),
    }
}

fn parse_walk(walk: &str, mass: f64) -> Result<WalkSpec> {
    let spec: WalkSpec = walk.parse()?;
    if mass != 0.0 || spec.family == crate::walks::Family::Dirac {
        return spec.with_mass(mass);
    }
    Ok(spec)
}

fn wave_vector(v: &[f64]) -> Result<WaveVector> {
    WaveVector::new(v)
}

fn vec3(v: &[f64], what: &str) -> Result<Vec3> {
    if v.len() != 3 {
        return Err(Error::InvalidArgument(format!("{what} needs 3 components, got {}", v.len())));
    }
    Ok([v[0], v[1], v[2]])
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

fn emit_table(command: &str, config: &Value, format: Format, out: Option<&PathBuf>, t: Table) -> Result<()> {
    let dest = sink(out.map(|p| p.as_path()))?;
    match format {
        Format::Csv => {
            let mut w = CsvWriter::new(dest, &header_comment(command, config), &t.columns)?;
            for r in &t.rows {
                w.row(r)?;
            }
            w.finish()
        }
        Format::Json => {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    Value::Array(
                        r.iter()
                            .map(|c| match c {
                                Cell::F(v) if v.is_finite() => json!(v),
                                Cell::F(_) => Value::Null,
                                Cell::I(v) => json!(v),
                                Cell::S(s) if s.is_empty() => Value::Null,
                                Cell::S(s) => json!(s),
                            })
                            .collect(),
                    )
                })
                .collect();
            write_json(dest, &json!({ "meta": meta(command, config), "columns": t.columns, "rows": rows }))
        }
    }
}

fn json_out(command: &str, config: &Value, out: Option<&PathBuf>, mut body: Value) -> Result<()> {
    body["meta"] = meta(command, config);
    write_json(sink(out.map(|p| p.as_path()))?, &body)
}

fn verify(a: &VerifyArgs, config: &Value) -> Result<i32> {
    let (subject, kernel, spec) = match &a.kernel {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("kernel json: {e}")))?;
            (path.display().to_string(), TransitionKernel::from_json(&v)?, None)
        }
        None => {
            let spec = parse_walk(a.walk.as_deref().unwrap_or("weyl3d+"), a.mass)?;
            (spec.to_string(), position_kernel(&spec), Some(spec))
        }
    };
    if let Some(path) = &a.emit_kernel {
        write_json(sink(Some(path))?, &kernel.to_json())?;
    }
    let points = kernel.lattice.sample_zone(a.samples, a.seed)?;
    let mut symbol_unitarity: f64 = 0.0;
    let mut reconstruction: Option<f64> = spec.map(|_| 0.0);
    for k in &points {
        let from_kernel = kernel.symbol(k)?;
        symbol_unitarity = symbol_unitarity.max(crate::linalg::unitarity_residual(&from_kernel));
        if let Some(s) = &spec {
            let direct = symbol_matrix(k, s)?;
            symbol_unitarity = symbol_unitarity.max(crate::linalg::unitarity_residual(&direct));
            let r = (direct - from_kernel).norm();
            reconstruction = reconstruction.map(|x| x.max(r));
        }
    }
    let conditions = check_unitarity_conditions(&kernel);
    let isotropy = if kernel.lattice == Lattice::Bcc && kernel.components % 2 == 0 {
        Some(check_isotropy(&kernel, &binary_rotation_rep())?)
    } else {
        None
    };
    let tol = a.tolerance;
    let pass = symbol_unitarity <= tol
        && conditions.max_residual <= tol
        && reconstruction.is_none_or(|r| r <= tol)
        && isotropy.as_ref().is_none_or(|i| i.pass);
    json_out(
        "verify",
        config,
        a.out.as_ref(),
        json!({
            "subject": subject,
            "samples": a.samples,
            "seed": a.seed,
            "tolerance": tol,
            "kernel_entries": kernel.entries.len(),
            "symbol_unitarity": symbol_unitarity,
            "reconstruction": reconstruction,
            "conditions": conditions,
            "isotropy": isotropy,
            "pass": pass,
        }),
    )?;
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn opt_grad(k: &WaveVector, spec: &WalkSpec) -> [Cell; 3] {
    match omega_derivatives(k, spec) {
        Ok(d) => d.grad.map(Cell::F),
        Err(_) => [Cell::F(f64::NAN), Cell::F(f64::NAN), Cell::F(f64::NAN)],
    }
}

fn dispersion(a: &DispersionArgs, config: &Value) -> Result<i32> {
    let spec = parse_walk(&a.walk.walk, a.walk.mass)?;
    let lat = spec.lattice();
    let mut points = vec![];
    match a.slice_z {
        Some(z) => {
            let ext = match lat {
                Lattice::Bcc => 3f64.sqrt() * std::f64::consts::PI,
                Lattice::Square => 2f64.sqrt() * std::f64::consts::PI,
                _ => std::f64::consts::PI,
            };
            let n = a.grid.max(2);
            for i in 0..n {
                for j in 0..n {
                    let x = -ext + 2.0 * ext * i as f64 / (n - 1) as f64;
                    let y = -ext + 2.0 * ext * j as f64 / (n - 1) as f64;
                    let k = WaveVector::from_padded(lat.dim(), [x, y, z]);
                    if lat.bz_contains(&k)? {
                        points.push(k);
                    }
                }
            }
        }
        None => {
            for k in momentum_grid(a.grid, lat)?.points {
                points.push(lat.bz_wrap(&k)?);
            }
        }
    }
    let mut rows = vec![];
    for k in &points {
        let p = k.padded();
        let mut r = vec![Cell::F(p[0]), Cell::F(p[1]), Cell::F(p[2]), Cell::F(omega(k, &spec)?)];
        r.extend(opt_grad(k, &spec));
        rows.push(r);
    }
    let columns = vec!["k_x", "k_y", "k_z", "omega", "v_x", "v_y", "v_z"];
    emit_table("dispersion", config, a.format, a.out.as_ref(), Table { columns, rows })?;
    Ok(EXIT_OK)
}

struct Prepared {
    spec: WalkSpec,
    state: FieldState,
    model: PacketModel,
}

fn prepare(p: &PacketArgs) -> Result<Prepared> {
    let spec = parse_walk(&p.walk.walk, p.walk.mass)?;
    let k0 = wave_vector(&p.k0)?;
    let n = p.grid;
    let x0 = p.x0.clone().unwrap_or_else(|| vec![(n / 2) as f64; spec.dim]);
    let s = spec.components();
    let spinor = match &p.spinor {
        Some(v) if v.len() == 2 * s => v.chunks(2).map(|z| c(z[0], z[1])).collect(),
        Some(v) => {
            return Err(Error::InvalidArgument(format!("spinor needs {} numbers, got {}", 2 * s, v.len())));
        }
        None => (0..s).map(|i| c(if i == 0 { 1.0 } else { 0.0 }, 0.0)).collect(),
    };
    let mut params = PacketParams::gaussian(k0, p.sigma, x0, spinor);
    params.projection = match p.projection {
        ProjectionKind::None => Projection::None,
        ProjectionKind::Center => Projection::Center,
        ProjectionKind::PerFiber => Projection::PerFiber,
    };
    let state = make_packet(&params, n, &spec)?;
    let model = PacketModel::from_walk(&k0, &spec, p.band)?;
    Ok(Prepared { spec, state, model })
}

fn reference_of(kind: ReferenceKind, model: &PacketModel) -> Reference {
    match kind {
        ReferenceKind::None => Reference::None,
        ReferenceKind::Schrodinger => Reference::Schrodinger(model.clone()),
        ReferenceKind::Continuum => Reference::Continuum,
    }
}

fn reference_state(kind: ReferenceKind, pr: &Prepared, t: u64) -> Result<Option<FieldState>> {
    Ok(match kind {
        ReferenceKind::None => None,
        ReferenceKind::Schrodinger => Some(schrodinger_evolve(&pr.state, &pr.model, t)?.state),
        ReferenceKind::Continuum => Some(continuum_reference(&pr.state, &pr.spec, t)?),
    })
}

/// Probabilities summed over all but the first lattice axis.
fn axis_marginal(st: &FieldState) -> Vec<f64> {
    let n = st.n();
    let per = st.sites() / n;
    let m = st.marginal();
    (0..n).map(|i| m[i * per..(i + 1) * per].iter().sum()).collect()
}

fn evolve(a: &EvolveArgs, config: &Value) -> Result<i32> {
    let pr = prepare(&a.packet)?;
    let steps = a.packet.steps;
    let stride = a.stride.unwrap_or((steps / 20).max(1));
    let rows = trajectory(&pr.state, &pr.spec, steps, stride, &reference_of(a.compare, &pr.model))?;
    let table = Table {
        columns: vec!["step", "mean_x", "mean_y", "mean_z", "var_x", "var_y", "var_z", "fidelity", "l1"],
        rows: rows
            .iter()
            .map(|r| {
                let mut v = vec![Cell::from(r.step)];
                v.extend(r.mean.map(Cell::F));
                v.extend(r.var.map(Cell::F));
                v.push(r.fidelity.into());
                v.push(r.l1.into());
                v
            })
            .collect(),
    };
    emit_table("evolve", config, a.format, a.out.as_ref(), table)?;

    let walk = step_momentum(&pr.state, &pr.spec, steps)?;
    let reference = reference_state(a.compare, &pr, steps)?;
    let metrics = reference.as_ref().map(|r| compare(&walk, r)).transpose()?;
    let in_band = band_fraction(&pr.state, &pr.model.k0, BAND_WINDOW)?;
    let warning = (a.compare == ReferenceKind::Schrodinger && in_band < crate::analysis::BAND_FRACTION)
        .then(|| format!("only {in_band:.4} of the momentum mass lies within {BAND_WINDOW} of k0"));
    if let Some(w) = &warning {
        eprintln!("warning: {w}");
    }
    if let Some(path) = &a.report {
        let first = rows.first().map(|r| r.mean).unwrap_or([0.0; 3]);
        let last = rows.last().map(|r| r.mean).unwrap_or([0.0; 3]);
        let measured: Vec<f64> = (0..3).map(|i| (last[i] - first[i]) / steps.max(1) as f64).collect();
        json_out(
            "evolve",
            config,
            Some(path),
            json!({
                "steps": steps,
                "final": metrics,
                "in_band": in_band,
                "warning": warning,
                "omega0": pr.model.omega0,
                "velocity_model": pr.model.v,
                "velocity_measured": measured,
                "diffusion": pr.model.d,
            }),
        )?;
    }
    if let Some(path) = &a.profiles {
        let mut w = CsvWriter::new(
            sink(Some(path))?,
            &header_comment("evolve", config),
            &["step", "x", "p_walk", "p_reference"],
        )?;
        let count = a.snapshots.max(1) as u64;
        for i in 1..=count {
            let t = (steps * i + count / 2) / count;
            let pw = axis_marginal(&step_momentum(&pr.state, &pr.spec, t)?);
            let pref = reference_state(a.compare, &pr, t)?.map(|s| axis_marginal(&s));
            for (x, p) in pw.iter().enumerate() {
                w.row(&[t.into(), x.into(), (*p).into(), pref.as_ref().map(|r| r[x]).into()])?;
            }
        }
        w.finish()?;
    }
    if let (Some(limit), Some(m)) = (a.max_l1, metrics) {
        if m.l1 > limit {
            eprintln!("l1 distance {:e} exceeds {limit:e}", m.l1);
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    Ok(EXIT_OK)
}

fn compare_cmd(a: &CompareArgs, config: &Value) -> Result<i32> {
    if a.reference == ReferenceKind::None {
        return Err(Error::InvalidArgument("compare needs a reference".into()));
    }
    let pr = prepare(&a.packet)?;
    let steps = a.packet.steps;
    let walk = step_momentum(&pr.state, &pr.spec, steps)?;
    let reference = reference_state(a.reference, &pr, steps)?.expect("reference requested");
    let m = compare(&walk, &reference)?;
    let in_band = band_fraction(&pr.state, &pr.model.k0, BAND_WINDOW)?;
    json_out(
        "compare",
        config,
        a.out.as_ref(),
        json!({ "steps": steps, "fidelity": m.fidelity, "l2": m.l2, "l1": m.l1, "in_band": in_band }),
    )?;
    Ok(EXIT_OK)
}

fn fmap(f: FKind) -> FMap {
    match f {
        FKind::Default => FMap::Default,
        FKind::Unit => FMap::Unit,
        FKind::Secant => FMap::Secant,
    }
}

fn axis(s: &str) -> Result<Vec3> {
    match s.trim() {
        "x" => Ok([1.0, 0.0, 0.0]),
        "y" => Ok([0.0, 1.0, 0.0]),
        "z" => Ok([0.0, 0.0, 1.0]),
        other => {
            let v: std::result::Result<Vec<f64>, _> = other.split(',').map(|t| t.trim().parse::<f64>()).collect();
            vec3(&v.map_err(|_| Error::InvalidArgument(format!("bad axis '{other}'")))?, "axis")
        }
    }
}

fn lorentz_orbit(a: &OrbitArgs, config: &Value) -> Result<i32> {
    let spec = parse_walk(&a.walk, 0.0)?;
    let k = wave_vector(&a.k)?;
    let family = match (&a.rotation, &a.boost) {
        (_, Some(d)) => OrbitFamily::Boost { direction: vec3(d, "boost direction")?, eta_max: a.eta_max, samples: a.samples },
        (Some(r), None) => OrbitFamily::Rotation { axis: axis(r)?, samples: a.samples },
        (None, None) => OrbitFamily::Rotation { axis: [0.0, 0.0, 1.0], samples: a.samples },
    };
    let pts = orbit(&k, &family, &fmap(a.f), &spec)?;
    let rows = pts
        .iter()
        .map(|p| {
            let kk = p.k.padded();
            vec![
                Cell::F(p.parameter),
                Cell::F(kk[0]),
                Cell::F(kk[1]),
                Cell::F(kk[2]),
                Cell::F(p.omega),
                p.region.into(),
                p.escaped.into(),
            ]
        })
        .collect();
    let columns = vec!["parameter", "k_x", "k_y", "k_z", "omega", "region", "escaped"];
    emit_table("lorentz orbit", config, a.format, a.out.as_ref(), Table { columns, rows })?;
    Ok(EXIT_OK)
}

fn lorentz_boost(a: &BoostArgs, config: &Value) -> Result<i32> {
    let spec = parse_walk(&a.walk, 0.0)?;
    let k = wave_vector(&a.k)?;
    let beta = Boost::new(vec3(&a.beta, "beta")?)?;
    let f = fmap(a.f);
    let kp = nonlinear_boost(&k, &beta, &f, &spec)?;
    json_out(
        "lorentz boost",
        config,
        a.out.as_ref(),
        json!({
            "k": k.padded(),
            "beta": beta.velocity(),
            "rapidity": beta.rapidity(),
            "region": classify_region(&k)?,
            "k_prime": kp.padded(),
            "omega": omega(&k, &spec)?,
            "omega_prime": omega(&kp, &spec)?,
            "p": dmap(&k, &f, &spec)?,
            "p_prime": dmap(&kp, &f, &spec)?,
        }),
    )?;
    Ok(EXIT_OK)
}

fn unit(v: &Vec3) -> Result<Vec3> {
    let n = norm3(v);
    if n == 0.0 {
        return Err(Error::InvalidArgument("zero direction".into()));
    }
    Ok(v.map(|x| x / n))
}

fn maxwell_dispersion(a: &RayArgs, config: &Value) -> Result<i32> {
    let spec = parse_walk(&a.walk, 0.0)?;
    let d = unit(&vec3(&a.direction, "direction")?)?;
    let mut rows = vec![];
    for j in 1..=a.samples {
        let kappa = a.kmax * j as f64 / a.samples as f64;
        let kv = WaveVector::d3(d[0] * kappa, d[1] * kappa, d[2] * kappa);
        let w = photon_dispersion(&kv, &spec)?;
        let n = photon_helicity(&kv, &spec)?;
        let v = photon_group_velocity(&kv, &spec)?;
        let fr = polarization_frame(&kv, &spec)?;
        let mut r: Vec<Cell> = vec![kappa.into()];
        r.extend(kv.padded().map(Cell::F));
        r.push(w.into());
        r.push(kappa.into());
        for vec in [n, v, fr.u1, fr.u2] {
            r.extend(vec.map(Cell::F));
        }
        r.push(fr.tilt_n.into());
        r.push(fr.tilt_velocity.into());
        rows.push(r);
    }
    let columns = vec![
        "kappa", "kappa_x", "kappa_y", "kappa_z", "omega", "linear", "n_x", "n_y", "n_z", "v_x", "v_y", "v_z", "u1_x",
        "u1_y", "u1_z", "u2_x", "u2_y", "u2_z", "tilt_n", "tilt_velocity",
    ];
    emit_table("maxwell dispersion", config, a.format, a.out.as_ref(), Table { columns, rows })?;
    Ok(EXIT_OK)
}

fn maxwell_speed(a: &SpeedArgs, config: &Value) -> Result<i32> {
    let spec = parse_walk(&a.walk, 0.0)?;
    let d = vec3(&a.direction, "direction")?;
    if !(a.kmin > 0.0 && a.kmax > a.kmin) || a.samples < 2 {
        return Err(Error::InvalidArgument("need 0 < kmin < kmax and at least 2 samples".into()));
    }
    let dir = unit(&d)?;
    let (mut ks, mut cs, mut rows) = (vec![], vec![], vec![]);
    for j in 0..a.samples {
        let k = a.kmin * (a.kmax / a.kmin).powf(j as f64 / (a.samples - 1) as f64);
        let c = vacuum_speed(k, &d, &spec)?;
        let w = photon_dispersion(&WaveVector::d3(dir[0] * k, dir[1] * k, dir[2] * k), &spec)?;
        let mut r = vec![Cell::F(k)];
        r.extend(dir.map(Cell::F));
        r.extend([Cell::F(w), Cell::F(c), Cell::F(c - 1.0), Cell::S(spec.to_string())]);
        rows.push(r);
        ks.push(k);
        cs.push(c);
    }
    let columns = vec!["k", "dir_x", "dir_y", "dir_z", "omega", "speed", "speed_minus_1", "branch"];
    emit_table("maxwell speed", config, a.format, a.out.as_ref(), Table { columns, rows })?;
    if let Some(path) = &a.report {
        let dc: Vec<f64> = cs.iter().map(|c| c - 1.0).collect();
        let (slope, intercept) = linear_fit(&ks, &dc);
        json_out("maxwell speed", config, Some(path), json!({ "slope": slope, "intercept": intercept }))?;
    }
    Ok(EXIT_OK)
}

fn fock(a: &FockArgs, config: &Value) -> Result<i32> {
    let mut occupied = vec![];
    for f in &a.fill {
        let (sp, idx) = f
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("fill entry '{f}' must be species:index")))?;
        let species = match sp.trim() {
            "phi" => Species::Phi,
            "psi" => Species::Psi,
            other => return Err(Error::InvalidArgument(format!("unknown species '{other}'"))),
        };
        let i = idx.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad mode index '{idx}'")))?;
        occupied.push((species, i));
    }
    let cfg = FockCheckConfig::new(a.modes, a.nk).with_occupied(occupied);
    let report = fock_commutator_check(&cfg)?;
    let checked = if a.anticommutators { Some(check_anticommutators(cfg.total_modes())?) } else { None };
    json_out(
        "fock",
        config,
        a.out.as_ref(),
        json!({
            "modes_per_species": a.modes,
            "n_k": a.nk,
            "fill": a.fill,
            "deviation": report.deviation,
            "max_deviation": report.max_deviation,
            "anticommutator_checks": checked,
        }),
    )?;
    Ok(match a.tolerance {
        Some(t) if report.max_deviation > t => EXIT_CHECK_FAILED,
        _ => EXIT_OK,
    })
}

fn cayley_ball(a: &BallArgs, config: &Value) -> Result<i32> {
    let p = crate::cayley::parse_presentation(&a.presentation)?;
    let ball = build_ball_with(&p, a.radius, a.radius_cap, 1)?;
    let report = a.check.then(|| check_homogeneity(&ball));
    match a.format {
        GraphFormat::Json => {
            let mut body = ball.to_graph_json();
            body["homogeneity"] = serde_json::to_value(&report)?;
            json_out("cayley ball", config, a.out.as_ref(), body)?;
        }
        GraphFormat::Dot => {
            let mut w = sink(a.out.as_deref())?;
            let text = format!("// {}\n{}", &header_comment("cayley ball", config)[2..], ball.to_dot());
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
    }
    Ok(match report {
        Some(r) if !r.pass() => EXIT_CHECK_FAILED,
        _ => EXIT_OK,
    })
}

/// Parses 1, -0.5, 0.3+0.2i, -1.5e-3-2i, 0.7i.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim().replace(' ', "");
    let bad = || Error::InvalidArgument(format!("bad complex number '{s}'"));
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else { return Ok(Complex64::new(num(&t)?, 0.0)) };
    let b = body.as_bytes();
    let split = (1..b.len()).rev().find(|&i| (b[i] == b'+' || b[i] == b'-') && b[i - 1] != b'e' && b[i - 1] != b'E');
    let (re, im) = match split {
        Some(i) => (num(&body[..i])?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => num(x)?,
    };
    Ok(Complex64::new(re, im))
}

fn cayley_reduce(a: &ReduceArgs, config: &Value) -> Result<i32> {
    let spec: CosetSpec = match builtin_coset(&a.coset) {
        Ok(s) => s,
        Err(_) => {
            let text = std::fs::read_to_string(&a.coset).map_err(|e| Error::Io(format!("{}: {e}", a.coset)))?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("coset json: {e}")))?
        }
    };
    let cs = CosetStructure::from_spec(&spec)?;
    let mut entries = vec![];
    for e in &a.entries {
        let (w, z) = e
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("entry '{e}' must be word=value")))?;
        entries.push((cs.presentation.parse_word(w)?, parse_complex(z)?));
    }
    let gk = GroupKernel::scalar(entries);
    let kernel = coset_reduce(&gk, &cs)?;
    let unitarity = check_unitarity_conditions(&kernel);
    let mut direct: f64 = 0.0;
    for k in kernel.lattice.sample_zone(16, a.seed)? {
        direct = direct.max((kernel.symbol(&k)? - direct_symbol(&gk, &cs, &k)?).norm());
    }
    json_out(
        "cayley reduce",
        config,
        a.out.as_ref(),
        json!({
            "coset": spec,
            "index": cs.index(),
            "rank": cs.rank(),
            "kernel": kernel.to_json(),
            "unitarity": unitarity,
            "direct_residual": direct,
        }),
    )?;
    Ok(EXIT_OK)
}

fn units(a: &UnitsArgs, config: &Value) -> Result<i32> {
    let (kind, val) = a
        .anchor
        .split_once('=')
        .ok_or_else(|| Error::InvalidArgument("anchor must be length=…, time=… or mass=…".into()))?;
    let v: f64 = val.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad anchor value '{val}'")))?;
    let anchor = match kind.trim() {
        "length" => Anchor::Length(v),
        "time" => Anchor::Time(v),
        "mass" => Anchor::Mass(v),
        other => return Err(Error::InvalidArgument(format!("unknown anchor '{other}'"))),
    };
    let u = PlanckUnits::from_anchor(anchor)?;
    let estimate = match &a.estimate {
        Some(p) if p.len() == 2 => Some(u.mass_estimate(p[0], p[1])?),
        Some(_) => return Err(Error::InvalidArgument("estimate needs k,c".into())),
        None => None,
    };
    json_out(
        "units",
        config,
        a.out.as_ref(),
        json!({ "length": u.length, "time": u.time, "mass": u.mass, "c": C_LIGHT, "hbar": HBAR, "mass_estimate": estimate }),
    )?;
    Ok(EXIT_OK)
}
