use qwalk_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn walk(name: &str, mass: f64) -> *mut QwWalk {
    let name = CString::new(name).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { qw_walk_new(name.as_ptr(), mass, &mut w) }, QwStatus::Ok);
    assert!(!w.is_null());
    w
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qw_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(qw_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn omega_matches_library() {
    let w = walk("weyl3d+", 0.0);
    let k = [0.3, -0.2, 0.5];
    let mut om = 0.0;
    assert_eq!(unsafe { qw_walk_omega(w, k.as_ptr(), 3, &mut om) }, QwStatus::Ok);
    let spec: qwalk::WalkSpec = "weyl3d+".parse().unwrap();
    let expected = qwalk::walks::omega(&qwalk::WaveVector::d3(0.3, -0.2, 0.5), &spec).unwrap();
    assert_eq!(om, expected);
    assert_eq!(unsafe { qw_walk_dim(w) }, 3);
    assert_eq!(unsafe { qw_walk_components(w) }, 2);
    unsafe { qw_walk_free(w) };
}

#[test]
fn symbol_buffer_protocol() {
    let w = walk("dirac3d", 0.3);
    let k = [0.1, 0.2, 0.3];
    let mut needed = 0usize;
    let st = unsafe { qw_walk_symbol(w, k.as_ptr(), 3, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(st, QwStatus::BufferTooSmall);
    assert_eq!(needed, 32);
    let mut buf = vec![0.0; needed];
    assert_eq!(unsafe { qw_walk_symbol(w, k.as_ptr(), 3, buf.as_mut_ptr(), buf.len(), &mut needed) }, QwStatus::Ok);
    // Rows of a unitary matrix have unit norm.
    for r in 0..4 {
        let n: f64 = buf[8 * r..8 * r + 8].iter().map(|x| x * x).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
    unsafe { qw_walk_free(w) };
}

#[test]
fn errors_carry_status_and_message() {
    let name = CString::new("dirac3d").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { qw_walk_new(name.as_ptr(), 1.5, &mut w) }, QwStatus::InvalidArgument);
    assert!(w.is_null());
    assert!(last_error().contains("1.5"), "{}", last_error());

    let bad = CString::new("tetris4d").unwrap();
    assert_eq!(unsafe { qw_walk_new(bad.as_ptr(), 0.0, &mut w) }, QwStatus::InvalidArgument);
    assert_eq!(unsafe { qw_walk_new(ptr::null(), 0.0, &mut w) }, QwStatus::NullPointer);

    let mut om = 0.0;
    let k = [0.1, 0.2, 0.3];
    assert_eq!(unsafe { qw_walk_omega(ptr::null(), k.as_ptr(), 3, &mut om) }, QwStatus::NullPointer);
    let w = walk("weyl3d+", 0.0);
    assert_eq!(unsafe { qw_walk_omega(w, k.as_ptr(), 2, &mut om) }, QwStatus::InvalidArgument);
    unsafe { qw_walk_free(w) };
    unsafe { qw_walk_free(ptr::null_mut()) };
}

#[test]
fn kernels_round_trip_through_json() {
    let w = walk("weyl3d+", 0.0);
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { qw_kernel_from_walk(w, &mut k) }, QwStatus::Ok);
    assert_eq!(unsafe { qw_kernel_len(k) }, 8);
    let mut r = 1.0;
    assert_eq!(unsafe { qw_kernel_unitarity_residual(k, &mut r) }, QwStatus::Ok);
    assert!(r < 1e-15);

    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/weyl3d_plus_tampered.json");
    let text = CString::new(std::fs::read_to_string(fixture).unwrap()).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { qw_kernel_from_json(text.as_ptr(), &mut t) }, QwStatus::Ok);
    assert_eq!(unsafe { qw_kernel_unitarity_residual(t, &mut r) }, QwStatus::Ok);
    assert!(r > 1e-3);

    let junk = CString::new("{\"lattice\": 3}").unwrap();
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { qw_kernel_from_json(junk.as_ptr(), &mut j) }, QwStatus::InvalidArgument);
    unsafe {
        qw_kernel_free(k);
        qw_kernel_free(t);
        qw_walk_free(w);
    }
}

#[test]
fn state_evolution_preserves_norm_and_drifts() {
    let w = walk("dirac1d", 0.4);
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { qw_kernel_from_walk(w, &mut k) }, QwStatus::Ok);
    let mut s = ptr::null_mut();
    let k0 = [0.1];
    assert_eq!(unsafe { qw_state_gaussian(w, 512, k0.as_ptr(), 1, 10.0, &mut s) }, QwStatus::Ok);
    let mut before = [0.0; 3];
    assert_eq!(unsafe { qw_state_mean(s, before.as_mut_ptr()) }, QwStatus::Ok);
    assert_eq!(unsafe { qw_state_step(s, k, 50) }, QwStatus::Ok);
    let mut norm = 0.0;
    assert_eq!(unsafe { qw_state_norm_sqr(s, &mut norm) }, QwStatus::Ok);
    assert!((norm - 1.0).abs() < 1e-12);
    let mut after = [0.0; 3];
    assert_eq!(unsafe { qw_state_mean(s, after.as_mut_ptr()) }, QwStatus::Ok);
    // Group velocity at k = 0.1 with n = √(1 − m²) is positive and below 1.
    let v = (after[0] - before[0]) / 50.0;
    assert!(v > 0.05 && v < 1.0, "{v}");
    let mut needed = 0;
    assert_eq!(unsafe { qw_state_amplitudes(s, ptr::null_mut(), 0, &mut needed) }, QwStatus::BufferTooSmall);
    assert_eq!(needed, 2 * 512 * 2);
    let mut tiny = ptr::null_mut();
    assert_eq!(unsafe { qw_state_gaussian(w, 512, k0.as_ptr(), 1, 0.5, &mut tiny) }, QwStatus::InvalidArgument);
    unsafe {
        qw_state_free(s);
        qw_kernel_free(k);
        qw_walk_free(w);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qwalk.h")).unwrap();
    for f in [
        "qw_version", "qw_last_error", "qw_walk_new", "qw_walk_free", "qw_walk_omega", "qw_walk_symbol",
        "qw_kernel_from_walk", "qw_kernel_from_json", "qw_kernel_unitarity_residual", "qw_state_gaussian",
        "qw_state_step", "qw_state_mean", "qw_state_amplitudes", "qw_state_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing");
    }
    assert!(header.contains("typedef struct QwWalk QwWalk;"));
}

/// Compiles the header as C when a compiler is on PATH.
#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = std::env::temp_dir().join(format!("qwalk-h-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("probe.c");
    std::fs::write(&src, "#include \"qwalk.h\"\nint main(void) { QwWalk *w = 0; return (int)qw_walk_dim(w); }\n").unwrap();
    let inc = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let st = std::process::Command::new(cc).args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", inc]).arg(&src).status().unwrap();
    assert!(st.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for c in ["cc", "gcc", "clang"] {
        if std::process::Command::new(c).arg("--version").output().is_ok() {
            return Ok(c);
        }
    }
    Err(())
}
