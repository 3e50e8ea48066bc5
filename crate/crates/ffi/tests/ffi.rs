use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use qprojective_ffi::*;

fn qn(x: f64, q: f64) -> f64 {
    (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qp_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn projective_line_through_the_handle() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(qp_spectrum_new(1, 0, 6, &mut h), QpStatus::Ok);
        assert!(!h.is_null());
        let mut len = 0;
        assert_eq!(qp_spectrum_len(h, &mut len), QpStatus::Ok);
        assert_eq!(len, 1 + 2 * 7);
        let mut kernel = 0;
        assert_eq!(qp_spectrum_kernel_dim(h, &mut kernel), QpStatus::Ok);
        assert_eq!(kernel, 1);
        let q = 0.6;
        for i in 0..len {
            let mut line = QpLine::default();
            assert_eq!(qp_spectrum_line(h, i, q, &mut line), QpStatus::Ok);
            if line.sign == 0 {
                assert_eq!(line.eigenvalue_sq, 0.0);
                continue;
            }
            let k = line.level as f64 + 1.0;
            let expect = qn(k, q) * qn(k + 1.0, q) / (q * q);
            assert!((line.eigenvalue_sq - expect).abs() < 1e-12 * expect);
            assert_eq!(line.multiplicity as f64, 2.0 * k + 1.0);
            assert_eq!(line.eigenvalue.signum(), line.sign as f64);
        }
        qp_spectrum_free(h);
    }
}

#[test]
fn strings_report_needed_size() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(qp_spectrum_new(2, 1, 1, &mut h), QpStatus::Ok);
        let mut needed = 0;
        assert_eq!(qp_spectrum_weight(h, 0, ptr::null_mut(), 0, &mut needed), QpStatus::BufferTooSmall);
        let mut buf = vec![0 as std::ffi::c_char; needed];
        assert_eq!(qp_spectrum_weight(h, 0, buf.as_mut_ptr(), buf.len(), ptr::null_mut()), QpStatus::Ok);
        let w = CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
        assert!(w.starts_with('(') && w.ends_with(')') && w.matches(',').count() == 1);

        let mut r = 0;
        assert_eq!(qp_spectrum_symbolic(h, 0, &mut r, ptr::null_mut(), 0, &mut needed), QpStatus::BufferTooSmall);
        let mut buf = vec![0 as std::ffi::c_char; needed];
        assert_eq!(qp_spectrum_symbolic(h, 0, &mut r, buf.as_mut_ptr(), buf.len(), ptr::null_mut()), QpStatus::Ok);
        assert!(r >= 6 && r % 2 == 0);
        assert!(!CStr::from_ptr(buf.as_ptr()).to_bytes().is_empty());
        qp_spectrum_free(h);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(qp_spectrum_new(0, 0, 2, &mut h), QpStatus::InvalidArgument);
        assert!(h.is_null());
        assert!(last_error().contains("rank"));
        assert_eq!(qp_spectrum_new(1, 0, 2, ptr::null_mut()), QpStatus::NullPointer);
        assert_eq!(qp_spectrum_len(ptr::null(), &mut 0), QpStatus::NullPointer);

        assert_eq!(qp_spectrum_new(1, 0, 2, &mut h), QpStatus::Ok);
        let mut line = QpLine::default();
        assert_eq!(qp_spectrum_line(h, 999, 0.5, &mut line), QpStatus::OutOfRange);
        assert_eq!(qp_spectrum_line(h, 0, 1.5, &mut line), QpStatus::InvalidArgument);
        assert_eq!(qp_spectrum_line(h, 0, 0.5, &mut line), QpStatus::Ok);
        assert_eq!(last_error(), "");
        qp_spectrum_free(h);
        qp_spectrum_free(ptr::null_mut());

        let suite = CString::new("nonsense").unwrap();
        assert_eq!(qp_verify(suite.as_ptr(), 2, &mut 0, &mut 0), QpStatus::InvalidArgument);
        let msg = CStr::from_ptr(qp_status_message(QpStatus::BufferTooSmall));
        assert_eq!(msg.to_str().unwrap(), "buffer too small");
    }
}

#[test]
fn casimir_and_dimension() {
    unsafe {
        let w = [1u32, 0, 1];
        let mut d = 0;
        assert_eq!(qp_weyl_dim(w.as_ptr(), w.len(), &mut d), QpStatus::Ok);
        assert_eq!(d, 15);
        // adjoint of su(4): (lambda, lambda + 2 rho) / 2 = 4
        let mut c = 0.0;
        assert_eq!(qp_casimir(w.as_ptr(), w.len(), 1.0, &mut c), QpStatus::Ok);
        assert!((c - 4.0).abs() < 1e-12);
        let mut cq = 0.0;
        assert_eq!(qp_casimir(w.as_ptr(), w.len(), 0.8, &mut cq), QpStatus::Ok);
        assert!(cq.is_finite() && cq > 0.0);
        assert_eq!(qp_casimir(w.as_ptr(), 0, 0.8, &mut cq), QpStatus::InvalidArgument);
    }
}

#[test]
fn verify_reports_counts() {
    let suite = CString::new("combinatorics").unwrap();
    let (mut total, mut failed) = (0, 0);
    assert_eq!(unsafe { qp_verify(suite.as_ptr(), 2, &mut total, &mut failed) }, QpStatus::Ok);
    assert!(total > 0);
    assert_eq!(failed, 0);
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/qprojective.h");
    let text = std::fs::read_to_string(&header).expect("generated header");
    for name in ["qp_spectrum_new", "qp_spectrum_free", "qp_spectrum_line", "qp_last_error", "QP_STATUS_OK"] {
        assert!(text.contains(name), "{name}");
    }
    let Ok(cc) = Command::new("cc").arg("--version").output() else { return };
    if !cc.status.success() {
        return;
    }
    let tmp = tempfile_dir();
    let src = tmp.join("use.c");
    std::fs::write(
        &src,
        "#include \"qprojective.h\"\n\
         int run(void) {\n\
           QpSpectrum *h = 0;\n\
           if (qp_spectrum_new(1, 0, 3, &h) != QP_STATUS_OK) return 1;\n\
           QpLine line;\n\
           enum QpStatus s = qp_spectrum_line(h, 0, 0.5, &line);\n\
           qp_spectrum_free(h);\n\
           return s == QP_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-c"])
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .arg("-o")
        .arg(tmp.join("use.o"))
        .output()
        .unwrap();
    let _ = std::fs::remove_dir_all(&tmp);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("qprojective-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
