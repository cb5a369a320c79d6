use nalgebra::DMatrix;
use num_complex::Complex64;

#[test]
fn complex_svd_probe() {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let m = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.2), c(-0.3, 0.1), c(0.0, -0.7)]);
    let svd = m.clone().svd(true, true);
    let sv = &svd.singular_values;
    println!("singular values: {:?}", sv.as_slice());
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let mut sigma = DMatrix::<Complex64>::zeros(2, 2);
    for i in 0..2 { sigma[(i, i)] = c(sv[i], 0.0); }
    let recon = &u * sigma * &vt;
    let err: f64 = (&m - recon).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    println!("recon err: {err}");
    assert!(err < 1e-12);
    // trace-norm maximizer: a = V U^H, check trace(m * a) = sum of singular values
    let a = vt.adjoint() * u.adjoint();
    let tr: Complex64 = (m * a).diagonal().iter().sum();
    let s_sum: f64 = sv.iter().sum();
    println!("trace {tr}, s_sum {s_sum}");
    assert!((tr.re - s_sum).abs() < 1e-12 && tr.im.abs() < 1e-12);
}
