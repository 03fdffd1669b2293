fn main() {
    use nkweber::{cx, weber::*, gamma::*, quad::*};
    use num_complex::Complex64;
    use std::f64::consts::PI;
    // oracle: U(w, zeta) = e^{-z^2/4}/Gamma(w+1/2) Int_0^inf t^{w-1/2} e^{-t^2/2 - z t} dt
    let check = |w: Complex64, zeta: Complex64| {
        let q = quad_interval(|t: f64| {
            if t == 0.0 { return cx(0.0,0.0); }
            ((w - 0.5)*t.ln() - 0.5*t*t - zeta*t).exp()
        }, 0.0, f64::INFINITY, 1e-13, Tail::Gaussian).unwrap();
        let oracle = (-0.25*zeta*zeta).exp() / gamma(w + 0.5).unwrap() * q.value;
        let lib = pcf_u(w, zeta).unwrap();
        println!("w={w} zeta={zeta:.4}: oracle={oracle:.10e}", );
        println!("   lib={:.10e}  rel={:.3e} method={}", lib.value, (lib.value-oracle).norm()/oracle.norm(), lib.method);
    };
    let rot = Complex64::from_polar(1.0, -PI/4.0);
    check(cx(0.0,10.0), cx(12.649110640673518,0.0)*rot);
    check(cx(0.0,10.0), cx(15.0,0.0)*rot);  // pure Poincare region
    check(cx(0.0,10.0), cx(9.0,0.0)*rot);
    check(cx(0.0,3.0), cx(7.0,0.0)*rot);
}
