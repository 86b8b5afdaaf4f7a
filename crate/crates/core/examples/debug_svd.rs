use nalgebra::{DMatrix, DVector};

fn main() {
    // Reproduce the collocation structure: 512 x 243 with near-dependent columns.
    use confmass_core::geometry::*;
    let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
    let colloc = boundary_quadrature(&domain, 16).unwrap();
    let grid = SphereGrid::new(3, 11);
    let mut pts: Vec<Vec<f64>> = vec![vec![0.0;3]];
    for i in 0..grid.len() {
        pts.push(grid.direction(i).iter().map(|d| 0.7*d).collect());
    }
    let rows = colloc.len();
    let cols = pts.len();
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b = DVector::<f64>::zeros(rows);
    for i in 0..rows {
        let x = colloc.position(i);
        for (j, y) in pts.iter().enumerate() {
            let r2: f64 = (0..3).map(|k| (x[k]-y[k])*(x[k]-y[k])).sum();
            a[(i,j)] = 1.0/r2.sqrt();
        }
        b[i] = -1.0; // u = 0 => sum c G = -1
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let x = svd.solve(&b, 1e-12*smax).unwrap();
    let r = &a*&x - &b;
    println!("nalgebra svd solve: residual inf-norm {:.3e}", r.amax());
    // optimality: A^T r should vanish
    let atr = a.transpose()*&r;
    println!("|A^T r| = {:.3e}", atr.amax());
    // iterative refinement
    let dx = svd.solve(&(-&r), 1e-12*smax).unwrap();
    let x2 = &x + &dx;
    let r2 = &a*&x2 - &b;
    println!("after refinement: residual {:.3e}, |A^T r| {:.3e}", r2.amax(), (a.transpose()*&r2).amax());
    // QR comparison
    let qr = a.clone().qr();
    // solve via normal equations with qr of A: R x = Q^T b
    let qtb = qr.q().transpose() * &b;
    let xqr = qr.r().solve_upper_triangular(&qtb).unwrap();
    let rq = &a*&xqr - &b;
    println!("qr solve: residual {:.3e}", rq.amax());
}
