use nalgebra::{DMatrix, DVector};
use confmass_core::geometry::*;

fn main() {
    let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
    let colloc = boundary_quadrature(&domain, 16).unwrap();
    let grid = SphereGrid::new(3, 11);
    let mut pts: Vec<Vec<f64>> = vec![vec![0.0;3]];
    for i in 0..grid.len() {
        pts.push(grid.direction(i).iter().map(|d| 0.7*d).collect());
    }
    let rows = colloc.len();
    let cols = pts.len();
    for normalize in [false, true] {
        let mut a = DMatrix::<f64>::zeros(rows, cols);
        let mut b = DVector::<f64>::zeros(rows);
        for i in 0..rows {
            let x = colloc.position(i);
            let mut row = vec![0.0; cols];
            for (j, y) in pts.iter().enumerate() {
                let r2: f64 = (0..3).map(|k| (x[k]-y[k])*(x[k]-y[k])).sum();
                row[j] = 1.0/r2.sqrt();
            }
            let mut rhs = -1.0;
            if normalize {
                let norm = row.iter().map(|v| v*v).sum::<f64>().sqrt();
                for v in row.iter_mut() { *v /= norm; }
                rhs /= norm;
            }
            for (j, v) in row.iter().enumerate() { a[(i,j)] = *v; }
            b[i] = rhs;
        }
        let svd = a.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let x = svd.solve(&b, 1e-12*smax).unwrap();
        let r = &a*&x - &b;
        // unscaled u-residual at nodes
        println!("normalize={normalize}: kappa {:.3e} scaled-res {:.3e}", smax/smin, r.amax());
    }
}
