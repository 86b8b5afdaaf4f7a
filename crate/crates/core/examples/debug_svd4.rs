use nalgebra::{DMatrix, DVector};
use confmass_core::geometry::*;
use confmass_core::solver::*;

fn main() {
    let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
    let bc = BoundaryCondition::dirichlet_zero(1);
    let mut spec = SolverSpec::default_for_dimension(3);
    spec.residual_threshold = 1.0;
    let h = solve(&domain, &bc, &spec).unwrap();
    let s = h.solved_sources();
    let colloc = boundary_quadrature(&domain, spec.collocation_resolution).unwrap();
    let rows = colloc.len();
    let cols = s.count();
    // replicate solve.rs assembly exactly (row-normalized)
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b = DVector::<f64>::zeros(rows);
    for i in 0..rows {
        let x = colloc.position(i);
        let mut row = vec![0.0; cols];
        for j in 0..cols {
            let y = s.point(j);
            let r2: f64 = (0..3).map(|k| (x[k]-y[k])*(x[k]-y[k])).sum();
            row[j] = 1.0/r2.sqrt();
        }
        let norm = row.iter().map(|v| v*v).sum::<f64>().sqrt();
        for (j, v) in row.iter().enumerate() { a[(i,j)] = v / norm; }
        b[i] = -1.0 / norm;
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    println!("kappa = {:.6e} (cert said {:.6e})", smax/smin, h.certificate.condition_number);
    let x = svd.solve(&b, 1e-12*smax).unwrap();
    println!("normalized-system solve residual: {:.3e}", (&a*&x - &b).amax());
    let c = DVector::from_iterator(cols, s.coeffs().iter().copied());
    println!("h coeffs residual on normalized system: {:.3e}", (&a*&c - &b).amax());
    println!("coeff diff: {:.3e}", (&x - &c).amax());
    // try solving twice to test determinism
    let svd2 = a.clone().svd(true, true);
    let x2 = svd2.solve(&b, 1e-12*smax).unwrap();
    println!("second svd solve diff vs first: {:.3e}", (&x2 - &x).amax());
}
