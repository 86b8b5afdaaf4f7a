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

    // Rebuild the same system and measure ||A c - b|| with h's coefficients.
    let colloc = boundary_quadrature(&domain, spec.collocation_resolution).unwrap();
    let rows = colloc.len();
    let cols = s.count();
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b = DVector::<f64>::zeros(rows);
    for i in 0..rows {
        let x = colloc.position(i);
        for j in 0..cols {
            let y = s.point(j);
            let r2: f64 = (0..3).map(|k| (x[k]-y[k])*(x[k]-y[k])).sum();
            a[(i,j)] = 1.0/r2.sqrt();
        }
        b[i] = -1.0;
    }
    let c = DVector::from_iterator(cols, s.coeffs().iter().copied());
    let r = &a*&c - &b;
    println!("residual of h's coefficients on rebuilt system: {:.3e}", r.amax());
    // fresh svd solve of the rebuilt system
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let x2 = svd.solve(&b, 1e-12*smax).unwrap();
    println!("fresh solve residual: {:.3e}", (&a*&x2 - &b).amax());
    println!("coeff diff |c - x2|: {:.3e}", (&c - &x2).amax());
    // where do they differ? compare some entries
    for j in [0usize, 1, 2, 100, 242] {
        println!("j={j}: h={:+.6e} fresh={:+.6e}  src=({:.4},{:.4},{:.4})", c[j], x2[j],
                 s.point(j)[0], s.point(j)[1], s.point(j)[2]);
    }
}
