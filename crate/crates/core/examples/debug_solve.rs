use confmass_core::geometry::*;
use confmass_core::solver::*;

fn main() {
    let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
    let bc = BoundaryCondition::dirichlet_zero(1);
    let mut spec = SolverSpec::default_for_dimension(3);
    spec.residual_threshold = 1.0; // let it through
    let h = solve(&domain, &bc, &spec).unwrap();
    let s = h.solved_sources();
    println!("sources: {}", s.count());
    println!("monopole: {:+.3e}", s.monopole());
    let maxc = (0..s.count()).map(|j| s.coeff(j).abs()).fold(0.0f64, f64::max);
    println!("max |c|: {:+.3e}", maxc);
    println!("center coeff: {:+.6e}", s.coeff(0));
    println!("cert residual (check grid): {:.3e}", h.certificate.residual_max);
    println!("condition: {:.3e}  truncated: {}", h.certificate.condition_number, h.certificate.truncated_count);
    // residual on the collocation grid itself
    let colloc = boundary_quadrature(&domain, spec.collocation_resolution).unwrap();
    let mut rmax = 0.0f64;
    for i in 0..colloc.len() {
        rmax = rmax.max(h.eval(colloc.position(i)).abs());
    }
    println!("residual at collocation nodes: {:.3e}", rmax);
    // residual vs angle on the check grid
    let check = boundary_quadrature_offset(&domain, spec.collocation_resolution + 1, 0.01).unwrap();
    let mut worst = (0.0f64, 0usize);
    for i in 0..check.len() {
        let r = h.eval(check.position(i)).abs();
        if r > worst.0 { worst = (r, i); }
    }
    println!("worst check residual {:.3e} at node {} angles {:?}", worst.0, worst.1, check.node_angles(worst.1));
}
