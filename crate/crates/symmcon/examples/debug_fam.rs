use symmcon::*;
fn main() {
    for kind in [FamilyKind::OrnsteinUhlenbeckEven, FamilyKind::LaguerreConv { alpha: 0.5 }] {
        let fam = FamilySpec::new(kind).unwrap();
        let rule = QuadratureRule::build(&fam, 64).unwrap();
        let grid = Grid::new(rule, 1);
        let (nodes, weights) = grid.rule().positive_half();
        println!("== {:?}: max node {:.3}", kind, nodes.last().unwrap());
        for k in [0usize, 4, 8, 12, 14, 15, 16] {
            let ip: f64 = (0..nodes.len()).map(|q| {
                let v = fam.eval_phi(k, nodes[q]).unwrap();
                weights[q] * v * v
            }).sum();
            let nd: f64 = (0..nodes.len()).map(|q| {
                let d = fam.delta_phi_jet(k, nodes[q]).unwrap().value();
                weights[q] * d * d
            }).sum();
            println!("  k={k:2} <phi,phi>={ip:.12e}  |dphi|^2={nd:.6e} (expect {})", fam.excitation(k));
        }
        // top node behavior
        let x = *nodes.last().unwrap();
        for k in [14usize, 16] {
            let j = fam.phi_jet(k, x).unwrap();
            println!("  phi_{k}({x:.2}) = {:.6e}, w_last = {:.6e}", j.value(), weights[nodes.len()-1]);
        }
    }
}
