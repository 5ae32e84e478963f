//! Helicoid patch (u cos v, u sin v, v/2) as a tensor-product B-surface:
//! linear in u, over span{1, v, cos v, sin v} in v.

use ecbasis::bbasis::BBasis;
use ecbasis::geometry::{convert_surface, eval_bsurface, SeparableTerm, SurfaceSpec};
use ecbasis::space::{basis_from_characteristic, CharacteristicSpec, Root, Shape, SpaceSpec};
use ecbasis::transform::{sample_grid, transform_for};

fn main() {
    let su = SpaceSpec::polynomial(1, 0.0, 2.0).unwrap();
    let roots = CharacteristicSpec::new(vec![Root::new(0.0, 0.0, 2), Root::new(0.0, 1.0, 1)]);
    let sv = basis_from_characteristic(&roots, 0.0, 2.5).unwrap();

    let at = |power: u32, shape: Shape| {
        let k = sv.terms().iter().position(|t| t.power == power && t.shape == shape && (t.freq > 0.0) == (shape != Shape::Exp)).unwrap();
        (0..4).map(|i| if i == k { 1.0 } else { 0.0 }).collect::<Vec<_>>()
    };
    let spec = SurfaceSpec {
        spaces: [su.clone(), sv.clone()],
        coordinates: vec![
            vec![SeparableTerm { u: vec![0.0, 1.0], v: at(0, Shape::Cos) }],
            vec![SeparableTerm { u: vec![0.0, 1.0], v: at(0, Shape::Sin) }],
            vec![SeparableTerm { u: vec![0.5, 0.0], v: at(1, Shape::Exp) }],
        ],
    };
    let net = convert_surface(&spec, &transform_for(&su).unwrap(), &transform_for(&sv).unwrap()).unwrap();
    for (j1, row) in net.points.iter().enumerate() {
        for (j2, p) in row.iter().enumerate() {
            println!("p[{j1}][{j2}] = ({:8.4}, {:8.4}, {:8.4})", p[0], p[1], p[2]);
        }
    }

    let (bu, bv) = (BBasis::new(&su).unwrap(), BBasis::new(&sv).unwrap());
    let mut worst = 0.0f64;
    for u in sample_grid(0.0, 2.0, 21) {
        for v in sample_grid(0.0, 2.5, 21) {
            let (a, e) = (eval_bsurface(&net, (&bu, &bv), u, v), spec.eval(u, v));
            worst = worst.max(a.iter().zip(&e).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
        }
    }
    println!("max deviation on a 21x21 grid: {worst:.2e}");
}
