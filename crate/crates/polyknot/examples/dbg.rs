use polyknot::diagram::*;
use polyknot::knotspace::*;
use std::time::Instant;

fn main() {
    let fig8 = PolyMap3::figure_eight();
    let t0 = Instant::now();
    let d = KnotDiagram::from_map(&fig8, 1).unwrap();
    println!("diagram(fig8): {:?}, {} crossings", t0.elapsed(), d.crossing_count());
    let tre = PolyMap3::trefoil_quintic();
    let t0 = Instant::now();
    let _ = KnotDiagram::from_map(&tre, 1).unwrap();
    println!("diagram(trefoil): {:?}", t0.elapsed());
    // scaled figure-eight (criterion-6 shape)
    use polyknot::isotopy::*;
    use polyknot::polycore::rat_i;
    let paths = target_affine_path(&fig8, &[rat_i(2), rat_i(3), rat_i(2)],
        &[rat_i(1), rat_i(0), rat_i(2)], &[rat_i(1), rat_i(1), rat_i(0)]).unwrap();
    let t0 = Instant::now();
    let ok = invariant_constancy_check(&paths, 11, 99).unwrap();
    println!("constancy check n=11: {:?} -> {ok}", t0.elapsed());
}
