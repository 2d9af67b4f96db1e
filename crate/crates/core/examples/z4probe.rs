use ubh_core::z4;

fn main() {
    let zrm = z4::zrm_fixture(4).unwrap();
    let start = std::time::Instant::now();
    // time the gamma digraph + canonical form of one small extension
    let mut x = z4::Z4Vector::zeros(16);
    for (j, d) in [1u8,0,0,3,0,1,3,0,0,1,3,0,1,0,0,3].iter().enumerate() {
        x.set(j, *d);
    }
    let code = zrm.extended(&x).unwrap();
    println!("built code size {} in {:?}", code.len(), start.elapsed());
    let g = z4::gamma_digraph(&code);
    println!("gamma vertices {} in {:?}", g.vertex_count(), start.elapsed());
    let t = std::time::Instant::now();
    let form = ubh_core::canon::canonical_form(&g);
    println!("canonical form ({} bytes) in {:?}", form.len(), t.elapsed());
}
