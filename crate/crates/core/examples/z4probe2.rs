use ubh_core::z4;

fn main() {
    let zrm = z4::zrm_fixture(4).unwrap();
    let t = std::time::Instant::now();
    let mut visited = 0u64;
    let mut valid = 0u64;
    z4::debug_enumerate_reps(&zrm, |x| {
        visited += 1;
        if zrm.contains(x) { return; }
        let mut mids: Vec<u64> = Vec::new();
        let n = 16;
        for c in zrm.words() {
            let v = x.add(c).balance(n);
            let v2 = (v * v) as u64;
            if v2 == 256 { return; }
            if v == 0 { continue; }
            if !mids.contains(&v2) {
                if mids.len() >= 1 { return; }
                mids.push(v2);
            }
        }
        valid += 1;
    });
    println!("visited {visited}, valid {valid} in {:?}", t.elapsed());
}
