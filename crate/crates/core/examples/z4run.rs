use ubh_core::classify::{classify_z4_extensions, Z4Condition};

fn main() {
    let cond = match std::env::args().nth(1).as_deref() {
        Some("weak") => Z4Condition::Weak,
        Some("weak2") => Z4Condition::WeakTwo,
        _ => Z4Condition::Qub,
    };
    let m: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(4);
    let start = std::time::Instant::now();
    let levels = classify_z4_extensions(cond, m, |msg| eprintln!("[{:?}] {msg}", start.elapsed())).unwrap();
    for (k, codes) in &levels {
        println!("N(2^{k}) = {}", codes.len());
    }
    println!("total {:?}", start.elapsed());
}
