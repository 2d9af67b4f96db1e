fn main() {
    let checks = ubh_core::classify::verify_fixture_tables().unwrap();
    for c in &checks {
        if !c.ok {
            println!("FAIL {}: {}", c.name, c.detail);
        }
    }
    println!("total {} checks, {} failed", checks.len(), checks.iter().filter(|c| !c.ok).count());
}
