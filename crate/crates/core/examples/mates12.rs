use ubh_core::{clique, fixtures, matrix};

fn main() {
    let h12 = fixtures::paley_h12();
    let start = std::time::Instant::now();
    let mates = clique::find_qub_mates(&h12, 9, 16, None).unwrap();
    println!("mates: {} in {:?}", mates.len(), start.elapsed());
    // no-triple check
    let start = std::time::Instant::now();
    let expected = matrix::PairClassification::QuasiUnbiased { l: 9, a: 16 };
    let mut triples = 0usize;
    for i in 0..mates.len() {
        for j in i + 1..mates.len() {
            if matrix::classify_pair(&mates[i], &mates[j]) == expected {
                triples += 1;
            }
        }
    }
    println!("pairs forming triples: {} in {:?}", triples, start.elapsed());
}
