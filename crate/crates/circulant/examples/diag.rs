fn main() {
    let good = circulant::accept::GOOD_PRIMES;
    let bad = circulant::accept::BAD_PRIMES;
    let all: Vec<u64> = (31..=5000).filter(|&p| circulant::member::is_prime_u64(p) && p % 15 == 1).collect();
    println!("primes = {}, listed = {}", all.len(), good.len() + bad.len());
    for p in &all {
        if !good.contains(p) && !bad.contains(p) {
            println!("unlisted prime: {}", p);
            let t = circulant::goodbad::classify_prime(*p).unwrap();
            println!("  classifies as {:?}", t);
        }
    }
}
