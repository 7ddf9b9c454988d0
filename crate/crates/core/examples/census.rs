use semibrace::enumeration::{enumerate, EnumerationOptions};
use std::time::Instant;

fn main() {
    for n in 1..=6 {
        let t = Instant::now();
        let c = enumerate(n, EnumerationOptions::default()).unwrap();
        println!("n={n}: {} classes from {} candidates in {:?}", c.entries.len(), c.candidates, t.elapsed());
    }
}
