use std::time::Instant;

use spidersq_core::audit::rule_soundness;
use spidersq_core::Exec;

fn main() {
    let start = Instant::now();
    let (small, greimas) = rule_soundness(3, Exec::default()).expect("audit");
    for (name, r) in [("two-label", &small), ("greimas", &greimas)] {
        println!(
            "{name}: {} diagrams, {} interpretations, {} instances {:?}, {} violations",
            r.diagrams,
            r.interpretations,
            r.checked(),
            r.instances,
            r.violations.len()
        );
        for v in r.violations.iter().take(5) {
            println!("  {v:?}");
        }
    }
    println!("elapsed {:.2?}", start.elapsed());
}
