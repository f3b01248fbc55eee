use std::time::Instant;

use spidersq_core::greimas::{assemble_square, SquareOptions, SquareSpec};

fn main() {
    let start = Instant::now();
    let spec = SquareSpec::new("life", "death").expect("distinct names");
    let report = assemble_square(&spec, &SquareOptions::default());
    for d in &report.derivations {
        let rules = d.proof.as_ref().map(|p| p.rule_multiset());
        println!(
            "{} ok={} height={:?} rules={rules:?} states={}",
            d.task.tag,
            d.ok(),
            d.proof.as_ref().map(|p| p.height()),
            d.stats.states
        );
    }
    println!("elapsed {:.2?}", start.elapsed());
}
