//! Graphviz DOT output. Node ids are assigned in traversal order, so the
//! same input always renders to the same bytes.

use std::fmt::Write as _;

use crate::diagram::{CompoundDiagram, UnitaryDiagram};
use crate::greimas::{Corner, MetaTerm, SquareReport};
use crate::proof::{Justification, ProofTree};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('"', "\\\"")
        .replace('\n', "\\n")
}

/// Zones (shaded ones marked `*`) and spider habitats.
pub fn unit_label(d: &UnitaryDiagram) -> String {
    let zones: Vec<String> = d
        .zones()
        .iter()
        .map(|z| {
            if d.is_shaded(z) {
                format!("{z}*")
            } else {
                z.to_string()
            }
        })
        .collect();
    let spiders: Vec<String> = d
        .spiders()
        .iter()
        .map(|(r, n)| {
            if *n == 1 {
                r.to_string()
            } else {
                format!("{n}x{r}")
            }
        })
        .collect();
    format!(
        "zones: {}\nspiders: {}",
        zones.join(" "),
        if spiders.is_empty() {
            "none".to_string()
        } else {
            spiders.join(" ")
        }
    )
}

/// A one-line description of a compound for proof nodes.
fn compound_label(d: &CompoundDiagram) -> String {
    match d {
        CompoundDiagram::Unit(u) => unit_label(u),
        CompoundDiagram::Top => "TOP".into(),
        CompoundDiagram::Bottom => "BOTTOM".into(),
        CompoundDiagram::And(a, b) => {
            format!("({})\nand\n({})", compound_label(a), compound_label(b))
        }
        CompoundDiagram::Or(a, b) => {
            format!("({})\nor\n({})", compound_label(a), compound_label(b))
        }
    }
}

pub fn render_compound(d: &CompoundDiagram) -> String {
    fn go(d: &CompoundDiagram, next: &mut usize, out: &mut String) -> usize {
        let id = *next;
        *next += 1;
        let (label, shape) = match d {
            CompoundDiagram::Unit(u) => (unit_label(u), "box"),
            CompoundDiagram::Top => ("TOP".into(), "plaintext"),
            CompoundDiagram::Bottom => ("BOTTOM".into(), "plaintext"),
            CompoundDiagram::And(..) => ("and".into(), "circle"),
            CompoundDiagram::Or(..) => ("or".into(), "circle"),
        };
        let _ = writeln!(
            out,
            "  n{id} [shape={shape}, label=\"{}\"];",
            escape(&label)
        );
        if let CompoundDiagram::And(a, b) | CompoundDiagram::Or(a, b) = d {
            for child in [a, b] {
                let c = go(child, next, out);
                let _ = writeln!(out, "  n{id} -> n{c};");
            }
        }
        id
    }
    let mut out = String::from("digraph compound {\n  node [fontname=\"monospace\"];\n");
    go(d, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

/// Premises at the top, conclusion at the bottom; edges carry rule names.
pub fn render_proof(t: &ProofTree) -> String {
    fn go(t: &ProofTree, next: &mut usize, out: &mut String) -> usize {
        let id = *next;
        *next += 1;
        let (kind, style) = match &t.justification {
            Justification::Premise => ("premise", "solid"),
            Justification::Assertion => ("assertion", "dashed"),
            Justification::Rule { .. } => ("derived", "solid"),
        };
        let label = format!("[{kind}]\n{}", compound_label(&t.conclusion));
        let _ = writeln!(
            out,
            "  n{id} [shape=box, style={style}, label=\"{}\"];",
            escape(&label)
        );
        if let Justification::Rule { instance, children } = &t.justification {
            for c in children {
                let cid = go(c, next, out);
                let _ = writeln!(
                    out,
                    "  n{cid} -> n{id} [label=\"{}\"];",
                    instance.rule.name().family()
                );
            }
        }
        id
    }
    let mut out = String::from("digraph proof {\n  node [fontname=\"monospace\"];\n");
    go(t, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

/// Corners `d1..d8`, the six meta-terms and the relations between them.
///
/// Contrariety is dotted, contradiction solid and implication dashed.
pub fn render_square(r: &SquareReport) -> String {
    let mut out = String::from("digraph square {\n  node [fontname=\"monospace\", shape=box];\n");
    let gloss = |name: &str| -> String {
        let c = match name {
            "d1" | "d8" => Corner::D1,
            "d2" | "d5" => Corner::D2,
            "d3" | "d6" => Corner::D3,
            _ => Corner::D4,
        };
        r.spec.gloss(c)
    };
    for (name, d) in r.corners() {
        let label = format!("{name} {}\n{}", gloss(name), unit_label(&d));
        let _ = writeln!(out, "  {name} [label=\"{}\"];", escape(&label));
    }
    for m in MetaTerm::ALL {
        let d = r.derivation(m.derivation());
        let status = match d {
            Some(d) if d.ok() => "",
            _ => " (not derived)",
        };
        let target = crate::greimas::meta_term_target(m);
        let label = format!(
            "{m} {}{status}\n{}",
            d.map_or("", |d| d.task.gloss.as_str()),
            unit_label(&target)
        );
        let _ = writeln!(out, "  {m} [shape=ellipse, label=\"{}\"];", escape(&label));
    }
    for (a, b, holds) in &r.contrariety {
        if *holds && a < b {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dotted, dir=both, label=\"contrariety\"];",
                a.name(),
                b.name()
            );
        }
    }
    let edge = |out: &mut String, from: &str, to: &str, tag: &str, style: &str| {
        let ok = r.derivation(tag).is_some_and(|d| d.ok());
        let color = if ok { "black" } else { "red" };
        let _ = writeln!(
            out,
            "  {from} -> {to} [style={style}, color={color}, label=\"{tag}\"];"
        );
    };
    edge(&mut out, "d1", "d2", "T1", "solid");
    edge(&mut out, "d3", "d4", "T2", "solid");
    edge(&mut out, "d5", "d6", "T3", "dashed");
    edge(&mut out, "d7", "d8", "T4", "dashed");
    for m in MetaTerm::ALL {
        let (a, b) = m.inputs();
        for c in [a, b] {
            edge(&mut out, c.name(), m.tag(), m.derivation(), "bold");
        }
    }
    out.push_str("}\n");
    out
}
