//! First-order reading of unitary diagrams over monadic predicates.

use std::fmt;

use crate::diagram::{Label, UnitaryDiagram, Zone};

use super::{Interpretation, SemanticsError};

/// A first-order variable `x{n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Pred(Label, Var),
    Eq(Var, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    /// Largest variable index mentioned, if any.
    fn max_var(&self) -> Option<u32> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Pred(_, v) => Some(v.0),
            Formula::Eq(a, b) => Some(a.0.max(b.0)),
            Formula::Not(f) => f.max_var(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().filter_map(Formula::max_var).max(),
            Formula::Implies(a, b) => a.max_var().max(b.max_var()),
            Formula::Forall(v, f) | Formula::Exists(v, f) => Some(v.0).max(f.max_var()),
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, items: &[Formula], op: &str, empty: &str) -> fmt::Result {
    if items.is_empty() {
        return write!(f, "{empty}");
    }
    write!(f, "(")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, " {op} ")?;
        }
        write!(f, "{item}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Pred(l, v) => write!(f, "{l}({v})"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::And(gs) => join(f, gs, "&", "true"),
            Formula::Or(gs) => join(f, gs, "|", "false"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Forall(v, g) => write!(f, "forall {v}. {g}"),
            Formula::Exists(v, g) => write!(f, "exists {v}. {g}"),
        }
    }
}

/// Evaluates a closed formula in `i`.
pub fn evaluate(formula: &Formula, i: &Interpretation) -> Result<bool, SemanticsError> {
    let slots = formula.max_var().map_or(0, |m| m as usize + 1);
    let mut env = vec![None; slots];
    eval(formula, i, &mut env)
}

fn eval(
    formula: &Formula,
    i: &Interpretation,
    env: &mut Vec<Option<usize>>,
) -> Result<bool, SemanticsError> {
    let lookup = |env: &Vec<Option<usize>>, v: Var| {
        env[v.0 as usize].ok_or(SemanticsError::FreeVariable(v.0))
    };
    Ok(match formula {
        Formula::True => true,
        Formula::False => false,
        Formula::Pred(l, v) => i.get(l)?.contains(lookup(env, *v)?),
        Formula::Eq(a, b) => lookup(env, *a)? == lookup(env, *b)?,
        Formula::Not(g) => !eval(g, i, env)?,
        Formula::And(gs) => {
            for g in gs {
                if !eval(g, i, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(gs) => {
            for g in gs {
                if eval(g, i, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval(a, i, env)? || eval(b, i, env)?,
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let universal = matches!(formula, Formula::Forall(..));
            let saved = env[v.0 as usize];
            let mut result = universal;
            for e in 0..i.size() {
                env[v.0 as usize] = Some(e);
                if eval(g, i, env)? != universal {
                    result = !universal;
                    break;
                }
            }
            env[v.0 as usize] = saved;
            result
        }
    })
}

fn zone_formula(z: &Zone, v: Var) -> Formula {
    let mut parts: Vec<Formula> = z
        .ins()
        .iter()
        .map(|l| Formula::Pred(l.clone(), v))
        .collect();
    parts.extend(
        z.outs()
            .iter()
            .map(|l| Formula::not(Formula::Pred(l.clone(), v))),
    );
    Formula::And(parts)
}

/// Translates a unitary diagram into an equivalent first-order sentence.
///
/// `x0` ranges over the universe; `x1..` are the spiders.
pub fn to_fol(d: &UnitaryDiagram) -> Formula {
    let x = Var(0);
    let mut top = Vec::new();
    for z in d.missing_zones() {
        top.push(Formula::forall(x, Formula::not(zone_formula(&z, x))));
    }

    let habitats: Vec<_> = d
        .spiders()
        .iter()
        .flat_map(|(r, &n)| std::iter::repeat_n(r, n as usize))
        .collect();
    let vars: Vec<Var> = (1..=habitats.len() as u32).map(Var).collect();

    let mut body = Vec::new();
    for (a, &va) in vars.iter().enumerate() {
        for &vb in &vars[a + 1..] {
            body.push(Formula::not(Formula::Eq(va, vb)));
        }
    }
    for (r, &v) in habitats.iter().zip(&vars) {
        body.push(Formula::Or(r.iter().map(|z| zone_formula(z, v)).collect()));
    }
    for z in d.shaded() {
        let images = habitats
            .iter()
            .zip(&vars)
            .filter(|(r, _)| r.contains(z))
            .map(|(_, &v)| Formula::Eq(x, v))
            .collect();
        body.push(Formula::forall(
            x,
            Formula::implies(zone_formula(z, x), Formula::Or(images)),
        ));
    }
    let spiders = vars
        .iter()
        .rev()
        .fold(Formula::And(body), |acc, &v| Formula::exists(v, acc));
    top.push(spiders);
    Formula::And(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{all_zones, label_set, CompoundDiagram, Region, SpiderEntry};
    use crate::semantics::{enumerate_interpretations, satisfies};

    #[test]
    fn translation_agrees_with_direct_semantics() {
        let l = label_set(["A", "B"]).unwrap();
        let zones: std::collections::BTreeSet<Zone> = all_zones(&l)
            .into_iter()
            .filter(|z| z.ins().len() < 2)
            .collect();
        let d = UnitaryDiagram::new(
            l.clone(),
            zones,
            [Zone::of(&["A"], &l)],
            [
                SpiderEntry::one(
                    Region::new([Zone::of(&["A"], &l), Zone::of(&["B"], &l)]).unwrap(),
                ),
                SpiderEntry::one(Region::single(Zone::of(&["A"], &l))),
            ],
        )
        .unwrap();
        let phi = to_fol(&d);
        let c = CompoundDiagram::from(d);
        for n in 0..4 {
            for i in enumerate_interpretations(&l, n).unwrap() {
                assert_eq!(
                    evaluate(&phi, &i).unwrap(),
                    satisfies(&i, &c).unwrap(),
                    "{i}"
                );
            }
        }
    }

    #[test]
    fn free_variables_are_rejected() {
        let l = label_set(["A"]).unwrap();
        let i = Interpretation::of(1, &[("A", &[0])]).unwrap();
        let f = Formula::Pred(l.into_iter().next().unwrap(), Var(0));
        assert_eq!(evaluate(&f, &i), Err(SemanticsError::FreeVariable(0)));
    }
}
