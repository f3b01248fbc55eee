use spidersq_core::diagram::CompoundDiagram;
use spidersq_core::greimas::{
    assemble_square, build_square, contrariety_check, corner, implication_check, m_witness,
    meta_term_premise, meta_term_target, Corner, GreimasError, MetaTerm, Seme, SquareOptions,
    SquareSpec,
};
use spidersq_core::proof::check_proof;
use spidersq_core::semantics::{entails, satisfies, Interpretation};

fn options() -> SquareOptions {
    SquareOptions::default()
}

#[test]
fn contrariety_only_between_the_complex_pair() {
    for a in Corner::ALL {
        for b in Corner::ALL {
            let holds = contrariety_check(&corner(a), &corner(b)).unwrap();
            let expected = matches!((a, b), (Corner::D1, Corner::D3) | (Corner::D3, Corner::D1));
            assert_eq!(holds, expected, "{a:?} {b:?}");
        }
    }
}

#[test]
fn implications_pick_out_the_deixes() {
    for b in Corner::ALL {
        let one = implication_check(&corner(Corner::D2), &corner(b), Seme::S1).unwrap();
        let two = implication_check(&corner(Corner::D4), &corner(b), Seme::S2).unwrap();
        assert_eq!(one, b == Corner::D3, "d2 => {b:?}");
        assert_eq!(two, b == Corner::D1, "d4 => {b:?}");
    }
    assert!(!implication_check(&corner(Corner::D1), &corner(Corner::D3), Seme::S1).unwrap());
}

/// `And(d2, d4)` with the M witness has a model where one element in `X`
/// alone witnesses both negations, so the three-spider S̄ target fails.
#[test]
fn neutral_term_is_not_entailed() {
    let joint = CompoundDiagram::and(meta_term_premise(MetaTerm::Sbar), m_witness());
    let target: CompoundDiagram = meta_term_target(MetaTerm::Sbar).into();
    let verdict = entails(&joint, &target, 3).unwrap();
    assert!(!verdict.holds);
    let cm = verdict.countermodel.unwrap();
    assert_eq!(cm.size(), 2);
    let two =
        Interpretation::of(2, &[("S1", &[]), ("S2", &[]), ("M", &[1]), ("X", &[0, 1])]).unwrap();
    assert!(satisfies(&two, &joint).unwrap());
    assert!(!satisfies(&two, &target).unwrap());
}

#[test]
fn life_and_death() {
    let spec = SquareSpec::new("life", "death").unwrap();
    let report = assemble_square(&spec, &options());
    assert_eq!(report.derivations.len(), 10);
    assert_eq!(report.corners().len(), 8);
    let t4 = report.derivation("T4").unwrap();
    assert_eq!(t4.task.gloss, "/not-death/ -> /life/");
    assert!(t4.ok());
    for tag in ["T1", "T2", "T3", "T4", "T5", "T7", "T8", "T9", "T10"] {
        let d = report.derivation(tag).unwrap();
        assert!(d.ok(), "{tag}");
        let proof = d.proof.as_ref().unwrap();
        assert_eq!(
            proof.conclusion.canonical_key(),
            CompoundDiagram::from(d.task.goal.clone()).canonical_key()
        );
        // Checked against the premises, and sound once assertions join them.
        assert!(check_proof(proof, &d.task.premises).unwrap().valid);
        let joint = CompoundDiagram::and_all(
            d.task
                .premises
                .iter()
                .cloned()
                .chain(d.task.assertions.iter().cloned().map(Into::into)),
        );
        assert!(
            entails(&joint, &proof.conclusion, 3).unwrap().holds,
            "{tag}"
        );
    }
    assert_eq!(report.failed(), ["T6"]);
    assert!(matches!(
        build_square(&spec, &options()),
        Err(GreimasError::DerivationFailed(tag)) if tag == "T6"
    ));
}

#[test]
fn names_do_not_change_structure() {
    let a = assemble_square(&SquareSpec::new("life", "death").unwrap(), &options());
    let b = assemble_square(
        &SquareSpec::new("masculine", "feminine").unwrap(),
        &options(),
    );
    for (x, y) in a.derivations.iter().zip(&b.derivations) {
        let key = |d: &spidersq_core::greimas::DerivationResult| {
            d.proof.as_ref().map(spidersq_core::io::json::proof_to_json)
        };
        assert_eq!(key(x), key(y));
    }
    assert_eq!(
        b.derivation("T4").unwrap().task.gloss,
        "/not-feminine/ -> /masculine/"
    );
    assert!(SquareSpec::new("life", "life").is_err());
}

#[test]
fn schema_proof_from_its_pair() {
    let report = assemble_square(&SquareSpec::new("life", "death").unwrap(), &options());
    let t9 = report.derivation("T9").unwrap();
    assert_eq!(t9.task.meta_term, Some(MetaTerm::PosSchema));
    let expected = CompoundDiagram::and(corner(Corner::D1), corner(Corner::D2));
    assert_eq!(t9.task.premises, vec![expected]);
    assert!(t9.clauses.unwrap().all());
}
