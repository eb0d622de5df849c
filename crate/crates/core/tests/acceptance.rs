//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test --test acceptance -- --nocapture`). Counts are
//! exact; time budgets are generous for debug builds and asserted.

use oml_core::adjunction::{adjunction_check, enumerate_quantum_morphisms, reconstruct};
use oml_core::block::BlockScenario;
use oml_core::boolean::BooleanAlgebra;
use oml_core::catalog;
use oml_core::frames::{enumerate_blocks, enumerate_boolean_subalgebras, enumerate_frames};
use oml_core::gluing::{check_intersection, verify_cocycles};
use oml_core::ks::{
    global_valuations, ks_search, parity_certificate, verify_valuation, KsInstance, KsOptions,
    KsOutcome, Valuation,
};
use oml_core::lattice::{validate_ortholattice, FiniteOml, LatticeTable};
use oml_core::paste::{blocks_diagram, representable_diagram};
use oml_core::pasting::{scenario_orthoposet, PastedScenario};
use oml_core::ray::RayScenario;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn catalog_omls() -> Vec<(String, Arc<FiniteOml>)> {
    catalog::oml_names()
        .iter()
        .map(|n| (n.to_string(), catalog::lattice(n).unwrap()))
        .collect()
}

#[test]
fn criterion_1_ks_nonexistence() {
    let cabello = catalog::ray_scenario("cabello18").unwrap();
    let inst18 = KsInstance::from(&cabello);
    let t = Instant::now();
    let res18 = ks_search(&inst18, &KsOptions::default()).unwrap();
    let t18 = t.elapsed();
    assert!(
        matches!(res18.outcome, KsOutcome::Unsat),
        "cabello18 must be UNSAT"
    );
    assert!(
        t18 < Duration::from_secs(1),
        "cabello18 took {t18:?}, budget 1s"
    );

    let peres = catalog::ray_scenario("peres33").unwrap();
    let inst33 = KsInstance::from(&peres);
    let t = Instant::now();
    let res33 = ks_search(&inst33, &KsOptions::default()).unwrap();
    let t33 = t.elapsed();
    assert!(
        matches!(res33.outcome, KsOutcome::Unsat),
        "peres33 must be UNSAT"
    );
    assert!(
        t33 < Duration::from_secs(30),
        "peres33 took {t33:?}, budget 30s"
    );

    // the parity oracle confirms the 18-ray case independently of the search
    let parity = parity_certificate(&inst18);
    assert!(
        parity.is_some(),
        "parity argument applies to the 18-ray configuration"
    );
    // and does not apply to the 33-ray configuration (uneven context degrees)
    assert!(parity_certificate(&inst33).is_none());

    println!(
        "acceptance criterion 1 (KS nonexistence: cabello18 UNSAT in {t18:?}, \
         peres33 UNSAT in {t33:?}, parity oracle concurs): PASS"
    );
}

/// Brute force over all 2^n assignments; only shares verify_valuation with
/// the engine under test.
fn brute_force_count(inst: &KsInstance) -> usize {
    let n = inst.atom_names.len();
    assert!(n <= 20);
    (0u32..(1 << n))
        .filter(|&m| {
            let v = Valuation {
                assignment: (0..n).map(|i| m >> i & 1 == 1).collect(),
            };
            verify_valuation(inst, &v).unwrap()
        })
        .count()
}

fn search_count(inst: &KsInstance) -> usize {
    ks_search(
        inst,
        &KsOptions {
            enumerate_all: true,
            ..Default::default()
        },
    )
    .unwrap()
    .all_solutions
    .unwrap()
    .solutions
    .len()
}

/// Independent frame-count oracle: all maps on all elements of B into L,
/// filtered by the morphism laws. No atom-image shortcut.
fn frames_by_exhaustion(b: &BooleanAlgebra, l: &FiniteOml) -> usize {
    let masks: Vec<u32> = b.elements().collect();
    let m = masks.len();
    let n = l.n();
    let mut values = vec![0usize; m];
    let mut count = 0usize;
    'outer: loop {
        let ok = {
            let h = |x: u32| values[x as usize];
            values[0] == l.zero()
                && h(b.top()) == l.one()
                && masks.iter().all(|&x| {
                    h(b.complement(x)) == l.comp(h(x))
                        && masks.iter().all(|&y| {
                            h(x | y) == l.join(h(x), h(y)) && h(x & y) == l.meet(h(x), h(y))
                        })
                })
        };
        if ok {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == m {
                break 'outer;
            }
            values[k] += 1;
            if values[k] < n {
                break;
            }
            values[k] = 0;
            k += 1;
        }
    }
    count
}

#[test]
fn criterion_2_exact_small_counts() {
    let single =
        RayScenario::parse("dim 3\nray e1 = (1,0,0)\nray e2 = (0,1,0)\nray e3 = (0,0,1)\n")
            .unwrap();
    let inst = KsInstance::from(&single);
    assert_eq!(search_count(&inst), 3);
    assert_eq!(brute_force_count(&inst), 3);

    let shared = RayScenario::parse(
        "dim 3\nray e1 = (1,0,0)\nray e2 = (0,1,0)\nray e3 = (0,0,1)\n\
         ray f2 = (0,1,1)\nray f3 = (0,1,-1)\n",
    )
    .unwrap();
    let inst = KsInstance::from(&shared);
    assert_eq!(search_count(&inst), 5);
    assert_eq!(brute_force_count(&inst), 5);

    let mo2 = catalog::lattice("mo2").unwrap();
    assert_eq!(global_valuations(&mo2).unwrap().len(), 4);
    assert_eq!(search_count(&KsInstance::from_lattice(&mo2).unwrap()), 4);

    let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
    let b8 = BooleanAlgebra::with_atom_count(3).unwrap();
    assert_eq!(enumerate_frames(&b4, &mo2).len(), 6);
    assert_eq!(frames_by_exhaustion(&b4, &mo2), 6);
    assert_eq!(enumerate_frames(&b8, &mo2).len(), 15);
    assert_eq!(frames_by_exhaustion(&b8, &mo2), 15);

    println!(
        "acceptance criterion 2 (exact counts 3, 5, 4, 6, 15 vs independent \
         oracles): PASS"
    );
}

#[test]
fn criterion_3_cocycle_suite() {
    let t = Instant::now();
    for (name, l) in catalog_omls() {
        let frames: Vec<_> = enumerate_blocks(&l)
            .into_iter()
            .map(|b| b.injection)
            .collect();
        let rep = verify_cocycles(&frames).unwrap();
        assert!(rep.holds(), "{name}: {:?}", rep.witnesses);
    }
    let elapsed = t.elapsed();
    assert!(
        elapsed < Duration::from_secs(5),
        "cocycle suite took {elapsed:?}"
    );
    println!(
        "acceptance criterion 3 (cocycle identity/symmetry/triangle laws on all \
         catalog lattices in {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_4_pullback_intersection() {
    let mut pairs = 0usize;
    for (name, l) in catalog_omls() {
        let mut injective = Vec::new();
        for sub in enumerate_boolean_subalgebras(&l) {
            for f in enumerate_frames(&sub.algebra, &l) {
                if f.is_injective() {
                    injective.push(f);
                }
            }
        }
        for f in &injective {
            for g in &injective {
                pairs += 1;
                assert!(
                    check_intersection(f, g).unwrap(),
                    "{name}: pullback image differs from image intersection \
                     for {f} and {g}"
                );
            }
        }
    }
    println!(
        "acceptance criterion 4 (pullback equals image intersection on {pairs} \
         injective frame pairs): PASS"
    );
}

#[test]
fn criterion_5_reconstruction() {
    for (name, l) in catalog_omls() {
        let t = Instant::now();
        let rep = reconstruct(&l).unwrap();
        let elapsed = t.elapsed();
        assert!(rep.lattice, "{name}: pasting must be a lattice");
        assert!(rep.isomorphic, "{name}: {:?}", rep.distinguishing);
        assert!(elapsed < Duration::from_secs(10), "{name} took {elapsed:?}");
    }
    println!(
        "acceptance criterion 5 (reconstruction isomorphism for b2, b4, b8, mo2, \
         mo3, twoblocks): PASS"
    );
}

#[test]
fn criterion_6_adjunction_bijection() {
    // representable diagrams at one, two and three atoms, probed against MO2
    let mo2 = catalog::lattice("mo2").unwrap();
    let mut checked = Vec::new();
    for k in 1..=3usize {
        let b = BooleanAlgebra::with_atom_count(k).unwrap();
        let p = representable_diagram(&b);
        let rep = adjunction_check(&p, &mo2).unwrap();
        assert!(rep.holds(), "representable at {k} atoms: {rep:?}");
        assert_eq!(rep.left_count, enumerate_frames(&b, &mo2).len());
        checked.push(format!(
            "y(B_{}) {}={}",
            1 << k,
            rep.left_count,
            rep.right_count
        ));
    }
    // blocks diagrams of every catalog lattice against itself
    for (name, l) in catalog_omls() {
        let p = blocks_diagram(&l);
        let rep = adjunction_check(&p, &l).unwrap();
        assert!(rep.holds(), "{name}: {rep:?}");
        let homs = enumerate_quantum_morphisms(&l, &l).unwrap();
        assert_eq!(rep.right_count, homs.len(), "{name}");
        checked.push(format!("{name} {}={}", rep.left_count, rep.right_count));
    }
    println!(
        "acceptance criterion 6 (adjunction bijection, both sides enumerated \
         independently: {}): PASS",
        checked.join(", ")
    );
}

#[test]
fn criterion_7_presheaf_fibration_laws_and_seeded_defects() {
    use oml_core::presheaf::{
        build_presheaf, category_of_elements, check_discrete_fibration, BaseCategory,
    };
    for (name, l) in catalog_omls() {
        let (base, _) = BaseCategory::subalgebra_base(&l);
        let p = build_presheaf(&l, base).unwrap();
        p.check_functor_laws()
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        p.check_restriction_contents()
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        let ec = category_of_elements(&p);
        let rep = check_discrete_fibration(&ec);
        assert!(rep.holds(), "{name}");

        // seeded defect: corrupt one identity restriction
        if p.sections.iter().any(|s| s.len() > 1) {
            let mut bad = p.clone();
            let (ai, s) = p
                .base
                .arrows
                .iter()
                .enumerate()
                .find_map(|(ai, a)| {
                    (a.hom.is_identity() && p.sections[a.cod].len() > 1).then_some((ai, 1))
                })
                .expect("an identity over a multi-frame object exists");
            bad.restrictions[ai][s] = 0;
            assert!(
                bad.check_functor_laws().is_err(),
                "{name}: corrupted identity restriction must be detected"
            );
        }

        // seeded defect: duplicate one non-identity lift
        let mut bad_ec = category_of_elements(&p);
        if let Some(extra) = bad_ec
            .arrows
            .iter()
            .find(|a| {
                let b = &bad_ec.base.arrows[a.base];
                b.dom != b.cod
            })
            .cloned()
        {
            bad_ec.arrows.push(extra);
            let rep = check_discrete_fibration(&bad_ec);
            assert!(!rep.split_lifts, "{name}: duplicated lift must be detected");
        }
    }
    println!(
        "acceptance criterion 7 (functor laws and unique lifts hold; corrupted \
         restrictions and duplicated lifts are detected): PASS"
    );
}

#[test]
fn criterion_8_validator_sensitivity() {
    // O6 is a valid ortholattice whose orthomodularity fails exactly at (a, b)
    let o6 = catalog::lattice("o6").unwrap();
    assert!(validate_ortholattice(&o6.table()).is_valid());
    let (a, b) = o6
        .orthomodularity_witness()
        .expect("O6 fails the orthomodular law");
    assert_eq!((o6.label(a), o6.label(b)), ("a", "b"));

    for (name, l) in catalog_omls() {
        assert!(validate_ortholattice(&l.table()).is_valid(), "{name}");
        assert!(l.is_orthomodular(), "{name}");
    }
    for k in 1..=4usize {
        let l = BooleanAlgebra::with_atom_count(k).unwrap().as_oml();
        assert!(validate_ortholattice(&l.table()).is_valid());
        assert!(l.is_orthomodular(), "Boolean algebras are orthomodular");
    }
    println!(
        "acceptance criterion 8 (O6 rejected with witness (a, b); catalog and \
         Boolean lattices accepted): PASS"
    );
}

/// The hand-built 12-element pasting of two three-atom blocks over a shared
/// atom, used as the structural oracle for the scenario pasting.
#[test]
fn shared_atom_pasting_matches_hand_built_oracle() {
    let labels: Vec<String> = [
        "0", "a", "b", "c", "d", "e", "a'", "b'", "c'", "d'", "e'", "1",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let pairs = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 7),
        (1, 8), // a <= a|c, a <= a|b
        (2, 6),
        (2, 8), // b <= b|c, b <= a|b
        (3, 6),
        (3, 7),
        (3, 9),
        (3, 10), // c under both blocks' coatoms
        (4, 8),
        (4, 10), // d <= d|e (= a|b class), d <= c|d
        (5, 8),
        (5, 9), // e <= d|e, e <= c|e
        (6, 11),
        (7, 11),
        (8, 11),
        (9, 11),
        (10, 11),
        (0, 11),
    ];
    let comp = vec![11, 6, 7, 8, 9, 10, 1, 2, 3, 4, 5, 0];
    let table = LatticeTable::from_pairs(labels, &pairs, comp);
    assert!(validate_ortholattice(&table).is_valid());
    let oracle = Arc::new(FiniteOml::from_table(table).unwrap());
    assert!(oracle.is_orthomodular());
    assert_eq!(oracle.n(), 12);

    let s = BlockScenario::parse("atoms a b c d e\nblock a b c\nblock c d e\n").unwrap();
    let pasted = match scenario_orthoposet(&s).unwrap() {
        PastedScenario::Lattice {
            oml,
            om_witness: None,
            ..
        } => Arc::new(oml),
        other => panic!("expected an orthomodular lattice, got {other:?}"),
    };
    assert!(
        oml_core::adjunction::find_oml_isomorphism(&pasted, &oracle).is_some(),
        "scenario pasting must match the hand-built structure"
    );
}
