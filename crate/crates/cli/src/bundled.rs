//! Instance files shipped with the binary, and the builders that produce
//! them.

use std::collections::BTreeMap;

use conley_core::{build_morse_complex, fixtures, ss_oracle, ConnectionMatrix, MorseData};

use crate::io::{Assumptions, ExpectedPages, Instance, Singular};
use crate::random;

pub const FILES: &[(&str, &str)] = &[
    ("example_2_12.json", include_str!("../fixtures/example_2_12.json")),
    ("double_well.json", include_str!("../fixtures/double_well.json")),
    ("circle.json", include_str!("../fixtures/circle.json")),
    ("random_a.json", include_str!("../fixtures/random_a.json")),
    ("random_b.json", include_str!("../fixtures/random_b.json")),
    ("random_c.json", include_str!("../fixtures/random_c.json")),
];

/// Seeds and sizes of the frozen random regression files.
pub const RANDOM: &[(&str, u64, usize)] = &[
    ("random_a.json", 31, 6),
    ("random_b.json", 5, 9),
    ("random_c.json", 37, 12),
];

pub fn single_matrix(name: String, delta: ConnectionMatrix, expected: Option<ExpectedPages>) -> Instance {
    Instance {
        name: Some(name),
        basis: delta.basis().clone(),
        minimal_order: None,
        matrices: BTreeMap::from([("delta".to_string(), delta)]),
        domain: None,
        codomain: None,
        transition: None,
        cover: None,
        assumptions: Assumptions::default(),
        singular: None,
        morse: None,
        blocks: None,
        expected_pages: expected,
    }
}

/// The three-element example: both connection matrices, the transition,
/// the cover data, the block form and the 6×6 matrix with one unknown.
pub fn example_2_12() -> Instance {
    let (singular_basis, full) = fixtures::example_singular(true);
    let star = (1, 5);
    let mut fixed = full;
    fixed.set(star.0, star.1, false);
    Instance {
        name: Some("three-element continuation".into()),
        basis: fixtures::example_basis(),
        minimal_order: None,
        matrices: BTreeMap::from([
            ("delta_lambda".to_string(), fixtures::example_delta_lambda()),
            ("delta_mu".to_string(), fixtures::example_delta_mu()),
        ]),
        domain: Some("delta_lambda".into()),
        codomain: Some("delta_mu".into()),
        transition: Some(fixtures::example_transition()),
        cover: Some(fixtures::example_cover()),
        assumptions: Assumptions {
            continuation: true,
            morse_smale: true,
            no_periodic_orbits: true,
            minimal_order_identity: true,
            stages_are_connection_matrices: false,
        },
        singular: Some(Singular {
            basis: singular_basis,
            fixed,
            star,
        }),
        morse: None,
        blocks: Some(fixtures::example_blocks()),
        expected_pages: None,
    }
}

fn morse_instance(name: &str, data: MorseData) -> Instance {
    let delta = build_morse_complex(&data).expect("bundled Morse data is consistent");
    let mut inst = single_matrix(name.into(), delta, None);
    inst.morse = Some(data);
    inst.assumptions.morse_smale = true;
    inst.assumptions.no_periodic_orbits = true;
    inst
}

pub fn double_well() -> Instance {
    morse_instance("double well", fixtures::double_well())
}

pub fn circle() -> Instance {
    morse_instance("circle", fixtures::circle())
}

pub fn random_fixture(seed: u64, n: usize) -> Instance {
    let d = random::filtered(&mut random::rng(seed), n, 2);
    let pages = ss_oracle(&d).expect("chain order is total");
    let mut inst = single_matrix(
        format!("random seed {seed}"),
        d,
        Some(ExpectedPages {
            matrix: "delta".into(),
            pages,
        }),
    );
    inst.assumptions.stages_are_connection_matrices = true;
    inst
}

/// Every bundled file, rebuilt from its source data.
pub fn build_all() -> Vec<(&'static str, Instance)> {
    let mut out = vec![
        ("example_2_12.json", example_2_12()),
        ("double_well.json", double_well()),
        ("circle.json", circle()),
    ];
    for &(file, seed, n) in RANDOM {
        out.push((file, random_fixture(seed, n)));
    }
    out
}
