//! Built-in games with the analysis facts they are known to have.

use crate::matrix::PayoffMatrix;
use crate::rational::{self, Rational};

/// Facts a correct analysis must reproduce. `None` means "not asserted".
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expected {
    pub value: Option<Rational>,
    pub ne_x: Option<Vec<Vec<Rational>>>,
    pub ne_y: Option<Vec<Vec<Rational>>>,
    pub a1: Option<bool>,
    pub a2: Option<bool>,
    pub a3: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub name: &'static str,
    pub provenance: &'static str,
    pub matrix: PayoffMatrix,
    pub expected: Expected,
}

struct Raw {
    name: &'static str,
    provenance: &'static str,
    rows: &'static [&'static [&'static str]],
    value: &'static str,
    ne_x: &'static [&'static str],
    ne_y: &'static [&'static str],
    a1: bool,
    a2: bool,
    a3: Option<bool>,
}

const RAW: &[Raw] = &[
    Raw {
        name: "zz_mat",
        provenance: "2x1 zero game; both rows are always tied, so only the tie-breaking rule moves the trajectory",
        rows: &[&["0"], &["0"]],
        value: "0",
        ne_x: &["1,0", "0,1"],
        ne_y: &["1"],
        a1: true,
        a2: false,
        a3: None,
    },
    Raw {
        name: "2by2_basic",
        provenance: "2x2 identity game with a unique equilibrium",
        rows: &[&["1", "0"], &["0", "1"]],
        value: "1/2",
        ne_x: &["1/2,1/2"],
        ne_y: &["1/2,1/2"],
        a1: false,
        a2: true,
        a3: None,
    },
    Raw {
        name: "2by2_mult_ne",
        provenance: "2x2 identity game with the constant column (1/4,1/4) appended; NE_x is a segment",
        rows: &[&["1", "0", "1/4"], &["0", "1", "1/4"]],
        value: "1/4",
        ne_x: &["1/4,3/4", "3/4,1/4"],
        ne_y: &["0,0,1"],
        a1: true,
        a2: true,
        a3: Some(true),
    },
    Raw {
        name: "non_converge_example",
        provenance: "3x3 identity game with the constant column 1/8 in front; NE_x is a triangle",
        rows: &[&["1/8", "1", "0", "0"], &["1/8", "0", "1", "0"], &["1/8", "0", "0", "1"]],
        value: "1/8",
        ne_x: &["3/4,1/8,1/8", "1/8,3/4,1/8", "1/8,1/8,3/4"],
        ne_y: &["1,0,0,0"],
        a1: true,
        a2: true,
        a3: Some(true),
    },
    Raw {
        name: "bd_counter_ex",
        provenance: "3x4 game satisfying A1 and A2 where a boundary face hull can make every coordinate maximal",
        rows: &[
            &["3/10", "0", "2/5", "2/5"],
            &["3/10", "1", "0", "1/2"],
            &["3/10", "1", "1/2", "0"],
        ],
        value: "3/10",
        ne_x: &["1/3,1/3,1/3", "7/10,13/50,1/25", "7/10,1/25,13/50"],
        ne_y: &["1,0,0,0"],
        a1: true,
        a2: true,
        a3: Some(false),
    },
    Raw {
        name: "conj_exp",
        provenance: "3x4 A1/A2 game used for the reduced-game experiment on columns {1,3,4}",
        rows: &[
            &["1/3", "4", "0", "4/9"],
            &["1/3", "0", "1", "0"],
            &["1/3", "0", "0", "5/9"],
        ],
        value: "1/3",
        ne_x: &["1/12,1/3,7/12", "1/12,23/60,8/15", "1/3,1/3,1/3"],
        ne_y: &["1,0,0,0"],
        a1: true,
        a2: true,
        a3: None,
    },
    Raw {
        name: "converging_example",
        provenance: "3x4 game with a segment of equilibria (A2 holds, A1 fails); FP tends to settle",
        rows: &[&["1/8", "1", "0", "0"], &["1/8", "0", "1", "0"], &["0", "0", "0", "1"]],
        value: "1/9",
        ne_x: &["1/9,7/9,1/9", "7/9,1/9,1/9"],
        ne_y: &["8/9,0,0,1/9"],
        a1: false,
        a2: true,
        a3: None,
    },
    Raw {
        name: "without_a2",
        provenance: "3x6 game whose hexagonal NE_x touches the simplex boundary (A1 holds, A2 fails)",
        rows: &[
            &["1/24", "0", "0", "1/8", "0", "1/8"],
            &["1/24", "1", "0", "1/8", "1/8", "0"],
            &["1/24", "0", "1", "0", "1/8", "1/8"],
        ],
        value: "1/24",
        ne_x: &[
            "0,1/3,2/3",
            "0,2/3,1/3",
            "7/24,1/24,2/3",
            "7/24,2/3,1/24",
            "2/3,1/24,7/24",
            "2/3,7/24,1/24",
        ],
        ne_y: &["1,0,0,0,0,0"],
        a1: true,
        a2: false,
        a3: None,
    },
];

fn points(list: &[&str]) -> Vec<Vec<Rational>> {
    let mut v: Vec<Vec<Rational>> = list
        .iter()
        .map(|p| rational::parse_list(p).expect("library literal"))
        .collect();
    v.sort();
    v
}

fn build(raw: &Raw) -> LibraryEntry {
    LibraryEntry {
        name: raw.name,
        provenance: raw.provenance,
        matrix: PayoffMatrix::parse(raw.rows).expect("library matrix"),
        expected: Expected {
            value: Some(rational::parse(raw.value).expect("library literal")),
            ne_x: Some(points(raw.ne_x)),
            ne_y: Some(points(raw.ne_y)),
            a1: Some(raw.a1),
            a2: Some(raw.a2),
            a3: raw.a3,
        },
    }
}

pub fn entries() -> Vec<LibraryEntry> {
    RAW.iter().map(build).collect()
}

pub fn names() -> Vec<&'static str> {
    RAW.iter().map(|r| r.name).collect()
}

pub fn get(name: &str) -> Option<LibraryEntry> {
    RAW.iter().find(|r| r.name == name).map(build)
}

pub fn matrix(name: &str) -> Option<PayoffMatrix> {
    get(name).map(|e| e.matrix)
}
