//! Inputs shared by the benchmarks.

use rigidity_kit::penrose::brace;
use rigidity_kit::{
    generate_patch, BraceStrategy, BracedGraph, PenrosePatch, PentagridParams, Rational, Tile,
};

/// Generic offsets summing to zero.
pub fn offsets() -> [Rational; 5] {
    [
        Rational::new(3, 25),
        Rational::new(-7, 25),
        Rational::new(11, 50),
        Rational::new(1, 10),
        Rational::new(-4, 25),
    ]
}

pub fn params(k: i64) -> PentagridParams {
    let mut p = PentagridParams::uniform(offsets(), -k, k);
    p.perturb = true;
    p
}

pub fn patch(k: i64) -> PenrosePatch {
    generate_patch(&params(k)).expect("generic offsets give a patch")
}

pub fn fat_braced(patch: &PenrosePatch) -> BracedGraph {
    brace(patch, &BraceStrategy::AllTiles(Tile::Fat)).expect("fat rhombi brace")
}
