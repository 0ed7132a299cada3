#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use facering::face_ring::{CharacteristicFunction, LambdaDocument};
use facering::input::load_poset;
use facering::{GroundRing, SimplicialPoset};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{name}.json"))
}

pub fn load(name: &str) -> Arc<SimplicialPoset> {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    Arc::new(load_poset(&text).unwrap().poset)
}

pub fn antipodal_lambda(s: &SimplicialPoset, ring: GroundRing) -> CharacteristicFunction {
    let text = std::fs::read_to_string(data_path("octahedron_antipodal_lambda")).unwrap();
    let doc: LambdaDocument = serde_json::from_str(&text).unwrap();
    CharacteristicFunction::from_document(&doc, s, ring).unwrap()
}

/// Valid inputs, in the order reports are printed.
pub const CORPUS: [&str; 8] = [
    "boundary_tetrahedron",
    "octahedron",
    "boundary_4simplex",
    "circle_poset",
    "torus7",
    "rp2_6",
    "bowtie",
    "point",
];
