//! Built-in reference instances, addressable from the command line as
//! `fixtures:<name>`.
//!
//! Tetrahedra are stored with face `i` opposite vertex `i`, so with vertices
//! labeled `A, B, C, D` the face `ABC` has index 3.

use crate::geometry::{parse_rat, Vec3};
use crate::json::PolyhedronFile;
use crate::polyhedron::{ModelError, Polyhedron, WeightedPolyhedron};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub shape: Polyhedron,
    pub center: Vec3,
    /// Alternative centers selectable by name; the default is listed first
    /// when present.
    pub named_centers: Vec<(&'static str, Vec3)>,
}

impl Fixture {
    /// The default weighting. Fails when the stored center is not interior.
    pub fn weighted(&self) -> Result<WeightedPolyhedron, ModelError> {
        WeightedPolyhedron::new(self.shape.clone(), self.center.clone())
    }

    pub fn named_center(&self, name: &str) -> Option<&Vec3> {
        self.named_centers.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, c)| c)
    }

    pub fn with_named_center(&self, name: &str) -> Option<Result<WeightedPolyhedron, ModelError>> {
        self.named_center(name).map(|c| WeightedPolyhedron::new(self.shape.clone(), c.clone()))
    }

    /// Canonical compact JSON of the shape with its default center.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&PolyhedronFile::from_polyhedron(&self.shape, Some(&self.center))).expect("serializable")
    }
}

pub const NAMES: [&str; 7] = [
    "t0",
    "nine_centers",
    "seed585",
    "cycle_case_I",
    "cycle_case_III",
    "regular_tetrahedron",
    "obtuse_path_demo",
];

fn v(x: i64, y: i64, z: i64) -> Vec3 {
    Vec3::from_ints(x, y, z)
}

fn tet(p: [(i64, i64, i64); 4]) -> Polyhedron {
    let [a, b, c, d] = p.map(|(x, y, z)| v(x, y, z));
    Polyhedron::tetrahedron(a, b, c, d).expect("fixture tetrahedron is non-degenerate")
}

fn rat_point(x: &str, y: &str, z: &str) -> Vec3 {
    let r = |s: &str| parse_rat(s).expect("fixture rational");
    Vec3::new(r(x), r(y), r(z))
}

pub fn t0() -> Fixture {
    Fixture {
        name: "t0",
        description: "tetrahedron with the center reported to make it monostable on face ABC",
        shape: tet([(0, 0, 0), (0, 0, 100000), (153600, 44400, 0), (112200, 7800, 6400)]),
        center: v(104200, 4300, 100),
        named_centers: vec![],
    }
}

/// Centers `M_ij` giving `i` stable and `j` unstable equilibria.
pub const NINE_CENTERS: [(&str, (i64, i64, i64)); 9] = [
    ("M22", (15884, 5116, 835)),
    ("M23", (46670, 11911, 3061)),
    ("M24", (28497, 5544, 2041)),
    ("M32", (11400, 7243, 2597)),
    ("M33", (33447, 17389, 3061)),
    ("M34", (23866, 8138, 3339)),
    ("M42", (21845, 14097, 7142)),
    ("M43", (42514, 9100, 6122)),
    ("M44", (24407, 10239, 1391)),
];

pub fn nine_centers() -> Fixture {
    let named_centers: Vec<(&'static str, Vec3)> =
        NINE_CENTERS.iter().map(|&(n, (x, y, z))| (n, v(x, y, z))).collect();
    Fixture {
        name: "nine_centers",
        description: "one tetrahedron with nine centers realizing every (S, U) in {2,3,4}^2",
        shape: tet([(0, 0, 0), (100000, 0, 0), (50000, 41429, 0), (13549, 13544, 11223)]),
        center: named_centers[0].1.clone(),
        named_centers,
    }
}

pub fn seed585() -> Fixture {
    let vertices = vec![v(0, 0, 0), v(10000, 0, 0), v(10000, 2890, 0), v(11216, 1008, 0), v(11216, 968, 280)];
    let faces = vec![vec![3, 1, 0, 2], vec![4, 0, 1], vec![2, 0, 4], vec![4, 1, 3], vec![3, 2, 4]];
    Fixture {
        name: "seed585",
        description: "mono-monostatic polyhedron with face vector (5,8,5)",
        shape: Polyhedron::new_oriented(vertices, faces).expect("seed polyhedron is valid"),
        center: v(10790, 643, 84),
        named_centers: vec![],
    }
}

pub fn cycle_case_i() -> Fixture {
    let shape = tet([(-10, 0, 0), (0, 2, 0), (1, 0, 1), (0, -2, 0)]);
    Fixture {
        name: "cycle_case_I",
        description: "obtuse cycle A-B-C-D-A with signatures [0,1],[1,1],[1,1],[1,1]",
        center: Vec3::centroid(shape.vertices()),
        shape,
        named_centers: vec![],
    }
}

pub fn cycle_case_iii() -> Fixture {
    let shape = tet([(-10, 0, 0), (2, 0, 0), (3, 2, 0), (0, 4, 1)]);
    Fixture {
        name: "cycle_case_III",
        description: "obtuse cycle A-B-C-D-A where D has signature [2,1]",
        center: Vec3::centroid(shape.vertices()),
        shape,
        named_centers: vec![],
    }
}

pub fn regular_tetrahedron() -> Fixture {
    Fixture {
        name: "regular_tetrahedron",
        description: "regular tetrahedron centered at the origin",
        shape: tet([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]),
        center: Vec3::zero(),
        named_centers: vec![],
    }
}

pub fn obtuse_path_demo() -> Fixture {
    Fixture {
        name: "obtuse_path_demo",
        description: "tetrahedron with obtuse path A-B-C-D, centered in its loading region for face ABC",
        shape: tet([(0, 0, 0), (5, 6, 3), (6, 4, 1), (6, 5, 11)]),
        center: rat_point("114239991197/21936745124", "59664752163/10968372562", "27098267501/10968372562"),
        named_centers: vec![],
    }
}

pub fn get(name: &str) -> Option<Fixture> {
    match name {
        "t0" => Some(t0()),
        "nine_centers" => Some(nine_centers()),
        "seed585" => Some(seed585()),
        "cycle_case_I" => Some(cycle_case_i()),
        "cycle_case_III" => Some(cycle_case_iii()),
        "regular_tetrahedron" => Some(regular_tetrahedron()),
        "obtuse_path_demo" => Some(obtuse_path_demo()),
        _ => None,
    }
}

pub fn all() -> Vec<Fixture> {
    NAMES.iter().map(|n| get(n).expect("listed fixture")).collect()
}
