//! JSON file format: `{"vertices": [[x,y,z],...], "faces": [[i0,i1,...],...],
//! "center": [x,y,z]}`. Coordinates are integers or canonical `"p/q"` strings;
//! vertex indices are 0-based.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::geometry::{parse_rat, Rat, Vec3};
use crate::polyhedron::{ModelError, Polyhedron, WeightedPolyhedron};

/// A rational as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRat(pub Rat);

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(n) = self.0.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = JsonRat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(BigInt::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(BigInt::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRat, E> {
                parse_rat(v).map(JsonRat).map_err(E::custom)
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

pub fn point_to_json(p: &Vec3) -> [JsonRat; 3] {
    [JsonRat(p.x.clone()), JsonRat(p.y.clone()), JsonRat(p.z.clone())]
}

fn point_from_json(p: [JsonRat; 3]) -> Vec3 {
    let [x, y, z] = p;
    Vec3::new(x.0, y.0, z.0)
}

/// On-disk representation. `center` may be omitted for shape-only inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronFile {
    pub vertices: Vec<[JsonRat; 3]>,
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<[JsonRat; 3]>,
}

impl PolyhedronFile {
    pub fn from_polyhedron(p: &Polyhedron, center: Option<&Vec3>) -> Self {
        PolyhedronFile {
            vertices: p.vertices().iter().map(point_to_json).collect(),
            faces: p.faces().to_vec(),
            center: center.map(point_to_json),
        }
    }

    pub fn from_weighted(wp: &WeightedPolyhedron) -> Self {
        Self::from_polyhedron(wp.shape(), Some(wp.center()))
    }

    pub fn parse_str(json: &str) -> Result<Self, ModelError> {
        serde_json::from_str(json).map_err(|e| ModelError::Schema(e.to_string()))
    }

    pub fn center_point(&self) -> Option<Vec3> {
        self.center.clone().map(point_from_json)
    }

    /// Validated polyhedron; faces given clockwise are re-oriented.
    pub fn polyhedron(&self) -> Result<Polyhedron, ModelError> {
        let vertices = self.vertices.iter().cloned().map(point_from_json).collect();
        Polyhedron::new(vertices, self.faces.clone())
    }

    pub fn weighted(&self) -> Result<WeightedPolyhedron, ModelError> {
        let shape = self.polyhedron()?;
        let center = self.center_point().ok_or_else(|| ModelError::Schema("missing field `center`".into()))?;
        WeightedPolyhedron::new(shape, center)
    }
}

/// Parses and validates a weighted polyhedron, including strict interiority
/// of the center.
pub fn parse(json: &str) -> Result<WeightedPolyhedron, ModelError> {
    PolyhedronFile::parse_str(json)?.weighted()
}

/// Parses only the shape; the center, if present, is ignored.
pub fn parse_polyhedron(json: &str) -> Result<Polyhedron, ModelError> {
    PolyhedronFile::parse_str(json)?.polyhedron()
}

/// Compact canonical serialization.
pub fn serialize(wp: &WeightedPolyhedron) -> String {
    serde_json::to_string(&PolyhedronFile::from_weighted(wp)).expect("serializable")
}

pub fn to_value(wp: &WeightedPolyhedron) -> serde_json::Value {
    serde_json::to_value(PolyhedronFile::from_weighted(wp)).expect("serializable")
}
