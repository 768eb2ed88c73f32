//! Exact rational scalars, 3-vectors and planes.
//!
//! Every classification in this crate reduces to the sign of a dot product
//! or a determinant evaluated over [`Rat`], so the results are bit-exact and
//! independent of evaluation order. Vectors are never normalized.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar in canonical form (reduced, positive denominator).
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("line is parallel to the plane")]
    ParallelLine,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

/// Integer-valued rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with `q != 0` into a canonical rational.
pub fn parse_rat(s: &str) -> Result<Rat, GeometryError> {
    let bad = || GeometryError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// Classification of an angle by the sign of its cosine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum AngleClass {
    Acute,
    Right,
    Obtuse,
}

impl AngleClass {
    /// Maps the sign of a cosine-like quantity to an angle class.
    pub fn from_cosine_sign(s: Sign) -> AngleClass {
        match s {
            Sign::Positive => AngleClass::Acute,
            Sign::Zero => AngleClass::Right,
            Sign::Negative => AngleClass::Obtuse,
        }
    }

    pub fn is_obtuse(self) -> bool {
        self == AngleClass::Obtuse
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl Vec3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(int(x), int(y), int(z))
    }

    pub fn zero() -> Self {
        Vec3::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `true` when every coordinate has denominator one.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer() && self.z.is_integer()
    }

    pub fn dot(&self, o: &Vec3) -> Rat {
        if self.is_integral() && o.is_integral() {
            return Rat::from_integer(self.to_ivec_unchecked().dot(&o.to_ivec_unchecked()));
        }
        let (ls, lo) = (denominator_lcm([self]), denominator_lcm([o]));
        let num = self.to_ivec(&ls).dot(&o.to_ivec(&lo));
        Rat::new(num, ls * lo)
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        if self.is_integral() && o.is_integral() {
            return self.to_ivec_unchecked().cross(&o.to_ivec_unchecked()).to_vec3();
        }
        let (ls, lo) = (denominator_lcm([self]), denominator_lcm([o]));
        let c = self.to_ivec(&ls).cross(&o.to_ivec(&lo));
        let d = ls * lo;
        let [x, y, z] = c.0.map(|n| Rat::new(n, d.clone()));
        Vec3::new(x, y, z)
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rat) -> Vec3 {
        Vec3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Vec3, t: &Rat) -> Vec3 {
        self + &(other - self).scale(t)
    }

    pub fn coords(&self) -> [&Rat; 3] {
        [&self.x, &self.y, &self.z]
    }

    fn to_ivec_unchecked(&self) -> IVec3 {
        IVec3([self.x.numer().clone(), self.y.numer().clone(), self.z.numer().clone()])
    }

    /// `scale * self` as integers. `scale` must be a positive common multiple
    /// of the denominators.
    pub fn to_ivec(&self, scale: &BigInt) -> IVec3 {
        let c = |r: &Rat| {
            if r.denom().is_one() {
                r.numer() * scale
            } else {
                r.numer() * (scale / r.denom())
            }
        };
        IVec3([c(&self.x), c(&self.y), c(&self.z)])
    }

    /// A positive integer multiple of `self`, for sign tests that are
    /// homogeneous in this vector.
    pub fn direction(&self) -> IVec3 {
        self.to_ivec(&denominator_lcm([self]))
    }

    /// Arithmetic mean of a non-empty point set.
    pub fn centroid<'a, I: IntoIterator<Item = &'a Vec3>>(points: I) -> Vec3 {
        let mut sum = Vec3::zero();
        let mut n = 0i64;
        for p in points {
            sum = &sum + p;
            n += 1;
        }
        assert!(n > 0, "centroid of an empty point set");
        sum.scale(&frac(1, n))
    }

    /// Lossy conversion for display and rendering only.
    pub fn to_f64(&self) -> [f64; 3] {
        use num_traits::ToPrimitive;
        [
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
            self.z.to_f64().unwrap_or(f64::NAN),
        ]
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, o: &Vec3) -> Vec3 {
        if self.is_integral() && o.is_integral() {
            return (&self.to_ivec_unchecked() + &o.to_ivec_unchecked()).to_vec3();
        }
        Vec3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, o: &Vec3) -> Vec3 {
        if self.is_integral() && o.is_integral() {
            return (&self.to_ivec_unchecked() - &o.to_ivec_unchecked()).to_vec3();
        }
        Vec3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl Mul<&Rat> for &Vec3 {
    type Output = Vec3;
    fn mul(self, k: &Rat) -> Vec3 {
        self.scale(k)
    }
}

/// Least common multiple of the coordinate denominators, always positive.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Vec3>>(points: I) -> BigInt {
    let mut l = BigInt::one();
    for p in points {
        for c in p.coords() {
            if !c.denom().is_one() {
                l = l.lcm(c.denom());
            }
        }
    }
    l
}

/// Integer 3-vector. Predicates clear denominators with a positive scale,
/// which leaves every sign unchanged, and then avoid rational reduction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IVec3(pub [BigInt; 3]);

impl IVec3 {
    pub fn dot(&self, o: &IVec3) -> BigInt {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        a * x + b * y + c * z
    }

    pub fn cross(&self, o: &IVec3) -> IVec3 {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        IVec3([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    pub fn norm_sq(&self) -> BigInt {
        self.dot(self)
    }

    pub fn scale(&self, k: &BigInt) -> IVec3 {
        IVec3(self.0.clone().map(|c| c * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The same direction with coprime coordinates; zero stays zero.
    pub fn primitive(&self) -> IVec3 {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IVec3(self.0.clone().map(|c| c / &g))
    }

    pub fn to_vec3(&self) -> Vec3 {
        let [x, y, z] = self.0.clone().map(Rat::from_integer);
        Vec3::new(x, y, z)
    }
}

impl Add for &IVec3 {
    type Output = IVec3;
    fn add(self, o: &IVec3) -> IVec3 {
        IVec3(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &IVec3 {
    type Output = IVec3;
    fn sub(self, o: &IVec3) -> IVec3 {
        IVec3(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

/// The point `x / w` with integer `x` and `w > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPoint {
    pub x: IVec3,
    pub w: BigInt,
}

impl HPoint {
    pub fn new(p: &Vec3) -> Self {
        let w = denominator_lcm([p]);
        HPoint { x: p.to_ivec(&w), w }
    }

    /// A positive multiple of `self - o`.
    pub fn minus(&self, o: &HPoint) -> IVec3 {
        &self.x.scale(&o.w) - &o.x.scale(&self.w)
    }
}

/// Sign of an integer.
pub fn int_sign(n: &BigInt) -> Sign {
    if n.is_zero() {
        Sign::Zero
    } else if n.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// The plane `normal · x = offset`. The normal is never normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    pub normal: Vec3,
    pub offset: Rat,
}

impl Plane {
    pub fn new(normal: Vec3, offset: Rat) -> Result<Self, GeometryError> {
        if normal.is_zero() {
            return Err(GeometryError::DegenerateInput("plane normal is zero"));
        }
        Ok(Plane { normal, offset })
    }

    /// Plane through `point` with the given normal.
    pub fn through(point: &Vec3, normal: Vec3) -> Result<Self, GeometryError> {
        let offset = normal.dot(point);
        Plane::new(normal, offset)
    }

    /// Plane through three points, normal `(b - a) × (c - a)`.
    pub fn from_points(a: &Vec3, b: &Vec3, c: &Vec3) -> Result<Self, GeometryError> {
        let n = (b - a).cross(&(c - a));
        if n.is_zero() {
            return Err(GeometryError::DegenerateInput("collinear points"));
        }
        Plane::through(a, n)
    }

    /// Plane containing the line `a b` and perpendicular to the plane with
    /// normal `to_normal`.
    pub fn containing_line_perpendicular_to(
        a: &Vec3,
        b: &Vec3,
        to_normal: &Vec3,
    ) -> Result<Self, GeometryError> {
        let n = to_normal.cross(&(b - a));
        if n.is_zero() {
            return Err(GeometryError::DegenerateInput("line is parallel to the normal"));
        }
        Plane::through(a, n)
    }

    /// `normal · x - offset`; positive on the side the normal points to.
    pub fn eval(&self, x: &Vec3) -> Rat {
        self.normal.dot(x) - &self.offset
    }

    pub fn side(&self, x: &Vec3) -> Sign {
        // Scale the plane and the point separately to integers.
        let lp = denominator_lcm([&self.normal]).lcm(self.offset.denom());
        let lx = denominator_lcm([x]);
        let offset = self.offset.numer() * (&lp / self.offset.denom());
        int_sign(&(self.normal.to_ivec(&lp).dot(&x.to_ivec(&lx)) - offset * lx))
    }

    pub fn flipped(&self) -> Plane {
        Plane { normal: -&self.normal, offset: -&self.offset }
    }
}

/// Classifies the angle at `apex` between the rays towards `p` and `q`.
pub fn angle_sign(apex: &Vec3, p: &Vec3, q: &Vec3) -> Result<AngleClass, GeometryError> {
    if p == apex || q == apex {
        return Err(GeometryError::DegenerateInput("angle ray of zero length"));
    }
    let d = (p - apex).dot(&(q - apex));
    Ok(AngleClass::from_cosine_sign(Sign::of(&d)))
}

/// Intersection of the line through `a`, `b` with `plane`: returns the point
/// `a + t (b - a)` together with `t`.
pub fn intersect_line_plane(a: &Vec3, b: &Vec3, plane: &Plane) -> Result<(Vec3, Rat), GeometryError> {
    if a == b {
        return Err(GeometryError::DegenerateInput("line through coincident points"));
    }
    let dir = b - a;
    let denom = plane.normal.dot(&dir);
    if denom.is_zero() {
        return Err(GeometryError::ParallelLine);
    }
    let t = (&plane.offset - plane.normal.dot(a)) / denom;
    Ok((a.lerp(b, &t), t))
}

/// Foot of the perpendicular from `o` onto `plane`.
pub fn project_point_to_plane(o: &Vec3, plane: &Plane) -> Vec3 {
    let t = (&plane.offset - plane.normal.dot(o)) / plane.normal.norm_sq();
    o + &plane.normal.scale(&t)
}

/// Foot of the perpendicular from `o` onto the line `a b`, as the point and
/// its parameter `t` with `foot = a + t (b - a)`.
pub fn project_point_to_line(o: &Vec3, a: &Vec3, b: &Vec3) -> Result<(Vec3, Rat), GeometryError> {
    if a == b {
        return Err(GeometryError::DegenerateInput("line through coincident points"));
    }
    let dir = b - a;
    let t = (o - a).dot(&dir) / dir.norm_sq();
    Ok((a.lerp(b, &t), t))
}

/// Six times the signed volume of the tetrahedron `a b c d`.
pub fn orient3d(a: &Vec3, b: &Vec3, c: &Vec3, d: &Vec3) -> Rat {
    (b - a).cross(&(c - a)).dot(&(d - a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::from_ints(x, y, z)
    }

    #[test]
    fn angle_sign_examples() {
        let o = v(0, 0, 0);
        assert_eq!(angle_sign(&o, &v(1, 0, 0), &v(0, 1, 0)), Ok(AngleClass::Right));
        assert_eq!(angle_sign(&o, &v(1, 0, 0), &v(1, 1, 0)), Ok(AngleClass::Acute));
        assert_eq!(angle_sign(&o, &v(1, 0, 0), &v(-1, 1, 0)), Ok(AngleClass::Obtuse));
        assert!(matches!(angle_sign(&o, &o, &v(1, 0, 0)), Err(GeometryError::DegenerateInput(_))));
    }

    #[test]
    fn line_plane_examples() {
        let z1 = Plane::new(v(0, 0, 1), int(1)).unwrap();
        let (p, t) = intersect_line_plane(&v(0, 0, 0), &v(0, 0, 2), &z1).unwrap();
        assert_eq!(p, v(0, 0, 1));
        assert_eq!(t, frac(1, 2));
        assert_eq!(intersect_line_plane(&v(0, 0, 1), &v(1, 0, 1), &z1), Err(GeometryError::ParallelLine));
    }

    #[test]
    fn projection_examples() {
        let z0 = Plane::new(v(0, 0, 1), int(0)).unwrap();
        assert_eq!(project_point_to_plane(&v(3, 4, 5), &z0), v(3, 4, 0));
        let (foot, t) = project_point_to_line(&v(1, 1, 0), &v(0, 0, 0), &v(2, 0, 0)).unwrap();
        assert_eq!(foot, v(1, 0, 0));
        assert_eq!(t, frac(1, 2));
    }

    #[test]
    fn zero_normal_rejected() {
        assert!(Plane::new(Vec3::zero(), int(3)).is_err());
        assert!(Plane::from_points(&v(0, 0, 0), &v(1, 1, 1), &v(2, 2, 2)).is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rat("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat("3/-6").unwrap(), frac(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(frac(10, 4).to_string(), "5/2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn pt() -> impl Strategy<Value = Vec3> {
            (-50i64..50, -50i64..50, -50i64..50).prop_map(|(x, y, z)| v(x, y, z))
        }

        proptest! {
            #[test]
            fn plane_projection_lies_on_plane(o in pt(), a in pt(), b in pt(), c in pt()) {
                if let Ok(plane) = Plane::from_points(&a, &b, &c) {
                    let foot = project_point_to_plane(&o, &plane);
                    prop_assert_eq!(plane.normal.dot(&foot), plane.offset.clone());
                    // o - foot is parallel to the normal
                    prop_assert!((&o - &foot).cross(&plane.normal).is_zero());
                }
            }

            #[test]
            fn line_projection_is_orthogonal(o in pt(), a in pt(), b in pt()) {
                prop_assume!(a != b);
                let (foot, t) = project_point_to_line(&o, &a, &b).unwrap();
                prop_assert!((&o - &foot).dot(&(&b - &a)).is_zero());
                prop_assert_eq!(foot, a.lerp(&b, &t));
            }

            #[test]
            fn angle_sign_symmetric_and_scale_invariant(apex in pt(), p in pt(), q in pt(), k in 1i64..20, d in 1i64..20) {
                prop_assume!(p != apex && q != apex);
                let s = angle_sign(&apex, &p, &q).unwrap();
                prop_assert_eq!(s, angle_sign(&apex, &q, &p).unwrap());
                let scaled = &apex + &(&p - &apex).scale(&frac(k, d));
                prop_assert_eq!(s, angle_sign(&apex, &scaled, &q).unwrap());
            }
        }
    }
}
