//! Exact intersection theory on the rational surfaces that carry the covers:
//! the projective plane, Hirzebruch surfaces `F_e`, and blow-ups of `F_e` at
//! finitely many labelled points.
//!
//! Picard bases are fixed: `(H)` on the plane, `(Δ0, F)` on `F_e` where `Δ0`
//! is the section of self-intersection `-e` and `F` the ruling, and
//! `(Δ0, F, E1, .., Ek)` on a blow-up, where `Δ0` and `F` stand for their
//! pullbacks. A class is the integer vector of its coefficients in that basis.
//!
//! Points are combinatorial labels. Whether they are in general position is an
//! assumption recorded on the label, never derived from coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which branch component passes through a marked point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BranchIncidence {
    /// Branch index in `1..=3`.
    pub branch: u8,
    /// Label of the irreducible component of that branch through the point.
    pub component: String,
}

/// A labelled point of the base surface. Every listed component passes
/// through it with multiplicity one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointLabel {
    pub id: String,
    pub through: Vec<BranchIncidence>,
    /// General position is assumed, not checked.
    pub general: bool,
}

impl PointLabel {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            through: Vec::new(),
            general: true,
        }
    }

    /// Adds `component` of branch `branch` to the curves through this point.
    pub fn on(mut self, branch: u8, component: impl Into<String>) -> Self {
        self.through.push(BranchIncidence {
            branch,
            component: component.into(),
        });
        self.through.sort();
        self
    }

    pub fn component_on(&self, branch: u8) -> Option<&str> {
        self.through
            .iter()
            .find(|inc| inc.branch == branch)
            .map(|inc| inc.component.as_str())
    }

    pub fn passes_through(&self, branch: u8) -> bool {
        self.component_on(branch).is_some()
    }

    /// True when all three branch divisors pass through the point.
    pub fn is_triple(&self) -> bool {
        (1..=3).all(|b| self.passes_through(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Ambient {
    ProjectivePlane,
    Hirzebruch {
        e: u32,
    },
    /// `F_e` blown up at `points`, in order; `points[i]` has exceptional curve `E_{i+1}`.
    BlownUp {
        e: u32,
        points: Vec<PointLabel>,
    },
}

/// Lightweight identity of a surface, carried by every [`DivClass`] so that
/// classes from different surfaces are never paired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKey {
    Plane,
    Hirzebruch(u32),
    BlownUp(u32, usize),
}

impl fmt::Display for SurfaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKey::Plane => write!(f, "P^2"),
            SurfaceKey::Hirzebruch(e) => write!(f, "F_{e}"),
            SurfaceKey::BlownUp(e, k) => write!(f, "F_{e} blown up at {k} point(s)"),
        }
    }
}

impl SurfaceKey {
    pub fn rank(self) -> usize {
        match self {
            SurfaceKey::Plane => 1,
            SurfaceKey::Hirzebruch(_) => 2,
            SurfaceKey::BlownUp(_, k) => 2 + k,
        }
    }
}

impl Ambient {
    pub fn key(&self) -> SurfaceKey {
        match self {
            Ambient::ProjectivePlane => SurfaceKey::Plane,
            Ambient::Hirzebruch { e } => SurfaceKey::Hirzebruch(*e),
            Ambient::BlownUp { e, points } => SurfaceKey::BlownUp(*e, points.len()),
        }
    }

    pub fn rank(&self) -> usize {
        self.key().rank()
    }

    /// Twist of the underlying Hirzebruch surface; `None` on the plane.
    pub fn twist(&self) -> Option<u32> {
        match self {
            Ambient::ProjectivePlane => None,
            Ambient::Hirzebruch { e } | Ambient::BlownUp { e, .. } => Some(*e),
        }
    }

    pub fn blown_up_points(&self) -> &[PointLabel] {
        match self {
            Ambient::BlownUp { points, .. } => points,
            _ => &[],
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        match self {
            Ambient::ProjectivePlane => vec!["H".into()],
            Ambient::Hirzebruch { .. } => vec!["Δ0".into(), "F".into()],
            Ambient::BlownUp { points, .. } => {
                let mut labels = vec!["Δ0".to_string(), "F".to_string()];
                labels.extend((1..=points.len()).map(|i| format!("E{i}")));
                labels
            }
        }
    }

    /// Builds a class from raw coordinates, checking the rank.
    pub fn class(&self, coords: Vec<i64>) -> Result<DivClass> {
        DivClass::new(self.key(), coords)
    }

    pub fn zero(&self) -> DivClass {
        DivClass {
            key: self.key(),
            coords: vec![0; self.rank()],
        }
    }

    /// `d·H` on the plane.
    ///
    /// # Panics
    /// If the ambient is not the plane.
    pub fn line(&self, d: i64) -> DivClass {
        assert_eq!(self.key(), SurfaceKey::Plane, "H only exists on the plane");
        DivClass {
            key: SurfaceKey::Plane,
            coords: vec![d],
        }
    }

    /// `aΔ0 + bF` (pulled back on blow-ups).
    ///
    /// # Panics
    /// If the ambient is the plane.
    pub fn ruled(&self, a: i64, b: i64) -> DivClass {
        assert_ne!(
            self.key(),
            SurfaceKey::Plane,
            "Δ0 and F do not exist on the plane"
        );
        let mut coords = vec![0; self.rank()];
        coords[0] = a;
        coords[1] = b;
        DivClass {
            key: self.key(),
            coords,
        }
    }

    /// Exceptional curve `E_i` (1-based).
    ///
    /// # Panics
    /// If `i` is not the index of a blown-up point.
    pub fn exceptional(&self, i: usize) -> DivClass {
        let k = self.blown_up_points().len();
        assert!(
            i >= 1 && i <= k,
            "E{i} does not exist ({k} points blown up)"
        );
        let mut coords = vec![0; self.rank()];
        coords[1 + i] = 1;
        DivClass {
            key: self.key(),
            coords,
        }
    }

    /// Blows up one more point. Classes pull back by appending a zero coordinate.
    pub fn blow_up(&self, point: PointLabel) -> Result<Ambient> {
        match self {
            Ambient::ProjectivePlane => Err(Error::ResolutionOnPlane),
            Ambient::Hirzebruch { e } => Ok(Ambient::BlownUp {
                e: *e,
                points: vec![point],
            }),
            Ambient::BlownUp { e, points } => {
                let mut points = points.clone();
                points.push(point);
                Ok(Ambient::BlownUp { e: *e, points })
            }
        }
    }

    /// The canonical class `K`.
    pub fn canonical(&self) -> DivClass {
        match self {
            Ambient::ProjectivePlane => self.line(-3),
            Ambient::Hirzebruch { e } => self.ruled(-2, -(*e as i64) - 2),
            Ambient::BlownUp { e, points } => {
                let mut coords = vec![-2, -(*e as i64) - 2];
                coords.extend(std::iter::repeat_n(1, points.len()));
                DivClass {
                    key: self.key(),
                    coords,
                }
            }
        }
    }

    /// Holomorphic Euler characteristic of `O(d)` by Riemann–Roch,
    /// `1 + d·(d - K)/2`, using `χ(O_Y) = 1` for a rational surface.
    pub fn euler_characteristic(&self, d: &DivClass) -> Result<i64> {
        let k = self.canonical();
        let twice = d.dot(&(d - &k))?;
        debug_assert_eq!(twice % 2, 0, "d(d-K) is even on a smooth surface");
        Ok(1 + twice / 2)
    }

    /// Dimension of `H^0(O(d))`.
    ///
    /// Exact on the plane and on `F_e`. On a blow-up only classes
    /// `q*A - Σ m_i E_i` with `m_i ∈ {0, 1}` through points flagged general are
    /// accepted, and the value `max(0, h0(A) - #{m_i = 1})` is reported as an
    /// estimate whenever some `m_i = 1`.
    pub fn h0(&self, d: &DivClass) -> Result<SectionCount> {
        self.check(d)?;
        match self {
            Ambient::ProjectivePlane => Ok(SectionCount::exact(plane_h0(d.coords[0]))),
            Ambient::Hirzebruch { e } => Ok(SectionCount::exact(hirzebruch_h0(
                *e,
                d.coords[0],
                d.coords[1],
            ))),
            Ambient::BlownUp { e, points } => {
                let mut imposed = 0;
                for (i, (&c, point)) in d.coords[2..].iter().zip(points).enumerate() {
                    match c {
                        0 => {}
                        -1 if point.general => imposed += 1,
                        -1 => {
                            return Err(Error::UnsupportedClass(format!(
                                "point {} (E{}) is not flagged general",
                                point.id,
                                i + 1
                            )))
                        }
                        _ => {
                            return Err(Error::UnsupportedClass(format!(
                                "coefficient {c} of E{} (only 0 and -1 are supported)",
                                i + 1
                            )))
                        }
                    }
                }
                let base = hirzebruch_h0(*e, d.coords[0], d.coords[1]);
                Ok(SectionCount {
                    dim: (base - imposed).max(0),
                    estimate: imposed > 0,
                })
            }
        }
    }

    /// Three-valued positivity verdict.
    ///
    /// Exact on the plane and on `F_e`. On blow-ups of `F_0` a sufficient
    /// ampleness test is run against the test curves `E_i`, `q*F - E_i`,
    /// `q*Δ0 - E_i`, `q*F` and `q*Δ0`; it never upgrades a class pairing to
    /// zero with one of them.
    pub fn positivity(&self, d: &DivClass) -> Result<Positivity> {
        self.check(d)?;
        Ok(match self {
            Ambient::ProjectivePlane => match d.coords[0] {
                x if x > 0 => Positivity::Ample,
                0 => Positivity::NefOnly,
                _ => Positivity::NotNef,
            },
            Ambient::Hirzebruch { e } => {
                let (a, b, e) = (d.coords[0], d.coords[1], *e as i64);
                if a > 0 && b > a * e {
                    Positivity::Ample
                } else if a >= 0 && b >= a * e {
                    Positivity::NefOnly
                } else {
                    Positivity::NotNef
                }
            }
            Ambient::BlownUp { e, .. } => blown_up_positivity(*e as i64, d)?,
        })
    }

    fn check(&self, d: &DivClass) -> Result<()> {
        if d.key != self.key() {
            return Err(Error::AmbientMismatch {
                left: self.key(),
                right: d.key,
            });
        }
        Ok(())
    }
}

fn plane_h0(d: i64) -> i64 {
    if d < 0 {
        0
    } else {
        (d + 1) * (d + 2) / 2
    }
}

fn hirzebruch_h0(e: u32, a: i64, b: i64) -> i64 {
    if a < 0 {
        return 0;
    }
    let e = e as i64;
    (0..=a).map(|j| (b - j * e + 1).max(0)).sum()
}

fn blown_up_positivity(e: i64, d: &DivClass) -> Result<Positivity> {
    let (a, b) = (d.coords[0], d.coords[1]);
    // d = q*(aΔ0 + bF) - Σ c_i E_i
    let c: Vec<i64> = d.coords[2..].iter().map(|x| -x).collect();

    // d·q*Δ0 = b - ae, d·q*F = a
    let mut pairings = vec![a, b - a * e];
    for &ci in &c {
        pairings.push(ci);
        pairings.push(a - ci);
        if e == 0 {
            pairings.push(b - ci);
        }
    }
    if pairings.iter().any(|&p| p < 0) {
        return Ok(Positivity::NotNef);
    }
    if e != 0 {
        return Ok(Positivity::Unknown);
    }
    let square = d.dot(d)?;
    let total: i64 = c.iter().sum();
    if pairings.iter().all(|&p| p > 0) && square > 0 && total < a + b {
        Ok(Positivity::Ample)
    } else if pairings.contains(&0) {
        Ok(Positivity::NefOnly)
    } else {
        Ok(Positivity::Unknown)
    }
}

/// Result of [`Ambient::h0`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionCount {
    pub dim: i64,
    /// Set when the value relies on the general-position estimate on a blow-up.
    pub estimate: bool,
}

impl SectionCount {
    fn exact(dim: i64) -> Self {
        Self {
            dim,
            estimate: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Positivity {
    Ample,
    NefOnly,
    Unknown,
    NotNef,
}

impl fmt::Display for Positivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Positivity::Ample => "Ample",
            Positivity::NefOnly => "NefOnly",
            Positivity::Unknown => "Unknown",
            Positivity::NotNef => "NotNef",
        };
        f.write_str(s)
    }
}

/// A divisor class: integer coordinates in the Picard basis of its surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass {
    key: SurfaceKey,
    coords: Vec<i64>,
}

impl Serialize for DivClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl DivClass {
    pub fn new(key: SurfaceKey, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != key.rank() {
            return Err(Error::RankMismatch {
                expected: key.rank(),
                found: coords.len(),
            });
        }
        Ok(Self { key, coords })
    }

    pub fn key(&self) -> SurfaceKey {
        self.key
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Value of the intersection form.
    pub fn dot(&self, other: &DivClass) -> Result<i64> {
        if self.key != other.key {
            return Err(Error::AmbientMismatch {
                left: self.key,
                right: other.key,
            });
        }
        let (x, y) = (&self.coords, &other.coords);
        Ok(match self.key {
            SurfaceKey::Plane => x[0] * y[0],
            SurfaceKey::Hirzebruch(e) | SurfaceKey::BlownUp(e, _) => {
                let ruled = -(e as i64) * x[0] * y[0] + x[0] * y[1] + x[1] * y[0];
                let exceptional: i64 = x[2..].iter().zip(&y[2..]).map(|(a, b)| a * b).sum();
                ruled - exceptional
            }
        })
    }

    /// Self-intersection.
    pub fn square(&self) -> i64 {
        self.dot(self)
            .expect("a class is always on its own surface")
    }

    /// Exact half, if every coordinate is even.
    pub fn halve(&self) -> Option<DivClass> {
        if self.coords.iter().all(|c| c % 2 == 0) {
            Some(DivClass {
                key: self.key,
                coords: self.coords.iter().map(|c| c / 2).collect(),
            })
        } else {
            None
        }
    }

    /// Pullback to `target`, a blow-up of this class's surface at extra points.
    pub fn pullback(&self, target: &Ambient) -> Result<DivClass> {
        let key = target.key();
        let compatible = match (self.key, key) {
            (SurfaceKey::Hirzebruch(e), SurfaceKey::BlownUp(f, _)) => e == f,
            (SurfaceKey::BlownUp(e, k), SurfaceKey::BlownUp(f, l)) => e == f && k <= l,
            (a, b) => a == b,
        };
        if !compatible {
            return Err(Error::AmbientMismatch {
                left: self.key,
                right: key,
            });
        }
        let mut coords = self.coords.clone();
        coords.resize(key.rank(), 0);
        Ok(DivClass { key, coords })
    }

    /// Pushforward coefficients `(a, b)` of `aΔ0 + bF`; `None` on the plane.
    pub fn ruled_part(&self) -> Option<(i64, i64)> {
        match self.key {
            SurfaceKey::Plane => None,
            _ => Some((self.coords[0], self.coords[1])),
        }
    }

    /// Coefficients of the exceptional curves.
    pub fn exceptional_part(&self) -> &[i64] {
        match self.key {
            SurfaceKey::BlownUp(..) => &self.coords[2..],
            _ => &[],
        }
    }

    fn zip_with(&self, other: &DivClass, f: impl Fn(i64, i64) -> i64) -> DivClass {
        assert_eq!(
            self.key, other.key,
            "class arithmetic across different surfaces"
        );
        DivClass {
            key: self.key,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = match self.key {
            SurfaceKey::Plane => vec!["H".into()],
            SurfaceKey::Hirzebruch(_) => vec!["Δ0".into(), "F".into()],
            SurfaceKey::BlownUp(_, k) => {
                let mut v = vec!["Δ0".to_string(), "F".to_string()];
                v.extend((1..=k).map(|i| format!("E{i}")));
                v
            }
        };
        let mut first = true;
        for (c, label) in self.coords.iter().zip(&labels) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if abs == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{abs}{label}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Add for DivClass {
    type Output = DivClass;
    fn add(self, rhs: DivClass) -> DivClass {
        &self + &rhs
    }
}

impl Sub for DivClass {
    type Output = DivClass;
    fn sub(self, rhs: DivClass) -> DivClass {
        &self - &rhs
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass {
            key: self.key,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&DivClass> for i64 {
    type Output = DivClass;
    fn mul(self, rhs: &DivClass) -> DivClass {
        DivClass {
            key: rhs.key,
            coords: rhs.coords.iter().map(|c| self * c).collect(),
        }
    }
}

/// Intersection number of two classes on the same surface.
pub fn intersect(a: &DivClass, b: &DivClass) -> Result<i64> {
    a.dot(b)
}
