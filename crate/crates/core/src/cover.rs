//! Building data of `Z2^2`-covers of rational surfaces.
//!
//! A cover is determined by three effective branch divisors `D1, D2, D3` and
//! three line bundles with `2L1 = D2 + D3`, `2L2 = D1 + D3` and
//! `L3 = L1 + L2 - D3`. Everything here is class-level bookkeeping: the
//! invariants of the cover, the singularities forced by the incidence of the
//! branch components, and the blow-up that resolves an ordinary triple point.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Ambient, DivClass, PointLabel};

/// `χ(O_Y)` of every base surface used here.
pub const BASE_CHI: i64 = 1;
/// `p_g(Y)` of every base surface used here.
pub const BASE_PG: i64 = 0;

/// `copies` distinct members of `|class|`, all labelled `label`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub label: String,
    pub class: DivClass,
    pub copies: u32,
}

impl Component {
    pub fn new(label: impl Into<String>, class: DivClass, copies: u32) -> Self {
        Self {
            label: label.into(),
            class,
            copies,
        }
    }

    pub fn single(label: impl Into<String>, class: DivClass) -> Self {
        Self::new(label, class, 1)
    }

    /// Whether a general choice of this component is a smooth curve (a
    /// disjoint union of smooth curves when `copies > 1`).
    ///
    /// Recorded as satisfied when the class is base point free on `F_e`, is the
    /// negative section itself, or (for several copies) has self-intersection
    /// zero. On a blow-up the pushed-down class is judged and the curve may
    /// pass simply through blown-up points.
    pub fn general_member_smooth(&self, ambient: &Ambient) -> bool {
        if self.copies == 0 || self.class.is_zero() {
            return false;
        }
        if self.copies > 1 && self.class.square() != 0 {
            return false;
        }
        if self
            .class
            .exceptional_part()
            .iter()
            .any(|&c| c != 0 && c != -1)
        {
            return false;
        }
        match (ambient.twist(), self.class.ruled_part()) {
            (None, None) => self.class.coords()[0] >= 1,
            (Some(e), Some((a, b))) => {
                let e = e as i64;
                let base_point_free = a >= 0 && b >= a * e;
                let negative_section = (a, b) == (1, 0) && self.copies == 1;
                base_point_free || negative_section
            }
            _ => false,
        }
    }
}

/// One branch divisor `D_i` with its named irreducible pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub class: DivClass,
    pub components: Vec<Component>,
}

impl Branch {
    pub fn new(ambient: &Ambient, components: Vec<Component>) -> Result<Self> {
        let mut class = ambient.zero();
        for c in &components {
            if c.class.key() != ambient.key() {
                return Err(Error::AmbientMismatch {
                    left: ambient.key(),
                    right: c.class.key(),
                });
            }
            class = &class + &(c.copies as i64 * &c.class);
        }
        Ok(Self { class, components })
    }

    pub fn empty(ambient: &Ambient) -> Self {
        Self {
            class: ambient.zero(),
            components: Vec::new(),
        }
    }

    pub fn component(&self, label: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.label == label)
    }
}

/// Whether a non-reduced branch locus is acceptable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    /// Reduced branch locus, as required for a normal cover.
    Standard,
    /// Components may repeat across branches (non-normal degenerations).
    Degeneration,
}

/// Derives `(L1, L2, L3)` from the branch classes.
pub fn derive_line_bundles(d: [&DivClass; 3]) -> Result<[DivClass; 3]> {
    let l1 = (d[1] + d[2]).halve().ok_or(Error::Parity("D2 + D3"))?;
    let l2 = (d[0] + d[2]).halve().ok_or(Error::Parity("D1 + D3"))?;
    let l3 = &(&l1 + &l2) - d[2];
    let bundles = [l1, l2, l3];
    if let Some(i) = bundles.iter().position(DivClass::is_zero) {
        return Err(Error::TrivialLineBundle(i + 1));
    }
    Ok(bundles)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "BuildingDataDoc")]
pub struct BuildingData {
    ambient: Ambient,
    branches: [Branch; 3],
    line_bundles: [DivClass; 3],
    incidence: Vec<PointLabel>,
    reduced: bool,
}

impl BuildingData {
    /// Validates building data with a reduced branch locus.
    pub fn new(
        ambient: Ambient,
        branches: [Branch; 3],
        incidence: Vec<PointLabel>,
    ) -> Result<Self> {
        Self::with_validation(ambient, branches, incidence, Validation::Standard)
    }

    pub fn with_validation(
        ambient: Ambient,
        branches: [Branch; 3],
        mut incidence: Vec<PointLabel>,
        validation: Validation,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidBuildingData(msg));

        for (i, branch) in branches.iter().enumerate() {
            let recomputed = Branch::new(&ambient, branch.components.clone())?;
            if recomputed.class != branch.class {
                return invalid(format!(
                    "D{} = {} but its components sum to {}",
                    i + 1,
                    branch.class,
                    recomputed.class
                ));
            }
            let mut labels = BTreeSet::new();
            for c in &branch.components {
                if !labels.insert(c.label.as_str()) {
                    return invalid(format!("D{} lists component {:?} twice", i + 1, c.label));
                }
                if c.copies == 0 || c.class.is_zero() {
                    return invalid(format!("component {:?} of D{} is empty", c.label, i + 1));
                }
                if ambient.h0(&c.class)?.dim == 0 {
                    return invalid(format!(
                        "component {:?} of D{} has non-effective class {}",
                        c.label,
                        i + 1,
                        c.class
                    ));
                }
            }
        }

        let mut ids: BTreeSet<&str> = ambient
            .blown_up_points()
            .iter()
            .map(|p| p.id.as_str())
            .collect();
        for point in &incidence {
            if !ids.insert(point.id.as_str()) {
                return invalid(format!("point label {:?} is used twice", point.id));
            }
            let mut seen = BTreeSet::new();
            for inc in &point.through {
                if !(1..=3).contains(&inc.branch) || !seen.insert(inc.branch) {
                    return invalid(format!(
                        "point {:?} has a bad branch index {}",
                        point.id, inc.branch
                    ));
                }
                if branches[inc.branch as usize - 1]
                    .component(&inc.component)
                    .is_none()
                {
                    return invalid(format!(
                        "point {:?} lies on unknown component {:?} of D{}",
                        point.id, inc.component, inc.branch
                    ));
                }
            }
        }
        incidence.sort_by(|a, b| a.id.cmp(&b.id));

        let reduced = repeated_components(&branches).is_empty();
        if !reduced && validation == Validation::Standard {
            let (label, _) = repeated_components(&branches).into_iter().next().unwrap();
            return Err(Error::NonReduced(label));
        }

        let line_bundles =
            derive_line_bundles([&branches[0].class, &branches[1].class, &branches[2].class])?;
        Ok(Self {
            ambient,
            branches,
            line_bundles,
            incidence,
            reduced,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn branches(&self) -> &[Branch; 3] {
        &self.branches
    }

    /// `D_i`, 1-based.
    pub fn branch(&self, i: usize) -> &DivClass {
        &self.branches[i - 1].class
    }

    pub fn line_bundles(&self) -> &[DivClass; 3] {
        &self.line_bundles
    }

    pub fn incidence(&self) -> &[PointLabel] {
        &self.incidence
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    pub fn validation(&self) -> Validation {
        if self.reduced {
            Validation::Standard
        } else {
            Validation::Degeneration
        }
    }

    /// Total branch class `B = D1 + D2 + D3`.
    pub fn total_branch(&self) -> DivClass {
        &(&self.branches[0].class + &self.branches[1].class) + &self.branches[2].class
    }

    /// `2K_Y + B`, whose pullback is `2K_X`.
    pub fn canonical_pushdown(&self) -> DivClass {
        &(2 * &self.ambient.canonical()) + &self.total_branch()
    }

    pub fn ksq(&self) -> i64 {
        self.canonical_pushdown().square()
    }

    /// Closed formula `4χ(O_Y) + ½ Σ L_i(L_i + K_Y)`.
    pub fn chi(&self) -> i64 {
        let k = self.ambient.canonical();
        let twice: i64 = self
            .line_bundles
            .iter()
            .map(|l| l.square() + l.dot(&k).expect("same surface"))
            .sum();
        debug_assert_eq!(twice % 2, 0);
        4 * BASE_CHI + twice / 2
    }

    /// `χ(O_X)` as the sum over the characters of the group:
    /// `χ(O_Y) + Σ χ(O_Y(-L_i))`, each term by Riemann–Roch.
    pub fn chi_oracle(&self) -> i64 {
        let mut total = self
            .ambient
            .euler_characteristic(&self.ambient.zero())
            .expect("same surface");
        for l in &self.line_bundles {
            total += self
                .ambient
                .euler_characteristic(&-l)
                .expect("same surface");
        }
        total
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let k = self.ambient.canonical();
        let mut pg = BASE_PG;
        let mut pg_estimated = false;
        for l in &self.line_bundles {
            let n = self.ambient.h0(&(&k + l))?;
            pg += n.dim;
            pg_estimated |= n.estimate;
        }
        let chi = self.chi();
        let q = pg - chi + 1;
        if q < 0 {
            return Err(Error::NegativeIrregularity(q));
        }
        Ok(Invariants {
            ksq: self.ksq(),
            chi,
            pg,
            q,
            pg_estimated,
        })
    }

    /// Singularities of the cover forced by the branch incidence: a
    /// `1/4(1,1)` point over every ordinary triple point, and a non-normal
    /// gluing along every component shared by two branches.
    pub fn singularity_scan(&self) -> SingularityLedger {
        let mut entries: Vec<SingularityEntry> = self
            .incidence
            .iter()
            .filter(|p| p.is_triple())
            .map(|p| SingularityEntry {
                kind: SingularityKind::QuarterPoint,
                count: 1,
                gorenstein_index: 2,
                witness: Witness::Point(p.id.clone()),
            })
            .collect();

        for (label, (class, in_branches)) in repeated_components(&self.branches) {
            // index-2 points sit where the doubled curve meets the branches not containing it
            let count: i64 = (1..=3)
                .filter(|i| !in_branches.contains(i))
                .map(|i| class.dot(self.branch(i)).expect("same surface"))
                .sum();
            entries.push(SingularityEntry {
                kind: SingularityKind::NonNormalGluing,
                count: count.max(0),
                gorenstein_index: 2,
                witness: Witness::Curve {
                    component: label,
                    class,
                },
            });
        }
        entries.sort_by(|a, b| (a.kind, a.witness.label()).cmp(&(b.kind, b.witness.label())));
        SingularityLedger { entries }
    }

    /// Blows up the triple point `id`, replacing each `D_i` by `q*D_i - E`.
    pub fn resolve_triple_point(&self, id: &str) -> Result<BuildingData> {
        let point = self
            .incidence
            .iter()
            .find(|p| p.id == id)
            .filter(|p| p.is_triple())
            .ok_or_else(|| Error::NotTriplePoint(id.to_string()))?;
        let ambient = self.ambient.blow_up(point.clone())?;
        let k = ambient.blown_up_points().len();
        let e = ambient.exceptional(k);

        let mut branches = Vec::with_capacity(3);
        for (i, branch) in self.branches.iter().enumerate() {
            let marked = point.component_on(i as u8 + 1);
            let mut components = Vec::with_capacity(branch.components.len());
            for c in &branch.components {
                let mut class = c.class.pullback(&ambient)?;
                if Some(c.label.as_str()) == marked {
                    if c.copies != 1 {
                        return Err(Error::InvalidBuildingData(format!(
                            "marked component {:?} must be a single curve",
                            c.label
                        )));
                    }
                    class = &class - &e;
                }
                components.push(Component::new(c.label.clone(), class, c.copies));
            }
            branches.push(Branch::new(&ambient, components)?);
        }
        let branches: [Branch; 3] = branches.try_into().expect("three branches");
        let incidence = self
            .incidence
            .iter()
            .filter(|p| p.id != id)
            .cloned()
            .collect();
        BuildingData::with_validation(ambient, branches, incidence, self.validation())
    }

    /// Same classes, new incidence and component names; used for natural deformations.
    pub fn with_parts(
        &self,
        branches: [Branch; 3],
        incidence: Vec<PointLabel>,
        validation: Validation,
    ) -> Result<Self> {
        BuildingData::with_validation(self.ambient.clone(), branches, incidence, validation)
    }

    /// Rebuilds validated data from its document form. Stored line bundles
    /// and the `reduced` flag are not trusted; compare them separately.
    pub fn from_doc(doc: &BuildingDataDoc) -> Result<Self> {
        let ambient = doc.ambient.clone();
        if doc.branches.len() != 3 {
            return Err(Error::Document(format!(
                "expected 3 branches, found {}",
                doc.branches.len()
            )));
        }
        let mut branches = Vec::with_capacity(3);
        for (i, b) in doc.branches.iter().enumerate() {
            let components = b
                .components
                .iter()
                .map(|c| {
                    Ok(Component::new(
                        c.label.clone(),
                        ambient.class(c.class.clone())?,
                        c.copies,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let branch = Branch::new(&ambient, components)?;
            if branch.class.coords() != b.class.as_slice() {
                return Err(Error::InvalidBuildingData(format!(
                    "D{} is stored as {:?} but its components sum to {:?}",
                    i + 1,
                    b.class,
                    branch.class.coords()
                )));
            }
            branches.push(branch);
        }
        let branches: [Branch; 3] = branches.try_into().expect("three branches");
        BuildingData::with_validation(
            ambient,
            branches,
            doc.incidence.clone(),
            Validation::Degeneration,
        )
    }
}

/// Labels shared between branches, with their class and the branches containing them.
fn repeated_components(branches: &[Branch; 3]) -> BTreeMap<String, (DivClass, Vec<usize>)> {
    let mut seen: BTreeMap<String, (DivClass, Vec<usize>)> = BTreeMap::new();
    for (i, b) in branches.iter().enumerate() {
        for c in &b.components {
            seen.entry(c.label.clone())
                .or_insert_with(|| (c.class.clone(), Vec::new()))
                .1
                .push(i + 1);
        }
    }
    seen.retain(|_, (_, bs)| bs.len() > 1);
    seen
}

/// Serialized form of [`BuildingData`]: integer coordinates only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BuildingDataDoc {
    pub ambient: Ambient,
    pub basis: Vec<String>,
    pub branches: Vec<BranchDoc>,
    pub line_bundles: Vec<Vec<i64>>,
    pub incidence: Vec<PointLabel>,
    pub reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub class: Vec<i64>,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub label: String,
    pub class: Vec<i64>,
    pub copies: u32,
}

impl From<BuildingData> for BuildingDataDoc {
    fn from(bd: BuildingData) -> Self {
        Self {
            basis: bd.ambient.basis_labels(),
            branches: bd
                .branches
                .iter()
                .map(|b| BranchDoc {
                    class: b.class.coords().to_vec(),
                    components: b
                        .components
                        .iter()
                        .map(|c| ComponentDoc {
                            label: c.label.clone(),
                            class: c.class.coords().to_vec(),
                            copies: c.copies,
                        })
                        .collect(),
                })
                .collect(),
            line_bundles: bd
                .line_bundles
                .iter()
                .map(|l| l.coords().to_vec())
                .collect(),
            incidence: bd.incidence,
            reduced: bd.reduced,
            ambient: bd.ambient,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Invariants {
    #[serde(rename = "Ksq")]
    pub ksq: i64,
    pub chi: i64,
    pub pg: i64,
    pub q: i64,
    pub pg_estimated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SingularityKind {
    /// `1/4(1,1)`: minimal resolution is a single `(-4)`-curve.
    QuarterPoint,
    /// Gluing of two sheets along the curve over a doubled branch component;
    /// points of type `(xy = 0) ⊂ 1/2(1,1,1)`.
    NonNormalGluing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Witness {
    Point(String),
    Curve { component: String, class: DivClass },
}

impl Witness {
    pub fn label(&self) -> &str {
        match self {
            Witness::Point(id) => id,
            Witness::Curve { component, .. } => component,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SingularityEntry {
    pub kind: SingularityKind,
    pub count: i64,
    pub gorenstein_index: u32,
    pub witness: Witness,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SingularityLedger {
    pub entries: Vec<SingularityEntry>,
}

impl SingularityLedger {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, kind: SingularityKind) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.kind == kind)
            .map(|e| e.count)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(ambient: &Ambient, label: &str, class: DivClass) -> Branch {
        Branch::new(ambient, vec![Component::single(label, class)]).unwrap()
    }

    fn plane_data(d: [i64; 3]) -> BuildingData {
        let p = Ambient::ProjectivePlane;
        let branches = [
            single(&p, "D1", p.line(d[0])),
            single(&p, "D2", p.line(d[1])),
            single(&p, "D3", p.line(d[2])),
        ];
        BuildingData::new(p, branches, vec![]).unwrap()
    }

    fn product_data(chi: i64) -> BuildingData {
        let s = Ambient::Hirzebruch { e: 0 };
        let branches = [
            Branch::new(&s, vec![Component::new("sections", s.ruled(1, 0), 6)]).unwrap(),
            Branch::new(
                &s,
                vec![Component::new(
                    "fibers",
                    s.ruled(0, 1),
                    (2 * chi + 4) as u32,
                )],
            )
            .unwrap(),
            Branch::empty(&s),
        ];
        BuildingData::new(s, branches, vec![]).unwrap()
    }

    #[test]
    fn line_bundles_for_plane_cover() {
        let bd = plane_data([1, 3, 3]);
        let p = Ambient::ProjectivePlane;
        assert_eq!(bd.line_bundles(), &[p.line(3), p.line(2), p.line(2)]);
    }

    #[test]
    fn line_bundles_for_product() {
        let s = Ambient::Hirzebruch { e: 0 };
        let chi = 3;
        let l = derive_line_bundles([&s.ruled(6, 0), &s.ruled(0, 2 * chi + 4), &s.zero()]).unwrap();
        assert_eq!(l, [s.ruled(0, 5), s.ruled(3, 0), s.ruled(3, 5)]);
    }

    #[test]
    fn parity_failure() {
        let s = Ambient::Hirzebruch { e: 0 };
        let err = derive_line_bundles([&s.ruled(1, 0), &s.ruled(1, 1), &s.zero()]).unwrap_err();
        assert!(matches!(err, Error::Parity(_)));
    }

    #[test]
    fn trivial_line_bundle_rejected() {
        let s = Ambient::Hirzebruch { e: 0 };
        // L3 = L1 + L2 - D3 = 0 for D1 = D2 = 0, D3 = 2Δ0
        let err = derive_line_bundles([&s.zero(), &s.zero(), &s.ruled(2, 0)]).unwrap_err();
        assert_eq!(err, Error::TrivialLineBundle(3));
    }

    #[test]
    fn plane_special_invariants() {
        let inv = plane_data([1, 3, 3]).invariants().unwrap();
        assert_eq!((inv.ksq, inv.chi, inv.pg, inv.q), (1, 2, 1, 0));
        let bd = plane_data([1, 1, 5]);
        let inv = bd.invariants().unwrap();
        assert_eq!((inv.ksq, inv.chi, inv.q), (1, 3, 0));
        assert_eq!(bd.chi_oracle(), 3);
    }

    #[test]
    fn product_invariants() {
        let bd = product_data(3);
        let inv = bd.invariants().unwrap();
        assert_eq!((inv.ksq, inv.chi, inv.pg, inv.q), (24, 3, 8, 6));
        assert!(!inv.pg_estimated);
        assert_eq!(bd.chi_oracle(), 3);
    }

    #[test]
    fn oracle_on_conics() {
        // D1 = D2 = D3 = 2H: L_i = 2H, χ = 4 + 3·(2H·(-H))/2 = 1
        let bd = plane_data([2, 2, 2]);
        assert_eq!(bd.chi(), 1);
        assert_eq!(bd.chi_oracle(), 1);
    }

    #[test]
    fn genus_two_table_instance() {
        // K^2 = 20, chi = 7: (α, β, γ, e) = (0, 12, 2, 0)
        let s = Ambient::Hirzebruch { e: 0 };
        let branches = [
            single(&s, "D1", s.ruled(1, 0)),
            single(&s, "D2", s.ruled(1, 12)),
            single(&s, "D3", s.ruled(3, 2)),
        ];
        let bd = BuildingData::new(s, branches, vec![]).unwrap();
        let inv = bd.invariants().unwrap();
        assert_eq!((inv.ksq, inv.chi, inv.q), (20, 7, 0));
    }

    #[test]
    fn components_must_sum_to_branch() {
        let s = Ambient::Hirzebruch { e: 0 };
        let mut b = single(&s, "D1", s.ruled(1, 2));
        b.class = s.ruled(1, 3);
        let branches = [
            b,
            single(&s, "D2", s.ruled(1, 4)),
            single(&s, "D3", s.ruled(3, 0)),
        ];
        assert!(matches!(
            BuildingData::new(s, branches, vec![]),
            Err(Error::InvalidBuildingData(_))
        ));
    }

    #[test]
    fn non_effective_component_rejected() {
        let s = Ambient::Hirzebruch { e: 2 };
        // Δ0 - F is not effective
        let branches = [
            single(&s, "D1", s.ruled(1, -1)),
            single(&s, "D2", s.ruled(1, 1)),
            single(&s, "D3", s.ruled(2, 6)),
        ];
        assert!(BuildingData::new(s, branches, vec![]).is_err());
    }

    #[test]
    fn standard_validation_rejects_repeated_component() {
        let s = Ambient::Hirzebruch { e: 0 };
        let branches = [
            single(&s, "S", s.ruled(1, 0)),
            single(&s, "S", s.ruled(1, 0)),
            single(&s, "D3", s.ruled(3, 6)),
        ];
        let err = BuildingData::new(s.clone(), branches.clone(), vec![]).unwrap_err();
        assert_eq!(err, Error::NonReduced("S".into()));

        let bd =
            BuildingData::with_validation(s.clone(), branches, vec![], Validation::Degeneration)
                .unwrap();
        assert!(!bd.reduced());
        let ledger = bd.singularity_scan();
        assert_eq!(ledger.entries.len(), 1);
        let entry = &ledger.entries[0];
        assert_eq!(entry.kind, SingularityKind::NonNormalGluing);
        assert_eq!(entry.gorenstein_index, 2);
        // Δ0 · (3Δ0 + 6F) = 6
        assert_eq!(entry.count, 6);
    }

    fn triple_point_data() -> BuildingData {
        // K^2 = 4chi - 4 line data with chi = 3 and one fiber of D3 through p
        let s = Ambient::Hirzebruch { e: 0 };
        let branches = [
            single(&s, "D1", s.ruled(1, 2)),
            single(&s, "D2", s.ruled(1, 6)),
            Branch::new(
                &s,
                vec![
                    Component::single("Delta_1", s.ruled(1, 0)),
                    Component::single("Delta_2", s.ruled(1, 0)),
                    Component::single("Delta_3", s.ruled(1, 0)),
                ],
            )
            .unwrap(),
        ];
        let p = PointLabel::new("p")
            .on(1, "D1")
            .on(2, "D2")
            .on(3, "Delta_1");
        BuildingData::new(s, branches, vec![p]).unwrap()
    }

    #[test]
    fn scan_and_resolve_triple_point() {
        let bd = triple_point_data();
        let ledger = bd.singularity_scan();
        assert_eq!(ledger.count(SingularityKind::QuarterPoint), 1);
        assert_eq!(ledger.entries[0].witness, Witness::Point("p".into()));

        let before = bd.invariants().unwrap();
        assert_eq!((before.ksq, before.chi), (8, 3));
        let resolved = bd.resolve_triple_point("p").unwrap();
        let after = resolved.invariants().unwrap();
        assert_eq!((after.ksq, after.chi), (7, 3));
        assert_eq!(after.pg, before.pg);
        assert!(resolved.singularity_scan().is_empty());
        assert_eq!(resolved.ambient().blown_up_points().len(), 1);

        let a = resolved.ambient();
        let d3 = resolved.branches()[2].component("Delta_1").unwrap();
        assert_eq!(d3.class, &a.ruled(1, 0) - &a.exceptional(1));
    }

    #[test]
    fn resolving_non_triple_point_fails() {
        let s = Ambient::Hirzebruch { e: 0 };
        let branches = [
            single(&s, "D1", s.ruled(1, 2)),
            single(&s, "D2", s.ruled(1, 6)),
            single(&s, "D3", s.ruled(3, 0)),
        ];
        let p = PointLabel::new("p").on(1, "D1").on(2, "D2");
        let bd = BuildingData::new(s, branches, vec![p]).unwrap();
        assert_eq!(
            bd.resolve_triple_point("p").unwrap_err(),
            Error::NotTriplePoint("p".into())
        );
        assert_eq!(
            bd.resolve_triple_point("zz").unwrap_err(),
            Error::NotTriplePoint("zz".into())
        );
        assert!(bd.singularity_scan().is_empty());
    }

    #[test]
    fn resolution_on_the_plane_is_refused() {
        let p = Ambient::ProjectivePlane;
        let branches = [
            single(&p, "D1", p.line(1)),
            single(&p, "D2", p.line(3)),
            single(&p, "D3", p.line(3)),
        ];
        let pt = PointLabel::new("p").on(1, "D1").on(2, "D2").on(3, "D3");
        let bd = BuildingData::new(p, branches, vec![pt]).unwrap();
        assert_eq!(
            bd.resolve_triple_point("p").unwrap_err(),
            Error::ResolutionOnPlane
        );
    }

    #[test]
    fn scan_is_order_independent() {
        let s = Ambient::Hirzebruch { e: 0 };
        let branches = [
            Branch::new(
                &s,
                vec![
                    Component::single("F_1", s.ruled(0, 1)),
                    Component::single("F_2", s.ruled(0, 1)),
                ],
            )
            .unwrap(),
            single(&s, "D2", s.ruled(2, 2)),
            single(&s, "D3", s.ruled(4, 0)),
        ];
        let p1 = PointLabel::new("p1").on(1, "F_1").on(2, "D2").on(3, "D3");
        let p2 = PointLabel::new("p2").on(1, "F_2").on(2, "D2").on(3, "D3");
        let a =
            BuildingData::new(s.clone(), branches.clone(), vec![p1.clone(), p2.clone()]).unwrap();
        let b = BuildingData::new(s, branches, vec![p2, p1]).unwrap();
        assert_eq!(a.singularity_scan(), b.singularity_scan());
        assert_eq!(a.singularity_scan().count(SingularityKind::QuarterPoint), 2);
    }

    #[test]
    fn doc_round_trip() {
        let bd = triple_point_data().resolve_triple_point("p").unwrap();
        let doc = BuildingDataDoc::from(bd.clone());
        let json = serde_json::to_string(&doc).unwrap();
        let back: BuildingDataDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(BuildingData::from_doc(&back).unwrap(), bd);
    }

    #[test]
    fn smoothness_rules() {
        let s1 = Ambient::Hirzebruch { e: 1 };
        assert!(Component::single("s", s1.ruled(1, 0)).general_member_smooth(&s1));
        assert!(Component::single("c", s1.ruled(3, 3)).general_member_smooth(&s1));
        assert!(!Component::single("c", s1.ruled(3, 2)).general_member_smooth(&s1));
        assert!(Component::new("f", s1.ruled(0, 1), 4).general_member_smooth(&s1));
        assert!(!Component::new("s", s1.ruled(1, 0), 2).general_member_smooth(&s1));
        let p = Ambient::ProjectivePlane;
        assert!(Component::single("l", p.line(1)).general_member_smooth(&p));
    }
}
