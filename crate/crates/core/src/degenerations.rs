//! Non-Gorenstein stable degenerations obtained by moving one branch divisor
//! inside its linear system.
//!
//! The family is recorded as two snapshots: the general member is the parent
//! construction, the special member has the same divisor classes and a new
//! incidence. Off the Noether line the special member acquires one
//! `1/4(1,1)` point over a new ordinary triple point of the branch locus. On
//! the Noether line `D2` is replaced by a divisor sharing a component with
//! `D1`, which makes the cover non-normal.

use serde::Serialize;

use crate::cover::{
    Branch, BuildingData, Component, Invariants, SingularityKind, SingularityLedger, Validation,
};
use crate::error::{Error, Result};
use crate::lattice::{DivClass, PointLabel, Positivity};
use crate::recipes::{ConstructionCertificate, Region, SideCondition};

/// Branch classes of the normalization of a non-normal degeneration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalizationData {
    pub c1: DivClass,
    pub c2: DivClass,
    pub c3: DivClass,
    /// Curve of the base over which the two sheets are glued.
    pub gluing_curve: DivClass,
    /// Connected components of the normalized cover: 4 divided by the order of
    /// the subgroup generated by the group elements with nonzero branch.
    pub connected_components: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegenerationCertificate {
    pub parent: ConstructionCertificate,
    pub modified_data: BuildingData,
    pub moved_branch: u8,
    pub ledger: SingularityLedger,
    pub invariants: Invariants,
    pub gorenstein: bool,
    pub normalization_data: Option<NormalizationData>,
    pub side_conditions: Vec<SideCondition>,
    pub ampleness: Positivity,
    pub family_note: String,
    pub notes: Vec<String>,
}

impl DegenerationCertificate {
    pub fn verified(&self) -> bool {
        self.side_conditions.iter().all(|c| c.satisfied)
    }
}

/// Builds the special member of the natural deformation of `cert`.
pub fn degenerate(cert: &ConstructionCertificate) -> Result<DegenerationCertificate> {
    if !cert.region.is_degenerable() {
        return Err(Error::NotDegenerable(cert.region));
    }
    let parent = &cert.building_data;
    let chi = cert.requested.chi;

    let (modified, moved, mut conditions, description) = match cert.region {
        Region::NoetherLine => {
            let (m, conds) = share_section(parent, chi)?;
            let description = if chi % 2 == 0 {
                "D'2 = D1 + two general fibers"
            } else {
                "D'2 = D1"
            };
            (m, 2, conds, description.to_string())
        }
        Region::PlaneSpecial12 | Region::PlaneSpecial13 => {
            let line = parent.branches()[0].components[0].label.clone();
            let (m, c) = mark_triple_point(parent, 1, &line, &line, "p", (2, 3))?;
            (
                m,
                1,
                c,
                "a line D'1 through exactly one point p of D2 ∩ D3".to_string(),
            )
        }
        Region::Genus2General => {
            let (m, c) = mark_triple_point(parent, 3, "D3", "D3", "p", (1, 2))?;
            (
                m,
                3,
                c,
                "a smooth D'3 through exactly one point p of D1 ∩ D2".to_string(),
            )
        }
        Region::Line4chiMinus4 => {
            let (m, c) = mark_triple_point(parent, 3, "Delta_1", "Delta_1", "p", (1, 2))?;
            (
                m,
                3,
                c,
                "the fiber Delta_1 of D'3 through a point p of D1 ∩ D2".to_string(),
            )
        }
        Region::Line4chiMinus5 => {
            let (m, c) = mark_triple_point(parent, 3, "Delta_3", "Delta_3'", "p'", (1, 2))?;
            (m, 3, c, "D'3 = Delta_1 + Delta_2 + Delta_3' with Delta_3' through a point p' ≠ p of D1 ∩ D2".to_string())
        }
        Region::Genus3 => {
            let eps = cert.fibration.map(|f| f.epsilon).unwrap_or(0);
            let id = format!("p{}", eps + 1);
            let free = parent.branches()[0]
                .component("F_rest")
                .map(|c| c.copies)
                .unwrap_or(0);
            let (m, mut c) = mark_triple_point(parent, 1, "F_rest", "F'_alpha", &id, (2, 3))?;
            c.push(SideCondition::new(
                "free fibers of D1",
                free as i64,
                ">= 1",
                free >= 1,
            ));
            (m, 1, c, format!("D'1 with the fiber F'_alpha through a point {id} of D2 ∩ D3 other than p1..p{eps}"))
        }
        Region::ProductLine | Region::NotCovered | Region::NotAdmissible => unreachable!(),
    };

    let same_classes = (1..=3).all(|i| modified.branch(i) == parent.branch(i))
        && modified.line_bundles() == parent.line_bundles();
    conditions.push(SideCondition::new(
        "branch classes unchanged",
        same_classes as i64,
        "= 1",
        same_classes,
    ));

    let invariants = modified.invariants()?;
    let unchanged = invariants == cert.invariants;
    conditions.push(SideCondition::new(
        "invariants equal parent",
        unchanged as i64,
        "= 1",
        unchanged,
    ));

    let ledger = modified.singularity_scan();
    let expected_kind = if cert.region == Region::NoetherLine {
        SingularityKind::NonNormalGluing
    } else {
        SingularityKind::QuarterPoint
    };
    let ledger_ok = !ledger.is_empty()
        && ledger
            .entries
            .iter()
            .all(|e| e.kind == expected_kind && e.gorenstein_index == 2)
        && (expected_kind != SingularityKind::QuarterPoint || ledger.entries.len() == 1);
    conditions.push(SideCondition::new(
        "singularity ledger",
        ledger.entries.len() as i64,
        "nonempty, index 2 only",
        ledger_ok,
    ));

    let normalization_data = if modified.reduced() {
        None
    } else {
        Some(normalize(&modified)?)
    };

    let family_note = format!(
        "natural deformation moving D{moved} in |D{moved}|: the general member is the cover of the parent certificate, \
         the special member is this data with {description}; the family is Q-Gorenstein by the numerical criterion for \
         stable fibers (recorded, not re-proved)"
    );
    let notes = vec![
        "ampleness is inherited from the pushdown of 2K on the parent surface; the polarization of the singular member is not re-derived"
            .to_string(),
    ];

    Ok(DegenerationCertificate {
        parent: cert.clone(),
        gorenstein: ledger.is_empty(),
        modified_data: modified,
        moved_branch: moved,
        ledger,
        invariants,
        normalization_data,
        side_conditions: conditions,
        ampleness: cert.ampleness,
        family_note,
        notes,
    })
}

/// Moves component `old` of branch `moved` (renamed `new`) so that it passes
/// through a fresh intersection point of the branches `pair`.
fn mark_triple_point(
    data: &BuildingData,
    moved: u8,
    old: &str,
    new: &str,
    id: &str,
    pair: (u8, u8),
) -> Result<(BuildingData, Vec<SideCondition>)> {
    let (i, j) = pair;
    let meet = data
        .branch(i as usize)
        .dot(data.branch(j as usize))
        .expect("same surface");
    let used = data
        .incidence()
        .iter()
        .filter(|p| p.passes_through(i) && p.passes_through(j))
        .count() as i64;
    let available = meet - used;
    if available <= 0 {
        return Err(Error::InsufficientPoints {
            first: i as usize,
            second: j as usize,
            available,
        });
    }

    let mut branches = data.branches().clone();
    let target = &mut branches[moved as usize - 1];
    let idx = target
        .components
        .iter()
        .position(|c| c.label == old)
        .ok_or_else(|| Error::InvalidBuildingData(format!("no component {old:?} in D{moved}")))?;
    let component = target.components[idx].clone();
    if component.copies > 1 {
        target.components[idx].copies -= 1;
        target
            .components
            .push(Component::single(new, component.class));
    } else {
        target.components[idx].label = new.to_string();
    }
    let ambient = data.ambient();
    *target = Branch::new(ambient, target.components.clone())?;

    let only_component = |b: u8| -> Result<String> {
        match branches[b as usize - 1].components.as_slice() {
            [c] if c.copies == 1 => Ok(c.label.clone()),
            _ => Err(Error::InvalidBuildingData(format!(
                "D{b} must be a single irreducible curve to carry the new point"
            ))),
        }
    };
    let point = PointLabel::new(id)
        .on(i, only_component(i)?)
        .on(j, only_component(j)?)
        .on(moved, new);
    let mut incidence = data.incidence().to_vec();
    incidence.push(point);

    let modified = data.with_parts(branches, incidence, Validation::Standard)?;
    let condition = SideCondition::new(
        format!("free points of D{i} ∩ D{j}"),
        available,
        "> 0",
        available > 0,
    );
    Ok((modified, vec![condition]))
}

/// Noether line: `D'2` shares the section `D1`.
fn share_section(data: &BuildingData, chi: i64) -> Result<(BuildingData, Vec<SideCondition>)> {
    let ambient = data.ambient();
    let section = data.branches()[0].components[0].clone();
    let mut pieces = vec![section.clone()];
    if chi % 2 == 0 {
        pieces.push(Component::new("G", ambient.ruled(0, 1), 2));
    }
    let mut branches = data.branches().clone();
    branches[1] = Branch::new(ambient, pieces)?;

    let residual = data.branch(2) - &section.class;
    let h0 = ambient.h0(&residual)?.dim;
    let modified = data.with_parts(
        branches,
        data.incidence().to_vec(),
        Validation::Degeneration,
    )?;
    Ok((
        modified,
        vec![SideCondition::new("h0(D2 - D1)", h0, ">= 1", h0 >= 1)],
    ))
}

fn normalize(data: &BuildingData) -> Result<NormalizationData> {
    let [b1, b2, b3] = data.branches();
    if b3
        .components
        .iter()
        .any(|c| b1.component(&c.label).is_some() || b2.component(&c.label).is_some())
    {
        return Err(Error::InvalidBuildingData(
            "only components shared by D1 and D2 are normalized".into(),
        ));
    }
    let mut shared = data.ambient().zero();
    for c in &b1.components {
        if let Some(other) = b2.component(&c.label) {
            shared = &shared + &(c.copies.min(other.copies) as i64 * &c.class);
        }
    }
    if shared.is_zero() {
        return Err(Error::NormalDegeneration);
    }
    let c = [
        data.branch(1) - &shared,
        data.branch(2) - &shared,
        data.branch(3) + &shared,
    ];
    let generators = c.iter().filter(|x| !x.is_zero()).count();
    let subgroup = match generators {
        0 => 1,
        1 => 2,
        _ => 4,
    };
    let [c1, c2, c3] = c;
    Ok(NormalizationData {
        c1,
        c2,
        c3,
        gluing_curve: shared,
        connected_components: 4 / subgroup,
    })
}

/// Branch classes `(C1, C2, C3)` of the normalization of a Noether-line degeneration.
pub fn normalize_noether_line(dc: &DegenerationCertificate) -> Result<[DivClass; 3]> {
    if dc.ledger.count(SingularityKind::NonNormalGluing) == 0 && dc.modified_data.reduced() {
        return Err(Error::NormalDegeneration);
    }
    let n = normalize(&dc.modified_data)?;
    Ok([n.c1, n.c2, n.c3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Witness;
    use crate::recipes::construct;

    #[test]
    fn genus_two_degeneration() {
        let dc = degenerate(&construct(20, 7).unwrap()).unwrap();
        assert_eq!(dc.ledger.entries.len(), 1);
        assert_eq!(dc.ledger.entries[0].kind, SingularityKind::QuarterPoint);
        assert_eq!((dc.invariants.ksq, dc.invariants.chi), (20, 7));
        assert!(!dc.gorenstein);
        assert!(dc.verified());
        assert!(dc.normalization_data.is_none());
    }

    #[test]
    fn genus_three_degeneration_marks_next_point() {
        let dc = degenerate(&construct(17, 5).unwrap()).unwrap();
        assert_eq!(dc.ledger.entries.len(), 1);
        assert_eq!(dc.ledger.entries[0].witness, Witness::Point("p4".into()));
        assert_eq!((dc.invariants.ksq, dc.invariants.chi), (17, 5));
        assert!(dc.verified());
    }

    #[test]
    fn product_has_no_degeneration() {
        let err = degenerate(&construct(24, 3).unwrap()).unwrap_err();
        assert_eq!(err, Error::NotDegenerable(Region::ProductLine));
    }

    #[test]
    fn noether_line_normalization_odd() {
        let dc = degenerate(&construct(4, 5).unwrap()).unwrap();
        assert!(!dc.modified_data.reduced());
        assert_eq!(dc.ledger.entries[0].kind, SingularityKind::NonNormalGluing);
        assert_eq!(dc.ledger.entries[0].gorenstein_index, 2);
        let s = dc.modified_data.ambient();
        let [c1, c2, c3] = normalize_noether_line(&dc).unwrap();
        assert_eq!((c1, c2, c3), (s.zero(), s.zero(), s.ruled(4, 6)));
        assert_eq!(
            dc.normalization_data.as_ref().unwrap().connected_components,
            2
        );
        assert!(dc.verified());
    }

    #[test]
    fn noether_line_normalization_even() {
        let dc = degenerate(&construct(6, 6).unwrap()).unwrap();
        let s = dc.modified_data.ambient();
        let [c1, c2, c3] = normalize_noether_line(&dc).unwrap();
        assert_eq!((c1, c2, c3), (s.zero(), s.ruled(0, 2), s.ruled(4, 10)));
        assert_eq!((dc.invariants.ksq, dc.invariants.chi), (6, 6));
        assert!(dc.verified());
    }

    #[test]
    fn normal_degenerations_cannot_be_normalized() {
        let dc = degenerate(&construct(20, 7).unwrap()).unwrap();
        assert_eq!(
            normalize_noether_line(&dc).unwrap_err(),
            Error::NormalDegeneration
        );
    }

    #[test]
    fn line_4chi_minus_5_uses_second_point() {
        let dc = degenerate(&construct(11, 4).unwrap()).unwrap();
        assert_eq!(dc.ledger.entries[0].witness, Witness::Point("p'".into()));
        assert_eq!((dc.invariants.ksq, dc.invariants.chi), (11, 4));
        assert!(dc.verified());
    }
}
