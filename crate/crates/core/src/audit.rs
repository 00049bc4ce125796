//! Property sweep behind the `check` command.

use serde::Serialize;

use crate::cover::{Branch, BuildingData, Component};
use crate::degenerations::degenerate;
use crate::document::{construction_document, verify};
use crate::geography::admissible;
use crate::lattice::Ambient;
use crate::recipes::{classify, construct, Region};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckSummary {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl CheckSummary {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn covered_pairs(chi_max: i64) -> impl Iterator<Item = (i64, i64)> {
    (1..=chi_max)
        .flat_map(|chi| ((2 * chi - 6).max(1)..=9 * chi).map(move |k| (k, chi)))
        .filter(|&(k, chi)| classify(k, chi).is_covered())
}

/// Runs every property over the pairs with `χ <= chi_max`.
pub fn run_checks(chi_max: i64) -> Vec<CheckSummary> {
    let mut totality = CheckSummary::new("classify totality");
    for chi in 1..=60 {
        for ksq in -20..=200 {
            let region = classify(ksq, chi);
            let gap = admissible(ksq, chi) && 8 * chi - 8 < ksq && ksq != 8 * chi;
            let ok = (region == Region::NotAdmissible) == !admissible(ksq, chi)
                && (region == Region::NotCovered) == gap;
            totality.record(ok, || format!("({ksq}, {chi}) -> {region}"));
        }
    }

    let mut coverage = CheckSummary::new("coverage");
    let mut horikawa = CheckSummary::new("horikawa count");
    let mut irregularity = CheckSummary::new("irregularity");
    let mut resolution = CheckSummary::new("resolution deltas");
    let mut degenerations = CheckSummary::new("degenerations");
    let mut round_trip = CheckSummary::new("round trip");

    for (ksq, chi) in covered_pairs(chi_max) {
        let cert = match construct(ksq, chi) {
            Ok(c) => c,
            Err(e) => {
                coverage.record(false, || format!("({ksq}, {chi}): {e}"));
                continue;
            }
        };
        let inv = cert.invariants;
        coverage.record(cert.verified() && (inv.ksq, inv.chi) == (ksq, chi), || {
            format!(
                "({ksq}, {chi}): status {:?}, got ({}, {})",
                cert.status, inv.ksq, inv.chi
            )
        });

        if matches!(
            cert.region,
            Region::NoetherLine
                | Region::Genus2General
                | Region::Line4chiMinus4
                | Region::Line4chiMinus5
        ) {
            let d = &cert.building_data;
            let d12 = d.branch(1).dot(d.branch(2)).unwrap_or(i64::MIN);
            horikawa.record(d12 == ksq - (2 * chi - 6), || {
                format!("({ksq}, {chi}): D1.D2 = {d12}")
            });
        }

        let expected_q = if cert.region == Region::ProductLine {
            chi + 3
        } else {
            0
        };
        irregularity.record(inv.q == expected_q, || {
            format!("({ksq}, {chi}): q = {}", inv.q)
        });

        if let Some(pre) = &cert.pre_resolution_data {
            let n = cert.resolved_points.len() as i64;
            let ok =
                pre.ksq() - cert.building_data.ksq() == n && pre.chi() == cert.building_data.chi();
            resolution.record(ok, || format!("({ksq}, {chi}): {n} points"));
        }

        if cert.region.is_degenerable() {
            match degenerate(&cert) {
                Ok(dc) => degenerations.record(
                    dc.verified() && !dc.gorenstein && dc.invariants == inv,
                    || format!("({ksq}, {chi}): degeneration failed its conditions"),
                ),
                Err(e) => degenerations.record(false, || format!("({ksq}, {chi}): {e}")),
            }
        }

        let ok = construction_document(&cert)
            .and_then(|doc| verify(&doc))
            .map(|r| r.passed())
            .unwrap_or(false);
        round_trip.record(ok, || format!("({ksq}, {chi})"));
    }

    vec![
        totality,
        coverage,
        horikawa,
        irregularity,
        resolution,
        degenerations,
        chi_oracle_grid(),
        h0_riemann_roch(),
        round_trip,
    ]
}

/// Closed χ formula against the sum of Riemann–Roch over the eigensheaves on
/// every parity-valid triple of nonzero classes in a small box on `F_e`.
fn chi_oracle_grid() -> CheckSummary {
    let mut s = CheckSummary::new("chi oracle");
    for e in 0..=2u32 {
        let f = Ambient::Hirzebruch { e };
        let classes: Vec<_> = (0..=4)
            .flat_map(|a| (0..=6).map(move |b| (a, b)))
            .filter(|&(a, b)| b >= a * e as i64)
            .collect();
        for &(a1, b1) in &classes {
            for &(a2, b2) in &classes {
                for &(a3, b3) in &classes {
                    if (a1 + a2) % 2 != 0
                        || (a1 + a3) % 2 != 0
                        || (b1 + b2) % 2 != 0
                        || (b1 + b3) % 2 != 0
                    {
                        continue;
                    }
                    let branch = |i: usize, x, y| {
                        if (x, y) == (0, 0) {
                            Ok(Branch::empty(&f))
                        } else {
                            Branch::new(&f, vec![Component::single(format!("C{i}"), f.ruled(x, y))])
                        }
                    };
                    let data = (|| {
                        let branches = [branch(1, a1, b1)?, branch(2, a2, b2)?, branch(3, a3, b3)?];
                        BuildingData::new(f.clone(), branches, vec![])
                    })();
                    if let Ok(bd) = data {
                        s.record(bd.chi() == bd.chi_oracle(), || {
                            format!("F_{e}: ({a1},{b1}), ({a2},{b2}), ({a3},{b3})")
                        });
                    }
                }
            }
        }
    }
    s
}

/// `h0 = χ` where higher cohomology vanishes: `d >= -2` on the plane and
/// `a >= 0, b >= ae - 1` on `F_e`.
fn h0_riemann_roch() -> CheckSummary {
    let mut s = CheckSummary::new("h0 vs Riemann-Roch");
    let p = Ambient::ProjectivePlane;
    for d in -2..=30 {
        let c = p.line(d);
        let ok = p.h0(&c).map(|h| h.dim) == p.euler_characteristic(&c);
        s.record(ok, || format!("P2: {d}H"));
    }
    for e in 0..=4u32 {
        let f = Ambient::Hirzebruch { e };
        for a in 0..=10 {
            for b in (a * e as i64 - 1)..=(a * e as i64 + 12) {
                let c = f.ruled(a, b);
                let ok = f.h0(&c).map(|h| h.dim) == f.euler_characteristic(&c);
                s.record(ok, || format!("F_{e}: {c}"));
            }
        }
    }
    s
}
