//! Theorem-gated homological invariants: second graded Betti numbers for
//! trees and odd unicyclic graphs, projective dimension / depth /
//! Cohen-Macaulay reports, Rees and associated-graded flags, and
//! linear-type / fiber-cone data.
//!
//! Every numeric field is emitted only when a specific structural theorem
//! determines it for the given graph, family and field; everything else
//! stays absent, with the reasoning recorded in `provenance`. Emitted
//! pairs always satisfy `depth = 2n - pd` and `dim = 2n - height`.

use crate::classify::{classify, Status};
use crate::error::{Error, Result};
use crate::graph::{
    detect_induced, recognize_shape, unicyclic_cycle, Graph, PatternGraph, ShapeTag,
};
use crate::ideals::IdealFamily;
use crate::poly::FieldSpec;
use crate::primes::ideal_height;
use serde::Serialize;
use std::collections::BTreeMap;

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// `beta_2 = beta_{2,4}` of `S/L_G` (equivalently `S/I_G`): for a tree
/// `C(n-1, 2) + Σ_v C(deg v, 3)`, for an odd unicyclic graph
/// `C(n, 2) + Σ_v C(deg v, 3)`. Other shapes are not supported.
pub fn betti2(g: &Graph, fam: IdealFamily) -> Result<u64> {
    if !matches!(fam, IdealFamily::Lss | IdealFamily::Parity) {
        return Err(Error::NotSupported(
            "the second Betti number formulas cover the LSS and parity families".into(),
        ));
    }
    let shape = recognize_shape(g)?;
    let base = match shape.tag {
        ShapeTag::Path | ShapeTag::Tree => binom(g.n() as usize - 1, 2),
        ShapeTag::OddCycle | ShapeTag::OddUnicyclic => binom(g.n() as usize, 2),
        tag => {
            return Err(Error::NotSupported(format!(
                "second Betti number formula needs a tree or odd unicyclic graph, got {tag:?}"
            )))
        }
    };
    let claw_sum: u64 = (1..=g.n()).map(|v| binom(g.degree(v), 3)).sum();
    Ok(base + claw_sum)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct InvariantReport {
    pub mu: u64,
    pub height: Option<u64>,
    pub dim_quotient: Option<u64>,
    pub pd: Option<u64>,
    pub depth: Option<u64>,
    pub beta2: Option<u64>,
    pub is_cm: Option<bool>,
    pub is_almost_cm: Option<bool>,
    pub rees_cm: Option<bool>,
    pub assoc_gr_cm: Option<bool>,
    pub status: Option<String>,
    pub provenance: BTreeMap<String, String>,
}

/// How a family's homological data is obtained in a given field: directly
/// (LSS/parity, whose Betti tables agree), through the `eta` isomorphism
/// (permanental, char != 2), through the bipartite coordinate change
/// (binomial edge on bipartite graphs), or not at all.
fn parity_equivalent(fam: IdealFamily, g: &Graph, field: FieldSpec) -> Option<&'static str> {
    match fam {
        IdealFamily::Lss | IdealFamily::Parity => {
            Some("LSS and parity ideals share all graded Betti numbers")
        }
        IdealFamily::Permanental => {
            if field.characteristic() != 2 {
                Some("permanental ideal is isomorphic to the parity ideal (char != 2)")
            } else {
                None
            }
        }
        IdealFamily::BinomialEdge => {
            if g.is_bipartite() {
                Some("binomial edge ideal of a bipartite graph is isomorphic to the parity ideal")
            } else {
                None
            }
        }
    }
}

/// Fills exactly the homological fields some structural theorem settles
/// for this graph, family and coefficient field.
pub fn homological_report(g: &Graph, fam: IdealFamily, field: FieldSpec) -> InvariantReport {
    let mut rep = InvariantReport {
        mu: g.edge_count() as u64,
        ..Default::default()
    };
    rep.provenance.insert(
        "mu".into(),
        "one generator per edge, pairwise distinct supports".into(),
    );

    let Some(route) = parity_equivalent(fam, g, field) else {
        rep.provenance.insert(
            "height".into(),
            "not covered: family has no implemented decomposition in this regime".into(),
        );
        return rep;
    };
    rep.provenance.insert("route".into(), route.into());

    let n = g.n() as u64;
    match ideal_height(fam, g, field) {
        Ok(h) => {
            rep.height = Some(h);
            rep.dim_quotient = Some(2 * n - h);
            rep.provenance.insert(
                "height".into(),
                "minimum of n + |T| - b(T) over minimal primes".into(),
            );
        }
        Err(e) => {
            rep.provenance
                .insert("height".into(), format!("not covered: {e}"));
        }
    }

    let class = classify(
        match fam {
            IdealFamily::BinomialEdge => IdealFamily::Parity,
            f => f,
        },
        g,
        field,
    );
    rep.status = Some(class.status.label().to_string());

    if class.status == Status::Ci {
        rep.is_cm = Some(true);
        rep.rees_cm = Some(true);
        rep.assoc_gr_cm = Some(true);
        rep.provenance.insert(
            "is_cm".into(),
            "complete intersections are Cohen-Macaulay (Koszul resolution)".into(),
        );
        rep.provenance.insert(
            "rees_cm".into(),
            "blowup algebras of complete intersections are Cohen-Macaulay".into(),
        );
    }

    if !g.is_connected() {
        if let Ok(b) = betti2_if_supported(g, fam) {
            rep.beta2 = Some(b);
        }
        return rep;
    }
    let shape = recognize_shape(g).expect("connected");

    if let Ok(b) = betti2_if_supported(g, fam) {
        rep.beta2 = Some(b);
        rep.provenance.insert(
            "beta2".into(),
            "C(|E|,2) + sum of C(deg v, 3); identical for the LSS and parity families".into(),
        );
    }

    let aci = class.status == Status::Aci;
    let charne2 = field.characteristic() != 2;

    match shape.tag {
        ShapeTag::OddCycle | ShapeTag::OddUnicyclic => {
            rep.set_pd(
                n,
                n,
                "projective dimension of S/I is n for connected odd unicyclic graphs",
            );
            if aci && charne2 {
                rep.rees_cm = Some(true);
                rep.assoc_gr_cm = Some(true);
                rep.provenance.insert(
                    "rees_cm".into(),
                    "almost complete intersection odd unicyclic: quotient is almost Cohen-Macaulay, \
                     so both blowup algebras are Cohen-Macaulay"
                        .into(),
                );
            }
        }
        ShapeTag::EvenCycle | ShapeTag::EvenUnicyclic if aci => {
            // Cohen-Macaulay exactly for a 4-cycle carrying one pendant
            // path at each of two adjacent vertices
            let cyc = unicyclic_cycle(g).expect("unicyclic");
            let d3 = (1..=g.n()).filter(|&v| g.degree(v) == 3).count();
            let cm = cyc.len() == 4 && d3 == 2;
            if cm {
                rep.set_pd(
                    n,
                    n - 1,
                    "Cohen-Macaulay case: paths attached to two adjacent vertices of a 4-cycle",
                );
                rep.is_cm = Some(true);
                rep.is_almost_cm = Some(false);
            } else {
                rep.set_pd(
                    n,
                    n,
                    "almost complete intersection even unicyclic quotients have depth n",
                );
                rep.is_cm = Some(false);
                rep.is_almost_cm = Some(true);
            }
            rep.rees_cm = Some(true);
            rep.assoc_gr_cm = Some(true);
            rep.provenance.insert(
                "rees_cm".into(),
                "almost complete intersection even unicyclic: depth >= dim - 1".into(),
            );
        }
        ShapeTag::ChordedCycle if g.edge_count() as u64 == n + 1 => {
            if let Some(kind) = chorded_aci_kind(g) {
                let pd = match kind {
                    ChordedAciKind::OddBase => {
                        if detect_induced(g, PatternGraph::C4).is_some() {
                            rep.provenance.insert(
                                "pd".into(),
                                "chorded odd cycle containing an induced 4-cycle: pd = n".into(),
                            );
                            n
                        } else {
                            rep.provenance.insert(
                                "pd".into(),
                                "chorded odd cycle with no induced 4-cycle: pd = n + 1".into(),
                            );
                            n + 1
                        }
                    }
                    ChordedAciKind::EvenBase => {
                        rep.provenance.insert(
                            "pd".into(),
                            "non-bipartite chorded even cycle: pd = n + 1".into(),
                        );
                        n + 1
                    }
                    ChordedAciKind::KiteFamily => {
                        if detect_induced(g, PatternGraph::Kite).is_some() {
                            rep.provenance
                                .insert("pd".into(), "Kite induced: pd = n".into());
                            n
                        } else {
                            rep.provenance
                                .insert("pd".into(), "Kite-free: pd = n + 1".into());
                            n + 1
                        }
                    }
                };
                rep.pd = Some(pd);
                rep.depth = Some(2 * n - pd);
                if aci && charne2 {
                    rep.rees_cm = Some(true);
                    rep.assoc_gr_cm = Some(true);
                    rep.provenance.insert(
                        "rees_cm".into(),
                        "almost complete intersection chorded cycle: depth >= dim - 1".into(),
                    );
                }
            }
        }
        ShapeTag::Path | ShapeTag::Tree => {
            if class.status == Status::Aci {
                rep.is_almost_cm = Some(true);
                rep.is_cm = Some(false);
                rep.rees_cm = Some(true);
                rep.assoc_gr_cm = Some(true);
                rep.provenance.insert(
                    "is_almost_cm".into(),
                    "for trees: almost complete intersection iff almost Cohen-Macaulay".into(),
                );
            } else if class.status == Status::Neither {
                rep.is_almost_cm = Some(false);
                rep.provenance.insert(
                    "is_almost_cm".into(),
                    "for trees: almost complete intersection iff almost Cohen-Macaulay".into(),
                );
            }
        }
        _ => {}
    }

    // derived Cohen-Macaulay flags from emitted pd and height
    if let (Some(depth), Some(dim)) = (rep.depth, rep.dim_quotient) {
        rep.is_cm = Some(depth == dim);
        rep.is_almost_cm = Some(depth + 1 == dim);
        rep.provenance.insert(
            "cm_flags".into(),
            "depth = 2n - pd (Auslander-Buchsbaum) compared against dim = 2n - height".into(),
        );
    }
    rep
}

impl InvariantReport {
    fn set_pd(&mut self, n: u64, pd: u64, why: &str) {
        self.pd = Some(pd);
        self.depth = Some(2 * n - pd);
        self.provenance
            .entry("pd".into())
            .or_insert_with(|| why.into());
    }
}

fn betti2_if_supported(g: &Graph, fam: IdealFamily) -> Result<u64> {
    let normalized = match fam {
        IdealFamily::Lss | IdealFamily::Parity => fam,
        _ => IdealFamily::Parity,
    };
    betti2(g, normalized)
}

use crate::classify::{chorded_aci_kind, ChordedAciKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct LinearTypeReport {
    pub linear_type: Option<bool>,
    pub linear_type_conjectural: Option<bool>,
    pub d_sequence: Option<bool>,
    pub not_linear_type: Option<bool>,
    pub k23_free: Option<bool>,
    pub fiber_cone_polynomial: Option<bool>,
    pub analytic_spread: Option<u64>,
    pub provenance: BTreeMap<String, String>,
}

/// Linear-type, d-sequence, fiber-cone and obstruction flags for the LSS
/// and binomial edge families.
pub fn linear_type_report(
    g: &Graph,
    fam: IdealFamily,
    field: FieldSpec,
) -> Result<LinearTypeReport> {
    let mut rep = LinearTypeReport::default();
    match fam {
        IdealFamily::Lss => {
            let class = classify(IdealFamily::Lss, g, field);
            if class.status == Status::Aci && field.characteristic() != 2 {
                rep.linear_type = Some(true);
                rep.d_sequence = Some(true);
                let finite_field_covered = matches!(
                    class.witness.as_str(),
                    "edge added between two vertices of a path (odd girth, interior endpoint)"
                        | "edge added between an odd cycle and a path"
                        | "edge added between two disjoint odd cycles"
                );
                let note = if field.characteristic() == 0 || finite_field_covered {
                    "almost complete intersection LSS ideals are generated by a homogeneous d-sequence"
                } else {
                    "d-sequence theorem is stated for infinite fields; over finite fields it is \
                     known for odd unicyclic types (1)-(2) and for two odd cycles joined by an edge"
                };
                rep.provenance.insert("linear_type".into(), note.into());
            }
            let shape = if g.is_connected() {
                Some(recognize_shape(g).expect("connected").tag)
            } else {
                None
            };
            if matches!(shape, Some(ShapeTag::OddCycle | ShapeTag::OddUnicyclic))
                && rep.linear_type.is_none()
            {
                rep.linear_type_conjectural = Some(true);
                rep.provenance.insert(
                    "linear_type_conjectural".into(),
                    "conjecture: LSS ideals of odd unicyclic graphs are of linear type".into(),
                );
            }
            if matches!(
                shape,
                Some(ShapeTag::Path | ShapeTag::Tree | ShapeTag::OddCycle | ShapeTag::OddUnicyclic)
            ) {
                rep.fiber_cone_polynomial = Some(true);
                rep.analytic_spread = Some(g.edge_count() as u64);
                rep.provenance.insert(
                    "fiber_cone_polynomial".into(),
                    "trees and odd unicyclic graphs: analytic spread equals the minimal number of generators"
                        .into(),
                );
            }
            Ok(rep)
        }
        IdealFamily::BinomialEdge => {
            let k23 = detect_induced(g, PatternGraph::K23).is_some();
            rep.k23_free = Some(!k23);
            if detect_induced(g, PatternGraph::K4).is_some() {
                rep.not_linear_type = Some(true);
                rep.provenance.insert(
                    "not_linear_type".into(),
                    "an induced complete graph on four vertices gives a quadratic relation in the Rees ideal"
                        .into(),
                );
            } else if g.is_bipartite() && k23 {
                rep.not_linear_type = Some(true);
                rep.provenance.insert(
                    "not_linear_type".into(),
                    "bipartite with an induced K_{2,3}: a degree-(1,2) relation survives in the Rees ideal"
                        .into(),
                );
            }
            Ok(rep)
        }
        _ => Err(Error::NotSupported(
            "linear-type reporting covers the LSS and binomial edge families".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn betti2_examples() {
        assert_eq!(betti2(&path(4), IdealFamily::Lss).unwrap(), 3);
        assert_eq!(betti2(&star(3), IdealFamily::Lss).unwrap(), 4);
        assert_eq!(betti2(&net(), IdealFamily::Parity).unwrap(), 18);
        assert_eq!(betti2(&cycle(5), IdealFamily::Lss).unwrap(), 10);
        assert!(betti2(&cycle(4), IdealFamily::Lss).is_err());
        assert!(betti2(&path(4), IdealFamily::BinomialEdge).is_err());
        // equality of the two families
        for g in [path(5), star(4), net(), cycle(7)] {
            assert_eq!(
                betti2(&g, IdealFamily::Lss).unwrap(),
                betti2(&g, IdealFamily::Parity).unwrap()
            );
        }
    }

    #[test]
    fn triangle_with_pendant_report() {
        let g = Graph::new(4, vec![(1, 2), (1, 3), (2, 3), (1, 4)]).unwrap();
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.mu, 4);
        assert_eq!(r.pd, Some(4));
        assert_eq!(r.depth, Some(4));
        assert_eq!(r.height, Some(3));
        assert_eq!(r.dim_quotient, Some(5));
        assert_eq!(r.is_almost_cm, Some(true));
        assert_eq!(r.is_cm, Some(false));
        assert_eq!(r.rees_cm, Some(true));
        assert_eq!(r.assoc_gr_cm, Some(true));
    }

    #[test]
    fn chorded_cycle_reports() {
        // C5 + chord {1,3}: induced C4 present, CM
        let g = chorded_cycle(5, 1, 3);
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.pd, Some(5));
        assert_eq!(r.depth, Some(5));
        assert_eq!(r.height, Some(5));
        assert_eq!(r.dim_quotient, Some(5));
        assert_eq!(r.is_cm, Some(true));
        assert_eq!(r.rees_cm, Some(true));

        // C7 + chord {1,3}: C4-free, almost CM
        let g = chorded_cycle(7, 1, 3);
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.pd, Some(8));
        assert_eq!(r.depth, Some(6));
        assert_eq!(r.height, Some(7));
        assert_eq!(r.dim_quotient, Some(7));
        assert_eq!(r.is_cm, Some(false));
        assert_eq!(r.is_almost_cm, Some(true));

        // C6 + chord {1,3}: both sub-cycles odd, pd = n + 1
        let g = chorded_cycle(6, 1, 3);
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.pd, Some(7));
        assert_eq!(r.is_almost_cm, Some(true));

        // Kite: induced Kite, pd = n, CM
        let r = homological_report(&kite(), IdealFamily::Parity, q());
        assert_eq!(r.pd, Some(5));
        assert_eq!(r.depth, Some(5));
        assert_eq!(r.is_cm, Some(true));
    }

    #[test]
    fn near_kite_shapes_get_no_pd() {
        // even cycle + chord + BRANCHING tree at the common neighbor: the
        // attachment is not a path, so the Kite-family theorems do not
        // apply and no projective dimension may be emitted
        let g = Graph::new(
            7,
            vec![
                (1, 2),
                (2, 3),
                (3, 4),
                (1, 4),
                (2, 4),
                (3, 5),
                (5, 6),
                (5, 7),
            ],
        )
        .unwrap();
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.pd, None);
        assert_eq!(classify(&g), Status::Neither);

        // cycle vertex of degree 4 (two pendant paths at the common
        // neighbor): likewise uncovered
        let g = Graph::new(
            7,
            vec![
                (1, 2),
                (2, 3),
                (3, 4),
                (1, 4),
                (2, 4),
                (3, 5),
                (3, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.pd, None);
        assert_eq!(classify(&g), Status::Neither);

        // pendant path at a cycle vertex not adjacent to either chord
        // endpoint: not the Kite family
        let g = Graph::new(
            7,
            vec![
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (1, 6),
                (2, 6),
                (4, 7),
            ],
        )
        .unwrap();
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.pd, None);
        assert_eq!(classify(&g), Status::Neither);

        // in C4 + chord both remaining cycle vertices neighbor both chord
        // endpoints, so a longer pendant path there IS the Kite family
        // (the induced Kite sits on the first path vertex)
        let g = Graph::new(
            6,
            vec![(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (1, 5), (5, 6)],
        )
        .unwrap();
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.pd, Some(6));
        assert_eq!(r.is_cm, Some(true));
        assert_eq!(classify(&g), Status::Aci);
    }

    fn classify(g: &Graph) -> Status {
        crate::classify::classify(IdealFamily::Parity, g, q()).status
    }

    use crate::classify::Status;

    #[test]
    fn even_unicyclic_cm_split() {
        // C4 with pendant paths at two adjacent vertices: CM, pd = n - 1
        let g = Graph::new(6, vec![(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 6)]).unwrap();
        let r = homological_report(&g, IdealFamily::Parity, q());
        assert_eq!(r.is_cm, Some(true));
        assert_eq!(r.pd, Some(5));
        assert_eq!(r.depth, Some(7));
        assert_eq!(r.dim_quotient, Some(7));

        // bare C4: ACI, almost CM, pd = n
        let r = homological_report(&cycle(4), IdealFamily::Parity, q());
        assert_eq!(r.is_cm, Some(false));
        assert_eq!(r.is_almost_cm, Some(true));
        assert_eq!(r.pd, Some(4));
        assert_eq!(r.rees_cm, Some(true));
    }

    #[test]
    fn paths_and_odd_cycles_are_cm() {
        let r = homological_report(&path(5), IdealFamily::Lss, q());
        assert_eq!(r.is_cm, Some(true));
        assert_eq!(r.rees_cm, Some(true));
        assert!(r.pd.is_none());

        let r = homological_report(&cycle(5), IdealFamily::Parity, q());
        assert_eq!(r.pd, Some(5));
        assert_eq!(r.is_cm, Some(true)); // depth = n = dim
        assert_eq!(r.height, Some(5));
    }

    #[test]
    fn tree_aci_flags() {
        let r = homological_report(&star(3), IdealFamily::Lss, q());
        assert_eq!(r.is_almost_cm, Some(true));
        assert_eq!(r.rees_cm, Some(true));
        assert!(r.pd.is_none()); // not theorem-covered for trees
        let r = homological_report(&star(4), IdealFamily::Lss, q());
        assert_eq!(r.is_almost_cm, Some(false));
    }

    #[test]
    fn family_regimes() {
        // permanental in char 2: only mu
        let f2 = FieldSpec::prime(2).unwrap();
        let r = homological_report(&net(), IdealFamily::Permanental, f2);
        assert_eq!(r.mu, 6);
        assert!(r.height.is_none());
        // binomial edge on bipartite graphs: parity-equivalent
        let r = homological_report(&cycle(4), IdealFamily::BinomialEdge, q());
        assert_eq!(r.height, Some(3));
        assert_eq!(r.pd, Some(4));
        // binomial edge on non-bipartite: only mu
        let r = homological_report(&net(), IdealFamily::BinomialEdge, q());
        assert!(r.height.is_none());
    }

    #[test]
    fn linear_type_examples() {
        let f101 = FieldSpec::prime(101).unwrap();
        let r = linear_type_report(&star(3), IdealFamily::Lss, f101).unwrap();
        assert_eq!(r.linear_type, Some(true));
        assert_eq!(r.d_sequence, Some(true));

        let r = linear_type_report(&complete(4), IdealFamily::BinomialEdge, q()).unwrap();
        assert_eq!(r.not_linear_type, Some(true));

        let r = linear_type_report(&cycle(5), IdealFamily::Lss, q()).unwrap();
        assert_eq!(r.fiber_cone_polynomial, Some(true));
        assert_eq!(r.analytic_spread, Some(5));
        assert_eq!(r.linear_type, None);
        assert_eq!(r.linear_type_conjectural, Some(true));

        let k23 = Graph::new(5, PatternGraph::K23.template().1).unwrap();
        let r = linear_type_report(&k23, IdealFamily::BinomialEdge, q()).unwrap();
        assert_eq!(r.k23_free, Some(false));
        assert_eq!(r.not_linear_type, Some(true));

        assert!(linear_type_report(&path(3), IdealFamily::Parity, q()).is_err());
    }

    use crate::graph::Graph;
}
