//! Generator sets of the four ideal families and the colon-ideal
//! generators used to pass from a bipartite graph to a non-bipartite one.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{edge_generator, EdgeGen, FieldSpec, Polynomial};
use serde::Serialize;
use std::collections::BTreeSet;

/// The four ideal families. Generator kind per edge `{i,j}` (i < j):
/// `J -> f_{i,j}`, `L -> g_{i,j}`, `I -> gbar_{i,j}`, `Pi -> x_i y_j + x_j y_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IdealFamily {
    BinomialEdge,
    Lss,
    Parity,
    Permanental,
}

impl IdealFamily {
    pub fn edge_kind(self) -> EdgeGen {
        match self {
            IdealFamily::BinomialEdge => EdgeGen::F,
            IdealFamily::Lss => EdgeGen::G,
            IdealFamily::Parity => EdgeGen::GBar,
            IdealFamily::Permanental => EdgeGen::Pi,
        }
    }

    /// CLI letter: J, L, I, Pi.
    pub fn parse(s: &str) -> Option<IdealFamily> {
        match s {
            "J" | "j" => Some(IdealFamily::BinomialEdge),
            "L" | "l" => Some(IdealFamily::Lss),
            "I" | "i" => Some(IdealFamily::Parity),
            "Pi" | "pi" | "PI" => Some(IdealFamily::Permanental),
            _ => None,
        }
    }
}

impl std::fmt::Display for IdealFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IdealFamily::BinomialEdge => "J",
            IdealFamily::Lss => "L",
            IdealFamily::Parity => "I",
            IdealFamily::Permanental => "Pi",
        };
        write!(f, "{s}")
    }
}

/// One generator per edge, in sorted edge order.
pub fn ideal_generators(fam: IdealFamily, g: &Graph, field: FieldSpec) -> Vec<Polynomial> {
    g.edges()
        .iter()
        .map(|&(i, j)| {
            edge_generator(fam.edge_kind(), i, j, field).expect("i < j by canonical edge list")
        })
        .collect()
}

/// Generators of `(L_{G\e} : g_e)` (or the parity analogue): the base
/// generators of `G \ e` plus `f_{i,j}` for every 2-subset of the
/// `G \ e`-neighborhood of either endpoint of `e`. Requires `G`
/// non-bipartite with `G \ e` bipartite; duplicate `f`'s are emitted once.
pub fn colon_generators(g: &Graph, e: (u32, u32), fam: IdealFamily) -> Result<Vec<Polynomial>> {
    if !matches!(fam, IdealFamily::Lss | IdealFamily::Parity) {
        return Err(Error::PreconditionViolated(
            "colon generators are defined for the LSS and parity families".into(),
        ));
    }
    let (u, v) = (e.0.min(e.1), e.0.max(e.1));
    if !g.has_edge(u, v) {
        return Err(Error::PreconditionViolated(format!(
            "{{{u},{v}}} is not an edge"
        )));
    }
    if g.is_bipartite() {
        return Err(Error::PreconditionViolated(
            "graph must be non-bipartite".into(),
        ));
    }
    let base = g.without_edge(u, v);
    if !base.is_bipartite() {
        return Err(Error::PreconditionViolated(
            "graph minus the edge must be bipartite".into(),
        ));
    }
    let field = FieldSpec::rationals();
    let mut out = ideal_generators(fam, &base, field);
    let mut extra: BTreeSet<(u32, u32)> = BTreeSet::new();
    for w in [u, v] {
        let nb = base.neighbors(w);
        for a in 0..nb.len() {
            for b in a + 1..nb.len() {
                extra.insert((nb[a], nb[b]));
            }
        }
    }
    for (i, j) in extra {
        out.push(edge_generator(EdgeGen::F, i, j, field)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::*;
    use crate::poly::RingMap;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn generators_per_edge() {
        let gens = ideal_generators(IdealFamily::Lss, &path(3), q());
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].render(), "x1*x2 + y1*y2");
        assert_eq!(gens[1].render(), "x2*x3 + y2*y3");

        let gens = ideal_generators(IdealFamily::Parity, &cycle(3), q());
        let rendered: Vec<String> = gens.iter().map(|p| p.render()).collect();
        assert_eq!(
            rendered,
            vec!["x1*x2 - y1*y2", "x1*x3 - y1*y3", "x2*x3 - y2*y3"]
        );

        let single = crate::graph::Graph::new(2, vec![(1, 2)]).unwrap();
        let gens = ideal_generators(IdealFamily::Permanental, &single, q());
        assert_eq!(gens[0].render(), "x2*y1 + x1*y2");
    }

    #[test]
    fn char2_collapses_families() {
        let f2 = FieldSpec::prime(2).unwrap();
        for g in [path(4), cycle(5), star(3), net()] {
            assert_eq!(
                ideal_generators(IdealFamily::Lss, &g, f2),
                ideal_generators(IdealFamily::Parity, &g, f2)
            );
            assert_eq!(
                ideal_generators(IdealFamily::Permanental, &g, f2),
                ideal_generators(IdealFamily::BinomialEdge, &g, f2)
            );
        }
    }

    #[test]
    fn phi_maps_send_binomial_edge_to_lss_and_parity() {
        // bipartite graphs: Phi1(J) = L and Phi2(J) = I up to units
        for g in [path(4), cycle(4), star(3)] {
            let prof = crate::graph::component_profile(&g, &Default::default()).unwrap();
            let mut part2: Vec<u32> = Vec::new();
            for comp in &prof.components {
                part2.extend(comp.parts.as_ref().unwrap().1.iter());
            }
            let phi1 = RingMap::Phi1 {
                part2: part2.clone(),
            };
            let phi2 = RingMap::Phi2 { part2 };
            let jg = ideal_generators(IdealFamily::BinomialEdge, &g, q());
            let lg = ideal_generators(IdealFamily::Lss, &g, q());
            let ig = ideal_generators(IdealFamily::Parity, &g, q());
            for ((j, l), i) in jg.iter().zip(&lg).zip(&ig) {
                let img1 = phi1.apply(j).unwrap();
                assert!(
                    img1 == *l || img1 == l.neg(),
                    "phi1 image not a unit multiple"
                );
                let img2 = phi2.apply(j).unwrap();
                assert!(
                    img2 == *i || img2 == i.neg(),
                    "phi2 image not a unit multiple"
                );
            }
        }
    }

    #[test]
    fn colon_triangle_has_no_extras() {
        let gens = colon_generators(&cycle(3), (1, 3), IdealFamily::Lss).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].render(), "x1*x2 + y1*y2");
        assert_eq!(gens[1].render(), "x2*x3 + y2*y3");
    }

    #[test]
    fn colon_with_pendants_adds_f_generators() {
        // triangle 1,2,3 + pendant 4 at 1 + pendant 5 at 3, e = {1,3}
        let g = crate::graph::Graph::new(5, vec![(1, 2), (2, 3), (1, 3), (1, 4), (3, 5)]).unwrap();
        let gens = colon_generators(&g, (1, 3), IdealFamily::Parity).unwrap();
        // 4 base generators + f_{2,4} + f_{2,5}
        assert_eq!(gens.len(), 6);
        let tail: Vec<String> = gens[4..].iter().map(|p| p.render()).collect();
        assert_eq!(tail, vec!["-x4*y2 + x2*y4", "-x5*y2 + x2*y5"]);
    }

    #[test]
    fn colon_duplicates_suppressed() {
        // C4 1-2-3-4 plus chord {1,3}: N(1) = N(3) = {2,4}
        let g = chorded_cycle(4, 1, 3);
        let gens = colon_generators(&g, (1, 3), IdealFamily::Lss).unwrap();
        assert_eq!(gens.len(), 5); // 4 base + f_{2,4} once
        assert_eq!(gens[4].render(), "-x4*y2 + x2*y4");
    }

    #[test]
    fn colon_preconditions() {
        assert!(colon_generators(&cycle(4), (1, 2), IdealFamily::Lss).is_err()); // bipartite
        let g = two_triangles_with_bridge();
        // removing the bridge leaves two triangles: still non-bipartite
        assert!(colon_generators(&g, (3, 4), IdealFamily::Lss).is_err());
    }

    fn two_triangles_with_bridge() -> crate::graph::Graph {
        crate::graph::Graph::new(
            6,
            vec![(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn generators_have_distinct_supports() {
        // mu = |E| because the per-edge binomials use pairwise distinct
        // monomial supports
        for g in [path(5), cycle(6), net(), complete(4)] {
            for fam in [
                IdealFamily::BinomialEdge,
                IdealFamily::Lss,
                IdealFamily::Parity,
                IdealFamily::Permanental,
            ] {
                let gens = ideal_generators(fam, &g, q());
                assert_eq!(gens.len(), g.edge_count());
                let mut supports: Vec<Vec<String>> = gens
                    .iter()
                    .map(|p| p.terms().map(|(m, _)| format!("{m}")).collect())
                    .collect();
                supports.sort();
                let before = supports.len();
                supports.dedup();
                assert_eq!(before, supports.len(), "{fam} on {}", g.encode());
            }
        }
    }

    #[test]
    fn colon_extras_satisfy_claw_identity() {
        // every extra f_{i,j} pairs with the claw relation against g_e:
        // f_{u,l} g_{v,k} - f_{u,k} g_{v,l} = f_{k,l} g_{u,v}
        let f = q();
        let fe = |i, j| edge_generator(EdgeGen::F, i, j, f).unwrap();
        let ge = |i, j| edge_generator(EdgeGen::G, i, j, f).unwrap();
        // claw center 1 with leaves {3, 2, 4}, e = {1,3}: (u,v,k,l) = (3,1,2,4)
        let lhs = fe(3, 4)
            .mul(&ge(1, 2))
            .unwrap()
            .sub(&fe(3, 2).mul(&ge(1, 4)).unwrap())
            .unwrap();
        let rhs = fe(2, 4).mul(&ge(1, 3)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
