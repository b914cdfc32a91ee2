//! Combinatorial minimal-prime data for the LSS and parity families:
//! the `Q_T` primes, the signed parity primes with the sign-split
//! minimality criterion, and ideal heights via `n + |T| - b(T)`.

use crate::error::{Error, Result};
use crate::graph::{
    component_profile, in_cut_family, mask_to_set, profile_table, Graph, ProfileTable,
};
use crate::ideals::IdealFamily;
use crate::poly::{edge_generator, EdgeGen, FieldSpec, Polynomial, Var};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// Which decomposition shape a component belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrimeFamily {
    /// `Q_T(G)`: complete / complete-bipartite blocks.
    LssQ,
    /// `p_T^sigma(G)`: walk blocks and sign blocks.
    ParityP,
}

/// One structured chunk of a prime's generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PrimeBlock {
    /// `x_i, y_i` for `i` in `T`.
    VertexVars { vertices: Vec<u32> },
    /// `I_{K_n}` on a non-bipartite component: all `g`, all `f`, all `h`.
    Complete { vertices: Vec<u32> },
    /// `I_{K_{A,B}}` on a bipartite component: `g` across, `f` within parts.
    CompleteBipartite { part_a: Vec<u32>, part_b: Vec<u32> },
    /// Parity walk block: `gbar` across the bipartition (odd walks),
    /// `f` within parts (even walks).
    Walk { part_a: Vec<u32>, part_b: Vec<u32> },
    /// `x_i + y_i` (or `x_i - y_i`) over a non-bipartite component.
    SignVars { vertices: Vec<u32>, sign: Sign },
}

impl PrimeBlock {
    /// Materializes the block as explicit polynomials.
    pub fn polynomials(&self, field: FieldSpec) -> Vec<Polynomial> {
        let mut out = Vec::new();
        match self {
            PrimeBlock::VertexVars { vertices } => {
                for &v in vertices {
                    out.push(Polynomial::variable(field, Var::X(v)));
                    out.push(Polynomial::variable(field, Var::Y(v)));
                }
            }
            PrimeBlock::Complete { vertices } => {
                for (a, &i) in vertices.iter().enumerate() {
                    for &j in &vertices[a + 1..] {
                        out.push(edge_generator(EdgeGen::G, i, j, field).unwrap());
                    }
                }
                for (a, &i) in vertices.iter().enumerate() {
                    for &j in &vertices[a + 1..] {
                        out.push(edge_generator(EdgeGen::F, i, j, field).unwrap());
                    }
                }
                for &i in vertices {
                    out.push(edge_generator(EdgeGen::H, i, i, field).unwrap());
                }
            }
            PrimeBlock::CompleteBipartite { part_a, part_b }
            | PrimeBlock::Walk { part_a, part_b } => {
                let across = if matches!(self, PrimeBlock::Walk { .. }) {
                    EdgeGen::GBar
                } else {
                    EdgeGen::G
                };
                let mut crossing: Vec<(u32, u32)> = Vec::new();
                for &i in part_a {
                    for &j in part_b {
                        crossing.push((i.min(j), i.max(j)));
                    }
                }
                crossing.sort_unstable();
                for (i, j) in crossing {
                    out.push(edge_generator(across, i, j, field).unwrap());
                }
                for part in [part_a, part_b] {
                    for (a, &i) in part.iter().enumerate() {
                        for &j in &part[a + 1..] {
                            out.push(edge_generator(EdgeGen::F, i, j, field).unwrap());
                        }
                    }
                }
            }
            PrimeBlock::SignVars { vertices, sign } => {
                for &v in vertices {
                    let x = Polynomial::variable(field, Var::X(v));
                    let y = Polynomial::variable(field, Var::Y(v));
                    out.push(match sign {
                        Sign::Plus => x.add(&y).unwrap(),
                        Sign::Minus => x.sub(&y).unwrap(),
                    });
                }
            }
        }
        out
    }

    /// Height contribution of the block (blocks of one prime live on
    /// disjoint variable sets, so contributions add).
    pub fn height(&self) -> u64 {
        match self {
            PrimeBlock::VertexVars { vertices } => 2 * vertices.len() as u64,
            PrimeBlock::Complete { vertices } => vertices.len() as u64,
            PrimeBlock::CompleteBipartite { part_a, part_b }
            | PrimeBlock::Walk { part_a, part_b } => (part_a.len() + part_b.len()) as u64 - 1,
            PrimeBlock::SignVars { vertices, .. } => vertices.len() as u64,
        }
    }
}

/// Per-component data inside a candidate prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePart {
    pub vertices: Vec<u32>,
    pub is_bipartite: bool,
    pub parts: Option<(Vec<u32>, Vec<u32>)>,
    /// Assigned sign; present exactly on non-bipartite parity components.
    pub sign: Option<Sign>,
}

/// One candidate minimal prime: `Q_T(G)` or `p_T^sigma(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeComponent {
    pub family: PrimeFamily,
    pub t: Vec<u32>,
    pub components: Vec<PrimePart>,
    pub height: u64,
    /// Parity only: whether the candidate passes the sign-split criterion.
    pub sign_split: Option<bool>,
    pub blocks: Vec<PrimeBlock>,
}

impl PrimeComponent {
    /// Recomputes the height from the block data; must equal `self.height`.
    pub fn height_from_blocks(&self) -> u64 {
        self.blocks.iter().map(PrimeBlock::height).sum()
    }
}

/// `Q_T(G)`: vertex variables on `T` plus a complete block per
/// non-bipartite component and a complete-bipartite block per bipartite
/// component of `G[V \ T]`. Height `n + |T| - b(T)`.
pub fn lss_prime(g: &Graph, t: &BTreeSet<u32>) -> Result<PrimeComponent> {
    let profile = component_profile(g, t)?;
    let mut blocks = Vec::new();
    if !t.is_empty() {
        blocks.push(PrimeBlock::VertexVars {
            vertices: t.iter().copied().collect(),
        });
    }
    let mut components = Vec::new();
    for comp in &profile.components {
        if comp.is_bipartite {
            let (a, b) = comp.parts.clone().unwrap();
            blocks.push(PrimeBlock::CompleteBipartite {
                part_a: a.clone(),
                part_b: b.clone(),
            });
            components.push(PrimePart {
                vertices: comp.vertices.clone(),
                is_bipartite: true,
                parts: Some((a, b)),
                sign: None,
            });
        } else {
            blocks.push(PrimeBlock::Complete {
                vertices: comp.vertices.clone(),
            });
            components.push(PrimePart {
                vertices: comp.vertices.clone(),
                is_bipartite: false,
                parts: None,
                sign: None,
            });
        }
    }
    let height = g.n() as u64 + t.len() as u64 - profile.b as u64;
    Ok(PrimeComponent {
        family: PrimeFamily::LssQ,
        t: t.iter().copied().collect(),
        components,
        height,
        sign_split: None,
        blocks,
    })
}

/// `A_T = { t in T : b(T) = b(T \ {t}) }`.
pub fn reattachable_vertices(g: &Graph, t: &BTreeSet<u32>) -> Result<Vec<u32>> {
    let base = component_profile(g, t)?;
    let mut out = Vec::new();
    for &v in t {
        let mut smaller = t.clone();
        smaller.remove(&v);
        let p = component_profile(g, &smaller)?;
        if base.b == p.b {
            out.push(v);
        }
    }
    Ok(out)
}

/// Indices (into the component list of `G[V \ T]`) of the components
/// joined when `t` is re-added, i.e. those containing a neighbor of `t`.
pub fn joined_components(g: &Graph, t_set: &BTreeSet<u32>, t: u32) -> Result<Vec<usize>> {
    let profile = component_profile(g, t_set)?;
    let nb: BTreeSet<u32> = g.neighbors(t).into_iter().collect();
    Ok(profile
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.vertices.iter().any(|v| nb.contains(v)))
        .map(|(i, _)| i)
        .collect())
}

/// All signed candidates `p_T^sigma(G)`, one per `sigma` over the
/// non-bipartite components, each carrying its sign-split flag. The
/// sign-split criterion: for every `t` in `A_T`, the signs on the
/// non-bipartite components joined by `t` must not all agree.
pub fn parity_primes(g: &Graph, t: &BTreeSet<u32>) -> Result<Vec<PrimeComponent>> {
    let profile = component_profile(g, t)?;
    let nonbip: Vec<usize> = profile
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_bipartite)
        .map(|(i, _)| i)
        .collect();
    let k = nonbip.len();
    if k > 20 {
        return Err(Error::ResourceLimit(format!(
            "{k} non-bipartite components; sigma enumeration is guarded at 20"
        )));
    }
    // constraints: per reattachable vertex, the positions (within the
    // non-bipartite list) of the components it joins
    let mut constraints: Vec<Vec<usize>> = Vec::new();
    for v in reattachable_vertices(g, t)? {
        let joined = joined_components(g, t, v)?;
        let positions: Vec<usize> = joined
            .iter()
            .filter_map(|ci| nonbip.iter().position(|x| x == ci))
            .collect();
        constraints.push(positions);
    }
    let height = g.n() as u64 + t.len() as u64 - profile.b as u64;
    let mut out = Vec::new();
    for mask in 0u32..1 << k {
        let split = constraints.iter().all(|positions| {
            let signs: BTreeSet<bool> = positions.iter().map(|&p| mask >> p & 1 == 1).collect();
            signs.len() >= 2
        });
        let mut blocks = Vec::new();
        if !t.is_empty() {
            blocks.push(PrimeBlock::VertexVars {
                vertices: t.iter().copied().collect(),
            });
        }
        let mut components = Vec::new();
        for (idx, comp) in profile.components.iter().enumerate() {
            if comp.is_bipartite {
                let (a, b) = comp.parts.clone().unwrap();
                blocks.push(PrimeBlock::Walk {
                    part_a: a.clone(),
                    part_b: b.clone(),
                });
                components.push(PrimePart {
                    vertices: comp.vertices.clone(),
                    is_bipartite: true,
                    parts: Some((a, b)),
                    sign: None,
                });
            } else {
                let pos = nonbip.iter().position(|&x| x == idx).unwrap();
                let sign = if mask >> pos & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                blocks.push(PrimeBlock::SignVars {
                    vertices: comp.vertices.clone(),
                    sign,
                });
                components.push(PrimePart {
                    vertices: comp.vertices.clone(),
                    is_bipartite: false,
                    parts: None,
                    sign: Some(sign),
                });
            }
        }
        out.push(PrimeComponent {
            family: PrimeFamily::ParityP,
            t: t.iter().copied().collect(),
            components,
            height,
            sign_split: Some(split),
            blocks,
        });
    }
    Ok(out)
}

/// Result of `minimal_primes`: the decomposition actually used plus a note
/// when the requested family was transported to parity coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalPrimes {
    pub family: IdealFamily,
    pub decomposition: PrimeFamily,
    pub note: Option<String>,
    pub primes: Vec<PrimeComponent>,
}

fn guarded_cut_masks(g: &Graph) -> Result<(ProfileTable, Vec<usize>)> {
    let guard = crate::max_n_guard(24);
    if g.n() > guard {
        return Err(Error::ResourceLimit(format!(
            "minimal-prime enumeration over 2^n subsets; n = {} exceeds guard {}",
            g.n(),
            guard
        )));
    }
    let table = profile_table(g);
    let masks: Vec<usize> = (0..1usize << g.n())
        .filter(|&m| in_cut_family(&table, m))
        .collect();
    Ok((table, masks))
}

fn sort_t_lex(masks: &mut [usize]) {
    masks.sort_by_key(|&m| mask_to_set(m).into_iter().collect::<Vec<u32>>());
}

/// Minimal primes of `L_G` or `I_G`.
///
/// * LSS over a field with char != 2 and no sqrt(-1): the `Q_T` primes,
///   `T` in the cut-set family.
/// * LSS in char 2 (where `L_G = I_G`) or with sqrt(-1) present (where
///   `L_G` is isomorphic to `I_G`): parity primes with an explanatory note.
/// * Parity over any field: the sign-split `p_T^sigma`, `T` in the
///   cut-set family.
pub fn minimal_primes(fam: IdealFamily, g: &Graph, field: FieldSpec) -> Result<MinimalPrimes> {
    match fam {
        IdealFamily::Lss => {
            if field.characteristic() != 2 && !field.has_sqrt_minus_one() {
                let (_, mut masks) = guarded_cut_masks(g)?;
                sort_t_lex(&mut masks);
                let primes: Result<Vec<PrimeComponent>> = masks
                    .into_iter()
                    .map(|m| lss_prime(g, &mask_to_set(m)))
                    .collect();
                Ok(MinimalPrimes {
                    family: fam,
                    decomposition: PrimeFamily::LssQ,
                    note: None,
                    primes: primes?,
                })
            } else {
                let note = if field.characteristic() == 2 {
                    "characteristic 2: the LSS and parity ideals coincide; \
                     parity decomposition applies verbatim"
                } else {
                    "sqrt(-1) present: LSS is isomorphic to the parity ideal; \
                     primes reported in parity coordinates"
                };
                let mut inner = minimal_primes(IdealFamily::Parity, g, field)?;
                inner.family = fam;
                inner.note = Some(note.to_string());
                Ok(inner)
            }
        }
        IdealFamily::Parity => {
            let (_, mut masks) = guarded_cut_masks(g)?;
            sort_t_lex(&mut masks);
            let mut primes = Vec::new();
            for m in masks {
                let t = mask_to_set(m);
                for cand in parity_primes(g, &t)? {
                    if cand.sign_split == Some(true) {
                        primes.push(cand);
                    }
                }
            }
            Ok(MinimalPrimes {
                family: fam,
                decomposition: PrimeFamily::ParityP,
                note: None,
                primes,
            })
        }
        IdealFamily::BinomialEdge | IdealFamily::Permanental => Err(Error::RegimeUnsupported(
            "minimal primes are computed for the LSS and parity families; \
             use ideal_height for transported values"
                .into(),
        )),
    }
}

/// Minimum height over parity minimal primes (any field).
fn parity_min_height(g: &Graph) -> Result<u64> {
    let (table, masks) = guarded_cut_masks(g)?;
    let mut best: Option<u64> = None;
    for m in masks {
        let h = g.n() as u64 + (m.count_ones() as u64) - table.b[m] as u64;
        if best.map(|b| h >= b).unwrap_or(false) {
            continue;
        }
        let t = mask_to_set(m);
        if parity_primes(g, &t)?
            .iter()
            .any(|c| c.sign_split == Some(true))
        {
            best = Some(h);
        }
    }
    best.ok_or_else(|| Error::PreconditionViolated("no minimal prime candidates".into()))
}

/// Minimum height over `Q_T`, `T` in the cut-set family.
fn lss_min_height(g: &Graph) -> Result<u64> {
    let (table, masks) = guarded_cut_masks(g)?;
    masks
        .into_iter()
        .map(|m| g.n() as u64 + m.count_ones() as u64 - table.b[m] as u64)
        .min()
        .ok_or_else(|| Error::PreconditionViolated("no minimal prime candidates".into()))
}

/// Height of the ideal: minimum height of a minimal prime. Families are
/// routed through the decomposition available in the given field:
///
/// * parity: direct, any field;
/// * LSS: `Q_T` route when char != 2 and no sqrt(-1), otherwise equal to
///   parity (equal or isomorphic ideals);
/// * permanental: isomorphic to parity when char != 2; in char 2 it equals
///   the binomial edge ideal, which is out of scope;
/// * binomial edge: isomorphic to the parity ideal for bipartite graphs;
///   unsupported otherwise.
pub fn ideal_height(fam: IdealFamily, g: &Graph, field: FieldSpec) -> Result<u64> {
    match fam {
        IdealFamily::Parity => parity_min_height(g),
        IdealFamily::Lss => {
            if field.characteristic() != 2 && !field.has_sqrt_minus_one() {
                lss_min_height(g)
            } else {
                parity_min_height(g)
            }
        }
        IdealFamily::Permanental => {
            if field.characteristic() == 2 {
                Err(Error::RegimeUnsupported(
                    "characteristic 2: the permanental ideal equals the binomial edge ideal, \
                     whose decomposition is not implemented"
                        .into(),
                ))
            } else {
                parity_min_height(g)
            }
        }
        IdealFamily::BinomialEdge => {
            if g.is_bipartite() {
                parity_min_height(g)
            } else {
                Err(Error::RegimeUnsupported(
                    "binomial edge ideal heights are implemented only for bipartite graphs \
                     (via the coordinate change onto the parity ideal)"
                        .into(),
                ))
            }
        }
    }
}
