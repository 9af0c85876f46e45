//! Orbit enumeration over reduced words and limit-set sampling.
//!
//! The groups built here are side-pairing groups of Schottky type, so words
//! are enumerated as if the group were free on its generators. Matrices are
//! still deduplicated, and any coincidence is reported as a [`Collision`].

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Execution;
use crate::flute::FluteGroup;
use crate::geodesic::{Geodesic, Region};
use crate::moebius::{Boundary, Moebius};
use crate::monster::MonsterGroup;
use crate::tol;

pub const DEFAULT_TILE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TessError {
    #[error("orbit enumeration needs {needed} tiles, above the cap of {cap}")]
    BudgetExceeded { cap: usize, needed: usize },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("{arcs} boundary arcs but {labels} arc labels")]
    LabelMismatch { arcs: usize, labels: usize },
}

/// Generators with labels, a fundamental region and the sides to draw.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupPresentation {
    labels: Vec<String>,
    generators: Vec<Moebius>,
    domain: Region,
    boundary_arcs: Vec<Geodesic>,
    arc_labels: Vec<String>,
}

impl GroupPresentation {
    pub fn new(
        generators: Vec<(String, Moebius)>,
        domain: Region,
        boundary_arcs: Vec<Geodesic>,
        arc_labels: Vec<String>,
    ) -> Result<Self, TessError> {
        if generators.is_empty() {
            return Err(TessError::NoGenerators);
        }
        if arc_labels.len() != boundary_arcs.len() {
            return Err(TessError::LabelMismatch {
                arcs: boundary_arcs.len(),
                labels: arc_labels.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for (label, _) in &generators {
            if !seen.insert(label.clone()) {
                return Err(TessError::DuplicateLabel(label.clone()));
            }
        }
        let (labels, generators) = generators.into_iter().unzip();
        Ok(GroupPresentation {
            labels,
            generators,
            domain,
            boundary_arcs,
            arc_labels,
        })
    }

    /// Generators `g0, g1, …`; sides `γn+`, `γn-`.
    pub fn from_flute(group: &FluteGroup) -> Self {
        let generators = group
            .generators()
            .iter()
            .enumerate()
            .map(|(n, g)| (format!("g{n}"), *g))
            .collect();
        let mut arcs = Vec::new();
        let mut arc_labels = Vec::new();
        for (n, (plus, minus)) in group.sides().iter().enumerate() {
            arcs.extend([*plus, *minus]);
            arc_labels.extend([format!("γ{n}+"), format!("γ{n}-")]);
        }
        Self::new(generators, group.polygon(), arcs, arc_labels).expect("flute labels are unique")
    }

    /// Generators `f{n}`, `g{n}` per window index; sides `σ`, `σ̃`, `ρ`, `ρ̃`.
    pub fn from_monster(group: &MonsterGroup) -> Self {
        let mut generators = Vec::new();
        let mut arcs = Vec::new();
        let mut arc_labels = Vec::new();
        for p in &group.pairs {
            let n = p.index;
            generators.push((format!("f{n}"), p.f));
            generators.push((format!("g{n}"), p.g));
            arcs.extend(p.circles().map(Geodesic::HalfCircle));
            arc_labels.extend([
                format!("σ{n}"),
                format!("σ̃{n}"),
                format!("ρ{n}"),
                format!("ρ̃{n}"),
            ]);
        }
        Self::new(generators, group.region.clone(), arcs, arc_labels)
            .expect("window indices are unique")
    }

    pub fn generators(&self) -> &[Moebius] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }

    pub fn boundary_arcs(&self) -> &[Geodesic] {
        &self.boundary_arcs
    }

    pub fn arc_labels(&self) -> &[String] {
        &self.arc_labels
    }

    /// Map of a letter: the generator or its inverse.
    pub fn letter_map(&self, letter: Letter) -> Moebius {
        let g = self.generators[letter.generator];
        if letter.inverse {
            g.inverse()
        } else {
            g
        }
    }

    /// Composition of the word's letters, leftmost applied last.
    pub fn word_map(&self, word: &[Letter]) -> Moebius {
        word.iter().fold(Moebius::IDENTITY, |acc, l| {
            acc.compose(&self.letter_map(*l))
        })
    }

    pub fn word_label(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "id".to_string();
        }
        word.iter()
            .map(|l| {
                let name = &self.labels[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Letters in enumeration order: by generator, positive before inverse.
    fn alphabet(&self) -> Vec<Letter> {
        (0..self.generators.len())
            .flat_map(|generator| [false, true].map(|inverse| Letter { generator, inverse }))
            .collect()
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inverse_of(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "#{}^-1", self.generator)
        } else {
            write!(f, "#{}", self.generator)
        }
    }
}

/// Image of the fundamental domain's sides under one group element.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitTile {
    pub word: Vec<Letter>,
    pub map: Moebius,
    pub arcs: Vec<Geodesic>,
}

/// A reduced word whose matrix matched an earlier tile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Collision {
    pub word: Vec<Letter>,
    pub existing_tile: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    pub tiles: Vec<OrbitTile>,
    pub collisions: Vec<Collision>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    pub tile_cap: usize,
    pub tol: f64,
    pub exec: Execution,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            tile_cap: DEFAULT_TILE_CAP,
            tol: tol::GEOMETRY,
            exec: Execution::default(),
        }
    }
}

/// Hash index of matrices, matching within the mixed tolerance modulo `±I`.
///
/// Entries are bucketed on `asinh(v)`, which turns the relative part of the
/// tolerance into an absolute one; a match can only sit in the neighboring
/// bucket of each entry, so at most 16 buckets are probed.
struct MatrixIndex {
    step: f64,
    tol: f64,
    buckets: HashMap<[i64; 4], Vec<usize>>,
}

impl MatrixIndex {
    fn new(tol: f64) -> Self {
        MatrixIndex {
            step: (4.0 * tol).max(1e-12),
            tol,
            buckets: HashMap::new(),
        }
    }

    fn key_of(&self, e: [f64; 4]) -> [i64; 4] {
        e.map(|v| (v.asinh() / self.step).floor() as i64)
    }

    fn find(&self, m: &Moebius, maps: &[Moebius]) -> Option<usize> {
        let e = m.entries();
        for signed in [e, e.map(|v| -v)] {
            let cells: Vec<[i64; 2]> = signed
                .iter()
                .map(|&v| {
                    let slack = 2.0 * self.tol;
                    [
                        ((v.asinh() - slack) / self.step).floor() as i64,
                        ((v.asinh() + slack) / self.step).floor() as i64,
                    ]
                })
                .collect();
            for mask in 0..16u32 {
                let mut key = [0i64; 4];
                let mut redundant = false;
                for (k, cell) in cells.iter().enumerate() {
                    let hi = mask >> k & 1 == 1;
                    if hi && cell[0] == cell[1] {
                        redundant = true;
                        break;
                    }
                    key[k] = cell[hi as usize];
                }
                if redundant {
                    continue;
                }
                if let Some(ids) = self.buckets.get(&key) {
                    if let Some(&id) = ids.iter().find(|&&id| maps[id].approx_eq(m, self.tol)) {
                        return Some(id);
                    }
                }
            }
        }
        None
    }

    fn insert(&mut self, m: &Moebius, id: usize) {
        let key = self.key_of(m.entries());
        self.buckets.entry(key).or_default().push(id);
    }
}

pub fn enumerate_orbit(
    pres: &GroupPresentation,
    max_word_length: usize,
) -> Result<Orbit, TessError> {
    enumerate_orbit_with(pres, max_word_length, &OrbitConfig::default())
}

/// Breadth-first enumeration of freely reduced words up to
/// `max_word_length`, lexicographic within each length.
pub fn enumerate_orbit_with(
    pres: &GroupPresentation,
    max_word_length: usize,
    config: &OrbitConfig,
) -> Result<Orbit, TessError> {
    let alphabet = pres.alphabet();
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut maps: Vec<Moebius> = vec![Moebius::IDENTITY];
    let mut index = MatrixIndex::new(config.tol);
    index.insert(&Moebius::IDENTITY, 0);
    let mut collisions = Vec::new();
    let mut frontier: Vec<usize> = vec![0];

    for _ in 0..max_word_length {
        if frontier.is_empty() {
            break;
        }
        let children: Vec<Vec<(Vec<Letter>, Moebius)>> = config.exec.map(&frontier, |&id| {
            let word = &words[id];
            let last = word.last().copied();
            alphabet
                .iter()
                .filter(|l| Some(l.inverse_of()) != last)
                .map(|&l| {
                    let mut w = word.clone();
                    w.push(l);
                    (w, maps[id].compose(&pres.letter_map(l)))
                })
                .collect()
        });
        let mut next = Vec::new();
        for (word, map) in children.into_iter().flatten() {
            if let Some(existing_tile) = index.find(&map, &maps) {
                collisions.push(Collision {
                    word,
                    existing_tile,
                });
                continue;
            }
            let id = maps.len();
            if id + 1 > config.tile_cap {
                return Err(TessError::BudgetExceeded {
                    cap: config.tile_cap,
                    needed: id + 1,
                });
            }
            index.insert(&map, id);
            maps.push(map);
            words.push(word);
            next.push(id);
        }
        frontier = next;
    }

    let arcs = config.exec.map(&maps, |m| {
        pres.boundary_arcs
            .iter()
            .map(|g| g.image(m))
            .collect::<Vec<_>>()
    });
    let tiles = words
        .into_iter()
        .zip(maps)
        .zip(arcs)
        .map(|((word, map), arcs)| OrbitTile { word, map, arcs })
        .collect();
    Ok(Orbit { tiles, collisions })
}

pub fn limit_set_sample(
    pres: &GroupPresentation,
    max_word_length: usize,
) -> Result<Vec<Boundary>, TessError> {
    limit_set_sample_with(pres, max_word_length, &OrbitConfig::default())
}

/// Boundary fixed points of every non-identity enumerated element, sorted,
/// with points closer than the tolerance merged.
pub fn limit_set_sample_with(
    pres: &GroupPresentation,
    max_word_length: usize,
    config: &OrbitConfig,
) -> Result<Vec<Boundary>, TessError> {
    let orbit = enumerate_orbit_with(pres, max_word_length, config)?;
    Ok(fixed_points_of_tiles(&orbit.tiles, config))
}

pub fn fixed_points_of_tiles(tiles: &[OrbitTile], config: &OrbitConfig) -> Vec<Boundary> {
    let per_tile = config.exec.map(tiles, |t| {
        if t.word.is_empty() {
            Vec::new()
        } else {
            t.map
                .fixed_points_with(config.tol)
                .map_or_else(|_| Vec::new(), |_| t.map.boundary_fixed_points())
        }
    });
    let mut points: Vec<Boundary> = per_tile.into_iter().flatten().collect();
    points.sort_by(|a, b| a.total_cmp(b));
    let mut merged: Vec<Boundary> = Vec::with_capacity(points.len());
    for p in points {
        match merged.last() {
            Some(q) if q.approx_eq(p, config.tol) => {}
            _ => merged.push(p),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flute::{build_flute, SequenceSpec};

    fn flute11() -> GroupPresentation {
        let spec = SequenceSpec::finite(vec![1.0, 1.0]).unwrap();
        GroupPresentation::from_flute(&build_flute(&spec, 2).unwrap())
    }

    #[test]
    fn depth_zero_is_identity() {
        let orbit = enumerate_orbit(&flute11(), 0).unwrap();
        assert_eq!(orbit.tiles.len(), 1);
        assert!(orbit.tiles[0].word.is_empty());
        assert_eq!(orbit.tiles[0].map, Moebius::IDENTITY);
    }

    #[test]
    fn depth_one_and_two_counts() {
        let pres = flute11();
        assert_eq!(enumerate_orbit(&pres, 1).unwrap().tiles.len(), 5);
        let orbit = enumerate_orbit(&pres, 2).unwrap();
        assert_eq!(orbit.tiles.len(), 17);
        assert!(orbit.collisions.is_empty());
    }

    #[test]
    fn order_is_breadth_first_then_lexicographic() {
        let pres = flute11();
        let orbit = enumerate_orbit(&pres, 2).unwrap();
        let labels: Vec<String> = orbit
            .tiles
            .iter()
            .map(|t| pres.word_label(&t.word))
            .collect();
        assert_eq!(&labels[..5], &["id", "g0", "g0^-1", "g1", "g1^-1"]);
        assert_eq!(labels[5], "g0 g0");
        assert_eq!(labels[6], "g0 g1");
        for w in orbit.tiles.windows(2) {
            assert!(
                (w[0].word.len(), &w[0].word) < (w[1].word.len(), &w[1].word),
                "order broken"
            );
        }
    }

    #[test]
    fn relations_are_reported_as_collisions() {
        // A generator listed twice under two labels makes every word in the
        // second copy a duplicate.
        let t = Moebius::translation(1.0);
        let pres = GroupPresentation::new(
            vec![("t".into(), t), ("u".into(), t)],
            Region::default(),
            vec![],
            vec![],
        )
        .unwrap();
        let orbit = enumerate_orbit(&pres, 1).unwrap();
        assert_eq!(orbit.tiles.len(), 3);
        assert_eq!(orbit.collisions.len(), 2);
        assert_eq!(orbit.collisions[0].existing_tile, 1);
    }

    #[test]
    fn budget_is_enforced() {
        let config = OrbitConfig {
            tile_cap: 10,
            ..OrbitConfig::default()
        };
        assert_eq!(
            enumerate_orbit_with(&flute11(), 2, &config),
            Err(TessError::BudgetExceeded {
                cap: 10,
                needed: 11
            })
        );
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(
            GroupPresentation::new(vec![], Region::default(), vec![], vec![]),
            Err(TessError::NoGenerators)
        );
        let t = Moebius::translation(1.0);
        assert_eq!(
            GroupPresentation::new(
                vec![("t".into(), t), ("t".into(), t)],
                Region::default(),
                vec![],
                vec![]
            ),
            Err(TessError::DuplicateLabel("t".into()))
        );
    }

    #[test]
    fn limit_points_at_depth_one() {
        let pts = limit_set_sample(&flute11(), 1).unwrap();
        let r2 = 2f64.sqrt();
        for expected in [-r2, 0.0, r2] {
            assert!(
                pts.iter()
                    .any(|p| p.approx_eq(Boundary::Finite(expected), 1e-12)),
                "missing {expected}"
            );
        }
        assert_eq!(pts.len(), 3);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let pres = flute11();
        let seq = OrbitConfig {
            exec: Execution::Sequential,
            ..OrbitConfig::default()
        };
        let par = OrbitConfig {
            exec: Execution::Parallel,
            ..OrbitConfig::default()
        };
        assert_eq!(
            enumerate_orbit_with(&pres, 4, &seq).unwrap(),
            enumerate_orbit_with(&pres, 4, &par).unwrap()
        );
    }
}
