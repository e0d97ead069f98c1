//! Surface groups `<x_1, y_1, ..., x_g, y_g, d_1, ..., d_m | prod [x_i, y_i] prod d_i>`
//! and homomorphisms from them into right-angled Artin groups.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::WordError;
use crate::graph::{Graph, VertexId};

use super::free::free_reduce;
use super::{CliqueConjugacy, Letter, Word, WordEngine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePresentation {
    pub genus: usize,
    pub boundary: usize,
}

impl SurfacePresentation {
    pub fn new(genus: usize, boundary: usize) -> Self {
        SurfacePresentation { genus, boundary }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler_characteristic() < 0
    }

    /// `x1, y1, ..., xg, yg, d1, ..., dm`.
    pub fn generators(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        for i in 1..=self.genus {
            out.push(gen_name("x", i));
            out.push(gen_name("y", i));
        }
        out.extend((1..=self.boundary).map(|i| gen_name("d", i)));
        out
    }

    /// `[x1, y1] ... [xg, yg] d1 ... dm`.
    pub fn relator(&self) -> Word {
        let letter = |g: VertexId| Word(vec![Letter::new(g, false)]);
        let mut w = Word::empty();
        for i in 1..=self.genus {
            w = w.concat(&Word::commutator(&letter(gen_name("x", i)), &letter(gen_name("y", i))));
        }
        for i in 1..=self.boundary {
            w = w.concat(&letter(gen_name("d", i)));
        }
        w
    }

    fn check_word(&self, w: &Word) -> Result<(), WordError> {
        let gens: HashSet<VertexId> = self.generators().into_iter().collect();
        match w.generators().find(|g| !gens.contains(*g)) {
            Some(g) => Err(WordError::UnknownGenerator(g.to_string())),
            None => Ok(()),
        }
    }

    /// Triviality in the surface group: free reduction after eliminating
    /// `d_m` when there is boundary, Dehn's algorithm for closed genus at
    /// least two, abelianisation for the torus.
    pub fn is_trivial(&self, w: &Word) -> Result<bool, WordError> {
        self.check_word(w)?;
        if self.boundary > 0 {
            let last = gen_name("d", self.boundary);
            let others = Word(self.relator().0[..self.relator().len() - 1].to_vec());
            let replacement = others.inverse();
            let mut out = Vec::new();
            for l in &w.0 {
                if l.generator == last {
                    let r = if l.inverse { others.clone() } else { replacement.clone() };
                    out.extend(r.0);
                } else {
                    out.push(l.clone());
                }
            }
            return Ok(free_reduce(&Word(out)).is_empty());
        }
        match self.genus {
            0 => Ok(true),
            1 => {
                let mut sums: BTreeMap<&VertexId, i64> = BTreeMap::new();
                for l in &w.0 {
                    *sums.entry(&l.generator).or_default() += if l.inverse { -1 } else { 1 };
                }
                Ok(sums.values().all(|&s| s == 0))
            }
            g => Ok(dehn_reduce(g, w).is_empty()),
        }
    }
}

fn gen_name(prefix: &str, i: usize) -> VertexId {
    VertexId::new(format!("{prefix}{i}")).expect("valid generator name")
}

/// Letter codes for surface generators: generator `k` is `2k`, its inverse `2k + 1`.
fn relator_pieces(genus: usize, min_len: usize) -> Vec<Vec<usize>> {
    let r: Vec<usize> = (0..genus).flat_map(|i| [4 * i, 4 * i + 2, 4 * i + 1, 4 * i + 3]).collect();
    let r_inv: Vec<usize> = r.iter().rev().map(|&c| c ^ 1).collect();
    let n = r.len();
    let mut out = Vec::new();
    for base in [&r, &r_inv] {
        for k in 0..n {
            out.push((0..min_len).map(|i| base[(k + i) % n]).collect());
        }
    }
    out
}

fn surface_codes(genus: usize, w: &Word) -> Vec<usize> {
    let gens: Vec<VertexId> = SurfacePresentation::new(genus, 0).generators();
    w.0.iter()
        .map(|l| 2 * gens.iter().position(|g| *g == l.generator).expect("checked generator") + l.inverse as usize)
        .collect()
}

/// Dehn's algorithm for the closed surface of genus `genus >= 2`: freely
/// reduce, and replace any piece of more than half a cyclic conjugate of the
/// relator (or its inverse) by the inverse of the rest. The result is empty
/// iff `w` is trivial.
pub fn dehn_reduce(genus: usize, w: &Word) -> Word {
    assert!(genus >= 2, "Dehn's algorithm needs genus at least 2");
    let rel_len = 4 * genus;
    let full = relator_pieces(genus, rel_len);
    let mut cur = surface_codes(genus, w);
    'again: loop {
        let mut red: Vec<usize> = Vec::with_capacity(cur.len());
        for &c in &cur {
            if red.last() == Some(&(c ^ 1)) {
                red.pop();
            } else {
                red.push(c);
            }
        }
        cur = red;
        for start in 0..cur.len() {
            for r in &full {
                let k = cur[start..].iter().zip(r).take_while(|(a, b)| a == b).count();
                if 2 * k > rel_len {
                    let rest: Vec<usize> = r[k..].iter().rev().map(|&c| c ^ 1).collect();
                    cur.splice(start..start + k, rest);
                    continue 'again;
                }
            }
        }
        break;
    }
    let gens = SurfacePresentation::new(genus, 0).generators();
    Word(cur.into_iter().map(|c| Letter::new(gens[c / 2].clone(), c % 2 == 1)).collect())
}

/// A homomorphism given by the images of the surface generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceHom {
    pub presentation: SurfacePresentation,
    pub images: BTreeMap<String, Word>,
}

impl SurfaceHom {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn validate(&self) -> Result<(), WordError> {
        let gens = self.presentation.generators();
        if let Some(g) = gens.iter().find(|g| !self.images.contains_key(g.as_str())) {
            return Err(WordError::MissingImage(g.to_string()));
        }
        if let Some(k) = self.images.keys().find(|k| !gens.iter().any(|g| g.as_str() == k.as_str())) {
            return Err(WordError::UnexpectedImage(k.clone()));
        }
        Ok(())
    }

    pub fn image(&self, generator: &VertexId) -> Result<&Word, WordError> {
        self.images.get(generator.as_str()).ok_or_else(|| WordError::MissingImage(generator.to_string()))
    }

    /// The image of a surface word, letter by letter, unreduced.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Word::empty();
        for l in &w.0 {
            let im = self.image(&l.generator)?;
            out = out.concat(&if l.inverse { im.inverse() } else { im.clone() });
        }
        Ok(out)
    }

    /// `prod [phi x_i, phi y_i] prod phi d_i`.
    pub fn relator_image(&self) -> Result<Word, WordError> {
        self.validate()?;
        self.apply(&self.presentation.relator())
    }

    pub fn check_hom(&self, g: &Graph) -> Result<bool, WordError> {
        let r = self.relator_image()?;
        WordEngine::new(g).with_max_len(usize::MAX).is_trivial(&r)
    }

    fn require_hom(&self, g: &Graph) -> Result<(), WordError> {
        if self.check_hom(g)? {
            Ok(())
        } else {
            Err(WordError::NotAHomomorphism)
        }
    }

    /// For each boundary word `d_i` (1-based), the clique its image is
    /// conjugate into, if any.
    pub fn boundary_checks(&self, g: &Graph) -> Result<Vec<(usize, Option<CliqueConjugacy>)>, WordError> {
        if self.presentation.boundary == 0 {
            return Err(WordError::NoBoundary);
        }
        self.require_hom(g)?;
        let engine = WordEngine::new(g);
        (1..=self.presentation.boundary)
            .map(|i| Ok((i, engine.conjugate_into_clique(self.image(&gen_name("d", i))?)?)))
            .collect()
    }

    /// Every boundary image is conjugate into a clique subgroup.
    pub fn is_relative_hom(&self, g: &Graph) -> Result<bool, WordError> {
        Ok(self.boundary_checks(g)?.iter().all(|(_, c)| c.is_some()))
    }

    /// The first nontrivial surface-group element of length at most
    /// `max_len` whose image is trivial, in order of length and then
    /// lexicographically with `x1 < x1^-1 < y1 < y1^-1 < ...`.
    ///
    /// With boundary, elements are reduced words in the free basis
    /// `x1, ..., yg, d1, ..., d(m-1)`; closed surfaces use Dehn-reduced words.
    pub fn kernel_search(&self, g: &Graph, max_len: usize) -> Result<Option<Word>, WordError> {
        let pres = self.presentation;
        if pres.boundary == 0 && pres.genus <= 1 {
            return Err(WordError::NotHyperbolic(pres.genus));
        }
        self.require_hom(g)?;
        let engine = WordEngine::new(g).with_max_len(usize::MAX);
        let mut gens = pres.generators();
        if pres.boundary > 0 {
            gens.pop();
        }
        let mut images = Vec::new();
        for gname in &gens {
            let im = engine.encode(self.image(gname)?)?;
            let inv = engine.encode(&self.image(gname)?.inverse())?;
            images.push(im);
            images.push(inv);
        }
        let pieces: HashSet<Vec<usize>> = if pres.boundary == 0 {
            relator_pieces(pres.genus, 2 * pres.genus + 1).into_iter().collect()
        } else {
            HashSet::new()
        };
        let window = 2 * pres.genus + 1;
        let search = KernelSearch { engine: &engine, images: &images, pieces: &pieces, window };
        for len in 1..=max_len {
            let mut path = Vec::with_capacity(len);
            if search.dfs(len, &mut path, &[]) {
                return Ok(Some(Word(path.into_iter().map(|c| Letter::new(gens[c / 2].clone(), c % 2 == 1)).collect())));
            }
        }
        Ok(None)
    }
}

struct KernelSearch<'a> {
    engine: &'a WordEngine<'a>,
    images: &'a [Vec<(usize, bool)>],
    pieces: &'a HashSet<Vec<usize>>,
    window: usize,
}

impl KernelSearch<'_> {
    fn dfs(&self, len: usize, path: &mut Vec<usize>, image: &[(usize, bool)]) -> bool {
        if path.len() == len {
            return image.is_empty();
        }
        for c in 0..self.images.len() {
            if path.last() == Some(&(c ^ 1)) {
                continue;
            }
            path.push(c);
            let dehn_ok = self.pieces.is_empty() || path.len() < self.window || !self.pieces.contains(&path[path.len() - self.window..]);
            if dehn_ok {
                let mut next = image.to_vec();
                for &x in &self.images[c] {
                    self.engine.push_reduced(&mut next, x);
                }
                if self.dfs(len, path, &next) {
                    return true;
                }
            }
            path.pop();
        }
        false
    }
}
