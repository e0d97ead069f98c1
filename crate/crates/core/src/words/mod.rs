//! Words in right-angled Artin groups.
//!
//! A word is a sequence of letters `v` or `v^-1`. Over a graph `G` two
//! generators commute iff they are adjacent. The normal form of a word is
//! the lexicographically least fully reduced representative, with letters
//! ordered `a < a^-1 < b < b^-1 < ...` by generator name.

pub mod free;
pub mod surface;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WordError;
use crate::graph::{bit, Bits, Graph, VertexId};

/// Default cap on the length of input words.
pub const DEFAULT_MAX_LEN: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: VertexId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: VertexId, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(&self) -> Letter {
        Letter { generator: self.generator.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(tok: &str) -> Result<Self, WordError> {
        let (name, inverse) = match tok.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tok, false),
        };
        if name.contains('^') {
            return Err(WordError::BadToken(tok.to_string()));
        }
        let generator = VertexId::new(name).map_err(|_| WordError::BadToken(tok.to_string()))?;
        Ok(Letter { generator, inverse })
    }
}

/// A finite sequence of letters, not necessarily reduced. Written as
/// whitespace-separated tokens; the empty word prints as the empty string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        text.split_whitespace().map(str::parse).collect::<Result<Vec<_>, _>>().map(Word)
    }

    pub fn letter(name: &str) -> Self {
        Word(vec![Letter::new(VertexId::new(name).expect("valid generator name"), false)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inv).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// `self^n`; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        Word(base.0.iter().cloned().cycle().take(base.len() * n.unsigned_abs() as usize).collect())
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    pub fn generators(&self) -> impl Iterator<Item = &VertexId> {
        self.0.iter().map(|l| &l.generator)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        Word::parse(s)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = WordError;

    fn try_from(s: String) -> Result<Self, WordError> {
        Word::parse(&s)
    }
}

/// `w = conjugator · core · conjugator^-1`, with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicForm {
    pub core: Word,
    pub conjugator: Word,
}

/// `w` is conjugate by `conjugator` into the clique subgroup on `clique`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueConjugacy {
    pub clique: Vec<VertexId>,
    pub conjugator: Word,
    pub core: Word,
}

type Code = (usize, bool);

/// Word operations in `A(G)` with a length cap on inputs.
#[derive(Debug, Clone, Copy)]
pub struct WordEngine<'g> {
    graph: &'g Graph,
    max_len: usize,
}

impl<'g> WordEngine<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        WordEngine { graph, max_len: DEFAULT_MAX_LEN }
    }

    pub fn with_max_len(self, max_len: usize) -> Self {
        WordEngine { max_len, ..self }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    fn encode(&self, w: &Word) -> Result<Vec<Code>, WordError> {
        if w.len() > self.max_len {
            return Err(WordError::TooLong { len: w.len(), limit: self.max_len });
        }
        w.0.iter()
            .map(|l| {
                self.graph
                    .index_of(&l.generator)
                    .map(|i| (i, l.inverse))
                    .ok_or_else(|| WordError::UnknownGenerator(l.generator.to_string()))
            })
            .collect()
    }

    fn decode(&self, codes: &[Code]) -> Word {
        Word(codes.iter().map(|&(i, inv)| Letter::new(self.graph.name(i).clone(), inv)).collect())
    }

    fn commute(&self, x: usize, y: usize) -> bool {
        self.graph.adjacent_idx(x, y)
    }

    /// Appends `x` to the reduced word `out`, cancelling it against the last
    /// occurrence of its generator if everything in between commutes with it.
    fn push_reduced(&self, out: &mut Vec<Code>, (x, inv): Code) {
        for j in (0..out.len()).rev() {
            let (y, t) = out[j];
            if y == x {
                if t != inv {
                    out.remove(j);
                    return;
                }
                break;
            }
            if !self.commute(x, y) {
                break;
            }
        }
        out.push((x, inv));
    }

    fn reduce(&self, codes: &[Code]) -> Vec<Code> {
        let mut out = Vec::with_capacity(codes.len());
        for &c in codes {
            self.push_reduced(&mut out, c);
        }
        out
    }

    /// Generators that cannot be moved past a letter on generator `y`.
    fn blocks(&self, y: usize) -> Bits {
        bit(y) | (self.graph.all_bits() & !self.graph.adj_bits(y))
    }

    /// Greedy lexicographically least linearisation of a reduced word.
    fn lex_least(&self, codes: &[Code]) -> Vec<Code> {
        let mut rem = codes.to_vec();
        let mut out = Vec::with_capacity(rem.len());
        while !rem.is_empty() {
            let mut blocked: Bits = 0;
            let mut best = 0;
            for (i, &(x, _)) in rem.iter().enumerate() {
                if blocked & bit(x) == 0 && rem[i] < rem[best] {
                    best = i;
                }
                blocked |= self.blocks(x);
                if blocked == self.graph.all_bits() {
                    break;
                }
            }
            out.push(rem.remove(best));
        }
        out
    }

    fn nf_codes(&self, codes: &[Code]) -> Vec<Code> {
        self.lex_least(&self.reduce(codes))
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word, WordError> {
        Ok(self.decode(&self.nf_codes(&self.encode(w)?)))
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, WordError> {
        Ok(self.reduce(&self.encode(w)?).is_empty())
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> Result<bool, WordError> {
        let mut codes = self.encode(u)?;
        codes.extend(self.encode(&v.inverse())?);
        Ok(self.reduce(&codes).is_empty())
    }

    /// Positions of letters that can be shuffled to the front.
    fn front_movable(&self, codes: &[Code]) -> Vec<usize> {
        let mut blocked: Bits = 0;
        let mut out = Vec::new();
        for (i, &(x, _)) in codes.iter().enumerate() {
            if blocked & bit(x) == 0 {
                out.push(i);
            }
            blocked |= self.blocks(x);
        }
        out
    }

    fn back_movable(&self, codes: &[Code]) -> Vec<usize> {
        let mut blocked: Bits = 0;
        let mut out = Vec::new();
        for (i, &(x, _)) in codes.iter().enumerate().rev() {
            if blocked & bit(x) == 0 {
                out.push(i);
            }
            blocked |= self.blocks(x);
        }
        out
    }

    /// Strips conjugating letters until the word is cyclically reduced, then
    /// picks the least normal form among its cyclic permutations.
    pub fn cyclic_normal_form(&self, w: &Word) -> Result<CyclicForm, WordError> {
        let mut cur = self.nf_codes(&self.encode(w)?);
        let mut conj: Vec<Code> = Vec::new();
        'strip: loop {
            let back = self.back_movable(&cur);
            for i in self.front_movable(&cur) {
                let (x, inv) = cur[i];
                if let Some(&j) = back.iter().find(|&&j| cur[j] == (x, !inv)) {
                    conj.push((x, inv));
                    cur.remove(j.max(i));
                    cur.remove(j.min(i));
                    cur = self.lex_least(&cur);
                    continue 'strip;
                }
            }
            break;
        }
        // Cyclic permutations of the trace: repeatedly move a letter that can
        // come first to the end (`w = x (w x^-1 x) x^-1`, tracked in the conjugator).
        let start = self.lex_least(&cur);
        let mut parent: HashMap<Vec<Code>, Option<(Vec<Code>, Code)>> = HashMap::from([(start.clone(), None)]);
        let mut queue = VecDeque::from([start.clone()]);
        let mut best = start;
        while let Some(t) = queue.pop_front() {
            if t < best {
                best = t.clone();
            }
            for i in self.front_movable(&t) {
                let mut next = t.clone();
                let x = next.remove(i);
                next.push(x);
                let next = self.lex_least(&next);
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((t.clone(), x)));
                    queue.push_back(next);
                }
            }
        }
        let mut moved = Vec::new();
        let mut at = best.clone();
        while let Some(Some((prev, x))) = parent.get(&at) {
            moved.push(*x);
            at = prev.clone();
        }
        conj.extend(moved.into_iter().rev());
        let core = best;
        Ok(CyclicForm { core: self.decode(&core), conjugator: self.decode(&self.nf_codes(&conj)) })
    }

    /// The support of the cyclic normal form, if it is a clique, with the
    /// conjugator that carries `w` into that clique subgroup.
    pub fn conjugate_into_clique(&self, w: &Word) -> Result<Option<CliqueConjugacy>, WordError> {
        let cf = self.cyclic_normal_form(w)?;
        let support = self.graph.bits_of(cf.core.generators()).expect("core letters are vertices");
        if !self.graph.is_clique_bits(support) {
            return Ok(None);
        }
        Ok(Some(CliqueConjugacy { clique: self.graph.names_of(support), conjugator: cf.conjugator, core: cf.core }))
    }
}

pub fn normal_form(g: &Graph, w: &Word) -> Result<Word, WordError> {
    WordEngine::new(g).normal_form(w)
}

pub fn is_trivial(g: &Graph, w: &Word) -> Result<bool, WordError> {
    WordEngine::new(g).is_trivial(w)
}

pub fn are_equal(g: &Graph, u: &Word, v: &Word) -> Result<bool, WordError> {
    WordEngine::new(g).are_equal(u, v)
}

pub fn cyclic_normal_form(g: &Graph, w: &Word) -> Result<CyclicForm, WordError> {
    WordEngine::new(g).cyclic_normal_form(w)
}

pub fn conjugate_into_clique(g: &Graph, w: &Word) -> Result<Option<CliqueConjugacy>, WordError> {
    WordEngine::new(g).conjugate_into_clique(w)
}
