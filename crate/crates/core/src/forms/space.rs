use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::{Error, Result};

/// Largest `N` for which the full simplex on `S_N` is supported.
pub const MAX_SITES: usize = 4;

/// A vertex label: a digit word. Ordinals are one-digit words, permutations of
/// `[1, N]` are written in one-line notation.
pub type Label = Vec<u8>;

/// An ordered finite set of vertex labels. The last label is the distinguished
/// one eliminated in canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabelSet {
    labels: Vec<Label>,
}

impl LabelSet {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Domain("empty label set".into()));
        }
        if labels.iter().duplicates().next().is_some() {
            return Err(Error::Domain("repeated label".into()));
        }
        Ok(LabelSet { labels })
    }

    /// The ordinal `[n] = {0, ..., n}`.
    pub fn ordinal(n: usize) -> Self {
        assert!(n < 10, "ordinal labels are single digits");
        LabelSet { labels: (0..=n as u8).map(|i| vec![i]).collect() }
    }

    /// All total orders on `[1, n]`, lexicographic in one-line notation.
    pub fn perms(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SITES {
            return Err(Error::Limit(format!("S_{n}: supported range is 1..={MAX_SITES}")));
        }
        let labels = (1..=n as u8).permutations(n).collect();
        Ok(LabelSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &[u8]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn name(&self, i: usize) -> String {
        self.labels[i].iter().map(|d| char::from(b'0' + d)).collect()
    }

    /// Indices of the labels satisfying `pred`.
    pub fn select(&self, pred: impl Fn(&Label) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred(&self.labels[i])).collect()
    }

    /// The label set with the given indices removed.
    pub fn without(&self, drop: &[usize]) -> Result<Self> {
        let labels: Vec<Label> =
            self.labels.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, l)| l.clone()).collect();
        if labels.is_empty() {
            return Err(Error::Domain("face restriction would remove every label".into()));
        }
        Ok(LabelSet { labels })
    }
}

/// Does `i` precede `j` in the total order `sigma`?
pub fn precedes(sigma: &[u8], i: u8, j: u8) -> bool {
    let pi = sigma.iter().position(|&x| x == i);
    let pj = sigma.iter().position(|&x| x == j);
    matches!((pi, pj), (Some(a), Some(b)) if a < b)
}

/// A factor of a product of simplices: either a simplex on a label set, or an
/// interval coordinate such as `v` (the simplex on two labels with one generator kept).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Block {
    Simplex(LabelSet),
    Line(String),
}

impl Block {
    fn gens(&self) -> usize {
        match self {
            Block::Simplex(l) => l.len() - 1,
            Block::Line(_) => 1,
        }
    }
}

/// The generators of a graded-commutative algebra `Q[x_i, dx_i]`, organised as
/// blocks. Generator indices run over the blocks in order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormSpace {
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    ngens: usize,
}

impl FormSpace {
    pub fn new(blocks: Vec<Block>) -> Result<Arc<Self>> {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut ngens = 0;
        for b in &blocks {
            offsets.push(ngens);
            ngens += b.gens();
        }
        if ngens > 64 {
            return Err(Error::Limit(format!("{ngens} generators; at most 64 are supported")));
        }
        Ok(Arc::new(FormSpace { blocks, offsets, ngens }))
    }

    /// A single simplex.
    pub fn simplex(labels: LabelSet) -> Arc<Self> {
        Self::new(vec![Block::Simplex(labels)]).expect("a single supported simplex fits")
    }

    /// `{line} x S_n`, the local configuration forms with an interval coordinate.
    pub fn line_times(line: &str, labels: LabelSet) -> Arc<Self> {
        Self::new(vec![Block::Line(line.into()), Block::Simplex(labels)]).expect("fits")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &Block {
        &self.blocks[b]
    }

    pub fn offset(&self, b: usize) -> usize {
        self.offsets[b]
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Position of the first simplex block.
    pub fn simplex_block(&self) -> Option<usize> {
        self.blocks.iter().position(|b| matches!(b, Block::Simplex(_)))
    }

    pub fn line_block(&self, name: &str) -> Option<usize> {
        self.blocks.iter().position(|b| matches!(b, Block::Line(n) if n == name))
    }

    pub fn labels(&self, b: usize) -> Option<&LabelSet> {
        match &self.blocks[b] {
            Block::Simplex(l) => Some(l),
            Block::Line(_) => None,
        }
    }

    /// Display name of generator `g` (without the `d`).
    pub fn gen_name(&self, g: usize) -> String {
        let b = self.offsets.partition_point(|&o| o <= g) - 1;
        match &self.blocks[b] {
            Block::Simplex(l) => format!("u[{}]", l.name(g - self.offsets[b])),
            Block::Line(n) => n.clone(),
        }
    }

    /// Find a generator by display name: `(block, label index)`. Line blocks
    /// have the single label index 0.
    pub fn lookup(&self, name: &str) -> Option<(usize, usize)> {
        for (b, block) in self.blocks.iter().enumerate() {
            match block {
                Block::Line(n) if n == name => return Some((b, 0)),
                Block::Simplex(l) => {
                    if let Some(inner) = name.strip_prefix("u[").and_then(|s| s.strip_suffix(']')) {
                        let digits: Option<Label> =
                            inner.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect();
                        if let Some(i) = digits.and_then(|d| l.index_of(&d)) {
                            return Some((b, i));
                        }
                    }
                }
                _ => {}
            }
        }
        None
    }

    /// The same space with block `b` replaced.
    pub fn replace_block(&self, b: usize, block: Block) -> Result<Arc<Self>> {
        let mut blocks = self.blocks.clone();
        blocks[b] = block;
        Self::new(blocks)
    }
}

impl fmt::Display for FormSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Simplex(l) => format!("simplex({})", (0..l.len()).map(|i| l.name(i)).join(",")),
                Block::Line(n) => format!("line({n})"),
            })
            .collect();
        f.write_str(&parts.join(" x "))
    }
}
