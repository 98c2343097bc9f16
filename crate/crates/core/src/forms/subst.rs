use std::sync::Arc;

use num_traits::Zero;

use super::form::{Forms, Mono, QForm};
use super::space::{Block, FormSpace, LabelSet};
use crate::exact::{Coefficient, Rational};
use crate::{Error, Result};

/// A dg algebra map between form spaces, given by the images of the coordinates.
///
/// For every simplex block the images of *all* labels are supplied and must sum
/// to 1; the eliminated coordinate is then consistent automatically. The images
/// of the differentials are the differentials of the images.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Arc<FormSpace>,
    target: Arc<FormSpace>,
    /// Image of each retained generator of the source.
    gens: Vec<QForm>,
    dgens: Vec<QForm>,
}

impl Substitution {
    /// `images[b][l]` is the image of coordinate `l` of block `b`.
    pub fn new(source: &Arc<FormSpace>, target: &Arc<FormSpace>, images: Vec<Vec<QForm>>) -> Result<Self> {
        if images.len() != source.blocks().len() {
            return Err(Error::BadSubstitution("one image list per block is required".into()));
        }
        let one = QForm::one(target);
        let mut gens = Vec::with_capacity(source.ngens());
        for (b, imgs) in images.into_iter().enumerate() {
            if imgs.iter().any(|f| f.space() != target) {
                return Err(Error::LabelMismatch("image lives in a different space".into()));
            }
            if imgs.iter().any(|f| f.degree() != Some(0)) {
                return Err(Error::BadSubstitution("coordinates must map to 0-forms".into()));
            }
            match source.block(b) {
                Block::Line(n) => {
                    if imgs.len() != 1 {
                        return Err(Error::BadSubstitution(format!("line {n} needs one image")));
                    }
                    gens.extend(imgs);
                }
                Block::Simplex(l) => {
                    if imgs.len() != l.len() {
                        return Err(Error::BadSubstitution(format!("expected {} images, got {}", l.len(), imgs.len())));
                    }
                    let total = imgs.iter().fold(QForm::zero(target, Rational::zero()), |a, f| a.add(f));
                    if total != one {
                        return Err(Error::BadSubstitution(format!("images sum to {total}, not 1")));
                    }
                    gens.extend(imgs.into_iter().take(l.len() - 1));
                }
            }
        }
        let dgens = gens.iter().map(QForm::d).collect();
        Ok(Substitution { source: source.clone(), target: target.clone(), gens, dgens })
    }

    pub fn source(&self) -> &Arc<FormSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FormSpace> {
        &self.target
    }

    /// Image of a single monomial.
    pub fn image_of(&self, m: &Mono) -> QForm {
        let mut acc = QForm::one(&self.target);
        for (i, &e) in m.exps.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&self.gens[i]);
                if acc.is_zero() {
                    return acc;
                }
            }
        }
        let mut w = m.wedge;
        while w != 0 {
            let j = w.trailing_zeros() as usize;
            w &= w - 1;
            acc = acc.mul(&self.dgens[j]);
            if acc.is_zero() {
                return acc;
            }
        }
        acc
    }

    pub fn apply<R: Coefficient>(&self, f: &Forms<R>) -> Forms<R> {
        debug_assert_eq!(f.space(), &self.source);
        let mut out = Forms::zero(&self.target, f.zero_coeff().clone());
        for (m, c) in f.terms() {
            for (mi, q) in self.image_of(m).into_terms() {
                out.insert(mi, c.scale(&q));
            }
        }
        out
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &Substitution) -> Result<Substitution> {
        if self.target != then.source {
            return Err(Error::LabelMismatch("substitutions do not compose".into()));
        }
        let images = (0..self.source.blocks().len())
            .map(|b| {
                let n = match self.source.block(b) {
                    Block::Line(_) => 1,
                    Block::Simplex(l) => l.len(),
                };
                (0..n).map(|l| then.apply(&self.coordinate_image(b, l))).collect()
            })
            .collect();
        Substitution::new(&self.source, &then.target, images)
    }

    /// Image of coordinate `l` of block `b`, including the eliminated one.
    pub fn coordinate_image(&self, b: usize, l: usize) -> QForm {
        self.apply(&QForm::coordinate(&self.source, b, l))
    }

    /// The identity on a space.
    pub fn identity(space: &Arc<FormSpace>) -> Self {
        let images = (0..space.blocks().len())
            .map(|b| match space.block(b) {
                Block::Line(_) => vec![QForm::coordinate(space, b, 0)],
                Block::Simplex(l) => (0..l.len()).map(|i| QForm::coordinate(space, b, i)).collect(),
            })
            .collect();
        Self::new(space, space, images).expect("identity is well formed")
    }
}

/// Pull back to the face `{u_l = 0 : l in zero_set}` of simplex block `b`,
/// re-canonicalized on the remaining labels.
pub fn restrict_face<R: Coefficient>(f: &Forms<R>, b: usize, zero_set: &[usize]) -> Result<Forms<R>> {
    face_substitution(f.space(), b, zero_set).map(|s| s.apply(f))
}

/// The substitution underlying [`restrict_face`].
pub fn face_substitution(space: &Arc<FormSpace>, b: usize, zero_set: &[usize]) -> Result<Substitution> {
    let labels = space.labels(b).ok_or_else(|| Error::Domain("face restriction needs a simplex block".into()))?;
    if zero_set.iter().any(|&l| l >= labels.len()) {
        return Err(Error::Domain("label out of range".into()));
    }
    let kept = labels.without(zero_set)?;
    let target = space.replace_block(b, Block::Simplex(kept.clone()))?;
    let images = block_images(space, &target, b, |l| {
        if zero_set.contains(&l) {
            None
        } else {
            Some(vec![kept.index_of(labels.label(l)).unwrap()])
        }
    });
    Substitution::new(space, &target, images)
}

/// Pull back along a map of vertex sets `phi: source labels -> labels of block b`:
/// `t_i |-> sum_{phi(j) = i} t_j`.
pub fn pullback_vertex_map<R: Coefficient>(
    f: &Forms<R>,
    b: usize,
    phi: &[usize],
    source: &LabelSet,
) -> Result<Forms<R>> {
    vertex_map_substitution(f.space(), b, phi, source).map(|s| s.apply(f))
}

pub fn vertex_map_substitution(
    space: &Arc<FormSpace>,
    b: usize,
    phi: &[usize],
    source: &LabelSet,
) -> Result<Substitution> {
    let labels = space.labels(b).ok_or_else(|| Error::Domain("vertex maps act on simplex blocks".into()))?;
    if phi.len() != source.len() || phi.iter().any(|&i| i >= labels.len()) {
        return Err(Error::Domain("ill-formed label map".into()));
    }
    let target = space.replace_block(b, Block::Simplex(source.clone()))?;
    let images = block_images(space, &target, b, |i| {
        let pre: Vec<usize> = (0..phi.len()).filter(|&j| phi[j] == i).collect();
        (!pre.is_empty()).then_some(pre)
    });
    Substitution::new(space, &target, images)
}

/// Images for a substitution that changes only block `b`: label `l` of that
/// block goes to the sum of the target coordinates `pick(l)` (or 0). Other
/// blocks map identically (the target has the same block layout).
fn block_images(
    space: &Arc<FormSpace>,
    target: &Arc<FormSpace>,
    b: usize,
    pick: impl Fn(usize) -> Option<Vec<usize>>,
) -> Vec<Vec<QForm>> {
    (0..space.blocks().len())
        .map(|c| match space.block(c) {
            Block::Line(_) => vec![QForm::coordinate(target, c, 0)],
            Block::Simplex(l) if c != b => (0..l.len()).map(|i| QForm::coordinate(target, c, i)).collect(),
            Block::Simplex(l) => (0..l.len())
                .map(|i| match pick(i) {
                    Some(ts) => QForm::coordinate_sum(target, c, &ts),
                    None => QForm::zero(target, Rational::zero()),
                })
                .collect(),
        })
        .collect()
}
