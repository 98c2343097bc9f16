use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::space::{Block, FormSpace};
use crate::exact::{render_sum, CoeffRing, Coefficient, Rational, RenderCoeff};
use crate::{Error, Result};

/// A monomial `prod x_i^{e_i} * dx_{j1} ^ ... ^ dx_{jk}` with `j1 < ... < jk`
/// recorded as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub exps: Vec<u16>,
    pub wedge: u64,
}

/// Graded order: form degree, then polynomial degree, then earlier generators first.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |m: &Mono| (m.degree(), m.exps.iter().map(|&e| e as u32).sum::<u32>());
        key(self)
            .cmp(&key(other))
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.wedge.reverse_bits().cmp(&other.wedge.reverse_bits()).reverse())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn one(ngens: usize) -> Self {
        Mono { exps: vec![0; ngens], wedge: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.wedge.count_ones()
    }

    /// Product with the sign of sorting the wedge word, or `None` when a `dx` repeats.
    pub fn mul(&self, other: &Mono) -> Option<(Mono, bool)> {
        if self.wedge & other.wedge != 0 {
            return None;
        }
        let mut odd = false;
        let mut w = other.wedge;
        while w != 0 {
            let j = w.trailing_zeros();
            w &= w - 1;
            let above = if j == 63 { 0 } else { self.wedge >> (j + 1) };
            odd ^= above.count_ones() % 2 == 1;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Some((Mono { exps, wedge: self.wedge | other.wedge }, odd))
    }

    fn render(&self, space: &FormSpace) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(space.gen_name(i)),
                _ => parts.push(format!("{}^{e}", space.gen_name(i))),
            }
        }
        let mut s = parts.join("*");
        let mut w = self.wedge;
        let mut first = true;
        while w != 0 {
            let j = w.trailing_zeros() as usize;
            w &= w - 1;
            if !s.is_empty() {
                s.push(if first { '*' } else { '^' });
            }
            first = false;
            s.push('d');
            s.push_str(&space.gen_name(j));
        }
        s
    }
}

/// A polynomial differential form over a [`FormSpace`] with coefficients in `R`.
///
/// Canonical: the last label of each simplex block is eliminated through
/// `u_last = 1 - sum u` and `du_last = -sum du`, so equal forms have equal term maps.
#[derive(Clone, PartialEq, Debug)]
pub struct Forms<R> {
    space: Arc<FormSpace>,
    terms: BTreeMap<Mono, R>,
    zero: R,
}

/// Rational-coefficient forms, used for substitution images.
pub type QForm = Forms<Rational>;

impl<R: Coefficient> Forms<R> {
    pub fn zero(space: &Arc<FormSpace>, zero: R) -> Self {
        Forms { space: space.clone(), terms: BTreeMap::new(), zero }
    }

    /// `c` times the unit form.
    pub fn constant(space: &Arc<FormSpace>, c: R) -> Self {
        let mut f = Self::zero(space, c.zero_like());
        f.insert(Mono::one(space.ngens()), c);
        f
    }

    /// `c` times the monomial.
    pub fn term(space: &Arc<FormSpace>, mono: Mono, c: R) -> Self {
        let mut f = Self::zero(space, c.zero_like());
        f.insert(mono, c);
        f
    }

    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    pub fn zero_coeff(&self) -> &R {
        &self.zero
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &R)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, R)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, mono: Mono, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(mono, s);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> R {
        self.terms.get(&Mono::one(self.space.ngens())).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Is the form a multiple of the unit?
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(self.zero.clone()),
            1 => self.terms.get(&Mono::one(self.space.ngens())).cloned(),
            _ => None,
        }
    }

    /// Form degree when homogeneous; zero counts as degree 0.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Mono::degree);
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    /// Parity of a homogeneous form; panics on mixed parity.
    pub fn parity(&self) -> bool {
        let mut ps = self.terms.keys().map(|m| m.degree() % 2 == 1);
        let first = ps.next().unwrap_or(false);
        assert!(ps.all(|p| p == first), "form of mixed parity");
        first
    }

    /// The part of form degree `k`.
    pub fn part_of_degree(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.space, self.zero.clone());
        for (m, c) in &self.terms {
            if m.degree() == k {
                out.insert(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(self.zero.clone(), |c| Some(c.neg()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map_coeffs(self.zero.clone(), |c| Some(c.scale(q)))
    }

    /// Apply `f` to every coefficient, keeping the space.
    pub fn map_coeffs<S: Coefficient>(&self, zero: S, f: impl Fn(&R) -> Option<S>) -> Forms<S> {
        let mut out = Forms::zero(&self.space, zero);
        for (m, c) in &self.terms {
            if let Some(d) = f(c) {
                out.insert(m.clone(), d);
            }
        }
        out
    }

    /// Multiply by a rational form on the same space (`self` on the left).
    pub fn mul_q(&self, other: &QForm) -> Self {
        let mut out = Self::zero(&self.space, self.zero.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, odd)) = ma.mul(mb) {
                    let s = if odd { -cb.clone() } else { cb.clone() };
                    out.insert(m, ca.scale(&s));
                }
            }
        }
        out
    }

    /// The same form over a space of identical shape (for example with a line renamed).
    pub fn relabel_space(&self, target: &Arc<FormSpace>) -> Result<Self> {
        let same_shape = self.space.blocks().len() == target.blocks().len()
            && self.space.blocks().iter().zip(target.blocks()).all(|(a, b)| match (a, b) {
                (Block::Line(_), Block::Line(_)) => true,
                (Block::Simplex(x), Block::Simplex(y)) => x == y,
                _ => false,
            });
        if !same_shape {
            return Err(Error::LabelMismatch("spaces differ in shape".into()));
        }
        Ok(Forms { space: target.clone(), terms: self.terms.clone(), zero: self.zero.clone() })
    }

    /// Move into a larger space in which this space's blocks appear, in order,
    /// at the given block positions.
    pub fn embed(&self, target: &Arc<FormSpace>, block_map: &[usize]) -> Result<Self> {
        let src = &self.space;
        if block_map.len() != src.blocks().len() {
            return Err(Error::LabelMismatch("block map length".into()));
        }
        let mut gen_map = vec![0usize; src.ngens()];
        for (b, &tb) in block_map.iter().enumerate() {
            if src.block(b) != target.block(tb) {
                return Err(Error::LabelMismatch(format!("block {b} does not match target block {tb}")));
            }
            let width = if b + 1 < src.blocks().len() { src.offset(b + 1) } else { src.ngens() } - src.offset(b);
            for k in 0..width {
                gen_map[src.offset(b) + k] = target.offset(tb) + k;
            }
        }
        let monotone = gen_map.windows(2).all(|w| w[0] < w[1]);
        let mut out = Self::zero(target, self.zero.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.ngens()];
            let mut wedge = 0u64;
            let mut odd = false;
            for (i, &e) in m.exps.iter().enumerate() {
                exps[gen_map[i]] = e;
            }
            let mut w = m.wedge;
            let mut placed: Vec<usize> = Vec::new();
            while w != 0 {
                let j = w.trailing_zeros() as usize;
                w &= w - 1;
                let t = gen_map[j];
                if !monotone {
                    odd ^= placed.iter().filter(|&&p| p > t).count() % 2 == 1;
                }
                placed.push(t);
                wedge |= 1u64 << t;
            }
            out.insert(Mono { exps, wedge }, if odd { c.neg() } else { c.clone() });
        }
        Ok(out)
    }
}

impl<R: CoeffRing> Forms<R> {
    /// Lift a rational form, with `one` fixing the coefficient ring.
    pub fn from_q(f: &QForm, one: &R) -> Self {
        f.map_coeffs(one.zero_like(), |q| Some(one.scale(q)))
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.space, other.space);
        let mut out = Self::zero(&self.space, self.zero.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, odd)) = ma.mul(mb) {
                    let c = ca.mul(cb);
                    out.insert(m, if odd { c.neg() } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let one = Self::constant(&self.space, self.zero.one_like());
        (0..n).fold(one, |acc, _| acc.mul(self))
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale_by(&self, r: &R) -> Self {
        self.map_coeffs(self.zero.clone(), |c| Some(r.mul(c)))
    }
}

impl<R: Coefficient> Forms<R> {
    /// De Rham differential in the generators; coefficients are constants.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(&self.space, self.zero.clone());
        for (m, c) in &self.terms {
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 || m.wedge & (1u64 << i) != 0 {
                    continue;
                }
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                let below = (m.wedge & ((1u64 << i) - 1)).count_ones();
                let mut coeff = c.scale(&Rational::from_integer(e.into()));
                if below % 2 == 1 {
                    coeff = coeff.neg();
                }
                out.insert(Mono { exps, wedge: m.wedge | (1u64 << i) }, coeff);
            }
        }
        out
    }
}

impl QForm {
    pub fn one(space: &Arc<FormSpace>) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn q(space: &Arc<FormSpace>, c: Rational) -> Self {
        Self::constant(space, c)
    }

    /// The retained generator `x_g` as a form.
    pub fn generator(space: &Arc<FormSpace>, g: usize) -> Self {
        let mut m = Mono::one(space.ngens());
        m.exps[g] = 1;
        Self::term(space, m, Rational::one())
    }

    /// The coordinate attached to label `label` of block `b`; the distinguished
    /// last label of a simplex yields `1 - sum` of the others.
    pub fn coordinate(space: &Arc<FormSpace>, b: usize, label: usize) -> Self {
        let off = space.offset(b);
        match space.block(b) {
            Block::Line(_) => Self::generator(space, off),
            Block::Simplex(l) => {
                if label + 1 < l.len() {
                    Self::generator(space, off + label)
                } else {
                    let mut f = Self::one(space);
                    for k in 0..l.len() - 1 {
                        f = f.sub(&Self::generator(space, off + k));
                    }
                    f
                }
            }
        }
    }

    /// Sum of the coordinates over a set of labels of block `b`.
    pub fn coordinate_sum(space: &Arc<FormSpace>, b: usize, labels: &[usize]) -> Self {
        labels.iter().fold(Self::zero(space, Rational::zero()), |acc, &l| acc.add(&Self::coordinate(space, b, l)))
    }

    /// Evaluate at a point given by retained-generator values, on tangent
    /// vectors given in the same coordinates (one per form degree).
    pub fn evaluate(&self, point: &[Rational], tangents: &[Vec<Rational>]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if m.degree() as usize != tangents.len() {
                continue;
            }
            let mut v = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            let idx: Vec<usize> = (0..64).filter(|i| m.wedge & (1u64 << i) != 0).collect();
            v *= det(&idx, tangents);
            total += v;
        }
        total
    }
}

/// `det[tangent_a(idx_b)]` by permutation expansion.
fn det(idx: &[usize], tangents: &[Vec<Rational>]) -> Rational {
    use itertools::Itertools;
    let k = idx.len();
    if k == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for p in (0..k).permutations(k) {
        let inv = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = if inv % 2 == 1 { -Rational::one() } else { Rational::one() };
        for (a, &b) in p.iter().enumerate() {
            term *= &tangents[a][idx[b]];
        }
        total += term;
    }
    total
}

impl<R: Coefficient> Coefficient for Forms<R> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.space, self.zero.clone())
    }
    fn add(&self, other: &Self) -> Self {
        Forms::add(self, other)
    }
    fn neg(&self) -> Self {
        Forms::neg(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        Forms::scale(self, q)
    }
}

impl<R: CoeffRing> CoeffRing for Forms<R> {
    fn mul(&self, other: &Self) -> Self {
        Forms::mul(self, other)
    }
    fn one_like(&self) -> Self {
        Self::constant(&self.space, self.zero.one_like())
    }
}

impl<R: RenderCoeff> Forms<R> {
    /// Signed terms in canonical order, for composing larger renderings.
    pub fn signed_terms(&self) -> Vec<(bool, String)> {
        self.terms.iter().map(|(m, c)| c.render_term(&m.render(&self.space))).collect()
    }

    /// Render as a factor in a product: parenthesized unless a single positive term.
    pub fn render_factor(&self) -> String {
        let t = self.signed_terms();
        if t.len() == 1 && !t[0].0 {
            t[0].1.clone()
        } else {
            format!("({self})")
        }
    }
}

impl<R: RenderCoeff> fmt::Display for Forms<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sum(self.signed_terms()))
    }
}
