//! Configuration-space algebras `A_N`, their embeddings and expansion maps.
#![doc = include_str!("../../../../book/src/config.md")]

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{laurent_expand, LaurentSeries, MultiPoly, Rational, RatFrac, Vars};
use crate::forms::{precedes, restrict_face, Block, FormSpace, Forms, LabelSet, QForm, Substitution};
use crate::{Error, Result};

/// An element of `B_n (x) Q[u_sigma, du_sigma]` (or of the local variant with `v`).
pub type ConfigForm = Forms<RatFrac>;

/// A truncated element of `A_N{{w - z_s}}`: a Laurent series in `w - z_s` whose
/// coefficients are forms over `{v} x S_N` with coefficients in `B_N`.
pub type RavLocal = LaurentSeries<ConfigForm>;

/// The simplex on `S_n`.
pub fn simplex_space(n: usize) -> Result<Arc<FormSpace>> {
    Ok(FormSpace::simplex(LabelSet::perms(n)?))
}

/// `{v} x S_n`, the home of the forms in `A_n{{w - z_s}}`.
pub fn local_space(n: usize) -> Result<Arc<FormSpace>> {
    Ok(FormSpace::line_times("v", LabelSet::perms(n)?))
}

/// Lift a rational form to `B`-coefficients in the ring `vars`.
pub fn lift(f: &QForm, vars: Vars) -> ConfigForm {
    Forms::from_q(f, &RatFrac::one(vars))
}

/// The coordinate `u_sigma` on `S_n`.
pub fn u(n: usize, sigma: &[u8], vars: Vars) -> Result<ConfigForm> {
    let sp = simplex_space(n)?;
    let l = sp.labels(0).unwrap().index_of(sigma).ok_or_else(|| Error::Domain(format!("{sigma:?} is not in S_{n}")))?;
    Ok(lift(&QForm::coordinate(&sp, 0, l), vars))
}

/// A pair `(i, j)` (1-based) whose boundary condition fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    /// Labels set to zero: the orders in which `i` precedes `j`.
    pub face: Vec<String>,
    /// The restricted form, still singular in `z_i - z_j`.
    pub restricted: String,
}

/// Outcome of the membership test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipReport {
    pub n: usize,
    pub member: bool,
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn describe(&self) -> String {
        if self.member {
            return format!("member of A_{}", self.n);
        }
        self.violations
            .iter()
            .map(|v| format!("singular in z{}-z{} on {{{}}}", v.i, v.j, v.face.iter().map(|f| format!("u[{f}]=0")).join(", ")))
            .join("; ")
    }
}

fn site_name(vars: Vars, i: usize) -> String {
    vars.name(i - 1)
}

/// Check the face conditions of the simplex block `b` for every ordered pair
/// of sites among `sites` (1-based), against the variables of the coefficient ring.
pub fn face_violations(f: &ConfigForm, b: usize, sites: &[usize]) -> Result<Vec<Violation>> {
    let labels = f.space().labels(b).ok_or_else(|| Error::Domain("no simplex block".into()))?.clone();
    let vars = f.zero_coeff().vars();
    let mut out = Vec::new();
    for (&i, &j) in sites.iter().cartesian_product(sites) {
        if i == j {
            continue;
        }
        let zero_set = labels.select(|s| precedes(s, i as u8, j as u8));
        let r = restrict_face(f, b, &zero_set)?;
        let mut singular = false;
        for (_, c) in r.terms() {
            if !c.is_regular_in(i - 1, j - 1)? {
                singular = true;
                break;
            }
        }
        if singular {
            let _ = site_name(vars, i);
            out.push(Violation {
                i,
                j,
                face: zero_set.iter().map(|&l| labels.name(l)).collect(),
                restricted: r.to_string(),
            });
        }
    }
    Ok(out)
}

fn check_simplex_form(f: &ConfigForm) -> Result<usize> {
    let sp = f.space();
    match sp.blocks() {
        [Block::Simplex(l)] => {
            let n = l.label(0).len();
            if f.zero_coeff().vars().n != n {
                return Err(Error::LabelMismatch(format!(
                    "coefficients in {} variables over S_{n}",
                    f.zero_coeff().vars().n
                )));
            }
            Ok(n)
        }
        _ => Err(Error::LabelMismatch(format!("expected a form on S_N, got {sp}"))),
    }
}

/// Membership in `A_N`: for all ordered pairs `(i, j)`, the pullback to
/// `{u_sigma = 0 : i precedes j in sigma}` is regular in `z_i - z_j`.
pub fn in_a_n(f: &ConfigForm) -> Result<MembershipReport> {
    let n = check_simplex_form(f)?;
    let sites: Vec<usize> = (1..=n).collect();
    let violations = face_violations(f, 0, &sites)?;
    Ok(MembershipReport { n, member: violations.is_empty(), violations })
}

/// Every coefficient vanishes as `w -> infinity` (`w` the last variable).
pub fn vanishes_at_infinity(f: &ConfigForm) -> bool {
    let last = f.zero_coeff().vars().n - 1;
    f.terms().all(|(_, c)| c.vanishes_at_infinity_in(last))
}

/// `iota_{J subset [1,n]}` on forms: `u_sigma |-> sum over tau restricting to sigma`.
pub fn iota_substitution(j_set: &[u8], n: usize) -> Result<Substitution> {
    if !j_set.windows(2).all(|w| w[0] < w[1]) || j_set.iter().any(|&x| x == 0 || x as usize > n) {
        return Err(Error::Domain(format!("{j_set:?} is not an increasing subset of [1,{n}]")));
    }
    let src = simplex_space(j_set.len())?;
    let tgt = simplex_space(n)?;
    let src_labels = src.labels(0).unwrap();
    let tgt_labels = tgt.labels(0).unwrap();
    let images = (0..src_labels.len())
        .map(|l| {
            let sigma: Vec<u8> = src_labels.label(l).iter().map(|&a| j_set[a as usize - 1]).collect();
            let pre = tgt_labels.select(|tau| tau.iter().filter(|x| j_set.contains(x)).copied().collect::<Vec<_>>() == sigma);
            QForm::coordinate_sum(&tgt, 0, &pre)
        })
        .collect();
    Substitution::new(&src, &tgt, vec![images])
}

/// Relabel the marked points of an element of `A_n`: `z_k -> z_{sigma(k)}` and
/// `u_tau -> u_{sigma(tau)}` (`sigma` is 0-based).
pub fn permute_points(f: &ConfigForm, sigma: &[usize]) -> Result<ConfigForm> {
    let n = sigma.len();
    let mut inv = vec![usize::MAX; n];
    for (k, &t) in sigma.iter().enumerate() {
        if t >= n || inv[t] != usize::MAX {
            return Err(Error::Domain("not a permutation".into()));
        }
        inv[t] = k;
    }
    let labels = LabelSet::perms(n)?;
    let phi: Vec<usize> = labels
        .labels()
        .iter()
        .map(|l| {
            let pre: Vec<u8> = l.iter().map(|&p| inv[p as usize - 1] as u8 + 1).collect();
            labels.index_of(&pre).expect("a permutation")
        })
        .collect();
    let vars = f.zero_coeff().vars();
    if vars.n != n {
        return Err(Error::Domain(format!("expected {n} points, found {}", vars.n)));
    }
    let moved = crate::forms::pullback_vertex_map(f, 0, &phi, &labels)?;
    Ok(moved.map_coeffs(RatFrac::zero(vars), |r| Some(r.rename(vars, sigma))))
}

/// `iota_{J subset [1,n]}: A_|J| -> A_n`, with coefficients moved to `target`
/// (which must have at least `n` variables).
pub fn iota_embed(j_set: &[u8], n: usize, f: &ConfigForm, target: Vars) -> Result<ConfigForm> {
    let m = check_simplex_form(f)?;
    if m != j_set.len() {
        return Err(Error::LabelMismatch("subset size differs from the form's S_N".into()));
    }
    let report = in_a_n(f)?;
    if !report.member {
        return Err(Error::NotMember { n: m, report: report.describe() });
    }
    let sub = iota_substitution(j_set, n)?;
    let map: Vec<usize> = j_set.iter().map(|&x| x as usize - 1).collect();
    let renamed = f.map_coeffs(RatFrac::zero(target), |c| Some(c.rename(target, &map)));
    Ok(sub.apply(&renamed))
}

/// `iota_N: A_N -> A_{N+1}`, the last variable of the target displayed as `w`.
pub fn iota_n(f: &ConfigForm) -> Result<ConfigForm> {
    let n = check_simplex_form(f)?;
    let j: Vec<u8> = (1..=n as u8).collect();
    iota_embed(&j, n + 1, f, Vars::with_w(n + 1))
}

/// `p*_{N+1 -> s}` from forms on `S_{N+1}` to forms on `{v} x S_N`.
pub fn p_substitution(n: usize, s: usize) -> Result<Substitution> {
    if s == 0 || s > n {
        return Err(Error::Domain(format!("site {s} outside [1,{n}]")));
    }
    let src = simplex_space(n + 1)?;
    let tgt = local_space(n)?;
    let src_labels = src.labels(0).unwrap();
    let tgt_labels = tgt.labels(1).unwrap();
    let v = QForm::coordinate(&tgt, 0, 0);
    let one_minus_v = QForm::one(&tgt).sub(&v);
    let big = (n + 1) as u8;
    let s = s as u8;
    let images = (0..src_labels.len())
        .map(|l| {
            let tau = src_labels.label(l);
            let pos = tau.iter().position(|&x| x == big).unwrap();
            let rest: Vec<u8> = tau.iter().copied().filter(|&x| x != big).collect();
            let sigma_u = || QForm::coordinate(&tgt, 1, tgt_labels.index_of(&rest).unwrap());
            if pos + 1 < tau.len() && tau[pos + 1] == s {
                one_minus_v.mul(&sigma_u())
            } else if pos > 0 && tau[pos - 1] == s {
                v.mul(&sigma_u())
            } else {
                QForm::zero(&tgt, Rational::zero())
            }
        })
        .collect();
    Substitution::new(&src, &tgt, vec![images])
}

/// `q*_s` from forms on `{v} x S_N` to forms on `S_{N+1}`.
pub fn q_substitution(n: usize, s: usize) -> Result<Substitution> {
    if s == 0 || s > n {
        return Err(Error::Domain(format!("site {s} outside [1,{n}]")));
    }
    let src = local_space(n)?;
    let tgt = simplex_space(n + 1)?;
    let tgt_labels = tgt.labels(0).unwrap();
    let before = tgt_labels.select(|tau| precedes(tau, s as u8, (n + 1) as u8));
    let v_img = QForm::coordinate_sum(&tgt, 0, &before);
    let iota = iota_substitution(&(1..=n as u8).collect::<Vec<_>>(), n + 1)?;
    let u_imgs = (0..src.labels(1).unwrap().len())
        .map(|l| iota.coordinate_image(0, l))
        .collect();
    Substitution::new(&src, &tgt, vec![vec![v_img], u_imgs])
}

/// `p*_{N+1 -> s}` applied to a form (coefficients untouched).
pub fn p_pullback(s: usize, f: &ConfigForm) -> Result<ConfigForm> {
    let n = f.space().labels(0).map(|l| l.label(0).len()).ok_or_else(|| Error::Domain("expected S_{N+1}".into()))?;
    Ok(p_substitution(n - 1, s)?.apply(f))
}

/// `q*_s` applied to a form over `{v} x S_N` (coefficients untouched).
pub fn q_pullback(s: usize, f: &ConfigForm) -> Result<ConfigForm> {
    let n = f.space().labels(1).map(|l| l.label(0).len()).ok_or_else(|| Error::Domain("expected {v} x S_N".into()))?;
    Ok(q_substitution(n, s)?.apply(f))
}

/// The local variable name `w-z<s>`.
pub fn local_var(s: usize) -> String {
    format!("w-z{s}")
}

/// `iota_{w -> z_s}`: Laurent-expand the coefficients in `w - z_s` and pull
/// the forms back along `p_{N+1 -> s}`. Exact below `k`.
pub fn expand_at(f: &ConfigForm, s: usize, k: i32) -> Result<RavLocal> {
    let n1 = check_simplex_form(f)?;
    let report = in_a_n(f)?;
    if !report.member {
        return Err(Error::NotMember { n: n1, report: report.describe() });
    }
    let out = expand_at_unchecked(f, s, k)?;
    if let Some(msg) = local_violation(&out, s)? {
        return Err(Error::Boundary(format!("expansion left A_N{{{{w-z_{s}}}}}: {msg}")));
    }
    Ok(out)
}

/// [`expand_at`] without the membership and boundary checks.
pub fn expand_at_unchecked(f: &ConfigForm, s: usize, k: i32) -> Result<RavLocal> {
    let n = f.zero_coeff().vars().n - 1;
    let sub = p_substitution(n, s)?;
    let target = Vars::plain(n);
    let zero_form = ConfigForm::zero(sub.target(), RatFrac::zero(target));
    let var = local_var(s);
    let mut out = LaurentSeries::zero(&var, k, zero_form.clone());
    for (m, c) in f.terms() {
        let img = sub.image_of(m);
        if img.is_zero() {
            continue;
        }
        let series = laurent_expand(c, s - 1, k, &var);
        for (p, ck) in series.terms() {
            out.insert(p, img.map_coeffs(RatFrac::zero(target), |q| Some(ck.scale(q))));
        }
    }
    Ok(out)
}

/// Restrict a `{v} x S_N` form to `v = t0`.
pub fn at_v(f: &ConfigForm, t0: &Rational) -> Result<ConfigForm> {
    let sp = f.space();
    let labels = sp.labels(1).ok_or_else(|| Error::Domain("expected {v} x S_N".into()))?.clone();
    let tgt = FormSpace::simplex(labels.clone());
    let images = vec![
        vec![QForm::q(&tgt, t0.clone())],
        (0..labels.len()).map(|l| QForm::coordinate(&tgt, 0, l)).collect(),
    ];
    Ok(Substitution::new(sp, &tgt, images)?.apply(f))
}

/// The boundary conditions of `A_N{{w - z_s}}`, or a description of the first failure.
pub fn local_violation(x: &RavLocal, s: usize) -> Result<Option<String>> {
    for (p, c) in x.terms() {
        if p < 0 {
            for t in [Rational::zero(), Rational::one()] {
                if !at_v(c, &t)?.is_zero() {
                    return Ok(Some(format!("v={t} pullback has (w-z{s})^{p} term")));
                }
            }
        }
        let n = c.zero_coeff().vars().n;
        let sites: Vec<usize> = (1..=n).collect();
        if let Some(v) = face_violations(c, 1, &sites)?.first() {
            return Ok(Some(format!("coefficient of (w-z{s})^{p} singular in z{}-z{}", v.i, v.j)));
        }
    }
    Ok(None)
}

/// Is `x` in `A_N{{w - z_s}}_-`: only negative powers, vanishing at `v = 0, 1`?
pub fn is_local_minus(x: &RavLocal) -> Result<bool> {
    for (p, c) in x.terms() {
        if p >= 0 {
            return Ok(false);
        }
        for t in [Rational::zero(), Rational::one()] {
            if !at_v(c, &t)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `g_k`: build a global element of `A'_{N+1}` from a minus element at site `k`.
pub fn g_build(k: usize, x: &RavLocal) -> Result<ConfigForm> {
    if !is_local_minus(x)? {
        return Err(Error::Domain(format!("g_{k} needs an element of A_N{{{{w-z_{k}}}}}_-")));
    }
    let zero = x.zero_coeff();
    let n = zero.zero_coeff().vars().n;
    let sub = q_substitution(n, k)?;
    let target = Vars::with_w(n + 1);
    let mut out = ConfigForm::zero(sub.target(), RatFrac::zero(target));
    for (p, c) in x.terms() {
        let pole = RatFrac::diff_pow(target, n, k - 1, p);
        let lifted = c.map_coeffs(RatFrac::zero(target), |r| Some(r.extend(target).mul(&pole)));
        out = out.add(&sub.apply(&lifted));
    }
    Ok(out)
}

/// Split a per-site family into a global part `sum_k g_k(X_k^-)` and the plus
/// remainders `X_t - iota_{w -> z_t}(global)`.
pub fn decompose_global(family: &[RavLocal]) -> Result<(ConfigForm, Vec<RavLocal>)> {
    let n = family.len();
    let target = Vars::with_w(n + 1);
    let mut global = ConfigForm::zero(&simplex_space(n + 1)?, RatFrac::zero(target));
    for (k, x) in family.iter().enumerate() {
        let mut minus = LaurentSeries::zero(x.var(), x.precision(), x.zero_coeff().clone());
        for (p, c) in x.terms().filter(|(p, _)| *p < 0) {
            minus.insert(p, c.clone());
        }
        global = global.add(&g_build(k + 1, &minus)?);
    }
    let mut rest = Vec::with_capacity(n);
    for (t, x) in family.iter().enumerate() {
        let e = expand_at(&global, t + 1, x.precision())?;
        rest.push(x.sub(&e));
    }
    Ok((global, rest))
}

/// `v_ij = iota_{{i,j}}(u_(12))` in `A_3` with `w = z_3`; `v_ji = 1 - v_ij`.
pub fn v_ij(i: u8, j: u8) -> Result<ConfigForm> {
    let vars = Vars::with_w(3);
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    let u12 = u(2, &[1, 2], Vars::plain(2))?;
    let e = iota_embed(&[a, b], 3, &u12, vars)?;
    Ok(if i < j { e } else { ConfigForm::constant(e.space(), RatFrac::one(vars)).sub(&e) })
}

/// `1 / (z_i - z_j)` in `B_3` with `w = z_3` (1-based).
fn inv_diff(i: usize, j: usize) -> RatFrac {
    RatFrac::diff_pow(Vars::with_w(3), i - 1, j - 1, -1)
}

/// The element `Omega_12` of `A'_3`.
pub fn omega12() -> Result<ConfigForm> {
    let dv = |i, j| v_ij(i, j).map(|f| f.d());
    let t1 = dv(3, 1)?.scale_by(&inv_diff(3, 1)).mul(&dv(3, 2)?.scale_by(&inv_diff(3, 2)));
    let t2 = dv(2, 1)?.scale_by(&inv_diff(2, 1)).mul(&dv(3, 2)?.scale_by(&inv_diff(3, 2)));
    let t3 = dv(3, 1)?.scale_by(&inv_diff(3, 1)).mul(&dv(1, 2)?.scale_by(&inv_diff(1, 2)));
    Ok(t1.sub(&t2).sub(&t3))
}

/// The element `u_(123) u_(312) / (w - z_2)` of `A'_3`, killed by both expansions.
pub fn kernel_element() -> Result<ConfigForm> {
    let vars = Vars::with_w(3);
    Ok(u(3, &[1, 2, 3], vars)?.mul(&u(3, &[3, 1, 2], vars)?).scale_by(&inv_diff(3, 2)))
}

/// Sum of `u_tau` over the orders in which `i` precedes `j`, on `S_n`.
pub fn precedence_sum(n: usize, i: u8, j: u8, vars: Vars) -> Result<ConfigForm> {
    let sp = simplex_space(n)?;
    let sel = sp.labels(0).unwrap().select(|t| precedes(t, i, j));
    Ok(lift(&QForm::coordinate_sum(&sp, 0, &sel), vars))
}

/// Group a family of forms by equal coefficient keys (used in reports).
pub fn coefficient_table(f: &ConfigForm) -> BTreeMap<String, String> {
    f.terms().map(|(m, c)| (ConfigForm::term(f.space(), m.clone(), RatFrac::one(c.vars())).to_string(), c.to_string())).collect()
}

/// `1 - x` as a `B`-coefficient form on the same space.
pub fn one_minus(f: &ConfigForm) -> ConfigForm {
    ConfigForm::constant(f.space(), RatFrac::one(f.zero_coeff().vars())).sub(f)
}

/// The polynomial `z_i - z_j` as a coefficient.
pub fn diff_coeff(vars: Vars, i: usize, j: usize) -> RatFrac {
    RatFrac::poly(vars, MultiPoly::diff(vars.n, i - 1, j - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn v3() -> Vars {
        Vars::with_w(3)
    }

    #[test]
    fn iota_2_of_u12() {
        let u12 = u(2, &[1, 2], Vars::plain(2)).unwrap();
        let img = iota_n(&u12).unwrap();
        let expect = u(3, &[1, 2, 3], v3()).unwrap().add(&u(3, &[1, 3, 2], v3()).unwrap()).add(&u(3, &[3, 1, 2], v3()).unwrap());
        assert_eq!(img, expect);
        assert_eq!(img.to_string(), "u[123] + u[132] + u[312]");
    }

    #[test]
    fn membership_examples() {
        let p2 = Vars::plain(2);
        let inv = RatFrac::diff_pow(p2, 0, 1, -1);
        let good = u(2, &[1, 2], p2).unwrap().mul(&u(2, &[2, 1], p2).unwrap()).scale_by(&inv);
        assert!(in_a_n(&good).unwrap().member);
        let image = iota_n(&good).unwrap();
        assert!(in_a_n(&image).unwrap().member);
        let bad = u(2, &[1, 2], p2).unwrap().scale_by(&inv);
        let r = in_a_n(&bad).unwrap();
        assert!(!r.member);
        assert_eq!((r.violations[0].i, r.violations[0].j), (2, 1));
        assert_eq!(r.violations[0].face, ["21"]);

        let w2 = inv_diff(3, 2);
        for f in [u(3, &[1, 2, 3], v3()).unwrap(), u(3, &[1, 2, 3], v3()).unwrap().d()] {
            let r = in_a_n(&f.scale_by(&w2)).unwrap();
            assert!(!r.member);
            assert_eq!(r.violations.len(), 1);
            assert_eq!((r.violations[0].i, r.violations[0].j), (3, 2));
            assert_eq!(r.violations[0].face, ["132", "312", "321"]);
        }
    }

    #[test]
    fn p_of_v_ij() {
        let p = |f: &ConfigForm| p_pullback(1, f).unwrap().to_string();
        assert_eq!(p(&v_ij(1, 2).unwrap()), "u[12]");
        assert_eq!(p(&v_ij(1, 3).unwrap()), "v");
        assert_eq!(p(&v_ij(2, 3).unwrap()), "1 - u[12]");
    }

    #[test]
    fn q_is_right_inverse_on_v() {
        for s in 1..=3 {
            let sub_q = q_substitution(3, s).unwrap();
            let sub_p = p_substitution(3, s).unwrap();
            let comp = sub_q.compose(&sub_p).unwrap();
            let id = Substitution::identity(sub_q.source());
            for l in 0..6 {
                assert_eq!(comp.coordinate_image(1, l), id.coordinate_image(1, l));
            }
            assert_eq!(comp.coordinate_image(0, 0), id.coordinate_image(0, 0));
        }
    }

    #[test]
    fn kernel_element_expands_to_zero() {
        let k = kernel_element().unwrap();
        assert!(in_a_n(&k).unwrap().member);
        assert!(vanishes_at_infinity(&k));
        assert!(expand_at(&k, 1, 5).unwrap().is_zero());
        assert!(expand_at(&k, 2, 5).unwrap().is_zero());
    }

    #[test]
    fn omega12_properties() {
        let o = omega12().unwrap();
        assert!(!o.is_zero());
        assert!(o.d().is_zero());
        assert!(in_a_n(&o).unwrap().member);
        assert!(vanishes_at_infinity(&o));
        for s in [1, 2] {
            let e = expand_at(&o, s, 4).unwrap();
            assert!(!e.is_zero());
            assert!(e.min_degree() >= 0, "site {s}: {e}");
        }
    }

    #[test]
    fn g_round_trip_simple() {
        // x = dv/(w - z_2) at N = 2.
        let sp = local_space(2).unwrap();
        let vars = Vars::plain(2);
        let dv = lift(&QForm::coordinate(&sp, 0, 0).d(), vars);
        let x = LaurentSeries::monomial(&local_var(2), -1, dv).with_precision(4);
        let g = g_build(2, &x).unwrap();
        assert!(in_a_n(&g).unwrap().member);
        assert!(vanishes_at_infinity(&g));
        let back = expand_at(&g, 2, 4).unwrap();
        assert_eq!(back, x);
        let other = expand_at(&g, 1, 4).unwrap();
        assert!(other.min_degree() >= 0);
        let _ = q(0);
    }
}
