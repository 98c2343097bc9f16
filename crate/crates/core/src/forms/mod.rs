//! Polynomial differential forms on products of simplices and intervals.
#![doc = include_str!("../../../../book/src/forms.md")]

mod form;
mod space;
mod subst;

pub use form::{Forms, Mono, QForm};
pub use space::{precedes, Block, FormSpace, Label, LabelSet, MAX_SITES};
pub use subst::{
    face_substitution, pullback_vertex_map, restrict_face, vertex_map_substitution, Substitution,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Rational};
    use num_traits::Zero;
    use std::sync::Arc;

    fn s3() -> Arc<FormSpace> {
        FormSpace::simplex(LabelSet::perms(3).unwrap())
    }

    #[test]
    fn odd_square_and_even_commutation() {
        let sp = s3();
        let u = QForm::coordinate(&sp, 0, 0);
        let du = QForm::coordinate(&sp, 0, 1).d();
        assert!(du.mul(&du).is_zero());
        assert_eq!(u.mul(&du), du.mul(&u));
        let dw = QForm::coordinate(&sp, 0, 2).d();
        assert_eq!(du.mul(&dw), dw.mul(&du).neg());
    }

    #[test]
    fn interval_differential() {
        let sp = FormSpace::simplex(LabelSet::ordinal(1));
        let u0 = QForm::coordinate(&sp, 0, 0);
        let u1 = QForm::coordinate(&sp, 0, 1);
        assert_eq!(u1.d(), u0.d().neg());
        assert_eq!(u0.pow(2).d(), u0.mul(&u0.d()).scale(&q(2)));
        assert_eq!(u1.to_string(), "1 - u[0]");
    }

    #[test]
    fn rendering() {
        let sp = s3();
        let f = QForm::coordinate(&sp, 0, 1)
            .pow(2)
            .mul(&QForm::coordinate(&sp, 0, 0).d())
            .mul(&QForm::coordinate(&sp, 0, 3).d())
            .scale(&q(-3));
        assert_eq!(f.to_string(), "-3*u[132]^2*du[123]^du[231]");
    }

    #[test]
    fn faces() {
        let sp = s3();
        let u = QForm::coordinate(&sp, 0, 2);
        assert!(restrict_face(&u, 0, &[2]).unwrap().is_zero());
        let all = QForm::coordinate_sum(&sp, 0, &[0, 1, 2, 3, 4, 5]);
        let r = restrict_face(&all, 0, &[0, 5]).unwrap();
        assert_eq!(r.as_constant(), Some(q(1)));
        assert!(restrict_face(&u, 0, &[0, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn vertex_maps() {
        // Collapse [1] -> [0]: every positive-degree form dies.
        let pt = FormSpace::simplex(LabelSet::ordinal(0));
        let c = QForm::one(&pt);
        let pulled = pullback_vertex_map(&c, 0, &[0, 0], &LabelSet::ordinal(1)).unwrap();
        assert_eq!(pulled.as_constant(), Some(q(1)));
        // Coface d_0: [0] -> [1] sending 0 to 1: u_0 on the interval pulls back to 0.
        let i1 = FormSpace::simplex(LabelSet::ordinal(1));
        let u0 = QForm::coordinate(&i1, 0, 0);
        let p = pullback_vertex_map(&u0, 0, &[1], &LabelSet::ordinal(0)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn relation_is_enforced() {
        let sp = s3();
        let bad = vec![vec![QForm::zero(&sp, Rational::zero()); 6]];
        assert!(Substitution::new(&sp, &sp, bad).is_err());
    }

    #[test]
    fn embed_into_product() {
        let sp = s3();
        let big = FormSpace::line_times("v", LabelSet::perms(3).unwrap());
        let f = QForm::coordinate(&sp, 0, 0).d();
        let e = f.embed(&big, &[1]).unwrap();
        assert_eq!(e.to_string(), "du[123]");
    }
}
