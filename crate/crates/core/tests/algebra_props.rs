//! Property tests for the exact algebra layer against independent oracles:
//! a hand-rolled Cayley–Dickson recursion, the Hamilton product, the Leibniz
//! determinant and naive matrix multiplication.

use proptest::prelude::*;

use scorza_core::cd::{cd_multiply, conjugate, norm_form, real_trace};
use scorza_core::jordan::{
    freudenthal_det, generic_det, jordan_product, jordan_rank3, newton_det, sharp, to_complex_matrix, trace_form,
};
use scorza_core::{CDElement, Field, JordanElement, Matrix, Scalar};

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| &a + &(&Scalar::i() * &b))
}

fn coeffs(n: usize, complex: bool) -> BoxedStrategy<Vec<Scalar>> {
    if complex {
        prop::collection::vec(gaussian(), n).boxed()
    } else {
        prop::collection::vec(rational(), n).boxed()
    }
}

fn octonion(complex: bool) -> impl Strategy<Value = CDElement> {
    let field = if complex { Field::Gaussian } else { Field::Rational };
    coeffs(8, complex).prop_map(move |c| CDElement::new(3, field, c).unwrap())
}

// Oracle: (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)), conj(a, b) = (conj a, -b).
fn oracle_conj(x: &[Scalar]) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = x.iter().map(|c| -c).collect();
    out[0] = x[0].clone();
    out
}

fn oracle_mul(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let sub = |u: Vec<Scalar>, v: Vec<Scalar>| u.iter().zip(&v).map(|(p, q)| p - q).collect::<Vec<_>>();
    let add = |u: Vec<Scalar>, v: Vec<Scalar>| u.iter().zip(&v).map(|(p, q)| p + q).collect::<Vec<_>>();
    let mut out = sub(oracle_mul(a, c), oracle_mul(&oracle_conj(d), b));
    out.extend(add(oracle_mul(d, a), oracle_mul(b, &oracle_conj(c))));
    out
}

fn leibniz3(m: &Matrix) -> Scalar {
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
    perms
        .iter()
        .map(|(p, s)| &(&(&m[(0, p[0])] * &m[(1, p[1])]) * &m[(2, p[2])]) * &Scalar::from_int(*s))
        .sum()
}

fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| &a[(i, k)] * &b[(k, j)]).sum())
}

fn herm3(level: u8, complex: bool) -> impl Strategy<Value = JordanElement> {
    let field = if complex { Field::Gaussian } else { Field::Rational };
    let dim = 1usize << level;
    (coeffs(3, complex), prop::collection::vec(coeffs(dim, complex), 3)).prop_map(move |(d, off)| {
        let e = |c: Vec<Scalar>| CDElement::new(level, field, c).unwrap();
        let s = |x: &Scalar| CDElement::from_scalar(level, field, x.clone());
        let mut off = off.into_iter().map(e);
        let (a, b, c) = (off.next().unwrap(), off.next().unwrap(), off.next().unwrap());
        JordanElement::from_upper(vec![vec![s(&d[0]), a, b], vec![s(&d[1]), c], vec![s(&d[2])]]).unwrap()
    })
}

fn square_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(gaussian(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn skew_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(gaussian(), n * n).prop_map(move |v| {
        Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => v[i * n + j].clone(),
            std::cmp::Ordering::Greater => -&v[j * n + i],
            std::cmp::Ordering::Equal => Scalar::zero(),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_recursive_oracle(level in 0u8..=3, seed in any::<u64>()) {
        let n = 1usize << level;
        let x: Vec<Scalar> = (0..n).map(|i| Scalar::ratio(((seed >> (i % 60)) % 11) as i64 - 5, 1 + (i as i64 % 3))).collect();
        let y: Vec<Scalar> = (0..n).map(|i| Scalar::gaussian(((seed >> ((i + 7) % 60)) % 7) as i64 - 3, i as i64 % 2)).collect();
        let a = CDElement::new(level, Field::Gaussian, x.clone()).unwrap();
        let b = CDElement::new(level, Field::Gaussian, y.clone()).unwrap();
        prop_assert_eq!(cd_multiply(&a, &b).unwrap().coeffs().to_vec(), oracle_mul(&x, &y));
    }

    #[test]
    fn quaternions_follow_hamilton(q in coeffs(4, false), r in coeffs(4, false)) {
        let (a1, b1, c1, d1) = (&q[0], &q[1], &q[2], &q[3]);
        let (a2, b2, c2, d2) = (&r[0], &r[1], &r[2], &r[3]);
        let hamilton = vec![
            &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2)),
            &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2)),
            &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2)),
            &(&(a1 * d2) + &(b1 * c2)) - &(&(c1 * b2) - &(d1 * a2)),
        ];
        let x = CDElement::new(2, Field::Rational, q.clone()).unwrap();
        let y = CDElement::new(2, Field::Rational, r.clone()).unwrap();
        prop_assert_eq!(cd_multiply(&x, &y).unwrap().coeffs().to_vec(), hamilton);
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in octonion(true), y in octonion(true)) {
        prop_assert_eq!(norm_form(&cd_multiply(&x, &y).unwrap()), &norm_form(&x) * &norm_form(&y));
    }

    #[test]
    fn octonions_are_alternative_and_flexible(x in octonion(false), y in octonion(false)) {
        let xy = cd_multiply(&x, &y).unwrap();
        let xx = cd_multiply(&x, &x).unwrap();
        prop_assert_eq!(cd_multiply(&x, &xy).unwrap(), cd_multiply(&xx, &y).unwrap());
        prop_assert_eq!(cd_multiply(&xy, &x).unwrap(), cd_multiply(&x, &cd_multiply(&y, &x).unwrap()).unwrap());
        prop_assert_eq!(conjugate(&xy), cd_multiply(&conjugate(&y), &conjugate(&x)).unwrap());
    }

    #[test]
    fn norm_and_trace_from_conjugate(x in octonion(true)) {
        let xc = cd_multiply(&x, &conjugate(&x)).unwrap();
        prop_assert!(xc.is_scalar());
        prop_assert_eq!(xc.scalar_part().clone(), norm_form(&x));
        prop_assert_eq!(real_trace(&x), x.coeff(0) * &Scalar::from_int(2));
    }

    #[test]
    fn generic_det_matches_leibniz_on_complex_hermitian(x in herm3(1, false)) {
        let m = to_complex_matrix(&x).unwrap();
        prop_assert_eq!(generic_det(&x).unwrap(), leibniz3(&m));
        prop_assert_eq!(newton_det(&x).unwrap(), leibniz3(&m));
        prop_assert_eq!(jordan_rank3(&x).unwrap(), m.rank());
    }

    #[test]
    fn octonionic_cubic_identities(x in herm3(3, true), y in herm3(3, true)) {
        let d = generic_det(&x).unwrap();
        prop_assert_eq!(&d, &freudenthal_det(&x).unwrap());
        let xs = sharp(&x).unwrap();
        prop_assert_eq!(jordan_product(&xs, &x).unwrap(), JordanElement::identity(3, 3, Field::Gaussian).scale(&d));
        prop_assert_eq!(generic_det(&xs).unwrap(), &d * &d);
        prop_assert_eq!(trace_form(&x, &y).unwrap(), trace_form(&y, &x).unwrap());
    }

    #[test]
    fn jordan_identity_over_octonions(x in herm3(3, false), y in herm3(3, false)) {
        let x2 = x.square();
        let lhs = jordan_product(&x2, &jordan_product(&x, &y).unwrap()).unwrap();
        let rhs = jordan_product(&x, &jordan_product(&x2, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_product_matches_naive(a in square_matrix(4), b in square_matrix(4)) {
        prop_assert_eq!(&a * &b, naive_mul(&a, &b));
    }

    #[test]
    fn inverse_round_trips(a in square_matrix(5)) {
        match a.inverse().unwrap() {
            Some(inv) => {
                prop_assert_eq!(&a * &inv, Matrix::identity(5));
                prop_assert_eq!(&inv.det().unwrap() * &a.det().unwrap(), Scalar::one());
            }
            None => prop_assert!(a.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn pfaffian_squares_to_det(a in skew_matrix(6)) {
        let pf = a.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, a.det().unwrap());
    }

    #[test]
    fn det_is_multiplicative(a in square_matrix(3), b in square_matrix(3)) {
        prop_assert_eq!((&a * &b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        prop_assert_eq!(a.det().unwrap(), leibniz3(&a));
    }
}

#[test]
fn scalar_json_uses_fraction_strings() {
    let s = &Scalar::ratio(-3, 4) + &(&Scalar::i() * &Scalar::ratio(2, 1));
    let j = serde_json::to_string(&s).unwrap();
    assert_eq!(j, r#"{"re":"-3/4","im":"2/1"}"#);
    assert_eq!(serde_json::from_str::<Scalar>(&j).unwrap(), s);
}
