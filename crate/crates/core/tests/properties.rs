use proptest::prelude::*;

use regmat::label::numbered;
use regmat::matroid::{dual_repr, StandardRepr};
use regmat::format::matrix_to_text;
use regmat::{frac, parse_matrix, short_tableau_pivot, Matrix, PivotSpec, RatMatrix};

fn rational_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec((-6i64..=6, 1i64..=4), r * c).prop_map(move |v| {
            let data = v.into_iter().map(|(n, d)| frac(n, d)).collect();
            Matrix::new(numbered("r", r), numbered("c", c), data).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(a in rational_matrix()) {
        let back = parse_matrix(&matrix_to_text(&a)).unwrap().to_rational();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn pivot_twice_restores(a in rational_matrix(), i in 0usize..4, j in 0usize..4) {
        let (i, j) = (i % a.nrows(), j % a.ncols());
        prop_assume!(!num_traits::Zero::is_zero(&a.get(i, j)));
        let p = PivotSpec::new(a.row_labels()[i].clone(), a.col_labels()[j].clone());
        let once = short_tableau_pivot(&a, &p).unwrap();
        let back = short_tableau_pivot(&once, &PivotSpec::new(p.col.clone(), p.row.clone())).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dual_is_involutive(a in rational_matrix()) {
        let s = StandardRepr::new(a.clone()).unwrap();
        let twice = dual_repr(&dual_repr(&s));
        prop_assert_eq!(twice.matrix(), &a);
    }
}
