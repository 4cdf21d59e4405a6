use legdet::exactla::{cauchy_closed_form, cauchy_matrix, det};
use legdet::Error;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = BigRational> {
    (-15i64..=15, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn nodes() -> impl Strategy<Value = (Vec<BigRational>, Vec<BigRational>, bool)> {
    (1usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(rat(), n),
            proptest::collection::vec(rat(), n),
            any::<bool>(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_elimination((xs, ys, diagonal) in nodes()) {
        let ys = if diagonal { xs.clone() } else { ys };
        match cauchy_matrix(&xs, &ys) {
            Ok(m) => prop_assert_eq!(cauchy_closed_form(&xs, &ys).unwrap(), det(&m).unwrap()),
            Err(Error::PoleEncountered { .. }) => {
                let closed = cauchy_closed_form(&xs, &ys);
                prop_assert!(
                    matches!(closed, Err(Error::PoleEncountered { .. })),
                    "closed form should report the pole too"
                );
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
