use proptest::prelude::*;
use qinv_core::diagram::FramedLinkDiagram;
use qinv_core::quadform::{inertia, linking_matrix, Inertia, IntSymMatrix};

fn sym(n: usize, vals: &[i64]) -> IntSymMatrix {
    let mut m = IntSymMatrix::zeros(n);
    let mut it = vals.iter().cycle();
    for i in 0..n {
        for j in i..n {
            m.set(i, j, *it.next().unwrap());
        }
    }
    m
}

/// Product of elementary integer operations; determinant ±1.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for &(a, b, c) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            for row in &mut u {
                row[a] = -row[a];
            }
        } else {
            for row in &mut u {
                row[a] += c * row[b];
            }
        }
    }
    u
}

fn hyperbolic() -> IntSymMatrix {
    IntSymMatrix::from_rows(&[vec![0, 1], vec![1, 0]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sylvester_law(n in 1usize..6, vals in prop::collection::vec(-3i64..4, 15),
                     ops in prop::collection::vec((0usize..6, 0usize..6, -2i64..3), 0..6)) {
        let m = sym(n, &vals);
        let u = unimodular(n, &ops);
        prop_assert_eq!(inertia(&m), inertia(&m.congruent(&u)));
        prop_assert_eq!(inertia(&m).dim(), n);
    }

    #[test]
    fn two_by_two_oracle(a in -4i64..5, b in -4i64..5, c in -4i64..5) {
        let m = IntSymMatrix::from_rows(&[vec![a, b], vec![b, c]]);
        let det = a * c - b * b;
        let expected = if det < 0 {
            (1, 1, 0)
        } else if det > 0 {
            if a > 0 { (2, 0, 0) } else { (0, 2, 0) }
        } else if a + c > 0 {
            (1, 0, 1)
        } else if a + c < 0 {
            (0, 1, 1)
        } else {
            (0, 0, 2)
        };
        let i = inertia(&m);
        prop_assert_eq!((i.b_plus, i.b_minus, i.nullity), expected);
    }

    #[test]
    fn move_rules(n in 0usize..5, vals in prop::collection::vec(-3i64..4, 15)) {
        let m = sym(n, &vals);
        let base = inertia(&m);
        prop_assert_eq!(inertia(&m.direct_sum(&hyperbolic())), base + Inertia { b_plus: 1, b_minus: 1, nullity: 0 });
        prop_assert_eq!(inertia(&m.direct_sum(&IntSymMatrix::zeros(1))), base + Inertia { b_plus: 0, b_minus: 0, nullity: 1 });
    }
}

#[test]
fn linking_matrix_examples() {
    let hopf = linking_matrix(&FramedLinkDiagram::hopf(0, 0));
    assert_eq!(hopf, hyperbolic());
    assert_eq!(inertia(&hopf), Inertia { b_plus: 1, b_minus: 1, nullity: 0 });
    assert_eq!(inertia(&linking_matrix(&FramedLinkDiagram::unknot(0))).nullity, 1);
    assert_eq!(inertia(&linking_matrix(&FramedLinkDiagram::unknot(-3))).b_minus, 1);
    let mirror = linking_matrix(&FramedLinkDiagram::hopf(2, 0).mirror());
    assert_eq!(mirror.rows(), vec![vec![-2, -1], vec![-1, 0]]);
}
