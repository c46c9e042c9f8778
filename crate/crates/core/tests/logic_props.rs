use proptest::prelude::*;
use tramix::logic::{bulk_and, bulk_maj3, bulk_not, bulk_op, bulk_or, bulk_xor, BulkOpKind};
use tramix::substrate::{BitRow, RowId, Subarray, CONST0, CONST1};

const W: usize = 64;

fn loaded(values: &[u64]) -> Subarray {
    let mut sub = Subarray::new(16, W).unwrap();
    for (i, &v) in values.iter().enumerate() {
        sub.write_row(RowId(5 + i), &BitRow::from_u64(W, v)).unwrap();
    }
    sub
}

fn word(sub: &Subarray, row: usize) -> u64 {
    sub.read_row(RowId(row)).unwrap().words()[0]
}

proptest! {
    #[test]
    fn every_op_matches_word_oracle_and_preserves_inputs(a: u64, b: u64, c: u64) {
        for kind in BulkOpKind::ALL {
            let mut sub = loaded(&[a, b, c]);
            let inputs: Vec<RowId> = (5..5 + kind.arity()).map(RowId).collect();
            bulk_op(&mut sub, kind, &inputs, RowId(10)).unwrap();
            let expect = match kind {
                BulkOpKind::And => a & b,
                BulkOpKind::Or => a | b,
                BulkOpKind::Not => !a,
                BulkOpKind::Xor => a ^ b,
                BulkOpKind::Maj3 => (a & b) | (b & c) | (a & c),
            };
            prop_assert_eq!(word(&sub, 10), expect, "{}", kind);
            prop_assert_eq!((word(&sub, 5), word(&sub, 6), word(&sub, 7)), (a, b, c));
        }
    }

    #[test]
    fn operand_order_does_not_matter(a: u64, b: u64, c: u64) {
        let mut sub = loaded(&[a, b, c]);
        bulk_and(&mut sub, RowId(5), RowId(6), RowId(8)).unwrap();
        bulk_and(&mut sub, RowId(6), RowId(5), RowId(9)).unwrap();
        bulk_or(&mut sub, RowId(5), RowId(6), RowId(10)).unwrap();
        bulk_or(&mut sub, RowId(6), RowId(5), RowId(11)).unwrap();
        bulk_xor(&mut sub, RowId(5), RowId(6), RowId(12)).unwrap();
        bulk_xor(&mut sub, RowId(6), RowId(5), RowId(13)).unwrap();
        prop_assert_eq!(word(&sub, 8), word(&sub, 9));
        prop_assert_eq!(word(&sub, 10), word(&sub, 11));
        prop_assert_eq!(word(&sub, 12), word(&sub, 13));

        let perms = [[5, 6, 7], [5, 7, 6], [6, 5, 7], [6, 7, 5], [7, 5, 6], [7, 6, 5]];
        let mut outs = Vec::new();
        for p in perms {
            bulk_maj3(&mut sub, RowId(p[0]), RowId(p[1]), RowId(p[2]), RowId(14)).unwrap();
            outs.push(word(&sub, 14));
        }
        prop_assert!(outs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn de_morgan(a: u64, b: u64) {
        let mut sub = loaded(&[a, b]);
        bulk_and(&mut sub, RowId(5), RowId(6), RowId(7)).unwrap();
        bulk_not(&mut sub, RowId(7), RowId(8)).unwrap();
        bulk_not(&mut sub, RowId(5), RowId(9)).unwrap();
        bulk_not(&mut sub, RowId(6), RowId(10)).unwrap();
        bulk_or(&mut sub, RowId(9), RowId(10), RowId(11)).unwrap();
        prop_assert_eq!(word(&sub, 8), word(&sub, 11));
    }

    #[test]
    fn control_row_identity(a: u64, b: u64) {
        let mut sub = loaded(&[a, b]);
        bulk_maj3(&mut sub, RowId(5), RowId(6), CONST0, RowId(7)).unwrap();
        bulk_and(&mut sub, RowId(5), RowId(6), RowId(8)).unwrap();
        bulk_maj3(&mut sub, RowId(5), RowId(6), CONST1, RowId(9)).unwrap();
        bulk_or(&mut sub, RowId(5), RowId(6), RowId(10)).unwrap();
        prop_assert_eq!(word(&sub, 7), word(&sub, 8));
        prop_assert_eq!(word(&sub, 9), word(&sub, 10));
    }

    #[test]
    fn not_is_an_involution(a: u64) {
        let mut sub = loaded(&[a]);
        bulk_not(&mut sub, RowId(5), RowId(6)).unwrap();
        bulk_not(&mut sub, RowId(6), RowId(7)).unwrap();
        prop_assert_eq!(word(&sub, 7), a);
    }

    #[test]
    fn wide_rows_match_per_word(words in proptest::collection::vec(any::<u64>(), 6)) {
        // 150 columns spans three words with a ragged tail
        let width = 150;
        let mut sub = Subarray::new(10, width).unwrap();
        let a = BitRow::from_words(width, words[..3].to_vec());
        let b = BitRow::from_words(width, words[3..].to_vec());
        sub.write_row(RowId(5), &a).unwrap();
        sub.write_row(RowId(6), &b).unwrap();
        bulk_xor(&mut sub, RowId(5), RowId(6), RowId(7)).unwrap();
        let expect: Vec<u64> = a.words().iter().zip(b.words()).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(sub.read_row(RowId(7)).unwrap(), BitRow::from_words(width, expect));
    }
}
