use proptest::prelude::*;
use tramix::bitserial::{vadd, vcompare_ge, vsum_reduce, write_lanes, VerticalVector};
use tramix::substrate::{RowId, Subarray};

const LANES: usize = 16;

fn vectors(n: usize) -> (Subarray, [VerticalVector; 4]) {
    let sub = Subarray::new(5 + 4 * n + 1, LANES).unwrap();
    let v = |i: usize| VerticalVector::new(RowId(5 + i * n), n).unwrap();
    (sub, [v(0), v(1), v(2), v(3)])
}

fn lanes(n: usize) -> impl Strategy<Value = Vec<u64>> {
    let max = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    proptest::collection::vec(0..=max, LANES)
}

proptest! {
    #[test]
    fn vadd_matches_integer_addition(n in prop_oneof![Just(1usize), Just(4), Just(8), Just(16), Just(33)], seed: u64) {
        let mask = (1u64 << n) - 1;
        let xs: Vec<u64> = (0..LANES as u64).map(|i| seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(i as u32 * 5) & mask).collect();
        let ys: Vec<u64> = (0..LANES as u64).map(|i| seed.rotate_right(i as u32 * 3) & mask).collect();
        let (mut sub, [x, y, out, _]) = vectors(n);
        write_lanes(&mut sub, &x, &xs).unwrap();
        write_lanes(&mut sub, &y, &ys).unwrap();
        vadd(&mut sub, &x, &y, &out).unwrap();
        let got = vsum_reduce(&sub, &out).unwrap();
        for j in 0..LANES {
            prop_assert_eq!(got[j], (xs[j] + ys[j]) & mask);
        }
        prop_assert_eq!(vsum_reduce(&sub, &x).unwrap(), xs);
        prop_assert_eq!(vsum_reduce(&sub, &y).unwrap(), ys);
    }

    #[test]
    fn vadd_commutes_and_associates(xs in lanes(8), ys in lanes(8), zs in lanes(8)) {
        let n = 8;
        let mut sub = Subarray::new(5 + 6 * n, LANES).unwrap();
        let v = |i: usize| VerticalVector::new(RowId(5 + i * n), n).unwrap();
        let (x, y, z, t0, t1, t2) = (v(0), v(1), v(2), v(3), v(4), v(5));
        write_lanes(&mut sub, &x, &xs).unwrap();
        write_lanes(&mut sub, &y, &ys).unwrap();
        write_lanes(&mut sub, &z, &zs).unwrap();
        // (x + y) + z
        vadd(&mut sub, &x, &y, &t0).unwrap();
        vadd(&mut sub, &t0, &z, &t1).unwrap();
        let left = vsum_reduce(&sub, &t1).unwrap();
        // x + (z + y)
        vadd(&mut sub, &z, &y, &t0).unwrap();
        vadd(&mut sub, &x, &t0, &t2).unwrap();
        let right = vsum_reduce(&sub, &t2).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn lanes_are_independent(xs in lanes(8), ys in lanes(8), lane in 0..LANES, poke in 0u64..256) {
        let run = |xs: &[u64]| {
            let (mut sub, [x, y, out, _]) = vectors(8);
            write_lanes(&mut sub, &x, xs).unwrap();
            write_lanes(&mut sub, &y, &ys).unwrap();
            vadd(&mut sub, &x, &y, &out).unwrap();
            vcompare_ge(&mut sub, &x, &y, RowId(5 + 4 * 8)).unwrap();
            let ge: Vec<bool> = (0..LANES).map(|j| sub.get(RowId(5 + 4 * 8), j)).collect();
            (vsum_reduce(&sub, &out).unwrap(), ge)
        };
        let before = run(&xs);
        let mut changed = xs.clone();
        changed[lane] = poke;
        let after = run(&changed);
        for j in (0..LANES).filter(|&j| j != lane) {
            prop_assert_eq!(before.0[j], after.0[j]);
            prop_assert_eq!(before.1[j], after.1[j]);
        }
    }

    #[test]
    fn compare_matches_unsigned_order(n in 1usize..20, xs in lanes(19), ys in lanes(19)) {
        let mask = (1u64 << n) - 1;
        let xs: Vec<u64> = xs.iter().map(|v| v & mask).collect();
        let mut ys: Vec<u64> = ys.iter().map(|v| v & mask).collect();
        ys[0] = xs[0];
        let (mut sub, [x, y, _, _]) = vectors(n);
        write_lanes(&mut sub, &x, &xs).unwrap();
        write_lanes(&mut sub, &y, &ys).unwrap();
        let outrow = RowId(5 + 2 * n);
        vcompare_ge(&mut sub, &x, &y, outrow).unwrap();
        for j in 0..LANES {
            prop_assert_eq!(sub.get(outrow, j), xs[j] >= ys[j], "lane {} {} vs {}", j, xs[j], ys[j]);
        }
    }

    #[test]
    fn reduce_matches_naive_decode(bits in proptest::collection::vec(any::<bool>(), 12 * LANES)) {
        let n = 12;
        let (mut sub, [x, ..]) = vectors(n);
        for i in 0..n {
            for j in 0..LANES {
                sub.set(RowId(5 + i), j, bits[i * LANES + j]).unwrap();
            }
        }
        let got = vsum_reduce(&sub, &x).unwrap();
        for j in 0..LANES {
            let naive: u64 = (0..n).map(|i| (bits[i * LANES + j] as u64) * 2u64.pow(i as u32)).sum();
            prop_assert_eq!(got[j], naive);
        }
    }
}

#[test]
fn sixty_four_bit_lanes_wrap() {
    let (mut sub, [x, y, out, _]) = vectors(64);
    write_lanes(&mut sub, &x, &[u64::MAX, 1 << 63, 12345]).unwrap();
    write_lanes(&mut sub, &y, &[1, 1 << 63, 0]).unwrap();
    vadd(&mut sub, &x, &y, &out).unwrap();
    assert_eq!(&vsum_reduce(&sub, &out).unwrap()[..3], &[0, 0, 12345]);
}
