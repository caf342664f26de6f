//! Randomized invariant checks across modules.

use proptest::prelude::*;

use qdldpc::alist::{from_alist, to_alist};
use qdldpc::bp4::{BpConfig, Decimation};
use qdldpc::channel::{sample_error, syndrome, DepolarizingParams, PauliErrorVector};
use qdldpc::codes::{build_camel_pair, build_classical, AffineRowSpec};
use qdldpc::dyadic::{lift, BinaryMatrix, ExponentMatrix};
use qdldpc::f2linalg::{count_4cycles, girth, in_rowspace, TannerGraph};
use qdldpc::gf2e::make_field;

fn example_pair() -> qdldpc::codes::CssCodePair {
    let f = make_field(3).unwrap();
    let el = |l: u32| f.element(l).unwrap();
    build_camel_pair(
        &f,
        &[
            AffineRowSpec::new(el(2), el(1)),
            AffineRowSpec::new(el(4), el(4)),
            AffineRowSpec::new(el(6), el(6)),
        ],
        &[
            AffineRowSpec::new(el(1), el(2)),
            AffineRowSpec::new(el(3), el(5)),
            AffineRowSpec::new(el(5), el(1)),
        ],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alist_round_trip(rows in 1usize..12, cols in 1usize..20, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let grid: Vec<Vec<u8>> = (0..rows)
            .map(|_| (0..cols).map(|_| u8::from(rng.random::<f64>() < 0.3)).collect())
            .collect();
        if let Ok(m) = BinaryMatrix::from_dense(&grid) {
            let text = to_alist(&m);
            let back = from_alist(&text).unwrap();
            prop_assert_eq!(&back, &m);
            prop_assert_eq!(to_alist(&back), text);
        }
    }

    #[test]
    fn field_add_mul_consistency(ell in 1u32..=8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = make_field(ell).unwrap();
        let size = f.size() as u32;
        let (a, b, c) = (f.element(a % size).unwrap(), f.element(b % size).unwrap(), f.element(c % size).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.psi(f.add(a, b)), f.psi(a) ^ f.psi(b));
        if !a.is_zero() {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv).label(), 1);
        }
    }

    #[test]
    fn rowspace_closed_under_row_addition(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let grid: Vec<Vec<u8>> = (0..6)
            .map(|_| (0..15).map(|_| u8::from(rng.random::<f64>() < 0.4)).collect())
            .collect();
        let Ok(m) = BinaryMatrix::from_dense(&grid) else { return Ok(()) };
        // any XOR of rows stays in the row space
        let mask: u8 = rng.random();
        let mut v = vec![0u8; 15];
        for (r, row) in grid.iter().enumerate() {
            if mask >> (r % 8) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
        prop_assert!(in_rowspace(&m, &v).unwrap());
    }

    #[test]
    fn theorem1_girth_on_random_constructions(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ell = rng.random_range(2u32..=4);
        let f = make_field(ell).unwrap();
        let w = rng.random_range(2..=(f.order()).min(4));
        let mut labels: Vec<u32> = (1..f.size() as u32).collect();
        labels.shuffle(&mut rng);
        let rows: Vec<AffineRowSpec> = labels[..w]
            .iter()
            .map(|&a| {
                AffineRowSpec::new(
                    f.element(a).unwrap(),
                    f.element(rng.random_range(0..f.size() as u32)).unwrap(),
                )
            })
            .collect();
        let code = build_classical(&f, &rows).unwrap();
        prop_assert_eq!(count_4cycles(code.h()), 0);
        let g = girth(&TannerGraph::new(code.h()));
        prop_assert!(g.map_or(true, |v| v >= 6));
    }

    #[test]
    fn lifted_matrix_row_column_weights(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ell = rng.random_range(1u32..=3);
        let f = make_field(ell).unwrap();
        let w = rng.random_range(1usize..=3);
        let n = rng.random_range(1usize..=6);
        let entries: Vec<_> =
            (0..w * n).map(|_| f.element(rng.random_range(0..f.size() as u32)).unwrap()).collect();
        let p = ExponentMatrix::new(f.clone(), w, n, entries).unwrap();
        let h = lift(&p);
        for i in 0..h.rows() {
            prop_assert_eq!(h.row_weight(i), n);
        }
        for col in h.col_supports() {
            prop_assert_eq!(col.len(), w);
        }
    }
}

#[test]
fn syndrome_linearity_and_stabilizer_nullity_bulk() {
    let code = example_pair();
    let params = DepolarizingParams::new(0.15, 4242).unwrap();
    for t in 0..500 {
        let e1 = sample_error(code.n(), &params, 2 * t);
        let e2 = sample_error(code.n(), &params, 2 * t + 1);
        let s1 = syndrome(&code, &e1).unwrap();
        let s2 = syndrome(&code, &e2).unwrap();
        let sum = syndrome(&code, &e1.add(&e2).unwrap()).unwrap();
        for i in 0..s1.x_bits.len() {
            assert_eq!(sum.x_bits[i], s1.x_bits[i] ^ s2.x_bits[i]);
        }
        for i in 0..s1.z_bits.len() {
            assert_eq!(sum.z_bits[i], s1.z_bits[i] ^ s2.z_bits[i]);
        }
    }

    // X-type vectors on H_X rows and Z-type on H_Z rows are stabilizers
    for i in 0..code.hx().rows() {
        let mut sym = vec![0u8; code.n()];
        for &j in code.hx().row(i) {
            sym[j as usize] = qdldpc::channel::GF4_X;
        }
        let e = PauliErrorVector::new(sym).unwrap();
        assert!(syndrome(&code, &e).unwrap().is_zero());
    }
    for i in 0..code.hz().rows() {
        let mut sym = vec![0u8; code.n()];
        for &j in code.hz().row(i) {
            sym[j as usize] = qdldpc::channel::GF4_Z;
        }
        let e = PauliErrorVector::new(sym).unwrap();
        assert!(syndrome(&code, &e).unwrap().is_zero());
    }
}

#[test]
fn decimated_decode_respects_pin_across_schedules() {
    use qdldpc::bp4::{Bp4Decoder, Schedule};
    let code = example_pair();
    let decoder = Bp4Decoder::new(&code);
    let params = DepolarizingParams::new(0.06, 9).unwrap();
    for schedule in [Schedule::Flooding, Schedule::AlternatingXz, Schedule::SerialCheck] {
        let cfg = BpConfig { schedule, ..BpConfig::default() };
        for trial in 0..30 {
            let e = sample_error(code.n(), &params, trial);
            let s = syndrome(&code, &e).unwrap();
            for label in 0..4u8 {
                let decim = Decimation { qubit: code.assembled_column(), label };
                let out = decoder.decode(&s, 0.06, &cfg, Some(decim)).unwrap();
                assert_eq!(out.estimate.symbol(code.assembled_column()), label);
                if out.converged {
                    assert_eq!(syndrome(&code, &out.estimate).unwrap(), s);
                }
            }
        }
    }
}

#[test]
fn ler_monotone_in_p_within_confidence() {
    use qdldpc::sim::{run_point, DecoderKind, SweepConfig};
    let code = example_pair();
    for decoder in [DecoderKind::PlainBp4, DecoderKind::Camel, DecoderKind::Genie] {
        let mut cfg = SweepConfig::new(decoder, vec![0.12, 0.09, 0.06], 5150);
        cfg.target_logical_errors = 80;
        cfg.max_trials = 200_000;
        let points: Vec<_> =
            (0..3).map(|i| run_point(&code, i, &cfg).unwrap()).collect();
        for pair in points.windows(2) {
            // LER must not increase as p decreases, allowing CI overlap
            assert!(
                pair[0].ler + pair[0].ci95 >= pair[1].ler - pair[1].ci95,
                "{decoder:?}: ler({}) = {:.3e} < ler({}) = {:.3e} beyond CI",
                pair[0].p,
                pair[0].ler,
                pair[1].p,
                pair[1].ler
            );
        }
    }
}

#[test]
fn damped_and_serial_decodes_stay_sound() {
    use qdldpc::bp4::{Bp4Decoder, Schedule};
    let code = example_pair();
    let decoder = Bp4Decoder::new(&code);
    let params = DepolarizingParams::new(0.05, 77).unwrap();
    let variants = [
        BpConfig { damping: 0.3, ..BpConfig::default() },
        BpConfig { schedule: Schedule::SerialCheck, ..BpConfig::default() },
        BpConfig { schedule: Schedule::AlternatingXz, ..BpConfig::default() },
    ];
    for cfg in variants {
        for trial in 0..100 {
            let e = sample_error(code.n(), &params, trial);
            let s = syndrome(&code, &e).unwrap();
            let a = decoder.decode(&s, 0.05, &cfg, None).unwrap();
            let b = decoder.decode(&s, 0.05, &cfg, None).unwrap();
            assert_eq!(a, b, "determinism under {cfg:?}");
            if a.converged {
                assert_eq!(syndrome(&code, &a.estimate).unwrap(), s, "soundness under {cfg:?}");
            }
        }
    }
}
