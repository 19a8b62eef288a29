use ftmcfe::bench::linear_fit;
use ftmcfe::harness::{encode, run_round, Dropout, FixedPointCodec, KeyStore, RoundSpec};
use ftmcfe::pairing::toy::{ToyG, ToyGHat, ToyGt};
use ftmcfe::pairing::{
    multi_pair, pair, scalar_from_bytes, scalar_from_i64, scalar_to_bytes, Bls12, CurveId, GroupElement,
    PairingContext, Sign, ToyExponent, ToyScalar,
};
use ftmcfe::poly::{commit, shifted_commit, vanishing_poly, verify_degree, ParticipationSet};
use ftmcfe::scheme::{
    bsgs_dlog, client_init, decrypt, decrypt_components, encrypt, pkeygen, ta_setup, ta_setup_retaining_gamma,
    Ciphertext, ClientKeyPair, DlogConfig, FunctionVector, MasterPublicKey, PartialFunctionalKey,
};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

type Toy = ToyExponent;

/// `(n, t, members, x, y)` with `|members| ≥ t`.
fn instance() -> impl Strategy<Value = (usize, usize, Vec<usize>, Vec<i64>, Vec<i64>)> {
    (1usize..=8).prop_flat_map(|n| {
        (1..=n).prop_flat_map(move |t| {
            (
                Just(n),
                Just(t),
                subsequence((1..=n).collect::<Vec<_>>(), t..=n),
                prop::collection::vec(0i64..=100, n),
                prop::collection::vec(0i64..=100, n),
            )
        })
    })
}

struct Fixture {
    mpk: MasterPublicKey<Toy>,
    clients: Vec<ClientKeyPair<Toy>>,
}

fn fixture(n: usize, seed: u64) -> Fixture {
    let ctx = PairingContext::<Toy>::init(CurveId::ToyExponent).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mpk = ta_setup(n, &ctx, &mut rng).unwrap();
    let clients = (1..=n).map(|i| client_init(i, n, &mut rng).unwrap()).collect();
    Fixture { mpk, clients }
}

fn toy_scalar() -> impl Strategy<Value = ToyScalar> {
    any::<u64>().prop_map(ToyScalar::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decrypt_matches_integer_oracle((n, t, members, x, y) in instance(), seed in any::<u64>()) {
        let f = fixture(n, seed);
        let set = ParticipationSet::new(n, members.clone()).unwrap();
        let yv = FunctionVector::from_i64(&y);
        let keys: Vec<_> = members.iter().map(|&i| pkeygen(&set, &f.clients[i - 1], &yv, t, &f.mpk).unwrap()).collect();
        let cts: Vec<_> = members.iter().map(|&i| encrypt(x[i - 1], &f.clients[i - 1], t, "l", &f.mpk).unwrap()).collect();
        let comps = decrypt_components(&set, &yv, &keys, &cts, "l", &f.mpk).unwrap();
        prop_assert_eq!(comps.c1, comps.c2);
        let table = f.mpk.dlog_table(DlogConfig::new(100_000).unwrap()).unwrap();
        let got = decrypt(&set, &yv, &keys, &cts, "l", &table, &f.mpk).unwrap();
        let oracle: i64 = members.iter().map(|&i| x[i - 1] * y[i - 1]).sum();
        prop_assert_eq!(got, oracle);

        let mut rev_keys = keys.clone();
        rev_keys.reverse();
        let mut rev_cts = cts.clone();
        rev_cts.rotate_left(members.len() / 2);
        prop_assert_eq!(decrypt(&set, &yv, &rev_keys, &rev_cts, "l", &table, &f.mpk).unwrap(), oracle);
    }

    #[test]
    fn undersized_sets_abort((n, t, members, x, _y) in instance(), seed in any::<u64>(), cut in 0usize..8) {
        prop_assume!(t >= 2);
        let f = fixture(n, seed);
        let keep = members.len().min(cut % t);
        let small = ParticipationSet::new(n, members[..keep].iter().copied()).unwrap();
        let yv = FunctionVector::from_i64(&vec![1; n]);
        let cts: Vec<_> = small.members().iter().map(|&i| encrypt(x[i - 1], &f.clients[i - 1], t, "l", &f.mpk).unwrap()).collect();
        let err = decrypt_components(&small, &yv, &[], &cts, "l", &f.mpk).unwrap_err();
        prop_assert_eq!(err.code(), "quorum-too-small");
        for &i in small.members() {
            prop_assert_eq!(pkeygen(&small, &f.clients[i - 1], &yv, t, &f.mpk).unwrap_err().code(), "quorum-too-small");
        }
    }

    #[test]
    fn vanishing_poly_roots_are_the_absent_indices(n in 1usize..=10, mask in any::<u16>()) {
        let set = ParticipationSet::new(n, (1..=n).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap();
        let poly = vanishing_poly::<ToyScalar>(&set);
        prop_assert_eq!(poly.degree(), n - set.len());
        for i in 1..=n {
            prop_assert_eq!(poly.evaluate(ToyScalar::from(i as u64)) == ToyScalar::from(0u64), !set.contains(i));
        }
    }

    #[test]
    fn commitments_agree_with_gamma_oracle(n in 1usize..=10, mask in any::<u16>(), seed in any::<u64>()) {
        let ctx = PairingContext::<Toy>::init(CurveId::ToyExponent).unwrap();
        let (mpk, gamma) = ta_setup_retaining_gamma(n, &ctx, &mut ChaCha20Rng::seed_from_u64(seed)).unwrap();
        let set = ParticipationSet::new(n, (1..=n).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap();
        let poly = vanishing_poly::<ToyScalar>(&set);
        let at_gamma = poly.evaluate(gamma.0);
        prop_assert_eq!(commit(&poly, &mpk.powers.g1).unwrap(), ctx.g1 * at_gamma);
        prop_assert_eq!(commit(&poly, &mpk.powers.gh1).unwrap(), ctx.gh1 * at_gamma);
    }

    #[test]
    fn degree_check_accepts_exactly_honest_pairs(
        n in 1usize..=8, t in 1usize..=8, a in any::<u8>(), b in any::<u8>(), seed in any::<u64>()
    ) {
        prop_assume!(t <= n);
        let f = fixture(n, seed);
        let p = &f.mpk.powers;
        let sa = ParticipationSet::new(n, (1..=n).filter(|i| a >> (i - 1) & 1 == 1)).unwrap();
        let sb = ParticipationSet::new(n, (1..=n).filter(|i| b >> (i - 1) & 1 == 1)).unwrap();
        let pa = vanishing_poly::<ToyScalar>(&sa);
        let pb = vanishing_poly::<ToyScalar>(&sb);
        match shifted_commit(&pa, t, &p.g2) {
            Ok(shifted) => {
                prop_assert!(sa.len() >= t);
                prop_assert!(verify_degree(&shifted, &commit(&pa, &p.gh1).unwrap(), t, p, &f.mpk.ctx));
                if pa.coeffs() != pb.coeffs() {
                    prop_assert!(!verify_degree(&shifted, &commit(&pb, &p.gh1).unwrap(), t, p, &f.mpk.ctx));
                }
            }
            Err(e) => {
                prop_assert!(sa.len() < t);
                prop_assert_eq!(e.code(), "degree-exceeds-srs");
            }
        }
    }

    #[test]
    fn toy_bilinearity_and_multi_pair(s in toy_scalar(), z in toy_scalar(), terms in prop::collection::vec((toy_scalar(), toy_scalar(), any::<bool>()), 1..10)) {
        let ctx = PairingContext::<Toy>::init(CurveId::ToyExponent).unwrap();
        prop_assert_eq!(pair::<Toy>(&(ctx.g * s), &(ctx.gh * z)), pair::<Toy>(&ctx.g, &ctx.gh) * (s * z));
        let list: Vec<_> = terms.iter().map(|(a, b, neg)| (ToyG(*a), ToyGHat(*b), if *neg { Sign::Minus } else { Sign::Plus })).collect();
        let naive = list.iter().fold(ToyGt::identity(), |acc, (a, b, sg)| match sg {
            Sign::Plus => acc + pair::<Toy>(a, b),
            Sign::Minus => acc - pair::<Toy>(a, b),
        });
        prop_assert_eq!(multi_pair::<Toy>(&list).unwrap(), naive);
    }

    #[test]
    fn bsgs_recovers_everything_in_range(bound in 1u64..5_000, v in any::<i64>(), base in 1u64..u64::MAX) {
        let base = ToyGt(ToyScalar::from(base));
        let v = v % (bound as i64 + 1);
        prop_assert_eq!(bsgs_dlog(&(base * scalar_from_i64::<ToyScalar>(v)), &base, bound).unwrap(), v);
    }

    #[test]
    fn scalar_encoding_round_trips(v in any::<i64>()) {
        type Fr = <Bls12 as ftmcfe::pairing::Backend>::Scalar;
        let s: Fr = scalar_from_i64(v);
        prop_assert_eq!(scalar_from_bytes::<Fr>(&scalar_to_bytes(&s)).unwrap(), s);
    }

    #[test]
    fn wire_objects_round_trip_and_reject_damage((n, t, members, x, y) in instance(), seed in any::<u64>(), label in "[a-z0-9:/-]{0,24}", cut in any::<prop::sample::Index>()) {
        let f = fixture(n, seed);
        let set = ParticipationSet::new(n, members.clone()).unwrap();
        let i = members[0];
        let ct = encrypt(x[i - 1], &f.clients[i - 1], t, &label, &f.mpk).unwrap();
        let key = pkeygen(&set, &f.clients[i - 1], &FunctionVector::from_i64(&y), t, &f.mpk).unwrap();

        let cb = ct.to_bytes();
        prop_assert_eq!(&Ciphertext::<Toy>::from_bytes(&cb).unwrap(), &ct);
        prop_assert!(Ciphertext::<Toy>::from_bytes(&cb[..cut.index(cb.len())]).is_err());
        let kb = key.to_bytes();
        prop_assert_eq!(&PartialFunctionalKey::<Toy>::from_bytes(&kb).unwrap(), &key);
        prop_assert!(PartialFunctionalKey::<Toy>::from_bytes(&kb[..cut.index(kb.len())]).is_err());
        let sk = f.clients[i - 1].to_bytes();
        prop_assert_eq!(&ClientKeyPair::<Toy>::from_bytes(&sk).unwrap(), &f.clients[i - 1]);
        let mb = f.mpk.to_bytes();
        prop_assert_eq!(&MasterPublicKey::<Toy>::from_bytes(&mb).unwrap(), &f.mpk);

        let mut extended = cb.clone();
        extended.push(0);
        prop_assert!(Ciphertext::<Toy>::from_bytes(&extended).is_err());
        let mut wrong_kind = cb;
        wrong_kind[5] = 2;
        prop_assert!(Ciphertext::<Toy>::from_bytes(&wrong_kind).is_err());
    }

    #[test]
    fn fixed_point_error_is_half_a_step(v in -1.0e6f64..1.0e6, exp in 0u32..6) {
        let scale = 10u64.pow(exp);
        let q = encode(v, scale).unwrap();
        prop_assert!((q as f64 / scale as f64 - v).abs() <= 0.5 / scale as f64 + 1e-9);
    }

    #[test]
    fn least_squares_recovers_lines(a in -100.0f64..100.0, b in -100.0f64..100.0, xs in prop::collection::btree_set(-1000i32..1000, 2..12)) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
        let fit = linear_fit(&xs, &ys).unwrap();
        prop_assert!((fit.slope - a).abs() < 1e-6 && (fit.intercept - b).abs() < 1e-4 && fit.r2 > 1.0 - 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rounds_match_real_arithmetic(
        n in 1usize..=8, d in 1usize..=4, t_frac in 0.0f64..1.0, q in 0.0f64..0.5,
        dseed in any::<u64>(), kseed in any::<u64>(), gseed in any::<u64>(),
        weights in prop::collection::vec(0.0f64..1.0, 8),
    ) {
        let t = 1 + (t_frac * n as f64) as usize;
        let t = t.min(n);
        let spec = RoundSpec {
            round: 3, label_prefix: "p".into(), t, d,
            weights: weights[..n].to_vec(),
            dropout: Dropout::Probability { q, seed: dseed },
            scales: FixedPointCodec::default(),
            seed: Some(gseed),
            ..RoundSpec::default()
        };
        let store = KeyStore::<Toy>::generate(n, kseed).unwrap();
        let grads = spec.gradients_or_synthetic();
        match run_round(&spec, &store, &grads) {
            Ok(res) => {
                prop_assert!(res.participants.len() >= t);
                let plain = spec.plain_weighted_sum(&grads, &res.participants);
                let bound = spec.scales.quantization_bound(res.participants.len(), 1.0, 1.0);
                for (a, b) in res.sums.iter().zip(&plain) {
                    prop_assert!((a - b).abs() <= bound, "{a} vs {b}, bound {bound}");
                }
            }
            Err(e) => prop_assert_eq!(e.code(), "quorum-too-small"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bls_serialization_and_subgroup_checks(s in any::<u64>(), seed in any::<u64>()) {
        type Fr = <Bls12 as ftmcfe::pairing::Backend>::Scalar;
        let ctx = PairingContext::<Bls12>::init(CurveId::Bls12_381).unwrap();
        let a = ctx.g * Fr::from(s);
        let b = ctx.gh * Fr::from(seed);
        let e = pair::<Bls12>(&a, &b);
        prop_assert_eq!(GroupElement::read_bytes(&a.to_bytes()).ok(), Some(a));
        prop_assert_eq!(GroupElement::read_bytes(&b.to_bytes()).ok(), Some(b));
        prop_assert_eq!(GroupElement::read_bytes(&e.to_bytes()).ok(), Some(e));
        prop_assert_eq!(e, pair::<Bls12>(&ctx.g, &ctx.gh) * (Fr::from(s) * Fr::from(seed)));
    }
}
