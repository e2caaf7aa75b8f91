use diffam::admissibility::{
    dds_counting_identity, ds_admissible, proportional_pair_admissible, refute_result3, Result3Outcome,
};
use diffam::arith::prime_power;
use diffam::{DdsParams, DsParams};
use proptest::prelude::*;

/// All triples with `lambda (v - 1) = k (k - 1)`, `1 <= k < v <= max_v`.
fn admissible_triples(max_v: u64) -> Vec<DsParams> {
    let mut out = Vec::new();
    for v in 2..=max_v {
        for k in 1..v {
            if (k * (k - 1)) % (v - 1) == 0 {
                out.push(DsParams::new(v, k, k * (k - 1) / (v - 1)));
            }
        }
    }
    out
}

#[test]
fn scaled_triples_are_never_admissible() {
    let triples = admissible_triples(200);
    assert!(triples.len() > 200);
    for p in triples {
        for mu in 2..=5 {
            let scaled = DsParams::new(p.v * mu, p.k * mu, p.lambda * mu);
            assert!(!ds_admissible(scaled).passed, "{p} x {mu}");
            let verdict = proportional_pair_admissible(p, mu).unwrap();
            assert!(!verdict.passed);
            assert_eq!(verdict.residual, (p.v - p.k) as i128 * (mu - 1) as i128);
        }
    }
}

#[test]
fn result3_valid_only_on_singer_diagonal() {
    let mut checked = 0;
    for q in 2..=4096u64 {
        if prime_power(q).is_err() {
            continue;
        }
        let mut m = 3u32;
        while q.checked_pow(m).is_some_and(|x| x <= 4096) {
            for e in (1..q).filter(|e| (q - 1) % e == 0) {
                for h in 1..=e {
                    let Ok(v) = refute_result3(q, m, e, h) else {
                        assert!(num_integer::gcd(m as u64, e) != 1);
                        continue;
                    };
                    let diagonal = e == q - 1 && h == 1;
                    assert_eq!(v.outcome == Result3Outcome::ValidSinger, diagonal, "({q},{m},{e},{h})");
                    // the claimed triple is the Singer triple scaled by mu
                    let s = v.singer;
                    assert_eq!(v.claimed, DsParams::new(s.v * v.mu, s.k * v.mu, s.lambda * v.mu));
                    checked += 1;
                }
            }
            m += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn counterexample_170() {
    let v = ds_admissible(DsParams::new(170, 42, 10));
    assert!(!v.passed);
    assert_eq!((v.lhs, v.rhs), (1690, 1722));
    let r = refute_result3(4, 4, 3, 2).unwrap();
    assert_eq!(r.claimed, DsParams::new(170, 42, 10));
    assert_eq!(r.outcome, Result3Outcome::Inadmissible);
    assert!(dds_counting_identity(DdsParams::new(85, 2, 42, 42, 10)).passed);
}

proptest! {
    #[test]
    fn lifted_parameters_satisfy_counting(idx in 0usize..1000, h in 1u64..8) {
        let triples = admissible_triples(120);
        let p = triples[idx % triples.len()];
        let lifted = DdsParams::new(p.v, h, p.k * h, p.k * h, p.lambda * h);
        prop_assert!(dds_counting_identity(lifted).passed);
    }

    #[test]
    fn residual_matches_expansion(idx in 0usize..100_000, mu in 1u64..20) {
        let triples = admissible_triples(500);
        let p = triples[idx % triples.len()];
        let verdict = proportional_pair_admissible(p, mu).unwrap();
        prop_assert_eq!(verdict.expanded, verdict.residual);
        prop_assert_eq!(verdict.passed, mu == 1);
    }
}
