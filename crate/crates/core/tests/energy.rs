use krcomb::crystals::{KrSpec, TensorCrystal};
use krcomb::energy::{x_polynomial, EnergyCache};
use krcomb::fermionic::m_polynomial;
use krcomb::{dynkin_data, AffineType, TensorSpec};
use proptest::prelude::*;

const TYPES: &[&str] = &["A1~1", "A2~1", "B3~1", "C2~1", "D4~1", "A2~2", "A4~2", "A4~2dag", "A5~2", "D3~2"];

fn ty(s: &str) -> AffineType {
    s.parse().expect("valid label")
}

#[test]
fn x_is_m_at_q_inverse_for_small_tensors() {
    let cache = EnergyCache::default();
    for t in TYPES {
        let x = ty(t);
        let widths = [1u32, 2, 1];
        let specs: Vec<KrSpec> = widths.iter().map(|&s| KrSpec::new(x, 1, s).expect("row")).collect();
        let l = TensorSpec::from_factors(&widths.iter().map(|&s| (1, s)).collect::<Vec<_>>());
        for lambda in dynkin_data(x).dominant_weights_below(&l.top_weight(x.rank())) {
            let xp = x_polynomial(&cache, &specs, &lambda).expect("X");
            let mp = m_polynomial(x, &l, &lambda).expect("M");
            assert_eq!(xp.invert(), mp, "{t} at {lambda}");
        }
    }
}

#[test]
fn tensor_ground_state_energy_is_zero() {
    let cache = EnergyCache::default();
    let specs = [KrSpec::new(ty("C2~1"), 1, 2).expect("row"), KrSpec::new(ty("C2~1"), 1, 1).expect("row")];
    let te = cache.tensor(&specs).expect("tensor");
    assert_eq!(te.intrinsic(&te.crystal.highest()).expect("energy"), 0);
}

fn pair() -> impl Strategy<Value = (&'static str, u32, u32)> {
    (0..TYPES.len(), 1u32..=2, 1u32..=2).prop_map(|(k, s, t)| (TYPES[k], s, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn combinatorial_r((t, s, w) in pair()) {
        let x = ty(t);
        let cache = EnergyCache::default();
        let (a, b) = (KrSpec::new(x, 1, s).expect("row"), KrSpec::new(x, 1, w).expect("row"));
        let r = cache.rmap(a, b).expect("R");
        let back = cache.rmap(b, a).expect("R");
        let (ta, tb) = (cache.table(a), cache.table(b));
        prop_assert_eq!(r.local_energy(ta.highest, tb.highest), 0);
        let left = TensorCrystal::new(vec![ta.clone(), tb.clone()]);
        let right = TensorCrystal::new(vec![tb.clone(), ta.clone()]);
        for l in 0..ta.len() as u32 {
            for m in 0..tb.len() as u32 {
                let (m2, l2) = r.apply(l, m);
                prop_assert_eq!(back.apply(m2, l2), (l, m));
                for i in 0..left.nodes() {
                    let up = left.e(&[l, m], i).map(|c| r.apply(c[0], c[1])).map(|(p, q)| vec![p, q]);
                    prop_assert_eq!(up, right.e(&[m2, l2], i));
                }
                if s == w {
                    prop_assert_eq!((m2, l2), (l, m));
                }
            }
        }
    }
}
