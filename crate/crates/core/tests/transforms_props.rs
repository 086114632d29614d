use proptest::prelude::*;

use qmcmap::fd::transform_partial;
use qmcmap::transforms::{make_transform, DomainKind, Transform, TransformParams};
use qmcmap::MultiIndexSet;

const KINDS: &[&str] = &[
    "identity",
    "simplex-log",
    "sphere-gauss",
    "fw-ad",
    "fw-bd",
    "fw-ud",
    "fw-vd",
    "fw-td",
    "fw-ud-efficient",
    "simplex-power",
    "rosenblatt-fgm",
];

fn build(kind: &str, d: usize, theta: f64) -> Box<dyn Transform> {
    let params = match kind {
        "simplex-power" => TransformParams::power((1..=d).map(|j| 1.0 / j as f64 + 0.3).collect()),
        "rosenblatt-fgm" => TransformParams::fgm(theta),
        _ => TransformParams::with_dim(d),
    };
    make_transform(kind, &params).unwrap()
}

fn interior(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..0.9, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analytic_partials_match_finite_differences(
        kind in prop::sample::select(KINDS.to_vec()),
        d in 2usize..5,
        theta in -1.0f64..1.0,
        seed_u in interior(5),
        mask in 1u32..32,
        j_pick in 0usize..8,
    ) {
        let t = build(kind, d, theta);
        let m = t.input_dim();
        let u = &seed_u[..m];
        let v = match MultiIndexSet::from_mask(mask & ((1 << m) - 1)) {
            v if v.is_empty() => MultiIndexSet::singleton(0),
            v => v,
        };
        prop_assume!(v.len() <= 4);
        // the sphere map normalises a Gaussian vector, singular at u = (1/2, ..)
        prop_assume!(kind != "sphere-gauss" || u.iter().map(|x| (x - 0.5).powi(2)).sum::<f64>() >= 0.01);
        let j = j_pick % t.output_dim();
        let exact = t.partial(j, v, u).unwrap();
        let fd = transform_partial(t.as_ref(), j, v, u).unwrap();
        prop_assert!(
            (exact - fd).abs() <= 1e-5 * (1.0 + exact.abs()),
            "{kind} d={d} j={j} v={v} u={u:?}: {exact} vs {fd}"
        );
    }

    #[test]
    fn outputs_lie_in_the_domain(
        kind in prop::sample::select(KINDS.to_vec()),
        d in 2usize..6,
        theta in -1.0f64..1.0,
        seed_u in prop::collection::vec(0.0f64..1.0, 6),
    ) {
        let t = build(kind, d, theta);
        let x = t.apply(&seed_u[..t.input_dim()]).unwrap();
        prop_assert!(t.domain().contains(&x), "{kind}: {x:?}");
        match t.domain().kind {
            DomainKind::SimplexT => prop_assert!((x.iter().sum::<f64>() - 1.0).abs() <= 1e-12),
            DomainKind::SimplexV => prop_assert!(x.iter().sum::<f64>() <= 1.0 + 1e-12),
            DomainKind::Sphere => {
                prop_assert!((x.iter().map(|a| a * a).sum::<f64>().sqrt() - 1.0).abs() <= 1e-12)
            }
            _ => {}
        }
    }
}

#[test]
fn sphere_points_have_zero_mean() {
    let t = build("sphere-gauss", 3, 0.0);
    let n = 1 << 14;
    let p = qmcmap::points::make_sampler("owen", &Default::default())
        .unwrap()
        .sample(3, 14, 9)
        .unwrap();
    let mut mean = [0.0; 3];
    for u in p.rows() {
        for (m, x) in mean.iter_mut().zip(t.apply(u).unwrap()) {
            *m += x / n as f64;
        }
    }
    // each coordinate has variance 1/3
    for m in mean {
        assert!(m.abs() < 4.0 * (1.0 / 3.0 / n as f64).sqrt(), "{mean:?}");
    }
}
