use proptest::prelude::*;

use sdmkit_core::detring::RingCtx;
use sdmkit_core::exact_algebra::F32003;
use sdmkit_core::sdm::{class_add, class_sub, verify_difference, verify_sum, DivisorClass};

type K = F32003;

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn determinantal_laws_match_the_model(n in 2u32..=3, a in -2i64..=2, b in -2i64..=2) {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n as usize).unwrap();
        let (ca, cb) = (DivisorClass::new(ctx.kind(), a), DivisorClass::new(ctx.kind(), b));
        let sum = verify_sum(&ctx, &ca, &cb).unwrap();
        prop_assert!(sum.holds, "{} + {}", ca, cb);
        prop_assert_eq!(sum.model, class_add(&ca, &cb).unwrap());
        let diff = verify_difference(&ctx, &ca, &cb).unwrap();
        prop_assert!(diff.holds, "{} - {}", ca, cb);
        prop_assert_eq!(diff.model, class_sub(&ca, &cb).unwrap());
    }
}

#[test]
fn hypersurface_laws_wrap_around() {
    for n in 2..=4u32 {
        let ctx: RingCtx<K> = RingCtx::hypersurface(n).unwrap();
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                let (ca, cb) = (DivisorClass::new(ctx.kind(), a), DivisorClass::new(ctx.kind(), b));
                assert!(verify_sum(&ctx, &ca, &cb).unwrap().holds, "n={n}: {ca} + {cb}");
                assert!(verify_difference(&ctx, &ca, &cb).unwrap().holds, "n={n}: {ca} - {cb}");
            }
        }
    }
}
