//! Randomized invariants. Proptest drives a seed, the crate's generators
//! build the objects, and `DPGLUE_SEED` is mixed into every seed so a run
//! can be moved to a different sample.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dpglue_core::algebra::{BaseField, FieldElement, Place, RationalFunction};
use dpglue_core::artinian::{restriction_trace, FiniteModule};
use dpglue_core::catalog::{
    self, classify_blocks, scenario_report, BuildingBlock, CaseTag, ConicNature, GlueCase, GlueScenario,
};
use dpglue_core::cohomology::{self, SectionCounts};
use dpglue_core::filling;
use dpglue_core::glue::{self, GlueData};
use dpglue_core::{gen, linalg, rng};

fn sampler(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ rng::seed_from_env())
}

fn same_span<F: FieldElement>(a: &[Vec<F>], b: &[Vec<F>], dim: usize) -> bool {
    let ra = linalg::span_basis(a, dim).len();
    let rb = linalg::span_basis(b, dim).len();
    let both: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && linalg::span_basis(&both, dim).len() == ra
}

/// `Σ c_j (x - t_j)^{-n_j p}` at distinct rational points with `Σ n_j <= 4`.
fn wild_data(p: u64, rng: &mut ChaCha8Rng) -> (GlueData, u64) {
    let field = BaseField::prime(p).unwrap();
    let mut points: Vec<i64> = (0..p as i64).collect();
    let mut budget = rng.gen_range(1..=4u32);
    let mut a = RationalFunction::zero(field);
    let mut total = 0;
    while budget > 0 && !points.is_empty() {
        let t = points.swap_remove(rng.gen_range(0..points.len()));
        let n = rng.gen_range(1..=budget);
        budget -= n;
        total += n as u64;
        let c = RationalFunction::constant(gen::nonzero_scalar(field, rng));
        a = a + c * gen::local_power(field, &Place::point(field.from_i64(t)), -((n as u64 * p) as i64));
    }
    let b = vec![RationalFunction::constant(gen::nonzero_scalar(field, rng))];
    (GlueData::new(a, b).unwrap(), total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rational_function_field_axioms(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let f = gen::rational_function(field, 3, &mut rng);
        let g = gen::nonzero_rational_function(field, 3, &mut rng);
        prop_assert!((f.clone() - f.clone()).is_zero());
        prop_assert_eq!(g.checked_div(&g).unwrap(), RationalFunction::one(field));
        if !f.is_zero() {
            let q = f.checked_div(&g).unwrap() * g.checked_div(&f).unwrap();
            prop_assert_eq!(q, RationalFunction::one(field));
        }
        // Leibniz.
        let lhs = (f.clone() * g.clone()).derivative();
        let rhs = f.derivative() * g.clone() + f.clone() * g.derivative();
        prop_assert_eq!(lhs, rhs);
        // Equality agrees with cross-multiplication.
        let h = gen::nonzero_rational_function(field, 2, &mut rng);
        let eq = f.checked_div(&g).unwrap() == h.clone();
        let cross = (f.clone() - h * g.clone()).is_zero();
        prop_assert_eq!(eq, cross);
    }

    #[test]
    fn valuations_add(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let f = gen::nonzero_rational_function(field, 3, &mut rng);
        let g = gen::nonzero_rational_function(field, 3, &mut rng);
        let place = gen::rational_place(field, &mut rng);
        let fg = (f.clone() * g.clone()).order_at(&place).unwrap();
        prop_assert_eq!(fg, f.order_at(&place).unwrap() + g.order_at(&place).unwrap());
    }

    #[test]
    fn extension_trace_is_linear(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &[2, 3, 5]);
        let ext = gen::quadratic_residue(field);
        let c = gen::scalar(field, &mut rng);
        let e: Vec<_> = (0..2).map(|_| gen::scalar(field, &mut rng)).collect();
        let e2: Vec<_> = (0..2).map(|_| gen::scalar(field, &mut rng)).collect();
        let combo: Vec<_> = e.iter().zip(&e2).map(|(x, y)| c.clone() * x.clone() + y.clone()).collect();
        prop_assert_eq!(ext.ext_trace(&combo), c * ext.ext_trace(&e) + ext.ext_trace(&e2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn duality_preserves_module_data(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let alg = gen::local_algebra(field, &mut rng);
        let m = gen::module(&alg, &mut rng);
        prop_assume!(m.dim() <= 6);
        let d = m.dual_module();
        prop_assert!(m.is_isomorphic(&d.dual_module()));
        prop_assert_eq!(m.length().unwrap(), d.length().unwrap());
        prop_assert!(same_span(&m.annihilator(), &d.annihilator(), alg.dim()));
    }

    #[test]
    fn socle_dimension_one_iff_dual_is_free(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let alg = gen::local_algebra(field, &mut rng);
        let regular = FiniteModule::regular(alg.clone());
        let socle = regular.socle().unwrap().len();
        prop_assert_eq!(socle == 1, regular.dual_module().is_free_rank_one().unwrap());
    }

    #[test]
    fn restriction_trace_kernel_has_complementary_dimension(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let ring = gen::conductor_ring(field, 8, &mut rng);
        let basis = filling::random_part_filling(&ring, 8, &mut rng, 10);
        prop_assume!(basis.is_some());
        let basis = basis.unwrap();
        let trace = restriction_trace(ring.algebra(), &basis).unwrap();
        prop_assert_eq!(trace.kernel.len(), ring.dim() - basis.len());
    }

    #[test]
    fn serre_inequality_and_half_filling_tests(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let ring = gen::conductor_ring(field, 8, &mut rng);
        let basis = filling::random_part_filling(&ring, 8, &mut rng, 10);
        prop_assume!(basis.is_some());
        let basis = basis.unwrap();
        let inv = filling::serre_invariants(&ring, &basis).unwrap();
        let half = filling::is_half_filling(&ring, &basis).unwrap();
        prop_assert!(inv.length_d <= inv.delta);
        prop_assert_eq!(inv.length_d == inv.delta, half.verdict());
        prop_assert!(half.agree(), "{:?}", half);
        if half.verdict() {
            prop_assert!(filling::step3_holds(&ring, &basis).unwrap());
            prop_assert_eq!(filling::quotient_socle_dimension(&ring, &basis).unwrap(), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn trace_closed_form_matches_oracle(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let r = rng.gen_range(1..=4);
        let data = gen::glue_data(field, r, &mut rng);
        let member = gen::kernel_element(&data, &mut rng);
        prop_assert!(glue::ker_trace_closed_form(&data, &member).unwrap());
        prop_assert!(glue::ker_trace_oracle(&data, &member).unwrap());
        let other = gen::trace_element(&data, &mut rng);
        prop_assert_eq!(
            glue::ker_trace_closed_form(&data, &other).unwrap(),
            glue::ker_trace_oracle(&data, &other).unwrap()
        );
    }

    #[test]
    fn derivation_kills_generic_coordinates(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let r = rng.gen_range(1..=4);
        let data = gen::glue_data(field, r, &mut rng);
        let coords = glue::xi_coordinates(&data);
        prop_assert!(glue::delta(&data, &coords.xi).is_zero());
        for eta in &coords.eta {
            prop_assert!(glue::delta(&data, eta).is_zero());
        }
        let engine = glue::KxiEngine::new(&data).unwrap();
        prop_assert_eq!(engine.kernel_dimension().unwrap(), r);
    }

    #[test]
    fn pointwise_criterion_matches_oracle(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let field = BaseField::prime(p).unwrap();
        let place = gen::rational_place(field, &mut rng);
        let m = rng.gen_range(1..=10i64);
        let mut a = RationalFunction::from_poly(gen::poly(field, 1, &mut rng));
        for k in 1..=m {
            let c = if k == m { gen::nonzero_scalar(field, &mut rng) } else { gen::scalar(field, &mut rng) };
            a = a + RationalFunction::constant(c) * gen::local_power(field, &place, -k);
        }
        let b = vec![RationalFunction::constant(gen::nonzero_scalar(field, &mut rng))];
        let data = GlueData::new(a, b).unwrap();
        let oracle = glue::gorenstein_at_point_oracle(&data, &place, 10 + p as usize + 4).unwrap();
        prop_assert_eq!(glue::gorenstein_at_point(&data, &place), oracle);
    }

    #[test]
    fn tame_iff_euler_characteristic_one(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &gen::CHARACTERISTICS);
        let p = field.characteristic();
        // b_i = c_i b_1 with b_1 = c (x - t)^e, and a/b_1 a polynomial plus
        // poles of order divisible by p (when p > 0); some land off the
        // Gorenstein locus through the point at infinity.
        let e = rng.gen_range(-1..=1);
        let b1 = RationalFunction::constant(gen::nonzero_scalar(field, &mut rng))
            * gen::local_power(field, &Place::point(gen::scalar(field, &mut rng)), e);
        let r = rng.gen_range(1..=3);
        let b: Vec<RationalFunction> = (0..r)
            .map(|_| RationalFunction::constant(gen::nonzero_scalar(field, &mut rng)) * b1.clone())
            .collect();
        let mut phi = RationalFunction::from_poly(gen::poly(field, 2, &mut rng));
        if p > 0 {
            for _ in 0..rng.gen_range(0..=2) {
                let k = (p * rng.gen_range(1..=2u64)) as i64;
                let place = Place::point(gen::scalar(field, &mut rng));
                phi = phi + RationalFunction::constant(gen::nonzero_scalar(field, &mut rng)) * gen::local_power(field, &place, -k);
            }
        }
        let data = GlueData::new(phi * b1, b).unwrap();
        // χ is only defined when the gluing is Gorenstein everywhere.
        prop_assume!(glue::gorenstein_failures(&data).unwrap().is_empty());
        let tame = glue::is_tame(&data).unwrap().tame;
        prop_assert_eq!(tame, cohomology::chi_ox(&data).unwrap() == 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn wild_euler_characteristic_is_additive(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let (data, n) = wild_data(p, &mut rng);
        let report = cohomology::euler_report(&data).unwrap();
        prop_assert_eq!(report.n_total, n);
        prop_assert_eq!(report.chi, 1 - (n * (p - 1)) as i64);
        prop_assert_eq!(report.h1, n * (p - 1));
        let structure = cohomology::d_plus_structure(data.r()).unwrap();
        let deltas: i64 = report.wild_points.iter().map(|w| w.delta as i64).sum();
        prop_assert_eq!(report.chi, 1 + cohomology::line_sheaf_chi(&structure.n2, 0) - deltas);
    }

    #[test]
    fn section_oracle_is_stable_in_the_bound(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let p = [2u64, 3][rng.gen_range(0..2)];
        let (data, n) = wild_data(p, &mut rng);
        prop_assume!(n * p <= 6);
        let bound = cohomology::default_bound(&data, 0).unwrap();
        let at = cohomology::truncated_section_oracle(&data, 0, bound).unwrap();
        let beyond = cohomology::truncated_section_oracle(&data, 0, bound + 3).unwrap();
        prop_assert_eq!(at, beyond);
        prop_assert_eq!(at, SectionCounts { h0: 1, h1: (n * (p - 1)) as usize });
        prop_assert_eq!(at.chi(), cohomology::chi_ox(&data).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn legal_blocks_reproduce_the_table(a in 0u32..=10, i in 0usize..10) {
        let case = CaseTag::ALL[i];
        prop_assume!(case.legal(a));
        let block = BuildingBlock::new(case, a).unwrap();
        prop_assert!(catalog::verify_block(&block));
        prop_assert_eq!(block.degree(), case.table_degree(a));
    }

    #[test]
    fn classifier_is_total_on_uniform_blocks(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let legal: Vec<BuildingBlock> = catalog::block_table(10);
        let r = rng.gen_range(1..=4);
        let nature = [ConicNature::Smooth, ConicNature::LinePair, ConicNature::DoubleLine][rng.gen_range(0..3)];
        let pool: Vec<&BuildingBlock> = legal.iter().filter(|b| b.nature == nature).collect();
        let blocks: Vec<BuildingBlock> = (0..r).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let verdict = classify_blocks(&blocks);
        match nature {
            ConicNature::Smooth if r > 2 => prop_assert!(verdict.is_err()),
            ConicNature::Smooth => {
                let want = if r == 1 { GlueCase::A } else { GlueCase::B };
                prop_assert_eq!(verdict.unwrap().case, want);
            }
            ConicNature::LinePair => prop_assert_eq!(verdict.unwrap().case, GlueCase::C(r)),
            ConicNature::DoubleLine => prop_assert_eq!(verdict.unwrap().case, GlueCase::D(r)),
        }
    }

    #[test]
    fn mixed_conics_are_rejected(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let legal = catalog::block_table(10);
        let first = legal[rng.gen_range(0..legal.len())].clone();
        let others: Vec<&BuildingBlock> = legal.iter().filter(|b| b.nature != first.nature).collect();
        let mut blocks = vec![first, others[rng.gen_range(0..others.len())].clone()];
        if rng.gen_bool(0.5) {
            blocks.push(legal[rng.gen_range(0..legal.len())].clone());
        }
        prop_assert!(classify_blocks(&blocks).is_err());
    }

    #[test]
    fn cycle_degree_is_additive(seed in any::<u64>()) {
        let mut rng = sampler(seed);
        let field = gen::field(&mut rng, &[0, 5]);
        let pool: Vec<BuildingBlock> = catalog::block_table(10)
            .into_iter()
            .filter(|b| b.nature == ConicNature::LinePair)
            .collect();
        let r = rng.gen_range(1..=4);
        let blocks: Vec<BuildingBlock> = (0..r).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let total: u64 = blocks.iter().map(|b| b.degree()).sum();
        prop_assert!(blocks.iter().all(|b| b.degree() >= 1));
        let mut s = GlueScenario::new("cycle", field, blocks);
        s.matchings = catalog::standard_cycle(field, r);
        let report = scenario_report(&s);
        prop_assert_eq!(report.degree, total);
        prop_assert_eq!(s.degree(), total);
        prop_assert!(report.gorenstein);
    }
}
