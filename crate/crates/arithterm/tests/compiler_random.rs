//! The compiler against its enumeration oracle on random specs: squared
//! random equation systems over small boxes, width bounds derived from the
//! exhaustive maximum so the hypothesis holds by construction. This covers
//! monomial shapes the gallery never produces (mixed exponential bases,
//! high powers, merged coefficients).

use arithterm::compiler::{
    compile_count, enumerate_count, square_expand, CountingSpec, EquationSystem, ExpMonomial,
};
use arithterm::eval::{eval, EvalContext};
use arithterm::term::Term;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};

fn random_system(rng: &mut impl Rng, k: usize) -> EquationSystem {
    let mut sys = EquationSystem::new(k);
    for _ in 0..rng.gen_range(1..=2) {
        let mut atoms = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let mut atom = ExpMonomial::new(k).coeff_u(rng.gen_range(1..=3));
            if rng.gen_bool(0.5) {
                atom = atom.neg();
            }
            for v in 0..k {
                atom = atom.gamma(v, rng.gen_range(0..=3));
                if rng.gen_bool(0.3) {
                    atom = atom.factor(
                        v,
                        Term::nat(rng.gen_range(2..=3u64)),
                        Term::nat(rng.gen_range(1..=2u64)),
                    );
                }
            }
            atoms.push(atom);
        }
        sys.push(atoms);
    }
    sys
}

#[test]
fn compiled_counts_match_enumeration_on_random_specs() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..200 {
        let k = rng.gen_range(1..=2);
        let t = rng.gen_range(2..=4u64);
        let poly = square_expand(&random_system(&mut rng, k));
        if poly.monomials.is_empty() {
            continue;
        }

        // Width from the exhaustive box maximum, so the hypothesis holds.
        let mut max_bits = 0u64;
        let mut point = vec![0u64; k];
        'outer: loop {
            let v = poly.eval_signed(&[], &point).unwrap();
            assert!(!v.is_negative(), "sums of squares are nonnegative");
            max_bits = max_bits.max(v.to_biguint().unwrap().bits());
            let mut dim = 0;
            loop {
                if dim == k {
                    break 'outer;
                }
                point[dim] += 1;
                if point[dim] < t {
                    break;
                }
                point[dim] = 0;
                dim += 1;
            }
        }
        let w = max_bits + 1;

        let spec = CountingSpec::new(vec!["n".to_string()], Term::nat(t), Term::nat(w), poly);
        let compiled = compile_count(&spec).unwrap();
        let report = eval(&compiled.count_term, &EvalContext::of_u64(&[0]).checked())
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        assert!(report.all_checks_passed(), "trial {trial}: exactness");
        let brute = enumerate_count(&spec, &[0], 1 << 20).unwrap();
        assert_eq!(report.result.to_u64(), Some(brute), "trial {trial}");
    }
}
