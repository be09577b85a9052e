//! Consistency of the two block shapes against direct box enumeration: for
//! every gallery spec at its three smallest in-domain bindings, the signed
//! value-level sum `C + sum A` must equal `sum over the box of
//! 2^(2 w v(a)) * delta(P(a), w)` assembled point by point, and both must
//! equal the evaluated `M` term.

use arithterm::blocks::{a_value, c_value};
use arithterm::combinators::delta;
use arithterm::compiler::compile_count;
use arithterm::eval::{eval, EvalContext};
use arithterm::gallery::{spec_of, GalleryFn};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

/// Direct assembly of M: one delta block per box point, written into its own
/// 2w-bit slot at offset 2 w v(a). Blocks never overlap, so plain bit
/// placement into a preallocated buffer assembles the sum.
fn m_by_box_enumeration(spec: &arithterm::compiler::CountingSpec, bindings: &[u64]) -> BigUint {
    let (poly, t, w) = spec.ground(bindings).unwrap();
    let t = t.to_u64().unwrap();
    let w = w.to_u64().unwrap();
    let k = spec.k;
    let total_points = (0..k).fold(1u64, |acc, _| acc * t);
    let total_bits = 2 * w * total_points;
    let mut words = vec![0u32; (total_bits / 32 + 2) as usize];
    let mut point = vec![0u64; k];
    let mut v = 0u64;
    loop {
        let p = poly.eval_point(&point);
        assert!(!p.is_negative(), "width hypothesis: P >= 0 on the box");
        let d = delta(&p.to_biguint().unwrap(), w).expect("width hypothesis: P < 2^w");
        or_at(&mut words, 2 * w * v, &d.to_u32_digits());
        v += 1;
        let mut dim = 0;
        loop {
            if dim == k {
                assert_eq!(v, total_points);
                return BigUint::new(words);
            }
            point[dim] += 1;
            if point[dim] < t {
                break;
            }
            point[dim] = 0;
            dim += 1;
        }
    }
}

fn or_at(words: &mut [u32], bit_off: u64, chunk: &[u32]) {
    let word0 = (bit_off / 32) as usize;
    let shift = (bit_off % 32) as u32;
    for (j, &c) in chunk.iter().enumerate() {
        words[word0 + j] |= c << shift;
        if shift != 0 {
            words[word0 + j + 1] |= (c as u64 >> (32 - shift)) as u32;
        }
    }
}

/// Signed value-level C + sum of A blocks.
fn m_by_block_values(spec: &arithterm::compiler::CountingSpec, bindings: &[u64]) -> BigUint {
    let (poly, t, w) = spec.ground(bindings).unwrap();
    let w = w.to_u64().unwrap();
    let mut acc = BigInt::from(c_value(&poly.epsilon, spec.k as u32, &t, w).unwrap());
    for m in &poly.monomials {
        let coeff = m.sign.apply(m.coeff.clone());
        acc += a_value(&coeff, &m.gammas, &m.factors, &t, w).unwrap();
    }
    assert!(!acc.is_negative());
    acc.to_biguint().unwrap()
}

#[test]
fn blocks_match_box_enumeration_on_all_gallery_specs() {
    let cases: Vec<(GalleryFn, Vec<Vec<u64>>)> = vec![
        (GalleryFn::Tau, vec![vec![1], vec![2], vec![3]]),
        (GalleryFn::Sigma, vec![vec![1], vec![2], vec![3]]),
        (GalleryFn::Phi, vec![vec![2], vec![3], vec![4]]),
        (GalleryFn::Inv, vec![vec![1, 2], vec![1, 3], vec![2, 3]]),
        (GalleryFn::Sqrt, vec![vec![1], vec![2], vec![3]]),
        (GalleryFn::Root(2), vec![vec![1], vec![2], vec![3]]),
        (GalleryFn::Root(3), vec![vec![1], vec![2], vec![3]]),
        (GalleryFn::Log, vec![vec![2, 1], vec![2, 2], vec![2, 3]]),
        (GalleryFn::Ord, vec![vec![2, 3], vec![3, 4], vec![2, 5]]),
        (
            GalleryFn::Dlog,
            vec![vec![2, 2, 3], vec![3, 3, 4], vec![2, 2, 5]],
        ),
    ];
    for (f, bindings) in cases {
        let spec = spec_of(f);
        let compiled = compile_count(&spec).unwrap();
        for args in bindings {
            let direct = m_by_box_enumeration(&spec, &args);
            let blocks = m_by_block_values(&spec, &args);
            assert_eq!(blocks, direct, "{f:?} blocks vs box sum at {args:?}");
            let term = eval(&compiled.m_term, &EvalContext::of_u64(&args).checked()).unwrap();
            assert!(term.all_checks_passed());
            assert_eq!(
                term.result, direct,
                "{f:?} emitted M vs box sum at {args:?}"
            );
        }
    }
}
