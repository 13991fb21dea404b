use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::birmap::growth::{classify_growth, GrowthClass, GrowthConfig};
use crate::sl2z::{enumerate_words, parse_word};

fn w(s: &str) -> GroupWord {
    parse_word(s).unwrap()
}

fn map(amb: Ambient, s: &str) -> BirMap {
    BirMap::parse(amb, s).unwrap()
}

fn q(p: i64, d: i64) -> Scalar {
    Scalar::from_ratio(p, d)
}

fn all_defaults() -> Vec<EmbeddingSpec> {
    FAMILY_NAMES.iter().map(|f| EmbeddingSpec::default_for(f).unwrap()).collect()
}

/// `(x^a y^b, x^c y^d)` straight from the matrix.
fn monomial_oracle(m: &Mat2) -> BirMap {
    let mono = |e1: &BigInt, e2: &BigInt| -> String {
        let e1: i64 = e1.try_into().unwrap();
        let e2: i64 = e2.try_into().unwrap();
        format!("x^{e1} y^{e2}")
    };
    let src = format!("({}, {})", mono(&m.a, &m.b), mono(&m.c, &m.d));
    map(Ambient::P2, &src)
}

/// `χ` on words: `χ(S) = i`, `χ(R) = χ(RS)·χ(S)⁻¹ = -i` for even `n`; trivial for odd `n`.
fn character_oracle(word: &GroupWord, n: u32) -> Scalar {
    if n % 2 == 1 {
        return Scalar::one();
    }
    let mut e = 0i64;
    for &(g, k) in word.letters() {
        e += if g == Gen::S { k } else { -k };
    }
    Scalar::i().pow(e.rem_euclid(4) as u64)
}

#[test]
fn generator_examples() {
    let g = generator_images(&EmbeddingSpec::Standard).unwrap();
    assert!(g.s.equals(&map(Ambient::P2, "(y, 1/x)")));
    assert!(g.second.equals(&map(Ambient::P2, "(x y, y)")));
    let one = EmbeddingSpec::deformation(Scalar::one()).unwrap();
    let rs = evaluate(&one, &w("R S")).unwrap();
    assert!(rs.equals(&map(Ambient::P1xP1, "((y-x)/(1-x y), -x)")));
    let k2 = EmbeddingSpec::default_for("theta_k").unwrap();
    assert_eq!(generator_images(&k2).unwrap().second.degree(), 4);
}

#[test]
fn evaluation_examples() {
    let rs = w("R S");
    assert!(evaluate(&EmbeddingSpec::Standard, &rs).unwrap().equals(&map(Ambient::P2, "(y/x, 1/x)")));
    assert!(evaluate(&EmbeddingSpec::SignTwist, &rs).unwrap().equals(&map(Ambient::P2, "(y/x, -1/x)")));
    let e2 = EmbeddingSpec::deformation(q(2, 1)).unwrap();
    assert!(evaluate(&e2, &w("S^2")).unwrap().equals(&map(Ambient::P1xP1, "(-x, -y)")));
    let eps_rs = "((y-2x)/(2-x y), -2x)";
    assert!(evaluate(&e2, &rs).unwrap().equals(&map(Ambient::P1xP1, eps_rs)));
}

#[test]
fn inverse_images_invert() {
    for spec in [EmbeddingSpec::Standard, EmbeddingSpec::SignTwist, EmbeddingSpec::Linear, EmbeddingSpec::deformation(q(1, 2)).unwrap()] {
        assert!(evaluate(&spec, &w("R R^-1")).unwrap().is_identity());
        let [_, _, r, r_inv] = letter_images(&spec).unwrap();
        assert!(r.compose(&r_inv).unwrap().is_identity(), "{spec}");
        assert!(r_inv.compose(&r).unwrap().is_identity(), "{spec}");
    }
}

#[test]
fn relations_hold_for_every_default() {
    for spec in all_defaults() {
        let r = verify_relations(&spec).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }
}

#[test]
fn deformation_pieces() {
    let e = q(2, 1);
    let d = deformation_maps(&e).unwrap();
    let spec = EmbeddingSpec::deformation(e).unwrap();
    // R₂ = (RS)²S
    assert!(evaluate(&spec, &w("R S R S S")).unwrap().equals(&d.r2));
    assert!(d.r2.compose(&d.r2_inv).unwrap().is_identity());
    for p in &d.forward_base {
        assert!(d.r1.is_base_point(p) && d.r2.is_base_point(p));
        assert!(!d.r1_inv.is_base_point(p));
    }
    for p in &d.inverse_base {
        assert!(d.r1_inv.is_base_point(p) && d.r2_inv.is_base_point(p));
        assert!(!d.r1.is_base_point(p));
    }
}

#[test]
fn positive_split_reconstructs_matrix() {
    for word in enumerate_words(3, false) {
        let m = word.matrix();
        let (e, factors, f) = positive_split(&m).expect("split exists");
        let r1 = Mat2::r();
        let r2 = Mat2::new(1, 0, 1, 1);
        let p = factors
            .iter()
            .fold(Mat2::identity(), |acc, &one| &acc * if one { &r1 } else { &r2 });
        let back = &(&Mat2::s().pow(e as u32) * &p) * &Mat2::s().pow(f as u32);
        assert_eq!(back, m);
    }
}

#[test]
fn certified_deformation_matches_exact() {
    let spec = EmbeddingSpec::deformation(q(3, 1)).unwrap();
    for word in enumerate_words(2, false).into_iter().take(40) {
        let exact = evaluate(&spec, &word).unwrap().quadridegree().unwrap().map(BigInt::from);
        let cert = certified_degree(&spec, &word).unwrap();
        assert_eq!(cert.quadridegree().unwrap(), exact, "{word}");
    }
}

#[test]
fn quadridegree_law_small_words() {
    for eps in [q(1, 2), q(3, 1)] {
        let spec = EmbeddingSpec::deformation(eps).unwrap();
        for word in enumerate_words(2, false) {
            let qd = evaluate(&spec, &word).unwrap().quadridegree().unwrap().map(BigInt::from);
            assert_eq!(qd, word.matrix().abs_entries(), "{word}");
        }
    }
}

#[test]
fn standard_matches_monomial_formula() {
    for word in enumerate_words(3, false).into_iter().take(60) {
        let got = evaluate(&EmbeddingSpec::Standard, &word).unwrap();
        assert!(got.equals(&monomial_oracle(&word.matrix())), "{word}");
        let twisted = evaluate(&EmbeddingSpec::SignTwist, &word).unwrap();
        assert_eq!(twisted.degree(), got.degree());
    }
}

#[test]
fn linear_matches_matrix() {
    for word in enumerate_words(3, false).into_iter().take(40) {
        let got = evaluate(&EmbeddingSpec::Linear, &word).unwrap();
        assert!(got.equals(&linear_image(&word.matrix())));
        assert_eq!(got.degree(), 1);
    }
}

#[test]
fn weighted_matches_closed_form() {
    for n in 0..4 {
        let spec = EmbeddingSpec::weighted(n);
        for word in enumerate_words(3, false).into_iter().take(40) {
            let got = evaluate_fibred(&spec, &word).unwrap();
            let want = weighted_image(&word.matrix(), character_oracle(&word, n), n);
            assert!(got.equals(&want), "n={n} {word}");
            let deg = got.to_birmap(Ambient::P2).unwrap().degree();
            // degree n once the Möbius part has a pole, 2 for the n = 0 member
            assert!(deg <= u64::from(n.max(2)), "n={n} {word}: {deg}");
        }
    }
}

#[test]
fn hyperbolic_pieces_and_degrees() {
    let h = hyperbolic_maps(2, &q(5, 1)).unwrap();
    assert!(h.psi.compose(&h.psi_inv).unwrap().is_identity());
    assert!(h.psi.is_base_point(&h.base));
    assert!(h.psi_inv.is_base_point(&h.base));
    let spec = EmbeddingSpec::default_for("theta_k").unwrap();
    for word in enumerate_words(2, false).into_iter().take(30) {
        let m = syllable_form(&word).syllable_count() as u32;
        let exact = evaluate(&spec, &word).unwrap().degree();
        assert_eq!(exact, 2u64.pow(2 * m), "{word}");
        assert_eq!(certified_degree(&spec, &word).unwrap().total(), BigInt::from(exact));
    }
}

#[test]
fn parabolic_iterates_grow_linearly() {
    let spec = EmbeddingSpec::default_for("theta_P").unwrap();
    let word = w("S R S R^-1");
    let degs: Vec<BigInt> = degree_sequence(&spec, &word, 10, DegreeMethod::Exact, DEFAULT_CAP)
        .unwrap()
        .into_iter()
        .map(|r| r.degree)
        .collect();
    assert_eq!(classify_growth(&degs, &GrowthConfig::default()).class, GrowthClass::Linear, "{degs:?}");
}

#[test]
fn deformation_types_follow_matrices() {
    let spec = EmbeddingSpec::deformation(q(2, 1)).unwrap();
    for (word, class) in [("R", GrowthClass::Linear), ("S", GrowthClass::Bounded), ("R R S R S^2", GrowthClass::Exponential)] {
        let degs: Vec<BigInt> = degree_sequence(&spec, &w(word), 8, DegreeMethod::Auto, DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .map(|r| r.degree)
            .collect();
        assert_eq!(classify_growth(&degs, &GrowthConfig::default()).class, class, "{word}: {degs:?}");
    }
}

#[test]
fn spec_validation() {
    assert!(EmbeddingSpec::deformation(Scalar::zero()).is_err());
    assert!(EmbeddingSpec::hyperbolic(3, q(5, 1)).is_err());
    assert!(EmbeddingSpec::hyperbolic(0, q(5, 1)).is_err());
    assert!(EmbeddingSpec::parabolic_from_str("(x-2)^2/(x-3)").is_err());
    assert!(EmbeddingSpec::parabolic_from_str("(x-2)(x-3)/((x-3)(x+1))").is_err());
    assert!(EmbeddingSpec::parabolic_from_str("x y").is_err());
    assert!(EmbeddingSpec::parabolic_from_str("(x-2)/(x-3)").is_ok());
    assert_eq!(EmbeddingSpec::deformation(q(-1, 2)).unwrap().eps_is_positive_real(), Some(false));
    assert!(EmbeddingSpec::default_for("theta_q").is_err());
}

#[test]
fn spec_json_round_trip() {
    for spec in all_defaults().into_iter().chain([EmbeddingSpec::deformation(q(1, 2)).unwrap()]) {
        let s = spec.to_json_string();
        assert_eq!(EmbeddingSpec::from_json_str(&s).unwrap(), spec, "{s}");
    }
    assert!(EmbeddingSpec::from_json_str("{\"schema_version\":1,\"family\":\"theta_k\",\"k\":3,\"mu\":[\"5\",\"1\",\"0\",\"1\"]}").is_err());
}

#[test]
fn negative_powers_of_s_reduce_mod_four() {
    for spec in all_defaults() {
        for (e, f) in [(-3, "S"), (-2, "S^2"), (5, "S")] {
            let a = evaluate(&spec, &w(&format!("S^{e}"))).unwrap();
            let b = evaluate(&spec, &w(f)).unwrap();
            assert!(a.equals(&b), "{spec}: S^{e}");
        }
    }
}

fn arb_word() -> impl Strategy<Value = GroupWord> {
    proptest::collection::vec((any::<bool>(), -2i64..3), 0..4)
        .prop_map(|v| GroupWord::from_letters(v.into_iter().map(|(r, e)| (if r { Gen::R } else { Gen::S }, e))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_word(), b in arb_word(), fam in 0usize..7) {
        let spec = EmbeddingSpec::default_for(FAMILY_NAMES[fam]).unwrap();
        let ab = evaluate(&spec, &a.concat(&b)).unwrap();
        let composed = evaluate(&spec, &a).unwrap().compose(&evaluate(&spec, &b).unwrap()).unwrap();
        prop_assert!(ab.equals(&composed));
    }
}

