use num_bigint::BigInt;
use rackcoh::rack::Rack;
use rackcoh::verify::{pair_homotopy_closed_form, homotopy_defect};
use rackcoh::word::{TensorElement, WordEngine, WordError};

fn minus(t: &TensorElement) -> TensorElement {
    t.scaled(&BigInt::from(-1))
}

#[test]
fn differential_of_generators_and_products() {
    let r = Rack::dihedral(3);
    let eng = WordEngine::new(r.clone());
    for x in 0..3 {
        let expect = &eng.one() - &eng.gen(x).unwrap();
        assert_eq!(eng.differential(&eng.e(x).unwrap()).unwrap(), expect);
        assert!(eng.differential(&eng.gen(x).unwrap()).unwrap().is_zero());
    }
    // d(e_x e_y) = (1 − x) e_y − e_x (1 − y), and e_x y = y e_{x◁y}.
    for x in 0..3 {
        for y in 0..3 {
            let exey = eng.element(eng.monomial(&[], &[x, y]).unwrap());
            let mut expect = eng.element(eng.monomial(&[], &[y]).unwrap());
            expect = &expect - &eng.element(eng.monomial(&[x], &[y]).unwrap());
            expect = &expect - &eng.element(eng.monomial(&[], &[x]).unwrap());
            expect = &expect + &eng.element(eng.monomial(&[y], &[r.op(x, y)]).unwrap());
            assert_eq!(eng.differential(&exey).unwrap(), expect, "({x}, {y})");
        }
    }
}

#[test]
fn commutation_relation() {
    let r = Rack::dihedral(3);
    let eng = WordEngine::new(r.clone());
    for x in 0..3 {
        for y in 0..3 {
            let left = eng.multiply(&eng.e(x).unwrap(), &eng.gen(y).unwrap()).unwrap();
            let right = eng.multiply(&eng.gen(y).unwrap(), &eng.e(r.op(x, y)).unwrap()).unwrap();
            assert_eq!(left, right);
            let xy = eng.multiply(&eng.gen(x).unwrap(), &eng.gen(y).unwrap()).unwrap();
            let yxy = eng.multiply(&eng.gen(y).unwrap(), &eng.gen(r.op(x, y)).unwrap()).unwrap();
            assert_eq!(xy, yxy);
        }
    }
}

#[test]
fn coproduct_of_a_pair() {
    // Δ(e_x e_y) = e_x e_y ⊗ xy + 1 ⊗ e_x e_y + e_x ⊗ x e_y − e_y ⊗ y e_{x◁y}
    for r in [Rack::dihedral(3), Rack::cyclic(3), Rack::trivial(2)] {
        let eng = WordEngine::new(r.clone());
        let m = |a: &[usize], e: &[usize]| eng.monomial(a, e).unwrap();
        for x in 0..r.size() {
            for y in 0..r.size() {
                let mut expect = eng.tensor(m(&[], &[x, y]), m(&[x, y], &[]));
                expect = &expect + &eng.tensor(m(&[], &[]), m(&[], &[x, y]));
                expect = &expect + &eng.tensor(m(&[], &[x]), m(&[x], &[y]));
                expect = &expect + &minus(&eng.tensor(m(&[], &[y]), m(&[y], &[r.op(x, y)])));
                let u = eng.element(m(&[], &[x, y]));
                assert_eq!(eng.coproduct(&u).unwrap(), expect);
                assert_eq!(eng.coproduct_formula(&m(&[], &[x, y])).unwrap(), expect);
            }
        }
    }
}

#[test]
fn homotopy_low_degrees() {
    let r = Rack::dihedral(3);
    let eng = WordEngine::new(r.clone());
    for x in 0..3 {
        let ex = eng.monomial(&[], &[x]).unwrap();
        assert_eq!(eng.homotopy(&eng.element(ex.clone())).unwrap(), eng.tensor(ex.clone(), ex));
    }
    // h(e_x e_y) against the closed form built by hand.
    let m = |a: &[usize], e: &[usize]| eng.monomial(a, e).unwrap();
    for x in 0..3 {
        for y in 0..3 {
            let exey = m(&[], &[x, y]);
            let mut expect = eng.tensor(m(&[x], &[y]), exey.clone());
            expect = &expect + &eng.tensor(m(&[], &[x]), exey.clone());
            // e_x y = y e_{x◁y}
            expect = &expect + &minus(&eng.tensor(exey.clone(), m(&[y], &[r.op(x, y)])));
            expect = &expect + &minus(&eng.tensor(exey.clone(), m(&[], &[y])));
            let h = eng.homotopy(&eng.element(exey)).unwrap();
            assert_eq!(h, expect);
            assert_eq!(h, pair_homotopy_closed_form(&eng, x, y).unwrap());
        }
    }
}

#[test]
fn homotopy_orientation() {
    // dh + hd equals Δ − τΔ; the opposite orientation fails on every e-word.
    let eng = WordEngine::new(Rack::dihedral(3));
    for m in eng.monomials(0, 3).unwrap() {
        if m.degree() == 0 {
            continue;
        }
        let u = eng.element(m.clone());
        let defect = homotopy_defect(&eng, &u).unwrap();
        let delta = eng.coproduct(&u).unwrap();
        let flipped = eng.flipped_coproduct(&u).unwrap();
        assert_eq!(defect, &delta - &flipped, "{m}");
        assert_ne!(defect, &flipped - &delta, "{m}");
    }
}

#[test]
fn quandle_projection_kills_squares() {
    let eng = WordEngine::new(Rack::dihedral(3));
    for x in 0..3 {
        let sq = eng.element(eng.monomial(&[], &[x, x]).unwrap());
        assert!(eng.quandle_project(&sq).unwrap().is_zero());
        let ok = eng.element(eng.monomial(&[], &[x, (x + 1) % 3]).unwrap());
        assert_eq!(eng.quandle_project(&ok).unwrap(), ok);
    }
    let rack_only = WordEngine::new(Rack::cyclic(3));
    let u = rack_only.e(0).unwrap();
    assert_eq!(rack_only.quandle_project(&u), Err(WordError::NotAQuandle));
}

#[test]
fn mixing_racks_is_rejected() {
    let a = WordEngine::new(Rack::dihedral(3));
    let b = WordEngine::new(Rack::cyclic(3));
    let u = a.e(0).unwrap();
    let v = b.e(0).unwrap();
    assert_eq!(a.multiply(&u, &v), Err(WordError::RackMismatch));
    assert!(matches!(a.e(5), Err(WordError::LetterOutOfRange { .. })));
}
