use nilchar::arrangement::{default_level, Arrangement};
use nilchar::liecore::{pairing, RootSystem, Series, Weight, WeightSystem};
use nilchar::orbits::example::{classify_matrix, example_closure_leq, example_stratum};
use nilchar::orbits::sl::generic_jordan_partition;
use nilchar::orbits::{
    dominance_leq, CharacteristicEngine, ExampleModule, ExampleOrbit, Mode, OrbitModel, SlAdjoint,
};
use nilchar::rational::{int, Matrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn to_q(v: [[i64; 3]; 2]) -> [[Rational; 3]; 2] {
    v.map(|r| r.map(int))
}

/// `(m, n, x; p, q, y)` with the given nonzero entries.
fn element(entries: &[(&str, i64)]) -> [[Rational; 3]; 2] {
    let mut v = [[0i64; 3]; 2];
    for &(name, val) in entries {
        let (r, c) = match name {
            "m" => (0, 0),
            "n" => (0, 1),
            "x" => (0, 2),
            "p" => (1, 0),
            "q" => (1, 1),
            "y" => (1, 2),
            _ => unreachable!(),
        };
        v[r][c] = val;
    }
    to_q(v)
}

#[test]
fn representatives_lie_in_their_orbits() {
    for o in ExampleOrbit::ALL {
        assert_eq!(classify_matrix(&to_q(o.representative())).unwrap(), o);
    }
    assert!(classify_matrix(&element(&[("m", 1), ("q", 1)])).is_err());
}

type Curve = fn(i64) -> [[Rational; 3]; 2];

#[test]
fn degeneration_curves_follow_the_closure_order() {
    // (family at t ≠ 0, limit at t = 0)
    let curves: [(Curve, ExampleOrbit, ExampleOrbit); 3] = [
        (|t| element(&[("m", 1), ("p", t), ("x", 1)]), ExampleOrbit::O5, ExampleOrbit::O4),
        (|t| element(&[("m", t), ("x", 1)]), ExampleOrbit::O4, ExampleOrbit::O2),
        (|t| element(&[("m", 1), ("x", t)]), ExampleOrbit::O4, ExampleOrbit::O3),
    ];
    for (curve, generic, limit) in curves {
        for t in [1, -3, 17] {
            assert_eq!(classify_matrix(&curve(t)).unwrap(), generic);
        }
        assert_eq!(classify_matrix(&curve(0)).unwrap(), limit);
        assert!(example_closure_leq(limit, generic));
        assert!(!example_closure_leq(generic, limit));
    }
    assert!(!example_closure_leq(ExampleOrbit::O2, ExampleOrbit::O3));
    assert!(!example_closure_leq(ExampleOrbit::O3, ExampleOrbit::O2));
}

/// `(A, B)·[M | c] = [A M + M Bᵀ | A c]`.
fn act(a: &Matrix, b: &Matrix, v: &[[Rational; 3]; 2]) -> Vec<Rational> {
    let m = Matrix::from_rows(v.iter().map(|r| r[..2].to_vec()).collect());
    let c: Vec<Rational> = v.iter().map(|r| r[2].clone()).collect();
    let block = a.mul(&m);
    let right = m.mul(&b.transpose());
    let ac = a.mul_vec(&c);
    let mut out = Vec::with_capacity(6);
    for i in 0..2 {
        for j in 0..2 {
            out.push(&block[(i, j)] + &right[(i, j)]);
        }
        out.push(ac[i].clone());
    }
    out
}

#[test]
fn orbit_dimensions_from_tangent_maps() {
    let sl2 = [
        Matrix::from_int_rows(&[vec![0, 1], vec![0, 0]]),
        Matrix::from_int_rows(&[vec![0, 0], vec![1, 0]]),
        Matrix::from_int_rows(&[vec![1, 0], vec![0, -1]]),
    ];
    let zero = Matrix::zeros(2, 2);
    for o in ExampleOrbit::ALL {
        let v = to_q(o.representative());
        let images: Vec<Vec<Rational>> = sl2
            .iter()
            .map(|x| act(x, &zero, &v))
            .chain(sl2.iter().map(|y| act(&zero, y, &v)))
            .collect();
        assert_eq!(Matrix::from_rows(images).rank(), o.dim(), "{}", o.name());
    }
}

#[test]
fn example_modes_agree_where_defined() {
    let engine = CharacteristicEngine::standard(ExampleModule::new()).unwrap();
    for o in [ExampleOrbit::O3, ExampleOrbit::O4, ExampleOrbit::O5] {
        let a = engine.characteristic(o.id(), Mode::Nonempty).unwrap();
        let b = engine.characteristic(o.id(), Mode::Dense).unwrap();
        assert_eq!(a.point, b.point, "{}", o.name());
    }
    let o2 = engine.characteristic(ExampleOrbit::O2.id(), Mode::Nonempty).unwrap();
    let o4 = engine.characteristic(ExampleOrbit::O4.id(), Mode::Nonempty).unwrap();
    // Not visible in the sense of distinct characteristics: O_2 and O_4 share one.
    assert_eq!(o2.point, o4.point);
}

fn check_engine<M: OrbitModel>(engine: &CharacteristicEngine<M>) {
    let model = engine.model();
    for o in model.orbits() {
        let sets = engine.m_sets(o).unwrap();
        let m: BTreeSet<usize> = sets.m_set.iter().copied().collect();
        assert!(sets.tilde_m_set.iter().all(|i| m.contains(i)), "{}", model.descriptor(o));
        // Uniqueness of the minimizer never fails on these models.
        engine.characteristic(o, Mode::Nonempty).unwrap();
    }
}

#[test]
fn tilde_sets_are_subsets() {
    check_engine(&CharacteristicEngine::standard(ExampleModule::new()).unwrap());
    for n in 2..=4 {
        check_engine(&CharacteristicEngine::standard(SlAdjoint::new(n, 5).unwrap()).unwrap());
    }
}

#[test]
fn characteristics_meet_their_orbits() {
    // O ∩ V_h⟨≥2⟩ ≠ ∅: the generic element of V_h⟨≥2⟩ lies over O.
    for n in 2..=4 {
        let engine = CharacteristicEngine::standard(SlAdjoint::new(n, 9).unwrap()).unwrap();
        let ws = engine.model().weight_system();
        for o in engine.model().orbits() {
            let c = engine.characteristic(o, Mode::Nonempty).unwrap();
            let support: BTreeSet<Weight> = ws
                .nonzero_weights()
                .filter(|mu| pairing(mu, &c.point).unwrap() >= int(2))
                .cloned()
                .collect();
            let generic = generic_jordan_partition(&support, n, 9).unwrap();
            assert!(dominance_leq(engine.model().partition(o), &generic).unwrap());
        }
    }
    let engine = CharacteristicEngine::standard(ExampleModule::new()).unwrap();
    for o in [ExampleOrbit::O2, ExampleOrbit::O3, ExampleOrbit::O4, ExampleOrbit::O5] {
        let c = engine.characteristic(o.id(), Mode::Nonempty).unwrap();
        let support: BTreeSet<Weight> = engine
            .model()
            .weight_system()
            .nonzero_weights()
            .filter(|mu| pairing(mu, &c.point).unwrap() >= int(2))
            .cloned()
            .collect();
        assert!(example_closure_leq(o, example_stratum(&support).unwrap()));
    }
}

#[test]
fn witnesses_are_interchangeable() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (series, rank) in [(Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::G, 2)] {
        let rs = RootSystem::simple(series, rank).unwrap();
        let ws = WeightSystem::new(&rs, &rs.adjoint_highest_weights()).unwrap();
        let arr = Arrangement::build(&ws, &default_level()).unwrap();
        let cinv = rs.cartan_matrix().inverse().unwrap();
        let mut seen = BTreeSet::new();
        for _ in 0..3000 {
            let labels: Vec<Rational> = (0..rank)
                .map(|_| Rational::new(rng.gen_range(1..=600).into(), 60.into()))
                .collect();
            let h = nilchar::liecore::Point::new(cinv.mul_vec(&labels));
            let Some(signs) = arr.sign_vector(&rs, &h) else { continue };
            let region = arr.region_by_signs(&signs).expect("sign vector of a region");
            let i_r: BTreeSet<Weight> = ws
                .nonzero_weights()
                .filter(|mu| pairing(mu, &h).unwrap() > arr.level)
                .cloned()
                .collect();
            assert_eq!(i_r, arr.subspaces[region.id].i_r);
            assert!(region.contains_strictly(&h));
            seen.insert(region.id);
        }
        assert!(seen.len() * 2 >= arr.regions.len(), "{series}{rank}: too few regions sampled");
    }
}
