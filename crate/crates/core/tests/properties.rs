use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use pauliprobe::pauli::{dense_from_spectrum, spectrum_from_dense, PauliString};
use pauliprobe::PauliSpectrum;

fn matrix(n: usize) -> impl Strategy<Value = DMatrix<Complex64>> {
    let d = 1usize << n;
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d)
        .prop_map(move |v| DMatrix::from_iterator(d, d, v.into_iter().map(|(re, im)| Complex64::new(re, im))))
}

fn spectrum() -> impl Strategy<Value = PauliSpectrum> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((0..1usize << (2 * n), -1.0f64..1.0), 0..12).prop_map(move |terms| {
            PauliSpectrum::from_terms(
                n,
                terms.into_iter().map(|(i, c)| (PauliString::from_index(n, i), Complex64::new(c, 0.0))),
            )
            .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn round_trip_and_parseval(m in (1usize..=4).prop_flat_map(matrix)) {
        let s = spectrum_from_dense(&m).unwrap();
        let back = dense_from_spectrum(&s).unwrap();
        prop_assert!((back - &m).camax() < 1e-12);
        let d = m.nrows() as f64;
        let frob = m.iter().map(|a| a.norm_sqr()).sum::<f64>() / d;
        prop_assert!((s.two_norm().powi(2) - frob).abs() <= 1e-12 * frob.max(1.0));
    }

    #[test]
    fn tail_norm_is_monotone_in_k(s in spectrum()) {
        let n = s.num_qubits();
        let tails: Vec<f64> = (0..=n).map(|k| s.tail_two_norm(k).unwrap()).collect();
        prop_assert!(tails.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(tails[n], 0.0);
        let non_identity = s.iter().filter(|(p, _)| !p.is_identity()).map(|(_, a)| a.norm_sqr()).sum::<f64>();
        prop_assert!((tails[0] - non_identity.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn word_parse_round_trip(n in 1usize..=8, idx in any::<u64>()) {
        let p = PauliString::from_index(n, (idx % (1u64 << (2 * n))) as usize);
        let q: PauliString = p.to_string().parse().unwrap();
        prop_assert_eq!(p, q);
        prop_assert_eq!(p.weight(), p.to_string().bytes().filter(|&b| b != b'I').count());
    }
}
