use proptest::prelude::*;
use toric_elliptic::fans;
use toric_elliptic::series::Rational;
use toric_elliptic_cli::input::{parse_str, Input};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..9).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn input() -> impl Strategy<Value = Input> {
    (1usize..4, 1usize..6).prop_flat_map(|(rank, n)| {
        (
            prop::collection::vec(prop::collection::vec(-5i64..6, rank), n),
            prop::collection::vec(prop::collection::vec(0usize..n, rank), 1..4),
            prop::option::of(prop::collection::vec(rational(), n)),
            prop::option::of(prop::collection::vec(rational(), n)),
        )
            .prop_map(move |(rays, cones, pair, perturbation)| Input { rank, rays, cones, pair, perturbation })
    })
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_identity(inp in input()) {
        let text = inp.serialize();
        let (back, _) = parse_str(&text).unwrap();
        prop_assert_eq!(&back, &inp);
        prop_assert_eq!(back.serialize(), text);
    }
}

#[test]
fn acceptance_fans_round_trip() {
    let mut all = fans::acceptance_fans();
    all.push(("P(1,1,2)", fans::p112()));
    for (name, fan) in all {
        let inp = Input::from_parts(&fan, None, None);
        let (back, map) = parse_str(&inp.serialize()).unwrap();
        assert_eq!(back, inp, "{name}");
        let loaded = back.load(&map).unwrap();
        assert_eq!(loaded.fan.rays(), fan.rays(), "{name}");
        assert_eq!(loaded.fan.cones(), fan.cones(), "{name}");
    }
}

#[test]
fn data_files_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let (inp, _) = toric_elliptic_cli::input::read(&path).unwrap();
        let (back, _) = parse_str(&inp.serialize()).unwrap();
        assert_eq!(back, inp, "{}", path.display());
    }
}
