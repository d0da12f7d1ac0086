use e7forge::e7mat::*;
use e7forge::f4e6::F4E6Basis;
use e7forge::generators::Construction;
use e7forge::rep133::{build_adjoint_133, Normalization};
use e7forge::rep56::build_56_tits;
use e7forge::{Error, ExactScalar};
use num_complex::Complex64;

#[test]
fn exact_round_trip_is_byte_identical() {
    let set = build_56_tits(F4E6Basis::standard());
    let mut file = E7Mat::from_set(&set, ScalarMode::Exact).unwrap();
    file.manifest.push(" source=build".into());
    let text = file.write();
    assert!(text.starts_with("#E7MAT v1\nconstruction=tits rep=56 count=133 dim=56 scalar=exact\n# source=build\n@ index=1 label=Y1\n"));
    let back = E7Mat::read(&text).unwrap();
    assert_eq!(back, file);
    assert_eq!(back.write(), text);
    assert_eq!(back.into_set().exact, set.exact);
}

#[test]
fn float_round_trip_is_byte_identical() {
    let set = build_adjoint_133(F4E6Basis::standard(), Normalization::Orthonormal);
    let file = E7Mat::from_set(&set, ScalarMode::Float).unwrap();
    let text = file.write();
    let back = E7Mat::read(&text).unwrap();
    assert_eq!(back.write(), text);
    let round = back.into_set();
    assert_eq!(round.mats, set.mats);
    assert_eq!(round.rep_dim, 133);
}

#[test]
fn complex_text_round_trip() {
    for z in [Complex64::new(0.1, -1.0 / 3.0), Complex64::new(1e-300, 6f64.sqrt()), Complex64::new(-0.0, 0.0)] {
        let s = format_complex(z);
        assert_eq!(parse_complex(&s).unwrap(), z, "{s}");
    }
    assert!(matches!(parse_complex("1.0"), Err(Error::Parse(_))));
    assert!(matches!(parse_complex("1.0,x"), Err(Error::Parse(_))));
}

#[test]
fn scalar_mode_tags() {
    for m in [ScalarMode::Exact, ScalarMode::Float] {
        assert_eq!(m.tag().parse::<ScalarMode>().unwrap(), m);
    }
    assert!("double".parse::<ScalarMode>().is_err());
}

const HALF: &str = "1/2,0/1,0/1,0/1;0/1,0/1,0/1,0/1";
const MINUS_I_SQRT6: &str = "0/1,0/1,0/1,0/1;0/1,0/1,0/1,-1/1";

fn small_file() -> String {
    format!("#E7MAT v1\nconstruction=split rep=56 count=2 dim=56 scalar=exact\n@ index=1 label=A\n0 1 {HALF}\n\n@ index=2 label=B\n3 4 {MINUS_I_SQRT6}\n")
}

#[test]
fn small_file_parses() {
    let f = E7Mat::read(&small_file()).unwrap();
    assert_eq!(f.construction, Construction::Split);
    assert_eq!(f.labels, ["A", "B"]);
    assert_eq!(f.matrices.len(), 2);
    assert_eq!(f.matrices.mode(), ScalarMode::Exact);
    assert_eq!(f.write(), small_file());
    let Matrices::Exact(m) = &f.matrices else { panic!("exact file") };
    assert_eq!(m[0].get(0, 1), ExactScalar::ratio(1, 2));
    assert_eq!(m[1].get(3, 4), -(&ExactScalar::i() * &ExactScalar::sqrt6()));
}

#[test]
fn malformed_input_is_rejected() {
    let good = small_file();
    let cases = [
        good.replace("#E7MAT v1", "#E7MAT v2"),
        good.replace("count=2", "count=3"),
        good.replace("count=2 ", ""),
        good.replace("construction=split", "construction=g2"),
        good.replace("scalar=exact", "scalar=double"),
        good.replace("index=2", "index=3"),
        good.replace("0 1 ", "0 56 "),
        good.replace(&format!("0 1 {HALF}"), "0 1"),
        good.replace(HALF, "1/2,0/1"),
        good.replace(HALF, "1/0,0/1,0/1,0/1;0/1,0/1,0/1,0/1"),
        good.replace("@ index=1 label=A\n", ""),
        good.replace("label=A", "name=A"),
        String::new(),
    ];
    for (k, text) in cases.iter().enumerate() {
        assert!(E7Mat::read(text).is_err(), "case {k}");
    }
}

#[test]
fn exact_mode_needs_exact_entries() {
    let set = build_adjoint_133(F4E6Basis::standard(), Normalization::Orthonormal);
    let float_only = E7Mat::from_set(&set, ScalarMode::Float).unwrap().into_set();
    assert!(matches!(E7Mat::from_set(&float_only, ScalarMode::Exact), Err(Error::InvalidArgument(_))));
}
