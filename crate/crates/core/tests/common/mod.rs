//! Golden arrangements shared across integration tests.

use mcurves::arrangement::Arrangement;
use mcurves::exactpoly::rat::rat_i;
use mcurves::HForm;

pub fn line(a: i64, b: i64, c: i64) -> HForm {
    HForm::linear(rat_i(a), rat_i(b), rat_i(c))
}

pub fn conic(v: [i64; 6]) -> HForm {
    HForm::conic([
        rat_i(v[0]),
        rat_i(v[1]),
        rat_i(v[2]),
        rat_i(v[3]),
        rat_i(v[4]),
        rat_i(v[5]),
    ])
}

/// xy(y+x-z)(y-x-z)(y+x+z)(y-x+z)(x^2+y^2-z^2)
pub fn cl1() -> Arrangement {
    Arrangement::new(
        vec![
            line(1, 0, 0),
            line(0, 1, 0),
            line(1, 1, -1),
            line(-1, 1, -1),
            line(1, 1, 1),
            line(-1, 1, 1),
        ],
        vec![conic([1, 1, -1, 0, 0, 0])],
    )
    .unwrap()
}

/// x(x-z)(x+z)(y-z)(y+z)(y-x)(y+x)(x^2+y^2-2z^2)
pub fn cl2() -> Arrangement {
    Arrangement::new(
        vec![
            line(1, 0, 0),
            line(1, 0, -1),
            line(1, 0, 1),
            line(0, 1, -1),
            line(0, 1, 1),
            line(-1, 1, 0),
            line(1, 1, 0),
        ],
        vec![conic([1, 1, -2, 0, 0, 0])],
    )
    .unwrap()
}

/// xy(x-z)(x+z)(y+z)(y-z)(y-x-z)(y-x+z)(y-x)(-x^2+xy-y^2+z^2)
pub fn cl3() -> Arrangement {
    Arrangement::new(
        vec![
            line(1, 0, 0),
            line(0, 1, 0),
            line(1, 0, -1),
            line(1, 0, 1),
            line(0, 1, 1),
            line(0, 1, -1),
            line(-1, 1, -1),
            line(-1, 1, 1),
            line(-1, 1, 0),
        ],
        vec![conic([-1, -1, 1, 1, 0, 0])],
    )
    .unwrap()
}

/// xy(x+y-z)(x^2-xz+5y^2-5yz)(x^2+2y^2-xz-2yz)
pub fn st() -> Arrangement {
    Arrangement::new(
        vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, -1)],
        vec![conic([1, 5, 0, 0, -1, -5]), conic([1, 2, 0, 0, -1, -2])],
    )
    .unwrap()
}
