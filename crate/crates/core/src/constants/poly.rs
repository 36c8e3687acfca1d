//! `A(a, b)` and `B(a, b)` over the reals, as binary forms. Entry `j` of a
//! coefficient array multiplies `a^(d−j) b^j`.

const C: [f64; 3] = [1.0, 1.0, 7.0];
const A0: [f64; 3] = [-3.0, 693.0, -2205.0];
const B0: [f64; 5] = [2.0, 1036.0, -22050.0, 12348.0, -129654.0];

fn mul<const P: usize, const Q: usize, const R: usize>(p: &[f64; P], q: &[f64; Q]) -> [f64; R] {
    let mut out = [0.0; R];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn form_a() -> [f64; 5] {
    mul(&C, &A0)
}

pub(crate) fn form_b() -> [f64; 7] {
    mul(&C, &B0)
}

pub(crate) fn eval<const N: usize>(f: &[f64; N], a: f64, b: f64) -> f64 {
    let mut s = 0.0;
    let mut bp = 1.0;
    for c in f {
        s = s * a + c * bp;
        bp *= b;
    }
    s
}

/// `∂f/∂a` and `∂f/∂b` as forms of one degree lower.
pub(crate) fn partials<const N: usize, const M: usize>(f: &[f64; N]) -> ([f64; M], [f64; M]) {
    let d = N - 1;
    let mut da = [0.0; M];
    let mut db = [0.0; M];
    for j in 0..N {
        if j < d {
            da[j] = f[j] * (d - j) as f64;
        }
        if j > 0 {
            db[j - 1] = f[j] * j as f64;
        }
    }
    (da, db)
}

/// `H = max(4|A|³, 27B²)` at a real point.
pub(crate) fn height(a: f64, b: f64, fa: &[f64; 5], fb: &[f64; 7]) -> f64 {
    let x = eval(fa, a, b);
    let y = eval(fb, a, b);
    (4.0 * (x * x * x).abs()).max(27.0 * y * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::eval_ab;
    use num_traits::ToPrimitive;

    #[test]
    fn matches_exact_forms() {
        let fa = form_a();
        let fb = form_b();
        assert_eq!(fa, [-3.0, 690.0, -1533.0, 2646.0, -15435.0]);
        for (a, b) in [(14i64, 5i64), (-3, 62), (1, 1), (-8, 3)] {
            let w = eval_ab(a, b);
            assert_eq!(eval(&fa, a as f64, b as f64), w.a.to_f64().unwrap());
            let rel = eval(&fb, a as f64, b as f64) / w.b.to_f64().unwrap() - 1.0;
            assert!(rel.abs() < 1e-14);
        }
    }

    #[test]
    fn partials_by_difference() {
        let fb = form_b();
        let (da, db) = partials::<7, 6>(&fb);
        let (a, b, h) = (0.3, 0.05, 1e-6);
        let na = (eval(&fb, a + h, b) - eval(&fb, a - h, b)) / (2.0 * h);
        let nb = (eval(&fb, a, b + h) - eval(&fb, a, b - h)) / (2.0 * h);
        assert!((eval(&da, a, b) - na).abs() < 1e-5);
        assert!((eval(&db, a, b) - nb).abs() < 1e-4);
    }
}
