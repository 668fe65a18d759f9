//! Index and nullity against a brute-force enumeration that works directly
//! from the periods, independent of the library's quadratic forms.

use num_complex::Complex;
use num_rational::BigRational;
use vacuum_tori::{index_nullity, Scalar, Tolerance, TorusLattice, VacuumSolution, Variant};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Periods as rational pairs `(x1, y1), (x2, y2)`.
#[derive(Clone)]
struct Periods([Q; 4]);

impl Periods {
    fn cross(&self) -> Q {
        let [a, b, c, d] = &self.0;
        a * d - b * c
    }

    /// `|conj(w2) n + conj(w1) m|^2 / cross^2`
    fn threshold(&self, n: i64, m: i64) -> Q {
        let [a, b, c, d] = &self.0;
        let (n, m) = (q(n, 1), q(m, 1));
        let re = c * &n + a * &m;
        let im = d * &n + b * &m;
        (&re * &re + &im * &im) / (self.cross() * self.cross())
    }

    /// Squared length of the frequency vector of mode `(k, l)`.
    fn theta(&self, variant: Variant, k: i64, l: i64) -> Q {
        let [a, b, c, d] = &self.0;
        let (k, l) = (q(k, 1), q(l, 1));
        let (fx, fy) = match variant {
            Variant::Paper => {
                let n1 = a * a + b * b;
                let n2 = c * c + d * d;
                (&k * a / &n1 + &l * c / &n2, &k * b / &n1 + &l * d / &n2)
            }
            Variant::Dual => {
                // reciprocal basis: u.w1 = 1, u.w2 = 0, v.w1 = 0, v.w2 = 1
                let det = self.cross();
                let (ux, uy) = (d / &det, -c / &det);
                let (vx, vy) = (-b / &det, a / &det);
                (&k * &ux + &l * &vx, &k * &uy + &l * &vy)
            }
        };
        &fx * &fx + &fy * &fy
    }

    fn lattice(&self) -> TorusLattice<Q> {
        let [a, b, c, d] = self.0.clone();
        TorusLattice::new(Complex::new(a, b), Complex::new(c, d), Tolerance::DEFAULT).unwrap()
    }
}

fn brute_force(p: &Periods, variant: Variant, n: i64, m: i64, radius: i64) -> (usize, usize) {
    let thr = p.threshold(n, m);
    let (mut below, mut on) = (0, 0);
    for k in -radius..=radius {
        for l in -radius..=radius {
            let t = p.theta(variant, k, l);
            if t < thr {
                below += 1;
            } else if t == thr {
                on += 1;
            }
        }
    }
    (below, 1 + on)
}

fn square() -> Periods {
    Periods([q(1, 1), q(0, 1), q(0, 1), q(1, 1)])
}

#[test]
fn square_and_rectangle_table() {
    let rect = Periods([q(1, 1), q(0, 1), q(0, 1), q(2, 1)]);
    let cases = [
        (square(), 1, 0, (1, 5)),
        (square(), 1, 1, (5, 5)),
        (square(), 2, 1, (13, 9)),
        (square(), 0, 0, (0, 2)),
        (rect, 1, 0, (3, 5)),
    ];
    for (p, n, m, want) in cases {
        assert_eq!(brute_force(&p, Variant::Paper, n, m, 12), want, "oracle ({n},{m})");
        let vs = VacuumSolution::build(p.lattice(), n, m);
        let r = index_nullity(&vs, Variant::Paper).unwrap();
        assert_eq!((r.index, r.nullity), want, "library ({n},{m})");
        assert!(r.exact);
        assert_eq!(r.threshold, p.threshold(n, m));
    }
}

#[test]
fn oblique_rational_lattices_both_variants() {
    let lattices = [
        Periods([q(1, 1), q(0, 1), q(1, 2), q(3, 4)]),
        Periods([q(2, 1), q(1, 3), q(-1, 2), q(3, 2)]),
        Periods([q(1, 1), q(1, 1), q(-1, 1), q(2, 1)]),
    ];
    for p in &lattices {
        for (n, m) in [(1, 0), (0, 1), (1, 1), (2, -1), (3, 2)] {
            let vs = VacuumSolution::build(p.lattice(), n, m);
            for variant in Variant::ALL {
                let thr = p.threshold(n, m).to_f64();
                // both forms are bounded below by a fixed multiple of k^2 + l^2
                let radius = (8.0 * thr.sqrt()) as i64 + 4;
                let want = brute_force(p, variant, n, m, radius);
                let r = index_nullity(&vs, variant).unwrap();
                assert_eq!((r.index, r.nullity), want, "{variant} ({n},{m})");
            }
        }
    }
}

#[test]
fn library_forms_agree_with_oracle_values() {
    let p = Periods([q(3, 2), q(1, 5), q(-2, 3), q(7, 4)]);
    let lat = p.lattice();
    for variant in Variant::ALL {
        let form = lat.theta_form(variant);
        for k in -3..=3 {
            for l in -3..=3 {
                assert_eq!(form.value(k, l), p.theta(variant, k, l));
            }
        }
    }
}
