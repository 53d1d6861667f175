//! The explicit maps: Cremona involution `J`, the linear map `L`, `f = L∘J` and the surface map `g`.

use crate::exact::{EllParams, QuadExt};
use crate::mpoly::reduce::{factor_hints, PullbackPool, Reducer};
use crate::mpoly::{MultiPoly, RationalMap};

fn x(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

fn k(c: &QuadExt) -> MultiPoly {
    MultiPoly::constant(4, c.clone())
}

/// Every map and distinguished polynomial attached to a parameter pair `(a, c)`.
#[derive(Clone, Debug)]
pub struct Maps {
    pub a: QuadExt,
    pub c: QuadExt,
}

impl Maps {
    pub fn new(a: QuadExt, c: QuadExt) -> Self {
        Maps { a, c }
    }

    pub fn from_params(p: &EllParams) -> Self {
        Maps::new(p.a.clone(), p.c.clone())
    }

    /// `J = [x1x2x3 : x0x2x3 : x0x1x3 : x0x1x2]`.
    pub fn j(&self) -> RationalMap {
        let coords = (0..4).map(|i| (0..4).filter(|&j| j != i).fold(MultiPoly::one(4), |acc, j| acc.mul(&x(4, j)))).collect();
        RationalMap::new(coords).expect("cubic monomials")
    }

    /// `L = [x3 : x0 + a·x3 : x1 : x2 + c·x3]`.
    pub fn l(&self) -> RationalMap {
        RationalMap::new(self.l_forms()).expect("linear forms")
    }

    /// The coordinate forms of `L`; their zero sets are the faces `L⁻¹(Δ)`.
    pub fn l_forms(&self) -> Vec<MultiPoly> {
        vec![x(4, 3), x(4, 0).add(&k(&self.a).mul(&x(4, 3))), x(4, 1), x(4, 2).add(&k(&self.c).mul(&x(4, 3)))]
    }

    /// `L⁻¹ = [x1 − a·x0 : x2 : x3 − c·x0 : x0]`.
    pub fn l_inv(&self) -> RationalMap {
        RationalMap::new(self.l_inv_forms()).expect("linear forms")
    }

    pub fn l_inv_forms(&self) -> Vec<MultiPoly> {
        vec![x(4, 1).sub(&k(&self.a).mul(&x(4, 0))), x(4, 2), x(4, 3).sub(&k(&self.c).mul(&x(4, 0))), x(4, 0)]
    }

    /// Trial-division pool for maps built from `J` and `L`: coordinate planes and both face sets.
    pub fn hints(&self) -> Vec<MultiPoly> {
        let mut h: Vec<MultiPoly> = (0..4).map(|i| x(4, i)).collect();
        for f in self.l_forms().into_iter().chain(self.l_inv_forms()) {
            if f.num_terms() > 1 && !h.contains(&f) {
                h.push(f);
            }
        }
        h
    }

    /// Reduced lift `F = (x0x1x2, x1x2(x3 + a·x0), x0x2x3, x0x1(x3 + c·x2))` as printed.
    pub fn f_displayed(&self) -> RationalMap {
        let (x0, x1, x2, x3) = (x(4, 0), x(4, 1), x(4, 2), x(4, 3));
        RationalMap::new(vec![
            x0.mul(&x1).mul(&x2),
            x1.mul(&x2).mul(&x3.add(&k(&self.a).mul(&x0))),
            x0.mul(&x2).mul(&x3),
            x0.mul(&x1).mul(&x3.add(&k(&self.c).mul(&x2))),
        ])
        .expect("cubic lift")
    }

    /// `f = L∘J` reduced.
    pub fn f(&self) -> RationalMap {
        let m = RationalMap::compose(&self.l(), &self.j()).expect("dimensions");
        Reducer::default().reduce(&m, &self.hints()).0
    }

    /// `f⁻¹ = J∘L⁻¹` reduced.
    pub fn f_inv(&self) -> RationalMap {
        let m = RationalMap::compose(&self.j(), &self.l_inv()).expect("dimensions");
        Reducer::default().reduce(&m, &self.hints()).0
    }

    /// `Q = c·x1x2 + x1x3 + c·x2x3` in the plane `{x0 = 0}` with coordinates `(x1, x2, x3)`.
    pub fn q(&self) -> MultiPoly {
        let (y1, y2, y3) = (x(3, 0), x(3, 1), x(3, 2));
        let c = MultiPoly::constant(3, self.c.clone());
        c.mul(&y1).mul(&y2).add(&y1.mul(&y3)).add(&c.mul(&y2).mul(&y3))
    }

    /// `N = x1x3 − a·x2x3 − a·x1x2`.
    pub fn n(&self) -> MultiPoly {
        let (y1, y2, y3) = (x(3, 0), x(3, 1), x(3, 2));
        let a = MultiPoly::constant(3, self.a.clone());
        y1.mul(&y3).sub(&a.mul(&y2).mul(&y3)).sub(&a.mul(&y1).mul(&y2))
    }

    /// `g = [Q(Q + a·x2x3) : x2x3·Q : x3(x3 + (a+c)x2)(Q + a·x2x3)]`.
    pub fn g(&self) -> RationalMap {
        let (y2, y3) = (x(3, 1), x(3, 2));
        let q = self.q();
        let a = MultiPoly::constant(3, self.a.clone());
        let apc = MultiPoly::constant(3, &self.a + &self.c);
        let q4 = q.add(&a.mul(&y2).mul(&y3));
        RationalMap::new(vec![q.mul(&q4), y2.mul(&y3).mul(&q), y3.mul(&y3.add(&apc.mul(&y2))).mul(&q4)]).expect("quartic map")
    }

    /// `g⁻¹ = [x1(x1 − (a+c)x2)(N − c·x1x2) : x1x2·N : N(N − c·x1x2)]`.
    pub fn g_inv(&self) -> RationalMap {
        let (y1, y2) = (x(3, 0), x(3, 1));
        let n = self.n();
        let c = MultiPoly::constant(3, self.c.clone());
        let apc = MultiPoly::constant(3, &self.a + &self.c);
        let n2 = n.sub(&c.mul(&y1).mul(&y2));
        RationalMap::new(vec![y1.mul(&y1.sub(&apc.mul(&y2))).mul(&n2), y1.mul(&y2).mul(&n), n.mul(&n2)]).expect("quartic map")
    }

    /// Trial-division pool for the surface maps.
    pub fn surface_hints(&self) -> Vec<MultiPoly> {
        let (y1, y2, y3) = (x(3, 0), x(3, 1), x(3, 2));
        let a = MultiPoly::constant(3, self.a.clone());
        let c = MultiPoly::constant(3, self.c.clone());
        let apc = MultiPoly::constant(3, &self.a + &self.c);
        let q = self.q();
        let n = self.n();
        vec![
            y1.clone(),
            y2.clone(),
            y3.clone(),
            c.mul(&y2).add(&y3),
            y3.add(&apc.mul(&y2)),
            y1.sub(&apc.mul(&y2)),
            q.clone(),
            q.add(&a.mul(&y2).mul(&y3)),
            n.clone(),
            n.sub(&c.mul(&y1).mul(&y2)),
        ]
    }
}

/// Reduced iterates `m¹ … mⁿ`. Each `m^k = m^i ∘ m^(k−i)` uses the split with the smallest
/// unreduced degree.
pub fn iterates(m: &RationalMap, n: usize, base_hints: &[MultiPoly], reducer: &Reducer) -> Vec<RationalMap> {
    let mut out: Vec<RationalMap> = vec![m.clone()];
    let mut pullbacks = PullbackPool::new(base_hints);
    for k in 2..=n {
        let i = (1..k).min_by_key(|&i| out[i - 1].degree() * out[k - i - 1].degree()).unwrap();
        let j = k - i;
        let (outer, inner) = (&out[i - 1], &out[j - 1]);
        // Common factors come from hypersurfaces contracted by earlier iterates.
        pullbacks.step(m);
        let mut hints = out.iter().fold(base_hints.to_vec(), |h, prev| factor_hints(prev, &h));
        for h in pullbacks.hints() {
            if !hints.contains(h) {
                hints.push(h.clone());
            }
        }
        let composed = RationalMap::compose(outer, inner).expect("square maps");
        out.push(reducer.reduce(&composed, &hints).0);
    }
    out
}
