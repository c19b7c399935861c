//! The alternating group A4 and its 3-dimensional rotation representation.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A permutation of {1,2,3,4} in one-line notation: `images[i]` is the image
/// of `i + 1`. Composition is right-to-left: `(g * h)(i) = g(h(i))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: [u8; 4],
}

impl Perm {
    pub const IDENTITY: Perm = Perm { images: [1, 2, 3, 4] };

    /// Panics if `images` is not a permutation of 1..=4.
    pub fn new(images: [u8; 4]) -> Self {
        let mut seen = [false; 5];
        for &v in &images {
            assert!((1..=4).contains(&v) && !seen[v as usize], "not a permutation: {images:?}");
            seen[v as usize] = true;
        }
        Self { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(cycles: &[&[u8]]) -> Self {
        let mut images = [1, 2, 3, 4];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                images[(a - 1) as usize] = c[(k + 1) % c.len()];
            }
        }
        Self::new(images)
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0u8; 4];
        for (i, &v) in self.images.iter().enumerate() {
            inv[(v - 1) as usize] = i as u8 + 1;
        }
        Self { images: inv }
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut k = 1;
        while p != Perm::IDENTITY {
            p = p * *self;
            k += 1;
        }
        k
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        let mut images = [0u8; 4];
        for i in 1..=4u8 {
            images[(i - 1) as usize] = self.apply(rhs.apply(i));
        }
        Perm { images }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation
        let mut seen = [false; 5];
        let mut parts = Vec::new();
        for start in 1..=4u8 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start as usize] = true;
            let mut j = self.apply(start);
            while j != start {
                cyc.push(j);
                seen[j as usize] = true;
                j = self.apply(j);
            }
            parts.push(format!(
                "({})",
                cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
        if parts.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "{}", parts.join(""))
        }
    }
}

/// Strut generator `s = (1,2,3)`.
pub fn gen_s() -> Perm {
    Perm::from_cycles(&[&[1, 2, 3]])
}

/// Cable generator `c1 = (1,3,4)`, stress `x`.
pub fn gen_c1() -> Perm {
    Perm::from_cycles(&[&[1, 3, 4]])
}

/// Cable generator `c2 = (2,4,3)`, stress `1 - x`.
pub fn gen_c2() -> Perm {
    Perm::from_cycles(&[&[2, 4, 3]])
}

/// `(1,2)(3,4)`
pub fn gen_g2() -> Perm {
    Perm::from_cycles(&[&[1, 2], &[3, 4]])
}

/// `(1,3)(2,4)`
pub fn gen_g3() -> Perm {
    Perm::from_cycles(&[&[1, 3], &[2, 4]])
}

/// 3x3 integer matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RepMatrix(pub [[i64; 3]; 3]);

impl RepMatrix {
    pub const IDENTITY: RepMatrix = RepMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        RepMatrix([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_orthogonal(&self) -> bool {
        *self * self.transpose() == RepMatrix::IDENTITY
    }

    pub fn apply<T>(&self, v: &[T; 3]) -> [T; 3]
    where
        T: crate::scalar::Scalar,
    {
        let m = &self.0;
        std::array::from_fn(|i| {
            (0..3).fold(T::zero(), |acc, j| acc + T::from_i64(m[i][j]) * v[j].clone())
        })
    }
}

impl Mul for RepMatrix {
    type Output = RepMatrix;
    fn mul(self, rhs: RepMatrix) -> RepMatrix {
        let mut out = [[0i64; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        RepMatrix(out)
    }
}

/// The representation matrices given explicitly for the generators.
pub const RHO_G1: RepMatrix = RepMatrix([[0, 1, 0], [0, 0, -1], [-1, 0, 0]]);
pub const RHO_G2: RepMatrix = RepMatrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]]);
pub const RHO_G3: RepMatrix = RepMatrix([[-1, 0, 0], [0, 1, 0], [0, 0, -1]]);
pub const RHO_C1: RepMatrix = RepMatrix([[0, -1, 0], [0, 0, 1], [-1, 0, 0]]);
pub const RHO_C2: RepMatrix = RepMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);

/// A4 with a fixed enumeration (lexicographic one-line order), its
/// multiplication table, and the representation `rho`.
#[derive(Clone, Debug)]
pub struct A4 {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    rho: Vec<RepMatrix>,
}

impl A4 {
    /// Enumerates the group, builds `rho` from `rho(g1)` and `rho(g2)` by
    /// breadth-first extension `rho(h*gen) = rho(h)*rho(gen)`, and verifies
    /// the homomorphism property on all 144 pairs together with the printed
    /// matrices for `g3`, `c1` and `c2`.
    pub fn build() -> Result<Self> {
        let mut elements: Vec<Perm> = permutations4().into_iter().filter(Perm::is_even).collect();
        elements.sort();
        let index: HashMap<Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (*p, i)).collect();

        let gens = [(gen_s(), RHO_G1), (gen_g2(), RHO_G2)];
        let mut rho: Vec<Option<RepMatrix>> = vec![None; elements.len()];
        rho[index[&Perm::IDENTITY]] = Some(RepMatrix::IDENTITY);
        let mut queue = VecDeque::from([Perm::IDENTITY]);
        while let Some(h) = queue.pop_front() {
            let rh = rho[index[&h]].unwrap();
            for (g, rg) in &gens {
                let hg = h * *g;
                let m = rh * *rg;
                match rho[index[&hg]] {
                    None => {
                        rho[index[&hg]] = Some(m);
                        queue.push_back(hg);
                    }
                    Some(existing) if existing != m => {
                        return Err(Error::verification(
                            "representation",
                            format!("inconsistent rho({hg:?}): {existing:?} vs {m:?}"),
                        ));
                    }
                    _ => {}
                }
            }
        }
        let rho: Vec<RepMatrix> = rho
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::verification("representation", "generators do not reach all of A4")))
            .collect::<Result<_>>()?;
        let group = Self { elements, index, rho };
        group.verify()?;
        Ok(group)
    }

    fn verify(&self) -> Result<()> {
        if self.elements.len() != 12 {
            return Err(Error::verification("group", "A4 must have 12 elements"));
        }
        for g in &self.elements {
            for h in &self.elements {
                if self.rho(&(*g * *h)) != self.rho(g) * self.rho(h) {
                    return Err(Error::verification(
                        "homomorphism",
                        format!("rho({g:?}{h:?}) != rho({g:?}) rho({h:?})"),
                    ));
                }
            }
            let m = self.rho(g);
            if !m.is_orthogonal() || m.det() != 1 {
                return Err(Error::verification("representation", format!("rho({g:?}) is not a rotation")));
            }
        }
        let printed = [
            ("rho(g3)", gen_g3(), RHO_G3),
            ("rho(c1)", gen_c1(), RHO_C1),
            ("rho(c2)", gen_c2(), RHO_C2),
        ];
        for (name, g, m) in printed {
            if self.rho(&g) != m {
                return Err(Error::verification("representation", format!("{name} differs from the printed matrix")));
            }
        }
        if gen_s() * gen_g2() != gen_c1() || gen_s() * gen_g3() != gen_c2() {
            return Err(Error::verification("group", "c1 = g1 g2 and c2 = g1 g3 fail"));
        }
        if self.generated_by(&[gen_s(), gen_c1(), gen_c2()]).len() != 12 {
            return Err(Error::verification("group", "{s, c1, c2} does not generate A4"));
        }
        Ok(())
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &Perm) -> usize {
        self.index[g]
    }

    pub fn rho(&self, g: &Perm) -> RepMatrix {
        self.rho[self.index[g]]
    }

    pub fn rho_at(&self, i: usize) -> RepMatrix {
        self.rho[i]
    }

    /// Subgroup generated by `gens` (closure under right multiplication).
    pub fn generated_by(&self, gens: &[Perm]) -> Vec<Perm> {
        let mut seen = vec![Perm::IDENTITY];
        let mut queue = VecDeque::from([Perm::IDENTITY]);
        while let Some(h) = queue.pop_front() {
            for g in gens {
                let hg = h * *g;
                if !seen.contains(&hg) {
                    seen.push(hg);
                    queue.push_back(hg);
                }
            }
        }
        seen.sort();
        seen
    }

    /// Left cosets `g<s>` as index triples `(g, gs, gs^2)`, ordered by their
    /// smallest element; `g` is the smallest element of the coset.
    pub fn strut_triangles(&self) -> Vec<[usize; 3]> {
        let s = gen_s();
        let mut out: Vec<[usize; 3]> = Vec::new();
        let mut used = vec![false; self.len()];
        for (i, g) in self.elements.iter().enumerate() {
            if used[i] {
                continue;
            }
            let tri = [i, self.index_of(&(*g * s)), self.index_of(&(*g * s * s))];
            for &t in &tri {
                used[t] = true;
            }
            out.push(tri);
        }
        out
    }
}

fn permutations4() -> Vec<Perm> {
    let mut out = Vec::with_capacity(24);
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            for c in 1..=4u8 {
                for d in 1..=4u8 {
                    let v = [a, b, c, d];
                    let mut s = v;
                    s.sort();
                    if s == [1, 2, 3, 4] {
                        out.push(Perm::new(v));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_even_permutations() {
        let g = A4::build().unwrap();
        assert_eq!(g.len(), 12);
        assert!(g.elements().iter().all(Perm::is_even));
        assert_eq!(g.elements()[0], Perm::IDENTITY);
    }

    #[test]
    fn printed_generator_products() {
        assert_eq!(gen_s() * gen_g2(), gen_c1());
        assert_eq!(gen_s() * gen_g3(), gen_c2());
        assert_eq!(RHO_G1 * RHO_G2, RHO_C1);
        assert_eq!(RHO_G1 * RHO_G3, RHO_C2);
    }

    #[test]
    fn rho_examples() {
        let g = A4::build().unwrap();
        assert_eq!(g.rho(&gen_c1()), RepMatrix([[0, -1, 0], [0, 0, 1], [-1, 0, 0]]));
        assert_eq!(g.rho(&Perm::IDENTITY), RepMatrix::IDENTITY);
        let rs = g.rho(&gen_s());
        assert_eq!(rs * rs * rs, RepMatrix::IDENTITY);
        assert_eq!(gen_s().order(), 3);
    }

    #[test]
    fn homomorphism_table() {
        let g = A4::build().unwrap();
        let mut checked = 0;
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.rho(&(*a * *b)), g.rho(a) * g.rho(b));
                checked += 1;
            }
        }
        assert_eq!(checked, 144);
    }

    #[test]
    fn struts_are_four_disjoint_triangles() {
        let g = A4::build().unwrap();
        let tris = g.strut_triangles();
        assert_eq!(tris.len(), 4);
        let mut all: Vec<usize> = tris.iter().flatten().copied().collect();
        all.sort();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(format!("{:?}", gen_c2()), "(2,4,3)");
        assert_eq!(format!("{:?}", gen_g2()), "(1,2)(3,4)");
        assert_eq!(gen_c1().inverse() * gen_c1(), Perm::IDENTITY);
    }
}
