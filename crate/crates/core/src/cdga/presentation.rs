use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::{Derivation, GcAlgebra, Generator, Poly};
use crate::error::{Error, Result};
use crate::kernel::Scalar;

/// A semi-free commutative dg algebra concentrated in non-positive degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaPresentation {
    algebra: GcAlgebra,
    differential: Derivation,
}

/// Outcome of [`CdgaPresentation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub generators: usize,
    pub nonpositive_degrees: bool,
    pub differential_homogeneous: bool,
    pub square_zero: bool,
    pub graded_commutative: bool,
}

impl CdgaPresentation {
    /// The ground field: no generators.
    pub fn ground() -> Self {
        Self::free(Vec::new())
    }

    /// Zero differential.
    pub fn free(generators: Vec<Generator>) -> Self {
        let n = generators.len();
        Self { algebra: GcAlgebra::new(generators), differential: Derivation::zero(1, n) }
    }

    /// Build and validate a presentation from generators and the images of `d`.
    pub fn new(generators: Vec<Generator>, differential: Vec<Poly>) -> Result<Self> {
        let p = Self::new_unchecked(generators, differential)?;
        p.validate()?;
        Ok(p)
    }

    /// Build without checking `d^2 = 0`; only lengths are checked.
    pub fn new_unchecked(generators: Vec<Generator>, differential: Vec<Poly>) -> Result<Self> {
        if generators.len() != differential.len() {
            return Err(Error::Invalid("one differential image per generator is required".into()));
        }
        Ok(Self { algebra: GcAlgebra::new(generators), differential: Derivation { degree: 1, images: differential } })
    }

    pub fn algebra(&self) -> &GcAlgebra {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebra.is_empty()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.is_zero()
    }

    pub fn d(&self, p: &Poly) -> Poly {
        self.algebra.apply(&self.differential, p)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.algebra.mul(a, b)
    }

    /// Check degrees, homogeneity of `d` and `d^2 = 0` on every generator.
    pub fn validate(&self) -> Result<ValidationReport> {
        let alg = &self.algebra;
        for g in alg.generators() {
            if g.degree > 0 {
                return Err(Error::DegreeMismatch(format!("generator {} has positive degree {}", g.name, g.degree)));
            }
        }
        for (i, g) in alg.generators().iter().enumerate() {
            let image = &self.differential.images[i];
            if !alg.is_homogeneous_of(image, g.degree + 1) {
                return Err(Error::DegreeMismatch(format!(
                    "d({}) = {} is not homogeneous of degree {}",
                    g.name,
                    alg.format(image),
                    g.degree + 1
                )));
            }
        }
        for (i, g) in alg.generators().iter().enumerate() {
            let dd = self.d(&self.differential.images[i]);
            if !dd.is_zero() {
                return Err(Error::DifferentialNotSquareZero { generator: g.name.clone(), residue: alg.format(&dd) });
            }
        }
        let graded_commutative = (0..alg.len()).all(|i| {
            (0..alg.len()).all(|j| {
                let (a, b) = (Poly::var(i), Poly::var(j));
                let ab = alg.mul(&a, &b);
                let ba = alg.mul(&b, &a);
                let sign = if (alg.degree(i) * alg.degree(j)).rem_euclid(2) == 1 { -Scalar::one() } else { Scalar::one() };
                ab == ba.scale(&sign)
            })
        });
        Ok(ValidationReport {
            generators: alg.len(),
            nonpositive_degrees: true,
            differential_homogeneous: true,
            square_zero: true,
            graded_commutative,
        })
    }

    /// A k-point with the given values on degree-0 generators.
    pub fn point(&self, values: &[(&str, Scalar)]) -> Result<Point> {
        let mut map = BTreeMap::new();
        for (name, v) in values {
            let i = self.algebra.index_of(name).ok_or_else(|| Error::UndeclaredSymbol(name.to_string()))?;
            map.insert(i, v.clone());
        }
        let point = Point { values: map };
        point.check(self)?;
        Ok(point)
    }

    /// The point sending every degree-0 generator to zero.
    pub fn origin(&self) -> Point {
        Point {
            values: (0..self.len()).filter(|&i| self.algebra.degree(i) == 0).map(|i| (i, Scalar::zero())).collect(),
        }
    }

    /// Number of k-basis elements when the algebra is finite dimensional
    /// (every generator odd), `None` otherwise.
    pub fn finite_dimension(&self) -> Option<usize> {
        self.generators().iter().all(Generator::is_odd).then(|| 1usize << self.len())
    }
}

/// A k-point `A -> k`: values of the degree-0 generators; generators of
/// nonzero degree go to zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Point {
    values: BTreeMap<usize, Scalar>,
}

impl Point {
    pub fn from_indexed(values: BTreeMap<usize, Scalar>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &BTreeMap<usize, Scalar> {
        &self.values
    }

    /// Every degree-0 generator has a value and the point kills `d`.
    pub fn check(&self, ring: &CdgaPresentation) -> Result<()> {
        let alg = ring.algebra();
        for (i, g) in alg.generators().iter().enumerate() {
            if g.degree == 0 && !self.values.contains_key(&i) {
                return Err(Error::MissingEvaluationPoint(g.name.clone()));
            }
        }
        for &i in self.values.keys() {
            if i >= alg.len() || alg.degree(i) != 0 {
                return Err(Error::InvalidPoint("values may only be given for degree-0 generators".into()));
            }
        }
        for (i, g) in alg.generators().iter().enumerate() {
            if g.degree == -1 {
                let v = self.eval(alg, &ring.differential().images[i]);
                if !v.is_zero() {
                    return Err(Error::InvalidPoint(format!("d({}) does not vanish at the point", g.name)));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, alg: &GcAlgebra, p: &Poly) -> Scalar {
        let mut out = Scalar::zero();
        'terms: for (m, c) in p.terms() {
            let mut v = c.clone();
            for &(g, e) in m {
                if alg.degree(g) != 0 {
                    continue 'terms;
                }
                let x = self.values.get(&g).cloned().unwrap_or_else(Scalar::zero);
                for _ in 0..e {
                    v *= &x;
                }
            }
            out += v;
        }
        out
    }

    pub fn describe(&self, alg: &GcAlgebra) -> String {
        let parts: Vec<String> = self.values.iter().map(|(i, v)| format!("{}={}", alg.generators()[*i].name, v)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// A morphism of presentations, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    images: Vec<Poly>,
}

impl RingMap {
    /// Checks that images have the right degree and that the map commutes with `d`.
    pub fn new(source: &CdgaPresentation, target: &CdgaPresentation, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidRingMap("one image per source generator is required".into()));
        }
        let map = Self { images };
        for (i, g) in source.generators().iter().enumerate() {
            if !target.algebra().is_homogeneous_of(&map.images[i], g.degree) {
                return Err(Error::InvalidRingMap(format!("image of {} has the wrong degree", g.name)));
            }
            let lhs = map.apply(source, target, &source.differential().images[i]);
            let rhs = target.d(&map.images[i]);
            if lhs != rhs {
                return Err(Error::InvalidRingMap(format!("map does not commute with d on {}", g.name)));
            }
        }
        Ok(map)
    }

    /// The structure map from the ground field.
    pub fn from_ground() -> Self {
        Self { images: Vec::new() }
    }

    pub fn identity(ring: &CdgaPresentation) -> Self {
        Self { images: (0..ring.len()).map(Poly::var).collect() }
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, source: &CdgaPresentation, target: &CdgaPresentation, p: &Poly) -> Poly {
        let talg = target.algebra();
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut v = Poly::constant(c.clone());
            for &(g, e) in m {
                debug_assert!(g < source.len());
                for _ in 0..e {
                    v = talg.mul(&v, &self.images[g]);
                }
            }
            out += &v;
        }
        if out.is_zero() {
            Poly::zero()
        } else {
            out
        }
    }
}
