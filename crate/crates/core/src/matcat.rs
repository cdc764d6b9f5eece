//! The matrix category Mat(S).
//!
//! Objects are finite tensor-shaped index sets, morphisms are dense
//! matrices with `cod.total()` rows and `dom.total()` columns. Tensor
//! products flatten a pair `(i, j)` on factors of sizes `(m, n)` to the
//! row-major index `i * n + j`; associators and unitors are identities under
//! this flattening and never appear as data.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::semiring::{complex_eq, real_add, real_eq, real_mul, Kind, Scalar, ScalarDomain};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Obj {
    dims: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Obj {
    /// The monoidal unit I: no factors, one element.
    pub fn unit() -> Obj {
        Obj::default()
    }

    /// A single-factor object with `n` elements.
    pub fn new(n: usize) -> Obj {
        assert!(n >= 1, "objects have at least one element");
        Obj {
            dims: vec![n],
            labels: None,
        }
    }

    pub fn from_dims(dims: Vec<usize>) -> Result<Obj> {
        if dims.contains(&0) {
            return Err(Error::Shape(format!("zero-sized factor in {dims:?}")));
        }
        Ok(Obj { dims, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Obj> {
        if labels.len() != self.total() {
            return Err(Error::Shape(format!(
                "{} labels for an object with {} elements",
                labels.len(),
                self.total()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn tensor(&self, other: &Obj) -> Obj {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Obj { dims, labels: None }
    }

    fn same_shape(&self, other: &Obj) -> bool {
        self.dims == other.dims
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Bool(Vec<bool>),
    Complex(Vec<Complex64>),
    Real(Vec<f64>),
}

/// A morphism of Mat(S).
#[derive(Clone, Debug, PartialEq)]
pub struct Mor {
    dom: Obj,
    cod: Obj,
    domain: ScalarDomain,
    entries: Entries,
}

impl Mor {
    pub fn from_scalars(dom: Obj, cod: Obj, domain: ScalarDomain, values: Vec<Scalar>) -> Result<Mor> {
        let expected = dom.total() * cod.total();
        if values.len() != expected {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                values.len(),
                cod.total(),
                dom.total()
            )));
        }
        let entries = match domain.kind {
            Kind::Boolean => Entries::Bool(
                values
                    .into_iter()
                    .map(|v| match domain.check(v)? {
                        Scalar::Bool(b) => Ok(b),
                        _ => unreachable!(),
                    })
                    .collect::<Result<_>>()?,
            ),
            Kind::Complex => Entries::Complex(
                values
                    .into_iter()
                    .map(|v| match domain.check(v)? {
                        Scalar::Complex(z) => Ok(z),
                        _ => unreachable!(),
                    })
                    .collect::<Result<_>>()?,
            ),
            Kind::NonnegReal | Kind::Quantale => Entries::Real(
                values
                    .into_iter()
                    .map(|v| match domain.check(v)? {
                        Scalar::Real(x) => Ok(x),
                        _ => unreachable!(),
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(Mor {
            dom,
            cod,
            domain,
            entries,
        })
    }

    pub fn from_fn(dom: Obj, cod: Obj, domain: ScalarDomain, mut f: impl FnMut(usize, usize) -> Scalar) -> Result<Mor> {
        let (rows, cols) = (cod.total(), dom.total());
        let values = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Mor::from_scalars(dom, cod, domain, values)
    }

    /// Boolean relation from a row-major bit vector.
    pub fn from_bools(dom: Obj, cod: Obj, bits: Vec<bool>) -> Result<Mor> {
        Self::checked(dom, cod, ScalarDomain::boolean(), Entries::Bool(bits))
    }

    pub fn from_complex(dom: Obj, cod: Obj, domain: ScalarDomain, values: Vec<Complex64>) -> Result<Mor> {
        if domain.kind != Kind::Complex {
            return Err(Error::WrongSemiring {
                expected: "complex",
                found: domain.kind,
            });
        }
        if let Some(z) = values.iter().find(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NotInDomain {
                kind: Kind::Complex,
                value: Scalar::Complex(*z),
            });
        }
        Self::checked(dom, cod, domain, Entries::Complex(values))
    }

    pub fn from_reals(dom: Obj, cod: Obj, domain: ScalarDomain, values: Vec<f64>) -> Result<Mor> {
        if let Some(x) = values.iter().find(|x| !domain.contains(&Scalar::Real(**x))) {
            return Err(Error::NotInDomain {
                kind: domain.kind,
                value: Scalar::Real(*x),
            });
        }
        Self::checked(dom, cod, domain, Entries::Real(values))
    }

    fn checked(dom: Obj, cod: Obj, domain: ScalarDomain, entries: Entries) -> Result<Mor> {
        let len = match &entries {
            Entries::Bool(v) => v.len(),
            Entries::Complex(v) => v.len(),
            Entries::Real(v) => v.len(),
        };
        if len != dom.total() * cod.total() {
            return Err(Error::Shape(format!(
                "{len} entries for a {}x{} matrix",
                cod.total(),
                dom.total()
            )));
        }
        Ok(Mor {
            dom,
            cod,
            domain,
            entries,
        })
    }

    pub fn zero(dom: Obj, cod: Obj, domain: ScalarDomain) -> Mor {
        let len = dom.total() * cod.total();
        let entries = match domain.kind {
            Kind::Boolean => Entries::Bool(vec![false; len]),
            Kind::Complex => Entries::Complex(vec![Complex64::new(0.0, 0.0); len]),
            Kind::NonnegReal | Kind::Quantale => Entries::Real(vec![0.0; len]),
        };
        Mor {
            dom,
            cod,
            domain,
            entries,
        }
    }

    pub fn identity(obj: &Obj, domain: ScalarDomain) -> Mor {
        let n = obj.total();
        let mut m = Mor::zero(obj.clone(), obj.clone(), domain);
        for i in 0..n {
            m.set_one(i, i);
        }
        m
    }

    /// The basis point `e_j : I → obj`.
    pub fn point(obj: &Obj, j: usize, domain: ScalarDomain) -> Mor {
        let mut m = Mor::zero(Obj::unit(), obj.clone(), domain);
        m.set_one(j, 0);
        m
    }

    fn set_one(&mut self, r: usize, c: usize) {
        let i = r * self.cols() + c;
        match &mut self.entries {
            Entries::Bool(v) => v[i] = true,
            Entries::Complex(v) => v[i] = Complex64::new(1.0, 0.0),
            Entries::Real(v) => v[i] = 1.0,
        }
    }

    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.cod.total()
    }

    pub fn cols(&self) -> usize {
        self.dom.total()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        let i = r * self.cols() + c;
        match &self.entries {
            Entries::Bool(v) => Scalar::Bool(v[i]),
            Entries::Complex(v) => Scalar::Complex(v[i]),
            Entries::Real(v) => Scalar::Real(v[i]),
        }
    }

    pub fn is_zero_at(&self, r: usize, c: usize) -> bool {
        self.get(r, c).is_zero()
    }

    pub fn as_bools(&self) -> Option<&[bool]> {
        match &self.entries {
            Entries::Bool(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_complex(&self) -> Option<&[Complex64]> {
        match &self.entries {
            Entries::Complex(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_reals(&self) -> Option<&[f64]> {
        match &self.entries {
            Entries::Real(v) => Some(v),
            _ => None,
        }
    }

    /// Row-major scalars.
    pub fn scalars(&self) -> Vec<Scalar> {
        (0..self.rows() * self.cols())
            .map(|i| self.get(i / self.cols(), i % self.cols()))
            .collect()
    }

    /// Same matrix, different objects of identical totals.
    pub fn reshape(mut self, dom: Obj, cod: Obj) -> Result<Mor> {
        if dom.total() != self.dom.total() || cod.total() != self.cod.total() {
            return Err(Error::Shape(format!(
                "cannot reshape {:?}->{:?} to {:?}->{:?}",
                self.dom.dims, self.cod.dims, dom.dims, cod.dims
            )));
        }
        self.dom = dom;
        self.cod = cod;
        Ok(self)
    }

    pub fn with_domain(mut self, domain: ScalarDomain) -> Mor {
        assert_eq!(domain.kind, self.domain.kind);
        self.domain = domain;
        self
    }

    /// Matrix as a complex nalgebra matrix; +∞ is not representable and
    /// maps to `f64::INFINITY` in the real part.
    pub fn to_complex_matrix(&self) -> DMatrix<Complex64> {
        let (r, c) = (self.rows(), self.cols());
        DMatrix::from_fn(r, c, |i, j| match self.get(i, j) {
            Scalar::Bool(b) => Complex64::new(f64::from(u8::from(b)), 0.0),
            Scalar::Complex(z) => z,
            Scalar::Real(x) => Complex64::new(x, 0.0),
        })
    }

    /// Transpose with the involution applied entrywise.
    pub fn dagger(&self) -> Mor {
        let (r, c) = (self.rows(), self.cols());
        let entries = match &self.entries {
            Entries::Bool(v) => Entries::Bool(transpose(v, r, c, |b| b)),
            Entries::Complex(v) => Entries::Complex(transpose(v, r, c, |z| z.conj())),
            Entries::Real(v) => Entries::Real(transpose(v, r, c, |x| x)),
        };
        Mor {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            domain: self.domain,
            entries,
        }
    }

    /// Zero entries stay zero, everything else becomes 1.
    pub fn boolean_reduct(&self) -> Mor {
        let bits = (0..self.rows() * self.cols())
            .map(|i| !self.get(i / self.cols(), i % self.cols()).is_zero())
            .collect();
        Mor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            domain: ScalarDomain::boolean().with_tolerance(self.domain.tolerance),
            entries: Entries::Bool(bits),
        }
    }

    /// First entry, in row-major order, where the two matrices disagree.
    pub fn first_difference(&self, other: &Mor) -> Result<Option<(usize, usize, Scalar, Scalar)>> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::Shape(format!(
                "comparing {}x{} with {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        same_kind(self, other)?;
        let tol = self.domain.tolerance;
        let cols = self.cols();
        let hit = match (&self.entries, &other.entries) {
            (Entries::Bool(a), Entries::Bool(b)) => a.iter().zip(b).position(|(x, y)| x != y),
            (Entries::Complex(a), Entries::Complex(b)) => a.iter().zip(b).position(|(x, y)| !complex_eq(tol, *x, *y)),
            (Entries::Real(a), Entries::Real(b)) => a.iter().zip(b).position(|(x, y)| !real_eq(tol, *x, *y)),
            _ => unreachable!(),
        };
        Ok(hit.map(|i| {
            (
                i / cols,
                i % cols,
                self.get(i / cols, i % cols),
                other.get(i / cols, i % cols),
            )
        }))
    }

    /// Entrywise `scalar_eq`; shapes must agree.
    pub fn approx_eq(&self, other: &Mor) -> bool {
        matches!(self.first_difference(other), Ok(None))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mor) -> f64 {
        let a = self.to_complex_matrix();
        let b = other.to_complex_matrix();
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    /// `(g ∘ f)` written as `g.after(f)`.
    pub fn after(&self, f: &Mor) -> Result<Mor> {
        compose(self, f)
    }
}

fn transpose<T: Copy>(v: &[T], rows: usize, cols: usize, f: impl Fn(T) -> T) -> Vec<T> {
    let mut out = Vec::with_capacity(v.len());
    for c in 0..cols {
        for r in 0..rows {
            out.push(f(v[r * cols + c]));
        }
    }
    out
}

fn same_kind(a: &Mor, b: &Mor) -> Result<()> {
    if a.domain.kind != b.domain.kind {
        return Err(Error::DomainMismatch {
            left: a.domain.kind,
            right: b.domain.kind,
        });
    }
    Ok(())
}

/// Matrix product over the semiring: `(g ∘ f)[i][j] = Σ_k g[i][k] · f[k][j]`,
/// with Σ a join in the lattice domains.
pub fn compose(g: &Mor, f: &Mor) -> Result<Mor> {
    same_kind(g, f)?;
    if !f.cod.same_shape(&g.dom) {
        return Err(Error::Shape(format!(
            "cannot compose {:?}->{:?} after {:?}->{:?}",
            g.dom.dims, g.cod.dims, f.dom.dims, f.cod.dims
        )));
    }
    let (rows, inner, cols) = (g.rows(), g.cols(), f.cols());
    let entries = match (&g.entries, &f.entries) {
        (Entries::Bool(a), Entries::Bool(b)) => {
            let mut out = vec![false; rows * cols];
            for i in 0..rows {
                let row = &mut out[i * cols..(i + 1) * cols];
                for k in 0..inner {
                    if a[i * inner + k] {
                        for (o, x) in row.iter_mut().zip(&b[k * cols..(k + 1) * cols]) {
                            *o |= *x;
                        }
                    }
                }
            }
            Entries::Bool(out)
        }
        (Entries::Complex(a), Entries::Complex(b)) => {
            let zero = Complex64::new(0.0, 0.0);
            let mut out = vec![zero; rows * cols];
            for i in 0..rows {
                for k in 0..inner {
                    let s = a[i * inner + k];
                    if s == zero {
                        continue;
                    }
                    for j in 0..cols {
                        out[i * cols + j] += s * b[k * cols + j];
                    }
                }
            }
            Entries::Complex(out)
        }
        (Entries::Real(a), Entries::Real(b)) => {
            let kind = g.domain.kind;
            let mut out = vec![0.0; rows * cols];
            for i in 0..rows {
                for k in 0..inner {
                    let s = a[i * inner + k];
                    if s == 0.0 {
                        continue;
                    }
                    for j in 0..cols {
                        let o = &mut out[i * cols + j];
                        *o = real_add(kind, *o, real_mul(s, b[k * cols + j]));
                    }
                }
            }
            Entries::Real(out)
        }
        _ => unreachable!("kinds were compared above"),
    };
    Ok(Mor {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        domain: g.domain,
        entries,
    })
}

/// Kronecker product; dims lists concatenate.
pub fn tensor(f: &Mor, g: &Mor) -> Result<Mor> {
    same_kind(f, g)?;
    let (fr, fc, gr, gc) = (f.rows(), f.cols(), g.rows(), g.cols());
    #[allow(clippy::too_many_arguments)]
    fn kron<T: Copy>(
        a: &[T],
        b: &[T],
        fr: usize,
        fc: usize,
        gr: usize,
        gc: usize,
        mul: impl Fn(T, T) -> T,
        zero: T,
    ) -> Vec<T> {
        let cols = fc * gc;
        let mut out = vec![zero; fr * gr * cols];
        for i1 in 0..fr {
            for j1 in 0..fc {
                let s = a[i1 * fc + j1];
                for i2 in 0..gr {
                    let row = (i1 * gr + i2) * cols + j1 * gc;
                    for j2 in 0..gc {
                        out[row + j2] = mul(s, b[i2 * gc + j2]);
                    }
                }
            }
        }
        out
    }
    let entries = match (&f.entries, &g.entries) {
        (Entries::Bool(a), Entries::Bool(b)) => Entries::Bool(kron(a, b, fr, fc, gr, gc, |x, y| x & y, false)),
        (Entries::Complex(a), Entries::Complex(b)) => {
            Entries::Complex(kron(a, b, fr, fc, gr, gc, |x, y| x * y, Complex64::new(0.0, 0.0)))
        }
        (Entries::Real(a), Entries::Real(b)) => Entries::Real(kron(a, b, fr, fc, gr, gc, real_mul, 0.0)),
        _ => unreachable!(),
    };
    Ok(Mor {
        dom: f.dom.tensor(&g.dom),
        cod: f.cod.tensor(&g.cod),
        domain: f.domain,
        entries,
    })
}

/// The swap `σ : m ⊗ n → n ⊗ m`, sending flat index `i·n + j` to `j·m + i`.
pub fn symmetry(m: usize, n: usize, domain: ScalarDomain) -> Mor {
    let dom = Obj {
        dims: vec![m, n],
        labels: None,
    };
    let cod = Obj {
        dims: vec![n, m],
        labels: None,
    };
    let mut out = Mor::zero(dom, cod, domain);
    for i in 0..m {
        for j in 0..n {
            out.set_one(j * m + i, i * n + j);
        }
    }
    out
}

/// `η = Σ_i e_i ⊗ e_i : I → n ⊗ n`, the cup of the canonical compact structure.
pub fn compact_unit(n: usize, domain: ScalarDomain) -> Mor {
    let cod = Obj {
        dims: vec![n, n],
        labels: None,
    };
    let mut out = Mor::zero(Obj::unit(), cod, domain);
    for i in 0..n {
        out.set_one(i * n + i, 0);
    }
    out
}
