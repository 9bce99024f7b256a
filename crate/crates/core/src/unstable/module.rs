use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, GradedDimension, Prime};
use crate::powers::{adem_reduce, OpExpr, Word};

/// What is known about a module above its stored window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Above {
    /// The module vanishes above the window.
    Zero,
    /// The window is a truncation of a larger module.
    Unknown,
}

/// An unstable module given degreewise: a basis in each degree of a window
/// `0..len` and matrices for the action of P^a.
///
/// The matrix of P^a from degree d has shape `dim(d + a(p-1)) x dim(d)`;
/// absent matrices are zero. Only `1 <= a <= d` may be nonzero.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    p: Prime,
    dims: Vec<usize>,
    above: Above,
    action: BTreeMap<(u32, usize), FpMatrix>,
    labels: Vec<Vec<String>>,
    frobenius: Option<Vec<FpMatrix>>,
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p || self.above != other.above || self.trimmed_dims() != other.trimmed_dims() {
            return false;
        }
        let keys: std::collections::BTreeSet<_> = self.action.keys().chain(other.action.keys()).collect();
        keys.into_iter().all(|&(a, d)| self.matrix_or_zero(a, d) == other.matrix_or_zero(a, d))
    }
}

impl FiniteModule {
    /// Validated constructor: shapes, instability and Adem consistency.
    pub fn new(
        p: Prime,
        dims: Vec<usize>,
        above: Above,
        action: impl IntoIterator<Item = ((u32, usize), FpMatrix)>,
    ) -> Result<Self> {
        let m = Self::from_parts(p, dims, above, action.into_iter().collect())?;
        m.validate_adem()?;
        Ok(m)
    }

    /// Checks shapes and instability only.
    pub(crate) fn from_parts(
        p: Prime,
        dims: Vec<usize>,
        above: Above,
        action: BTreeMap<(u32, usize), FpMatrix>,
    ) -> Result<Self> {
        let q1 = p.value() as usize - 1;
        let mut kept = BTreeMap::new();
        for ((a, d), m) in action {
            let path = format!("action[P^{a} from degree {d}]");
            if a == 0 {
                return Err(Error::validation(path, "P^0 is the identity and cannot be specified"));
            }
            let t = d + a as usize * q1;
            let src = dims.get(d).copied();
            let tgt = if t < dims.len() {
                Some(dims[t])
            } else if above == Above::Zero {
                Some(0)
            } else {
                None
            };
            let Some(src) = src else {
                return Err(Error::validation(path, "source degree outside the window"));
            };
            let Some(tgt) = tgt else {
                return Err(Error::validation(path, "target degree outside the window"));
            };
            if m.rows() != tgt || m.cols() != src {
                return Err(Error::validation(
                    path,
                    format!("expected a {tgt}x{src} matrix, got {}x{}", m.rows(), m.cols()),
                ));
            }
            if m.is_zero() {
                continue;
            }
            if a as usize > d {
                return Err(Error::validation(
                    path,
                    format!("instability violated: P^{a} is nonzero on degree {d}"),
                ));
            }
            kept.insert((a, d), m);
        }
        Ok(FiniteModule {
            p,
            dims,
            above,
            action: kept,
            labels: Vec::new(),
            frobenius: None,
        })
    }

    pub fn zero(p: Prime) -> Self {
        FiniteModule {
            p,
            dims: Vec::new(),
            above: Above::Zero,
            action: BTreeMap::new(),
            labels: Vec::new(),
            frobenius: None,
        }
    }

    /// F_p concentrated in degree `d`.
    pub fn point(p: Prime, d: usize) -> Self {
        let mut dims = vec![0; d + 1];
        dims[d] = 1;
        FiniteModule {
            p,
            dims,
            above: Above::Zero,
            action: BTreeMap::new(),
            labels: Vec::new(),
            frobenius: None,
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn above(&self) -> Above {
        self.above
    }

    /// Number of degrees stored (degrees `0..window()`).
    pub fn window(&self) -> usize {
        self.dims.len()
    }

    /// Whether degree `d` is known.
    pub fn knows(&self, d: usize) -> bool {
        d < self.dims.len() || self.above == Above::Zero
    }

    /// Dimension in degree `d`, or `None` when outside the known range.
    pub fn dim(&self, d: usize) -> Option<usize> {
        if d < self.dims.len() {
            Some(self.dims[d])
        } else if self.above == Above::Zero {
            Some(0)
        } else {
            None
        }
    }

    pub fn dims(&self) -> GradedDimension {
        GradedDimension::from_slice(&self.dims)
    }

    pub fn dims_slice(&self) -> &[usize] {
        &self.dims
    }

    fn trimmed_dims(&self) -> &[usize] {
        let mut n = self.dims.len();
        if self.above == Above::Zero {
            while n > 0 && self.dims[n - 1] == 0 {
                n -= 1;
            }
        }
        &self.dims[..n]
    }

    /// Highest degree with a nonzero piece inside the window.
    pub fn top(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.above == Above::Zero && self.top().is_none()
    }

    pub fn action_entries(&self) -> impl Iterator<Item = (&(u32, usize), &FpMatrix)> {
        self.action.iter()
    }

    pub fn labels(&self, d: usize) -> Option<&[String]> {
        self.labels.get(d).map(|v| v.as_slice()).filter(|v| !v.is_empty())
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = labels;
        self
    }

    /// Records a module map onto a module where P^{deg x} x != 0 for every
    /// nonzero x of positive degree (for instance a polynomial ring, where
    /// this operation is the Frobenius). Given degreewise by `proj[d]`.
    pub fn with_frobenius_detector(mut self, proj: Vec<FpMatrix>) -> Self {
        self.frobenius = Some(proj);
        self
    }

    pub(crate) fn frobenius_detector(&self, d: usize) -> Option<&FpMatrix> {
        self.frobenius.as_ref().and_then(|v| v.get(d))
    }

    fn target(&self, a: u32, d: usize) -> usize {
        d + a as usize * (self.p.value() as usize - 1)
    }

    fn matrix_or_zero(&self, a: u32, d: usize) -> FpMatrix {
        match self.action.get(&(a, d)) {
            Some(m) => m.clone(),
            None => FpMatrix::zeros(
                self.p,
                self.dim(self.target(a, d)).unwrap_or(0),
                self.dim(d).unwrap_or(0),
            ),
        }
    }

    /// Matrix of P^a on degree `d`; `None` if the source or target is unknown.
    pub fn act(&self, a: u32, d: usize) -> Option<FpMatrix> {
        if a == 0 {
            return self.dim(d).map(|n| FpMatrix::identity(self.p, n));
        }
        let t = self.target(a, d);
        let (src, tgt) = (self.dim(d)?, self.dim(t)?);
        Some(match self.action.get(&(a, d)) {
            Some(m) => m.clone(),
            None => FpMatrix::zeros(self.p, tgt, src),
        })
    }

    pub fn act_vec(&self, a: u32, d: usize, v: &[u32]) -> Option<Vec<u32>> {
        if a == 0 {
            return Some(v.to_vec());
        }
        let t = self.target(a, d);
        let tgt = self.dim(t)?;
        self.dim(d)?;
        Some(match self.action.get(&(a, d)) {
            Some(m) => m.mul_vec(v).expect("vector length matches degree"),
            None => vec![0; tgt],
        })
    }

    /// Matrix of a word (rightmost factor applied first) on degree `d`.
    pub fn word_matrix(&self, w: &Word, d: usize) -> Option<FpMatrix> {
        let mut m = FpMatrix::identity(self.p, self.dim(d)?);
        let mut deg = d;
        for &a in w.exponents().iter().rev() {
            let step = self.act(a, deg)?;
            m = step.mul(&m).expect("shapes compose");
            deg = self.target(a, deg);
        }
        Some(m)
    }

    /// Matrix of an expression on degree `d`. The zero expression is read as
    /// an endomorphism of degree `d`.
    pub fn expr_matrix(&self, e: &OpExpr, d: usize) -> Option<FpMatrix> {
        self.expr_matrix_of_degree(e, d, e.degree().unwrap_or(0))
    }

    fn expr_matrix_of_degree(&self, e: &OpExpr, d: usize, op_degree: usize) -> Option<FpMatrix> {
        let p = self.p;
        let t = d + op_degree;
        let mut acc = FpMatrix::zeros(p, self.dim(t)?, self.dim(d)?);
        for (w, c) in e.terms() {
            acc = acc.add(&self.word_matrix(w, d)?.scale(c)).expect("same shape");
        }
        Some(acc)
    }

    /// Checks that every inadmissible pair P^a P^b acts like its Adem expansion
    /// on every degree where both sides are known.
    pub fn validate_adem(&self) -> Result<()> {
        let p = self.p;
        let q = p.value();
        let len = self.dims.len();
        for d in 0..len {
            if self.dims[d] == 0 {
                continue;
            }
            for b in 1u32.. {
                let mid = self.target(b, d);
                if mid >= len {
                    break;
                }
                for a in 1..q * b {
                    if self.target(a, mid) >= len {
                        break;
                    }
                    let w = Word::new([a, b]);
                    let lhs = self.word_matrix(&w, d).expect("known degrees");
                    let rhs = self
                        .expr_matrix_of_degree(&adem_reduce(&OpExpr::from_word(w.clone(), p)), d, w.degree(p))
                        .expect("known degrees");
                    if lhs != rhs {
                        return Err(Error::validation(
                            format!("action[{w} on degree {d}]"),
                            "composite disagrees with its Adem expansion",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Restricts the window to degrees `< len`, forgetting what lies above.
    pub fn window_to(&self, len: usize) -> FiniteModule {
        if len >= self.dims.len() {
            let mut m = self.clone();
            if self.above == Above::Zero && len > self.dims.len() {
                m.dims.resize(len, 0);
            }
            return m;
        }
        let action = self
            .action
            .iter()
            .filter(|(&(a, d), _)| self.target(a, d) < len)
            .map(|(k, m)| (*k, m.clone()))
            .collect();
        FiniteModule {
            p: self.p,
            dims: self.dims[..len].to_vec(),
            above: Above::Unknown,
            action,
            labels: self.labels.iter().take(len).cloned().collect(),
            frobenius: self.frobenius.as_ref().map(|f| f.iter().take(len).cloned().collect()),
        }
    }

    /// The quotient in degrees `< n`: operations landing in degree `>= n` are set to zero.
    pub fn truncate_below(&self, n: usize) -> Result<FiniteModule> {
        if n > self.dims.len() && self.above == Above::Unknown {
            return Err(Error::CutoffExceeded {
                degree: n - 1,
                cutoff: self.dims.len().saturating_sub(1),
            });
        }
        let len = n;
        let mut dims = self.dims.clone();
        dims.resize(len, 0);
        let action = self
            .action
            .iter()
            .filter(|(&(a, d), _)| self.target(a, d) < n)
            .map(|(k, m)| (*k, m.clone()))
            .collect();
        let mut labels = self.labels.clone();
        labels.truncate(len);
        Ok(FiniteModule {
            p: self.p,
            dims,
            above: Above::Zero,
            action,
            labels,
            frobenius: None,
        })
    }

    /// Suspension by `s`: degrees shift up, P^a(σx) = σ(P^a x).
    pub fn suspend(&self, s: usize) -> FiniteModule {
        let mut dims = vec![0; s];
        dims.extend_from_slice(&self.dims);
        let action = self.action.iter().map(|(&(a, d), m)| ((a, d + s), m.clone())).collect();
        let mut labels = vec![Vec::new(); s];
        labels.extend(self.labels.iter().cloned());
        if self.labels.is_empty() {
            labels.clear();
        }
        FiniteModule {
            p: self.p,
            dims,
            above: self.above,
            action,
            labels,
            frobenius: None,
        }
    }

    fn joint_window(&self, other: &FiniteModule, bounded_len: usize) -> (usize, Above) {
        match (self.above, other.above) {
            (Above::Zero, Above::Zero) => (bounded_len, Above::Zero),
            (Above::Unknown, Above::Zero) => (self.dims.len(), Above::Unknown),
            (Above::Zero, Above::Unknown) => (other.dims.len(), Above::Unknown),
            (Above::Unknown, Above::Unknown) => (self.dims.len().min(other.dims.len()), Above::Unknown),
        }
    }

    /// Direct sum; basis of `self` first in each degree.
    pub fn direct_sum(&self, other: &FiniteModule) -> Result<FiniteModule> {
        if self.p != other.p {
            return Err(Error::validation("prime", "modules over different primes"));
        }
        let (len, above) = self.joint_window(other, self.dims.len().max(other.dims.len()));
        let dims: Vec<usize> = (0..len)
            .map(|d| self.dim(d).unwrap_or(0) + other.dim(d).unwrap_or(0))
            .collect();
        let q1 = self.p.value() as usize - 1;
        let mut action = BTreeMap::new();
        for d in 0..len {
            for a in 1..=d as u32 {
                let t = d + a as usize * q1;
                if t >= len && above == Above::Unknown {
                    break;
                }
                let tgt = if t < len { dims[t] } else { 0 };
                if tgt == 0 || dims[d] == 0 {
                    continue;
                }
                let mut m = FpMatrix::zeros(self.p, tgt, dims[d]);
                if let Some(x) = self.action.get(&(a, d)) {
                    m.set_block(0, 0, x);
                }
                if let Some(y) = other.action.get(&(a, d)) {
                    m.set_block(self.dim(t).unwrap_or(0), self.dim(d).unwrap_or(0), y);
                }
                if !m.is_zero() {
                    action.insert((a, d), m);
                }
            }
        }
        let labels = if self.labels.is_empty() && other.labels.is_empty() {
            Vec::new()
        } else {
            (0..len)
                .map(|d| {
                    let mut l = label_or_default(self, d, "a");
                    l.extend(label_or_default(other, d, "b"));
                    l
                })
                .collect()
        };
        let frobenius = self.frobenius.as_ref().map(|f| (0..len)
                    .map(|d| {
                        let own = f.get(d).cloned().unwrap_or_else(|| FpMatrix::zeros(self.p, 0, 0));
                        let mut m = FpMatrix::zeros(self.p, own.rows(), dims[d]);
                        m.set_block(0, 0, &own);
                        m
                    })
                    .collect());
        Ok(FiniteModule {
            p: self.p,
            dims,
            above,
            action,
            labels,
            frobenius,
        })
    }

    /// Tensor product with the Cartan action. The basis of degree k lists
    /// pairs (i, x, y) with deg x = i ascending, then x, then y.
    pub fn tensor(&self, other: &FiniteModule) -> Result<FiniteModule> {
        if self.p != other.p {
            return Err(Error::validation("prime", "modules over different primes"));
        }
        let p = self.p;
        let q1 = p.value() as usize - 1;
        let bounded = self.dims.len() + other.dims.len();
        let (len, above) = self.joint_window(other, bounded.saturating_sub(1));
        let block_offsets: Vec<Vec<usize>> = (0..len)
            .map(|k| {
                let mut off = Vec::with_capacity(k + 2);
                let mut acc = 0;
                for i in 0..=k {
                    off.push(acc);
                    acc += self.dim(i).unwrap_or(0) * other.dim(k - i).unwrap_or(0);
                }
                off.push(acc);
                off
            })
            .collect();
        let dims: Vec<usize> = block_offsets.iter().map(|o| *o.last().unwrap()).collect();
        let mut action = BTreeMap::new();
        for k in 0..len {
            if dims[k] == 0 {
                continue;
            }
            for a in 1..=k as u32 {
                let t = k + a as usize * q1;
                if t >= len {
                    break;
                }
                if dims[t] == 0 {
                    continue;
                }
                let mut m = FpMatrix::zeros(p, dims[t], dims[k]);
                for i in 0..=k {
                    let j = k - i;
                    let (di, dj) = (self.dim(i).unwrap_or(0), other.dim(j).unwrap_or(0));
                    if di == 0 || dj == 0 {
                        continue;
                    }
                    for c in 0..=a {
                        if c as usize > i || (a - c) as usize > j {
                            continue;
                        }
                        let i2 = i + c as usize * q1;
                        let (Some(x), Some(y)) = (self.act(c, i), other.act(a - c, j)) else {
                            continue;
                        };
                        if x.is_zero() || y.is_zero() {
                            continue;
                        }
                        let dj2 = y.rows();
                        let row0 = block_offsets[t][i2];
                        let col0 = block_offsets[k][i];
                        for xr in 0..x.rows() {
                            for xc in 0..x.cols() {
                                let xv = x.get(xr, xc);
                                if xv == 0 {
                                    continue;
                                }
                                for yr in 0..y.rows() {
                                    for yc in 0..y.cols() {
                                        let yv = y.get(yr, yc);
                                        if yv != 0 {
                                            m.add_to(row0 + xr * dj2 + yr, col0 + xc * dj + yc, p.mul(xv, yv));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                if !m.is_zero() {
                    action.insert((a, k), m);
                }
            }
        }
        Ok(FiniteModule {
            p,
            dims,
            above,
            action,
            labels: Vec::new(),
            frobenius: None,
        })
    }
}

fn label_or_default(m: &FiniteModule, d: usize, prefix: &str) -> Vec<String> {
    let n = m.dim(d).unwrap_or(0);
    match m.labels(d) {
        Some(l) => l.to_vec(),
        None => (0..n).map(|i| format!("{prefix}{d}_{i}")).collect(),
    }
}

/// Graded tensor product of finite modules with the Cartan formula.
pub fn tensor_finite(m: &FiniteModule, n: &FiniteModule) -> Result<FiniteModule> {
    m.tensor(n)
}
