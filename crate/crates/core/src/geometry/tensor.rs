use serde::Serialize;

use crate::symexpr::{
    evaluate, zero_test_points, Bindings, Domain, EvalError, Expr, Point, TriState, Var, ZeroTestConfig,
};

/// Component array of a tensor field in an `n`-dimensional coordinate chart.
///
/// Components are stored row-major over the index tuple, upper indices first.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    dim: usize,
    upper: usize,
    lower: usize,
    comps: Vec<Expr>,
}

impl TensorField {
    pub fn zeros(dim: usize, upper: usize, lower: usize) -> TensorField {
        let len = dim.pow((upper + lower) as u32);
        TensorField { dim, upper, lower, comps: vec![Expr::zero(); len] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], e: Expr) {
        let o = self.offset(idx);
        self.comps[o] = e;
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    /// All index tuples paired with their components.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Expr)> + '_ {
        let (dim, rank) = (self.dim, self.rank());
        self.comps.iter().enumerate().map(move |(mut o, e)| {
            let mut idx = vec![0; rank];
            for slot in idx.iter_mut().rev() {
                *slot = o % dim;
                o /= dim;
            }
            (idx, e)
        })
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> TensorField {
        TensorField { comps: self.comps.iter().map(f).collect(), ..self.clone() }
    }

    /// Componentwise combination of two tensors of equal shape.
    pub fn zip_with(&self, o: &TensorField, f: impl Fn(&Expr, &Expr) -> Expr) -> TensorField {
        assert_eq!((self.dim, self.upper, self.lower), (o.dim, o.upper, o.lower));
        TensorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect(), ..self.clone() }
    }

    pub fn eval(&self, p: &Point, params: &Bindings) -> Result<Vec<f64>, EvalError> {
        self.comps.iter().map(|e| evaluate(e, p, params)).collect()
    }

    /// Number of components that are not literally zero.
    pub fn nonzero_count(&self) -> usize {
        self.comps.iter().filter(|e| !e.is_zero()).count()
    }

    /// Zero-tests every component at one shared seeded sample of `dom`.
    pub fn zero_test(&self, dom: &Domain, params: &Bindings, cfg: &ZeroTestConfig) -> TensorVerdict {
        let points = dom.sample(cfg.samples, cfg.seed);
        self.zero_test_at(&points, params, cfg)
    }

    pub fn zero_test_at(&self, points: &[Point], params: &Bindings, cfg: &ZeroTestConfig) -> TensorVerdict {
        let mut out =
            TensorVerdict { state: TriState::Zero, max_abs: 0.0, at: None, component: None, failed_samples: 0 };
        let mut undetermined = false;
        for (idx, e) in self.iter() {
            let v = zero_test_points(e, points, params, cfg);
            match v.state {
                TriState::NonZero => out.state = TriState::NonZero,
                TriState::Undetermined => undetermined = true,
                TriState::Zero => {}
            }
            out.failed_samples = out.failed_samples.max(v.failed_samples);
            if v.at.is_some() && (out.at.is_none() || v.max_abs > out.max_abs) {
                out.max_abs = v.max_abs;
                out.at = v.at;
                out.component = Some(idx);
            }
        }
        if undetermined && out.state == TriState::Zero {
            out.state = TriState::Undetermined;
        }
        out
    }
}

/// Result of zero-testing a whole tensor: the worst component and where it
/// peaks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorVerdict {
    pub state: TriState,
    pub max_abs: f64,
    pub at: Option<Point>,
    pub component: Option<Vec<usize>>,
    pub failed_samples: usize,
}

impl TensorVerdict {
    pub fn is_zero(&self) -> bool {
        self.state == TriState::Zero
    }
}

/// Numeric snapshot of a component with its index, for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentValue {
    pub index: Vec<usize>,
    pub value: f64,
}

/// Coordinate chart: which spacetime variables play the role of `x^0..x^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart(pub Vec<Var>);

impl Chart {
    pub fn spacetime() -> Chart {
        Chart(Var::ALL.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn d(&self, e: &Expr, i: usize) -> Expr {
        e.d(self.0[i])
    }
}
