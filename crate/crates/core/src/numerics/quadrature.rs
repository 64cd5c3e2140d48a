use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes per composite panel.
const PANEL_ORDER: usize = 16;

/// Integration window `[center - half_width, center + half_width]` sampled
/// with `points` nodes (rounded up to a whole number of 16-point panels).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub center: f64,
    pub half_width: f64,
    pub points: usize,
}

impl QuadratureSpec {
    pub fn new(center: f64, half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() || !center.is_finite() {
            return Err(Error::Domain(format!(
                "quadrature window needs a finite positive half width, got {half_width}"
            )));
        }
        if points < PANEL_ORDER {
            return Err(Error::Domain(format!(
                "quadrature needs at least {PANEL_ORDER} points, got {points}"
            )));
        }
        Ok(Self {
            center,
            half_width,
            points,
        })
    }

    /// Window whose panels are no wider than `resolution`.
    pub fn resolved(center: f64, half_width: f64, resolution: f64) -> Result<Self> {
        let panels = (2.0 * half_width / resolution).ceil().max(1.0);
        if !panels.is_finite() || panels > 1e6 {
            return Err(Error::Domain(format!(
                "quadrature resolution {resolution} too fine for half width {half_width}"
            )));
        }
        Self::new(center, half_width, panels as usize * PANEL_ORDER)
    }

    pub fn panels(&self) -> usize {
        self.points.div_ceil(PANEL_ORDER)
    }

    /// Visits every node with its weight.
    pub fn for_each_node(&self, mut visit: impl FnMut(f64, f64)) {
        let rule = GaussLegendre::panel_rule();
        let panels = self.panels();
        let width = 2.0 * self.half_width / panels as f64;
        let lo = self.center - self.half_width;
        for p in 0..panels {
            let mid = lo + (p as f64 + 0.5) * width;
            let half = 0.5 * width;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                visit(mid + half * x, half * w);
            }
        }
    }
}

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n` from the Chebyshev-like initial guess.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    fn panel_rule() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(PANEL_ORDER))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// Composite Gauss-Legendre estimate of a real integral.
pub fn integrate(mut f: impl FnMut(f64) -> f64, spec: &QuadratureSpec) -> Result<f64> {
    let mut acc = 0.0;
    let mut finite = true;
    spec.for_each_node(|x, w| {
        let v = f(x);
        finite &= v.is_finite();
        acc += w * v;
    });
    if finite {
        Ok(acc)
    } else {
        Err(Error::NonFinite("quadrature integrand"))
    }
}

/// Complex-valued counterpart of [`integrate`].
pub fn integrate_complex(
    mut f: impl FnMut(f64) -> Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut finite = true;
    spec.for_each_node(|x, w| {
        let v = f(x);
        finite &= v.re.is_finite() && v.im.is_finite();
        acc += v * w;
    });
    if finite {
        Ok(acc)
    } else {
        Err(Error::NonFinite("quadrature integrand"))
    }
}
