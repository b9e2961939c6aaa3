//! Closed-form singular value decomposition of a real 2×2 matrix.
//!
//! Works on plain arrays and shares no code with the form/dilatation
//! pipeline, so it can referee it: the right singular vectors come from a
//! single Jacobi rotation of the Gram matrix `MᵀM`.

/// `M = σ_max u_max v_maxᵀ + σ_min u_min v_minᵀ`, for a row-major `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd2 {
    pub sigma_max: f64,
    pub sigma_min: f64,
    pub u_max: [f64; 2],
    pub u_min: [f64; 2],
    pub v_max: [f64; 2],
    pub v_min: [f64; 2],
}

impl Svd2 {
    /// Ratio of the major to the minor axis of the image of the unit circle.
    pub fn axis_ratio(&self) -> f64 {
        self.sigma_max / self.sigma_min
    }

    /// Angle between the real axis and the direction of maximal stretch.
    pub fn max_stretch_angle(&self) -> f64 {
        self.v_max[1].atan2(self.v_max[0])
    }

    pub fn reconstruct(&self) -> [f64; 4] {
        let mut m = [0.0; 4];
        for (s, u, v) in [
            (self.sigma_max, self.u_max, self.v_max),
            (self.sigma_min, self.u_min, self.v_min),
        ] {
            m[0] += s * u[0] * v[0];
            m[1] += s * u[0] * v[1];
            m[2] += s * u[1] * v[0];
            m[3] += s * u[1] * v[1];
        }
        m
    }
}

/// SVD of an invertible row-major matrix `[m11, m12, m21, m22]`.
pub fn svd2(m: [f64; 4]) -> Svd2 {
    let [m11, m12, m21, m22] = m;
    let gpp = m11 * m11 + m21 * m21;
    let gpq = m11 * m12 + m21 * m22;
    let gqq = m12 * m12 + m22 * m22;

    // symmetric Schur rotation zeroing the off-diagonal of the Gram matrix
    let (c, s, t) = if gpq == 0.0 {
        (1.0, 0.0, 0.0)
    } else {
        let tau = (gqq - gpp) / (2.0 * gpq);
        let t = if tau >= 0.0 {
            1.0 / (tau + (1.0 + tau * tau).sqrt())
        } else {
            -1.0 / (-tau + (1.0 + tau * tau).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        (c, t * c, t)
    };
    let lambda1 = gpp - t * gpq;
    let lambda2 = gqq + t * gpq;
    let (v1, v2) = ([c, -s], [s, c]);
    let (lambda_max, v_max, v_min) = if lambda1 >= lambda2 {
        (lambda1, v1, v2)
    } else {
        (lambda2, v2, v1)
    };

    let det = m11 * m22 - m12 * m21;
    let sigma_max = lambda_max.sqrt();
    let sigma_min = det.abs() / sigma_max;
    let image = |v: [f64; 2], sigma: f64| {
        [
            (m11 * v[0] + m12 * v[1]) / sigma,
            (m21 * v[0] + m22 * v[1]) / sigma,
        ]
    };
    Svd2 {
        sigma_max,
        sigma_min,
        u_max: image(v_max, sigma_max),
        u_min: image(v_min, sigma_min),
        v_max,
        v_min,
    }
}
