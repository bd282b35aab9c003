//! Closed-form Ricci entries of the Z₂²-symmetric metrics on so(5), in the
//! orthonormal frame `(Ã1..Ã4, B̃1, B̃2, C̃1, C̃2)`.

use serde::Serialize;

use crate::metric::{MetricError, MetricParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RicciClosedForm {
    pub rho11: f64,
    pub rho14: f64,
    pub rho33: f64,
    pub rho55: f64,
    pub rho77: f64,
}

impl RicciClosedForm {
    /// `[ρ11, ρ14, ρ33, ρ55, ρ77]`.
    pub fn families(&self) -> [f64; 5] {
        [self.rho11, self.rho14, self.rho33, self.rho55, self.rho77]
    }

    /// Full 8×8 matrix; `ρ22 = ρ11`, `ρ23 = −ρ14`, `ρ44 = ρ33` and so on.
    pub fn matrix(&self) -> [[f64; 8]; 8] {
        let mut m = [[0.0; 8]; 8];
        m[0][0] = self.rho11;
        m[1][1] = self.rho11;
        m[2][2] = self.rho33;
        m[3][3] = self.rho33;
        m[4][4] = self.rho55;
        m[5][5] = self.rho55;
        m[6][6] = self.rho77;
        m[7][7] = self.rho77;
        m[0][3] = self.rho14;
        m[3][0] = self.rho14;
        m[1][2] = -self.rho14;
        m[2][1] = -self.rho14;
        m
    }
}

pub fn ricci(p: &MetricParams) -> Result<RicciClosedForm, MetricError> {
    let (t, u, v, w) = (p.t(), p.u(), p.v(), p.w());
    let k = p.k()?;
    let (t2, u2, v2, w2) = (t * t, u * u, v * v, w * w);
    let t4 = t2 * t2;
    let q = v2 * v2 - 6.0 * v2 * w2 + w2 * w2;
    let d = 4.0 * t4 - u2;
    let vw = v2 * w2;
    Ok(RicciClosedForm {
        rho11: (4.0 * t4 + u2 - 4.0 * q) / (8.0 * t2 * vw),
        rho14: u * (k * k * t2 + q) / (4.0 * k * t2 * t * vw),
        rho33: (d * d - 4.0 * q * (u2 + 4.0 * t4)) / (8.0 * t2 * d * vw),
        rho55: (-4.0 * t4 * t2 + 12.0 * t4 * w2 + t2 * (u2 + 4.0 * v2 * v2 - 4.0 * w2 * w2)
            - 3.0 * u2 * w2)
            / (d * vw),
        rho77: (-4.0 * t4 * t2 + 12.0 * t4 * v2 + t2 * (u2 - 4.0 * v2 * v2 + 4.0 * w2 * w2)
            - 3.0 * u2 * v2)
            / (d * vw),
    })
}
