//! Single-qubit unitaries as unit quaternions, `U = w·I − i(x·X + y·Y + z·Z)`.

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2 {
    pub w: f64,
    pub v: [f64; 3],
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn normalize(a: [f64; 3]) -> Option<[f64; 3]> {
    let n = dot(a, a).sqrt();
    (n > 1e-15 && n.is_finite()).then(|| [a[0] / n, a[1] / n, a[2] / n])
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 { w: 1.0, v: [0.0; 3] };
    pub const X: Su2 = Su2 { w: 0.0, v: [1.0, 0.0, 0.0] };
    pub const Y: Su2 = Su2 { w: 0.0, v: [0.0, 1.0, 0.0] };
    pub const Z: Su2 = Su2 { w: 0.0, v: [0.0, 0.0, 1.0] };

    /// `exp(−i·angle/2 · axis·σ)`; `axis` need not be normalised.
    pub fn rotation(axis: [f64; 3], angle: f64) -> Su2 {
        let a = normalize(axis).unwrap_or([1.0, 0.0, 0.0]);
        let (s, c) = (angle / 2.0).sin_cos();
        Su2 { w: c, v: [s * a[0], s * a[1], s * a[2]] }
    }

    /// A rotation taking the Bloch vector `from` onto `to`.
    pub fn mapping(from: [f64; 3], to: [f64; 3]) -> Su2 {
        let a = normalize(from).unwrap_or([1.0, 0.0, 0.0]);
        let b = normalize(to).unwrap_or([1.0, 0.0, 0.0]);
        let c = dot(a, b).clamp(-1.0, 1.0);
        if c > 1.0 - 1e-15 {
            return Su2::IDENTITY;
        }
        let axis = if c < -1.0 + 1e-15 {
            let trial = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            cross(a, trial)
        } else {
            cross(a, b)
        };
        Su2::rotation(axis, c.acos())
    }

    /// Matrix product `self · other`.
    pub fn compose(self, other: Su2) -> Su2 {
        let (a, u) = (self.w, self.v);
        let (b, v) = (other.w, other.v);
        let uxv = cross(u, v);
        Su2 {
            w: a * b - dot(u, v),
            v: [
                a * v[0] + b * u[0] + uxv[0],
                a * v[1] + b * u[1] + uxv[1],
                a * v[2] + b * u[2] + uxv[2],
            ],
        }
    }

    pub fn inverse(self) -> Su2 {
        Su2 { w: self.w, v: [-self.v[0], -self.v[1], -self.v[2]] }
    }

    /// Bloch vector `r'` with `U (r·σ) U† = r'·σ`.
    pub fn rotate(self, r: [f64; 3]) -> [f64; 3] {
        let vxr = cross(self.v, r);
        let vxvxr = cross(self.v, vxr);
        [
            r[0] + 2.0 * self.w * vxr[0] + 2.0 * vxvxr[0],
            r[1] + 2.0 * self.w * vxr[1] + 2.0 * vxvxr[1],
            r[2] + 2.0 * self.w * vxr[2] + 2.0 * vxvxr[2],
        ]
    }

    /// Rotation angle in `[0, 2π]` and unit axis.
    pub fn axis_angle(self) -> ([f64; 3], f64) {
        let s = dot(self.v, self.v).sqrt();
        let angle = 2.0 * s.atan2(self.w);
        match normalize(self.v) {
            Some(a) => (a, angle),
            None => ([1.0, 0.0, 0.0], 0.0),
        }
    }

    /// Same axis with the angle increased by `delta`.
    pub fn with_angle_error(self, delta: f64) -> Su2 {
        if self.is_identity() || delta == 0.0 {
            return self;
        }
        let (axis, angle) = self.axis_angle();
        Su2::rotation(axis, angle + delta)
    }

    pub fn is_identity(self) -> bool {
        self.v == [0.0; 3] && self.w.abs() == 1.0
    }

    /// Row-major 2×2 matrix in the computational basis.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let [x, y, z] = self.v;
        let w = self.w;
        [
            [Complex64::new(w, -z), Complex64::new(-y, -x)],
            [Complex64::new(y, -x), Complex64::new(w, z)],
        ]
    }

    fn pauli_name(self) -> Option<&'static str> {
        [(Su2::IDENTITY, "I"), (Su2::X, "X"), (Su2::Y, "Y"), (Su2::Z, "Z")]
            .into_iter()
            .find(|(p, _)| *p == self)
            .map(|(_, n)| n)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Name(String),
    Quat([f64; 4]),
}

impl Serialize for Su2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.pauli_name() {
            Some(n) => Repr::Name(n.to_string()).serialize(s),
            None => Repr::Quat([self.w, self.v[0], self.v[1], self.v[2]]).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Su2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Name(n) => match n.as_str() {
                "I" => Ok(Su2::IDENTITY),
                "X" => Ok(Su2::X),
                "Y" => Ok(Su2::Y),
                "Z" => Ok(Su2::Z),
                other => Err(de::Error::custom(format!("unknown gate name {other:?}"))),
            },
            Repr::Quat([w, x, y, z]) => {
                let n = (w * w + x * x + y * y + z * z).sqrt();
                if (n - 1.0).abs() > 1e-9 {
                    return Err(de::Error::custom("gate quaternion is not normalised"));
                }
                Ok(Su2 { w, v: [x, y, z] })
            }
        }
    }
}
