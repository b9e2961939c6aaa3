/// Structural tolerances used when classifying maps and forms.
///
/// `singular` is relative: a map `T` is rejected as singular when
/// `|det T| <= singular * (1 + ‖T‖∞²)`. `definite` is relative to the
/// squared coefficient norm: a form is definite only when
/// `D(q) > definite * ‖q‖∞²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub singular: f64,
    pub definite: f64,
}

pub const DEFAULT_SINGULAR_TOL: f64 = 1e-9;
pub const DEFAULT_DEFINITE_TOL: f64 = 1e-12;

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            singular: DEFAULT_SINGULAR_TOL,
            definite: DEFAULT_DEFINITE_TOL,
        }
    }
}

impl Tolerances {
    pub fn with_singular(mut self, singular: f64) -> Self {
        self.singular = singular;
        self
    }
}
