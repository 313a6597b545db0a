use serde::{Deserialize, Serialize};

use crate::error::SurfaceError;

/// A punctured orientable surface S_{g,n}, the topological type underlying a
/// triangulation. Only hyperbolic types (negative Euler characteristic) are
/// representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub punctures: u32,
}

impl Surface {
    pub fn new(genus: u32, punctures: u32) -> Result<Self, SurfaceError> {
        if punctures == 0 {
            return Err(SurfaceError::Closed);
        }
        let chi = 2 - 2 * genus as i64 - punctures as i64;
        if chi >= 0 {
            return Err(SurfaceError::NotHyperbolic { genus, punctures, chi });
        }
        Ok(Surface { genus, punctures })
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    /// Complexity xi = 3g + n - 3. Curve-complex operations require xi >= 2.
    pub fn complexity(&self) -> i64 {
        3 * self.genus as i64 + self.punctures as i64 - 3
    }

    pub fn has_curve_complex(&self) -> bool {
        self.complexity() >= 2
    }

    pub fn require_curve_complex(&self) -> Result<(), SurfaceError> {
        if self.has_curve_complex() {
            Ok(())
        } else {
            Err(SurfaceError::LowComplexity(self.complexity()))
        }
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_types() {
        assert!(Surface::new(0, 5).is_ok());
        assert!(Surface::new(1, 2).is_ok());
        assert!(Surface::new(1, 1).is_ok());
        assert_eq!(Surface::new(0, 2), Err(SurfaceError::NotHyperbolic { genus: 0, punctures: 2, chi: 0 }));
        assert_eq!(Surface::new(0, 0), Err(SurfaceError::Closed));
        assert_eq!(Surface::new(1, 0), Err(SurfaceError::Closed));
    }

    #[test]
    fn complexity_gate() {
        assert_eq!(Surface::new(0, 5).unwrap().complexity(), 2);
        assert_eq!(Surface::new(1, 2).unwrap().complexity(), 2);
        assert_eq!(Surface::new(1, 1).unwrap().complexity(), 1);
        assert!(!Surface::new(1, 1).unwrap().has_curve_complex());
        assert!(Surface::new(0, 4).unwrap().require_curve_complex().is_err());
    }

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(Surface::new(0, 5).unwrap().euler_characteristic(), -3);
        assert_eq!(Surface::new(1, 2).unwrap().euler_characteristic(), -2);
        assert_eq!(Surface::new(2, 1).unwrap().euler_characteristic(), -3);
    }
}
