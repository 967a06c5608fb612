use core::fmt;

/// Ring variable.
///
/// Position variables stand for exponentials: `X(i)` is `e^{x_i}`, `Z(i)` is `e^{z_i}`,
/// `W(i)` is `e^{w_i}` (the lower block of a recursive kernel) and `Y(i)` is `e^{y_i}`.
/// Momenta, couplings, the spectral parameter `U`, the characteristic-polynomial
/// variable `Lambda`, Planck's constant `Hbar` and the spectral value `Nu` of a
/// recursive kernel are plain variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    Lambda,
    Hbar,
    Nu,
    X(u8),
    Z(u8),
    W(u8),
    Y(u8),
    Px(u8),
    Pz(u8),
    Pw(u8),
    Py(u8),
    G(u8),
    Gp(u8),
}

impl Var {
    /// True for variables that stand for an exponential of a coordinate.
    pub fn is_position(self) -> bool {
        matches!(self, Var::X(_) | Var::Z(_) | Var::W(_) | Var::Y(_))
    }

    /// True for momentum variables.
    pub fn is_momentum(self) -> bool {
        matches!(self, Var::Px(_) | Var::Pz(_) | Var::Pw(_) | Var::Py(_))
    }

    /// True for coupling constants.
    pub fn is_coupling(self) -> bool {
        matches!(self, Var::G(_) | Var::Gp(_))
    }

    /// Parses the textual name produced by `Display`.
    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "u" => return Some(Var::U),
            "lam" => return Some(Var::Lambda),
            "hbar" => return Some(Var::Hbar),
            "nu" => return Some(Var::Nu),
            _ => {}
        }
        let split = s.find(|c: char| c.is_ascii_digit())?;
        let (head, digits) = s.split_at(split);
        let i: u8 = digits.parse().ok()?;
        Some(match head {
            "X" => Var::X(i),
            "Z" => Var::Z(i),
            "W" => Var::W(i),
            "Y" => Var::Y(i),
            "Px" => Var::Px(i),
            "Pz" => Var::Pz(i),
            "Pw" => Var::Pw(i),
            "Py" => Var::Py(i),
            "g" => Var::G(i),
            "gp" => Var::Gp(i),
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::U => f.write_str("u"),
            Var::Lambda => f.write_str("lam"),
            Var::Hbar => f.write_str("hbar"),
            Var::Nu => f.write_str("nu"),
            Var::X(i) => write!(f, "X{i}"),
            Var::Z(i) => write!(f, "Z{i}"),
            Var::W(i) => write!(f, "W{i}"),
            Var::Y(i) => write!(f, "Y{i}"),
            Var::Px(i) => write!(f, "Px{i}"),
            Var::Pz(i) => write!(f, "Pz{i}"),
            Var::Pw(i) => write!(f, "Pw{i}"),
            Var::Py(i) => write!(f, "Py{i}"),
            Var::G(i) => write!(f, "g{i}"),
            Var::Gp(i) => write!(f, "gp{i}"),
        }
    }
}
