use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A polynomial variable.
///
/// The derived ordering is the global variable order used by the graded-lex
/// term order: matrix coordinates first, then chart coordinates, then the
/// central parameters, then Euler-characteristic symbols and free names.
/// It depends only on the variable itself, never on interning order, so
/// printed output is stable across runs and threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    /// Coordinate `x[i,j]` (1-based; `i < j` for skew-symmetric spaces).
    X(u16, u16),
    /// Chart coordinate `u[i,j]`.
    U(u16, u16),
    /// Exceptional-divisor coordinate `t0`.
    T0,
    /// The b-function variable `s`.
    S,
    /// The Capelli parameter `z`.
    Z,
    /// Euler characteristic `chi[I]` of a stratum, `I` encoded as a bitmask.
    Chi(u64),
    /// Any other symbol, interned.
    Named(&'static str),
}

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static INTERNER: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashSet::new()))
}

impl VarId {
    /// Interns `name` and returns the corresponding variable.
    pub fn named(name: &str) -> VarId {
        let mut set = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(&s) = set.get(name) {
            return VarId::Named(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        VarId::Named(leaked)
    }

    pub fn x(i: usize, j: usize) -> VarId {
        VarId::X(i as u16, j as u16)
    }

    pub fn u(i: usize, j: usize) -> VarId {
        VarId::U(i as u16, j as u16)
    }

    pub fn chi(subset: &[usize]) -> VarId {
        VarId::Chi(subset.iter().fold(0u64, |acc, &i| acc | (1u64 << i)))
    }

    /// Name of the partial derivative with respect to this variable, as used
    /// in the textual operator form.
    pub fn partial_name(&self) -> String {
        match self {
            VarId::X(i, j) => format!("d[{i},{j}]"),
            VarId::U(i, j) => format!("du[{i},{j}]"),
            other => format!("d{other}"),
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X(i, j) => write!(f, "x[{i},{j}]"),
            VarId::U(i, j) => write!(f, "u[{i},{j}]"),
            VarId::T0 => f.write_str("t0"),
            VarId::S => f.write_str("s"),
            VarId::Z => f.write_str("z"),
            VarId::Chi(mask) => {
                f.write_str("chi[")?;
                let mut first = true;
                for bit in 0..64 {
                    if mask & (1u64 << bit) != 0 {
                        if !first {
                            f.write_str(",")?;
                        }
                        write!(f, "{bit}")?;
                        first = false;
                    }
                }
                f.write_str("]")
            }
            VarId::Named(name) => f.write_str(name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent() {
        assert_eq!(VarId::named("y"), VarId::named("y"));
        assert_ne!(VarId::named("y"), VarId::named("w"));
    }

    #[test]
    fn order_is_structural() {
        assert!(VarId::x(1, 1) < VarId::x(1, 2));
        assert!(VarId::x(1, 2) < VarId::x(2, 1));
        assert!(VarId::x(9, 9) < VarId::S);
        assert!(VarId::S < VarId::Z);
        assert!(VarId::named("a") < VarId::named("b"));
    }

    #[test]
    fn display() {
        assert_eq!(VarId::x(1, 2).to_string(), "x[1,2]");
        assert_eq!(VarId::x(1, 2).partial_name(), "d[1,2]");
        assert_eq!(VarId::chi(&[0, 2]).to_string(), "chi[0,2]");
        assert_eq!(VarId::chi(&[]).to_string(), "chi[]");
    }
}
