use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::laurent::{Bindings, GaussianRational, LaurentPoly, Monomial, Var};

/// A family of coordinates `v_1, v_2, …` appearing through `e^{v_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    X,
    Z,
    W,
    Y,
}

impl Block {
    /// The exponential variable `e^{v_i}`.
    pub fn pos(self, i: usize) -> Var {
        let i = i as u8;
        match self {
            Block::X => Var::X(i),
            Block::Z => Var::Z(i),
            Block::W => Var::W(i),
            Block::Y => Var::Y(i),
        }
    }

    /// The conjugate momentum of `v_i`.
    pub fn mom(self, i: usize) -> Var {
        let i = i as u8;
        match self {
            Block::X => Var::Px(i),
            Block::Z => Var::Pz(i),
            Block::W => Var::Pw(i),
            Block::Y => Var::Py(i),
        }
    }

    /// Index of `v` if it is a position variable of this block.
    pub fn index_of(self, v: Var) -> Option<usize> {
        match (self, v) {
            (Block::X, Var::X(i)) | (Block::Z, Var::Z(i)) | (Block::W, Var::W(i)) | (Block::Y, Var::Y(i)) => {
                Some(i as usize)
            }
            _ => None,
        }
    }

    pub fn contains(self, v: Var) -> bool {
        self.index_of(v).is_some()
    }

    pub fn of(v: Var) -> Option<Block> {
        [Block::X, Block::Z, Block::W, Block::Y].into_iter().find(|b| b.contains(v))
    }

    pub fn name(self) -> &'static str {
        match self {
            Block::X => "x",
            Block::Z => "z",
            Block::W => "w",
            Block::Y => "y",
        }
    }
}

/// `coefficient · e^{ℓ}` with `ℓ` an integer linear form, stored as the monomial `e^{ℓ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTerm {
    pub coeff: LaurentPoly,
    pub form: Monomial,
}

/// Finite sum of exponential terms: the exponent of an integral kernel.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenFunc {
    pub terms: Vec<GenTerm>,
}

impl GenFunc {
    pub fn new() -> Self {
        GenFunc { terms: Vec::new() }
    }

    /// Adds `coeff · e^{Σ e_k v_k}`; zero coefficients are skipped.
    pub fn push(&mut self, coeff: LaurentPoly, form: &[(Var, i32)]) {
        if !coeff.is_zero() {
            self.terms.push(GenTerm { coeff, form: Monomial::from_pairs(form.iter().copied()) });
        }
    }

    pub fn with(mut self, coeff: LaurentPoly, form: &[(Var, i32)]) -> Self {
        self.push(coeff, form);
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The kernel exponent as a Laurent polynomial in the exponential variables.
    pub fn to_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for t in &self.terms {
            p += &t.coeff.mul_monomial(&t.form);
        }
        p
    }

    /// `∂F/∂v` where `v` is the coordinate whose exponential is the variable `v`.
    pub fn grad(&self, v: Var) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for t in &self.terms {
            let e = t.form.exponent(v);
            if e != 0 {
                p += &t.coeff.mul_term(&t.form, &GaussianRational::from_int(e as i64));
            }
        }
        p
    }

    /// `∂²F/∂v²`.
    pub fn grad2(&self, v: Var) -> LaurentPoly {
        self.grad(v).euler(v)
    }

    /// Position variables appearing in some term, sorted.
    pub fn position_vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|t| t.form.vars().collect::<Vec<_>>()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Checks that each term involves exactly one variable of each side with exponent ±1.
    /// Returns the index of the first offending term.
    pub fn check_block_coupling(&self, left: &[Block], right: &[Block]) -> Result<(), usize> {
        for (k, t) in self.terms.iter().enumerate() {
            let mut nl = 0;
            let mut nr = 0;
            for (v, e) in t.form.iter() {
                let in_left = left.iter().any(|b| b.contains(v));
                let in_right = right.iter().any(|b| b.contains(v));
                if e.abs() != 1 || !(in_left || in_right) {
                    return Err(k);
                }
                nl += in_left as usize;
                nr += in_right as usize;
            }
            if nl != 1 || nr != 1 {
                return Err(k);
            }
        }
        Ok(())
    }

    /// Substitutes into the coefficients, dropping terms that vanish.
    pub fn substitute_couplings(&self, b: &Bindings) -> Result<GenFunc, crate::laurent::AlgebraError> {
        let mut out = GenFunc::new();
        for t in &self.terms {
            let c = t.coeff.substitute(b)?;
            if !c.is_zero() {
                out.terms.push(GenTerm { coeff: c, form: t.form.clone() });
            }
        }
        Ok(out)
    }

    /// Renames position variables.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> GenFunc {
        GenFunc {
            terms: self
                .terms
                .iter()
                .map(|t| GenTerm { coeff: t.coeff.clone(), form: Monomial::from_pairs(t.form.iter().map(|(v, e)| (f(v), e))) })
                .collect(),
        }
    }

    /// Terms merged by linear form and sorted; the canonical representative.
    pub fn canonical(&self) -> GenFunc {
        let p = self.to_poly_by_form();
        GenFunc { terms: p.into_iter().filter(|(_, c)| !c.is_zero()).map(|(form, coeff)| GenTerm { coeff, form }).collect() }
    }

    fn to_poly_by_form(&self) -> alloc::collections::BTreeMap<Monomial, LaurentPoly> {
        let mut map: alloc::collections::BTreeMap<Monomial, LaurentPoly> = alloc::collections::BTreeMap::new();
        for t in &self.terms {
            *map.entry(t.form.clone()).or_default() += &t.coeff;
        }
        map
    }

    /// Same set of linear forms, ignoring coefficients.
    pub fn same_forms(&self, other: &GenFunc) -> bool {
        let a: Vec<Monomial> = self.canonical().terms.into_iter().map(|t| t.form).collect();
        let b: Vec<Monomial> = other.canonical().terms.into_iter().map(|t| t.form).collect();
        a == b
    }

    /// Canonical text, one `coeff | form` entry per term separated by `;`.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for (k, t) in self.canonical().terms.iter().enumerate() {
            if k > 0 {
                s.push_str("; ");
            }
            s.push_str(&alloc::format!("[{}] exp({})", t.coeff, t.form));
        }
        s
    }
}

impl fmt::Display for GenFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// `momenta_from_genfunc` sign convention: `p ↦ +∂F` on the left block, `p ↦ −∂F` on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Binds the momenta `P_1..P_rank` of `block` to the gradient of `f`.
pub fn momenta_from_genfunc(f: &GenFunc, block: Block, side: Side, rank: usize) -> Bindings {
    let mut b = Bindings::new();
    for i in 1..=rank {
        let g = f.grad(block.pos(i));
        b.insert(block.mom(i), if side == Side::Left { g } else { -g });
    }
    b
}
