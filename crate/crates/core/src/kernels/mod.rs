//! Generating functions of integral kernels and exact checks that they intertwine
//! quadratic Toda Hamiltonians.

mod baxter;
mod catalogue;
mod genfunc;
mod hamiltonian;
mod intertwine;
mod twisted;

pub use baxter::{compose_baxter, BaxterDescriptor, KernelFactor};
pub use catalogue::{IntertwiningCase, KernelId};
pub use genfunc::{momenta_from_genfunc, Block, GenFunc, GenTerm, Side};
pub use hamiltonian::{Family, H2Spec};
pub use intertwine::{verify_h2_intertwining, verify_recursive_intertwining, RecursiveKernel};
pub use twisted::{
    tabulated_d_to_c, tabulated_d_to_c_minus, tabulated_twisted_a, reference_couplings, symbolic_couplings, TwistedKernel,
};

/// `∂F/∂v` for the coordinate whose exponential is the variable `v`.
pub fn genfunc_grad(f: &GenFunc, v: crate::laurent::Var) -> crate::laurent::LaurentPoly {
    f.grad(v)
}
