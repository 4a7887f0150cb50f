//! Exact algebra for multiplicative subsets of Noetherian rings.

pub mod abelian;
pub mod battery;
pub mod completion;
pub mod linalg;
pub mod obtain;
pub mod oracle;
pub mod ring;
pub mod scalar;
pub mod spectrum;

/// Default exact integer type.
pub type Int = i128;
pub type Matrix = linalg::Matrix<Int>;
pub type Module = abelian::StdModule<Int>;
pub type ModMap = abelian::StdMap<Int>;
pub type FpModule = abelian::FpModule<Int>;
pub type Ring = abelian::BaseRing<Int>;
