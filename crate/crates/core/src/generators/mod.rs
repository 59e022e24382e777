//! The generating vectors `u_{p,j}^{<k>}` of the module of polynomial
//! functions, their explicit polynomials, and the multivariate tensor
//! generators.

mod tensor;
mod univariate;

pub use tensor::{
    multivariate_generator_count, multivariate_generator_set, tensor_generator, tensor_product, MultiGenerator,
    MultiGeneratorId, MultiGeneratorSet,
};
pub use univariate::{
    generator_count, generator_count_of, generator_polynomial, generator_set, generator_vector, GenValues, Generator,
    GeneratorId, GeneratorPolynomials, GeneratorSet, DEFAULT_SPARSE_THRESHOLD, MAX_GENERATOR_DEGREE,
};
