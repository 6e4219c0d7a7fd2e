#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prerep/weyl.hpp"

namespace prerep {

using cdouble = std::complex<double>;

/// Polynomial with floating-point complex coefficients.
using NumPoly = std::map<Monomial, cdouble>;

/// Which invariant subspace of the Riccati problem to keep.
/// Decaying: eigenvalues of A*M with negative real part.
/// Normalizable: the choice whose real quadratic form is positive definite.
enum class GroundPolicy { Decaying, Normalizable };

/// psi = exp(-z^T M z), z the ordered variable vector; conjugate variables
/// are independent coordinates, variables without a partner are real.
struct GaussianState {
  std::vector<VarId> vars;
  Eigen::MatrixXcd M;
  /// The same form in real coordinates (w = a + i b per conjugate pair).
  Eigen::MatrixXcd M_real;
  Eigen::MatrixXcd L;  // z = L r
  cdouble eigenvalue{0.0, 0.0};
  PolyFunction prefactor{1};
  bool normalizable = false;
  /// Smallest eigenvalue of Re(M_real).
  double min_real_eigenvalue = 0.0;
  /// Max |entry| of 4 M A M + B.
  double riccati_residual = 0.0;
  GroundPolicy policy = GroundPolicy::Normalizable;
  /// Eigenvalues of the Hamiltonian matrix, for diagnostics.
  std::vector<cdouble> hamiltonian_spectrum;
};

/// Solves O exp(-z^T M z) = lambda exp(-z^T M z) for an operator built from
/// second-derivative, quadratic-multiplication, and constant terms.
/// Throws DomainError for other operators and NumericalError when the chosen
/// policy finds no admissible subspace.
GaussianState solve_gaussian_ground(const WeylOperator& op, GroundPolicy policy = GroundPolicy::Normalizable,
                                    std::vector<VarId> vars = {});

struct ResidualReport {
  cdouble constant;
  /// Max |coefficient| of (O psi)/psi - lambda.
  double max_residual = 0.0;
  std::size_t residual_terms = 0;
};

/// Applies `op` to p * psi symbolically and returns (op(p psi))/psi.
NumPoly conjugated_apply(const WeylOperator& op, const GaussianState& state, const NumPoly& p);
/// Residual of the eigen-equation, by symbolic re-application of `op`.
ResidualReport ground_residual(const WeylOperator& op, const GaussianState& state);

struct MonomialBasis {
  std::vector<Monomial> monomials;
  std::map<Monomial, std::size_t> index;
  std::size_t size() const { return monomials.size(); }
};

/// Monomials in `vars` with min_degree <= total degree <= max_degree, graded order.
MonomialBasis monomial_basis(const std::vector<VarId>& vars, int min_degree, int max_degree);

/// Gram matrix of {m * psi} under the flat L2 product over real and imaginary parts.
Eigen::MatrixXcd gram_matrix(const GaussianState& state, const MonomialBasis& basis);
Eigen::MatrixXcd gram_matrix(const GaussianState& state, int degree);

struct TruncatedRep {
  int degree = 0;
  MonomialBasis basis;
  Eigen::MatrixXcd matrix;
  Eigen::MatrixXcd gram;
  /// Norm of the image components outside the basis, per column.
  std::vector<double> truncation_norm;
  /// Column image lies inside the basis.
  std::vector<bool> interior;
};

TruncatedRep truncated_matrix(const WeylOperator& op, const GaussianState& state, const MonomialBasis& basis);
TruncatedRep truncated_matrix(const WeylOperator& op, const GaussianState& state, int degree);

struct AdjointCrossCheck {
  double max_deviation = 0.0;
  std::size_t pairs_compared = 0;
};

/// Compares <p_i, adjoint(X) p_j> with <X p_i, p_j> for monomials of degree
/// <= `degree`; images are expanded in a basis large enough to hold them, and
/// only pairs whose images are fully inside it are compared.
AdjointCrossCheck adjoint_crosscheck(const WeylOperator& op, const GaussianState& state, int degree);
/// Same comparison against an arbitrary claimed adjoint.
AdjointCrossCheck adjoint_crosscheck(const WeylOperator& op, const WeylOperator& claimed_adjoint,
                                     const GaussianState& state, int degree);

struct Multiplet {
  std::vector<double> eigenvalues;  // one per operator
  std::size_t multiplicity = 0;
  double spin = -1.0;  // from the first operator when it is J^2, else -1
};

struct SpectrumOptions {
  double tolerance = 1e-8;
  /// Treat the first operator as J^2 and attach spin labels.
  bool spin_labels = true;
  /// Optional reordering of the sector's monomial basis (new position -> old index).
  std::vector<std::size_t> permutation;
};

/// Joint spectrum of pairwise commuting operators on the homogeneous sector of
/// the given degree. Throws DomainError when two operators fail to commute
/// symbolically or an operator does not preserve the sector.
std::vector<Multiplet> spectrum(const std::vector<WeylOperator>& ops, const GaussianState& state, int sector_degree,
                                const SpectrumOptions& opts = {});

/// J1^2 + J2^2 + J3^2.
WeylOperator casimir(const std::array<WeylOperator, 3>& J);

}  // namespace prerep
