// Brute-force reference path. Shares no trig or block code with the closed
// form: the state is evolved with a dense eigendecomposition of the truncated
// interaction Hamiltonian, and spectra come from a dense Hermitian eigensolver.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jcent/model.hpp"

namespace jcent::oracle {

/// gamma (|e><g| a + |g><e| a^dagger) on levels 0..n_max, in the shared basis.
Eigen::MatrixXd interaction_hamiltonian(std::size_t n_max, double gamma);

/// U(t) (rho_S x rho_F) U(t)^dagger with thermal weights cut at n_max and
/// U(t) = exp(-i H t) on the truncated space. Trace is 1 - alpha^(n_max+1).
TruncatedDensityMatrix evolve_numeric(double t, const ModelParams& params, const Truncation& trunc);

/// Transposes the field indices: <a,m|X|b,n> -> <a,n|X|b,m>.
ComplexMatrix full_partial_transpose(const ComplexMatrix& rho, std::size_t n_max);
ComplexMatrix full_partial_transpose(const TruncatedDensityMatrix& rho);

/// All eigenvalues of the full partial transpose, ascending.
std::vector<double> full_pt_spectrum(const TruncatedDensityMatrix& rho);

struct ProjectedState {
  std::size_t n = 1;
  /// qubit x {|n-1>, |n>, |n+1>}, index a*3 + (m - n + 1); unit trace
  ComplexMatrix entries;
  /// trace before normalisation
  double norm = 0.0;
};

/// (1 x pi_n) rho (1 x pi_n) with pi_n projecting on levels n-1..n+1,
/// normalised. Throws std::invalid_argument unless 1 <= n and n+1 <= n_max.
ProjectedState project_2x3(const TruncatedDensityMatrix& rho, std::size_t n);

/// Eigenvalues of the partial transpose of the unnormalised projection
/// (norm * entries), ascending. Same scale as full_pt_spectrum.
std::vector<double> projected_pt_spectrum(const ProjectedState& proj);

/// Smallest n in [1, n_search_max] whose projection has a partial-transpose
/// eigenvalue below -1e-12 (unnormalised scale), or std::nullopt.
std::optional<std::size_t> nppt_witness(const TruncatedDensityMatrix& rho, std::size_t n_search_max);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);

}  // namespace jcent::oracle
