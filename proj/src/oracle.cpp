#include "jcent/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace jcent::oracle {

namespace {

Eigen::Index basis_index(std::size_t n_max, int a, std::size_t m) {
  return static_cast<Eigen::Index>(static_cast<std::size_t>(a) * (n_max + 1) + m);
}

}  // namespace

Eigen::MatrixXd interaction_hamiltonian(std::size_t n_max, double gamma) {
  const auto dim = static_cast<Eigen::Index>(2 * (n_max + 1));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  // <e,n| a |g,n+1> = sqrt(n+1)
  for (std::size_t n = 0; n < n_max; ++n) {
    const auto e = basis_index(n_max, 0, n);
    const auto g = basis_index(n_max, 1, n + 1);
    h(e, g) = h(g, e) = gamma * std::sqrt(double(n + 1));
  }
  return h;
}

TruncatedDensityMatrix evolve_numeric(double t, const ModelParams& params, const Truncation& trunc) {
  const std::size_t n_max = trunc.n_max;
  if (n_max == 0) throw std::invalid_argument("evolve_numeric needs n_max >= 1");
  const auto dim = static_cast<Eigen::Index>(2 * (n_max + 1));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(interaction_hamiltonian(n_max, params.gamma()));
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) phases(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
  const ComplexMatrix u = v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();

  // Initial state is diagonal: rho = W W^dagger with W = U sqrt(rho_0).
  Eigen::VectorXd sqrt_pop(dim);
  double weight = 1.0 - params.alpha();  // p_0
  for (std::size_t n = 0; n <= n_max; ++n) {
    sqrt_pop(basis_index(n_max, 0, n)) = std::sqrt(params.lambda() * weight);
    sqrt_pop(basis_index(n_max, 1, n)) = std::sqrt((1.0 - params.lambda()) * weight);
    weight *= params.alpha();
  }
  const ComplexMatrix w = u * sqrt_pop.cast<Complex>().asDiagonal();
  ComplexMatrix rho = w * w.adjoint();
  return {n_max, std::move(rho), std::pow(params.alpha(), double(n_max + 1))};
}

ComplexMatrix full_partial_transpose(const ComplexMatrix& rho, std::size_t n_max) {
  const auto dim = static_cast<Eigen::Index>(2 * (n_max + 1));
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("full_partial_transpose: dimension does not match n_max");
  ComplexMatrix out(dim, dim);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (std::size_t m = 0; m <= n_max; ++m)
        for (std::size_t n = 0; n <= n_max; ++n)
          out(basis_index(n_max, a, m), basis_index(n_max, b, n)) =
              rho(basis_index(n_max, a, n), basis_index(n_max, b, m));
  return out;
}

ComplexMatrix full_partial_transpose(const TruncatedDensityMatrix& rho) {
  return full_partial_transpose(rho.entries(), rho.n_max());
}

namespace {

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

std::vector<double> full_pt_spectrum(const TruncatedDensityMatrix& rho) {
  return hermitian_eigenvalues(full_partial_transpose(rho));
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

ProjectedState project_2x3(const TruncatedDensityMatrix& rho, std::size_t n) {
  if (n < 1 || n + 1 > rho.n_max())
    throw std::invalid_argument("project_2x3 needs 1 <= n and n+1 <= n_max");
  ProjectedState out;
  out.n = n;
  out.entries = ComplexMatrix::Zero(6, 6);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          out.entries(basis_index(2, a, i), basis_index(2, b, j)) =
              rho.entries()(basis_index(rho.n_max(), a, n - 1 + i),
                            basis_index(rho.n_max(), b, n - 1 + j));
  out.norm = out.entries.trace().real();
  if (out.norm > 0.0) out.entries /= out.norm;
  return out;
}

std::vector<double> projected_pt_spectrum(const ProjectedState& proj) {
  // The 2x3 block uses the same a*(levels)+m layout with three field levels.
  return hermitian_eigenvalues(full_partial_transpose(proj.entries * proj.norm, 2));
}

std::optional<std::size_t> nppt_witness(const TruncatedDensityMatrix& rho, std::size_t n_search_max) {
  if (n_search_max + 1 > rho.n_max())
    throw std::invalid_argument("nppt_witness needs n_search_max + 1 <= n_max");
  for (std::size_t n = 1; n <= n_search_max; ++n) {
    if (projected_pt_spectrum(project_2x3(rho, n)).front() < -1e-12) return n;
  }
  return std::nullopt;
}

}  // namespace jcent::oracle
