#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "nrq/error.hpp"
#include "nrq/qops.hpp"

namespace nrq::qops {

double klein_gordon_dispersion(double k, double mass, const NaturalUnits& units) {
  units.validate();
  if (!(mass >= 0.0)) throw Error(Errc::InvalidArgument, "mass must be non-negative");
  const double rest = mass * units.c * units.c / units.hbar;
  return std::sqrt(units.c * units.c * k * k + rest * rest);
}

double klein_gordon_residual(const Grid& space, std::size_t mode, double mass,
                             const NaturalUnits& units, std::size_t time_points) {
  const double k = wavevector_eigenvalue(space, mode);
  const double omega = klein_gordon_dispersion(k, mass, units);
  if (!(omega > 0.0)) throw Error(Errc::InvalidArgument, "zero-frequency mode has no temporal period");

  // Unnormalized plane wave e^{i k x} on the space grid.
  const double root_n = std::sqrt(static_cast<double>(space.size()));
  const Vector phi = fourier_eigenstate(space, mode).amplitudes() * root_n;
  const LinearOp kx = wavevector_operator(space);
  const Vector laplacian_term = kx.apply(kx.apply(phi));  // -d_x^2 phi

  // e^{-i omega t} over one period, so it is periodic on the time grid; its
  // spectral derivative -i d_t is the wave-vector operator of that grid.
  const Grid time(time_points, 2.0 * std::numbers::pi / omega / static_cast<double>(time_points));
  StateVector chi_state = fourier_eigenstate(time, time_points - 1);
  const Vector chi = chi_state.amplitudes() * std::sqrt(static_cast<double>(time_points));
  const LinearOp kt = wavevector_operator(time);
  const Vector dtt = -kt.apply(kt.apply(chi));  // d_t^2 chi

  const double mass_term = std::pow(mass * units.c / units.hbar, 2);
  const double inv_c2 = 1.0 / (units.c * units.c);
  double worst = 0.0;
  for (Eigen::Index l = 0; l < phi.size(); ++l)
    for (Eigen::Index i = 0; i < chi.size(); ++i) {
      const Complex r = laplacian_term(l) * chi(i) + inv_c2 * phi(l) * dtt(i) +
                        mass_term * phi(l) * chi(i);
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

DiracRepresentation standard_dirac_representation() {
  using C = Complex;
  const Eigen::Matrix2cd sigma[3] = {
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, C(0, -1), C(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  DiracRepresentation rep;
  for (int i = 0; i < 3; ++i) {
    rep.alpha[i] = Matrix4::Zero();
    rep.alpha[i].topRightCorner<2, 2>() = sigma[i];
    rep.alpha[i].bottomLeftCorner<2, 2>() = sigma[i];
  }
  rep.beta = Matrix4::Zero();
  rep.beta.diagonal() << 1, 1, -1, -1;
  return rep;
}

DiracReport dirac_check(const DiracRepresentation& rep, const std::array<double, 3>& k,
                        double mass, const NaturalUnits& units) {
  units.validate();
  if (!(mass >= 0.0)) throw Error(Errc::InvalidArgument, "mass must be non-negative");

  const Matrix4 id = Matrix4::Identity();
  const auto dev = [](const Matrix4& m) { return m.cwiseAbs().maxCoeff(); };

  DiracReport report;
  for (int i = 0; i < 3; ++i) {
    const Matrix4& a = rep.alpha[i];
    report.hermitian_residual = std::max(report.hermitian_residual, dev(a - a.adjoint()));
    report.alpha_square_residual = std::max(report.alpha_square_residual, dev(a * a - id));
    report.alpha_beta_anticommutator_residual =
        std::max(report.alpha_beta_anticommutator_residual, dev(a * rep.beta + rep.beta * a));
    for (int j = i + 1; j < 3; ++j) {
      const Matrix4& b = rep.alpha[j];
      report.alpha_anticommutator_residual =
          std::max(report.alpha_anticommutator_residual, dev(a * b + b * a));
    }
  }
  report.hermitian_residual = std::max(report.hermitian_residual, dev(rep.beta - rep.beta.adjoint()));
  report.beta_square_residual = dev(rep.beta * rep.beta - id);
  report.algebra_residual = std::max({report.hermitian_residual, report.alpha_square_residual,
                                      report.beta_square_residual, report.alpha_anticommutator_residual,
                                      report.alpha_beta_anticommutator_residual});
  if (report.algebra_residual > kOperatorTol)
    throw Error(Errc::BadRepresentation, "matrices do not satisfy the Dirac algebra");

  Matrix4 omega = (mass * units.c * units.c / units.hbar) * rep.beta;
  for (int i = 0; i < 3; ++i) omega += (units.c * k[static_cast<std::size_t>(i)]) * rep.alpha[i];
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(omega, Eigen::EigenvaluesOnly);
  for (int i = 0; i < 4; ++i) report.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return report;
}

}  // namespace nrq::qops
