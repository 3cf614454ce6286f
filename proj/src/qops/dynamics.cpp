#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nrq/error.hpp"
#include "nrq/qops.hpp"

namespace nrq::qops {

LinearOp tight_binding_hamiltonian(const Grid& grid,
                                   const std::function<double(double)>& onsite,
                                   std::span<const Complex> hoppings) {
  const std::size_t n = grid.size();
  if (2 * hoppings.size() >= n)
    throw Error(Errc::HoppingRangeTooLarge, "hopping range must be below N/2");

  const auto d = static_cast<Eigen::Index>(n);
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    h(col, col) = onsite(grid.point(i));
    for (std::size_t r = 1; r <= hoppings.size(); ++r) {
      const Complex t = hoppings[r - 1];
      const auto up = static_cast<std::ptrdiff_t>(i + r);
      const auto down = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(r);
      h(static_cast<Eigen::Index>(grid.wrap(up)), col) -= t;
      h(static_cast<Eigen::Index>(grid.wrap(down)), col) -= std::conj(t);
    }
  }
  return LinearOp(std::move(h), {.hermitian = true});
}

double hopping_for_mass(const Grid& grid, const NaturalUnits& units) {
  units.validate();
  return 1.0 / (2.0 * units.mass_scale * grid.spacing() * grid.spacing());
}

LinearOp energy_operator(const LinearOp& frequency, const NaturalUnits& units) {
  units.validate();
  return frequency.scaled(units.hbar);
}

std::vector<BandPoint> plane_wave_band(const Grid& grid, const LinearOp& hamiltonian) {
  if (hamiltonian.size() != grid.size())
    throw Error(Errc::DimensionMismatch, "band: grid and operator sizes differ");
  std::vector<BandPoint> band;
  band.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const StateVector k = fourier_eigenstate(grid, j);
    band.push_back({wavevector_eigenvalue(grid, j), expectation(hamiltonian, k).real()});
  }
  std::sort(band.begin(), band.end(), [](const BandPoint& a, const BandPoint& b) { return a.k < b.k; });
  return band;
}

Propagator::Propagator(const LinearOp& hamiltonian, const NaturalUnits& units) : hbar_(units.hbar) {
  units.validate();
  if (!hamiltonian.is_hermitian())
    throw Error(Errc::NonHermitianInput, "time evolution needs a Hermitian generator");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian.matrix());
  if (solver.info() != Eigen::Success)
    throw Error(Errc::InvalidArgument, "eigendecomposition failed");
  vectors_ = solver.eigenvectors();
  energies_ = solver.eigenvalues();
}

StateVector Propagator::evolve(const StateVector& state, double time) const {
  if (state.size() != static_cast<std::size_t>(vectors_.rows()))
    throw Error(Errc::DimensionMismatch, "evolve: state and generator sizes differ");
  Vector coeffs = vectors_.adjoint() * state.amplitudes();
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs(i) *= std::polar(1.0, -energies_(i) * time / hbar_);
  return StateVector::from_amplitudes(vectors_ * coeffs);
}

StateVector evolve(const StateVector& state, const LinearOp& hamiltonian, double time,
                   const NaturalUnits& units) {
  return Propagator(hamiltonian, units).evolve(state, time);
}

}  // namespace nrq::qops
