#include <cmath>
#include <numbers>

#include "nrq/error.hpp"
#include "nrq/qops.hpp"

namespace nrq::qops {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(Errc::DimensionMismatch, std::string(what) + ": dimension mismatch");
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// e^{i 2 pi m / N} with the phase index reduced modulo N first.
Complex root_of_unity(std::size_t m, std::size_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(m % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

LinearOp spectral_operator(const Grid& grid, const Eigen::VectorXd& eigenvalues) {
  const Matrix f = fourier_basis(grid);
  Matrix m = f * eigenvalues.cast<Complex>().asDiagonal() * f.adjoint();
  return LinearOp(std::move(m), {.hermitian = true});
}

}  // namespace

Grid::Grid(std::size_t n_points, double spacing) : n_(n_points), spacing_(spacing) {
  if (n_points < 2 || n_points > kMaxGridPoints)
    throw Error(Errc::InvalidArgument, "grid size must lie in [2, 4096]");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw Error(Errc::InvalidArgument, "grid spacing must be positive");
}

std::size_t Grid::wrap(std::ptrdiff_t i) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(n_);
  return static_cast<std::size_t>(((i % n) + n) % n);
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw Error(Errc::InvalidArgument, "cannot normalize a zero or non-finite vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::from_amplitudes(Vector amplitudes) {
  if (!(std::fabs(amplitudes.squaredNorm() - 1.0) <= kNormTol))
    throw Error(Errc::InvalidArgument, "state vector is not normalized");
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dimension, std::size_t index) {
  if (index >= dimension) throw Error(Errc::IndexOutOfRange, "basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

Complex StateVector::inner(const StateVector& other) const {
  require_same_size(size(), other.size(), "inner product");
  return amps_.dot(other.amps_);  // conjugates the left operand
}

LinearOp::LinearOp(Matrix m, OpFlags flags) : m_(std::move(m)), flags_(flags) {
  if (m_.rows() != m_.cols()) throw Error(Errc::DimensionMismatch, "operator must be square");
}

LinearOp LinearOp::identity(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  return LinearOp(Matrix::Identity(d, d), {.hermitian = true, .unitary = true});
}

double LinearOp::hermitian_residual() const { return max_abs(m_ - m_.adjoint()); }

double LinearOp::unitary_residual() const {
  const auto d = m_.rows();
  return max_abs(m_.adjoint() * m_ - Matrix::Identity(d, d));
}

bool LinearOp::is_hermitian() const {
  return hermitian_residual() <= kOperatorTol * std::max(1.0, max_abs(m_));
}

Vector LinearOp::apply(const Vector& v) const {
  require_same_size(size(), static_cast<std::size_t>(v.size()), "operator application");
  return m_ * v;
}

Vector LinearOp::apply(const StateVector& state) const { return apply(state.amplitudes()); }

LinearOp LinearOp::power(unsigned exponent) const {
  Matrix result = Matrix::Identity(m_.rows(), m_.cols());
  Matrix base = m_;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return LinearOp(std::move(result), flags_);
}

LinearOp LinearOp::scaled(double factor) const {
  return LinearOp(m_ * factor, {.hermitian = flags_.hermitian, .unitary = false});
}

LinearOp operator*(const LinearOp& a, const LinearOp& b) {
  require_same_size(a.size(), b.size(), "operator product");
  return LinearOp(a.matrix() * b.matrix(),
                  {.hermitian = false, .unitary = a.flags().unitary && b.flags().unitary});
}

void NaturalUnits::validate() const {
  if (!(hbar > 0.0) || !(c > 0.0) || !(mass_scale > 0.0))
    throw Error(Errc::InvalidArgument, "natural units must be positive");
}

LinearOp shift_operator(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Matrix t = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) t((i + 1) % n, i) = 1.0;
  return LinearOp(std::move(t), {.unitary = true});
}

double frequency_eigenvalue(const Grid& grid, std::size_t n) {
  return 2.0 * std::numbers::pi * static_cast<double>(n) / grid.extent();
}

double wavevector_eigenvalue(const Grid& grid, std::size_t j) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  auto folded = static_cast<std::ptrdiff_t>(j % grid.size());
  if (2 * folded > n) folded -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(folded) / grid.extent();
}

Complex shift_eigenvalue(const Grid& grid, std::size_t n) {
  return std::conj(root_of_unity(n, grid.size()));
}

StateVector fourier_eigenstate(const Grid& grid, std::size_t n) {
  if (n >= grid.size()) throw Error(Errc::IndexOutOfRange, "Fourier mode index out of range");
  const std::size_t size = grid.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  Vector v(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i)
    v(static_cast<Eigen::Index>(i)) = scale * root_of_unity(n * i, size);
  return StateVector::from_amplitudes(std::move(v));
}

Matrix fourier_basis(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Matrix f(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    f.col(k) = fourier_eigenstate(grid, static_cast<std::size_t>(k)).amplitudes();
  return f;
}

double eigenpair_residual(const LinearOp& op, const StateVector& v, Complex lambda) {
  const Vector r = op.apply(v) - lambda * v.amplitudes();
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

LinearOp frequency_operator(const Grid& grid) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t n = 0; n < grid.size(); ++n) w(static_cast<Eigen::Index>(n)) = frequency_eigenvalue(grid, n);
  return spectral_operator(grid, w);
}

LinearOp wavevector_operator(const Grid& grid) {
  Eigen::VectorXd k(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) k(static_cast<Eigen::Index>(j)) = wavevector_eigenvalue(grid, j);
  return spectral_operator(grid, k);
}

LinearOp position_operator(const Grid& grid) {
  Vector x(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) x(static_cast<Eigen::Index>(i)) = grid.point(i);
  return LinearOp(Matrix(x.asDiagonal()), {.hermitian = true});
}

LinearOp finite_difference_frequency_operator(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Matrix d = shift_operator(grid).matrix() - Matrix::Identity(n, n);
  return LinearOp(d * (kI / grid.spacing()));
}

Complex expectation(const LinearOp& op, const StateVector& state) {
  return state.amplitudes().dot(op.apply(state));
}

LinearOp projector(const StateVector& onto) {
  const Vector& v = onto.amplitudes();
  return LinearOp(v * v.adjoint(), {.hermitian = true});
}

double born_probability(const StateVector& state, const StateVector& outcome) {
  return std::norm(outcome.inner(state));
}

LinearOp commutator(const LinearOp& a, const LinearOp& b) {
  require_same_size(a.size(), b.size(), "commutator");
  return LinearOp(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

LinearOp anticommutator(const LinearOp& a, const LinearOp& b) {
  require_same_size(a.size(), b.size(), "anticommutator");
  return LinearOp(a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

double variance(const LinearOp& a, const StateVector& state) {
  if (!a.is_hermitian()) throw Error(Errc::NonHermitianInput, "variance needs a Hermitian operator");
  const Vector av = a.apply(state);
  const double mean = state.amplitudes().dot(av).real();
  // <A^2> = |A psi|^2 for Hermitian A.
  return std::max(0.0, av.squaredNorm() - mean * mean);
}

double uncertainty_product(const StateVector& state, const LinearOp& a, const LinearOp& b) {
  return std::sqrt(variance(a, state)) * std::sqrt(variance(b, state));
}

double robertson_bound(const StateVector& state, const LinearOp& a, const LinearOp& b) {
  return 0.5 * std::abs(expectation(commutator(a, b), state));
}

StateVector gaussian_packet(const Grid& grid, double center, double width, double carrier) {
  if (!(width > 0.0)) throw Error(Errc::InvalidArgument, "packet width must be positive");
  Vector v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    const double u = (x - center) / width;
    v(static_cast<Eigen::Index>(i)) = std::exp(-0.25 * u * u) * std::exp(kI * (carrier * x));
  }
  return StateVector::normalized(std::move(v));
}

}  // namespace nrq::qops
