#pragma once

// Finite-dimensional operators on an N-point periodic grid: shift, frequency
// and wave-vector operators, projectors, uncertainty products, tight-binding
// Hamiltonians and the relativistic dispersion checks.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nrq::qops {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxGridPoints = 4096;
inline constexpr double kOperatorTol = 1e-12;
inline constexpr double kNormTol = 1e-10;

/// Periodic lattice t_i = i * spacing (or x_i), i = 0..N-1, extent N * spacing.
class Grid {
 public:
  /// Throws Error{InvalidArgument} unless 2 <= n_points <= kMaxGridPoints and
  /// spacing > 0.
  Grid(std::size_t n_points, double spacing);

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return spacing_; }
  double extent() const noexcept { return static_cast<double>(n_) * spacing_; }
  double point(std::size_t i) const noexcept { return static_cast<double>(i) * spacing_; }
  std::size_t wrap(std::ptrdiff_t i) const noexcept;

 private:
  std::size_t n_;
  double spacing_;
};

/// Normalized complex amplitude vector.
class StateVector {
 public:
  /// Rescales to unit norm. Throws Error{InvalidArgument} for a zero vector.
  static StateVector normalized(Vector amplitudes);
  /// Takes amplitudes as-is. Throws Error{InvalidArgument} if | |psi|^2 - 1 |
  /// exceeds kNormTol.
  static StateVector from_amplitudes(Vector amplitudes);
  static StateVector basis(std::size_t dimension, std::size_t index);

  const Vector& amplitudes() const noexcept { return amps_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
  double squared_norm() const noexcept { return amps_.squaredNorm(); }

  /// <this|other>. Throws Error{DimensionMismatch}.
  Complex inner(const StateVector& other) const;

 private:
  explicit StateVector(Vector v) : amps_(std::move(v)) {}
  Vector amps_;
};

struct OpFlags {
  bool hermitian = false;
  bool unitary = false;
};

/// Dense square operator. Flags are claims made by the constructing code;
/// the residual accessors compute the corresponding check on demand.
class LinearOp {
 public:
  /// Throws Error{DimensionMismatch} for a non-square matrix.
  explicit LinearOp(Matrix m, OpFlags flags = {});
  static LinearOp identity(std::size_t n);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const OpFlags& flags() const noexcept { return flags_; }

  /// max |A - A^dagger|
  double hermitian_residual() const;
  /// max |A^dagger A - I|
  double unitary_residual() const;
  /// Hermitian within kOperatorTol * max(1, max |A_ij|).
  bool is_hermitian() const;

  /// A psi. Throws Error{DimensionMismatch}.
  Vector apply(const StateVector& state) const;
  Vector apply(const Vector& v) const;

  LinearOp power(unsigned exponent) const;
  LinearOp scaled(double factor) const;

 private:
  Matrix m_;
  OpFlags flags_;
};

LinearOp operator*(const LinearOp& a, const LinearOp& b);

struct NaturalUnits {
  double hbar = 1.0;
  double c = 1.0;
  double mass_scale = 1.0;  // mu, the mass in frequency units: m = hbar * mu

  double mass() const noexcept { return hbar * mass_scale; }
  /// Throws Error{InvalidArgument} unless every field is positive.
  void validate() const;
};

// -- periodic shift and Fourier modes --------------------------------------

/// Cyclic permutation |i> -> |i+1 mod N>.
LinearOp shift_operator(const Grid& grid);

/// omega_n = 2 pi n / (N spacing), n = 0..N-1.
double frequency_eigenvalue(const Grid& grid, std::size_t n);
/// k_j = 2 pi j / L folded onto the branch (-pi/spacing, pi/spacing].
double wavevector_eigenvalue(const Grid& grid, std::size_t j);
/// e^{-i omega_n spacing}, the shift operator's eigenvalue for mode n.
Complex shift_eigenvalue(const Grid& grid, std::size_t n);

/// (1/sqrt N) e^{i 2 pi n i / N}: the n-th DFT mode, which is at once the
/// frequency eigenstate on a time grid and the plane wave k_n on a space grid.
/// Throws Error{IndexOutOfRange} unless n < N.
StateVector fourier_eigenstate(const Grid& grid, std::size_t n);

/// Columns are fourier_eigenstate(grid, n) for n = 0..N-1.
Matrix fourier_basis(const Grid& grid);

/// max |A v - lambda v|.
double eigenpair_residual(const LinearOp& op, const StateVector& v, Complex lambda);

// -- observables -----------------------------------------------------------

/// F diag(omega_n) F^dagger.
LinearOp frequency_operator(const Grid& grid);
/// F diag(k_j) F^dagger with the symmetric branch.
LinearOp wavevector_operator(const Grid& grid);
/// diag(point(i)): position on a space grid, chronological operator on a
/// time grid.
LinearOp position_operator(const Grid& grid);
/// (i / spacing)(T - 1), the forward-difference frequency operator. Used as
/// a comparison form for frequency_operator; not Hermitian.
LinearOp finite_difference_frequency_operator(const Grid& grid);

/// <psi|A|psi>. Throws Error{DimensionMismatch}.
Complex expectation(const LinearOp& op, const StateVector& state);

/// |mu><mu|.
LinearOp projector(const StateVector& onto);

/// |<outcome|state>|^2. Throws Error{DimensionMismatch}.
double born_probability(const StateVector& state, const StateVector& outcome);

/// AB - BA. Throws Error{DimensionMismatch}.
LinearOp commutator(const LinearOp& a, const LinearOp& b);
LinearOp anticommutator(const LinearOp& a, const LinearOp& b);

/// <A^2> - <A>^2 (clamped at zero). Throws Error{NonHermitianInput}.
double variance(const LinearOp& a, const StateVector& state);

/// sigma_A sigma_B. Throws Error{NonHermitianInput} unless both are Hermitian.
double uncertainty_product(const StateVector& state, const LinearOp& a, const LinearOp& b);

/// (1/2) |<[A, B]>|, the Robertson lower bound on uncertainty_product.
double robertson_bound(const StateVector& state, const LinearOp& a, const LinearOp& b);

/// Normalized Gaussian exp(-(x - center)^2 / (4 width^2) + i carrier x), so
/// that width is the position standard deviation for a packet far from the
/// grid edges.
StateVector gaussian_packet(const Grid& grid, double center, double width,
                            double carrier = 0.0);

// -- dynamics ----------------------------------------------------------------

/// Frequency operator with on-site terms epsilon(x_i) and hoppings
/// <x_{i+r}|H|x_i> = -t_r, <x_{i-r}|H|x_i> = -conj(t_r).
/// Throws Error{HoppingRangeTooLarge} unless hoppings.size() < N / 2.
LinearOp tight_binding_hamiltonian(const Grid& grid,
                                   const std::function<double(double)>& onsite,
                                   std::span<const Complex> hoppings);

/// Nearest-neighbour hopping for the mass scale: 1/(2 mu) = t spacing^2.
double hopping_for_mass(const Grid& grid, const NaturalUnits& units);

/// hbar * omega.
LinearOp energy_operator(const LinearOp& frequency, const NaturalUnits& units);

struct BandPoint {
  double k = 0.0;
  double omega = 0.0;
};

/// <k|H|k> for every plane wave, sorted by k on the symmetric branch. Valid
/// as a spectrum for translation-invariant H (constant on-site term).
std::vector<BandPoint> plane_wave_band(const Grid& grid, const LinearOp& hamiltonian);

/// e^{-i H t / hbar} from one eigendecomposition, reusable for many times.
class Propagator {
 public:
  /// Throws Error{NonHermitianInput}; Error{InvalidArgument} for bad units.
  Propagator(const LinearOp& hamiltonian, const NaturalUnits& units = {});

  StateVector evolve(const StateVector& state, double time) const;
  const Eigen::VectorXd& eigenvalues() const noexcept { return energies_; }

 private:
  Matrix vectors_;
  Eigen::VectorXd energies_;
  double hbar_;
};

StateVector evolve(const StateVector& state, const LinearOp& hamiltonian, double time,
                   const NaturalUnits& units = {});

// -- relativistic ------------------------------------------------------------

/// sqrt(c^2 k^2 + (m c^2 / hbar)^2). Throws Error{InvalidArgument} for m < 0.
double klein_gordon_dispersion(double k, double mass, const NaturalUnits& units);

/// Inserts the plane wave e^{i(k_j x - omega t)} into
/// [-d_x^2 + (1/c^2) d_t^2 + (m c / hbar)^2] psi with spectral derivatives in
/// space (the wave-vector operator) and in time (over one temporal period
/// sampled at `time_points`), and returns the max absolute residual.
double klein_gordon_residual(const Grid& space, std::size_t mode, double mass,
                             const NaturalUnits& units, std::size_t time_points = 16);

using Matrix4 = Eigen::Matrix4cd;

struct DiracRepresentation {
  std::array<Matrix4, 3> alpha;
  Matrix4 beta;
};

/// Dirac-Pauli representation: beta = diag(1, 1, -1, -1),
/// alpha_i = [[0, sigma_i], [sigma_i, 0]].
DiracRepresentation standard_dirac_representation();

struct DiracReport {
  double algebra_residual = 0.0;  // worst of the relations below
  double alpha_square_residual = 0.0;
  double beta_square_residual = 0.0;
  double alpha_anticommutator_residual = 0.0;
  double alpha_beta_anticommutator_residual = 0.0;
  double hermitian_residual = 0.0;
  std::array<double, 4> eigenvalues{};  // of c alpha.k + m c^2 beta, ascending
};

/// Checks alpha_i^2 = beta^2 = 1, {alpha_i, alpha_j} = 0 (i != j),
/// {alpha_i, beta} = 0 and diagonalizes c alpha.k + m c^2 beta.
/// Throws Error{BadRepresentation} if any residual exceeds kOperatorTol.
DiracReport dirac_check(const DiracRepresentation& rep, const std::array<double, 3>& k,
                        double mass, const NaturalUnits& units);

}  // namespace nrq::qops
