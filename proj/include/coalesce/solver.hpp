#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coalesce/config.hpp"
#include "coalesce/core.hpp"
#include "coalesce/flux.hpp"

namespace coalesce {

/// Zero pivot during elimination.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or runaway state during time stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::size_t step)
      : Error(what + " at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Tridiagonal matrix stored by diagonals.
struct TridiagonalSystem {
  std::vector<double> sub;   ///< n-1 entries, row k+1 column k
  std::vector<double> diag;  ///< n entries
  std::vector<double> sup;   ///< n-1 entries, row k column k+1

  std::size_t size() const noexcept { return diag.size(); }
  /// y = A x
  std::vector<double> multiply(std::span<const double> x) const;
  void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Solves A x = rhs by the Thomas algorithm. Throws SingularSystemError.
std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs);

/// Precomputed forward sweep of the Thomas algorithm for repeated solves.
class TridiagonalFactor {
 public:
  explicit TridiagonalFactor(const TridiagonalSystem& sys);
  /// Solves in place: on entry `x` holds the right-hand side.
  void solve_in_place(std::span<double> x) const;

 private:
  std::vector<double> sub_;
  std::vector<double> inv_pivot_;
  std::vector<double> upper_;
};

/// Crank-Nicolson matrices A+ (implicit side) and A- (explicit side).
struct CrankNicolsonMatrices {
  TridiagonalSystem plus;
  TridiagonalSystem minus;
};

/// Number of unknowns: the Dirichlet node at x_min is not an unknown.
std::size_t unknown_count(const SpatialGrid& grid, BoundaryCondition bc_left);

/// Diagonal 1 +- tau/h^2, off-diagonals -+ tau/(2h^2); the coupling into a
/// Neumann end row is doubled (ghost node mirrors its interior neighbour).
CrankNicolsonMatrices assemble_matrices(const SpatialGrid& grid, double tau,
                                        BoundaryCondition bc_left);

/// Centred flux differences f(u[k+1]) - f(u[k-1]) over the unknowns. A
/// Dirichlet left end contributes f(0) as the missing neighbour; Neumann
/// end rows vanish.
std::vector<double> assemble_b(const FluxSpec& spec, std::span<const double> u,
                               BoundaryCondition bc_left);

/// One predictor-corrector step on the unknowns of `config`:
///   u*      = A+^{-1} (A- u + tau/(2h) b(u))
///   u^{m+1} = A+^{-1} (A- u + tau/(4h) b(u) + tau/(4h) b(u*))
std::vector<double> step(const SimConfig& config, const CrankNicolsonMatrices& matrices,
                         std::span<const double> u_m);

/// Reusable stepper holding the factorised A+ and scratch space.
class Stepper {
 public:
  explicit Stepper(const SimConfig& config);

  /// Advances the unknowns in place by one step.
  void advance(std::span<double> u);

  std::size_t unknowns() const noexcept { return n_; }

 private:
  FluxSpec flux_;
  BoundaryCondition bc_left_;
  std::size_t n_;
  double explicit_weight_;  ///< tau/(4h)
  CrankNicolsonMatrices matrices_;
  TridiagonalFactor factor_;
  std::vector<double> a_minus_u_;
  std::vector<double> b_current_;
  std::vector<double> b_predicted_;
  std::vector<double> u_star_;
  std::vector<double> flux_values_;
};

/// Nodal profile (all grid nodes) from the unknowns.
std::vector<double> to_nodes(std::span<const double> unknowns, BoundaryCondition bc_left);
/// Unknowns from a nodal profile.
std::vector<double> to_unknowns(std::span<const double> nodes, BoundaryCondition bc_left);

struct RunResult {
  Trajectory trajectory;
  InterfaceTrack track;
  std::vector<std::string> warnings;
};

/// Runs `config` to t_end. Stores a snapshot every snapshot_stride steps
/// (plus the first and last) and extracts zeros after every step. A
/// Dirichlet boundary node is not reported as a zero.
/// Throws BlowUpError on non-finite values or when the state leaves twice
/// the range of the initial data.
RunResult run(const SimConfig& config);

/// Trapezoid integral of u - reference over the grid.
double discrete_mass(const Snapshot& snap, double reference);
/// Trapezoid integral of (u - reference)^2 over the grid.
double discrete_energy(const Snapshot& snap, double reference);

}  // namespace coalesce
