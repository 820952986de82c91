#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "schrolab/spectral/grid.hpp"

namespace schrolab::norms {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Fourier-Lebesgue exponents: regularity s and r in [2, inf). The norm is the
/// L^{r'} norm of <xi>^s f_hat with r' = r / (r - 1).
class NormSpec {
 public:
  /// Throws SpecError unless 2 <= r < inf and s is finite.
  NormSpec(double s, double r);

  double s() const noexcept { return s_; }
  double r() const noexcept { return r_; }
  double conjugate() const noexcept { return r_conj_; }

 private:
  double s_;
  double r_;
  double r_conj_;
};

struct FullBox {};
struct Ball {
  Vec center{0.0, 0.0, 0.0};
  double radius = 1.0;
};
struct Box {
  Vec lo{0.0, 0.0, 0.0};
  Vec hi{0.0, 0.0, 0.0};
};

/// Physical-space region. A grid cell belongs to it iff its node does.
using Region = std::variant<FullBox, Ball, Box>;

bool contains(const Region& region, const Vec& x, int dim) noexcept;
std::string describe(const Region& region);

/// Throws InputError when the region leaves the grid box [-L/2, L/2]^n.
void validate_region(const Region& region, const spectral::SpectralGrid& grid);

/// Flat indices of the nodes inside `region`, ascending.
std::vector<std::size_t> region_nodes(const Region& region, const spectral::SpectralGrid& grid);

/// L^{q_space}_x L^{p_time}_t, restricted to `region`. Exponents in [1, inf].
class MixedNormSpec {
 public:
  MixedNormSpec(double q_space, double p_time, Region region = FullBox{});

  double q_space() const noexcept { return q_; }
  double p_time() const noexcept { return p_; }
  const Region& region() const noexcept { return region_; }

 private:
  double q_;
  double p_;
  Region region_;
};

/// Strictly increasing, nonempty list of sample times.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  /// `per_decade` points per decade over `decades` decades ending at t_max,
  /// optionally preceded by t = 0.
  static TimeGrid geometric(double t_max, int decades = 4, int per_decade = 64, bool include_zero = true);
  static TimeGrid uniform(double t_min, double t_max, std::size_t count);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  double front() const noexcept { return times_.front(); }
  double back() const noexcept { return times_.back(); }

  /// Inserts a midpoint between every consecutive pair (geometric mean when
  /// both ends are positive). The result contains this grid.
  TimeGrid refined() const;

 private:
  std::vector<double> times_;
};

/// {x : |g(x)| > alpha} with its cell-weighted measure.
struct LevelSet {
  double alpha = 0.0;
  double measure = 0.0;
};

}  // namespace schrolab::norms
