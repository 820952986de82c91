#include "schrolab/norms/specs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schrolab/error.hpp"

namespace schrolab::norms {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool valid_exponent(double e) { return e >= 1.0 && !std::isnan(e); }
}  // namespace

NormSpec::NormSpec(double s, double r) : s_(s), r_(r), r_conj_(0.0) {
  if (!std::isfinite(s)) throw SpecError("regularity s must be finite");
  if (!(r >= 2.0)) throw SpecError("Fourier-Lebesgue exponent must satisfy r >= 2, got r = " + std::to_string(r));
  if (!std::isfinite(r)) throw SpecError("Fourier-Lebesgue exponent must be finite (r < inf)");
  r_conj_ = r / (r - 1.0);
}

bool contains(const Region& region, const Vec& x, int dim) noexcept {
  return std::visit(overloaded{
                        [](const FullBox&) { return true; },
                        [&](const Ball& b) {
                          double r2 = 0.0;
                          for (int d = 0; d < dim; ++d) {
                            const double dx = x[static_cast<std::size_t>(d)] - b.center[static_cast<std::size_t>(d)];
                            r2 += dx * dx;
                          }
                          return r2 <= b.radius * b.radius;
                        },
                        [&](const Box& b) {
                          for (int d = 0; d < dim; ++d) {
                            const auto i = static_cast<std::size_t>(d);
                            if (x[i] < b.lo[i] || x[i] > b.hi[i]) return false;
                          }
                          return true;
                        },
                    },
                    region);
}

std::string describe(const Region& region) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const FullBox&) { os << "box"; },
                 [&](const Ball& b) {
                   os << "ball(" << b.center[0] << ';' << b.center[1] << ';' << b.center[2] << ';' << b.radius << ')';
                 },
                 [&](const Box& b) {
                   os << "cube(" << b.lo[0] << ';' << b.lo[1] << ';' << b.lo[2] << ';' << b.hi[0] << ';' << b.hi[1]
                      << ';' << b.hi[2] << ')';
                 },
             },
             region);
  return os.str();
}

void validate_region(const Region& region, const spectral::SpectralGrid& grid) {
  const double half = 0.5 * grid.extent();
  const int dim = grid.dim();
  std::visit(overloaded{
                 [](const FullBox&) {},
                 [&](const Ball& b) {
                   if (!(b.radius > 0.0)) throw InputError("ball radius must be positive");
                   for (int d = 0; d < dim; ++d) {
                     const double c = b.center[static_cast<std::size_t>(d)];
                     if (c - b.radius < -half || c + b.radius > half)
                       throw InputError("ball " + describe(region) + " leaves the grid box");
                   }
                 },
                 [&](const Box& b) {
                   for (int d = 0; d < dim; ++d) {
                     const auto i = static_cast<std::size_t>(d);
                     if (!(b.lo[i] <= b.hi[i])) throw InputError("box region has lo > hi");
                     if (b.lo[i] < -half || b.hi[i] > half)
                       throw InputError("box " + describe(region) + " leaves the grid box");
                   }
                 },
             },
             region);
}

std::vector<std::size_t> region_nodes(const Region& region, const spectral::SpectralGrid& grid) {
  validate_region(region, grid);
  std::vector<std::size_t> nodes;
  if (std::holds_alternative<FullBox>(region)) {
    nodes.resize(grid.node_count());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
    return nodes;
  }
  for (std::size_t i = 0; i < grid.node_count(); ++i)
    if (contains(region, grid.position(i), grid.dim())) nodes.push_back(i);
  return nodes;
}

MixedNormSpec::MixedNormSpec(double q_space, double p_time, Region region)
    : q_(q_space), p_(p_time), region_(std::move(region)) {
  if (!valid_exponent(q_space) || !valid_exponent(p_time))
    throw SpecError("mixed norm exponents must lie in [1, inf]");
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw InputError("time grid must be nonempty");
  for (double t : times_)
    if (!std::isfinite(t)) throw InputError("time grid entries must be finite");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1])) throw InputError("time grid must be strictly increasing");
}

TimeGrid TimeGrid::geometric(double t_max, int decades, int per_decade, bool include_zero) {
  if (!(t_max > 0.0) || decades < 1 || per_decade < 1)
    throw InputError("geometric time grid needs t_max > 0, decades >= 1, per_decade >= 1");
  const int count = decades * per_decade;
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(count) + 2);
  if (include_zero) t.push_back(0.0);
  for (int i = 0; i <= count; ++i)
    t.push_back(t_max * std::pow(10.0, -static_cast<double>(count - i) / per_decade));
  t.back() = t_max;
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::uniform(double t_min, double t_max, std::size_t count) {
  if (count < 2 || !(t_max > t_min)) throw InputError("uniform time grid needs count >= 2 and t_max > t_min");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i)
    t[i] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(count - 1);
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::refined() const {
  std::vector<double> t;
  t.reserve(2 * times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (i > 0) {
      const double a = times_[i - 1], b = times_[i];
      double mid = (a > 0.0 && b > 0.0) ? std::sqrt(a * b) : 0.5 * (a + b);
      if (!(mid > a && mid < b)) mid = 0.5 * (a + b);
      if (mid > a && mid < b) t.push_back(mid);
    }
    t.push_back(times_[i]);
  }
  return TimeGrid(std::move(t));
}

}  // namespace schrolab::norms
