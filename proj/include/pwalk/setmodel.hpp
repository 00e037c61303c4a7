#pragma once

#include "pwalk/frequency.hpp"
#include "pwalk/mpoly.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pwalk {

enum class Membership { No, Yes, Indeterminate };
std::string to_string(Membership m);

class SetModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset of the window [0, side)^dim.
class WindowSet {
 public:
  using Point = std::vector<long>;

  WindowSet(std::size_t dim, std::size_t side, std::vector<bool> members);
  static WindowSet random(std::size_t dim, std::size_t side, double density, std::uint64_t seed);
  static WindowSet from_predicate(std::size_t dim, std::size_t side, const std::function<bool(const Point&)>& pred);
  static WindowSet from_points(std::size_t dim, std::size_t side, const std::vector<Point>& points);

  std::size_t dim() const { return dim_; }
  std::size_t side() const { return side_; }
  std::size_t window_size() const { return members_.size(); }
  std::size_t count() const { return points_.size(); }
  double density() const;
  const std::vector<Point>& points() const { return points_; }

  bool contains(const Point& v) const;
  bool contains(const std::vector<Integer>& v) const;
  /// Some b with b, b + w in the set.
  bool contains_difference(const std::vector<Integer>& w) const;
  std::optional<Point> difference_pair(const std::vector<Integer>& w) const;

 private:
  struct Index;

  std::optional<std::size_t> flat(const Point& v) const;
  bool scan(const Point& w) const;

  std::size_t dim_, side_;
  std::vector<bool> members_;
  std::vector<Point> points_;
  std::shared_ptr<Index> index_;
};

/**
 * B = {v : frac(A v) in U}, U a product of open arcs |x_j - c_j| < eps_j.
 * dense_image declares the image of v -> A v dense in the torus; the
 * arc-overlap difference test requires it.
 */
struct BohrSet {
  std::size_t dim = 0;
  std::vector<std::vector<Frequency>> rows;  // D rows of length dim
  std::vector<Rational> centers;
  std::vector<Rational> radii;
  bool dense_image = true;
  unsigned digits = 60;
  Rational guard = Rational(1, Integer("1000000000000000000"));

  void validate() const;
  std::size_t torus_dim() const { return rows.size(); }
};

Membership bohr_membership(const BohrSet& b, const std::vector<Integer>& v);
Membership bohr_difference(const BohrSet& b, const std::vector<Integer>& w);
/// Searches b = j * e_i for an explicit pair b, b + w in B.
std::optional<std::vector<Integer>> bohr_difference_pair(const BohrSet& b, const std::vector<Integer>& w,
                                                         std::uint64_t budget = 1u << 16);

class SetModel {
 public:
  SetModel(WindowSet w) : model_(std::move(w)) {}  // NOLINT
  SetModel(BohrSet b);                               // NOLINT

  std::size_t dim() const;
  std::string describe() const;
  bool is_window() const { return std::holds_alternative<WindowSet>(model_); }
  const WindowSet& window() const { return std::get<WindowSet>(model_); }
  const BohrSet& bohr() const { return std::get<BohrSet>(model_); }

  Membership contains(const std::vector<Integer>& v) const;

 private:
  std::variant<WindowSet, BohrSet> model_;
  std::vector<std::shared_ptr<const PhaseKernel>> row_kernels_;
  friend Membership diffset_membership(const SetModel& s, const std::vector<Integer>& w);
};

/// w in B - B. Exact for windows; tri-state for Bohr sets.
Membership diffset_membership(const SetModel& s, const std::vector<Integer>& w);

}  // namespace pwalk
