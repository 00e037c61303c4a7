#include "pwalk/setmodel.hpp"

#include <cmath>
#include <mutex>
#include <random>
#include <unordered_map>

namespace pwalk {

std::string to_string(Membership m) {
  switch (m) {
    case Membership::No: return "no";
    case Membership::Yes: return "yes";
    case Membership::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

constexpr std::size_t kIndexedWindowLimit = 1000000;
constexpr double kEagerPairLimit = double(1u << 24);

}  // namespace

struct WindowSet::Index {
  enum class Mode { Eager, Lazy, Scan };
  Mode mode = Mode::Scan;
  std::once_flag built;
  std::vector<bool> diffs;  // eager: indexed by shifted offset
  std::mutex mutex;
  std::unordered_map<std::size_t, bool> memo;
};

WindowSet::WindowSet(std::size_t dim, std::size_t side, std::vector<bool> members)
    : dim_(dim), side_(side), members_(std::move(members)), index_(std::make_shared<Index>()) {
  if (dim_ == 0 || side_ == 0) throw SetModelError("window needs positive dimension and side");
  double cells = std::pow(double(side_), double(dim_));
  if (cells > 1e9) throw SetModelError("window too large");
  if (members_.size() != static_cast<std::size_t>(cells))
    throw SetModelError("membership bitset has " + std::to_string(members_.size()) + " cells, window has " +
                        std::to_string(static_cast<std::size_t>(cells)));
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!members_[i]) continue;
    Point p(dim_);
    std::size_t r = i;
    for (std::size_t j = 0; j < dim_; ++j) {
      p[j] = static_cast<long>(r % side_);
      r /= side_;
    }
    points_.push_back(std::move(p));
  }
  if (members_.size() <= kIndexedWindowLimit)
    index_->mode = double(points_.size()) * double(points_.size()) <= kEagerPairLimit ? Index::Mode::Eager
                                                                                        : Index::Mode::Lazy;
}

WindowSet WindowSet::random(std::size_t dim, std::size_t side, double density, std::uint64_t seed) {
  if (!(density >= 0 && density <= 1)) throw SetModelError("density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  const std::size_t cells = static_cast<std::size_t>(std::pow(double(side), double(dim)));
  std::vector<bool> members(cells);
  for (std::size_t i = 0; i < cells; ++i) members[i] = std::ldexp(double(rng() >> 11), -53) < density;
  return WindowSet(dim, side, std::move(members));
}

WindowSet WindowSet::from_predicate(std::size_t dim, std::size_t side, const std::function<bool(const Point&)>& pred) {
  const std::size_t cells = static_cast<std::size_t>(std::pow(double(side), double(dim)));
  std::vector<bool> members(cells);
  Point p(dim, 0);
  for (std::size_t i = 0; i < cells; ++i) {
    std::size_t r = i;
    for (std::size_t j = 0; j < dim; ++j) {
      p[j] = static_cast<long>(r % side);
      r /= side;
    }
    members[i] = pred(p);
  }
  return WindowSet(dim, side, std::move(members));
}

WindowSet WindowSet::from_points(std::size_t dim, std::size_t side, const std::vector<Point>& points) {
  const std::size_t cells = static_cast<std::size_t>(std::pow(double(side), double(dim)));
  std::vector<bool> members(cells);
  WindowSet probe(dim, side, std::vector<bool>(cells));
  for (const auto& p : points) {
    const auto i = probe.flat(p);
    if (!i) throw SetModelError("point outside the window");
    members[*i] = true;
  }
  return WindowSet(dim, side, std::move(members));
}

double WindowSet::density() const { return double(points_.size()) / double(members_.size()); }

std::optional<std::size_t> WindowSet::flat(const Point& v) const {
  if (v.size() != dim_) return std::nullopt;
  std::size_t idx = 0;
  for (std::size_t j = dim_; j-- > 0;) {
    if (v[j] < 0 || static_cast<std::size_t>(v[j]) >= side_) return std::nullopt;
    idx = idx * side_ + static_cast<std::size_t>(v[j]);
  }
  return idx;
}

bool WindowSet::contains(const Point& v) const {
  const auto i = flat(v);
  return i && members_[*i];
}

bool WindowSet::contains(const std::vector<Integer>& v) const {
  if (v.size() != dim_) throw SetModelError("dimension mismatch");
  Point p(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] < 0 || v[j] >= Integer(static_cast<unsigned long>(side_))) return false;
    p[j] = v[j].get_si();
  }
  return contains(p);
}

bool WindowSet::scan(const Point& w) const {
  Point q(dim_);
  for (const auto& b : points_) {
    for (std::size_t j = 0; j < dim_; ++j) q[j] = b[j] + w[j];
    if (contains(q)) return true;
  }
  return false;
}

bool WindowSet::contains_difference(const std::vector<Integer>& w) const {
  if (w.size() != dim_) throw SetModelError("dimension mismatch");
  const Integer bound(static_cast<unsigned long>(side_));
  Point off(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (abs(w[j]) >= bound) return false;
    off[j] = w[j].get_si();
  }
  // shifted offset index in [0, 2 side - 1)^dim
  const std::size_t span = 2 * side_ - 1;
  std::size_t key = 0;
  for (std::size_t j = dim_; j-- > 0;) key = key * span + static_cast<std::size_t>(off[j] + long(side_) - 1);

  switch (index_->mode) {
    case Index::Mode::Eager: {
      std::call_once(index_->built, [&] {
        std::size_t cells = 1;
        for (std::size_t j = 0; j < dim_; ++j) cells *= span;
        index_->diffs.assign(cells, false);
        for (const auto& a : points_)
          for (const auto& b : points_) {
            std::size_t k = 0;
            for (std::size_t j = dim_; j-- > 0;) k = k * span + static_cast<std::size_t>(a[j] - b[j] + long(side_) - 1);
            index_->diffs[k] = true;
          }
      });
      return index_->diffs[key];
    }
    case Index::Mode::Lazy: {
      {
        std::lock_guard lock(index_->mutex);
        if (auto it = index_->memo.find(key); it != index_->memo.end()) return it->second;
      }
      const bool r = scan(off);
      std::lock_guard lock(index_->mutex);
      index_->memo.emplace(key, r);
      return r;
    }
    case Index::Mode::Scan: return scan(off);
  }
  return false;
}

std::optional<WindowSet::Point> WindowSet::difference_pair(const std::vector<Integer>& w) const {
  if (w.size() != dim_) throw SetModelError("dimension mismatch");
  const Integer bound(static_cast<unsigned long>(side_));
  for (const auto& x : w)
    if (abs(x) >= bound) return std::nullopt;
  Point q(dim_);
  for (const auto& b : points_) {
    for (std::size_t j = 0; j < dim_; ++j) q[j] = b[j] + w[j].get_si();
    if (contains(q)) return b;
  }
  return std::nullopt;
}

void BohrSet::validate() const {
  if (dim == 0) throw SetModelError("Bohr set needs positive dimension");
  if (rows.empty()) throw SetModelError("Bohr set needs at least one frequency row");
  if (centers.size() != rows.size() || radii.size() != rows.size())
    throw SetModelError("Bohr set needs one center and one radius per frequency row");
  for (const auto& r : rows)
    if (r.size() != dim)
      throw SetModelError("frequency row of length " + std::to_string(r.size()) + ", expected " + std::to_string(dim));
  for (const auto& e : radii)
    if (!(e > 0 && e < Rational(1, 2))) throw SetModelError("arc radius must lie in (0, 1/2)");
  if (!(guard > 0)) throw SetModelError("guard band must be positive");
  if (digits < 20) throw SetModelError("precision must be at least 20 digits");
}

namespace {

using Kernels = std::vector<std::shared_ptr<const PhaseKernel>>;

Kernels make_kernels(const BohrSet& b) {
  Kernels out;
  for (const auto& r : b.rows) out.push_back(std::make_shared<PhaseKernel>(r, b.digits));
  return out;
}

Membership classify(const BohrSet& b, const Kernels& kernels, const std::vector<Integer>& v, bool difference) {
  if (v.size() != b.dim) throw SetModelError("dimension mismatch");
  bool unsure = false;
  for (std::size_t j = 0; j < b.rows.size(); ++j) {
    const Phase ph = (*kernels[j])(v);
    const ArcTest t = difference ? compare_distance(ph, 0, 2 * b.radii[j], b.guard)
                                 : compare_distance(ph, b.centers[j], b.radii[j], b.guard);
    if (t == ArcTest::Outside) return Membership::No;
    if (t == ArcTest::Indeterminate) unsure = true;
  }
  return unsure ? Membership::Indeterminate : Membership::Yes;
}

void require_dense(const BohrSet& b) {
  if (!b.dense_image)
    throw SetModelError("difference test on a Bohr set requires the dense-image (aperiodic) declaration");
}

}  // namespace

Membership bohr_membership(const BohrSet& b, const std::vector<Integer>& v) {
  b.validate();
  return classify(b, make_kernels(b), v, false);
}

Membership bohr_difference(const BohrSet& b, const std::vector<Integer>& w) {
  b.validate();
  require_dense(b);
  return classify(b, make_kernels(b), w, true);
}

std::optional<std::vector<Integer>> bohr_difference_pair(const BohrSet& b, const std::vector<Integer>& w,
                                                         std::uint64_t budget) {
  b.validate();
  const Kernels kernels = make_kernels(b);
  std::vector<Integer> base(b.dim, 0), shifted(b.dim);
  std::uint64_t tried = 0;
  for (std::int64_t j = 0; tried < budget; j = j > 0 ? -j : -j + 1) {
    for (std::size_t i = 0; i < b.dim && tried < budget; ++i) {
      if (j == 0 && i > 0) break;
      std::fill(base.begin(), base.end(), Integer(0));
      base[i] = Integer(static_cast<long>(j));
      ++tried;
      if (classify(b, kernels, base, false) != Membership::Yes) continue;
      for (std::size_t k = 0; k < b.dim; ++k) shifted[k] = base[k] + w[k];
      if (classify(b, kernels, shifted, false) == Membership::Yes) return base;
    }
  }
  return std::nullopt;
}

SetModel::SetModel(BohrSet b) : model_(std::move(b)) {
  const auto& bohr = std::get<BohrSet>(model_);
  bohr.validate();
  row_kernels_ = make_kernels(bohr);
}

std::size_t SetModel::dim() const {
  return is_window() ? window().dim() : bohr().dim;
}

std::string SetModel::describe() const {
  if (is_window()) {
    const auto& w = window();
    return "window dim=" + std::to_string(w.dim()) + " side=" + std::to_string(w.side()) +
           " count=" + std::to_string(w.count());
  }
  const auto& b = bohr();
  std::string out = "bohr dim=" + std::to_string(b.dim) + " torus=" + std::to_string(b.torus_dim());
  for (std::size_t j = 0; j < b.rows.size(); ++j) {
    out += " row" + std::to_string(j + 1) + "=(";
    for (std::size_t i = 0; i < b.dim; ++i) out += (i ? ", " : "") + b.rows[j][i].to_string();
    out += ") center=" + b.centers[j].get_str() + " eps=" + b.radii[j].get_str();
  }
  return out + " digits=" + std::to_string(b.digits) + (b.dense_image ? " dense-image" : "");
}

Membership SetModel::contains(const std::vector<Integer>& v) const {
  if (is_window()) return window().contains(v) ? Membership::Yes : Membership::No;
  return classify(bohr(), row_kernels_, v, false);
}

Membership diffset_membership(const SetModel& s, const std::vector<Integer>& w) {
  if (w.size() != s.dim())
    throw SetModelError("vector of length " + std::to_string(w.size()) + " for a set in dimension " +
                        std::to_string(s.dim()));
  if (s.is_window()) return s.window().contains_difference(w) ? Membership::Yes : Membership::No;
  require_dense(s.bohr());
  return classify(s.bohr(), s.row_kernels_, w, true);
}

}  // namespace pwalk
