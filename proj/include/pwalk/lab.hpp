#pragma once

#include "pwalk/fleeing.hpp"
#include "pwalk/kernels.hpp"
#include "pwalk/mpoly.hpp"
#include "pwalk/setmodel.hpp"
#include "pwalk/walk.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pwalk {

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SearchStatus { Found, Exhausted, Indeterminate };
std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<std::uint64_t> n;
  std::vector<Integer> point;  // S(n) v when found
  std::uint64_t scanned = 0;
  std::uint64_t indeterminate = 0;
};

/// Smallest n in [1, n_max] with S(n) v in B - B. Same answer for any job count.
SearchResult twisted_search(const Walk& s, const std::vector<Integer>& v, const SetModel& oracle, std::uint64_t n_max,
                            const ParallelConfig& cfg = {});

struct WitnessRecord {
  Integer target;
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<std::uint64_t> n;
  std::vector<Integer> start;
  std::vector<Integer> witness;
  std::optional<Integer> f_value;
  /// b with b and b + w both in B, when one was located
  std::optional<std::vector<Integer>> pair_base;
  std::size_t depth = 0;
  std::vector<std::uint64_t> exponents;
  std::uint64_t scanned = 0;
  std::uint64_t indeterminate = 0;
  double millis = 0;
};

struct ExperimentReport {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  MPoly form;
  std::vector<std::string> coords;
  std::vector<WitnessRecord> records;

  bool all_found() const;
  std::string text() const;
  /// target,status,n,w_1..w_d,f_value,millis
  std::string csv() const;
};

struct ExperimentOptions {
  std::uint64_t n_max = 100000;
  ParallelConfig parallel;
  std::uint64_t seed = 0;
  FleeingOptions fleeing;
  std::uint64_t pair_budget = 1u << 14;
};

/// Targets k^2 a (a != 0): start (k, k a, 0) under the symmetries of x y - P(z).
ExperimentReport magyar_experiment(const MPoly& p, const SetModel& oracle, const Integer& k,
                                   const std::vector<Integer>& targets, const ExperimentOptions& opts = {});

/// Targets c in k Z: start (c, 0) under the walk preserving x - P(y).
ExperimentReport bogolubov_experiment(const MPoly& p, const SetModel& oracle, const Integer& k,
                                      const std::vector<Integer>& targets, const ExperimentOptions& opts = {});

struct Revalidation {
  bool ok = false;
  std::string message;
};

/// Rechecks a Found record: F(w) == target by direct evaluation, and w in B - B
/// through an explicit pair or a fresh higher-precision difference test.
Revalidation revalidate(const WitnessRecord& r, const MPoly& form, const std::vector<std::string>& coords,
                        const SetModel& oracle);

}  // namespace pwalk
