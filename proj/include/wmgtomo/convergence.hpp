#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wmgtomo {

enum class SolveStatus { converged, max_iterations, breakdown };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max-iterations";
    case SolveStatus::breakdown: return "breakdown";
  }
  return "unknown";
}

/// One row per iteration; row 0 is the initial guess with rel_res == 1.
struct ConvergenceRecord {
  struct Entry {
    std::size_t iteration = 0;
    double rel_res = 1.0;
    std::optional<double> rel_l2;
    std::optional<double> rel_linf;
    double seconds = 0.0;
  };

  std::vector<Entry> entries;
  SolveStatus status = SolveStatus::max_iterations;

  bool has_errors() const { return !entries.empty() && entries.front().rel_l2.has_value(); }
  const Entry& last() const { return entries.back(); }
};

/// Index k minimizing the relative L2 error (first one on ties).
inline std::size_t find_kopt(const ConvergenceRecord& record) {
  if (!record.has_errors()) throw std::invalid_argument("find_kopt: record carries no error data");
  std::size_t best = 0;
  for (std::size_t k = 1; k < record.entries.size(); ++k) {
    if (!record.entries[k].rel_l2) throw std::invalid_argument("find_kopt: incomplete error data");
    if (*record.entries[k].rel_l2 < *record.entries[best].rel_l2) best = k;
  }
  return record.entries[best].iteration;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace wmgtomo
