#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcrn/dde.hpp"
#include "dcrn/history.hpp"

namespace dcrn {

/// Per-species history entries separated by ';' or whitespace:
///   zero | const c [c ...] | const(c) | affine(a,b) | sqrtaffine(a,b) | table(path) | c
/// affine(a,b) is a*s + b, sqrtaffine(a,b) is (a*s + b)^(1/2). A bare
/// `const` absorbs every number that follows it, one per species.
HistoryFunction parse_history_spec(std::string_view spec, int n, const std::string& base_dir = ".");

std::vector<int> parse_int_list(std::string_view text);

/// Header `t,x_1,...,x_n[,V][,C_1,...]`; one row per grid time.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Eigen::VectorXd* lyapunov = nullptr,
                          const Eigen::MatrixXd* conserved = nullptr);

/// Two columns (t, value) for species i.
void write_species_csv(std::ostream& os, const Trajectory& traj, int species);

std::string format_vector(const Eigen::VectorXd& v);
std::string format_vector(const Eigen::VectorXi& v);

/// Ordered `key: value` lines.
class Report {
 public:
  void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value);
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  void write(std::ostream& os) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace dcrn
