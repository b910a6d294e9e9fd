#include "dcrn/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dcrn/format.hpp"

namespace dcrn {
namespace {

std::vector<std::string> split_entries(std::string_view spec) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == ';' || std::isspace(static_cast<unsigned char>(c)))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses in history spec");
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double number_or_throw(std::string_view text) {
  auto v = parse_double(text);
  if (!v) throw std::invalid_argument("malformed number '" + std::string(text) + "' in history spec");
  return *v;
}

std::pair<double, double> two_args(std::string_view args) {
  const auto comma = args.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("expected two arguments in history spec");
  return {number_or_throw(args.substr(0, comma)), number_or_throw(args.substr(comma + 1))};
}

HistoryFunction::Table read_history_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open history table '" + path + "'");
  HistoryFunction::Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a) || a.front() == '#') continue;
    fields >> b;
    auto s = parse_double(a);
    auto v = parse_double(b);
    if (!s || !v) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("malformed row in history table '" + path + "'");
    }
    first = false;
    t.s.push_back(*s);
    t.v.push_back(*v);
  }
  if (t.s.empty()) throw std::invalid_argument("history table '" + path + "' is empty");
  return t;
}

}  // namespace

HistoryFunction parse_history_spec(std::string_view spec, int n, const std::string& base_dir) {
  std::vector<HistoryFunction::Component> parts;
  const auto entries = split_entries(spec);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string& e = entries[i];
    const auto open = e.find('(');
    if (open != std::string::npos) {
      if (e.back() != ')') throw std::invalid_argument("malformed history entry '" + e + "'");
      const std::string name = e.substr(0, open);
      const std::string args = e.substr(open + 1, e.size() - open - 2);
      if (name == "const") {
        parts.emplace_back(HistoryFunction::Constant{number_or_throw(args)});
      } else if (name == "affine") {
        auto [a, b] = two_args(args);
        parts.push_back(HistoryFunction::affine(a, b));
      } else if (name == "sqrtaffine") {
        auto [a, b] = two_args(args);
        parts.push_back(HistoryFunction::sqrt_affine(a, b));
      } else if (name == "table") {
        const std::string path = !args.empty() && args.front() == '/' ? args : base_dir + "/" + args;
        parts.emplace_back(read_history_table(path));
      } else {
        throw std::invalid_argument("unknown history family '" + name + "'");
      }
    } else if (e == "zero") {
      parts.emplace_back(HistoryFunction::Constant{0.0});
    } else if (e == "const") {
      std::size_t taken = 0;
      while (i + 1 < entries.size() && parse_double(entries[i + 1])) {
        parts.emplace_back(HistoryFunction::Constant{*parse_double(entries[++i])});
        ++taken;
      }
      if (taken == 0) throw std::invalid_argument("'const' needs at least one value");
    } else {
      parts.emplace_back(HistoryFunction::Constant{number_or_throw(e)});
    }
  }
  if (static_cast<int>(parts.size()) != n)
    throw std::invalid_argument("history spec gives " + std::to_string(parts.size()) + " components for " +
                                std::to_string(n) + " species");
  return HistoryFunction(std::move(parts));
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    auto v = parse_double(item);
    if (!v || *v != static_cast<int>(*v) || *v < 1) throw std::invalid_argument("expected positive integers in '" + std::string(text) + "'");
    out.push_back(static_cast<int>(*v));
    pos = comma + 1;
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Eigen::VectorXd* lyapunov,
                          const Eigen::MatrixXd* conserved) {
  const auto n = traj.states().rows();
  os << "t";
  for (Eigen::Index i = 0; i < n; ++i) os << ',' << traj.network().species()[i].name;
  if (lyapunov) os << ",V";
  if (conserved)
    for (Eigen::Index j = 0; j < conserved->cols(); ++j) os << ",C_" << j + 1;
  os << '\n';
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    os << format_double(traj.time(k));
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << format_double(traj.states()(i, k));
    if (lyapunov) os << ',' << format_double((*lyapunov)[k]);
    if (conserved)
      for (Eigen::Index j = 0; j < conserved->cols(); ++j) os << ',' << format_double((*conserved)(k, j));
    os << '\n';
  }
}

void write_species_csv(std::ostream& os, const Trajectory& traj, int species) {
  os << "t," << traj.network().species()[species].name << '\n';
  for (Eigen::Index k = 0; k < traj.samples(); ++k)
    os << format_double(traj.time(k)) << ',' << format_double(traj.states()(species, k)) << '\n';
}

std::string format_vector(const Eigen::VectorXd& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i], 10);
  return out + ")";
}

std::string format_vector(const Eigen::VectorXi& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

void Report::add(std::string key, double value) { add(std::move(key), format_double(value, 10)); }

void Report::write(std::ostream& os) const {
  for (const auto& [k, v] : entries_) os << k << ": " << v << '\n';
}

}  // namespace dcrn
