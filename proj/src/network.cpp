#include "dcrn/network.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dcrn/format.hpp"

namespace dcrn {

ReactionNetwork::ReactionNetwork(std::vector<std::string> species_names, std::vector<Reaction> reactions)
    : reactions_(std::move(reactions)) {
  if (species_names.empty()) throw std::invalid_argument("network declares no species");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < species_names.size(); ++i) {
    if (!seen.insert(species_names[i]).second)
      throw std::invalid_argument("duplicate species '" + species_names[i] + "'");
    species_.push_back({static_cast<int>(i), std::move(species_names[i])});
  }
  const auto n = static_cast<Eigen::Index>(species_.size());
  for (std::size_t k = 0; k < reactions_.size(); ++k) {
    const auto& r = reactions_[k];
    const std::string where = "reaction " + std::to_string(k + 1);
    if (r.source.size() != n || r.product.size() != n)
      throw std::invalid_argument(where + ": complex length does not match species count");
    if ((r.source.coeffs.array() < 0).any() || (r.product.coeffs.array() < 0).any())
      throw std::invalid_argument(where + ": negative stoichiometric coefficient");
    if (!(r.rate > 0.0) || !std::isfinite(r.rate))
      throw std::invalid_argument(where + ": rate constant must be positive");
    if (r.source == r.product) throw std::invalid_argument(where + ": source equals product");
    max_delay_ = std::max(max_delay_, r.kernel.support());
  }
}

int ReactionNetwork::species_index(std::string_view name) const {
  for (const auto& s : species_)
    if (s.name == name) return s.index;
  return -1;
}

bool ReactionNetwork::delay_free() const {
  return std::all_of(reactions_.begin(), reactions_.end(),
                     [](const Reaction& r) { return r.kernel.is_zero_delay(); });
}

bool ReactionNetwork::all_point_mass() const {
  return std::all_of(reactions_.begin(), reactions_.end(),
                     [](const Reaction& r) { return r.kernel.is_point_mass(); });
}

Complex ReactionNetwork::complex_from(const std::vector<std::pair<std::string, int>>& terms) const {
  Complex c{Eigen::VectorXi::Zero(num_species())};
  for (const auto& [name, coeff] : terms) {
    const int i = species_index(name);
    if (i < 0) throw std::invalid_argument("unknown species '" + name + "'");
    c.coeffs[i] += coeff;
  }
  return c;
}

std::string to_text(const ReactionNetwork& net, const Complex& c) {
  std::string out;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c.coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (c.coeffs[i] != 1) out += std::to_string(c.coeffs[i]) + " ";
    out += net.species()[i].name;
  }
  return out.empty() ? "0" : out;
}

std::string to_text(const ReactionNetwork& net) {
  std::ostringstream os;
  os << "species";
  for (const auto& s : net.species()) os << ' ' << s.name;
  os << '\n';
  for (const auto& r : net.reactions()) {
    os << "reaction " << to_text(net, r.source) << " -> " << to_text(net, r.product) << " ; rate "
       << format_double(r.rate) << " ; delay " << r.kernel.describe() << '\n';
  }
  return os.str();
}

std::uint64_t network_hash(const ReactionNetwork& net) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_text(net)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

ReactionNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open network file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  auto slash = path.find_last_of('/');
  return parse_network(buf.str(), slash == std::string::npos ? "." : path.substr(0, slash));
}

}  // namespace dcrn
