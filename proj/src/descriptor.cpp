#include "kmw/descriptor.hpp"

#include "kmw/error.hpp"

namespace kmw {

GroupDescriptor GroupDescriptor::from_group(const AbGroup& g, std::string label) {
  GroupDescriptor d;
  d.free_rank = static_cast<long>(g.free_rank());
  d.cyclic_factors = g.invariant_factors();
  d.label = std::move(label);
  return d;
}

void GroupDescriptor::absorb(const GroupDescriptor& other) {
  if (!free_rank || !other.free_rank)
    free_rank.reset();
  else
    *free_rank += *other.free_rank;
  cyclic_factors.insert(cyclic_factors.end(), other.cyclic_factors.begin(), other.cyclic_factors.end());
  symbolic.insert(symbolic.end(), other.symbolic.begin(), other.symbolic.end());
  provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
}

bool GroupDescriptor::is_zero() const {
  if (!free_rank || *free_rank != 0 || !symbolic.empty()) return false;
  for (const auto& d : cyclic_factors)
    if (d != 1) return false;
  return true;
}

Int GroupDescriptor::torsion_order() const {
  Int n = 1;
  for (const auto& d : cyclic_factors) n *= d;
  return n;
}

std::string GroupDescriptor::describe() const {
  std::vector<std::string> parts;
  if (!free_rank)
    parts.push_back("Z^inf");
  else if (*free_rank == 1)
    parts.push_back("Z");
  else if (*free_rank > 1)
    parts.push_back("Z^" + std::to_string(*free_rank));
  for (const auto& d : cyclic_factors)
    if (d != 1) parts.push_back("Z/" + d.get_str());
  for (const auto& s : symbolic) parts.push_back(s.name);
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

nlohmann::json GroupDescriptor::to_json() const {
  nlohmann::json j;
  j["free_rank"] = free_rank ? nlohmann::json(*free_rank) : nlohmann::json("inf");
  j["cyclic_factors"] = ints_json(cyclic_factors);
  j["symbolic"] = nlohmann::json::array();
  for (const auto& s : symbolic) j["symbolic"].push_back({{"name", s.name}, {"cite", s.cite}});
  j["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);
  j["label"] = label;
  if (!provenance.empty()) j["provenance"] = provenance;
  return j;
}

nlohmann::json int_json(const Int& n) { return n.get_str(); }

nlohmann::json ints_json(const std::vector<Int>& v) {
  auto a = nlohmann::json::array();
  for (const auto& n : v) a.push_back(n.get_str());
  return a;
}

nlohmann::json matrix_json(const IntMatrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  auto e = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) e.push_back(m(i, k).get_str());
  j["entries"] = std::move(e);
  return j;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    std::size_t r = j.at("rows").get<std::size_t>();
    std::size_t c = j.at("cols").get<std::size_t>();
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != r * c) throw Error(Errc::InvalidInput, "matrix entry count mismatch");
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r * c; ++i) {
      const auto& v = e[i];
      if (v.is_string())
        m(i / c, i % c) = Int(v.get<std::string>());
      else if (v.is_number_integer())
        m(i / c, i % c) = Int(static_cast<long>(v.get<long long>()));
      else
        throw Error(Errc::InvalidInput, "matrix entries must be integers");
    }
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::InvalidInput, std::string("bad matrix JSON: ") + ex.what());
  } catch (const std::invalid_argument&) {
    throw Error(Errc::InvalidInput, "bad integer in matrix JSON");
  }
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
  for (long p = 2; p <= bound; ++p) {
    if (!sieve[p]) continue;
    out.push_back(p);
    for (long m = p * p; m <= bound; m += p) sieve[m] = false;
  }
  return out;
}

}  // namespace kmw
