#include "flam/census.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "flam/error.hpp"
#include "flam/set_model.hpp"

namespace flam {

namespace {

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;
constexpr std::uint64_t kStoreLimit = std::uint64_t{1} << 26;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

// Runs `visit(g, powers)` for every map g on k points, where powers[n] is
// g^n as a flat array of k images. A numeral denotes, at each basis point
// g, the map g^n.
template <class Visit>
void for_each_map(std::size_t k, std::size_t max, Visit visit) {
  std::vector<std::uint32_t> g(k, 0);
  std::vector<std::uint32_t> powers((max + 1) * k);
  for (;;) {
    for (std::size_t u = 0; u < k; ++u) powers[u] = static_cast<std::uint32_t>(u);
    for (std::size_t n = 1; n <= max; ++n) {
      const std::uint32_t* prev = &powers[(n - 1) * k];
      std::uint32_t* cur = &powers[n * k];
      for (std::size_t u = 0; u < k; ++u) cur[u] = g[prev[u]];
    }
    visit(powers);
    std::size_t i = 0;
    while (i < k && ++g[i] == k) g[i++] = 0;
    if (i == k) return;
  }
}

}  // namespace

CensusReport church_census(const TypePtr& tau, const Field& field, const CensusOptions& opts) {
  std::uint64_t k = opts.model == Model::Vec ? VecSpace(tau, field).vcount() : SetSpace(tau).size();
  std::uint64_t maps = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    maps *= k;
    if (maps > kEnumerationGuard) throw GuardError("the base type has too many maps to enumerate");
  }
  std::uint64_t work = maps * k * (opts.max + 1);
  if (work > kDefaultBudget && !opts.slow) {
    throw GuardError("census needs about " + std::to_string(work) + " table operations; pass --slow");
  }
  bool fingerprint = opts.fingerprint || work > kStoreLimit;

  CensusReport r{tau, field.modulus(), opts, std::vector<std::size_t>(opts.max + 1), {}};
  auto assign = [&](const auto& keys) {
    std::map<std::decay_t<decltype(keys[0])>, std::size_t> ids;
    for (std::size_t n = 0; n <= opts.max; ++n) {
      auto [it, fresh] = ids.try_emplace(keys[n], r.classes.size());
      if (fresh) r.classes.emplace_back();
      r.class_of[n] = it->second;
      r.classes[it->second].push_back(n);
    }
  };

  if (!fingerprint) {
    std::vector<std::vector<std::uint32_t>> dens(opts.max + 1);
    for_each_map(k, opts.max, [&](const std::vector<std::uint32_t>& powers) {
      for (std::size_t n = 0; n <= opts.max; ++n) dens[n].insert(dens[n].end(), powers.begin() + n * k, powers.begin() + (n + 1) * k);
    });
    assign(dens);
    return r;
  }

  std::vector<std::uint64_t> hashes(opts.max + 1, 0);
  for_each_map(k, opts.max, [&](const std::vector<std::uint32_t>& powers) {
    for (std::size_t n = 0; n <= opts.max; ++n) {
      for (std::size_t u = 0; u < k; ++u) hashes[n] = mix(hashes[n], powers[n * k + u]);
    }
  });
  assign(hashes);

  // Confirm every hash class member against its representative.
  bool collision = false;
  for_each_map(k, opts.max, [&](const std::vector<std::uint32_t>& powers) {
    for (std::size_t n = 0; n <= opts.max; ++n) {
      std::size_t rep = r.classes[r.class_of[n]][0];
      for (std::size_t u = 0; u < k; ++u) collision = collision || powers[n * k + u] != powers[rep * k + u];
    }
  });
  if (collision) throw InternalError("fingerprint collision between distinct numerals");
  return r;
}

std::uint64_t census_formula(std::uint32_t p) {
  std::uint64_t l = 1;
  for (std::uint64_t i = 2; i <= p; ++i) l = std::lcm(l, i);
  return l + p - 1;
}

std::string census_csv(const CensusReport& r) {
  std::ostringstream os;
  os << "n,class\n";
  for (std::size_t n = 0; n < r.class_of.size(); ++n) os << n << ',' << r.class_of[n] << '\n';
  return os.str();
}

std::string census_text(const CensusReport& r) {
  std::ostringstream os;
  os << "type: " << to_string(r.base) << '\n';
  os << "model: " << (r.options.model == Model::Vec ? "vec" : "set") << '\n';
  if (r.options.model == Model::Vec) os << "field: " << r.p << '\n';
  os << "numerals: 0.." << r.options.max << '\n';
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    os << "class " << c << ':';
    for (std::size_t n : r.classes[c]) os << ' ' << n;
    os << '\n';
  }
  os << "distinct: " << r.distinct() << '\n';
  return os.str();
}

Matrix numeral_matrix(std::size_t n, const TypePtr& tau, const Field& field) {
  return to_matrix(vec_denote(closed_judgment(church_numeral(n, tau)), field));
}

}  // namespace flam
