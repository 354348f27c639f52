#include "gtd/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gtd {

bool SystemDefinition::in_domain(std::span<const double> E) const {
  if (static_cast<int>(E.size()) != dim()) return false;
  std::map<std::string, double> env;
  for (int i = 0; i < dim(); ++i) env[variables[i]] = E[i];
  for (const auto& c : domain) {
    try {
      if (expr::evaluate(c, env) <= 0.0) return false;
    } catch (const DomainError&) {
      return false;
    }
  }
  return true;
}

void SystemDefinition::require_in_domain(std::span<const double> E) const {
  if (!in_domain(E)) {
    std::ostringstream os;
    os << "point outside domain of system '" << name << "': (";
    for (std::size_t i = 0; i < E.size(); ++i)
      os << (i ? "," : "") << E[i];
    os << ")";
    throw DomainError(os.str());
  }
}

double SystemDefinition::potential(std::span<const double> E) const {
  std::map<std::string, double> env;
  for (int i = 0; i < dim(); ++i) env[variables[i]] = E[i];
  return expr::evaluate(equation, env);
}

Jet SystemDefinition::potential_jet(std::span<const double> E, int order) const {
  auto seeds = seed_jets(E, order);
  std::map<std::string, Jet> env;
  for (int i = 0; i < dim(); ++i) env.emplace(variables[i], seeds[i]);
  return expr::evaluate(equation, env);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s, std::size_t line_off) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"')
    throw ParseError("expected quoted string, got '" + s + "'", line_off);
  return s.substr(1, s.size() - 2);
}

std::vector<std::string> parse_list(const std::string& s, std::size_t off) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("expected [\"...\"] list, got '" + s + "'", off);
  std::vector<std::string> out;
  std::string inner = s.substr(1, s.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(unquote(item, off));
  }
  return out;
}

/// "expr > 0" -> expr
expr::Expression parse_constraint(const std::string& s, std::size_t off) {
  std::size_t gt = s.rfind('>');
  if (gt == std::string::npos)
    throw ParseError("domain constraint must have the form 'expr > 0'", off);
  std::string rhs = trim(s.substr(gt + 1));
  if (rhs != "0")
    throw ParseError("domain constraint right-hand side must be 0", off);
  return expr::parse(s.substr(0, gt));
}

}  // namespace

SystemDefinition parse_system(std::string_view text) {
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    std::size_t line_off = pos;
    pos = eol + 1;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    if (t.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value' line", line_off);
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string val = trim(std::string_view(t).substr(eq + 1));
    if (key.empty() || val.empty())
      throw ParseError("empty key or value", line_off);
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line_off);
    kv[key] = {val, line_off};
    if (eol == text.size()) break;
  }

  auto require = [&](const std::string& key) -> std::pair<std::string, std::size_t> {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ParseError("missing required field '" + key + "'", 0);
    return it->second;
  };

  SystemDefinition sys;
  {
    auto [v, off] = require("name");
    sys.name = unquote(v, off);
  }
  {
    auto [v, off] = require("potential");
    sys.potential_name = unquote(v, off);
  }
  {
    auto [v, off] = require("variables");
    sys.variables = parse_list(v, off);
    if (sys.variables.empty())
      throw ParseError("variables list must be non-empty", off);
    std::set<std::string> seen;
    for (const auto& name : sys.variables)
      if (!seen.insert(name).second)
        throw ParseError("duplicate variable '" + name + "'", off);
  }
  {
    auto [v, off] = require("equation");
    sys.equation = expr::parse(unquote(v, off));
    for (const auto& used : expr::variables(sys.equation))
      if (std::find(sys.variables.begin(), sys.variables.end(), used) ==
          sys.variables.end())
        throw ParseError("equation uses unknown variable '" + used + "'", off);
  }
  if (auto it = kv.find("domain"); it != kv.end()) {
    for (const auto& c : parse_list(it->second.first, it->second.second))
      sys.domain.push_back(parse_constraint(c, it->second.second));
  }
  sys.potential_class = "fundamental";
  if (auto it = kv.find("class"); it != kv.end()) {
    sys.potential_class = unquote(it->second.first, it->second.second);
    if (sys.potential_class != "fundamental" &&
        sys.potential_class != "legendre" &&
        sys.potential_class != "diffeomorphic")
      throw ParseError("unknown potential class '" + sys.potential_class + "'",
                       it->second.second);
  }
  return sys;
}

SystemDefinition load_system_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open catalog file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_system(ss.str());
}

namespace {

constexpr const char* kIdealGas = R"(# monatomic ideal gas, entropy representation, reduced units
name = "ideal_gas"
potential = "S"
variables = ["U", "V"]
equation = "3/2*ln(U)+ln(V)"
domain = ["U > 0", "V > 0"]
class = "fundamental"
)";

constexpr const char* kVanDerWaals = R"(# van der Waals fluid, entropy representation, reduced units a=3, b=1
name = "van_der_waals"
potential = "S"
variables = ["U", "V"]
equation = "3/2*ln(U+3/V)+ln(V-1)"
domain = ["V - 1 > 0", "U + 3/V > 0"]
class = "fundamental"
)";

constexpr const char* kRnBlackHole = R"(# Reissner-Nordstrom black hole, mass representation, horizon units
name = "rn_black_hole"
potential = "M"
variables = ["S", "Q"]
equation = "(sqrt(S) + Q^2/sqrt(S))/2"
domain = ["S > 0", "S - Q^2 > 0"]
class = "fundamental"
)";

constexpr const char* kMulticomponent = R"(# two-species ideal-gas-like energy potential, reduced non-extensive form
name = "multicomponent_ideal_gas"
potential = "U"
variables = ["S", "V", "N1", "N2"]
equation = "exp(2*S/3) * V^(-2/3) * (N1^(5/3) + N2^(5/3))"
domain = ["V > 0", "N1 > 0", "N2 > 0"]
class = "fundamental"
)";

}  // namespace

const std::vector<SystemDefinition>& builtin_catalog() {
  static const std::vector<SystemDefinition> catalog = [] {
    std::vector<SystemDefinition> out;
    for (const char* text :
         {kIdealGas, kVanDerWaals, kRnBlackHole, kMulticomponent})
      out.push_back(parse_system(text));
    return out;
  }();
  return catalog;
}

namespace {

std::optional<std::string> effective_dir(
    const std::optional<std::string>& catalog_dir) {
  if (catalog_dir) return catalog_dir;
  if (const char* env = std::getenv("GTD_CATALOG_DIR")) return std::string(env);
  return std::nullopt;
}

}  // namespace

SystemDefinition find_system(const std::string& name,
                             const std::optional<std::string>& catalog_dir) {
  auto dir = effective_dir(catalog_dir);
  if (dir) {
    auto path = std::filesystem::path(*dir) / (name + ".sys");
    if (std::filesystem::exists(path)) return load_system_file(path.string());
    throw std::runtime_error("unknown system '" + name + "' (no " +
                             path.string() + ")");
  }
  for (const auto& sys : builtin_catalog())
    if (sys.name == name) return sys;
  throw std::runtime_error("unknown system '" + name + "'");
}

std::vector<SystemDefinition> list_systems(
    const std::optional<std::string>& catalog_dir) {
  auto dir = effective_dir(catalog_dir);
  if (!dir) return builtin_catalog();
  std::vector<SystemDefinition> out;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(*dir))
    if (entry.path().extension() == ".sys") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) out.push_back(load_system_file(p.string()));
  return out;
}

}  // namespace gtd
