#pragma once

// Thermodynamic system definitions: a named fundamental equation Phi(E^a)
// with variable list, domain constraints, and a potential-class tag.
// Catalog files are line-oriented `key = value` text.

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gtd/expr.hpp"

namespace gtd {

struct SystemDefinition {
  std::string name;
  std::string potential_name;            // e.g. "S" or "U"
  std::vector<std::string> variables;    // the E^a, ordered
  expr::Expression equation;             // Phi(E^a)
  std::vector<expr::Expression> domain;  // constraints: expr > 0
  std::string potential_class;           // fundamental | legendre | diffeomorphic

  int dim() const { return static_cast<int>(variables.size()); }

  bool in_domain(std::span<const double> E) const;
  void require_in_domain(std::span<const double> E) const;

  double potential(std::span<const double> E) const;

  /// Phi evaluated over jets of the given order at E.
  Jet potential_jet(std::span<const double> E, int order) const;
};

/// Parse a catalog file's bytes into a validated SystemDefinition.
SystemDefinition parse_system(std::string_view text);

SystemDefinition load_system_file(const std::string& path);

/// The shipped catalog (ideal_gas, van_der_waals, rn_black_hole,
/// multicomponent_ideal_gas).
const std::vector<SystemDefinition>& builtin_catalog();

/// Look up by name: files `<dir>/<name>.sys` when `catalog_dir` is set
/// (or the GTD_CATALOG_DIR environment variable), else the built-ins.
SystemDefinition find_system(const std::string& name,
                             const std::optional<std::string>& catalog_dir = {});

/// Names available for `find_system`, in listing order.
std::vector<SystemDefinition> list_systems(
    const std::optional<std::string>& catalog_dir = {});

}  // namespace gtd
