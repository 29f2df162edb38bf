#ifndef TANAKA_MODEL_HPP
#define TANAKA_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tanaka/vectorfield.hpp"

namespace tanaka {

/// A named chart with a distribution frame: the in-memory form of a model
/// source. All defined fields are kept (also those outside the frame) so that
/// marked fields and symmetry candidates can be looked up by name.
struct Model {
  std::string name;
  Chart chart;
  std::vector<std::string> field_order; // definition order, for round-trips
  std::map<std::string, VectorField> fields;
  std::string distribution_name = "D";
  std::vector<std::string> distribution; // names of the frame fields
  std::map<std::string, std::string> marked; // role -> field name
  std::optional<PointQ> base_point;

  std::vector<VectorField> frame() const {
    std::vector<VectorField> out;
    out.reserve(distribution.size());
    for (const std::string& n : distribution) out.push_back(fields.at(n));
    return out;
  }

  const VectorField* find_field(const std::string& n) const {
    const auto it = fields.find(n);
    return it == fields.end() ? nullptr : &it->second;
  }

  bool operator==(const Model& o) const = default;
};

} // namespace tanaka

#endif
