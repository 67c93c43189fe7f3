#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "iet/growth.hpp"
#include "iet/invariants.hpp"
#include "iet/structure.hpp"

namespace iet {

using Json = nlohmann::ordered_json;

struct RunConfig {
  long horizon = 2000;
  long window = 200;
  long series_length = 500;
  int refinement_depth_max = 256;
  std::string format = "json";  // "json" | "csv"
  bool require_certified = false;

  void validate() const;
  Json to_json() const;
};

class DocumentError : public std::runtime_error {
 public:
  explicit DocumentError(const std::string& what) : std::runtime_error(what) {}
};

// A parsed input document: one basis declaration, named scalar constants,
// named IETs (pi/lambda or cuts/trans form). Every IET is validated
// (bijectivity, canonical form) on load.
class Document {
 public:
  static Document parse_text(const std::string& text, int refinement_depth_max = 256);
  static Document parse_file(const std::string& path, int refinement_depth_max = 256);

  const BasisPtr& basis() const { return basis_; }
  const std::map<std::string, Scalar>& scalars() const { return scalars_; }
  const std::map<std::string, Iet>& iets() const { return iets_; }
  const Iet& iet(const std::string& name) const;

 private:
  BasisPtr basis_;
  std::map<std::string, Scalar> scalars_;
  std::map<std::string, Iet> iets_;
};

Json basis_to_json(const Basis& b);
Json scalar_to_json(const Scalar& s);
Json iet_to_json(const Iet& f);
Json saf_to_json(const SafInvariant& phi);
Json verdict_to_json(const GrowthVerdict& v);
Json decomposition_to_json(const ComponentDecomposition& dec);
Json arc_to_json(const CircArc& a);

std::string series_to_csv(const std::vector<long>& series);
std::string word_bound_to_csv(const WordBound& wb);

struct CommandResult {
  Json json;
  std::map<std::string, std::string> files;  // filename -> content
  int exit_code = 0;
};

CommandResult cmd_validate(const Document& doc, const RunConfig& cfg);
CommandResult cmd_growth(const Document& doc, const std::string& name, const RunConfig& cfg);
CommandResult cmd_saf(const Document& doc, const std::string& name, const RunConfig& cfg);
CommandResult cmd_distortion(const Document& doc, const std::vector<std::string>& generator_names,
                             const std::string& target, long N, std::optional<int> index,
                             const RunConfig& cfg);
CommandResult cmd_structure(const Document& doc, const std::string& name, const RunConfig& cfg);
CommandResult cmd_centralizer(const Document& doc, const std::string& name, long n,
                              const RunConfig& cfg);

}  // namespace iet
