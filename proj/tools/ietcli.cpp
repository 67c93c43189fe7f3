// Batch front end: parse an IET document, run analyses, emit verdict JSON
// and plot-ready CSV series.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "iet/document.hpp"

namespace {

struct GlobalOpts {
  std::string doc_path;
  std::string out_dir;
  iet::RunConfig cfg;
};

void add_common(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("doc", g.doc_path, "input document (.json)")->required();
  cmd->add_option("--horizon", g.cfg.horizon, "orbit horizon (default 2000)");
  cmd->add_option("--window", g.cfg.window, "stability window (default 200)");
  cmd->add_option("--series", g.cfg.series_length, "series length N (default 500)");
  cmd->add_option("--basis-depth", g.cfg.refinement_depth_max,
                  "maximum enclosure refinement depth (default 256)");
  cmd->add_option("--format", g.cfg.format, "stdout format: json|csv");
  cmd->add_flag("--require-certified", g.cfg.require_certified,
                "exit 3 on undetermined verdicts");
  cmd->add_option("--out-dir", g.out_dir, "directory for emitted files");
}

int finish(const iet::CommandResult& res, const GlobalOpts& g, const std::string& csv_key = "") {
  if (!g.out_dir.empty()) {
    std::filesystem::create_directories(g.out_dir);
    for (const auto& [name, content] : res.files) {
      std::ofstream out(std::filesystem::path(g.out_dir) / name);
      out << content;
    }
  }
  if (g.cfg.format == "csv" && !csv_key.empty() && res.files.count(csv_key))
    std::cout << res.files.at(csv_key);
  else
    std::cout << res.json.dump(2) << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact interval exchange toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::string name;
  std::string target;
  std::vector<std::string> generators;
  long N = 200;
  long n = 2;
  int index = -1;

  CLI::App* validate = app.add_subcommand("validate", "validate a document");
  add_common(validate, g);

  CLI::App* growth = app.add_subcommand("growth", "discontinuity growth verdict and series");
  add_common(growth, g);
  growth->add_option("name", name, "IET name")->required();

  CLI::App* safc = app.add_subcommand("saf", "scissors invariant");
  add_common(safc, g);
  safc->add_option("name", name, "IET name")->required();

  CLI::App* dist = app.add_subcommand("distortion", "word-length lower bounds");
  add_common(dist, g);
  dist->add_option("--generators", generators, "generator IET names")->required();
  dist->add_option("--target", target, "target IET name")->required();
  dist->add_option("-N,--length", N, "bound horizon (default 200)");
  dist->add_option("--index", index, "cocycle generator index (>= 1)");

  CLI::App* structure = app.add_subcommand("structure", "components and normal form");
  add_common(structure, g);
  structure->add_option("name", name, "IET name")->required();

  CLI::App* centralizer = app.add_subcommand("centralizer", "P_n x E^n factorization");
  add_common(centralizer, g);
  centralizer->add_option("name", name, "IET name")->required();
  centralizer->add_option("-n", n, "rotation denominator")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    g.cfg.validate();
    iet::Document doc = iet::Document::parse_file(g.doc_path, g.cfg.refinement_depth_max);
    if (validate->parsed()) return finish(iet::cmd_validate(doc, g.cfg), g);
    if (growth->parsed())
      return finish(iet::cmd_growth(doc, name, g.cfg), g, name + "_series.csv");
    if (safc->parsed()) return finish(iet::cmd_saf(doc, name, g.cfg), g);
    if (dist->parsed()) {
      std::optional<int> idx;
      if (index >= 0) idx = index;
      return finish(iet::cmd_distortion(doc, generators, target, N, idx, g.cfg), g,
                    target + "_bounds.csv");
    }
    if (structure->parsed()) return finish(iet::cmd_structure(doc, name, g.cfg), g);
    if (centralizer->parsed()) return finish(iet::cmd_centralizer(doc, name, n, g.cfg), g);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const iet::DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    // malformed input is a usage error, failed validation a data error
    return std::string(e.what()).find("parse error") != std::string::npos ? 1 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
