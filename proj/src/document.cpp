#include "iet/document.hpp"

#include <fstream>
#include <sstream>

namespace iet {

void RunConfig::validate() const {
  if (horizon < 2) throw DocumentError("horizon must be >= 2");
  if (window < 1 || window >= horizon) throw DocumentError("window must satisfy 0 < window < horizon");
  if (series_length < 1) throw DocumentError("series length must be >= 1");
  if (refinement_depth_max < 1) throw DocumentError("refinement depth must be >= 1");
  if (format != "json" && format != "csv") throw DocumentError("format must be json or csv");
}

Json RunConfig::to_json() const {
  Json j;
  j["horizon"] = horizon;
  j["window"] = window;
  j["series"] = series_length;
  j["basis_depth"] = refinement_depth_max;
  return j;
}

namespace {

BasisPtr basis_from_json(const Json& j, int depth_max) {
  if (!j.is_array() || j.empty()) throw DocumentError("basis must be a nonempty array");
  std::vector<GeneratorDesc> gens;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& g = j[i];
    if (g.is_string()) {
      if (g.get<std::string>() != "1")
        throw DocumentError("string basis generators must be \"1\"");
      gens.push_back(GeneratorDesc::unit());
    } else if (g.is_object() && g.contains("sqrt")) {
      gens.push_back(GeneratorDesc::sqrt_of(parse_rational(g["sqrt"].get<std::string>())));
    } else if (g.is_object() && g.contains("product")) {
      gens.push_back(GeneratorDesc::product_of(g["product"].get<std::vector<int>>()));
    } else {
      throw DocumentError("basis generator " + std::to_string(i) +
                          " must be \"1\", {\"sqrt\": \"p/q\"} or {\"product\": [i,...]}");
    }
  }
  try {
    return std::make_shared<Basis>(std::move(gens), depth_max);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(std::string("invalid basis: ") + e.what());
  }
}

Scalar scalar_from_json(const Json& j, const BasisPtr& b,
                        const std::map<std::string, Scalar>& named) {
  if (j.is_string()) {
    auto it = named.find(j.get<std::string>());
    if (it == named.end()) throw DocumentError("unknown scalar constant '" + j.get<std::string>() + "'");
    return it->second;
  }
  if (!j.is_array()) throw DocumentError("a scalar must be an array of rational strings or a name");
  if (static_cast<int>(j.size()) != b->size())
    throw DocumentError("scalar has " + std::to_string(j.size()) + " coordinates, basis has " +
                        std::to_string(b->size()));
  std::vector<Rational> coords;
  for (const Json& c : j) coords.push_back(parse_rational(c.get<std::string>()));
  return Scalar(b, std::move(coords));
}

}  // namespace

Document Document::parse_text(const std::string& text, int refinement_depth_max) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("document parse error: ") + e.what());
  }
  Document doc;
  if (!j.contains("basis")) throw DocumentError("document needs a \"basis\" declaration");
  doc.basis_ = basis_from_json(j["basis"], refinement_depth_max);

  if (j.contains("scalars")) {
    if (!j["scalars"].is_object()) throw DocumentError("\"scalars\" must be an object");
    for (auto it = j["scalars"].begin(); it != j["scalars"].end(); ++it) {
      if (doc.scalars_.count(it.key())) throw DocumentError("duplicate scalar name " + it.key());
      doc.scalars_.emplace(it.key(), scalar_from_json(it.value(), doc.basis_, doc.scalars_));
    }
  }
  if (j.contains("iets")) {
    if (!j["iets"].is_object()) throw DocumentError("\"iets\" must be an object");
    for (auto it = j["iets"].begin(); it != j["iets"].end(); ++it) {
      const std::string& name = it.key();
      const Json& body = it.value();
      try {
        if (body.contains("pi")) {
          PiLambda data;
          data.pi = body["pi"].get<std::vector<int>>();
          for (const Json& l : body.at("lambda"))
            data.lambda.push_back(scalar_from_json(l, doc.basis_, doc.scalars_));
          doc.iets_.emplace(name, Iet::from_pi_lambda(data));
        } else if (body.contains("cuts")) {
          std::vector<Scalar> cuts, trans;
          for (const Json& c : body["cuts"]) cuts.push_back(scalar_from_json(c, doc.basis_, doc.scalars_));
          for (const Json& t : body.at("trans")) trans.push_back(scalar_from_json(t, doc.basis_, doc.scalars_));
          doc.iets_.emplace(name, Iet::from_cuts(doc.basis_, std::move(cuts), std::move(trans)));
        } else {
          throw DocumentError("an IET needs either pi/lambda or cuts/trans");
        }
      } catch (const std::invalid_argument& e) {
        throw DocumentError("iet '" + name + "': " + e.what());
      } catch (const nlohmann::json::exception& e) {
        throw DocumentError("iet '" + name + "': " + e.what());
      }
    }
  }
  return doc;
}

Document Document::parse_file(const std::string& path, int refinement_depth_max) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), refinement_depth_max);
}

const Iet& Document::iet(const std::string& name) const {
  auto it = iets_.find(name);
  if (it == iets_.end()) throw DocumentError("unknown iet '" + name + "'");
  return it->second;
}

Json basis_to_json(const Basis& b) {
  Json out = Json::array();
  for (const GeneratorDesc& g : b.generators()) {
    switch (g.kind) {
      case GeneratorDesc::Kind::Unit:
        out.push_back("1");
        break;
      case GeneratorDesc::Kind::SqrtRational:
        out.push_back(Json{{"sqrt", rational_string(g.radicand)}});
        break;
      case GeneratorDesc::Kind::ProductOfSqrts:
        out.push_back(Json{{"product", g.factors}});
        break;
    }
  }
  return out;
}

Json scalar_to_json(const Scalar& s) {
  Json out = Json::array();
  for (const Rational& c : s.coords()) out.push_back(rational_string(c));
  return out;
}

Json iet_to_json(const Iet& f) {
  Json out;
  Json cuts = Json::array(), trans = Json::array();
  for (const Scalar& c : f.cuts()) cuts.push_back(scalar_to_json(c));
  for (const Scalar& t : f.trans()) trans.push_back(scalar_to_json(t));
  out["cuts"] = std::move(cuts);
  out["trans"] = std::move(trans);
  out["artificial_zero"] = f.zero_is_artificial();
  return out;
}

Json saf_to_json(const SafInvariant& phi) {
  Json entries = Json::array();
  for (const auto& [i, j, v] : phi.sparse()) entries.push_back(Json::array({i, j, rational_string(v)}));
  Json out;
  out["entries"] = std::move(entries);
  out["zero"] = phi.is_zero();
  return out;
}

Json arc_to_json(const CircArc& a) {
  Json out;
  out["start"] = scalar_to_json(a.start);
  out["length"] = scalar_to_json(a.length);
  return out;
}

namespace {

const char* certainty_name(Certainty c) {
  return c == Certainty::Exact ? "exact" : "horizon_stable";
}

const char* resolution_name(Resolution r) {
  switch (r) {
    case Resolution::Resolving: return "resolving";
    case Resolution::Nonresolving: return "nonresolving";
    default: return "unknown";
  }
}

Json status_to_json(const DiscontinuityStatus& st) {
  Json out;
  out["point"] = scalar_to_json(st.point);
  out["periodic"] = st.periodic;
  if (st.periodic) out["period"] = st.period;
  out["periodic_certainty"] = certainty_name(st.periodic_certainty);
  out["fundamental"] = st.fundamental;
  out["fundamental_certainty"] = certainty_name(st.fundamental_certainty);
  out["chain_length"] = st.chain_length;
  out["chain_certified_infinite"] = st.chain_certified_infinite;
  out["resolution"] = resolution_name(st.resolution);
  out["resolution_step"] = st.resolution_step;
  return out;
}

}  // namespace

Json verdict_to_json(const GrowthVerdict& v) {
  Json out;
  switch (v.kind) {
    case GrowthVerdict::Kind::Bounded:
      out["kind"] = "bounded";
      out["bound"] = v.bound;
      break;
    case GrowthVerdict::Kind::Linear:
      out["kind"] = "linear";
      out["k"] = v.k;
      break;
    default:
      out["kind"] = "undetermined";
      break;
  }
  if (v.kind != GrowthVerdict::Kind::Undetermined) {
    out["n0"] = v.n0;
    out["certainty"] = certainty_name(v.certainty);
  }
  out["horizon"] = v.horizon;
  out["window"] = v.window;
  out["series_checked_to"] = v.series_checked_to;
  Json wit = Json::array();
  for (const auto& st : v.witnesses) wit.push_back(status_to_json(st));
  out["fundamental_discontinuities"] = std::move(wit);
  return out;
}

Json decomposition_to_json(const ComponentDecomposition& dec) {
  Json out;
  Json per = Json::array();
  for (const auto& part : dec.periodic_parts) {
    Json arcs = Json::array();
    for (const CircArc& a : part.arcs) arcs.push_back(arc_to_json(a));
    per.push_back(Json{{"period", part.period}, {"arcs", std::move(arcs)}});
  }
  out["periodic_parts"] = std::move(per);
  Json mins = Json::array();
  for (const auto& cand : dec.minimal_candidates) {
    Json arcs = Json::array();
    for (const CircArc& a : cand) arcs.push_back(arc_to_json(a));
    mins.push_back(std::move(arcs));
  }
  out["minimal_candidates"] = std::move(mins);
  out["minimal_certainty"] = "horizon_stable";
  out["permutation"] = dec.permutation;
  out["stabilized"] = dec.stabilized;
  out["refinement_depth"] = dec.refinement_depth;
  return out;
}

std::string series_to_csv(const std::vector<long>& series) {
  std::ostringstream out;
  out << "n,d\n";
  for (size_t n = 0; n < series.size(); ++n) out << (n + 1) << "," << series[n] << "\n";
  return out.str();
}

std::string word_bound_to_csv(const WordBound& wb) {
  std::ostringstream out;
  out << "n,bound,method\n";
  for (const auto& e : wb.bounds)
    out << e.n << "," << e.bound << "," << (e.from_cocycle ? "cocycle" : "disc") << "\n";
  return out.str();
}

CommandResult cmd_validate(const Document& doc, const RunConfig& cfg) {
  CommandResult res;
  res.json["command"] = "validate";
  res.json["config"] = cfg.to_json();
  res.json["basis"] = basis_to_json(*doc.basis());
  Json items = Json::array();
  for (const auto& [name, f] : doc.iets()) {
    Json item;
    item["name"] = name;
    item["valid"] = true;  // parse-time validation already passed
    item["d"] = f.d();
    item["delta"] = f.delta();
    item["arcs"] = f.arc_count();
    item["canonical"] = iet_to_json(f);
    items.push_back(std::move(item));
  }
  res.json["iets"] = std::move(items);
  res.files["validate.json"] = res.json.dump(2) + "\n";
  return res;
}

CommandResult cmd_growth(const Document& doc, const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  const Iet& f = doc.iet(name);
  CommandResult res;
  GrowthVerdict v = classify_growth(f, cfg.horizon, cfg.window);
  std::vector<long> series = growth_series(f, cfg.series_length);
  res.json["command"] = "growth";
  res.json["name"] = name;
  res.json["config"] = cfg.to_json();
  res.json["verdict"] = verdict_to_json(v);
  res.files[name + "_series.csv"] = series_to_csv(series);
  if (cfg.require_certified && v.kind == GrowthVerdict::Kind::Undetermined) res.exit_code = 3;
  res.files[name + "_growth.json"] = res.json.dump(2) + "\n";
  return res;
}

CommandResult cmd_saf(const Document& doc, const std::string& name, const RunConfig& cfg) {
  const Iet& f = doc.iet(name);
  CommandResult res;
  res.json["command"] = "saf";
  res.json["name"] = name;
  res.json["config"] = cfg.to_json();
  res.json["basis"] = basis_to_json(*doc.basis());
  res.json["saf"] = saf_to_json(saf(f));
  res.files[name + "_saf.json"] = res.json.dump(2) + "\n";
  return res;
}

CommandResult cmd_distortion(const Document& doc, const std::vector<std::string>& generator_names,
                             const std::string& target, long N, std::optional<int> index,
                             const RunConfig& cfg) {
  const Iet& f = doc.iet(target);
  std::vector<Iet> S;
  for (const std::string& g : generator_names) S.push_back(doc.iet(g));
  WordBound wb = undistortion_bounds(S, f, N, index);
  CommandResult res;
  res.json["command"] = "distortion";
  res.json["target"] = target;
  res.json["generators"] = generator_names;
  res.json["config"] = cfg.to_json();
  res.json["N"] = N;
  res.json["M_disc"] = wb.M_disc;
  res.json["M_coc"] = rational_string(wb.M_coc);
  res.json["index"] = wb.index;
  res.json["requested_index"] = wb.requested_index;
  res.json["index_was_substituted"] = wb.index_was_substituted;
  res.json["no_bound_available"] = wb.no_bound_available;
  if (!wb.no_bound_available) res.files[target + "_bounds.csv"] = word_bound_to_csv(wb);
  res.files[target + "_distortion.json"] = res.json.dump(2) + "\n";
  return res;
}

CommandResult cmd_structure(const Document& doc, const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  const Iet& f = doc.iet(name);
  CommandResult res;
  res.json["command"] = "structure";
  res.json["name"] = name;
  res.json["config"] = cfg.to_json();

  OrderResult ord = order(f, cfg.horizon);
  Json oj;
  oj["finite"] = ord.finite;
  if (ord.finite) oj["order"] = ord.order;
  oj["certainty"] = certainty_name(ord.certainty);
  res.json["order"] = std::move(oj);

  res.json["components"] = decomposition_to_json(components(f, cfg.horizon));

  if (auto rr = detect_restricted_rotation(f)) {
    Json rj;
    rj["interval"] = arc_to_json(rr->rotor_interval);
    rj["alpha"] = scalar_to_json(rr->alpha);
    rj["beta"] = scalar_to_json(rr->beta);
    rj["gamma"] = scalar_to_json(rr->gamma);
    res.json["restricted_rotation"] = std::move(rj);
  } else {
    res.json["restricted_rotation"] = nullptr;
  }

  GrowthVerdict gv = classify_growth(f, cfg.horizon, cfg.window);
  if (!ord.finite && gv.kind == GrowthVerdict::Kind::Bounded) {
    if (auto nf = bounded_normal_form(f, cfg.horizon)) {
      Json rotors = Json::array();
      for (const auto& r : nf->rotors) {
        Json rj;
        rj["interval"] = arc_to_json(r.rotor_interval);
        rj["alpha"] = scalar_to_json(r.alpha);
        rj["beta"] = scalar_to_json(r.beta);
        rj["gamma"] = scalar_to_json(r.gamma);
        rotors.push_back(std::move(rj));
      }
      res.json["normal_form"] = Json{{"k", nf->k}, {"rotors", std::move(rotors)}};
    } else {
      res.json["normal_form"] = "undetermined";
      if (cfg.require_certified) res.exit_code = 3;
    }
  } else {
    res.json["normal_form"] = nullptr;  // needs infinite order and bounded growth
  }
  res.files[name + "_structure.json"] = res.json.dump(2) + "\n";
  return res;
}

CommandResult cmd_centralizer(const Document& doc, const std::string& name, long n,
                              const RunConfig& cfg) {
  const Iet& g = doc.iet(name);
  CommandResult res;
  res.json["command"] = "centralizer";
  res.json["name"] = name;
  res.json["n"] = n;
  res.json["config"] = cfg.to_json();
  Rational one_over_n(1, n);
  Iet r = Iet::rotation(g.basis(), Scalar::from_rational(g.basis(), one_over_n));
  bool comm = commutes(g, r);
  res.json["commutes"] = comm;
  if (!comm) {
    res.json["error"] = "g does not commute with r_{1/n}";
    res.exit_code = 2;
    return res;
  }
  auto [p, e] = centralizer_factor(g, n);
  Json pj;
  Json breaks = Json::array();
  for (const Scalar& u : p.breaks) breaks.push_back(scalar_to_json(u));
  pj["n"] = p.n;
  pj["breakpoints"] = std::move(breaks);
  pj["values"] = p.values;
  res.json["p"] = std::move(pj);
  res.json["p_iet"] = iet_to_json(p.to_iet(g.basis()));
  res.json["e"] = iet_to_json(e);
  res.files[name + "_centralizer.json"] = res.json.dump(2) + "\n";
  return res;
}

}  // namespace iet
