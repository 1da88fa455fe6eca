#include "vlmc/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vlmc {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw invalid_input("malformed JSON");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Model model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw invalid_input("model JSON needs a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "comb") {
    CombSpec comb;
    comb.q0 = j.at("q0").get<double>();
    comb.qinf = j.at("qinf").get<double>();
    comb.gamma = j.at("gamma").get<double>();
    comb.validate();
    return Model(comb);
  }
  if (kind != "finite") throw invalid_input("model kind must be \"finite\" or \"comb\"");

  std::string symbols;
  for (const json& s : j.at("alphabet")) {
    std::string sym = s.get<std::string>();
    if (sym.size() != 1) throw invalid_input("alphabet symbols must be single characters");
    symbols += sym;
  }
  Alphabet alphabet(symbols);

  std::vector<std::pair<Word, Row>> entries;
  for (const json& c : j.at("contexts")) {
    Word w = c.at("w").get<std::string>();
    Row p = c.at("p").get<Row>();
    entries.emplace_back(std::move(w), std::move(p));
  }

  bool memoryless = entries.size() == 1 && entries.front().first.empty();
  ContextTree tree;
  std::vector<Row> rows;
  if (memoryless) {
    tree = ContextTree(alphabet, {});
    rows.push_back(entries.front().second);
  } else {
    std::vector<Word> words;
    for (auto& [w, p] : entries) {
      if (w.empty()) throw invalid_input("an empty context is only valid as the sole entry");
      words.push_back(w);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return word_less(a.first, b.first); });
    tree = ContextTree(alphabet, std::move(words));
    if (tree.size() != static_cast<int>(entries.size())) {
      throw invalid_input("duplicate context in model JSON");
    }
    for (auto& [w, p] : entries) rows.push_back(std::move(p));
  }

  ProbabilisticContextTree pct(std::move(tree), std::move(rows));
  ValidationReport report = validate_tree(pct);
  if (!report.suffix_violations.empty()) {
    throw invalid_input("suffix property violated: " + report.suffix_violations.front());
  }
  if (!report.row_violations.empty()) {
    throw invalid_input("invalid transition row: " + report.row_violations.front());
  }
  return Model(std::move(pct));
}

json model_json(const Model& model) {
  json j;
  if (model.is_comb()) {
    j["kind"] = "comb";
    j["q0"] = model.comb().q0;
    j["qinf"] = model.comb().qinf;
    j["gamma"] = model.comb().gamma;
    return j;
  }
  const ProbabilisticContextTree& pct = model.pct();
  j["kind"] = "finite";
  json alphabet = json::array();
  for (char c : pct.alphabet().symbols()) alphabet.push_back(std::string(1, c));
  j["alphabet"] = alphabet;
  json contexts = json::array();
  if (pct.memoryless()) {
    contexts.push_back({{"w", ""}, {"p", pct.lambda_row()}});
  } else {
    for (int i = 0; i < pct.tree().size(); ++i) {
      contexts.push_back({{"w", pct.tree().contexts()[static_cast<size_t>(i)]},
                          {"p", pct.row_for(i)}});
    }
  }
  j["contexts"] = contexts;
  return j;
}

json finite_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return nullptr;
  return x;
}

}  // namespace

Model load_model_json(const std::string& text) { return model_from_json(parse(text)); }

Model load_model_file(const std::string& path) { return load_model_json(slurp(path)); }

std::string model_to_json(const Model& model, int indent) {
  return model_json(model).dump(indent);
}

void write_sample(const SamplePath& path, const Model& model, const std::string& file) {
  {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + file);
    out << path.to_string() << '\n';
  }
  json meta;
  meta["model"] = model_json(model);
  meta["n"] = path.size();
  meta["seed"] = path.seed;
  meta["burn_in"] = path.burn_in;
  meta["rng"] = "splitmix64";
  std::ofstream out(file + ".provenance.json", std::ios::binary);
  if (!out) throw invalid_input("cannot write provenance sidecar for " + file);
  out << meta.dump(2) << '\n';
}

SamplePath read_sample(const std::string& file) {
  std::string text = slurp(file);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  if (text.empty()) throw invalid_input("sample file is empty");

  SamplePath path;
  std::string sidecar = file + ".provenance.json";
  std::ifstream probe(sidecar);
  if (probe) {
    json meta = parse(slurp(sidecar));
    Model model = model_from_json(meta.at("model"));
    path.alphabet = model.alphabet();
    path.model_id = model.describe();
    path.seed = meta.value("seed", uint64_t{0});
    path.burn_in = meta.value("burn_in", int64_t{0});
  } else {
    // No sidecar: infer the alphabet from the observed symbols.
    std::string symbols;
    for (char c : text) {
      if (symbols.find(c) == std::string::npos) symbols.push_back(c);
    }
    std::sort(symbols.begin(), symbols.end());
    if (symbols.size() < 2) {
      throw invalid_input("cannot infer an alphabet from " + file +
                          "; provide a provenance sidecar");
    }
    path.alphabet = Alphabet(symbols);
    path.model_id = "unknown";
  }
  path.alphabet.check_word(text);
  path.symbols = path.alphabet.encode(text);
  return path;
}

std::string estimation_to_json(const EstimationResult& result, int match_state, int indent) {
  json j;
  j["kind"] = "finite";
  json alphabet = json::array();
  for (char c : result.tree.alphabet().symbols()) alphabet.push_back(std::string(1, c));
  j["alphabet"] = alphabet;
  json contexts = json::array();
  if (result.tree.empty()) {
    contexts.push_back({{"w", ""}, {"p", result.rows.front()}});
  } else {
    for (size_t i = 0; i < result.rows.size(); ++i) {
      contexts.push_back({{"w", result.tree.contexts()[i]}, {"p", result.rows[i]}});
    }
  }
  j["contexts"] = contexts;
  if (match_state < 0) {
    j["match_at_K"] = nullptr;
  } else {
    j["match_at_K"] = match_state == 1;
  }
  return j.dump(indent);
}

std::string bound_report_to_json(const BoundReport& report, int indent) {
  json j;
  j["alpha_seq"] = report.alpha_seq;
  j["alpha_sum"] = report.alpha_sum;
  j["C"] = report.C;
  json d_arr = json::array();
  for (double v : report.D) d_arr.push_back(finite_or_null(v));
  j["D"] = d_arr;
  j["epsilon"] = report.epsilon;
  j["rho_seq"] = report.rho_seq;
  j["rho_sum"] = report.rho_sum;
  j["d_min"] = report.d_min;
  j["K"] = report.K;
  if (report.query) {
    json b;
    b["n"] = report.query->n;
    b["delta"] = report.query->delta;
    b["d"] = report.query->d;
    if (report.recovery_violation.empty()) {
      b["recovery"] = report.recovery_bound;
    } else {
      b["recovery"] = nullptr;
      b["violation"] = report.recovery_violation;
    }
    j["bounds"] = b;
  } else {
    j["bounds"] = nullptr;
  }
  return j.dump(indent);
}

}  // namespace vlmc
