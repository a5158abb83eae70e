/*
 * Copyright 2026 The tdesign Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tdesign/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tdesign/errors.hpp"
#include "tdesign/fields.hpp"
#include "tdesign/io.hpp"

namespace tdesign {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Best-effort line of a JSON pointer in the source text: the key tokens are
// searched for in sequence.
std::size_t locate(const std::string& text, const std::string& pointer) {
  std::size_t pos = 0;
  std::size_t start = 1;
  bool any = false;
  while (start <= pointer.size()) {
    std::size_t end = pointer.find('/', start);
    if (end == std::string::npos) end = pointer.size();
    const std::string token = pointer.substr(start, end - start);
    start = end + 1;
    if (token.empty() || std::all_of(token.begin(), token.end(), ::isdigit)) continue;
    const std::size_t found = text.find('"' + token + '"', pos);
    if (found == std::string::npos) break;
    pos = found;
    any = true;
  }
  if (!any) return 0;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

class Reader {
 public:
  Reader(const std::string& text, const std::string& source) : text_(text), source_(source) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    const std::size_t line = locate(text_, pointer);
    std::string where = source_;
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(where + ": " + (pointer.empty() ? "/" : pointer) + ": " + message);
  }

  void check_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        fail(ptr + "/" + key, "unknown key");
      }
    }
  }

  const json* find(const json& obj, const char* key) const {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  const json& require(const json& obj, const std::string& ptr, const char* key) const {
    const json* v = find(obj, key);
    if (!v) fail(ptr + "/" + key, "required key is missing");
    return *v;
  }

  double number(const json& v, const std::string& ptr) const {
    if (!v.is_number()) fail(ptr, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ptr, "expected a finite number");
    return d;
  }

  double positive(const json& v, const std::string& ptr) const {
    const double d = number(v, ptr);
    if (!(d > 0.0)) fail(ptr, "must be positive");
    return d;
  }

  std::uint64_t count(const json& v, const std::string& ptr) const {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(ptr, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string string(const json& v, const std::string& ptr) const {
    if (!v.is_string()) fail(ptr, "expected a string");
    return v.get<std::string>();
  }

 private:
  const std::string& text_;
  const std::string& source_;
};

WeightKind parse_weight(const Reader& r, const std::string& s, const std::string& ptr) {
  if (s == "level_set") return WeightKind::LevelSet;
  if (s == "level_set_printed") return WeightKind::LevelSetPrinted;
  if (s == "exceedance") return WeightKind::Exceedance;
  if (s == "smoothed_reference") return WeightKind::SmoothedReference;
  r.fail(ptr, "unknown weight \"" + s + "\" (level_set, level_set_printed, exceedance, smoothed_reference)");
}

Aggregator parse_aggregator(const Reader& r, const std::string& s, const std::string& ptr) {
  if (s == "max") return Aggregator::Max;
  if (s == "integrated") return Aggregator::Integrated;
  r.fail(ptr, "unknown aggregator \"" + s + "\" (max, integrated)");
}

fs::path absolute_path(const fs::path& base, const std::string& p) {
  fs::path path(p);
  if (path.is_relative()) path = base / path;
  return fs::weakly_canonical(path);
}

Field load_field(const Reader& r, const json& spec, const std::string& ptr, const Grid& grid, const fs::path& base,
                 json& resolved, bool allow_constant) {
  if (!spec.is_object()) r.fail(ptr, "expected an object");
  const std::string type = r.string(r.require(spec, ptr, "type"), ptr + "/type");
  resolved = json::object({{"type", type}});
  if (type == "constant" && allow_constant) {
    r.check_keys(spec, ptr, {"type", "value"});
    const double v = r.number(r.require(spec, ptr, "value"), ptr + "/value");
    resolved["value"] = v;
    return Field(grid.size(), v);
  }
  if (type == "analytic") {
    r.check_keys(spec, ptr, {"type", "name", "params"});
    AnalyticSpec a;
    a.name = r.string(r.require(spec, ptr, "name"), ptr + "/name");
    json params = json::object();
    if (const json* p = r.find(spec, "params")) {
      if (!p->is_object()) r.fail(ptr + "/params", "expected an object");
      for (const auto& [key, value] : p->items()) {
        a.params[key] = r.number(value, ptr + "/params/" + key);
        params[key] = a.params[key];
      }
    }
    resolved["name"] = a.name;
    resolved["params"] = params;
    try {
      return analytic_field(a, grid);
    } catch (const ConfigError& e) {
      r.fail(ptr, e.what());
    }
  }
  if (type == "csv") {
    r.check_keys(spec, ptr, {"type", "path"});
    const fs::path path = absolute_path(base, r.string(r.require(spec, ptr, "path"), ptr + "/path"));
    if (!fs::exists(path)) r.fail(ptr + "/path", "file does not exist: " + path.string());
    resolved["path"] = path.string();
    try {
      return io::read_field_csv(path, grid);
    } catch (const ConfigError& e) {
      r.fail(ptr + "/path", e.what());
    }
  }
  r.fail(ptr + "/type", "unsupported field type \"" + type + "\"");
}

}  // namespace

std::vector<std::string> criterion_labels() {
  return {"mc_ls", "ic_ls", "mc_w", "ic_w", "mc_exc", "ic_exc", "mc_ls_printed", "ic_ls_printed"};
}

CriterionSpec criterion_from_label(const std::string& label, double threshold, std::optional<double> sigma_eps_sq) {
  CriterionSpec spec;
  spec.weight.threshold = threshold;
  std::string rest;
  if (label.rfind("mc_", 0) == 0) {
    spec.aggregator = Aggregator::Max;
  } else if (label.rfind("ic_", 0) == 0) {
    spec.aggregator = Aggregator::Integrated;
  } else {
    throw ConfigError("unknown criterion \"" + label + "\"");
  }
  rest = label.substr(3);
  if (rest == "ls") {
    spec.weight.kind = WeightKind::LevelSet;
  } else if (rest == "ls_printed") {
    spec.weight.kind = WeightKind::LevelSetPrinted;
  } else if (rest == "exc") {
    spec.weight.kind = WeightKind::Exceedance;
  } else if (rest == "w") {
    spec.weight.kind = WeightKind::SmoothedReference;
    spec.weight.sigma_eps_sq = sigma_eps_sq;
    spec.weight.calibrate_sigma_eps = !sigma_eps_sq.has_value();
  } else {
    throw ConfigError("unknown criterion \"" + label + "\"");
  }
  return spec;
}

ScenarioConfig parse_config(const std::string& text, const std::string& source, const fs::path& base_dir,
                            const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  const Reader r(text, source);
  if (root.is_object() && root.contains("tool") && root.contains("config")) {
    // Run manifest: replay its embedded configuration.
    return parse_config(root.at("config").dump(2), source + "#/config", base_dir, overrides);
  }
  r.check_keys(root, "", {"schema_version", "grid", "kernel", "prior_mean", "truth", "criterion", "criteria",
                          "design", "search", "plan", "efficiency", "scores"});

  ScenarioConfig cfg;
  json& out = cfg.resolved;
  out = json::object();

  const json& version = r.require(root, "", "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kConfigSchemaVersion) {
    r.fail("/schema_version", "unsupported schema version (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }
  out["schema_version"] = kConfigSchemaVersion;

  const json& grid_j = r.require(root, "", "grid");
  r.check_keys(grid_j, "/grid", {"n"});
  cfg.grid_side = r.count(r.require(grid_j, "/grid", "n"), "/grid/n");
  if (cfg.grid_side < 2) r.fail("/grid/n", "grid side must be at least 2");
  out["grid"] = {{"n", cfg.grid_side}};
  const Grid grid(cfg.grid_side);

  const json& kernel_j = r.require(root, "", "kernel");
  r.check_keys(kernel_j, "/kernel", {"sigma", "nu", "kappa"});
  cfg.kernel.sigma = r.positive(r.require(kernel_j, "/kernel", "sigma"), "/kernel/sigma");
  cfg.kernel.nu = r.positive(r.require(kernel_j, "/kernel", "nu"), "/kernel/nu");
  cfg.kernel.kappa = r.positive(r.require(kernel_j, "/kernel", "kappa"), "/kernel/kappa");
  out["kernel"] = {{"sigma", cfg.kernel.sigma}, {"nu", cfg.kernel.nu}, {"kappa", cfg.kernel.kappa}};

  const json& crit_j = r.require(root, "", "criterion");
  r.check_keys(crit_j, "/criterion", {"weight", "aggregator", "threshold", "sigma_eps"});
  cfg.threshold = r.number(r.require(crit_j, "/criterion", "threshold"), "/criterion/threshold");
  cfg.criterion.weight.threshold = cfg.threshold;
  const std::string weight_s = r.string(r.require(crit_j, "/criterion", "weight"), "/criterion/weight");
  cfg.criterion.weight.kind = parse_weight(r, weight_s, "/criterion/weight");
  const std::string agg_s =
      crit_j.contains("aggregator") ? r.string(crit_j.at("aggregator"), "/criterion/aggregator") : "max";
  cfg.criterion.aggregator = parse_aggregator(r, agg_s, "/criterion/aggregator");
  out["criterion"] = {{"weight", weight_s}, {"aggregator", agg_s}, {"threshold", cfg.threshold}};
  std::optional<double> sigma_eps;
  if (const json* s = r.find(crit_j, "sigma_eps")) {
    if (s->is_string()) {
      if (s->get<std::string>() != "auto") r.fail("/criterion/sigma_eps", "expected a number or \"auto\"");
      out["criterion"]["sigma_eps"] = "auto";
    } else {
      sigma_eps = r.number(*s, "/criterion/sigma_eps");
      if (*sigma_eps < 0.0) r.fail("/criterion/sigma_eps", "must be non-negative");
      out["criterion"]["sigma_eps"] = *sigma_eps;
    }
    if (cfg.criterion.weight.kind != WeightKind::SmoothedReference) {
      r.fail("/criterion/sigma_eps", "only valid with weight \"smoothed_reference\"");
    }
  } else if (cfg.criterion.weight.kind == WeightKind::SmoothedReference) {
    out["criterion"]["sigma_eps"] = "auto";
  }
  if (cfg.criterion.weight.kind == WeightKind::SmoothedReference) {
    cfg.criterion.weight.sigma_eps_sq = sigma_eps;
    cfg.criterion.weight.calibrate_sigma_eps = !sigma_eps.has_value();
  }

  std::vector<std::string> labels;
  if (!overrides.criteria.empty()) {
    labels = overrides.criteria;
  } else if (const json* c = r.find(root, "criteria")) {
    if (!c->is_array() || c->empty()) r.fail("/criteria", "expected a non-empty array of criterion names");
    for (std::size_t i = 0; i < c->size(); ++i) labels.push_back(r.string((*c)[i], "/criteria/" + std::to_string(i)));
  } else {
    labels.push_back(criterion_label(cfg.criterion));
  }
  const auto known = criterion_labels();
  std::set<std::string> unique;
  for (const auto& l : labels) {
    if (std::find(known.begin(), known.end(), l) == known.end()) {
      r.fail("/criteria", "unknown criterion \"" + l + "\"");
    }
    if (!unique.insert(l).second) r.fail("/criteria", "criterion \"" + l + "\" listed twice");
  }
  cfg.criteria = labels;
  out["criteria"] = labels;

  if (const json* pm = r.find(root, "prior_mean")) {
    json res;
    cfg.prior_mean = load_field(r, *pm, "/prior_mean", grid, base_dir, res, true);
    out["prior_mean"] = res;
  } else {
    cfg.prior_mean = Field(grid.size(), cfg.threshold);
    out["prior_mean"] = {{"type", "constant"}, {"value", cfg.threshold}};
  }

  const json* search_j = r.find(root, "search");
  if (search_j) r.check_keys(*search_j, "/search", {"iterations", "restarts", "seed"});
  const json empty = json::object();
  const json& sj = search_j ? *search_j : empty;
  cfg.search.max_iterations = sj.contains("iterations") ? r.count(sj.at("iterations"), "/search/iterations") : 10000;
  cfg.search.restarts = sj.contains("restarts") ? r.count(sj.at("restarts"), "/search/restarts") : 1000;
  if (cfg.search.restarts < 1) r.fail("/search/restarts", "must be at least 1");
  if (overrides.seed) {
    cfg.search.rng_seed = *overrides.seed;
  } else if (sj.contains("seed")) {
    cfg.search.rng_seed = r.count(sj.at("seed"), "/search/seed");
  } else {
    r.fail("/search/seed", "a seed is required (or pass --seed)");
  }
  out["search"] = {{"iterations", cfg.search.max_iterations},
                   {"restarts", cfg.search.restarts},
                   {"seed", cfg.search.rng_seed}};

  if (const json* t = r.find(root, "truth")) {
    const std::string ptr = "/truth";
    if (!t->is_object()) r.fail(ptr, "expected an object");
    const std::string type = r.string(r.require(*t, ptr, "type"), ptr + "/type");
    if (type == "gp_sample") {
      r.check_keys(*t, ptr, {"type", "seed"});
      const std::uint64_t seed = r.count(r.require(*t, ptr, "seed"), ptr + "/seed");
      try {
        cfg.truth = gp_sample(grid, cfg.prior_mean, cfg.kernel, seed);
      } catch (const ConfigError& e) {
        r.fail(ptr, e.what());
      }
      out["truth"] = {{"type", type}, {"seed", seed}};
    } else if (type == "random_bumps") {
      r.check_keys(*t, ptr, {"type", "seed", "count"});
      const std::uint64_t seed = r.count(r.require(*t, ptr, "seed"), ptr + "/seed");
      const std::uint64_t count = t->contains("count") ? r.count(t->at("count"), ptr + "/count") : 2;
      if (count < 1 || count > 4) r.fail(ptr + "/count", "must be between 1 and 4");
      cfg.truth = random_bumps(count, seed).evaluate(grid);
      out["truth"] = {{"type", type}, {"seed", seed}, {"count", count}};
    } else {
      json res;
      cfg.truth = load_field(r, *t, ptr, grid, base_dir, res, false);
      out["truth"] = res;
    }
  }

  if (const json* d = r.find(root, "design")) {
    r.check_keys(*d, "/design", {"n"});
    cfg.design_size = r.count(r.require(*d, "/design", "n"), "/design/n");
    if (cfg.design_size > grid.size()) r.fail("/design/n", "exceeds the number of grid points");
    out["design"] = {{"n", cfg.design_size}};
  }

  if (const json* p = r.find(root, "plan")) {
    const std::string ptr = "/plan";
    r.check_keys(*p, ptr, {"initial", "stages", "stage_count", "stage_size", "one_point_rule"});
    PlanConfig plan;
    json res = json::object();
    if (const json* ini = r.find(*p, "initial")) {
      if (ini->is_string()) {
        const std::string s = ini->get<std::string>();
        if (s.rfind("maximin:", 0) != 0) r.fail(ptr + "/initial", "expected \"maximin:<k>\" or an index array");
        try {
          std::size_t used = 0;
          plan.initial_maximin = std::stoul(s.substr(8), &used);
          if (used != s.size() - 8) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          r.fail(ptr + "/initial", "cannot parse the maximin point count");
        }
        res["initial"] = s;
      } else if (ini->is_array()) {
        Design d;
        for (std::size_t i = 0; i < ini->size(); ++i) {
          const std::uint64_t idx = r.count((*ini)[i], ptr + "/initial/" + std::to_string(i));
          d.points.push_back(static_cast<std::size_t>(idx));
        }
        try {
          d.validate(grid);
        } catch (const std::invalid_argument& e) {
          r.fail(ptr + "/initial", e.what());
        }
        plan.initial_design = d;
        res["initial"] = d.points;
      } else {
        r.fail(ptr + "/initial", "expected \"maximin:<k>\" or an index array");
      }
    } else {
      plan.initial_maximin = 4;
      res["initial"] = "maximin:4";
    }
    if (const json* st = r.find(*p, "stages")) {
      if (p->contains("stage_count") || p->contains("stage_size")) {
        r.fail(ptr + "/stages", "give either stages or stage_count/stage_size");
      }
      if (!st->is_array()) r.fail(ptr + "/stages", "expected an array of stage sizes");
      for (std::size_t i = 0; i < st->size(); ++i) {
        const std::uint64_t n = r.count((*st)[i], ptr + "/stages/" + std::to_string(i));
        if (n == 0) r.fail(ptr + "/stages/" + std::to_string(i), "stage sizes must be positive");
        plan.stage_sizes.push_back(n);
      }
    } else {
      const std::uint64_t count = p->contains("stage_count") ? r.count(p->at("stage_count"), ptr + "/stage_count") : 0;
      const std::uint64_t size = p->contains("stage_size") ? r.count(p->at("stage_size"), ptr + "/stage_size") : 1;
      if (size == 0) r.fail(ptr + "/stage_size", "must be positive");
      plan.stage_sizes.assign(count, size);
    }
    res["stages"] = plan.stage_sizes;
    std::string rule = "exact_minimum";
    if (const json* ru = r.find(*p, "one_point_rule")) rule = r.string(*ru, ptr + "/one_point_rule");
    if (rule == "exact_minimum") {
      plan.one_point_rule = OnePointRule::ExactMinimum;
    } else if (rule == "weighted_variance_argmax") {
      plan.one_point_rule = OnePointRule::WeightedVarianceArgmax;
    } else {
      r.fail(ptr + "/one_point_rule", "expected \"exact_minimum\" or \"weighted_variance_argmax\"");
    }
    res["one_point_rule"] = rule;
    std::size_t total = plan.initial_design ? plan.initial_design->size() : plan.initial_maximin;
    for (std::size_t n : plan.stage_sizes) total += n;
    if (total > grid.size()) r.fail(ptr, "plan needs more points than the grid has");
    cfg.plan = plan;
    out["plan"] = res;
  }

  if (const json* e = r.find(root, "efficiency")) {
    r.check_keys(*e, "/efficiency", {"random_designs", "include_maximin"});
    if (e->contains("random_designs")) {
      cfg.efficiency.random_designs = r.count(e->at("random_designs"), "/efficiency/random_designs");
    }
    if (e->contains("include_maximin")) {
      if (!e->at("include_maximin").is_boolean()) r.fail("/efficiency/include_maximin", "expected a boolean");
      cfg.efficiency.include_maximin = e->at("include_maximin").get<bool>();
    }
  }
  out["efficiency"] = {{"random_designs", cfg.efficiency.random_designs},
                       {"include_maximin", cfg.efficiency.include_maximin}};

  if (const json* s = r.find(root, "scores")) {
    r.check_keys(*s, "/scores", {"actual", "estimated"});
    ScoresConfig sc;
    sc.actual = absolute_path(base_dir, r.string(r.require(*s, "/scores", "actual"), "/scores/actual"));
    sc.estimated = absolute_path(base_dir, r.string(r.require(*s, "/scores", "estimated"), "/scores/estimated"));
    if (!fs::exists(sc.actual)) r.fail("/scores/actual", "file does not exist: " + sc.actual.string());
    if (!fs::exists(sc.estimated)) r.fail("/scores/estimated", "file does not exist: " + sc.estimated.string());
    cfg.scores = sc;
    out["scores"] = {{"actual", sc.actual.string()}, {"estimated", sc.estimated.string()}};
  }
  return cfg;
}

ScenarioConfig load_config(const fs::path& path, const ConfigOverrides& overrides) {
  if (!fs::exists(path)) throw ConfigError("config file does not exist: " + path.string());
  const std::string text = io::read_file(path);
  fs::path base = fs::absolute(path).parent_path();
  return parse_config(text, path.string(), base, overrides);
}

}  // namespace tdesign
